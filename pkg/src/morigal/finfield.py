"""Finite fields F_p and F_{p^2} (p odd) and polynomial factorization over them.

Field elements are plain ints.  In F_{p^2} = F_p[s]/(s^2 - t) the element
a0 + a1*s is encoded as a0 + a1*p, so the prime subfield is {0, ..., p-1}.
Polynomials are lists of elements, constant term first, without trailing
zeros.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .arith import factorize, is_prime

Poly = list[int]

DEFAULT_SEED = 20240601


class FieldError(ValueError):
    pass


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """Tonelli-Shanks square root modulo an odd prime, or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def smallest_nonresidue(p: int) -> int:
    t = 2
    while legendre(t, p) != -1:
        t += 1
    return t


@dataclass(frozen=True)
class FqContext:
    """The field with q = p**k elements, k in {1, 2}."""

    p: int
    k: int = 1
    t: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise FieldError(f"characteristic must be an odd prime, got {self.p}")
        if self.k not in (1, 2):
            raise FieldError("only extension degrees 1 and 2 are supported")
        if self.k == 2:
            object.__setattr__(self, "t", smallest_nonresidue(self.p))

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def modulus(self) -> Poly | None:
        """Defining polynomial s^2 - t of the quadratic extension."""
        return [(-self.t) % self.p, 0, 1] if self.k == 2 else None

    def describe(self) -> dict:
        d = {"p": self.p, "k": self.k, "q": self.q}
        if self.k == 2:
            d["modulus"] = f"s^2 - {self.t}"
        return d

    # element arithmetic

    def elt(self, a0: int, a1: int = 0) -> int:
        p = self.p
        if self.k == 1:
            return a0 % p
        return a0 % p + (a1 % p) * p

    def pair(self, a: int) -> tuple[int, int]:
        return (a % self.p, a // self.p) if self.k == 2 else (a, 0)

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        return (a % p + b % p) % p + ((a // p + b // p) % p) * p

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        return (-(a % p)) % p + ((-(a // p)) % p) * p

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return a * b % p
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        return (a0 * b0 + self.t * a1 * b1) % p + ((a0 * b1 + a1 * b0) % p) * p

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        p = self.p
        if self.k == 1:
            return pow(a, -1, p)
        a0, a1 = a % p, a // p
        n = pow((a0 * a0 - self.t * a1 * a1) % p, -1, p)
        return a0 * n % p + (-a1 * n % p) * p

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> int:
        return n % self.p

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def frobenius_root(self, a: int) -> int:
        """The unique p-th root of a."""
        return self.pow(a, self.q // self.p)

    def fmt(self, a: int) -> str:
        if self.k == 1 or a < self.p:
            return str(a)
        a0, a1 = self.pair(a)
        return f"{a0}+{a1}*s" if a0 else f"{a1}*s"

    # multiplicative structure

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r, e in factorize(n, pollard_iterations=10**7).items():
            for _ in range(e):
                if self.pow(a, order // r) == 1:
                    order //= r
                else:
                    break
        return order

    def is_primitive(self, a: int) -> bool:
        return a != 0 and self.multiplicative_order(a) == self.q - 1

    def is_dth_power(self, a: int, d: int) -> bool:
        if a == 0:
            return True
        return self.pow(a, (self.q - 1) // gcd(d, self.q - 1)) == 1

    def is_square(self, a: int) -> bool:
        return self.is_dth_power(a, 2)


# polynomial arithmetic over F_q


def trim(f: Poly) -> Poly:
    while f and f[-1] == 0:
        f.pop()
    return f


def monic(ctx: FqContext, f: Poly) -> Poly:
    if not f:
        return f
    inv = ctx.inv(f[-1])
    return [ctx.mul(c, inv) for c in f]


def add(ctx: FqContext, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return trim([ctx.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)])


def sub(ctx: FqContext, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return trim([ctx.sub(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)])


def mul(ctx: FqContext, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    if ctx.k == 1:
        p = ctx.p
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return trim([c % p for c in out])
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return trim(out)


def divmod_poly(ctx: FqContext, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    inv = ctx.inv(g[-1])
    q = [0] * (len(r) - dg)
    if ctx.k == 1:
        p = ctx.p
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i] * inv % p
            if c:
                q[i - dg] = c
                for j in range(dg + 1):
                    r[i - dg + j] = (r[i - dg + j] - c * g[j]) % p
        return trim(q), trim(r[:dg])
    for i in range(len(r) - 1, dg - 1, -1):
        c = ctx.mul(r[i], inv)
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] = ctx.sub(r[i - dg + j], ctx.mul(c, g[j]))
    return trim(q), trim(r[:dg])


def rem(ctx: FqContext, f: Poly, g: Poly) -> Poly:
    return divmod_poly(ctx, f, g)[1]


def gcd_poly(ctx: FqContext, f: Poly, g: Poly) -> Poly:
    f, g = trim(list(f)), trim(list(g))
    while g:
        f, g = g, rem(ctx, f, g)
    return monic(ctx, f)


def powmod(ctx: FqContext, f: Poly, e: int, m: Poly) -> Poly:
    result: Poly = [1]
    base = rem(ctx, f, m)
    while e:
        if e & 1:
            result = rem(ctx, mul(ctx, result, base), m)
        base = rem(ctx, mul(ctx, base, base), m)
        e >>= 1
    return result


def derivative(ctx: FqContext, f: Poly) -> Poly:
    return trim([ctx.mul(ctx.from_int(i), c) for i, c in enumerate(f)][1:])


def evaluate(ctx: FqContext, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def from_ints(ctx: FqContext, coeffs: Sequence[int]) -> Poly:
    return trim([ctx.from_int(c) for c in coeffs])


# factorization


@dataclass(frozen=True, order=True)
class FactorEntry:
    degree: int
    factor: tuple[int, ...]
    multiplicity: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "multiplicity": self.multiplicity, "coeffs": list(self.factor)}


@dataclass(frozen=True)
class FactorPattern:
    """Complete factorization of a monic polynomial over F_q.

    Entries are sorted by degree, then by coefficient tuple (constant first).
    """

    entries: tuple[FactorEntry, ...]
    q: int = 0

    @property
    def degree(self) -> int:
        return sum(e.degree * e.multiplicity for e in self.entries)

    def partition(self) -> tuple[int, ...]:
        """Factor degrees with multiplicity, ascending (the cycle type when squarefree)."""
        parts = []
        for e in self.entries:
            parts += [e.degree] * e.multiplicity
        return tuple(sorted(parts))

    def shape(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((e.degree, e.multiplicity) for e in self.entries))

    def is_squarefree(self) -> bool:
        return all(e.multiplicity == 1 for e in self.entries)

    def repeated(self) -> list[FactorEntry]:
        return [e for e in self.entries if e.multiplicity > 1]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, data: list[dict], q: int = 0) -> FactorPattern:
        return cls(
            tuple(
                sorted(FactorEntry(int(d["degree"]), tuple(int(c) for c in d["coeffs"]), int(d["multiplicity"])) for d in data)
            ),
            q,
        )

    def product(self, ctx: FqContext) -> Poly:
        out: Poly = [1]
        for e in self.entries:
            for _ in range(e.multiplicity):
                out = mul(ctx, out, list(e.factor))
        return out


def squarefree_decomposition(ctx: FqContext, f: Poly) -> list[tuple[Poly, int]]:
    """Return [(g_i, i)] with f = lc * prod g_i^i, each g_i squarefree and monic."""
    f = monic(ctx, trim(list(f)))
    if len(f) <= 1:
        return []
    out: list[tuple[Poly, int]] = []
    p = ctx.p
    df = derivative(ctx, f)
    if not df:
        root = _pth_root(ctx, f)
        return [(g, m * p) for g, m in squarefree_decomposition(ctx, root)]
    c = gcd_poly(ctx, f, df)
    w = divmod_poly(ctx, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd_poly(ctx, w, c)
        z = divmod_poly(ctx, w, y)[0]
        if len(z) > 1:
            out.append((monic(ctx, z), i))
        i += 1
        w = y
        c = divmod_poly(ctx, c, y)[0]
    if len(c) > 1:
        root = _pth_root(ctx, c)
        out += [(g, m * p) for g, m in squarefree_decomposition(ctx, root)]
    merged: dict[int, Poly] = {}
    for g, m in out:
        merged[m] = mul(ctx, merged[m], g) if m in merged else g
    return sorted(((g, m) for m, g in merged.items()), key=lambda t: t[1])


def _pth_root(ctx: FqContext, f: Poly) -> Poly:
    p = ctx.p
    return trim([ctx.frobenius_root(f[i]) for i in range(0, len(f), p)])


def distinct_degree(ctx: FqContext, f: Poly) -> list[tuple[int, Poly]]:
    """Split monic squarefree f into (d, product of all degree-d factors)."""
    f = monic(ctx, f)
    out = []
    x = [0, 1]
    h = x
    d = 0
    q = ctx.q
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(ctx, h, q, f)
        g = gcd_poly(ctx, f, sub(ctx, h, x))
        if len(g) > 1:
            out.append((d, g))
            f = divmod_poly(ctx, f, g)[0]
            h = rem(ctx, h, f)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def equal_degree(ctx: FqContext, f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of f into its monic degree-d factors (odd q)."""
    f = monic(ctx, f)
    n = len(f) - 1
    if n == d:
        return [f]
    e = (ctx.q**d - 1) // 2
    while True:
        a = trim([ctx.random(rng) for _ in range(n)])
        if len(a) <= 1:
            continue
        g = gcd_poly(ctx, f, a)
        if 1 < len(g) < len(f):
            break
        b = sub(ctx, powmod(ctx, a, e, f), [1])
        g = gcd_poly(ctx, f, b)
        if 1 < len(g) < len(f):
            break
    h = divmod_poly(ctx, f, g)[0]
    return equal_degree(ctx, g, d, rng) + equal_degree(ctx, h, d, rng)


def factor(ctx: FqContext, u: Poly, seed: int = DEFAULT_SEED, check: bool = True) -> FactorPattern:
    """Complete factorization of nonzero u over F_q (leading coefficient dropped)."""
    u = trim(list(u))
    if not u:
        raise FieldError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    entries = []
    for g, m in squarefree_decomposition(ctx, u):
        for d, part in distinct_degree(ctx, g):
            for fac in equal_degree(ctx, part, d, rng):
                entries.append(FactorEntry(d, tuple(fac), m))
    pattern = FactorPattern(tuple(sorted(entries)), ctx.q)
    if check:
        if pattern.product(ctx) != monic(ctx, u):
            raise AssertionError("factor reconstruction failed")
        for e in pattern.entries:
            if not is_irreducible(ctx, list(e.factor)):
                raise AssertionError(f"reducible factor {e.factor}")
    return pattern


def is_irreducible(ctx: FqContext, f: Poly) -> bool:
    """Rabin's test."""
    f = monic(ctx, trim(list(f)))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    q = ctx.q
    for r in sorted(factorize(n).factors):
        h = powmod(ctx, x, q ** (n // r), f)
        if len(gcd_poly(ctx, f, sub(ctx, h, x))) > 1:
            return False
    return not sub(ctx, powmod(ctx, x, q**n, f), x)


def degree_pattern(coeffs: Sequence[int], p: int) -> tuple[int, ...]:
    """Factor degrees of a squarefree polynomial over F_p (distinct-degree only)."""
    ctx = _prime_field(p)
    f = from_ints(ctx, coeffs)
    parts: list[int] = []
    for d, g in distinct_degree(ctx, f):
        parts += [d] * ((len(g) - 1) // d)
    return tuple(sorted(parts))


_FIELDS: dict[int, FqContext] = {}


def _prime_field(p: int) -> FqContext:
    ctx = _FIELDS.get(p)
    if ctx is None:
        ctx = _FIELDS[p] = FqContext(p)
    return ctx


@dataclass(frozen=True)
class ProfileEntry:
    factor: tuple[int, ...]
    multiplicity: int
    root: int | None

    def to_json(self) -> dict:
        return {"factor": list(self.factor), "multiplicity": self.multiplicity, "root": self.root}


def multiplicity_profile(ctx: FqContext, u: Poly) -> list[ProfileEntry]:
    """Every irreducible factor of u with multiplicity >= 2; roots given for linear ones."""
    out = []
    for g, m in squarefree_decomposition(ctx, u):
        if m < 2:
            continue
        for d, part in distinct_degree(ctx, g):
            for fac in equal_degree(ctx, part, d, random.Random(DEFAULT_SEED)):
                root = ctx.neg(fac[0]) if d == 1 else None
                out.append(ProfileEntry(tuple(fac), m, root))
    return sorted(out, key=lambda e: (len(e.factor), e.factor))


def expected_double_root(ctx: FqContext, n: int, B: int, C: int) -> int:
    """gamma = -n C / ((n-1) B), the only possible multiple root of x^n + Bx + C."""
    den = ctx.mul(ctx.from_int(n - 1), B)
    if den == 0:
        raise FieldError("(n-1)*B vanishes: trinomial hypotheses violated")
    return ctx.neg(ctx.div(ctx.mul(ctx.from_int(n), C), den))


def lang_binomial_irreducible(ctx: FqContext, a: int, n: int) -> bool:
    """Irreducibility of x^n - a over F_q from the power-residue criterion.

    For every prime d | n, a must not be a d-th power; when 4 | n, -4a must
    not be a square either.
    """
    if a == 0:
        return n == 1
    for d in factorize(n).factors:
        if ctx.is_dth_power(a, d):
            return False
    if n % 4 == 0 and ctx.is_square(ctx.neg(ctx.mul(ctx.from_int(4), a))):
        return False
    return True
