"""Imaginary quadratic fields of class number one and generalized Mori quadruples.

O_K = Z[w] with w = sqrt(d) when d = 2, 3 mod 4 and w = (1 + sqrt(d))/2 when
d = 1 mod 4.  Every maximal ideal is principal, so ideals are carried by a
generator together with their residue-field data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterator, Sequence

from . import finfield as ff
from .arith import factorize, is_prime, next_prime
from .galois import Conclusion, GaloisCertificate, VerificationError, group_fact_basis
from .intpoly import trinomial_discriminant
from .mori import FactorBudget, InvalidInput, d0_formula
from .padic import eisenstein_dumas, newton_polygon

SUPPORTED_D = (-1, -2, -3, -7, -11, -19, -43, -67, -163)


class SearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class ImagQuadField:
    d: int

    def __post_init__(self) -> None:
        if self.d not in SUPPORTED_D:
            raise InvalidInput(
                f"d = {self.d} is not one of the class-number-one imaginary quadratic fields {SUPPORTED_D}"
            )

    @property
    def half_integral(self) -> bool:
        """True when w = (1 + sqrt(d))/2."""
        return self.d % 4 == 1

    @property
    def discriminant(self) -> int:
        return self.d if self.half_integral else 4 * self.d

    @property
    def class_number(self) -> int:
        return 1

    @property
    def omega_min_poly(self) -> tuple[int, int, int]:
        """Coefficients (c0, c1, 1) of the minimal polynomial of w."""
        if self.half_integral:
            return ((1 - self.d) // 4, -1, 1)
        return (-self.d, 0, 1)

    def omega_convention(self) -> str:
        if self.half_integral:
            return f"w = (1 + sqrt({self.d}))/2, w^2 = w - {(1 - self.d) // 4}"
        return f"w = sqrt({self.d}), w^2 = {self.d}"

    def __call__(self, x: int, y: int = 0) -> OKElement:
        return OKElement(x, y, self.d)

    def parse(self, text: str) -> OKElement:
        return OKElement.parse(text, self.d)

    def name(self) -> str:
        return f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class OKElement:
    """x + y*w in the ring of integers of Q(sqrt(d))."""

    x: int
    y: int
    d: int

    def _half(self) -> bool:
        return self.d % 4 == 1

    def _lift(self, other) -> OKElement:
        if isinstance(other, OKElement):
            if other.d != self.d:
                raise ValueError("elements of different fields")
            return other
        return OKElement(int(other), 0, self.d)

    def __add__(self, other) -> OKElement:
        o = self._lift(other)
        return OKElement(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self) -> OKElement:
        return OKElement(-self.x, -self.y, self.d)

    def __sub__(self, other) -> OKElement:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> OKElement:
        return self._lift(other) - self

    def __mul__(self, other) -> OKElement:
        o = self._lift(other)
        a, b, c, e = self.x, self.y, o.x, o.y
        if self._half():
            k = (self.d - 1) // 4  # w^2 = w + k
            return OKElement(a * c + k * b * e, a * e + b * c + b * e, self.d)
        return OKElement(a * c + self.d * b * e, a * e + b * c, self.d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> OKElement:
        result = OKElement(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.y == 0 and self.x == other
        if isinstance(other, OKElement):
            return (self.x, self.y, self.d) == (other.x, other.y, other.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.d))

    def __bool__(self) -> bool:
        return bool(self.x or self.y)

    def conjugate(self) -> OKElement:
        if self._half():
            return OKElement(self.x + self.y, -self.y, self.d)
        return OKElement(self.x, -self.y, self.d)

    def norm(self) -> int:
        x, y = self.x, self.y
        if self._half():
            return x * x + x * y + (1 - self.d) // 4 * y * y
        return x * x - self.d * y * y

    def divides(self, other) -> bool:
        return self.exact_div(other) is not None if self else not self._lift(other)

    def exact_div(self, other) -> OKElement | None:
        """other / self if it lies in O_K, else None."""
        num = self._lift(other) * self.conjugate()
        n = self.norm()
        if num.x % n or num.y % n:
            return None
        return OKElement(num.x // n, num.y // n, self.d)

    def in_multiple_of(self, m: int) -> bool:
        """Membership in m*O_K."""
        return self.x % m == 0 and self.y % m == 0

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        w = "w" if self.y in (1, -1) else f"{abs(self.y)}*w"
        if self.x == 0:
            return ("-" if self.y < 0 else "") + w
        return f"{self.x}{'-' if self.y < 0 else '+'}{w}"

    def coords(self) -> list[str]:
        return [str(self.x), str(self.y)]

    @classmethod
    def parse(cls, text: str, d: int) -> OKElement:
        """Parse 'x+y*w' (also accepting i when d = -1)."""
        s = text.replace(" ", "")
        if d == -1:
            s = s.replace("i", "w")
        if not s:
            raise InvalidInput("empty element")
        if not re.fullmatch(r"[+-]?(\d+(\*?w)?|\*?w)([+-](\d+(\*?w)?|w))*", s):
            raise InvalidInput(f"cannot parse {text!r} as x+y*w")
        x = y = 0
        for sign, num, has_w in re.findall(r"([+-]?)(\d*)\*?(w?)", s):
            if not num and not has_w:
                continue
            k = int(num) if num else 1
            if sign == "-":
                k = -k
            if has_w:
                y += k
            else:
                x += k
        return cls(x, y, d)


def _reduce_lattice(K: ImagQuadField, b1: tuple[int, int], b2: tuple[int, int]) -> tuple[int, int]:
    """Shortest nonzero vector of a rank-2 lattice under the norm form (Lagrange-Gauss)."""

    def N(v):
        return K(*v).norm()

    def B(u, v):
        # symmetric bilinear form with B(v, v) = 2 N(v)
        return N((u[0] + v[0], u[1] + v[1])) - N(u) - N(v)

    if N(b1) > N(b2):
        b1, b2 = b2, b1
    while True:
        # nearest integer to B(b1,b2) / (2 N(b1))
        num, den = B(b1, b2), 2 * N(b1)
        mu = (2 * num + den) // (2 * den)
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
        if N(b2) >= N(b1):
            return b1
        b1, b2 = b2, b1


@dataclass(frozen=True)
class MaximalIdeal:
    field: ImagQuadField
    p: int
    k: int
    e: int
    generator: OKElement
    root: int | None = None

    @property
    def norm(self) -> int:
        return self.p**self.k

    def residue_field(self) -> ff.FqContext:
        return ff.FqContext(self.p, self.k)

    def contains(self, a: OKElement | int) -> bool:
        a = self.generator._lift(a)
        if self.k == 2:
            return a.in_multiple_of(self.p)
        return (a.x + a.y * self.root) % self.p == 0

    def valuation(self, a: OKElement | int) -> int:
        a = self.generator._lift(a)
        if not a:
            raise ValueError("valuation of zero")
        v = 0
        while self.contains(a):
            a = self.generator.exact_div(a)
            v += 1
        return v

    def describe(self) -> dict:
        kind = "ramified" if self.e == 2 else ("inert" if self.k == 2 else "split")
        return {
            "p": str(self.p),
            "generator": str(self.generator),
            "residue_degree": self.k,
            "ramification_index": self.e,
            "type": kind,
        }

    def label(self) -> str:
        return f"({self.generator})"


def kronecker(D: int, p: int) -> int:
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    return ff.legendre(D, p)


def _roots_mod_p(coeffs: Sequence[int], p: int) -> list[int]:
    c0, c1, _ = coeffs
    return sorted(r for r in range(p) if (r * r + c1 * r + c0) % p == 0) if p < 50 else _quadratic_roots(c0, c1, p)


def _quadratic_roots(c0: int, c1: int, p: int) -> list[int]:
    disc = (c1 * c1 - 4 * c0) % p
    s = ff.sqrt_mod(disc, p)
    if s is None:
        return []
    inv2 = pow(2, -1, p)
    return sorted({(-c1 + s) * inv2 % p, (-c1 - s) * inv2 % p})


def splitting(p: int, K: ImagQuadField) -> list[MaximalIdeal]:
    """The maximal ideals of O_K above the rational prime p."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    chi = kronecker(K.discriminant, p)
    if chi == -1:
        return [MaximalIdeal(K, p, 2, 1, K(p))]
    out = []
    for r in _roots_mod_p(K.omega_min_poly, p):
        # ideal (p, w - r) = {x + y w : x + y r = 0 mod p}
        v = _reduce_lattice(K, (p, 0), (-r, 1))
        gen = _normalize_generator(K(*v))
        if gen.norm() != p:
            raise AssertionError(f"no generator of norm {p} found (class number assumption)")
        out.append(MaximalIdeal(K, p, 1, 2 if chi == 0 else 1, gen, r))
    return out


def _units(K: ImagQuadField) -> list[OKElement]:
    if K.d == -1:
        return [K(1), K(0, 1), K(-1), K(0, -1)]
    if K.d == -3:
        w = K(0, 1)
        return [w**i for i in range(6)]
    return [K(1), K(-1)]


def _normalize_generator(a: OKElement) -> OKElement:
    """Canonical associate: largest (x, y) among unit multiples with x > 0 first."""
    K = ImagQuadField(a.d)
    return max((u * a for u in _units(K)), key=lambda z: (z.x > 0, z.y >= 0, z.x, z.y))


def ideal_of(K: ImagQuadField, generator: OKElement) -> MaximalIdeal:
    """The maximal ideal generated by a prime element."""
    n = generator.norm()
    if is_prime(n):
        p = n
    elif isqrt(n) ** 2 == n and is_prime(isqrt(n)):
        p = isqrt(n)
    else:
        raise InvalidInput(f"{generator} (norm {n}) does not generate a maximal ideal")
    for ideal in splitting(p, K):
        if ideal.contains(generator) and ideal.generator.norm() == n:
            return ideal
    raise InvalidInput(f"{generator} does not generate a maximal ideal")


def residue_map(a: OKElement | int, ideal: MaximalIdeal) -> int:
    """Image of a in O_K / ideal; for residue degree 2 an element of FqContext(p, 2)."""
    a = ideal.generator._lift(a)
    p = ideal.p
    if ideal.k == 1:
        return (a.x + a.y * ideal.root) % p
    ctx = ideal.residue_field()
    return ctx.add(ctx.from_int(a.x), ctx.mul(ctx.from_int(a.y), _omega_image(ideal.field, ctx)))


def _omega_image(K: ImagQuadField, ctx: ff.FqContext) -> int:
    """Image of w in F_p[s]/(s^2 - t) for an inert odd p."""
    p = ctx.p
    m = ff.sqrt_mod(K.d * pow(ctx.t, -1, p), p)
    if m is None:
        raise AssertionError("d/t should be a square modulo an inert prime")
    sqrt_d = ctx.elt(0, m)
    if K.half_integral:
        return ctx.div(ctx.add(1, sqrt_d), 2)
    return sqrt_d


def coprime(a: OKElement | int, b: OKElement | int, K: ImagQuadField) -> bool:
    """aO + bO = O, tested prime by prime above gcd(N(a), N(b))."""
    a, b = K(0)._lift(a), K(0)._lift(b)
    g = gcd(a.norm(), b.norm())
    if g == 0:
        return False
    for p in factorize(g, pollard_iterations=10**7).factors:
        for ideal in splitting(p, K):
            if ideal.contains(a) and ideal.contains(b):
                return False
    return True


@dataclass(frozen=True)
class GeneralizedQuadruple:
    field: ImagQuadField
    g: int
    prime: MaximalIdeal
    b: OKElement
    c: OKElement
    conditions: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def valid(self) -> bool:
        return all(self.conditions[k] for k in ("i", "ii", "iii"))

    @property
    def n(self) -> int:
        return 2 * self.g + 1

    def failed(self) -> list[str]:
        return [k for k in ("i", "ii", "iii") if not self.conditions[k]]

    def to_json(self) -> dict:
        return {
            "d": self.field.d,
            "omega": self.field.omega_convention(),
            "g": self.g,
            "prime": self.prime.describe(),
            "b": str(self.b),
            "c": str(self.c),
            "b_coords": self.b.coords(),
            "c_coords": self.c.coords(),
            "conditions": dict(self.conditions),
        }


def validate_generalized_quadruple(
    K: ImagQuadField, g: int, prime: MaximalIdeal | OKElement, b: OKElement | int, c: OKElement | int
) -> GeneralizedQuadruple:
    """Conditions (i)-(iii) for (g, prime, b, c), each reported separately."""
    if g < 1:
        raise InvalidInput("g must be a positive integer")
    if isinstance(prime, OKElement):
        prime = ideal_of(K, prime)
    if prime.p == 2:
        raise InvalidInput("the prime ideal must have odd residual characteristic")
    b, c = K(0)._lift(b), K(0)._lift(c)
    q = prime.norm
    ctx = prime.residue_field()
    bt = residue_map(b, prime)
    half = (q - 1) // 2
    cond_i = all(half % r == 0 for r in (factorize(g).factors if g > 1 else {}))
    cond_ii = bt != 0 and ctx.is_primitive(bt)
    parts = {
        "c_in_prime": prime.contains(c),
        "c_minus_1_in_2O": (c - 1).in_multiple_of(2),
        "bO+cO=O": coprime(b, c, K),
        "bO+(2g+1)O=O": coprime(b, K(2 * g + 1), K),
        "2gO+cO=O": coprime(K(2 * g), c, K),
    }
    conditions = {"i": cond_i, "ii": cond_ii, "iii": all(parts.values()), "iii_parts": parts, "q": q}
    return GeneralizedQuadruple(K, g, prime, b, c, conditions)


def _primes_above_2(K: ImagQuadField) -> list[MaximalIdeal]:
    return splitting(2, K)


def _mod_prime_pattern(quad: GeneralizedQuadruple, seed: int) -> dict:
    """F mod prime = x (x^{2g} - b~) with the binomial irreducible over k(prime)."""
    prime = quad.prime
    ctx = prime.residue_field()
    n = quad.n
    bt = residue_map(quad.b, prime)
    ct = residue_map(quad.c, prime)
    inv4 = ctx.inv(4)
    fbar = [0] * (n + 1)
    fbar[n] = 1
    fbar[1] = ctx.neg(bt)
    fbar[0] = ctx.neg(ctx.mul(ct, inv4))
    fbar = ff.trim(fbar)
    pattern = ff.factor(ctx, fbar, seed)
    binomial = [ctx.neg(bt)] + [0] * (2 * quad.g - 1) + [1]
    by_factor = (
        pattern.shape() == tuple(sorted([(1, 1), (2 * quad.g, 1)]))
        and any(e.factor == (0, 1) for e in pattern.entries)
        and any(list(e.factor) == binomial for e in pattern.entries)
    )
    by_lang = ff.lang_binomial_irreducible(ctx, bt, 2 * quad.g)
    if by_factor != by_lang or not by_factor:
        raise AssertionError(f"mod-prime pattern check failed (factorization {by_factor}, power residues {by_lang})")
    return {
        "prime": prime.describe(),
        "residue_field": ctx.describe(),
        "pattern": pattern.to_json(),
        "partition": list(pattern.partition()),
        "by_factorization": by_factor,
        "by_power_residues": by_lang,
    }


def _polygons_at_2(quad: GeneralizedQuadruple) -> list[dict]:
    """b2-adic Newton polygon of F = x^n - b x - c/4 for every b2 above 2."""
    out = []
    n = quad.n
    for b2 in _primes_above_2(quad.field):
        e = b2.e
        # (element, power of 2 in the denominator); None marks a zero coefficient
        coeffs: list = [None] * (n + 1)
        coeffs[n] = (quad.field(1), 0)
        if quad.b:
            coeffs[1] = (-quad.b, 0)
        coeffs[0] = (-quad.c, 2)

        def v(pair, b2=b2, e=e):
            elem, den = pair
            return b2.valuation(elem) - den * e

        pg = newton_polygon(coeffs, v)
        ed = eisenstein_dumas(pg)
        out.append(
            {
                "ideal": b2.describe(),
                "e": e,
                "gcd(2e, n)": gcd(2 * e, n),
                "polygon": pg.to_json(),
                **ed.to_json(),
            }
        )
    return out


def _quad_trinomial(quad: GeneralizedQuadruple) -> tuple[OKElement, OKElement]:
    g = quad.g
    return -(4**g) * quad.b, -(2 ** (2 * g - 1)) * quad.c


def _discriminant_data(quad: GeneralizedQuadruple) -> dict:
    g, n = quad.g, quad.n
    M = g * (2 * g - 1)
    D0 = d0_formula(g, quad.b, quad.c)
    B, C = _quad_trinomial(quad)
    delta = trinomial_discriminant(n, B, C)
    if delta != (2 ** (2 * M)) * D0:
        raise AssertionError("Delta(U) != 2^{2M} D0 over O_K")
    return {"Delta_U": delta, "M": M, "D0": D0, "D0_minus_1_in_4O": (D0 - 1).in_multiple_of(4)}


def check_transposition_ideal(quad: GeneralizedQuadruple, ideal: MaximalIdeal, D0: OKElement) -> dict:
    """U mod ideal has exactly one multiple root, double, in k(ideal), equal to gamma."""
    if ideal.p == 2:
        raise AssertionError("ideal has residual characteristic 2")
    n = quad.n
    B, C = _quad_trinomial(quad)
    v = ideal.valuation(D0)
    if v % 2 == 0:
        raise AssertionError(f"v(D0) = {v} is even at {ideal.label()}")
    ctx = ideal.residue_field()
    Bb, Cb = residue_map(B, ideal), residue_map(C, ideal)
    hyp = residue_map(n * (n - 1) * B * C, ideal)
    if hyp == 0:
        raise AssertionError("n(n-1)BC lies in the ideal")
    ubar = [0] * (n + 1)
    ubar[n], ubar[1], ubar[0] = 1, Bb, Cb
    ubar = ff.trim(ubar)
    gamma = ff.expected_double_root(ctx, n, Bb, Cb)
    if ff.evaluate(ctx, ubar, gamma) or ff.evaluate(ctx, ff.derivative(ctx, ubar), gamma):
        raise AssertionError(f"gamma is not a multiple root mod {ideal.label()}")
    profile = ff.multiplicity_profile(ctx, ubar)
    if len(profile) != 1 or profile[0].multiplicity != 2 or profile[0].root != gamma or gamma == 0:
        raise AssertionError(f"multiplicity profile mod {ideal.label()} is {profile}")
    return {
        "ideal": ideal.describe(),
        "valuation": v,
        "gamma": str(gamma),
        "gamma_pretty": ctx.fmt(gamma),
        "gamma_in_prime_field": ctx.in_prime_field(gamma),
        "residue_field": ctx.describe(),
    }


def certify_K(
    quad: GeneralizedQuadruple, budget: FactorBudget = FactorBudget(), seed: int = ff.DEFAULT_SEED
) -> GaloisCertificate:
    """Gal(F/K) = S_{2g+1} for a generalized Mori quadruple over a supported K."""
    if not quad.valid:
        raise InvalidInput(f"not a generalized Mori quadruple: condition(s) {', '.join(quad.failed())} fail")
    notes: list[str] = []
    polygons = _polygons_at_2(quad)
    irreducible = all(pg["irreducible"] for pg in polygons)
    cycle = None
    try:
        cycle = _mod_prime_pattern(quad, seed)
    except AssertionError as exc:
        notes.append(f"cycle stage failed: {exc}")
    disc = _discriminant_data(quad)
    D0 = disc["D0"]
    if not disc["D0_minus_1_in_4O"]:
        notes.append("hypothesis violated: D0 - 1 is not in 4O")
    transposition = None
    budget_exhausted = False
    norm = D0.norm()
    fac = factorize(norm, budget.trial_bound, budget.pollard_iterations, budget.seed)
    for ell in sorted(fac.factors):
        if ell == 2 or transposition:
            continue
        for ideal in splitting(ell, quad.field):
            if not ideal.contains(D0):
                continue
            try:
                transposition = check_transposition_ideal(quad, ideal, D0)
                break
            except AssertionError as exc:
                notes.append(f"{ideal.label()}: {exc}")
    if transposition is None:
        budget_exhausted = not fac.complete
        notes.append("no transposition ideal found" + (" in the factored part" if budget_exhausted else ""))
    ok = irreducible and cycle is not None and disc["D0_minus_1_in_4O"]
    if ok and transposition:
        conclusion = Conclusion.FULL_SYMMETRIC
    elif ok and budget_exhausted:
        conclusion = Conclusion.CONDITIONAL
    else:
        conclusion = Conclusion.INCONCLUSIVE
    n = quad.n
    B, C = _quad_trinomial(quad)
    return GaloisCertificate(
        kind="quadfield",
        n=n,
        input=quad.to_json() | {"factor_budget": budget.to_json()},
        polynomials={
            "F": f"x^{n} - ({quad.b})*x - ({quad.c})/4",
            "U": f"x^{n} + ({B})*x + ({C})",
        },
        irreducibility_witness={"polygons_at_2": polygons, "irreducible": irreducible},
        cycle_witness=cycle,
        transposition_witness=transposition,
        discriminant={
            "Delta_U": disc["Delta_U"].coords(),
            "M": disc["M"],
            "D0": D0.coords(),
            "D0_pretty": str(D0),
            "D0_norm": str(norm),
            "D0_minus_1_in_4O": disc["D0_minus_1_in_4O"],
            "norm_factors": [[str(l), e] for l, e in fac.items()],
            "unfactored_cofactor": str(fac.cofactor),
        },
        conclusion=conclusion,
        ramification_report={
            "field": quad.field.name(),
            "class_number": 1,
            "totally_imaginary": True,
            "splitting_field_over_K": {"ramified_at": [pg["ideal"]["generator"] for pg in polygons if pg["irreducible"]]},
            "quadratic_subfield": {"unramified_at_all_divisors_of_2": disc["D0_minus_1_in_4O"]},
            "splitting_field_over_quadratic_subfield": {
                "group": f"A_{n}",
                "ramified_at_all_divisors_of_2": irreducible and disc["D0_minus_1_in_4O"],
                "unramified_outside_2": True,
            },
        },
        group_fact_basis=group_fact_basis(n),
        notes=notes,
        seed=seed,
    )


def quadruple_from_json(d: dict) -> GeneralizedQuadruple:
    K = ImagQuadField(int(d["d"]))
    gen = K(*(int(t) for t in _gen_coords(d["prime"]["generator"], K)))
    b = K(*(int(t) for t in d["b_coords"]))
    c = K(*(int(t) for t in d["c_coords"]))
    return validate_generalized_quadruple(K, int(d["g"]), gen, b, c)


def _gen_coords(text: str, K: ImagQuadField) -> list[int]:
    e = K.parse(text)
    return [e.x, e.y]


def verify_quadfield_certificate(cert: GaloisCertificate) -> Conclusion:
    quad = quadruple_from_json(cert.input)
    if not quad.valid:
        raise VerificationError("stored quadruple is not valid")
    irreducible = False
    if cert.irreducibility_witness:
        polygons = _polygons_at_2(quad)
        if [p["polygon"] for p in polygons] != [p["polygon"] for p in cert.irreducibility_witness["polygons_at_2"]]:
            raise VerificationError("Newton polygons differ from the stored witness")
        irreducible = all(p["irreducible"] for p in polygons)
    cycle = False
    if cert.cycle_witness:
        if _mod_prime_pattern(quad, cert.seed)["pattern"] != cert.cycle_witness["pattern"]:
            raise VerificationError("mod-prime pattern differs")
        cycle = True
    disc = _discriminant_data(quad)
    D0 = disc["D0"]
    if D0.coords() != cert.discriminant["D0"] or not disc["D0_minus_1_in_4O"]:
        raise VerificationError("stored D0 is wrong or D0 - 1 is not in 4O")
    transposition = False
    tw = cert.transposition_witness
    if tw:
        ideal = ideal_of(quad.field, quad.field.parse(tw["ideal"]["generator"]))
        try:
            again = check_transposition_ideal(quad, ideal, D0)
        except AssertionError as exc:
            raise VerificationError(str(exc)) from exc
        if again["gamma"] != tw["gamma"]:
            raise VerificationError("double root differs from the stored witness")
        transposition = True
    ok = irreducible and cycle
    if ok and transposition:
        return Conclusion.FULL_SYMMETRIC
    if ok and cert.discriminant.get("unfactored_cofactor", "1") != "1":
        return Conclusion.CONDITIONAL
    return Conclusion.INCONCLUSIVE


def _small_first(bound: int) -> list[int]:
    """0, 1, -1, 2, -2, ..., bound, -bound."""
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def _coordinate_pairs(bound: int) -> Iterator[tuple[int, int]]:
    order = _small_first(bound)
    for x in order:
        for y in order:
            yield x, y


def generate_quadruple(K: ImagQuadField, g: int, p_max: int = 200, coord_bound: int = 6) -> GeneralizedQuadruple:
    """First valid generalized quadruple in scan order.

    Scan order: rational primes p <= p_max with p not dividing 2g+1 and
    p = 1 mod 2g, increasing; then ideals above p in `splitting` order;
    then b coordinate pairs, then c = (ideal generator) * m over coordinate
    pairs m.  Each coordinate is enumerated 0, 1, -1, 2, -2, ... up to
    coord_bound, pairs lexicographic in (x, y).  Building c as a multiple of
    the generator keeps inert primes (where c must be divisible by p) in reach.
    """
    if p_max < 3 or coord_bound < 0:
        raise SearchExhausted("empty search bounds")
    p = 2
    while True:
        p = next_prime(p)
        if p > p_max:
            break
        if (2 * g + 1) % p == 0 or (p - 1) % (2 * g):
            continue
        for prime in splitting(p, K):
            ctx = prime.residue_field()
            for bx, by in _coordinate_pairs(coord_bound):
                b = K(bx, by)
                bt = residue_map(b, prime)
                if bt == 0 or not ctx.is_primitive(bt):
                    continue
                for mx, my in _coordinate_pairs(coord_bound):
                    c = prime.generator * K(mx, my)
                    if not c:
                        continue
                    quad = validate_generalized_quadruple(K, g, prime, b, c)
                    if quad.valid:
                        return quad
    raise SearchExhausted(f"no generalized quadruple for g = {g} with p <= {p_max}, |coords| <= {coord_bound}")
