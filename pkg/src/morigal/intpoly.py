"""Dense univariate polynomials over Z and Z[1/2].

Coefficients are stored as integers a_0..a_n together with an exponent e
so that the true coefficients are a_i / 2**e.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence


class NotReducibleAt2(ValueError):
    pass


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: tuple[int, ...]
    denom_exponent: int = 0

    def __post_init__(self) -> None:
        coeffs = tuple(int(a) for a in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        e = int(self.denom_exponent)
        if e < 0:
            coeffs = tuple(a << -e for a in coeffs)
            e = 0
        if not coeffs:
            e = 0
        elif e:
            shift = min(e, min(_v2(a) for a in coeffs if a))
            if shift:
                coeffs = tuple(a >> shift for a in coeffs)
                e -= shift
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "denom_exponent", e)

    # construction

    @classmethod
    def from_fractions(cls, values: Iterable[Fraction | int]) -> IntPolynomial:
        values = [Fraction(v) for v in values]
        e = 0
        for v in values:
            d = v.denominator
            if d & (d - 1):
                raise ValueError(f"denominator {d} is not a power of 2")
            e = max(e, d.bit_length() - 1)
        return cls(tuple(int(v * (1 << e)) for v in values), e)

    @classmethod
    def trinomial(cls, n: int, B: int, C: int) -> IntPolynomial:
        """x^n + B x + C."""
        if n < 2:
            raise ValueError("trinomial degree must be at least 2")
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        coeffs[1] += B
        coeffs[0] += C
        return cls(tuple(coeffs))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    # basic accessors

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def fractions(self) -> list[Fraction]:
        d = 1 << self.denom_exponent
        return [Fraction(a, d) for a in self.coefficients]

    def __getitem__(self, i: int) -> Fraction:
        if i < 0 or i >= len(self.coefficients):
            return Fraction(0)
        return Fraction(self.coefficients[i], 1 << self.denom_exponent)

    @property
    def leading(self) -> Fraction:
        return self[self.degree]

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.leading == 1

    def is_integral(self) -> bool:
        return self.denom_exponent == 0

    # arithmetic

    def _common(self, other: IntPolynomial) -> tuple[list[int], list[int], int]:
        e = max(self.denom_exponent, other.denom_exponent)
        a = [c << (e - self.denom_exponent) for c in self.coefficients]
        b = [c << (e - other.denom_exponent) for c in other.coefficients]
        return a, b, e

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _coerce(other)
        a, b, e = self._common(other)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)), e)

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-a for a in self.coefficients), self.denom_exponent)

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> IntPolynomial:
        return _coerce(other) - self

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _coerce(other)
        if not self or not other:
            return IntPolynomial(())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out), self.denom_exponent + other.denom_exponent)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        result = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: int | Fraction) -> Fraction:
        acc: Fraction | int = 0
        for a in reversed(self.coefficients):
            acc = acc * x + a
        return Fraction(acc, 1 << self.denom_exponent)

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(
            tuple(i * a for i, a in enumerate(self.coefficients) if i), self.denom_exponent
        )

    def content(self) -> Fraction:
        g = 0
        for a in self.coefficients:
            g = gcd(g, a)
        return Fraction(g, 1 << self.denom_exponent)

    def primitive_part(self) -> IntPolynomial:
        """Integral primitive polynomial with positive leading coefficient."""
        if not self:
            return self
        g = 0
        for a in self.coefficients:
            g = gcd(g, a)
        if self.coefficients[-1] < 0:
            g = -g
        return IntPolynomial(tuple(a // g for a in self.coefficients))

    def pseudo_divmod(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Integral pseudo-division: lc(other)^(m-n+1) * self = q * other + r."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.is_integral() or not other.is_integral():
            raise ValueError("pseudo-division is defined here for integral polynomials")
        a = list(self.coefficients)
        b = other.coefficients
        n = len(b) - 1
        m = len(a) - 1
        if m < n:
            return IntPolynomial(()), self
        lc = b[-1]
        q = [0] * (m - n + 1)
        for k in range(m - n, -1, -1):
            lead = a[n + k] if n + k < len(a) else 0
            q = [c * lc for c in q]
            q[k] += lead
            a = [c * lc for c in a]
            for j, bj in enumerate(b):
                a[j + k] -= lead * bj
        return IntPolynomial(tuple(q)), IntPolynomial(tuple(a[:n]))

    def scale_substitute(self, s: int) -> IntPolynomial:
        """Return s^n * f(x/s) for monic f of degree n."""
        if s == 0:
            raise ValueError("scale must be nonzero")
        if not self.is_monic():
            raise ValueError("scale_substitute expects a monic polynomial")
        n = self.degree
        return IntPolynomial(
            tuple(a * s ** (n - i) for i, a in enumerate(self.coefficients)), self.denom_exponent
        )

    def reduce_mod(self, ell: int) -> list[int]:
        """Coefficient list of the image in F_ell[x] (constant term first)."""
        if self.denom_exponent and ell % 2 == 0:
            raise NotReducibleAt2("polynomial with denominator 2^e has no reduction at 2")
        inv = pow(1 << self.denom_exponent, -1, ell) if self.denom_exponent else 1
        out = [a * inv % ell for a in self.coefficients]
        while out and out[-1] == 0:
            out.pop()
        return out

    # text form

    def __str__(self) -> str:
        body = "[" + ", ".join(str(a) for a in self.coefficients) + "]"
        return body if self.denom_exponent == 0 else f"{body} / 2^{self.denom_exponent}"

    def pretty(self, var: str = "x") -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            a = self[i]
            if a == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and abs(a) == 1:
                coef = "-" if a < 0 else "+"
                terms.append(f"{coef} {mono}")
            else:
                sign = "-" if a < 0 else "+"
                terms.append(f"{sign} {abs(a)}{'*' + mono if mono else ''}")
        if not terms:
            return "0"
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        m = re.fullmatch(r"\s*\[([^\]]*)\]\s*(?:/\s*2\^(\d+))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse polynomial {text!r}")
        body = m.group(1).strip()
        coeffs = tuple(int(tok) for tok in body.split(",")) if body else ()
        return cls(coeffs, int(m.group(2) or 0))


def _coerce(v: IntPolynomial | int) -> IntPolynomial:
    if isinstance(v, IntPolynomial):
        return v
    if isinstance(v, Fraction):
        return IntPolynomial.from_fractions([v])
    return IntPolynomial((int(v),))


@dataclass(frozen=True)
class Trinomial:
    """x^n + B x + C with B, C nonzero."""

    n: int
    B: int
    C: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("trinomial degree must be at least 2")
        if self.B == 0 or self.C == 0:
            raise ValueError("trinomial needs B != 0 and C != 0")

    def poly(self) -> IntPolynomial:
        return IntPolynomial.trinomial(self.n, self.B, self.C)

    def discriminant(self) -> int:
        return trinomial_discriminant(self.n, self.B, self.C)


def trinomial_discriminant(n: int, B, C):
    """Closed form for disc(x^n + Bx + C).

    Works for any ring elements B, C supporting + and ** (ints, OK elements).
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    s1 = -1 if (n * (n - 1) // 2) % 2 else 1
    s2 = -1 if ((n - 1) * (n - 2) // 2) % 2 else 1
    return s1 * n**n * C ** (n - 1) + s2 * (n - 1) ** (n - 1) * B**n


def subresultant_prs(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant of integral polynomials a, b (coefficients constant first).

    Uses the subresultant polynomial remainder sequence so intermediate
    coefficients stay integral and of controlled size.
    """
    A = IntPolynomial(tuple(a))
    Bp = IntPolynomial(tuple(b))
    if not A or not Bp:
        return 0
    m, n = A.degree, Bp.degree
    sign = 1
    if m < n:
        A, Bp = Bp, A
        m, n = n, m
        if (m * n) % 2:
            sign = -1
    if n == 0:
        return sign * Bp.coefficients[0] ** m
    g, h = 1, 1
    s = sign
    while True:
        delta = A.degree - Bp.degree
        if (A.degree * Bp.degree) % 2:
            s = -s
        _, R = A.pseudo_divmod(Bp)
        if not R:
            return 0
        lc = Bp.coefficients[-1]
        A = Bp
        divisor = g * h**delta
        Bp = IntPolynomial(tuple(_exact_div(c, divisor) for c in R.coefficients))
        g = lc
        # h <- g^delta / h^(delta-1)
        if delta == 0:
            pass
        else:
            h = _exact_div(g**delta, h ** (delta - 1))
        if Bp.degree == 0:
            # res = s * lc(B)^deg(A) scaled by the accumulated h
            d = A.degree
            t = Bp.coefficients[0]
            if d == 1:
                return s * t
            return s * _exact_div(t**d, h ** (d - 1))


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"inexact division {a} / {b}")
    return q


def resultant(a: IntPolynomial, b: IntPolynomial) -> Fraction:
    """Res(a, b) for polynomials over Z[1/2]."""
    r = subresultant_prs(a.coefficients, b.coefficients)
    scale = a.denom_exponent * max(b.degree, 0) + b.denom_exponent * max(a.degree, 0)
    return Fraction(r, 1 << scale)


def discriminant(u: IntPolynomial) -> Fraction | int:
    """(-1)^{n(n-1)/2} Res(u, u') / lc(u), computed by the subresultant PRS."""
    if u.degree < 1:
        raise ValueError("discriminant of a constant polynomial")
    n = u.degree
    res = resultant(u, u.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    d = sign * res / u.leading
    return int(d) if d.denominator == 1 else d


def evaluate_with(coeffs: Sequence[int], x: int, reducer: Callable[[int], int]) -> int:
    acc = 0
    for a in reversed(coeffs):
        acc = reducer(acc * x + a)
    return acc
