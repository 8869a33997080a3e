"""Mori quadruples, their trinomials, D0 and the search for a transposition prime."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Iterator

from . import finfield as ff
from .arith import (
    POLLARD_ITERATIONS,
    TRIAL_BOUND,
    factorize,
    is_prime,
    is_proven_prime,
    is_square,
    valuation,
)
from .intpoly import IntPolynomial, Trinomial, discriminant, trinomial_discriminant


class InvalidInput(ValueError):
    """Input outside the domain of an operation (exit code 1 at the CLI)."""


class InvalidQuadruple(InvalidInput):
    def __init__(self, quadruple: "MoriQuadruple"):
        self.quadruple = quadruple
        failed = ", ".join(quadruple.failed_conditions())
        super().__init__(f"{quadruple.label()} is not a Mori quadruple: condition(s) {failed} fail")


class TranspositionNotFound(RuntimeError):
    def __init__(self, message: str, budget_exhausted: bool):
        super().__init__(message)
        self.budget_exhausted = budget_exhausted


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = TRIAL_BOUND
    pollard_iterations: int = POLLARD_ITERATIONS
    seed: int = 0

    def to_json(self) -> dict:
        return {"trial_bound": self.trial_bound, "pollard_iterations": self.pollard_iterations, "seed": self.seed}


def _prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n).factors) if n > 1 else []


@dataclass(frozen=True)
class MoriQuadruple:
    g: int
    p: int
    b: int
    c: int
    conditions: dict[str, bool] = field(default_factory=dict, compare=False, hash=False)

    @property
    def valid(self) -> bool:
        return all(self.conditions[k] for k in ("i", "ii", "iii"))

    @property
    def n(self) -> int:
        return 2 * self.g + 1

    def failed_conditions(self) -> list[str]:
        return [k for k in ("i", "ii", "iii") if not self.conditions[k]]

    def label(self) -> str:
        return f"(g={self.g}, p={self.p}, b={self.b}, c={self.c})"

    def require_valid(self) -> "MoriQuadruple":
        if not self.valid:
            raise InvalidQuadruple(self)
        return self

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "p": str(self.p),
            "b": str(self.b),
            "c": str(self.c),
            "conditions": dict(self.conditions),
        }


def validate_quadruple(g: int, p: int, b: int, c: int) -> MoriQuadruple:
    """Check conditions (i)-(iii) independently.

    (i)   every prime divisor of g divides (p-1)/2;
    (ii)  b mod p is a primitive root;
    (iii) c odd, gcd(b, c) = gcd(b, 2g+1) = gcd(c, g) = 1.

    The extra congruence c = -p (mod 4) is recorded but not required.
    """
    if g < 1:
        raise InvalidInput("g must be a positive integer")
    if p < 3 or not is_prime(p):
        raise InvalidInput(f"p = {p} is not an odd prime")
    half = (p - 1) // 2
    cond_i = all(half % d == 0 for d in _prime_divisors(g))
    bp = b % p
    cond_ii = bp != 0 and ff.FqContext(p).is_primitive(bp)
    cond_iii = c % 2 == 1 and gcd(b, c) == 1 and gcd(b, 2 * g + 1) == 1 and gcd(c, g) == 1
    conditions = {
        "i": cond_i,
        "ii": cond_ii,
        "iii": cond_iii,
        "c_congruent_minus_p_mod_4": (c + p) % 4 == 0,
        "p_proven_prime": is_proven_prime(p),
    }
    return MoriQuadruple(g, p, b, c, conditions)


def build_trinomials(q: MoriQuadruple) -> tuple[IntPolynomial, Trinomial]:
    """f = x^{2g+1} - b x - pc/4 and u = 2^{2g+1} f(x/2) = x^n - 2^{2g} b x - 2^{2g-1} p c."""
    q.require_valid()
    n = q.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    coeffs[1] = Fraction(-q.b)
    coeffs[0] = Fraction(-q.p * q.c, 4)
    f = IntPolynomial.from_fractions(coeffs)
    u = Trinomial(n, -(4**q.g) * q.b, -(2 ** (2 * q.g - 1)) * q.p * q.c)
    if f.scale_substitute(2) != u.poly():
        raise AssertionError("scaled Mori trinomial mismatch")
    return f, u


@dataclass(frozen=True)
class DiscriminantDecomposition:
    """Delta(u) = 2^{2M} * D0 with D0 odd, plus a (possibly partial) factorization of D0."""

    Delta_u: int
    M: int
    D0: int
    known_prime_factors: tuple[tuple[int, int], ...]
    unfactored_cofactor: int = 1
    probable_primes: tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return self.unfactored_cofactor == 1

    def odd_valuation_primes(self) -> list[tuple[int, int]]:
        return [(l, v) for l, v in self.known_prime_factors if v % 2 == 1]

    def check(self) -> None:
        if self.Delta_u != 2 ** (2 * self.M) * self.D0:
            raise AssertionError("Delta(u) != 2^{2M} D0")
        if self.D0 % 2 == 0:
            raise AssertionError("D0 is even")
        rebuilt = self.unfactored_cofactor
        for l, v in self.known_prime_factors:
            rebuilt *= l**v
        if rebuilt != abs(self.D0):
            raise AssertionError("D0 does not reconstruct from its factors")

    def to_json(self) -> dict:
        return {
            "Delta_u": str(self.Delta_u),
            "M": self.M,
            "D0": str(self.D0),
            "known_prime_factors": [[str(l), v] for l, v in self.known_prime_factors],
            "unfactored_cofactor": str(self.unfactored_cofactor),
            "probable_primes": [str(l) for l in self.probable_primes],
        }

    @classmethod
    def from_json(cls, d: dict) -> DiscriminantDecomposition:
        return cls(
            int(d["Delta_u"]),
            int(d["M"]),
            int(d["D0"]),
            tuple((int(l), int(v)) for l, v in d["known_prime_factors"]),
            int(d["unfactored_cofactor"]),
            tuple(int(l) for l in d.get("probable_primes", ())),
        )


def d0_formula(g: int, b: int, c_total: int):
    """(-1)^g [(2g+1)^{2g+1} c^{2g} - 2^{6g} g^{2g} b^{2g+1}] with c_total = p*c.

    Works for any ring elements b, c_total supporting + and **.
    """
    n = 2 * g + 1
    sign = -1 if g % 2 else 1
    return sign * (n * (n**g * c_total**g) ** 2 - 2 ** (6 * g) * g ** (2 * g) * b**n)


def decompose(delta: int, M: int, budget: FactorBudget = FactorBudget()) -> DiscriminantDecomposition:
    D0, r = divmod(delta, 2 ** (2 * M))
    if r:
        raise AssertionError("discriminant not divisible by 2^{2M}")
    fac = factorize(D0, budget.trial_bound, budget.pollard_iterations, budget.seed)
    dec = DiscriminantDecomposition(
        delta, M, D0, tuple(fac.items()), fac.cofactor, tuple(sorted(fac.probable))
    )
    dec.check()
    return dec


def d0_closed_form(q: MoriQuadruple, budget: FactorBudget = FactorBudget()) -> DiscriminantDecomposition:
    """D0 of u for a valid quadruple, cross-checked three ways and factored within budget."""
    q.require_valid()
    g = q.g
    M = g * (2 * g - 1)
    D0 = d0_formula(g, q.b, q.p * q.c)
    _, u = build_trinomials(q)
    delta = trinomial_discriminant(u.n, u.B, u.C)
    if delta != 2 ** (2 * M) * D0:
        raise AssertionError("closed-form D0 disagrees with the trinomial discriminant")
    if g <= 5 and discriminant(u.poly()) != delta:
        raise AssertionError("closed-form discriminant disagrees with the subresultant route")
    if D0 % 2 == 0 or D0 % q.p == 0 or D0 % 4 != 1:
        raise AssertionError(f"D0 = {D0} violates D0 odd, p not dividing D0, D0 = 1 mod 4")
    return decompose(delta, M, budget)


def odd_valuation_primes(
    delta: int, budget: FactorBudget = FactorBudget()
) -> tuple[list[tuple[int, int]], int]:
    """Odd primes dividing delta to odd order, plus the unfactored cofactor."""
    if delta == 0:
        raise InvalidInput("discriminant is zero")
    odd = delta
    while odd % 2 == 0:
        odd //= 2
    fac = factorize(odd, budget.trial_bound, budget.pollard_iterations, budget.seed)
    return [(l, v) for l, v in fac.items() if v % 2 == 1], fac.cofactor


@dataclass(frozen=True)
class TranspositionWitness:
    ell: int
    gamma: int
    valuation: int
    pattern: ff.FactorPattern

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "gamma": str(self.gamma),
            "valuation": self.valuation,
            "pattern": self.pattern.to_json(),
        }


def check_transposition_prime(u: Trinomial, ell: int, seed: int = ff.DEFAULT_SEED) -> TranspositionWitness:
    """Verify that u mod ell has exactly one multiple root, double, in F_ell, equal to gamma.

    Raises AssertionError describing the first failed check.
    """
    if ell == 2 or not is_prime(ell):
        raise AssertionError(f"{ell} is not an odd prime")
    delta = trinomial_discriminant(u.n, u.B, u.C)
    v = valuation(delta, ell) if delta else 0
    ctx = ff.FqContext(ell)
    ubar = ff.from_ints(ctx, u.poly().coefficients)
    Bbar, Cbar = u.B % ell, u.C % ell
    gamma = ff.expected_double_root(ctx, u.n, Bbar, Cbar)
    if ff.evaluate(ctx, ubar, gamma) or ff.evaluate(ctx, ff.derivative(ctx, ubar), gamma):
        raise AssertionError(f"gamma = {gamma} is not a multiple root mod {ell}")
    if gamma == 0:
        raise AssertionError("double root is zero")
    profile = ff.multiplicity_profile(ctx, ubar)
    if len(profile) != 1 or profile[0].multiplicity != 2 or profile[0].root != gamma:
        raise AssertionError(f"multiplicity profile mod {ell} is {profile}, expected [({gamma}, 2)]")
    pattern = ff.factor(ctx, ubar, seed)
    reps = pattern.repeated()
    if len(reps) != 1 or reps[0].multiplicity != 2 or reps[0].degree != 1:
        raise AssertionError(f"factor pattern mod {ell} is not (x - gamma)^2 * squarefree")
    return TranspositionWitness(ell, gamma, v, pattern)


def find_transposition_prime(
    u: Trinomial, dec: DiscriminantDecomposition, exclude: Iterable[int] = ()
) -> TranspositionWitness:
    """Smallest odd prime of odd valuation in D0 (not excluded) passing the double-root check."""
    excluded = set(exclude)
    failures = []
    for ell, _ in dec.odd_valuation_primes():
        if ell == 2 or ell in excluded:
            continue
        try:
            return check_transposition_prime(u, ell)
        except AssertionError as exc:
            failures.append(f"{ell}: {exc}")
    if not dec.complete:
        raise TranspositionNotFound(
            f"no usable prime in the factored part; cofactor {dec.unfactored_cofactor} unfactored",
            budget_exhausted=True,
        )
    raise TranspositionNotFound("no usable prime found: " + "; ".join(failures), budget_exhausted=False)


@dataclass(frozen=True)
class CycleWitness:
    p: int
    pattern: ff.FactorPattern
    by_factorization: bool
    by_power_residues: bool

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "pattern": self.pattern.to_json(),
            "partition": list(self.pattern.partition()),
            "by_factorization": self.by_factorization,
            "by_power_residues": self.by_power_residues,
        }


def mod_p_pattern(q: MoriQuadruple, seed: int = ff.DEFAULT_SEED) -> CycleWitness:
    """f mod p = x (x^{2g} - b); the second factor is irreducible, giving a 2g-cycle."""
    f, u = build_trinomials(q)
    ctx = ff.FqContext(q.p)
    fbar = f.reduce_mod(q.p)
    # f(x) = u(2x) / 2^{2g+1}
    ubar = ff.from_ints(ctx, u.poly().coefficients)
    inv = pow(2, -(q.n), q.p)
    via_u = ff.trim([c * pow(2, i, q.p) * inv % q.p for i, c in enumerate(ubar)])
    if via_u != fbar:
        raise AssertionError("f mod p disagrees with u(2x)/2^n mod p")
    pattern = ff.factor(ctx, fbar, seed)
    binomial = [(-q.b) % q.p] + [0] * (2 * q.g - 1) + [1]
    expected_shape = tuple(sorted([(1, 1), (2 * q.g, 1)]))
    by_factor = pattern.shape() == expected_shape and any(
        e.factor == (0, 1) for e in pattern.entries
    ) and any(list(e.factor) == binomial for e in pattern.entries)
    by_lang = ff.lang_binomial_irreducible(ctx, q.b % q.p, 2 * q.g)
    if by_factor != by_lang or not by_factor:
        raise AssertionError(
            f"mod-p pattern check failed (factorization {by_factor}, power residues {by_lang})"
        )
    return CycleWitness(q.p, pattern, by_factor, by_lang)


def reduce_at(q: MoriQuadruple, ell: int, seed: int = ff.DEFAULT_SEED) -> dict:
    """Reductions of f and u modulo an odd prime ell, with factor patterns."""
    f, u = build_trinomials(q)
    ctx = ff.FqContext(ell)
    fbar = f.reduce_mod(ell)
    ubar = ff.from_ints(ctx, u.poly().coefficients)
    return {
        "ell": str(ell),
        "f_mod_ell": fbar,
        "u_mod_ell": ubar,
        "f_pattern": ff.factor(ctx, fbar, seed).to_json(),
        "u_pattern": ff.factor(ctx, ubar, seed).to_json(),
        "u_profile": [e.to_json() for e in ff.multiplicity_profile(ctx, ubar)],
    }


def delta_is_square(q: MoriQuadruple) -> bool:
    _, u = build_trinomials(q)
    return is_square(trinomial_discriminant(u.n, u.B, u.C))


def search_quadruples(
    g: int, p_range: Iterable[int], b_range: Iterable[int], c_range: Iterable[int]
) -> Iterator[MoriQuadruple]:
    """Valid quadruples with the given g, in lexicographic (p, b, c) order."""
    ps = sorted(p for p in set(p_range) if p >= 3 and is_prime(p))
    bs = sorted(set(b_range))
    cs = sorted(set(c_range))
    for p, b, c in product(ps, bs, cs):
        q = validate_quadruple(g, p, b, c)
        if q.valid:
            yield q


def double_root_hypotheses(n: int, B: int, C: int, ell: int) -> bool:
    """Hypotheses (i)-(iii) at ell: ell divides none of gcd(B,C), gcd(n,B), gcd(n-1,C)."""
    return all(x % ell for x in (gcd(B, C), gcd(n, B), gcd(n - 1, C)))
