"""Certificates that Gal(f) = S_n, re-verification, and Frobenius statistics."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial, gcd
from typing import Any, Iterable

from . import finfield as ff
from .arith import primes_up_to, is_prime, is_square, valuation
from .intpoly import IntPolynomial, Trinomial, trinomial_discriminant
from .mori import (
    DiscriminantDecomposition,
    FactorBudget,
    InvalidInput,
    MoriQuadruple,
    TranspositionNotFound,
    build_trinomials,
    check_transposition_prime,
    d0_closed_form,
    decompose,
    find_transposition_prime,
    mod_p_pattern,
    validate_quadruple,
)
from .padic import eisenstein_dumas, newton_polygon
from .permgroups import MAX_DEGREE

SCHEMA_VERSION = 1
CYCLE_SCAN_BOUND = 10**4


class Conclusion(str, Enum):
    FULL_SYMMETRIC = "FullSymmetric"
    CONDITIONAL = "ConditionalFullSymmetric"
    INCONCLUSIVE = "Inconclusive"


class HypothesisViolation(InvalidInput):
    def __init__(self, violations: dict[str, str]):
        self.violations = violations
        super().__init__("hypotheses violated: " + "; ".join(f"{k}: {v}" for k, v in violations.items()))


@dataclass
class GaloisCertificate:
    kind: str
    n: int
    input: dict
    polynomials: dict
    irreducibility_witness: dict | None
    cycle_witness: dict | None
    transposition_witness: dict | None
    discriminant: dict | None
    conclusion: Conclusion
    ramification_report: dict = field(default_factory=dict)
    group_fact_basis: str = ""
    notes: list[str] = field(default_factory=list)
    seed: int = ff.DEFAULT_SEED

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "n": self.n,
            "input": self.input,
            "polynomials": self.polynomials,
            "irreducibility_witness": self.irreducibility_witness,
            "cycle_witness": self.cycle_witness,
            "transposition_witness": self.transposition_witness,
            "discriminant": self.discriminant,
            "conclusion": self.conclusion.value,
            "ramification_report": self.ramification_report,
            "group_fact_basis": self.group_fact_basis,
            "notes": list(self.notes),
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, d: dict) -> GaloisCertificate:
        if d.get("schema_version") != SCHEMA_VERSION:
            raise InvalidInput(f"unsupported certificate schema {d.get('schema_version')!r}")
        return cls(
            kind=d["kind"],
            n=int(d["n"]),
            input=d["input"],
            polynomials=d["polynomials"],
            irreducibility_witness=d["irreducibility_witness"],
            cycle_witness=d["cycle_witness"],
            transposition_witness=d["transposition_witness"],
            discriminant=d["discriminant"],
            conclusion=Conclusion(d["conclusion"]),
            ramification_report=d.get("ramification_report", {}),
            group_fact_basis=d.get("group_fact_basis", ""),
            notes=list(d.get("notes", [])),
            seed=int(d.get("seed", ff.DEFAULT_SEED)),
        )


def group_fact_basis(n: int) -> str:
    if n <= MAX_DEGREE:
        return (
            f"transitive + (n-1)-cycle + transposition => S_{n}; "
            f"checked exhaustively by `oracle --n {n}`"
        )
    return f"transitive + (n-1)-cycle + transposition => S_{n}; standard group theory (doubly transitive group with a transposition)"


def _power_of_two_or_one(x: int) -> bool:
    x = abs(x)
    return x != 0 and x & (x - 1) == 0


def coefficient_gcds(n: int, B: int, C: int) -> dict[str, int]:
    return {"gcd(B,C)": gcd(B, C), "gcd(n,B)": gcd(n, B), "gcd(n-1,C)": gcd(n - 1, C)}


def _conclude(irreducible: bool, cycle: bool, transposition: bool, budget_exhausted: bool) -> Conclusion:
    if irreducible and cycle and transposition:
        return Conclusion.FULL_SYMMETRIC
    if irreducible and cycle and budget_exhausted:
        return Conclusion.CONDITIONAL
    return Conclusion.INCONCLUSIVE


def _mori_ramification(q: MoriQuadruple, dec: DiscriminantDecomposition, polygon_ok: bool, u: Trinomial) -> dict:
    n = q.n
    gcds = coefficient_gcds(u.n, u.B, u.C)
    odd_primes_clean = all(_power_of_two_or_one(v) for v in gcds.values())
    return {
        "quadratic_subfield": {
            "field": "Q(sqrt(D0))",
            "D0_mod_4": dec.D0 % 4,
            "unramified_at_2": dec.D0 % 4 == 1,
            "ramified_at_known_odd_primes": [str(l) for l, _ in dec.odd_valuation_primes()],
        },
        "splitting_field_over_Q": {"ramified_at_2": polygon_ok},
        "splitting_field_over_quadratic_subfield": {
            "group": f"A_{n}",
            "ramified_at_all_divisors_of_2": polygon_ok and dec.D0 % 4 == 1,
            "unramified_at_all_odd_primes": odd_primes_clean,
            "coefficient_gcds": {k: str(v) for k, v in gcds.items()},
        },
    }


def certify(
    q: MoriQuadruple,
    budget: FactorBudget = FactorBudget(),
    seed: int = ff.DEFAULT_SEED,
) -> GaloisCertificate:
    """Run the three-witness pipeline for a valid Mori quadruple."""
    q.require_valid()
    f, u = build_trinomials(q)
    n = q.n
    notes: list[str] = []

    pg = newton_polygon(f)
    ed = eisenstein_dumas(pg)
    irreducibility = {"valuation": "2-adic", "polygon": pg.to_json(), **ed.to_json()}

    cycle = None
    try:
        cycle = mod_p_pattern(q, seed).to_json()
    except AssertionError as exc:
        notes.append(f"cycle stage failed: {exc}")

    dec = d0_closed_form(q, budget)
    if is_square(dec.Delta_u):
        notes.append("discriminant is a square")
    transposition = None
    budget_exhausted = False
    try:
        transposition = find_transposition_prime(u, dec, exclude=(q.p,)).to_json()
    except TranspositionNotFound as exc:
        budget_exhausted = exc.budget_exhausted
        notes.append(f"transposition stage: {exc}")

    conclusion = _conclude(ed.irreducible, cycle is not None, transposition is not None, budget_exhausted)
    if not ed.irreducible:
        notes.append("irreducibility stage failed: Newton polygon is not a single lattice-free segment")
    return GaloisCertificate(
        kind="mori",
        n=n,
        input={"g": q.g, "p": str(q.p), "b": str(q.b), "c": str(q.c), "factor_budget": budget.to_json()},
        polynomials={"f": str(f), "u": str(u.poly()), "f_pretty": f.pretty(), "u_pretty": u.poly().pretty()},
        irreducibility_witness=irreducibility,
        cycle_witness=cycle,
        transposition_witness=transposition,
        discriminant=dec.to_json(),
        conclusion=conclusion,
        ramification_report=_mori_ramification(q, dec, ed.irreducible, u),
        group_fact_basis=group_fact_basis(n),
        notes=notes,
        seed=seed,
    )


def general_hypotheses(n: int, B: int, C: int) -> tuple[dict[str, str], int, int]:
    """Hypotheses of the general trinomial criterion; returns (violations, M, D0)."""
    violations: dict[str, str] = {}
    delta = trinomial_discriminant(n, B, C)
    M, D0 = 0, delta
    if delta == 0:
        violations["squarefree"] = "discriminant is zero"
        return violations, M, D0
    for name, value in coefficient_gcds(n, B, C).items():
        if not _power_of_two_or_one(value):
            violations[name] = f"{value} is neither 1 nor a power of 2"
    v = valuation(delta, 2)
    if v % 2:
        violations["2-adic valuation"] = f"v_2(Delta) = {v} is odd"
    M = v // 2
    D0 = delta // 4**M
    if D0 % 4 != 1:
        violations["D0 mod 4"] = f"D0 = {D0} is {D0 % 4} mod 4, not 1"
    if is_square(delta):
        violations["non-square"] = "discriminant is a perfect square"
    return violations, M, D0


def cycle_scan(u: Trinomial, delta: int, bound: int = CYCLE_SCAN_BOUND) -> dict[str, dict | None]:
    """First primes q < bound with factor patterns [n] and [1, n-1] at unramified q."""
    n = u.n
    want = {"n_cycle": (n,), "n_minus_1_cycle": tuple(sorted((1, n - 1)))}
    found: dict[str, dict | None] = {k: None for k in want}
    coeffs = u.poly().coefficients
    for q in primes_up_to(bound - 1):
        if q == 2 or delta % q == 0:
            continue
        pattern = ff.degree_pattern(coeffs, q)
        for key, target in want.items():
            if found[key] is None and pattern == target:
                found[key] = {"prime": str(q), "partition": list(pattern)}
        if all(found.values()):
            break
    return found


def certify_general_trinomial(
    n: int,
    B: int,
    C: int,
    budget: FactorBudget = FactorBudget(),
    scan_bound: int = CYCLE_SCAN_BOUND,
    seed: int = ff.DEFAULT_SEED,
) -> GaloisCertificate:
    """Transposition from an odd-valuation prime, plus a prime scan for double transitivity."""
    violations, M, D0 = general_hypotheses(n, B, C)
    if violations:
        raise HypothesisViolation(violations)
    u = Trinomial(n, B, C)
    delta = trinomial_discriminant(n, B, C)
    dec = decompose(delta, M, budget)
    notes = []
    transposition = None
    budget_exhausted = False
    try:
        transposition = find_transposition_prime(u, dec).to_json()
    except TranspositionNotFound as exc:
        budget_exhausted = exc.budget_exhausted
        notes.append(f"transposition stage: {exc}")
    scan = cycle_scan(u, delta, scan_bound)
    irreducible = scan["n_cycle"] is not None
    cycle = scan["n_minus_1_cycle"] is not None
    if transposition and not (irreducible and cycle):
        conclusion = Conclusion.CONDITIONAL
        notes.append("transposition certified; S_n conditional on double transitivity")
    else:
        conclusion = _conclude(irreducible, cycle, transposition is not None, budget_exhausted)
    return GaloisCertificate(
        kind="trinomial",
        n=n,
        input={"n": n, "B": str(B), "C": str(C), "factor_budget": budget.to_json(), "scan_bound": scan_bound},
        polynomials={"u": str(u.poly()), "u_pretty": u.poly().pretty()},
        irreducibility_witness={"method": "frobenius n-cycle", **(scan["n_cycle"] or {})} if irreducible else None,
        cycle_witness={"method": "frobenius (n-1)-cycle", **(scan["n_minus_1_cycle"] or {})} if cycle else None,
        transposition_witness=transposition,
        discriminant=dec.to_json(),
        conclusion=conclusion,
        ramification_report={
            "quadratic_subfield": {
                "D0_mod_4": dec.D0 % 4,
                "unramified_at_2": dec.D0 % 4 == 1,
                "ramified_at_known_odd_primes": [str(l) for l, _ in dec.odd_valuation_primes()],
            },
        },
        group_fact_basis=group_fact_basis(n),
        notes=notes,
        seed=seed,
    )


# re-verification


class VerificationError(AssertionError):
    pass


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise VerificationError(message)


def _verify_transposition(u: Trinomial, tw: dict, dec: DiscriminantDecomposition, exclude: Iterable[int] = ()) -> None:
    ell = int(tw["ell"])
    _check(ell not in set(exclude), f"transposition prime {ell} is excluded")
    _check(dec.D0 % ell == 0, f"{ell} does not divide D0")
    v = valuation(dec.Delta_u, ell)
    _check(v % 2 == 1 and v == int(tw["valuation"]), f"v_{ell}(Delta) = {v} is not the stored odd valuation")
    w = check_transposition_prime(u, ell)
    _check(w.gamma == int(tw["gamma"]), "double root differs from the stored witness")
    _check(w.pattern.to_json() == tw["pattern"], "factor pattern mod ell differs from the stored witness")


def _verify_discriminant(u: Trinomial, d: dict) -> DiscriminantDecomposition:
    dec = DiscriminantDecomposition.from_json(d)
    _check(dec.Delta_u == trinomial_discriminant(u.n, u.B, u.C), "stored discriminant is wrong")
    try:
        dec.check()
    except AssertionError as exc:
        raise VerificationError(str(exc)) from exc
    _check(dec.D0 % 4 == 1, "D0 is not 1 mod 4")
    return dec


def verify_certificate(cert: GaloisCertificate | dict) -> Conclusion:
    """Recompute the conclusion from the stored witnesses alone.

    Raises VerificationError when a stored witness does not check out.
    """
    if isinstance(cert, dict):
        cert = GaloisCertificate.from_json(cert)
    if cert.kind == "mori":
        return _verify_mori(cert)
    if cert.kind == "trinomial":
        return _verify_trinomial(cert)
    if cert.kind == "quadfield":
        from .numfield import verify_quadfield_certificate

        return verify_quadfield_certificate(cert)
    raise InvalidInput(f"unknown certificate kind {cert.kind!r}")


def _verify_mori(cert: GaloisCertificate) -> Conclusion:
    i = cert.input
    q = validate_quadruple(int(i["g"]), int(i["p"]), int(i["b"]), int(i["c"]))
    _check(q.valid, "stored quadruple is not valid")
    f, u = build_trinomials(q)
    _check(cert.polynomials["f"] == str(f) and cert.polynomials["u"] == str(u.poly()), "stored polynomials differ")
    irreducible = False
    if cert.irreducibility_witness:
        pg = newton_polygon(f)
        ed = eisenstein_dumas(pg)
        _check(
            pg.to_json()["vertices"] == cert.irreducibility_witness["polygon"]["vertices"],
            "Newton polygon differs from the stored witness",
        )
        irreducible = ed.irreducible and cert.irreducibility_witness["irreducible"]
    cycle = False
    if cert.cycle_witness:
        cw = mod_p_pattern(q, cert.seed)
        _check(cw.pattern.to_json() == cert.cycle_witness["pattern"], "mod-p pattern differs")
        cycle = True
    dec = _verify_discriminant(u, cert.discriminant)
    transposition = False
    if cert.transposition_witness:
        _verify_transposition(u, cert.transposition_witness, dec, exclude=(q.p,))
        transposition = True
    return _conclude(irreducible, cycle, transposition, not dec.complete)


def _verify_trinomial(cert: GaloisCertificate) -> Conclusion:
    n, B, C = int(cert.input["n"]), int(cert.input["B"]), int(cert.input["C"])
    violations, _, _ = general_hypotheses(n, B, C)
    _check(not violations, f"hypotheses violated: {violations}")
    u = Trinomial(n, B, C)
    dec = _verify_discriminant(u, cert.discriminant)

    def scan_ok(w: dict | None, target: tuple[int, ...]) -> bool:
        if not w:
            return False
        qq = int(w["prime"])
        _check(is_prime(qq) and qq != 2 and dec.Delta_u % qq != 0, f"{qq} is not an unramified odd prime")
        _check(ff.degree_pattern(u.poly().coefficients, qq) == target, f"pattern at {qq} differs")
        return True

    irreducible = scan_ok(cert.irreducibility_witness, (n,))
    cycle = scan_ok(cert.cycle_witness, tuple(sorted((1, n - 1))))
    transposition = False
    if cert.transposition_witness:
        _verify_transposition(u, cert.transposition_witness, dec)
        transposition = True
    if transposition and not (irreducible and cycle):
        return Conclusion.CONDITIONAL
    return _conclude(irreducible, cycle, transposition, not dec.complete)


# Frobenius statistics


Partition = tuple[int, ...]


@dataclass
class CycleTypeHistogram:
    n: int
    counts: dict[Partition, int]
    sample_size: int
    prime_bound: int

    def frequencies(self) -> dict[Partition, Fraction]:
        return {k: Fraction(v, self.sample_size) for k, v in self.counts.items()}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "prime_bound": self.prime_bound,
            "sample_size": self.sample_size,
            "counts": {" ".join(map(str, k)): v for k, v in sorted(self.counts.items())},
        }


def _patterns(coeffs: tuple[int, ...], primes: list[int]) -> Counter:
    return Counter(ff.degree_pattern(coeffs, q) for q in primes)


def frobenius_sample(
    u: Trinomial | IntPolynomial, prime_bound: int, jobs: int = 1
) -> CycleTypeHistogram:
    """Factorization patterns of u mod q for odd primes q <= bound not dividing Delta(u)."""
    poly = u.poly() if isinstance(u, Trinomial) else u
    if not poly.is_integral() or not poly.is_monic():
        raise InvalidInput("frobenius_sample expects a monic integral polynomial")
    from .intpoly import discriminant

    delta = discriminant(poly)
    if delta == 0:
        raise InvalidInput("polynomial is not squarefree")
    primes = [q for q in primes_up_to(prime_bound) if q != 2 and delta % q != 0]
    coeffs = poly.coefficients
    if jobs > 1 and len(primes) > 1000:
        chunks = [primes[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            counts = sum(pool.map(_patterns, [coeffs] * jobs, chunks), Counter())
    else:
        counts = _patterns(coeffs, primes)
    return CycleTypeHistogram(poly.degree, dict(counts), len(primes), prime_bound)


def partitions(n: int, largest: int | None = None) -> Iterable[Partition]:
    """Partitions of n as ascending tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield tuple(sorted(rest + (k,)))


def centralizer_order(part: Partition) -> int:
    out = 1
    for j, m in Counter(part).items():
        out *= factorial(m) * j**m
    return out


def sn_class_distribution(n: int) -> dict[Partition, Fraction]:
    """Proportion of S_n with each cycle type: 1 / z_lambda."""
    if n > 12:
        raise InvalidInput("class distribution supported for n <= 12")
    return {part: Fraction(1, centralizer_order(part)) for part in partitions(n)}


@dataclass
class DistributionComparison:
    deviation: Fraction
    missing: list[Partition]
    worst: Partition | None

    def to_json(self) -> dict:
        return {
            "deviation": float(self.deviation),
            "deviation_exact": str(self.deviation),
            "worst_partition": list(self.worst) if self.worst else None,
            "missing": [list(p) for p in self.missing],
        }


def compare_distribution(hist: CycleTypeHistogram, expected: dict[Partition, Fraction]) -> DistributionComparison:
    """L-infinity distance between empirical and expected cycle-type frequencies."""
    if hist.sample_size <= 0:
        raise InvalidInput("empty histogram")
    freq = hist.frequencies()
    worst, deviation = None, Fraction(0)
    for part in set(freq) | set(expected):
        d = abs(freq.get(part, Fraction(0)) - expected.get(part, Fraction(0)))
        if d > deviation:
            worst, deviation = part, d
    positive = [f for f in expected.values() if f > 0]
    missing = []
    if positive and hist.sample_size >= 50 / min(positive):
        missing = sorted(p for p, f in expected.items() if f > 0 and hist.counts.get(p, 0) == 0)
    return DistributionComparison(deviation, missing, worst)


def certificate_summary(cert: GaloisCertificate) -> dict[str, Any]:
    tw = cert.transposition_witness or {}
    return {
        "conclusion": cert.conclusion.value,
        "n": cert.n,
        "ell": tw.get("ell"),
        "gamma": tw.get("gamma"),
    }
