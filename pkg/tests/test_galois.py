import json
from fractions import Fraction

import pytest

from morigal.galois import (
    Conclusion,
    CycleTypeHistogram,
    GaloisCertificate,
    HypothesisViolation,
    VerificationError,
    centralizer_order,
    certify,
    certify_general_trinomial,
    compare_distribution,
    frobenius_sample,
    partitions,
    sn_class_distribution,
    verify_certificate,
)
from morigal.intpoly import Trinomial
from morigal.mori import FactorBudget, InvalidQuadruple, build_trinomials, validate_quadruple


def test_certify_g1():
    cert = certify(validate_quadruple(1, 3, 2, 1))
    assert cert.conclusion is Conclusion.FULL_SYMMETRIC
    assert cert.irreducibility_witness["polygon"]["vertices"] == [[0, -2], [3, 0]]
    assert cert.cycle_witness["partition"] == [1, 2]
    assert cert.transposition_witness["ell"] == "269"


def test_certify_g2():
    cert = certify(validate_quadruple(2, 5, 2, 1))
    assert cert.conclusion is Conclusion.FULL_SYMMETRIC
    assert (cert.transposition_witness["ell"], cert.transposition_witness["gamma"]) == ("13", "9")


def test_invalid_quadruple_gives_no_certificate():
    with pytest.raises(InvalidQuadruple):
        certify(validate_quadruple(2, 7, 3, 1))


def test_general_trinomial_examples():
    cert = certify_general_trinomial(5, -1, -1)
    assert cert.conclusion is Conclusion.FULL_SYMMETRIC
    assert cert.transposition_witness["ell"] == "19" and cert.transposition_witness["gamma"] == "13"
    assert cert.discriminant["Delta_u"] == "2869"
    assert certify_general_trinomial(3, -8, -6).conclusion is Conclusion.FULL_SYMMETRIC


def test_general_trinomial_hypothesis_gate():
    with pytest.raises(HypothesisViolation) as err:
        certify_general_trinomial(3, 3, 1)  # gcd(n, B) = 3
    assert "gcd(n,B)" in err.value.violations
    with pytest.raises(HypothesisViolation) as err:
        certify_general_trinomial(2, 0, 2)  # Delta = -8, odd 2-adic valuation
    assert "2-adic valuation" in err.value.violations


def _d0_by_hand(n, B, C):
    sign1 = -1 if (n * (n - 1) // 2) % 2 else 1
    sign2 = -1 if ((n - 1) * (n - 2) // 2) % 2 else 1
    delta = sign1 * n**n * C ** (n - 1) + sign2 * (n - 1) ** (n - 1) * B**n
    while delta and delta % 4 == 0:
        delta //= 4
    return delta


def test_d0_three_mod_four_is_rejected():
    seen = 0
    for n in range(2, 8):
        for B in range(-7, 8):
            for C in range(-7, 8):
                d0 = _d0_by_hand(n, B, C)
                if d0 and d0 % 4 == 3:
                    with pytest.raises(HypothesisViolation) as err:
                        certify_general_trinomial(n, B, C)
                    assert "D0 mod 4" in err.value.violations
                    seen += 1
    assert seen > 50


def test_certificates_reverify(quadruples):
    for q in quadruples[:10]:
        cert = certify(q)
        assert cert.conclusion is Conclusion.FULL_SYMMETRIC
        again = GaloisCertificate.from_json(json.loads(json.dumps(cert.to_json())))
        assert verify_certificate(again) == cert.conclusion
        assert verify_certificate(cert.to_json()) == cert.conclusion


def test_tampered_certificate_is_rejected():
    doc = certify(validate_quadruple(2, 5, 2, 1)).to_json()
    doc["transposition_witness"]["gamma"] = "8"
    with pytest.raises(VerificationError):
        verify_certificate(doc)
    doc = certify(validate_quadruple(2, 5, 2, 1)).to_json()
    doc["discriminant"]["D0"] = "-144028"
    with pytest.raises((VerificationError, AssertionError, ValueError)):
        verify_certificate(doc)


def test_certificate_is_deterministic():
    a = certify(validate_quadruple(2, 5, 2, 1), seed=3).to_json()
    b = certify(validate_quadruple(2, 5, 2, 1), seed=3).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_conditional_when_budget_runs_out(quadruples):
    # trial division to 10 and no Pollard steps leave composite cofactors unsplit
    budget = FactorBudget(trial_bound=10, pollard_iterations=0)
    conditional = 0
    for q in quadruples:
        cert = certify(q, budget)
        assert cert.conclusion in (Conclusion.CONDITIONAL, Conclusion.FULL_SYMMETRIC)
        if cert.conclusion is Conclusion.CONDITIONAL:
            conditional += 1
            assert cert.transposition_witness is None
            assert cert.discriminant["unfactored_cofactor"] != "1"
        assert verify_certificate(cert.to_json()) == cert.conclusion
    assert conditional


def test_class_distribution():
    d3 = sn_class_distribution(3)
    assert d3 == {(1, 1, 1): Fraction(1, 6), (1, 2): Fraction(1, 2), (3,): Fraction(1, 3)}
    d5 = sn_class_distribution(5)
    assert len(d5) == 7 and sum(d5.values()) == 1
    assert d5[(5,)] == Fraction(1, 5) and d5[(1, 4)] == Fraction(1, 4)
    assert sn_class_distribution(1) == {(1,): 1}
    for n in range(1, 9):
        assert sum(Fraction(1, centralizer_order(p)) for p in partitions(n)) == 1


def test_frobenius_small_sample():
    h = frobenius_sample(Trinomial(3, -8, -6), 100)
    assert set(h.counts) == {(1, 1, 1), (1, 2), (3,)}
    assert frobenius_sample(Trinomial(3, -8, -6), 2).sample_size == 0
    h = frobenius_sample(Trinomial(5, -32, -40), 10)
    assert h.counts == {(1, 4): 1, (1, 1, 3): 1} or (1, 4) in h.counts


def test_frobenius_includes_q5_for_g2_example():
    from morigal import finfield as ff

    assert ff.degree_pattern((-40, -32, 0, 0, 0, 1), 5) == (1, 4)
    h = frobenius_sample(Trinomial(5, -32, -40), 5)
    assert h.counts == {(1, 4): 1}


def test_compare_distribution_extremes():
    exp = sn_class_distribution(5)
    perfect = CycleTypeHistogram(5, {p: int(f * 120) for p, f in exp.items()}, 120, 0)
    assert compare_distribution(perfect, exp).deviation == 0
    lump = CycleTypeHistogram(5, {(5,): 1000}, 1000, 0)
    assert compare_distribution(lump, exp).deviation >= Fraction(3, 4)


def test_full_symmetric_certificates_see_all_witness_types(quadruples):
    for q in quadruples[:12]:
        _, u = build_trinomials(q)
        h = frobenius_sample(u, 10**4)
        n = q.n
        assert (n,) in h.counts
        assert tuple(sorted((1, n - 1))) in h.counts
        assert tuple([1] * (n - 2) + [2]) in h.counts


def test_parallel_sampling_matches_serial():
    u = Trinomial(5, -32, -40)
    a = frobenius_sample(u, 20000, jobs=1)
    b = frobenius_sample(u, 20000, jobs=2)
    assert a.counts == b.counts and a.sample_size == b.sample_size
