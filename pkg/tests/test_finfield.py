import random

import pytest
from hypothesis import given, settings, strategies as st

from morigal import finfield as ff
from morigal.arith import primes_up_to
from morigal.intpoly import trinomial_discriminant


def naive_roots(coeffs, p):
    return [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0]


def test_factor_examples():
    F3, F5, F13 = ff.FqContext(3), ff.FqContext(5), ff.FqContext(13)
    pat = ff.factor(F3, [0, 1, 0, 1])
    assert [(e.degree, e.multiplicity, e.factor) for e in pat.entries] == [(1, 1, (0, 1)), (2, 1, (1, 0, 1))]
    pat = ff.factor(F5, [0, 0, 1])
    assert [(e.degree, e.multiplicity, e.factor) for e in pat.entries] == [(1, 2, (0, 1))]
    pat = ff.factor(F13, [12, 7, 0, 0, 0, 1])
    assert any(e.degree == 1 and e.multiplicity == 2 and e.factor == (-9 % 13, 1) for e in pat.entries)


def test_multiplicity_profile_examples():
    F13 = ff.FqContext(13)
    prof = ff.multiplicity_profile(F13, [12, 7, 0, 0, 0, 1])
    assert [(e.root, e.multiplicity) for e in prof] == [(9, 2)]
    assert ff.multiplicity_profile(F13, [1, 1, 0, 1]) == []
    F269 = ff.FqContext(269)
    prof = ff.multiplicity_profile(F269, [(-6) % 269, (-8) % 269, 0, 1])
    assert len(prof) == 1 and prof[0].multiplicity == 2
    gamma = prof[0].root
    assert gamma == ff.expected_double_root(F269, 3, -8, -6)
    assert naive_roots([-6, -8, 0, 1], 269).count(gamma) == 1
    assert (3 * gamma * gamma - 8) % 269 == 0


def test_expected_double_root_examples():
    assert ff.expected_double_root(ff.FqContext(13), 5, 7, 12) == 9
    assert ff.expected_double_root(ff.FqContext(19), 5, -1, -1) == 13
    assert (13**5 - 13 - 1) % 19 == 0
    assert ff.expected_double_root(ff.FqContext(7), 5, 3, 0) == 0


def test_order_and_powers():
    F3, F5 = ff.FqContext(3), ff.FqContext(5)
    assert F3.multiplicative_order(2) == 2 and F3.is_primitive(2)
    assert F5.multiplicative_order(2) == 4 and F5.is_primitive(2)
    assert F5.multiplicative_order(1) == 1
    assert F5.is_dth_power(4, 2) and not F5.is_dth_power(2, 2)
    assert all(F5.is_dth_power(a, 1) for a in range(1, 5))


def test_quadratic_extension_is_a_field():
    for p in (3, 5, 7, 163):
        F = ff.FqContext(p, 2)
        assert F.q == p * p
        assert F.t == ff.smallest_nonresidue(p)
        rng = random.Random(p)
        for _ in range(50):
            a = F.random(rng)
            if a == 0:
                continue
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.q - 1) == 1
        orders = {F.multiplicative_order(a) for a in range(1, F.q)} if p < 10 else set()
        if orders:
            assert max(orders) == F.q - 1


@st.composite
def poly_over(draw, primes=(3, 5, 7, 11, 13)):
    p = draw(st.sampled_from(primes))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=9))
    return p, coeffs + [1]


@settings(max_examples=150, deadline=None)
@given(poly_over())
def test_factor_reconstructs_and_factors_irreducible(data):
    p, coeffs = data
    ctx = ff.FqContext(p)
    pat = ff.factor(ctx, coeffs, check=True)
    assert pat.product(ctx) == ff.from_ints(ctx, coeffs)
    assert all(ff.is_irreducible(ctx, list(e.factor)) for e in pat.entries)
    linear_roots = sorted({(-e.factor[0]) % p for e in pat.entries if e.degree == 1})
    assert linear_roots == naive_roots(coeffs, p)
    assert sum(pat.partition()) == len(coeffs) - 1
    assert ff.FactorPattern.from_json(pat.to_json(), ctx.q) == pat


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(0, 48), min_size=1, max_size=5))
def test_factor_over_quadratic_extension(p, raw):
    ctx = ff.FqContext(p, 2)
    coeffs = [c % ctx.q for c in raw] + [1]
    pat = ff.factor(ctx, coeffs, check=True)
    assert pat.product(ctx) == ff.trim(coeffs)


def test_factor_is_deterministic_for_fixed_seed():
    ctx = ff.FqContext(10007)
    u = [3, 0, 5, 0, 0, 0, 0, 1, 9, 1]
    assert ff.factor(ctx, u, seed=11) == ff.factor(ctx, u, seed=11)


def test_gcd_with_derivative_iff_ell_divides_discriminant():
    rng = random.Random(41)
    for _ in range(120):
        n, B, C = rng.randint(2, 9), rng.randint(-300, 300), rng.randint(-300, 300)
        if B == 0 and C == 0:
            continue
        delta = trinomial_discriminant(n, B, C)
        for ell in rng.sample(primes_up_to(400)[1:], 8):
            ctx = ff.FqContext(ell)
            u = ff.from_ints(ctx, [C, B] + [0] * (n - 2) + [1])
            g = ff.gcd_poly(ctx, u, ff.derivative(ctx, u))
            assert (len(g) > 1) == (delta % ell == 0)


def test_degree_pattern_matches_full_factorization():
    rng = random.Random(2)
    for _ in range(100):
        p = rng.choice(primes_up_to(200)[1:])
        coeffs = [rng.randint(-50, 50) for _ in range(rng.randint(2, 7))] + [1]
        ctx = ff.FqContext(p)
        pat = ff.factor(ctx, ff.from_ints(ctx, coeffs))
        if pat.is_squarefree():
            assert ff.degree_pattern(coeffs, p) == pat.partition()


def test_binomial_irreducibility_criterion_against_factoring():
    for p in (3, 5, 7, 11, 13, 17):
        ctx = ff.FqContext(p)
        for a in range(1, p):
            for n in (2, 3, 4, 6):
                u = [(-a) % p] + [0] * (n - 1) + [1]
                assert ff.lang_binomial_irreducible(ctx, a, n) == ff.is_irreducible(ctx, u), (p, a, n)


def test_expected_double_root_rejects_degenerate():
    with pytest.raises(ff.FieldError):
        ff.expected_double_root(ff.FqContext(5), 5, 0, 1)
