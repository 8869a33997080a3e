import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from morigal import finfield as ff
from morigal.arith import primes_up_to
from morigal.intpoly import IntPolynomial
from morigal.padic import (
    NewtonPolygon,
    eisenstein_dumas,
    eisenstein_dumas_irreducible,
    hull_is_valid,
    newton_polygon,
    padic_valuation,
    v2,
)


def test_polygon_examples():
    f = IntPolynomial.from_fractions([Fraction(-3, 4), -2, 0, 1])
    pg = newton_polygon(f)
    assert pg.vertices == ((0, -2), (3, 0))
    assert [s.slope for s in pg.segments] == [Fraction(2, 3)]
    w = eisenstein_dumas(pg)
    assert w.irreducible and w.gcd == 1 and w.segment == ((0, -2), (3, 0))

    ell = 7
    pg = newton_polygon(IntPolynomial((-ell, 0, 1)), padic_valuation(ell))
    assert pg.vertices == ((0, 1), (2, 0))

    f5 = IntPolynomial.from_fractions([Fraction(-5, 4), -2, 0, 0, 0, 1])
    assert newton_polygon(f5).vertices == ((0, -2), (5, 0))


def test_lattice_point_on_segment_blocks_the_criterion():
    pg = NewtonPolygon(((0, 2), (4, 0)), ((0, 2), (4, 0)))
    w = eisenstein_dumas(pg)
    assert not w.irreducible and w.gcd == 2
    for e in range(1, 5):
        for n in range(2, 12):
            pg = NewtonPolygon(((0, 2 * e), (n, 0)), ((0, 2 * e), (n, 0)))
            assert eisenstein_dumas_irreducible(pg) == (Fraction(2 * e, n).denominator == n)


def test_valuations_are_exact():
    assert v2(Fraction(-3, 4)) == -2
    assert v2(-2) == 1
    assert padic_valuation(3)(Fraction(18, 5)) == 2


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-10**4, 10**4).filter(bool), min_size=2, max_size=9), st.integers(0, 4))
def test_hull_is_lower_and_convex(coeffs, e):
    pg = newton_polygon(IntPolynomial(tuple(coeffs), e))
    assert hull_is_valid(pg)


def rational_roots(coeffs):
    a0, an = coeffs[0], coeffs[-1]
    divisors = lambda m: [d for d in range(1, abs(m) + 1) if m % d == 0]
    roots = set()
    for p in divisors(a0):
        for q in divisors(an):
            for x in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * x**i for i, c in enumerate(coeffs)) == 0:
                    roots.add(x)
    return roots


def test_random_eisenstein_polynomials():
    rng = random.Random(200)
    small_primes = primes_up_to(30)
    for _ in range(200):
        ell = rng.choice(small_primes)
        n = rng.randint(2, 7)
        a0 = ell * rng.choice([k for k in range(-9, 10) if k % ell])
        middle = [ell * rng.randint(-9, 9) for _ in range(n - 1)]
        coeffs = [a0] + middle + [1]
        pg = newton_polygon(IntPolynomial(tuple(coeffs)), padic_valuation(ell))
        assert pg.vertices == ((0, 1), (n, 0))
        assert eisenstein_dumas_irreducible(pg)
        # no rational root, and total ramification: the reduction mod ell is x^n
        assert not rational_roots(coeffs)
        if ell > 2:
            ctx = ff.FqContext(ell)
            pat = ff.factor(ctx, ff.from_ints(ctx, coeffs))
            assert [(e.degree, e.multiplicity, e.factor) for e in pat.entries] == [(1, n, (0, 1))]
        q = rng.choice([p for p in primes_up_to(60) if p > 2 and p != ell])
        ctx = ff.FqContext(q)
        red = ff.from_ints(ctx, coeffs)
        pat = ff.factor(ctx, red)
        assert sum(pat.partition()) == n
        if n <= 3 and pat.is_squarefree():
            # an irreducible cubic or quadratic over Q can still split mod q,
            # but the factorization must reconstruct the reduction
            assert pat.product(ctx) == red
