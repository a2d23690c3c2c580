from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trilab.errors import IndeterminateEnclosure, NotSquarefree
from trilab.ratpoly import (BiPoly, SqrtEnclosure, UniPoly, cauchy_root_bound,
                            resultant_eliminating_x, sign_at, sqrt_enclosure,
                            sturm_chain, sturm_count)

rational = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_poly = st.lists(rational, min_size=0, max_size=6).map(UniPoly)


class TestUniPoly:
    def test_trims_trailing_zeros(self):
        assert UniPoly([1, 2, 0, 0]).coeffs == [Q(1), Q(2)]
        assert UniPoly([0, 0]).is_zero()

    def test_eval_horner(self):
        p = UniPoly([1, -3, 2])  # 2y^2 - 3y + 1
        assert p.eval(Q(1, 2)) == 0
        assert p.eval(1) == 0
        assert p.eval(3) == 10

    def test_divmod_exact(self):
        num = UniPoly([-2, 1]) * UniPoly([5, 3]) + UniPoly([7])
        q, r = num.divmod(UniPoly([-2, 1]))
        assert q == UniPoly([5, 3])
        assert r == UniPoly([7])

    def test_gcd(self):
        a = UniPoly([-1, 1]) * UniPoly([-2, 1])
        b = UniPoly([-1, 1]) * UniPoly([3, 1])
        assert a.gcd(b) == UniPoly([-1, 1])

    def test_divides(self):
        f = UniPoly([-4, 1]) ** 2 * UniPoly([1, 1])
        assert UniPoly([-4, 1]).divides(f)
        assert not UniPoly([-5, 1]).divides(f)

    def test_derivative(self):
        assert UniPoly([3, 2, 5]).derivative() == UniPoly([2, 10])

    @given(a=small_poly, b=small_poly, c=small_poly)
    @settings(max_examples=60, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a

    @given(a=small_poly, b=small_poly)
    @settings(max_examples=60, deadline=None)
    def test_divmod_reconstructs(self, a, b):
        if b.is_zero():
            return
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


class TestBiPoly:
    def test_eval_and_sections(self):
        p = BiPoly.from_x_sections({2: (1,), 0: (0, -1)})  # x^2 - y
        assert p.eval(3, 7) == 2
        assert p.deg_x() == 2

    def test_mul_matches_eval(self):
        a = BiPoly.from_x_sections({1: (2, 1), 0: (3,)})
        b = BiPoly.from_x_sections({2: (1,), 0: (-1, 4)})
        prod = a * b
        for x, y in ((2, 3), (-1, 5), (0, 0), (7, -2)):
            assert prod.eval(x, y) == a.eval(x, y) * b.eval(x, y)

    def test_x_coefficients_roundtrip(self):
        p = BiPoly.from_x_sections({2: (1, 2), 1: (), 0: (5,)})
        rows = p.x_coefficients()
        assert rows[2] == UniPoly([1, 2])
        assert rows[1].is_zero()
        assert rows[0] == UniPoly([5])


class TestResultant:
    def test_textbook(self):
        # res_x(x^2 - y, x - 1) = 1 - y up to sign
        f = BiPoly.from_x_sections({2: (1,), 0: (0, -1)})
        g = BiPoly.from_x_sections({1: (1,), 0: (-1,)})
        r = resultant_eliminating_x(f, g)
        assert r == UniPoly([1, -1]) or r == UniPoly([-1, 1])

    def test_common_factor_gives_zero(self):
        f = BiPoly.from_x_sections({2: (1,), 0: (0, -1)})
        assert resultant_eliminating_x(f, f).is_zero()

    def test_constant_in_x(self):
        f = BiPoly.from_x_sections({3: (1,), 0: (1,)})
        g = BiPoly.from_x_sections({0: (0, 2)})  # 2y
        r = resultant_eliminating_x(f, g)
        assert r == UniPoly([0, 0, 0, 8])  # (2y)^3

    def test_shared_root_detected(self):
        # f = (x - y)(x - 2), g = (x - y)(x + 1): common root for every y
        # where x = y works; eliminant must vanish at y where systems meet
        f = BiPoly.from_x_sections({2: (1,), 1: (-2, -1), 0: (0, 2)})
        g = BiPoly.from_x_sections({2: (1,), 1: (1, -1), 0: (0, -1)})
        r = resultant_eliminating_x(f, g)
        # common x-root exists for all y, so the eliminant is identically zero?
        # no: gcd over Q(y) is (x - y), nontrivial -> zero eliminant
        assert r.is_zero()


class TestSturm:
    def test_two_roots(self):
        p = UniPoly([-1, 1]) * UniPoly([-2, 1])
        assert sturm_count(p, (0, 3)) == 2
        assert sturm_count(p, (Q(3, 2), 3)) == 1
        assert sturm_count(p, (2, 5)) == 0  # half-open: root at 2 counted at left

    def test_half_open_convention(self):
        p = UniPoly([-1, 1]) * UniPoly([-2, 1])
        # (a, b] includes the right endpoint root
        assert sturm_count(p, (1, 2)) == 1

    def test_not_squarefree(self):
        p = UniPoly([-1, 1]) ** 2
        with pytest.raises(NotSquarefree):
            sturm_count(p, (0, 3))

    def test_cauchy_bound(self):
        p = UniPoly([-6, 1, 1])  # roots 2, -3
        b = cauchy_root_bound(p)
        assert b >= 3

    @given(roots=st.lists(st.integers(min_value=-8, max_value=8),
                          min_size=1, max_size=4, unique=True),
           lo=st.integers(min_value=-10, max_value=9))
    @settings(max_examples=60, deadline=None)
    def test_against_known_roots(self, roots, lo):
        p = UniPoly([1])
        for r in roots:
            p = p * UniPoly([-r, 1])
        hi = lo + 7
        expected = sum(1 for r in roots if lo < r <= hi)
        assert sturm_count(p, (lo, hi)) == expected

    def test_against_sign_scan_oracle(self, rng):
        # brute-force oracle: sign changes over a fine rational grid
        for _ in range(12):
            coeffs = rng.integers(-9, 10, size=rng.integers(3, 6))
            p = UniPoly(list(coeffs))
            if p.degree < 1 or p.gcd(p.derivative()).degree > 0:
                continue
            lo, hi = Q(-10), Q(10)
            n = 10_000
            step = (hi - lo) / n
            signs = []
            for k in range(n + 1):
                v = p.eval(lo + k * step)
                if v != 0:
                    signs.append(1 if v > 0 else -1)
            brute = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
            assert sturm_count(p, (lo, hi)) == brute

    def test_chain_structure(self):
        p = UniPoly([-2, 0, 1])
        chain = sturm_chain(p)
        assert chain.chain[0] == p
        assert chain.chain[1] == p.derivative()
        assert chain.chain[-1].degree == 0

    def test_chain_remainder_relation(self):
        # p_{k+1} = -(p_{k-1} mod p_k), exactly, and the tail is a nonzero
        # constant for squarefree input
        p = UniPoly([3, -1, -4, 0, 1])
        chain = sturm_chain(p).chain
        for k in range(1, len(chain) - 1):
            assert chain[k + 1] == -(chain[k - 1] % chain[k])
        assert chain[-1].degree == 0 and not chain[-1].is_zero()


class TestSqrtEnclosure:
    def test_sqrt2_bounds(self):
        e = sqrt_enclosure(2, digits=40)
        assert e.lower**2 <= 2 <= e.upper**2
        assert e.width <= Q(1, 10**39)

    def test_rational_square(self):
        e = sqrt_enclosure(Q(9, 4), digits=10)
        assert e.lower <= Q(3, 2) <= e.upper

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            SqrtEnclosure(Q(2), Q(3, 2), Q(1))
        with pytest.raises(ValueError):
            sqrt_enclosure(-1)

    def test_reciprocal(self):
        e = sqrt_enclosure(2, digits=30).reciprocal()
        assert e.lower**2 <= Q(1, 2) <= e.upper**2


class TestSignAt:
    def test_rational_point(self):
        p = UniPoly([-2, 0, 1])  # y^2 - 2
        assert sign_at(p, 1) == -1
        assert sign_at(p, 2) == 1
        assert sign_at(UniPoly([-4, 0, 1]), 2) == 0

    def test_enclosure_point(self):
        p = UniPoly([-2, 0, 1])
        e = sqrt_enclosure(3, digits=30)
        assert sign_at(p, e) == 1  # 3 - 2 > 0 at y = sqrt(3)

    def test_indeterminate(self):
        p = UniPoly([-2, 0, 1])  # vanishes exactly at sqrt(2)
        e = sqrt_enclosure(2, digits=30)
        with pytest.raises(IndeterminateEnclosure):
            sign_at(p, e)
