"""Exact rational polynomial algebra: univariate/bivariate polynomials,
Sturm chains, subresultant elimination, and square-root enclosures.

Coefficients are ``fractions.Fraction`` throughout; nothing here ever
rounds. Univariate polynomials are coefficient lists in ascending degree
with trailing zeros trimmed; bivariate ones are sparse (i, j) -> Fraction
maps with no explicit zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import IndeterminateEnclosure, NotSquarefree

Q = Fraction


# ---------------------------------------------------------------------------
# univariate polynomials over Q
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls([])

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                        for i in range(n)])

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                        for i in range(n)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero() or other.is_zero():
                return UniPoly.zero()
            out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UniPoly(out)
        return UniPoly([c * Q(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def eval(self, x) -> Fraction:
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Interval Horner evaluation: encloses {p(x) : lo <= x <= hi}."""
        alo, ahi = Q(0), Q(0)
        for c in reversed(self.coeffs):
            cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
            alo, ahi = min(cands) + c, max(cands) + c
        return alo, ahi

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact euclidean division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Q(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lc = other.degree, other.lc()
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def divides(self, other: "UniPoly") -> bool:
        """True if self divides other exactly."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        terms = [f"{c}*y^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "UniPoly(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# bivariate polynomials over Q
# ---------------------------------------------------------------------------

class BiPoly:
    """Sparse bivariate polynomial: {(deg_x, deg_y): Fraction}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: Q(v) for k, v in terms.items() if v != 0}

    @classmethod
    def from_x_sections(cls, sections: dict) -> "BiPoly":
        """Build from {x_degree: (c0, c1, ... ascending in y)}."""
        terms = {}
        for xd, coeffs in sections.items():
            for yd, c in enumerate(coeffs):
                if c:
                    terms[(xd, yd)] = terms.get((xd, yd), Q(0)) + Q(c)
        return cls(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Q(0)) + v
        return BiPoly(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Q(0)) - v
        return BiPoly(out)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            out = {}
            for (i1, j1), a in self.terms.items():
                for (i2, j2), b in other.terms.items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = out.get(k, Q(0)) + a * b
            return BiPoly(out)
        return BiPoly({k: v * Q(other) for k, v in self.terms.items()})

    __rmul__ = __mul__

    def eval(self, x, y) -> Fraction:
        x, y = Q(x), Q(y)
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), Q(0))

    def x_coefficients(self) -> list[UniPoly]:
        """View as polynomial in x over Q[y]: ascending list of UniPoly in y."""
        if self.is_zero():
            return []
        rows = [{} for _ in range(self.deg_x() + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        out = []
        for row in rows:
            n = max(row, default=-1) + 1
            out.append(UniPoly([row.get(k, 0) for k in range(n)]))
        return out

    @classmethod
    def from_uni_in_y(cls, p: UniPoly) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})


# ---------------------------------------------------------------------------
# subresultant elimination of x from two bivariate polynomials
# ---------------------------------------------------------------------------

def _prem_x(A: list[UniPoly], B: list[UniPoly]) -> list[UniPoly]:
    """Pseudo-remainder of A by B, both ascending coefficient lists in x
    over Q[y]: prem(A, B) = lc(B)^(degA-degB+1) * A mod B."""
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    steps = 0
    while R and len(R) - 1 >= dB:
        steps += 1
        dR = len(R) - 1
        lead = R[-1]
        # R <- lcB * R - lead * x^(dR-dB) * B
        R = [lcB * c for c in R]
        shift = dR - dB
        for i, b in enumerate(B):
            R[shift + i] = R[shift + i] - lead * b
        while R and R[-1].is_zero():
            R.pop()
    # degree may drop by more than one per step; pad the skipped factors
    extra = (len(A) - 1) - dB + 1 - steps
    if extra > 0 and R:
        f = lcB**extra
        R = [c * f for c in R]
    return R


def _poly_list_div(R: list[UniPoly], d: UniPoly) -> list[UniPoly]:
    out = []
    for c in R:
        q, rem = c.divmod(d)
        if not rem.is_zero():
            raise ArithmeticError("inexact content division in subresultant PRS")
        out.append(q)
    return out


def resultant_eliminating_x(F: BiPoly, G: BiPoly) -> UniPoly:
    """Eliminant in y of two bivariate polynomials via the subresultant PRS.

    Returns the final degree-0-in-x member of the subresultant
    pseudo-remainder sequence: a univariate polynomial in y whose roots
    include every y admitting a common x-root. It can differ from the
    Sylvester resultant by a nonzero rational factor and extraneous
    content, which is what certificate checks tolerate.
    """
    A = F.x_coefficients()
    B = G.x_coefficients()
    if not A or not B:
        raise ValueError("resultant of a zero polynomial")
    if len(A) < len(B):
        A, B = B, A
    if len(B) == 1:
        return B[0] ** (len(A) - 1)
    g = UniPoly([1])
    h = UniPoly([1])
    while True:
        delta = (len(A) - 1) - (len(B) - 1)
        R = _prem_x(A, B)
        if not R:
            # nontrivial common factor: eliminant is identically zero
            return UniPoly.zero()
        if len(R) - 1 == 0:
            return R[0]
        denom = g * (h**delta)
        A, B = B, _poly_list_div(R, denom)
        g = A[-1]
        if delta >= 1:
            # h <- g^delta / h^(delta-1), exact by subresultant theory
            num = g**delta
            if delta > 1:
                q, rem = num.divmod(h ** (delta - 1))
                if not rem.is_zero():
                    raise ArithmeticError("inexact h update in subresultant PRS")
                h = q
            else:
                h = num


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------

@dataclass
class SturmChain:
    """Signed remainder sequence of a squarefree polynomial."""

    source: UniPoly
    chain: list

    def variations_at(self, x: Fraction) -> int:
        signs = []
        for p in self.chain:
            v = p.eval(x)
            if v != 0:
                signs.append(1 if v > 0 else -1)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p: UniPoly) -> SturmChain:
    """Build the Sturm chain; requires p squarefree."""
    if p.is_zero() or p.degree == 0:
        raise ValueError("Sturm chain needs a nonconstant polynomial")
    if p.gcd(p.derivative()).degree > 0:
        raise NotSquarefree("polynomial has repeated roots; take the squarefree part")
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return SturmChain(source=p, chain=chain)


def sturm_count(p: UniPoly, interval: tuple) -> int:
    """Exact number of distinct real roots of p in the half-open interval (a, b]."""
    a, b = Q(interval[0]), Q(interval[1])
    if a >= b:
        raise ValueError("interval must satisfy a < b")
    chain = sturm_chain(p)
    return chain.variations_at(a) - chain.variations_at(b)


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """All real roots of p lie in (-B, B) with B = 1 + max |a_i|/|a_n|."""
    if p.is_zero() or p.degree < 1:
        raise ValueError("root bound needs a nonconstant polynomial")
    lc = abs(p.lc())
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lc


# ---------------------------------------------------------------------------
# square-root enclosures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqrtEnclosure:
    """Rational bounds on sqrt(radicand): lower^2 <= radicand <= upper^2."""

    radicand: Fraction
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not (self.lower <= self.upper and self.lower**2 <= self.radicand
                and self.radicand <= self.upper**2):
            raise ValueError("invalid sqrt enclosure")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def reciprocal(self) -> "SqrtEnclosure":
        """Enclosure of sqrt(1/radicand) = 1/sqrt(radicand)."""
        return SqrtEnclosure(1 / self.radicand, 1 / self.upper, 1 / self.lower)


def sqrt_enclosure(radicand, digits: int = 40) -> SqrtEnclosure:
    """Enclose sqrt(radicand) to ~`digits` decimal digits with exact rationals.

    Scaled integer square root: with r = p/q, floor(sqrt(p*q*10^(2d)))
    over q*10^d is a lower bound and the next integer an upper bound.
    """
    r = Q(radicand)
    if r < 0:
        raise ValueError("radicand must be nonnegative")
    if r == 0:
        return SqrtEnclosure(r, Q(0), Q(0))
    p, q = r.numerator, r.denominator
    scale = 10**digits
    n = math.isqrt(p * q * scale * scale)
    lower = Q(n, q * scale)
    upper = Q(n + 1, q * scale)
    return SqrtEnclosure(r, lower, upper)


def sign_at(p: UniPoly, point) -> int:
    """Exact sign of p at a rational point or over a sqrt enclosure.

    Returns -1, 0 or +1. For enclosure points the interval image must
    exclude zero, else IndeterminateEnclosure asks the caller to refine.
    """
    if isinstance(point, SqrtEnclosure):
        if point.lower == point.upper:
            v = p.eval(point.lower)
            return 0 if v == 0 else (1 if v > 0 else -1)
        lo, hi = p.eval_interval(point.lower, point.upper)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        raise IndeterminateEnclosure(
            f"p maps enclosure to [{lo}, {hi}] which straddles zero")
    v = p.eval(Q(point))
    return 0 if v == 0 else (1 if v > 0 else -1)
