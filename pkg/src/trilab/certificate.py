"""Machine verification of the quartic/sixth-derivative common-root claim.

The equal-mass consistency conditions at orders four and six reduce to
f4(a, 2^a) = 0 and f6(a, 2^a) = 0. This module certifies, in exact
rational arithmetic, that the only common roots over the reals are
a = 2 and a = 4:

  1. a Bezout-style identity L*f6 - M*f4 = R(y) turns common roots into
     roots of a single univariate R;
  2. R factors as -512 (y-16)(y-4)^4 (y+2)^2 f(y), so with y = 2^a > 0
     only y = 16, y = 4 and positive roots of f survive;
  3. a Sturm count shows f has exactly one positive root, located in
     (1/2, 1/sqrt(2)), i.e. a0 in (-1, -1/2);
  4. on that interval f4 cannot vanish: f4(a, 2^a) = 2^(3a) (g+ - g-)(-a)
     with both g's increasing, and g-(1/2) = 850 + 512*sqrt(2) > 1566
     already exceeds g+(1) = 1563.

The L, M, R tables are treated as a certificate to check, not re-derive;
an independent subresultant elimination cross-validates R's factor set.
"""
from __future__ import annotations

import json
import time
from fractions import Fraction

from .ratpoly import (BiPoly, Q, UniPoly, cauchy_root_bound,
                      resultant_eliminating_x, sign_at, sqrt_enclosure,
                      sturm_count)

# ---------------------------------------------------------------------------
# coefficient tables (x sections hold ascending y coefficients)
# ---------------------------------------------------------------------------

F4 = BiPoly.from_x_sections({
    2: (128, -36, 24, 1),
    1: (0, 224, -124, -10),
    0: (-256, -304, 104, 24),
})

F6 = BiPoly.from_x_sections({
    4: (6144, 6496, -1816, 60, 50, 1),
    3: tuple(-4 * c for c in (10496, 6520, -3676, 508, 266, 7)),
    2: tuple(4 * c for c in (256, -10288, -15032, 1952, 1846, 71)),
    1: tuple(-16 * c for c in (-5120, -10840, -9428, -148, 1186, 77)),
    0: tuple(64 * c for c in (-448, -1596, -1860, -299, 204, 30)),
})

L_COFACTOR = BiPoly.from_x_sections({
    1: (268435456, 5704253440, -4900519936, -10788732928, 1665391872,
        -2044335168, -339308448, -16071552, 3559728, -160420, 31166, 2482, 31),
    0: tuple(-4 * c for c in (67108864, -2313158656, -803405824, 6805321728,
                              4795789440, -1930678368, -379246848, -11684784,
                              1953024, 113414, -4550, 2707, 45)),
})

M_COFACTOR = BiPoly.from_x_sections({
    3: (12884901888, 291051143168, 129899692032, -865502298112, -665337083904,
        113529684992, 12851181696, -4933789824, -907026720, 25947264, 2714152,
        -299016, 79330, 3288, 31),
    2: tuple(-2 * c for c in (50465865728, 773060558848, -95409930240,
                              -2156632178688, -752601498624, 570103937280,
                              -53961508992, -60918928512, -6690174624,
                              59713360, 43040792, -1087920, 657030, 33936, 369)),
    1: tuple(8 * c for c in (14495514624, -274861129728, -257627258880,
                             562210586624, 1106047222784, 651747223040,
                             -45793043520, -80250740736, -9184728480,
                             -48378720, 67514796, -1554720, 605392, 54856, 715)),
    0: tuple(-32 * c for c in (1006632960, -19713228800, -94432198656,
                               -4409028608, 275213442304, 281906870976,
                               33707210784, -29192050368, -4054720752,
                               -83636004, 22319090, 845634, 17501, 28166, 450)),
})

F_POLY = UniPoly([-65536, -10276864, -5027392, 25146656, 27552272, 7538528,
                  -180256, -27646, 944, 21])

F_AT_HALF = Q(-697813379, 512)


def r_from_factors() -> UniPoly:
    """R(y) = -512 (y - 16)(y - 4)^4 (y + 2)^2 f(y)."""
    r = UniPoly([-512])
    r = r * UniPoly([-16, 1])
    r = r * UniPoly([-4, 1]) ** 4
    r = r * UniPoly([2, 1]) ** 2
    return r * F_POLY


# g+/g- term tables: (coefficient, beta power, factor (2^beta)^k)
G_PLUS_TERMS = ((128, 2, 3), (24, 2, 1), (1, 2, 0), (124, 1, 1), (10, 1, 0),
                (104, 0, 1), (24, 0, 0))
G_MINUS_TERMS = ((36, 2, 2), (224, 1, 2), (256, 0, 3), (304, 0, 2))


def g_eval_float(terms, beta: float) -> float:
    return sum(c * beta**j * (2.0**beta) ** k for c, j, k in terms)


def g_eval_half_integer(terms, beta: Fraction) -> tuple[Fraction, Fraction]:
    """Exact value a + b*sqrt(2) at beta with denominator 1 or 2."""
    beta = Q(beta)
    if beta.denominator not in (1, 2):
        raise ValueError("exact g evaluation supports half-integer beta only")
    a = Q(0)
    b = Q(0)
    for c, j, k in terms:
        e = beta * k  # exponent of 2
        whole = e.numerator // e.denominator if e.denominator == 1 else None
        if e.denominator == 1:
            val_a, val_b = Q(2) ** whole, Q(0)
        else:
            # e = n + 1/2  ->  2^e = 2^n * sqrt(2)
            n = (e.numerator - 1) // 2
            val_a, val_b = Q(0), Q(2) ** n
        factor = Q(c) * beta**j
        a += factor * val_a
        b += factor * val_b
    return a, b


def g_difference_bipoly() -> BiPoly:
    """y^3 * (g+ - g-) at beta = -x, with 2^(-x) rewritten via y = 2^x.

    A term c*beta^j*(2^beta)^k contributes c*(-x)^j*y^(3-k). Equal to F4
    as a polynomial identity, which certifies the g-splitting.
    """
    terms: dict = {}

    def add(table, sign):
        for c, j, k in table:
            key = (j, 3 - k)
            coeff = Q(sign * c) * Q(-1) ** j
            terms[key] = terms.get(key, Q(0)) + coeff

    add(G_PLUS_TERMS, +1)
    add(G_MINUS_TERMS, -1)
    return BiPoly(terms)


# ---------------------------------------------------------------------------
# claim-by-claim verification
# ---------------------------------------------------------------------------

def _claim(name: str, passed: bool, witness: dict, started: float) -> dict:
    return {"claim": name, "status": "pass" if passed else "FAIL",
            "witness": witness, "seconds": round(time.perf_counter() - started, 6)}


def verify_bezout() -> dict:
    """L*f6 - M*f4 must equal R exactly, monomial by monomial."""
    t0 = time.perf_counter()
    lhs = L_COFACTOR * F6 - M_COFACTOR * F4
    rhs = BiPoly.from_uni_in_y(r_from_factors())
    diff = lhs - rhs
    witness: dict = {"spot_eval_x3_y7": str(lhs.eval(3, 7))}
    if not diff.is_zero():
        bad = sorted(diff.terms)[:8]
        witness["mismatching_monomials"] = [
            {"x_deg": i, "y_deg": j, "excess": str(diff.terms[(i, j)])}
            for i, j in bad]
    return _claim("bezout_identity", diff.is_zero(), witness, t0)


def verify_r_factorization() -> dict:
    """Expansion of -512 (y-16)(y-4)^4 (y+2)^2 f(y) with explicit root checks."""
    t0 = time.perf_counter()
    r = r_from_factors()
    d = r
    mult4_ok = True
    for _ in range(4):
        if d.eval(4) != 0:
            mult4_ok = False
            break
        d = d.derivative()
    ok = r.eval(16) == 0 and r.eval(-2) == 0 and mult4_ok and r.degree == 16
    witness = {"degree": r.degree, "r_at_16": str(r.eval(16)),
               "root_4_multiplicity_ge_4": mult4_ok,
               "leading_coefficient": str(r.lc())}
    return _claim("r_factorization", ok, witness, t0)


def verify_resultant_rederivation() -> dict:
    """Independent elimination of x must reproduce R's nontrivial factors."""
    t0 = time.perf_counter()
    res = resultant_eliminating_x(F6, F4)
    target = UniPoly([-4, 1]) * UniPoly([-16, 1]) * F_POLY
    ok = (not res.is_zero()) and target.divides(res)
    witness = {"eliminant_degree": res.degree,
               "divisible_by_(y-4)(y-16)f": ok}
    return _claim("resultant_rederivation", ok, witness, t0)


def verify_sturm() -> dict:
    """f has exactly one positive real root."""
    t0 = time.perf_counter()
    bound = cauchy_root_bound(F_POLY)
    n_pos = sturm_count(F_POLY, (Q(0), bound))
    n_proxy = sturm_count(F_POLY, (Q(0), Q(10**6)))
    ok = n_pos == 1 and n_proxy == 1
    witness = {"cauchy_bound": str(bound), "roots_in_(0,bound]": n_pos,
               "roots_in_(0,1e6]": n_proxy}
    return _claim("sturm_one_positive_root", ok, witness, t0)


def verify_root_interval(digits: int = 40) -> dict:
    """f(1/2) < 0 exactly and f(1/sqrt 2) > 0 by enclosure, so the positive
    root sits in (1/2, 1/sqrt(2)) and a0 = log2(y0) in (-1, -1/2)."""
    t0 = time.perf_counter()
    v_half = F_POLY.eval(Q(1, 2))
    inv_sqrt2 = sqrt_enclosure(Q(1, 2), digits=digits)
    s_upper = sign_at(F_POLY, inv_sqrt2)
    # exact value in Q[sqrt(2)]: even powers of 1/sqrt2 are rational,
    # odd powers contribute sqrt(2)/2^(k+1)/... -- fold into (a, b)
    a = Q(0)
    b = Q(0)
    for k, c in enumerate(F_POLY.coeffs):
        if k % 2 == 0:
            a += c * Q(1, 2 ** (k // 2))
        else:
            b += c * Q(1, 2 ** ((k + 1) // 2))
    # numeric check that a + b*sqrt2 > 0 using the sqrt(2) enclosure
    sqrt2 = sqrt_enclosure(Q(2), digits=digits)
    lo = a + b * (sqrt2.lower if b >= 0 else sqrt2.upper)
    # alpha interval: 2^(-1) = 1/2 and (2^(-1/2))^2 = 1/2 map the y-interval
    # back to exponents (-1, -1/2) exactly
    alpha_ok = Q(2) ** -1 == Q(1, 2) and inv_sqrt2.radicand == Q(1, 2)
    ok = (v_half == F_AT_HALF and v_half < 0 and s_upper == 1 and lo > 0
          and alpha_ok)
    witness = {"f_at_1/2": str(v_half),
               "f_at_1/sqrt2_exact": f"{a} + {b}*sqrt(2)",
               "f_at_1/sqrt2_lower_bound": str(lo),
               "enclosure_digits": digits,
               "alpha_interval": "(-1, -1/2)"}
    return _claim("root_interval", ok, witness, t0)


def verify_g_bounds() -> dict:
    """The increasing g+/g- pair excludes a quartic-derivative root in
    (-1, -1/2): g-(1/2) = 850 + 512 sqrt(2) > 1566 while g+(1) = 1563."""
    t0 = time.perf_counter()
    identity_ok = g_difference_bipoly() == F4
    positive_ok = all(c > 0 for c, _, _ in G_PLUS_TERMS + G_MINUS_TERMS)
    a_minus, b_minus = g_eval_half_integer(G_MINUS_TERMS, Q(1, 2))
    a_plus, b_plus = g_eval_half_integer(G_PLUS_TERMS, Q(1))
    exact_ok = (a_minus, b_minus) == (Q(850), Q(512)) and \
               (a_plus, b_plus) == (Q(1563), Q(0))
    # sqrt(2) >= 181/128, so g-(1/2) >= 850 + 512*181/128 = 1574 > 1566
    sqrt2_lb = Q(181, 128)
    bound_ok = sqrt2_lb**2 <= 2 and a_minus + b_minus * sqrt2_lb > 1566
    mono_ok = (g_eval_float(G_PLUS_TERMS, 0.6) < g_eval_float(G_PLUS_TERMS, 0.9)
               and g_eval_float(G_MINUS_TERMS, 0.6) < g_eval_float(G_MINUS_TERMS, 0.9))
    contradiction_ok = a_minus + b_minus * sqrt2_lb > a_plus
    ok = all((identity_ok, positive_ok, exact_ok, bound_ok, mono_ok,
              contradiction_ok))
    witness = {"f4_splitting_identity": identity_ok,
               "all_term_coefficients_positive": positive_ok,
               "g_minus_at_1/2": f"{a_minus} + {b_minus}*sqrt(2)",
               "g_minus_lower_bound": str(a_minus + b_minus * sqrt2_lb),
               "g_plus_at_1": str(a_plus),
               "monotone_spot_check": mono_ok}
    return _claim("g_bounds_contradiction", ok, witness, t0)


def verify_known_common_roots() -> dict:
    """a = 2 (y = 4) and a = 4 (y = 16) do solve both consistency polynomials."""
    t0 = time.perf_counter()
    vals = {"f4(2,4)": F4.eval(2, 4), "f6(2,4)": F6.eval(2, 4),
            "f4(4,16)": F4.eval(4, 16), "f6(4,16)": F6.eval(4, 16)}
    ok = all(v == 0 for v in vals.values())
    return _claim("alpha_2_and_4_are_roots",
                  ok, {k: str(v) for k, v in vals.items()}, t0)


def build_certificate(digits: int = 40) -> dict:
    """Run every claim and assemble the JSON-able certificate."""
    t0 = time.perf_counter()
    claims = [
        verify_bezout(),
        verify_r_factorization(),
        verify_resultant_rederivation(),
        verify_sturm(),
        verify_root_interval(digits=digits),
        verify_g_bounds(),
        verify_known_common_roots(),
    ]
    all_pass = all(c["status"] == "pass" for c in claims)
    return {
        "claims": claims,
        "conclusion": "common roots of f4, f6 over alpha are {2, 4}"
                      if all_pass else "verification incomplete",
        "all_pass": all_pass,
        "total_seconds": round(time.perf_counter() - t0, 6),
    }


def certificate_json(digits: int = 40) -> str:
    return json.dumps(build_certificate(digits=digits), indent=2)
