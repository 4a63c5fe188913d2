"""Character-level checks for the distinguished orbifold model.

The rank-4 even-sum lattice and its dual enter through exact theta
series (coefficients counted by bounded box enumeration, no floating
point).  The four irreducible module characters of the 8-dimensional
fermion algebra are matched against lattice theta quotients, the three
nontrivial cosets are checked to share one character (triality), and
the graded dimensions of the 24-fermion module and its twist are
compared with the corresponding sums of triple tensor products.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from . import modforms
from .report import CheckReport
from .series import QSeries, first_difference

COSETS = ("0", "1", "omega", "omegabar")

#: coset representatives in doubled coordinates
_REPS = {
    "0": (0, 0, 0, 0),
    "1": (2, 0, 0, 0),
    "omega": (1, 1, 1, 1),
    "omegabar": (-1, 1, 1, 1),
}


def _in_coset(m: tuple[int, int, int, int], label: str) -> bool:
    """Membership in doubled coordinates: vectors are m/2 with m integral."""
    parities = {x % 2 for x in m}
    if len(parities) != 1:
        return False
    odd = parities == {1}
    total = sum(m) % 4
    if label == "0":
        return not odd and total == 0
    if label == "1":
        return not odd and total == 2
    if label == "omega":
        return odd and total == 0
    if label == "omegabar":
        return odd and total == 2
    raise ValueError(f"unknown coset {label!r}")


@lru_cache(maxsize=None)
def d4_coset_theta(label: str, prec: int) -> QSeries:
    """Theta series of one dual-lattice coset, sum over q^(|v|^2/2).

    Exponent grid: |v|^2/2 = sum(m^2)/8 for doubled coordinates m, i.e.
    grid index 3*sum(m^2).
    """
    if label not in COSETS:
        raise ValueError(f"unknown coset {label!r}")
    bound = prec // 3  # need 3*sum(m^2) < prec
    radius = isqrt(bound)
    counts: dict[int, int] = {}
    rng = range(-radius, radius + 1)
    for m1 in rng:
        s1 = m1 * m1
        if 3 * s1 >= prec:
            continue
        for m2 in rng:
            s2 = s1 + m2 * m2
            if 3 * s2 >= prec:
                continue
            for m3 in rng:
                s3 = s2 + m3 * m3
                if 3 * s3 >= prec:
                    continue
                for m4 in rng:
                    s4 = s3 + m4 * m4
                    key = 3 * s4
                    if key >= prec:
                        continue
                    if _in_coset((m1, m2, m3, m4), label):
                        counts[key] = counts.get(key, 0) + 1
    return QSeries(counts, prec)


def dual_lattice_theta(prec: int) -> QSeries:
    """Theta series of the full dual lattice, enumerated independently."""
    bound = prec // 3
    radius = isqrt(bound)
    counts: dict[int, int] = {}
    rng = range(-radius, radius + 1)
    for m1 in rng:
        for m2 in rng:
            for m3 in rng:
                for m4 in rng:
                    m = (m1, m2, m3, m4)
                    parities = {x % 2 for x in m}
                    if len(parities) != 1:
                        continue
                    key = 3 * sum(x * x for x in m)
                    if key < prec:
                        counts[key] = counts.get(key, 0) + 1
    return QSeries(counts, prec)


def _fermion_char(dim: int, prec: int, insert_z: bool = False) -> QSeries:
    """Graded dimension of the dim-dimensional fermion algebra.

    Ground at -dim/48; the involution-inserted variant flips the sign of
    every mode factor.
    """
    sign = -1 if insert_z else 1
    prod = modforms._half_odd_product(prec + dim // 2, 24, sign) ** dim
    return prod.shift(-dim // 2).truncate(prec)


def _twisted_fermion_char(dim: int, prec: int, insert_z: bool = False) -> QSeries:
    """Graded dimension of the canonically-twisted module.

    2^(dim/2) ground states at grading dim/16 - dim/48 = dim/24; the
    involution kills the ground space outright (paired zero modes).
    """
    ground_key = dim  # 24 * dim/24
    if insert_z:
        return QSeries.zero(prec)
    prod = modforms._euler_product(max(prec - ground_key, 0), 24, +1) ** dim
    return (prod * (2 ** (dim // 2))).shift(ground_key).truncate(prec)


@lru_cache(maxsize=None)
def u_characters(prec: int) -> dict[str, QSeries]:
    """Characters of the four irreducible modules of the 8-fermion algebra."""
    plain = _fermion_char(8, prec)
    flipped = _fermion_char(8, prec, insert_z=True)
    half = Fraction(1, 2)
    tw_plain = _twisted_fermion_char(8, prec)
    tw_flip = _twisted_fermion_char(8, prec, insert_z=True)
    return {
        "0": (plain + flipped) * half,
        "1": (plain - flipped) * half,
        "omega": (tw_plain + tw_flip) * half,
        "omegabar": (tw_plain - tw_flip) * half,
    }


def module_character(prec: int) -> QSeries:
    """Graded dimension of the 24-fermion module (even + twisted-odd)."""
    half = Fraction(1, 2)
    even = (_fermion_char(24, prec) + _fermion_char(24, prec, True)) * half
    tw_odd = (_twisted_fermion_char(24, prec)
              - _twisted_fermion_char(24, prec, True)) * half
    return even + tw_odd


def twisted_module_character(prec: int) -> QSeries:
    """Graded dimension of its canonically-twisted companion."""
    half = Fraction(1, 2)
    odd = (_fermion_char(24, prec) - _fermion_char(24, prec, True)) * half
    tw_even = (_twisted_fermion_char(24, prec)
               + _twisted_fermion_char(24, prec, True)) * half
    return odd + tw_even


def verify_sigma_isomorphism(orders: int = 6) -> list[CheckReport]:
    """All character identities of the orbifold comparison, exactly."""
    prec = 24 * orders
    work = prec + 24
    reports: list[CheckReport] = []

    thetas = {label: d4_coset_theta(label, work) for label in COSETS}
    eta4_inv = (modforms.eta(work + 4) ** 4).inverse()
    u = u_characters(work)

    for label in COSETS:
        lhs = u[label]
        rhs = (thetas[label] * eta4_inv)
        reports.append(CheckReport.from_deviation(
            f"boson-fermion[{label}]", first_difference(lhs, rhs, prec)))

    for label in ("omega", "omegabar"):
        reports.append(CheckReport.from_deviation(
            f"triality[1 = {label}]", first_difference(u["1"], u[label], prec)))
    reports.append(CheckReport.from_deviation(
        "triality[lattice: omega = omegabar = 1]",
        first_difference(thetas["omega"], thetas["1"], prec)))

    total = thetas["0"] + thetas["1"] + thetas["omega"] + thetas["omegabar"]
    reports.append(CheckReport.from_deviation(
        "coset-partition[sum = dual theta]",
        first_difference(total, dual_lattice_theta(work), prec)))

    u0, u1, uw, uwb = u["0"], u["1"], u["omega"], u["omegabar"]
    ns_sum = u0 ** 3 + u0 * u1 * u1 * 3 + uw * uw * uwb * 3 + uwb ** 3
    rr_sum = u0 * u0 * u1 * 3 + u1 ** 3 + uw ** 3 + uw * uwb * uwb * 3
    reports.append(CheckReport.from_deviation(
        "module-character[8 summands]",
        first_difference(module_character(work), ns_sum, prec)))
    reports.append(CheckReport.from_deviation(
        "twisted-module-character[8 summands]",
        first_difference(twisted_module_character(work), rr_sum, prec)))

    # orbifold sector sums: the triality image of the same eight summands
    orb_ns = u0 ** 3 + u0 * uw * uw * 3 + u1 ** 3 + u1 * uwb * uwb * 3
    orb_rr = u0 * u0 * uw * 3 + uw ** 3 + u1 * u1 * uwb * 3 + uwb ** 3
    reports.append(CheckReport.from_deviation(
        "orbifold-sector[NS-NS]",
        first_difference(module_character(work), orb_ns, prec)))
    reports.append(CheckReport.from_deviation(
        "orbifold-sector[R-R]",
        first_difference(twisted_module_character(work), orb_rr, prec)))

    # no states at grading 1/2 - c/24 = 0 in the module itself
    zero_coeff = module_character(work).coeff(0)
    reports.append(CheckReport(
        "module-character[no q^0 term]",
        "pass" if zero_coeff.is_zero else "fail",
        None if zero_coeff.is_zero else {
            "q_exp": "0", "y_exp": "0", "lhs": str(zero_coeff), "rhs": "0"}))
    return reports
