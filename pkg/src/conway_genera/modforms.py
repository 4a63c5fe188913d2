"""Classical building blocks as exact truncated series.

Everything here is built from convergent product or sum formulas on the
(1/24)Z grid: the Dedekind eta function and its argument rescalings, the
discriminant form, the weight-2 Eisenstein combination Lambda_N, eta
products attached to Frame shapes together with their half-argument
ratios, the four Jacobi theta functions with their normalized quotients,
the standard weak Jacobi forms phi_{0,1} and phi_{-2,1}, and the order-2
Hecke operator.

All constructors take a truncation index `prec` on the (1/24)Z grid and
return a series truncated at exactly that index.  Results are cached;
series are immutable, so sharing cached objects is safe.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .report import CheckReport
from .series import GridError, JacobiSeries, QSeries, first_difference

#: theta-quotient selectors
THETA2 = "theta2"
THETA3 = "theta3"
THETA4 = "theta4"
THETA1SQ = "theta1sq"

_QUOTIENT_KINDS = (THETA2, THETA3, THETA4, THETA1SQ)

# grid head-room used when assembling eta products from their factors
_ETA_MARGIN = 36


def sigma1(n: int) -> int:
    """Divisor sum of n."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


@lru_cache(maxsize=None)
def _euler_product(prec: int, step: int, sign: int = -1) -> QSeries:
    """prod_{n>0} (1 + sign*q^(step*n/24)), truncated at grid index prec."""
    out = QSeries.one(prec)
    n = 1
    while step * n < prec:
        out = out * QSeries({0: 1, step * n: sign}, prec)
        n += 1
    return out


@lru_cache(maxsize=None)
def _half_odd_product(prec: int, step: int, sign: int = -1) -> QSeries:
    """prod_{n>0} (1 + sign*q^(step*(2n-1)/48)), truncated at prec.

    step is measured in whole-q units times 24, so the factor exponents
    are step*(2n-1)/2 grid indices; they must land on the integer grid.
    """
    if step % 2 != 0:
        raise GridError("grid violation: half-odd product steps off the (1/24)Z grid")
    out = QSeries.one(prec)
    n = 1
    while (step // 2) * (2 * n - 1) < prec:
        out = out * QSeries({0: 1, (step // 2) * (2 * n - 1): sign}, prec)
        n += 1
    return out


@lru_cache(maxsize=None)
def eta(prec: int) -> QSeries:
    """Dedekind eta: q^(1/24) * prod_{n>0} (1 - q^n)."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    return _euler_product(max(prec - 1, 0), 24).shift(1)


@lru_cache(maxsize=None)
def eta_scaled(m: int, prec: int) -> QSeries:
    """eta(m*tau) truncated at grid index prec."""
    return _euler_product(max(prec - m, 0), 24 * m).shift(m)


@lru_cache(maxsize=None)
def delta(prec: int) -> QSeries:
    """Ramanujan Delta = eta^24."""
    return (eta(prec + 23) ** 24).truncate(prec)


@lru_cache(maxsize=None)
def eisenstein_e2(prec: int) -> QSeries:
    """E_2 = 1 - 24 sum sigma_1(n) q^n (quasi-modular, weight 2)."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    coeffs = {0: 1}
    n = 1
    while 24 * n < prec:
        coeffs[24 * n] = -24 * sigma1(n)
        n += 1
    return QSeries(coeffs, prec)


@lru_cache(maxsize=None)
def lambda_n(n: int, prec: int) -> QSeries:
    """Lambda_N = (N/24) (N E_2(N tau) - E_2(tau)), weight 2 with level N."""
    if n < 2:
        raise ValueError("lambda_n requires N >= 2")
    e2_scaled = eisenstein_e2((prec + n - 1) // n).scale_argument(n)
    combo = (eisenstein_e2(prec) * (-1) + e2_scaled * n) * Fraction(n, 24)
    return combo.truncate(prec)


@lru_cache(maxsize=None)
def lambda2_half(variant: str, prec: int) -> QSeries:
    """Lambda_2 at half argument: tau/2 ("plain") or tau/2 + 1/2 ("shifted").

    Both live on the (1/2)Z exponent grid; the shifted variant is the
    half-period sign twist of the plain one.
    """
    if variant not in ("plain", "shifted"):
        raise ValueError(f"unknown lambda2_half variant {variant!r}")
    e2_half = eisenstein_e2(2 * prec).scale_argument(Fraction(1, 2))
    plain = ((eisenstein_e2(prec) * 2 - e2_half) * Fraction(1, 12)).truncate(prec)
    if variant == "plain":
        return plain
    return plain.half_period_shift()


def eta_product(fs, prec: int) -> QSeries:
    """prod_m eta(m*tau)^{k_m} for a Frame shape; leading term is q."""
    return _eta_product_cached(fs.factors, prec)


@lru_cache(maxsize=None)
def _eta_product_cached(factors: tuple, prec: int) -> QSeries:
    work = prec + _ETA_MARGIN
    out = QSeries.one(work)
    for m, k in factors:
        leaf = eta_scaled(m, work)
        piece = leaf ** abs(k)
        if k < 0:
            piece = piece.inverse()
        out = out * piece
    if out.trunc < prec:
        raise ValueError("internal truncation shortfall in eta_product")
    return out.truncate(prec)


def eta_ratio_half(fs, prec: int) -> QSeries:
    """The half-argument ratio of an eta product.

    Computed through the characteristic polynomial P(x) = prod (1-x^m)^{k_m}:
    the ratio equals q^(-1/2) prod_{n>0} P(q^(n-1/2)), with integer
    coefficients and exponents on the (1/2)Z grid.
    """
    return _eta_ratio_cached(fs.factors, prec)


@lru_cache(maxsize=None)
def _eta_ratio_cached(factors: tuple, prec: int) -> QSeries:
    work = prec + 12 + _ETA_MARGIN
    out = QSeries.one(work)
    for m, k in factors:
        leaf = _half_odd_product(work, 24 * m)
        piece = leaf ** abs(k)
        if k < 0:
            piece = piece.inverse()
        out = out * piece
    out = out.shift(-12)
    if out.trunc < prec:
        raise ValueError("internal truncation shortfall in eta_ratio_half")
    return out.truncate(prec)


# -- Jacobi theta functions ---------------------------------------------


@lru_cache(maxsize=None)
def theta_sum(i: int, prec: int) -> JacobiSeries:
    """Theta function from its defining sum.

    i in {2, 3, 4} gives theta_i; i = 1 gives the real-coefficient
    variant i*theta_1 = sum (-1)^n y^(n+1/2) q^((n+1/2)^2/2).
    """
    if i not in (1, 2, 3, 4):
        raise ValueError("theta index must be 1, 2, 3 or 4")
    coeffs = {}
    if i in (1, 2):
        n = 0
        while 3 * (2 * n + 1) ** 2 < prec:
            for m in (n, -n - 1):          # m and -(m+1) share (m+1/2)^2
                key = (3 * (2 * m + 1) ** 2, 2 * m + 1)
                coeffs[key] = (1 if m % 2 == 0 else -1) if i == 1 else 1
            n += 1
    else:
        coeffs[(0, 0)] = 1
        n = 1
        while 12 * n * n < prec:
            sign = (-1) ** n if i == 4 else 1
            coeffs[(12 * n * n, 2 * n)] = sign
            coeffs[(12 * n * n, -2 * n)] = sign
            n += 1
    return JacobiSeries(coeffs, prec)


def _pair_product(prec: int, sign: int, half: bool) -> JacobiSeries:
    """prod_{n>0} [(1 + sign*y*q^e)(1 + sign*y^{-1}*q^e)]^2, e = n or n-1/2."""
    out = JacobiSeries.one(prec)
    n = 1
    while True:
        key = 24 * n - 12 if half else 24 * n
        if key >= prec:
            break
        factor = JacobiSeries({(0, 0): 1, (key, 2): sign}, prec) \
            * JacobiSeries({(0, 0): 1, (key, -2): sign}, prec)
        out = out * (factor * factor)
        n += 1
    return out


@lru_cache(maxsize=None)
def theta_quotient(kind: str, prec: int) -> JacobiSeries:
    """Normalized theta quotients entering every genus formula.

    THETA2/3/4 give theta_i(tau,z)^2 / theta_i(tau,0)^2; THETA1SQ gives
    theta_1(tau,z)^2 / eta(tau)^6, which is -phi_{-2,1}.  All are built
    from the triple-product factorizations, so the z = 0 normalizers
    cancel exactly.
    """
    if kind not in _QUOTIENT_KINDS:
        raise ValueError(f"unknown theta quotient kind {kind!r}")
    if kind == THETA2:
        ground = JacobiSeries(
            {(0, 2): Fraction(1, 4), (0, 0): Fraction(1, 2), (0, -2): Fraction(1, 4)}, prec)
        num = _pair_product(prec, +1, half=False)
        den = _euler_product(prec, 24, +1) ** 4
    elif kind == THETA3:
        ground = JacobiSeries.one(prec)
        num = _pair_product(prec, +1, half=True)
        den = _half_odd_product(prec, 24, +1) ** 4
    elif kind == THETA4:
        ground = JacobiSeries.one(prec)
        num = _pair_product(prec, -1, half=True)
        den = _half_odd_product(prec, 24, -1) ** 4
    else:  # THETA1SQ = theta_1^2 / eta^6 = -(y - 2 + 1/y) * prod(...)
        ground = JacobiSeries({(0, 2): -1, (0, 0): 2, (0, -2): -1}, prec)
        num = _pair_product(prec, -1, half=False)
        den = _euler_product(prec, 24, -1) ** 4
    return (ground * num * den.inverse()).truncate(prec)


def theta_quotient_from_sums(i: int, prec: int) -> JacobiSeries:
    """The i in {2,3,4} quotient assembled from the theta sum formulas."""
    if i not in (2, 3, 4):
        raise ValueError("sum-formula quotient needs index 2, 3 or 4")
    work = prec + 24
    s = theta_sum(i, work)
    normalizer = s.specialize_z0()
    return (s * s * (normalizer * normalizer).inverse()).truncate(prec)


@lru_cache(maxsize=None)
def phi01(prec: int) -> JacobiSeries:
    """Weak Jacobi form of weight 0 and index 1 with phi(tau,0) = 12."""
    total = theta_quotient(THETA2, prec) + theta_quotient(THETA3, prec) \
        + theta_quotient(THETA4, prec)
    return total * 4


@lru_cache(maxsize=None)
def phi_minus21(prec: int) -> JacobiSeries:
    """Weak Jacobi form of weight -2 and index 1: -theta_1^2/eta^6."""
    return -theta_quotient(THETA1SQ, prec)


def hecke_t2(f: QSeries) -> QSeries:
    """Order-2 Hecke action on integer-exponent series.

    Coefficientwise: the new coefficient at q^n is the old coefficient
    at q^(2n); odd exponents are annihilated.
    """
    out = {}
    for k, v in f.coeffs.items():
        if k % 24 != 0:
            raise GridError(
                f"grid violation: q^{Fraction(k, 24)} is off the integer grid")
        if k % 48 == 0:
            out[k // 2] = v
    return QSeries(out, -((-f.trunc) // 2))


def verify_theta_identities(prec: int) -> list[CheckReport]:
    """Check the three quotient decompositions against phi_{0,1}, phi_{-2,1}.

    Each is an exact coefficient identity on the (1/2)Z grid; any
    nonzero deviation is reported with the offending exponent.
    """
    if prec < 48:
        raise ValueError("theta identity verification needs prec >= 48")
    p01 = phi01(prec)
    pm21 = phi_minus21(prec)
    twelfth = p01 * Fraction(1, 12)
    cases = [
        ("theta2-quotient = phi01/12 + 2*Lambda2*phi-21",
         twelfth + pm21 * lambda_n(2, prec) * 2, theta_quotient(THETA2, prec)),
        ("theta3-quotient = phi01/12 - Lambda2(tau/2+1/2)*phi-21",
         twelfth - pm21 * lambda2_half("shifted", prec), theta_quotient(THETA3, prec)),
        ("theta4-quotient = phi01/12 - Lambda2(tau/2)*phi-21",
         twelfth - pm21 * lambda2_half("plain", prec), theta_quotient(THETA4, prec)),
    ]
    return [CheckReport.from_deviation(name, first_difference(lhs, rhs, prec))
            for name, lhs, rhs in cases]
