"""Truncated formal Laurent series.

QSeries is a one-variable series in q with exponents on the (1/24)Z
grid: the coefficient of q^(n/24) is stored under the integer grid index
n, and all indices >= trunc are unknown.  JacobiSeries adds a second
variable y with exponents on the (1/2)Z grid (stored as half-indices)
and finite y-support at each q order.

Truncation is propagated pessimistically: a product is only known below
min(a.trunc + b.min_exp, b.trunc + a.min_exp), and no operation ever
fabricates coefficients past its truncation index.  All values are
immutable; operations are pure.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import RadicalScalar, format_radical

QGRID = 24   # q exponent = grid index / QGRID
YGRID = 2    # y exponent = half-index / YGRID


class GridError(ValueError):
    """An exponent left the admissible grid."""


def _coeff(x) -> RadicalScalar:
    if isinstance(x, RadicalScalar):
        return x
    return RadicalScalar({1: x})


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class QSeries:
    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc: int):
        trunc = int(trunc)
        data: dict[int, RadicalScalar] = {}
        for k, v in coeffs.items():
            k = int(k)
            if k >= trunc:
                continue
            v = _coeff(v)
            if not v.is_zero:
                data[k] = v
        self.coeffs = data
        self.trunc = trunc

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls({0: 1}, trunc)

    @classmethod
    def monomial(cls, key: int, coeff, trunc: int) -> "QSeries":
        return cls({key: coeff}, trunc)

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def min_key(self):
        return min(self.coeffs) if self.coeffs else None

    def _min_bound(self) -> int:
        # a series with no visible terms is still O(q^(trunc/24))
        return min(self.coeffs) if self.coeffs else self.trunc

    def coeff(self, key: int) -> RadicalScalar:
        if key >= self.trunc:
            raise ValueError(
                f"coefficient of q^{Fraction(key, QGRID)} is beyond the truncation order")
        return self.coeffs.get(key, RadicalScalar())

    def items(self):
        return sorted(self.coeffs.items())

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs, trunc)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar)):
            other = QSeries({0: other}, self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, RadicalScalar()) + v
        return QSeries(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({k: -v for k, v in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar)):
            c = _coeff(other)
            if c.is_zero:
                return QSeries.zero(self.trunc)
            return QSeries({k: v * c for k, v in self.coeffs.items()}, self.trunc)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc + other._min_bound(), other.trunc + self._min_bound())
        out: dict[int, RadicalScalar] = {}
        bitems = sorted(other.coeffs.items())
        for ka, va in sorted(self.coeffs.items()):
            for kb, vb in bitems:
                k = ka + kb
                if k >= trunc:
                    break
                prod = va * vb
                if k in out:
                    out[k] = out[k] + prod
                else:
                    out[k] = prod
        return QSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return (self ** (-n)).inverse()
        result = QSeries.one(self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        """Series b with self*b = 1 up to truncation."""
        m = self.min_key()
        if m is None:
            raise ZeroDivisionError("non-invertible series")
        # self = q^(m/24) * u with u a unit known to order trunc - m
        n_terms = self.trunc - m
        unit = {k - m: v for k, v in self.coeffs.items()}
        lead_inv = unit[0].inverse()
        inv: dict[int, RadicalScalar] = {0: lead_inv}
        for k in range(1, n_terms):
            acc = None
            for j, uj in unit.items():
                if 0 < j <= k:
                    vk = inv.get(k - j)
                    if vk is not None:
                        term = uj * vk
                        acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero:
                inv[k] = -(lead_inv * acc)
        return QSeries({k - m: v for k, v in inv.items()}, self.trunc - 2 * m)

    def shift(self, key: int) -> "QSeries":
        """Multiply by q^(key/24)."""
        return QSeries({k + key: v for k, v in self.coeffs.items()}, self.trunc + key)

    def scale_argument(self, factor) -> "QSeries":
        """Substitute tau -> factor*tau, i.e. map exponents e -> factor*e."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("argument scale factor must be positive")
        out = {}
        for k, v in self.coeffs.items():
            nk = factor * k
            if nk.denominator != 1:
                raise GridError(
                    f"grid violation: q^{Fraction(k, QGRID)} scaled by {factor} "
                    f"leaves the (1/{QGRID})Z grid")
            out[int(nk)] = v
        return QSeries(out, _ceil_frac(factor * self.trunc))

    def half_period_shift(self) -> "QSeries":
        """tau -> tau+1 on the q^(1/2) variable: negate half-odd exponents.

        Requires support on the (1/2)Z grid; integer exponents are fixed.
        """
        out = {}
        for k, v in self.coeffs.items():
            if k % (QGRID // 2) != 0:
                raise GridError(
                    f"grid violation: q^{Fraction(k, QGRID)} is off the (1/2)Z grid")
            out[k] = -v if (k // (QGRID // 2)) % 2 else v
        return QSeries(out, self.trunc)

    # -- comparison / output ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, tuple(sorted(self.coeffs.items()))))

    def agrees_with(self, other: "QSeries", through: int | None = None) -> bool:
        return first_difference(self, other, through) is None

    def dump(self) -> str:
        lines = []
        for k, v in self.items():
            lines.append(f"{Fraction(k, QGRID)} 0 {format_radical(v)}")
        return "\n".join(lines)

    def __repr__(self):
        head = ", ".join(
            f"q^{Fraction(k, QGRID)}: {format_radical(v)}" for k, v in self.items()[:6])
        return f"QSeries({{{head}{', ...' if len(self.coeffs) > 6 else ''}}}, trunc={self.trunc})"


class JacobiSeries:
    """Two-variable truncated series: keys are (q grid index, y half-index)."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc: int):
        trunc = int(trunc)
        data: dict[tuple[int, int], RadicalScalar] = {}
        for (kq, ry), v in coeffs.items():
            kq = int(kq)
            if kq >= trunc:
                continue
            v = _coeff(v)
            if not v.is_zero:
                data[(kq, int(ry))] = v
        self.coeffs = data
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc: int) -> "JacobiSeries":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "JacobiSeries":
        return cls({(0, 0): 1}, trunc)

    @classmethod
    def from_qseries(cls, f: QSeries) -> "JacobiSeries":
        return cls({(k, 0): v for k, v in f.coeffs.items()}, f.trunc)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _min_q_bound(self) -> int:
        return min(k for k, _ in self.coeffs) if self.coeffs else self.trunc

    def coeff(self, kq: int, ry: int) -> RadicalScalar:
        if kq >= self.trunc:
            raise ValueError(
                f"coefficient of q^{Fraction(kq, QGRID)} is beyond the truncation order")
        return self.coeffs.get((kq, ry), RadicalScalar())

    def q_row(self, kq: int) -> dict[int, RadicalScalar]:
        """All y half-index coefficients at one q grid index."""
        if kq >= self.trunc:
            raise ValueError(
                f"coefficient of q^{Fraction(kq, QGRID)} is beyond the truncation order")
        return {ry: v for (k, ry), v in self.coeffs.items() if k == kq}

    def items(self):
        return sorted(self.coeffs.items())

    def truncate(self, trunc: int) -> "JacobiSeries":
        if trunc > self.trunc:
            raise ValueError("cannot extend a truncated series")
        return JacobiSeries(self.coeffs, trunc)

    def __add__(self, other):
        if isinstance(other, QSeries):
            other = JacobiSeries.from_qseries(other)
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out.get(key, RadicalScalar()) + v
        return JacobiSeries(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return JacobiSeries({k: -v for k, v in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RadicalScalar)):
            c = _coeff(other)
            if c.is_zero:
                return JacobiSeries.zero(self.trunc)
            return JacobiSeries({k: v * c for k, v in self.coeffs.items()}, self.trunc)
        if isinstance(other, QSeries):
            other = JacobiSeries.from_qseries(other)
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        trunc = min(self.trunc + other._min_q_bound(), other.trunc + self._min_q_bound())
        out: dict[tuple[int, int], RadicalScalar] = {}
        bitems = sorted(other.coeffs.items())
        for (qa, ya), va in sorted(self.coeffs.items()):
            for (qb, yb), vb in bitems:
                kq = qa + qb
                if kq >= trunc:
                    break
                key = (kq, ya + yb)
                prod = va * vb
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return JacobiSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "JacobiSeries":
        if n < 0:
            raise ValueError("negative powers of a two-variable series are not supported")
        result = JacobiSeries.one(self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def specialize_z0(self) -> QSeries:
        """Set z = 0, i.e. sum the y-coefficients at each q order."""
        out: dict[int, RadicalScalar] = {}
        for (kq, _ry), v in self.coeffs.items():
            out[kq] = out.get(kq, RadicalScalar()) + v
        return QSeries(out, self.trunc)

    def __eq__(self, other):
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, tuple(sorted(self.coeffs.items()))))

    def agrees_with(self, other: "JacobiSeries", through: int | None = None) -> bool:
        return first_difference(self, other, through) is None

    def dump(self) -> str:
        lines = []
        for (kq, ry), v in self.items():
            lines.append(f"{Fraction(kq, QGRID)} {Fraction(ry, YGRID)} {format_radical(v)}")
        return "\n".join(lines)

    def __repr__(self):
        n = len(self.coeffs)
        return f"JacobiSeries(<{n} terms>, trunc={self.trunc})"


def first_difference(a, b, through: int | None = None):
    """First coefficient where two series disagree, or None.

    Comparison runs over all q grid indices below min(a.trunc, b.trunc)
    and, when given, below `through`.  Returns a dict describing the
    deviation, suitable for a report.
    """
    limit = min(a.trunc, b.trunc)
    if through is not None:
        limit = min(limit, through)
    qa = isinstance(a, QSeries)
    qb = isinstance(b, QSeries)
    if qa != qb:
        raise TypeError("cannot compare one- and two-variable series")
    keys = set()
    if qa:
        keys.update((k, 0) for k in a.coeffs if k < limit)
        keys.update((k, 0) for k in b.coeffs if k < limit)
        geta = lambda k: a.coeffs.get(k[0], RadicalScalar())
        getb = lambda k: b.coeffs.get(k[0], RadicalScalar())
    else:
        keys.update(k for k in a.coeffs if k[0] < limit)
        keys.update(k for k in b.coeffs if k[0] < limit)
        geta = lambda k: a.coeffs.get(k, RadicalScalar())
        getb = lambda k: b.coeffs.get(k, RadicalScalar())
    for key in sorted(keys):
        va, vb = geta(key), getb(key)
        if va != vb:
            return {
                "q_exp": str(Fraction(key[0], QGRID)),
                "y_exp": str(Fraction(key[1], YGRID)),
                "lhs": format_radical(va),
                "rhs": format_radical(vb),
            }
    return None
