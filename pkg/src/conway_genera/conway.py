"""Frame-shape algebra and the bundled Conway class data.

A Frame shape prod_m m^{k_m} encodes the characteristic polynomial
prod_m (1 - x^m)^{k_m} of a group element acting on the 24-dimensional
space.  From it everything class-level follows exactly: the eigenvalue
multiset as cyclotomic multiplicities, the trace, the Frame shape of the
negated element, and the squares of the Clifford-module trace constants.
The loader checks each bundled table row against those closed forms, so
a transcription error in the data file cannot survive loading.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .scalars import RadicalScalar, parse_radical

LAMBENCIES = (2, 3, 4, 5, 7)

#: ambient dimension of the permutation space
SPACE_DIM = 24


class DataError(Exception):
    """A class-data file failed to parse or to pass its invariants."""


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _moebius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class FrameShape:
    """Signed multiset m -> k_m with sum_m m*k_m = 24."""

    factors: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs) -> "FrameShape":
        merged: dict[int, int] = {}
        for m, k in pairs:
            m, k = int(m), int(k)
            if m < 1:
                raise ValueError("frame shape parts must be positive")
            merged[m] = merged.get(m, 0) + k
        factors = tuple(sorted((m, k) for m, k in merged.items() if k != 0))
        return cls(factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def degree(self) -> int:
        return sum(m * k for m, k in self.factors)

    @property
    def rank(self) -> int:
        """Dimension of the fixed space: the signed sum of exponents."""
        return sum(k for _, k in self.factors)

    def validate(self) -> None:
        if self.degree != SPACE_DIM:
            raise ValueError(
                f"inconsistent frame shape: degree {self.degree} != {SPACE_DIM}")
        self.cyclo()  # raises when not an eigenvalue multiset

    def cyclo(self) -> dict[int, int]:
        """Cyclotomic multiplicities a_d (primitive d-th roots of unity).

        Uses (1 - x^m) = prod_{d | m} Phi_d(x), so a_d = sum_{d | m} k_m.
        """
        mult: dict[int, int] = {}
        for m, k in self.factors:
            for d in _divisors(m):
                mult[d] = mult.get(d, 0) + k
        mult = {d: a for d, a in mult.items() if a != 0}
        for d, a in mult.items():
            if a < 0:
                raise ValueError(
                    f"not an eigenvalue multiset: multiplicity {a} at order {d}")
        return mult

    def chi(self) -> int:
        """Trace on the 24-dimensional space.

        Computed as the Moebius-weighted sum over cyclotomic
        multiplicities; cross-checked against the linear coefficient of
        the characteristic polynomial, which is the exponent of 1.
        """
        mult = self.cyclo()
        trace = sum(a * _moebius(d) for d, a in mult.items())
        k1 = dict(self.factors).get(1, 0)
        if trace != k1:
            raise ValueError(
                f"internal consistency error: trace {trace} != exponent-of-1 {k1}")
        return trace

    def negate(self) -> "FrameShape":
        """Frame shape of the negated element.

        Odd parts m contribute (1 + x^m) = (1 - x^{2m})/(1 - x^m); even
        parts are untouched.
        """
        out: dict[int, int] = {}
        for m, k in self.factors:
            if m % 2 == 1:
                out[2 * m] = out.get(2 * m, 0) + k
                out[m] = out.get(m, 0) - k
            else:
                out[m] = out.get(m, 0) + k
        shape = FrameShape.from_pairs(out.items())
        try:
            shape.validate()
        except ValueError as exc:
            raise ValueError(f"inconsistent frame shape after negation: {exc}") from exc
        return shape

    def __str__(self) -> str:
        num = [f"{m}^{k}" for m, k in self.factors if k > 0]
        den = [f"{m}^{-k}" for m, k in self.factors if k < 0]
        text = " ".join(num) if num else "1^0"
        if den:
            text += " / " + " ".join(den)
        return text


def negate_frame_shape(fs: FrameShape) -> FrameShape:
    return fs.negate()


def frame_shape_to_cyclo(fs: FrameShape) -> dict[int, int]:
    return fs.cyclo()


def chi_of(fs: FrameShape) -> int:
    return fs.chi()


def c_squared_oracle(fs_g: FrameShape) -> Fraction:
    """Square of the twisted ground-state trace attached to -g.

    Equals the characteristic polynomial of -g evaluated at 1, which is
    prod m^{k'_m} over the negated shape when -g is fixed-point free and
    0 otherwise.
    """
    neg = fs_g.negate()
    if neg.cyclo().get(1, 0) > 0:
        return Fraction(0)
    value = Fraction(1)
    for m, k in neg.factors:
        value *= Fraction(m) ** k
    return value


def d_squared_oracle(fs_g: FrameShape, ell: int) -> Fraction:
    """Square of the index-(ell-1) trace multiplier for g.

    With d = 2(ell-1): zero when the fixed space is larger than 2d, and
    otherwise the limit of prod (1-x^m)^{k_m} / (1-x)^{2d} at x = 1,
    evaluated through (1-x^m)/(1-x) -> m.
    """
    if ell not in LAMBENCIES:
        raise ValueError(f"unsupported lambency {ell}")
    d = 2 * (ell - 1)
    a1 = fs_g.cyclo().get(1, 0)
    if a1 < 2 * d:
        raise ValueError(
            f"class fixes too small a space for lambency {ell} (rank {a1} < {2 * d})")
    if a1 > 2 * d:
        return Fraction(0)
    value = Fraction(1)
    for m, k in fs_g.factors:
        value *= Fraction(m) ** k
    if (12 - d) % 2 == 1:
        value = -value
    return value


@dataclass(frozen=True)
class ConwayClassRecord:
    """One row of the bundled class tables."""

    co0_name: str
    co1_name: str
    fs_g: FrameShape
    fs_neg_g: FrameShape
    c_neg_g: RadicalScalar
    d_magnitude: dict[int, RadicalScalar]
    gamma_g: str
    gamma_neg_g: str
    level: int | None

    @property
    def chi(self) -> int:
        return self.fs_g.chi()

    @property
    def rank(self) -> int:
        return self.fs_g.rank

    def in_table(self, ell: int) -> bool:
        return ell in self.d_magnitude

    def d_signed(self, ell: int, sign: int) -> RadicalScalar:
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return self.d_magnitude[ell] * sign


@dataclass(frozen=True)
class CoincidenceRelation:
    """One row of the coincidence tables.

    kind is "internal" (right side expressible in bundled genera),
    "anchor" (the row defining the translation dictionary) or
    "external" (right side refers to data outside the package).
    """

    lambency: int
    lhs_class: str
    lhs_sign: int
    kind: str
    rhs: tuple[tuple[Fraction, str, int], ...]
    source: str
    level: int | None


@dataclass
class ClassData:
    classes: dict[str, ConwayClassRecord]
    relations: list[CoincidenceRelation]

    def record(self, name: str) -> ConwayClassRecord:
        try:
            return self.classes[name]
        except KeyError:
            raise KeyError(f"unknown class {name!r}") from None

    def for_lambency(self, ell: int) -> list[ConwayClassRecord]:
        return [rec for rec in self.classes.values() if rec.in_table(ell)]


def default_data_dir() -> str | None:
    """Directory override from MOONSHINE_DATA_DIR, if set."""
    return os.environ.get("MOONSHINE_DATA_DIR") or None


def _read_json(directory: str | None, filename: str):
    if directory is not None:
        path = os.path.join(directory, filename)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    ref = resources.files("conway_genera").joinpath("data", filename)
    with ref.open("r", encoding="utf-8") as handle:
        return json.load(handle)


def _validate_record(rec: ConwayClassRecord) -> None:
    row = rec.co0_name
    try:
        rec.fs_g.validate()
    except ValueError as exc:
        raise DataError(f"row {row}, field pi_g: {exc}") from exc
    if rec.fs_g.negate() != rec.fs_neg_g:
        raise DataError(
            f"row {row}, field pi_neg_g: table value {rec.fs_neg_g} does not match "
            f"the negation {rec.fs_g.negate()}")
    if rec.fs_g.cyclo().get(1, 0) != rec.rank:
        raise DataError(f"row {row}: fixed-space rank disagrees between computations")
    rec.fs_g.chi()
    c_sq = rec.c_neg_g * rec.c_neg_g
    if c_sq != RadicalScalar.from_rational(c_squared_oracle(rec.fs_g)):
        raise DataError(
            f"row {row}, field c_neg_g: {rec.c_neg_g} squared does not match the "
            f"characteristic-polynomial value {c_squared_oracle(rec.fs_g)}")
    for ell, mag in rec.d_magnitude.items():
        want = d_squared_oracle(rec.fs_g, ell)
        if mag * mag != RadicalScalar.from_rational(want):
            raise DataError(
                f"row {row}, field d_mag[{ell}]: {mag} squared does not match the "
                f"characteristic-polynomial value {want}")


def load_class_data(directory: str | None = None) -> ClassData:
    """Load and validate the class and coincidence tables.

    directory defaults to the MOONSHINE_DATA_DIR override and then the
    bundled data.  Every record must pass the negation, trace and
    squared-constant invariants or loading fails naming the row.
    """
    if directory is None:
        directory = default_data_dir()
    try:
        raw = _read_json(directory, "classes.json")
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read class data: {exc}") from exc

    classes: dict[str, ConwayClassRecord] = {}
    for entry in raw["classes"]:
        try:
            rec = ConwayClassRecord(
                co0_name=entry["co0"],
                co1_name=entry["co1"],
                fs_g=FrameShape.from_pairs(entry["pi_g"]),
                fs_neg_g=FrameShape.from_pairs(entry["pi_neg_g"]),
                c_neg_g=parse_radical(entry["c_neg_g"]),
                d_magnitude={int(ell): parse_radical(text)
                             for ell, text in entry["d_mag"].items()},
                gamma_g=entry["gamma_g"],
                gamma_neg_g=entry["gamma_neg_g"],
                level=entry.get("level"),
            )
        except (KeyError, ValueError) as exc:
            raise DataError(f"row {entry.get('co0', '?')}: {exc}") from exc
        _validate_record(rec)
        if rec.co0_name in classes:
            raise DataError(f"row {rec.co0_name}: duplicate class name")
        classes[rec.co0_name] = rec

    try:
        raw_rel = _read_json(directory, "coincidences.json")
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read coincidence data: {exc}") from exc

    relations = []
    for entry in raw_rel["relations"]:
        kind = entry["kind"]
        if kind not in ("internal", "anchor", "external"):
            raise DataError(f"coincidence row {entry}: unknown kind {kind!r}")
        rhs = tuple(
            (Fraction(item["coeff"]), item["class"], int(item["sign"]))
            for item in entry.get("rhs", ()))
        rel = CoincidenceRelation(
            lambency=int(entry["lambency"]),
            lhs_class=entry["lhs"]["class"],
            lhs_sign=int(entry["lhs"]["sign"]),
            kind=kind,
            rhs=rhs,
            source=entry.get("source", ""),
            level=entry.get("level"),
        )
        if rel.lhs_class not in classes:
            raise DataError(f"coincidence row references unknown class {rel.lhs_class}")
        for _, name, _ in rel.rhs:
            if name not in classes:
                raise DataError(f"coincidence row references unknown class {name}")
        relations.append(rel)
    return ClassData(classes=classes, relations=relations)


@lru_cache(maxsize=None)
def _cached_load(directory: str | None) -> ClassData:
    return load_class_data(directory)


def bundled_data() -> ClassData:
    """The validated tables, loaded once per directory and cached."""
    return _cached_load(default_data_dir())
