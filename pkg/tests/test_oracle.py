from fractions import Fraction

import pytest

from conway_genera import genera, oracle
from conway_genera.conway import FrameShape
from conway_genera.oracle import CycloNumber, OracleError
from conway_genera.scalars import RadicalScalar


def test_cyclotomic_polynomials():
    assert oracle.cyclotomic_poly(1) == (-1, 1)
    assert oracle.cyclotomic_poly(2) == (1, 1)
    assert oracle.cyclotomic_poly(4) == (1, 0, 1)
    assert oracle.cyclotomic_poly(6) == (1, -1, 1)
    assert oracle.cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_cyclo_number_roots():
    i = CycloNumber.root(4, 1)
    assert i * i == CycloNumber.from_rational(4, -1)
    z = CycloNumber.root(6, 1)
    assert z * z * z == CycloNumber.from_rational(6, -1)


def test_sqrt_embeddings_square_correctly():
    for order, p in ((8, 2), (24, 2), (24, 3), (40, 5), (120, 5)):
        root = oracle._sqrt_embedding(order, p)
        assert root * root == CycloNumber.from_rational(order, p)


def test_embed_and_recover_radical():
    x = RadicalScalar({1: Fraction(3, 2), 6: -2})
    c = oracle.embed_radical(x, 24)
    assert c.to_radical() == x


def test_to_radical_rejects_outside_field():
    z5 = CycloNumber.root(5, 1)
    with pytest.raises(OracleError):
        z5.to_radical()


def test_cm_ground_trace_identity():
    fs = FrameShape.from_pairs([(1, 24)])
    assert oracle.cm_ground_trace(fs, with_z=True).is_zero


def test_cm_ground_trace_negated_identity():
    fs = FrameShape.from_pairs([(2, 24), (1, -24)])
    t = oracle.cm_ground_trace(fs, with_z=True)
    assert (t * t).to_radical() == RadicalScalar.from_rational(2 ** 24)
    flipped = oracle.cm_ground_trace(fs, with_z=True, sign_choice=-1)
    assert flipped == -t
    assert t.to_radical().as_rational()[1] in (4096, -4096)


def test_cm_ground_trace_3c_negative(data):
    t = oracle.cm_ground_trace(data.record("3C").fs_neg_g, with_z=True)
    assert (t * t).to_radical() == RadicalScalar.from_rational(64)


def test_cm_trace_squares_match_oracles(data):
    from conway_genera.conway import c_squared_oracle
    for name in ("1A", "3B", "5C", "8D"):
        rec = data.record(name)
        t = oracle.cm_ground_trace(rec.fs_neg_g, with_z=True)
        assert (t * t).to_radical() \
            == RadicalScalar.from_rational(c_squared_oracle(rec.fs_g))


def test_enumerate_basis_counts():
    # degree <= 0: vacuum (-1/2) and the 24 single half-modes (0)
    assert len(oracle.enumerate_basis("untwisted", 0)) == 25
    # degree <= 1/2 adds the C(24,2) double half-modes
    assert len(oracle.enumerate_basis("untwisted", Fraction(1, 2))) == 25 + 276
    # twisted ground level: 2^12 zero-mode monomials
    assert len(oracle.enumerate_basis("twisted", 1)) == 4096
    assert oracle.enumerate_basis("twisted", 0) == []


def test_enumerate_basis_guard():
    with pytest.raises(ValueError, match="desk-scale"):
        oracle.enumerate_basis("untwisted", 4)


def _dimension_counts(monomials, untwisted):
    counts = {}
    for m in monomials:
        if untwisted:
            deg2 = -1 + sum(2 * n - 1 for (_, _, n) in m)
        else:
            deg2 = 2 * (1 + sum(n for (_, _, n) in m))
        counts[deg2] = counts.get(deg2, 0) + 1
    return counts


def test_untwisted_dimensions_match_product():
    # generating function q^(-1/2) prod (1+q^(n-1/2))^24
    from conway_genera import modforms
    prec = 24 * 3
    prod = modforms._half_odd_product(prec + 12, 24, +1) ** 24
    gen = prod.shift(-12)
    counts = _dimension_counts(oracle.enumerate_basis("untwisted", 2), True)
    for deg2, count in counts.items():
        assert gen.coeff(12 * deg2) == count
    # degree 1 level: C(24,3) triples plus 24 single three-half modes
    assert counts[2] == 2024 + 24


def test_twisted_dimensions_match_product():
    from conway_genera import modforms
    prec = 24 * 3
    gen = (modforms._euler_product(prec - 24, 24, +1) ** 24 * 4096).shift(24)
    counts = _dimension_counts(oracle.enumerate_basis("twisted", 2), False)
    for deg2, count in counts.items():
        assert gen.coeff(12 * deg2) == count


def _assert_brute_matches_q(brute, series):
    order = next(iter(brute.values())).order
    limit = max(brute)
    keys = set(brute) | {k for k in series.coeffs if k <= limit}
    for k in sorted(keys):
        want = oracle.embed_radical(series.coeff(k), order)
        have = brute.get(k, CycloNumber.zero(order))
        assert want == have, f"deviation at grid {k}"


def _assert_brute_matches_jacobi(brute, series):
    sample = next(iter(brute.values()))
    order = next(iter(sample.values())).order
    limit = max(brute)
    keys = set()
    for grid, charges in brute.items():
        keys.update((grid, 2 * c) for c in charges)
    keys.update(k for k in series.coeffs if k[0] <= limit)
    for grid, ry in sorted(keys):
        assert ry % 2 == 0
        want = oracle.embed_radical(series.coeff(grid, ry), order)
        have = brute.get(grid, {}).get(ry // 2, CycloNumber.zero(order))
        assert want == have, f"deviation at grid {grid}, y half-index {ry}"


REQUIRED = (("1A", 1), ("2B", 1), ("2D", 1), ("3D", 1), ("4D", 1), ("4D", -1))


@pytest.mark.parametrize("name,sign", REQUIRED)
def test_brute_traces_match_closed_forms(data, name, sign):
    rec = data.record(name)
    for which in ("g", "g_tw"):
        _assert_brute_matches_q(oracle.brute_ts(rec, which, 2),
                                genera.ts_g(rec, which, "chi", 3))
    _assert_brute_matches_jacobi(oracle.brute_phi(rec, sign, 2, 2),
                                 genera.phi_g(rec, sign, 3))


def test_brute_twisted_ground_dimension(data):
    rec = data.record("1A")
    tw = oracle.brute_trace(rec, "twisted", z_insertion=False, degree_bound=1)
    # identity class: plain trace at the ground level counts all 4096 states
    assert tw[24] == CycloNumber.from_rational(2, 4096)


def test_brute_trace_guard(data):
    with pytest.raises(ValueError, match="desk-scale"):
        oracle.brute_trace(data.record("1A"), "twisted", degree_bound=5)


def test_normalization_follows_requested_sign(data):
    rec = data.record("4D")
    plus = oracle.build_system(rec, j_weight=True, d_sign=1)
    minus = oracle.build_system(rec, j_weight=True, d_sign=-1)
    assert plus.d_product().to_radical() == rec.d_signed(2, 1)
    assert minus.d_product().to_radical() == rec.d_signed(2, -1)
    # and the ground trace stayed pinned in both cases
    want = oracle.embed_radical(rec.c_neg_g, plus.order)
    assert plus.cm_trace(with_z=False) == want
    assert minus.cm_trace(with_z=False) == want
