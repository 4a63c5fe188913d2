import json

import pytest
from fractions import Fraction

from conway_genera.conway import (DataError, FrameShape, LAMBENCIES,
                                  c_squared_oracle, chi_of, d_squared_oracle,
                                  frame_shape_to_cyclo, load_class_data,
                                  negate_frame_shape)
from conway_genera.scalars import RadicalScalar


def fs(*pairs):
    return FrameShape.from_pairs(pairs)


def test_negate_identity_class():
    assert negate_frame_shape(fs((1, 24))) == fs((2, 24), (1, -24))


def test_negate_with_negative_exponents():
    assert negate_frame_shape(fs((3, 9), (1, -3))) \
        == fs((1, 3), (6, 9), (2, -3), (3, -9))


def test_negate_all_even_is_fixed():
    assert negate_frame_shape(fs((2, 12))) == fs((2, 12))


def test_negate_is_involution_on_every_row(data):
    for rec in data.classes.values():
        assert rec.fs_g.negate() == rec.fs_neg_g
        assert rec.fs_neg_g.negate() == rec.fs_g


def test_cyclo_multiplicities():
    assert frame_shape_to_cyclo(fs((2, 16), (1, -8))) == {1: 8, 2: 16}
    assert frame_shape_to_cyclo(fs((1, 24))) == {1: 24}
    assert frame_shape_to_cyclo(fs((3, 9), (1, -3))) == {1: 6, 3: 9}


def test_cyclo_rejects_negative_multiplicity():
    with pytest.raises(ValueError, match="not an eigenvalue multiset"):
        fs((1, 25), (5, -1), (4, 1)).cyclo()


def test_cyclo_degree_is_24_for_rows(data):
    from conway_genera.conway import _euler_phi
    for rec in data.classes.values():
        mult = rec.fs_g.cyclo()
        assert sum(a * _euler_phi(d) for d, a in mult.items()) == 24


def test_chi_values():
    assert chi_of(fs((1, 24))) == 24
    assert chi_of(fs((2, 12))) == 0
    assert chi_of(fs((1, 8), (2, 8))) == 8
    assert chi_of(fs((3, 9), (1, -3))) == -3


def test_chi_negation(data):
    for rec in data.classes.values():
        assert rec.fs_neg_g.chi() == -rec.fs_g.chi()


def test_rank_equals_fixed_multiplicity(data):
    for rec in data.classes.values():
        assert rec.fs_g.rank == rec.fs_g.cyclo().get(1, 0)


def test_c_squared_oracle_values():
    assert c_squared_oracle(fs((1, 24))) == 4096 ** 2
    assert c_squared_oracle(fs((3, 9), (1, -3))) == 64
    assert c_squared_oracle(fs((1, 8), (2, 8))) == 0


def test_c_squared_odd_part_shortcut(data):
    # when every part is odd, the value is the characteristic polynomial
    # at -1, i.e. prod over parts of 2^k
    for rec in data.classes.values():
        if any(m % 2 == 0 for m, _ in rec.fs_g.factors):
            continue
        shortcut = Fraction(1)
        for _, k in rec.fs_g.factors:
            shortcut *= Fraction(2) ** k
        assert c_squared_oracle(rec.fs_g) == shortcut, rec.co0_name


def test_d_squared_oracle_values():
    assert d_squared_oracle(fs((4, 8), (2, -4)), 2) == 4096
    assert d_squared_oracle(fs((5, 5), (1, -1)), 2) == 3125
    assert d_squared_oracle(fs((2, 16), (1, -8)), 3) == 65536
    assert d_squared_oracle(fs((1, 24)), 7) == 1
    # extra fixed vectors force zero
    assert d_squared_oracle(fs((1, 24)), 2) == 0


def test_d_squared_oracle_too_small_space():
    with pytest.raises(ValueError, match="fixes too small a space"):
        d_squared_oracle(fs((4, 6)), 3)


def test_oracles_reproduce_every_table_constant(data):
    for rec in data.classes.values():
        assert rec.c_neg_g * rec.c_neg_g \
            == RadicalScalar.from_rational(c_squared_oracle(rec.fs_g))
        for ell, mag in rec.d_magnitude.items():
            assert mag * mag \
                == RadicalScalar.from_rational(d_squared_oracle(rec.fs_g, ell))


def test_row_counts(data):
    assert len(data.classes) == 42
    per_ell = {ell: len(data.for_lambency(ell)) for ell in LAMBENCIES}
    assert per_ell[3] == 11
    assert per_ell[4] == 4
    assert per_ell[5] == 2
    assert per_ell[7] == 1
    only = data.for_lambency(7)[0]
    assert only.co0_name == "1A"
    assert only.d_magnitude[7] == RadicalScalar.from_rational(1)


def test_every_row_fixes_a_4_space(data):
    for rec in data.classes.values():
        assert rec.fs_g.cyclo().get(1, 0) >= 4


def test_corrupted_constant_fails_loading(data, tmp_path):
    raw = {"classes": []}
    for rec in data.classes.values():
        entry = {
            "co0": rec.co0_name, "co1": rec.co1_name,
            "pi_g": [list(p) for p in rec.fs_g.factors],
            "pi_neg_g": [list(p) for p in rec.fs_neg_g.factors],
            "c_neg_g": str(rec.c_neg_g),
            "d_mag": {str(k): str(v) for k, v in rec.d_magnitude.items()},
            "gamma_g": rec.gamma_g, "gamma_neg_g": rec.gamma_neg_g,
            "level": rec.level,
        }
        if rec.co0_name == "1A":
            entry["c_neg_g"] = "4095"
        raw["classes"].append(entry)
    (tmp_path / "classes.json").write_text(json.dumps(raw))
    (tmp_path / "coincidences.json").write_text(json.dumps({"relations": []}))
    with pytest.raises(DataError, match="row 1A.*c_neg_g"):
        load_class_data(str(tmp_path))


def test_corrupted_negation_fails_loading(data, tmp_path):
    raw = {"classes": [{
        "co0": "1A", "co1": "1A",
        "pi_g": [[1, 24]],
        "pi_neg_g": [[2, 24], [1, -24], [4, 24], [2, -48], [1, 24]],
        "c_neg_g": "4096", "d_mag": {"2": "0"},
        "gamma_g": "", "gamma_neg_g": "", "level": None,
    }]}
    (tmp_path / "classes.json").write_text(json.dumps(raw))
    (tmp_path / "coincidences.json").write_text(json.dumps({"relations": []}))
    with pytest.raises(DataError, match="pi_neg_g"):
        load_class_data(str(tmp_path))


def test_coincidence_counts(data):
    kinds = {}
    for rel in data.relations:
        kinds[rel.kind] = kinds.get(rel.kind, 0) + 1
    assert kinds["internal"] >= 16
    assert kinds["external"] >= 8
    internal_ell2 = [r for r in data.relations
                     if r.kind == "internal" and r.lambency == 2]
    assert len(internal_ell2) == 16
