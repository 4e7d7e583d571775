"""Classification predicates and the counting formulas."""

from fractions import Fraction

import numpy as np
import pytest

import pgclass as pg
from pgclass.chartable import table_of
from pgclass.classify import PermDegree, _class_mask, is_central_type
from pgclass.group import group_of


def bundle(label, p):
    P = pg.build(label, p)
    G = group_of(P)
    return G, table_of(G)


# -- per-character predicates ----------------------------------------------------


def test_linear_rows_are_central_type():
    G, T = bundle("G_(19,1)", 5)
    for r in T.rows:
        if r.degree == 1:
            assert is_central_type(r, T)


def test_heisenberg_nonlinear_central_type():
    G, T = bundle("heisenberg_p3", 3)
    assert all(is_central_type(r, T) for r in T.rows)


def test_g17_has_non_central_type_row():
    G, T = bundle("G_(17,1)", 5)
    flags = [is_central_type(r, T) for r in T.rows]
    assert not all(flags)
    # the failures are nonlinear
    for r, f in zip(T.rows, flags):
        if not f:
            assert r.degree > 1


def test_fully_ramified():
    G, T = bundle("heisenberg_p3", 3)
    Z = G.center
    triv = pg.subgroup_generated([], G)
    whole = pg.Subgroup(group=G, indices=np.arange(G.order, dtype=np.int64))
    for r in T.rows:
        assert pg.fully_ramified(r, whole, T)
        if r.degree > 1:
            assert pg.fully_ramified(r, Z, T)
            assert not pg.fully_ramified(r, triv, T)


# -- group predicates --------------------------------------------------------------


def test_gvz_abelian_true():
    G, T = bundle("E_p3", 3)
    assert pg.is_gvz(T)


def test_gvz_verdicts():
    assert pg.is_gvz(bundle("G_(18,1)", 5)[1])
    assert not pg.is_gvz(bundle("G_(17,1)", 5)[1])


def test_flat_oracle_small():
    assert pg.is_flat(pg.build("E_p2", 3))
    assert pg.is_flat(pg.build("heisenberg_p3", 3))
    assert pg.is_flat(pg.build("G_(18,1)", 5))
    assert not pg.is_flat(pg.build("G_(19,1)", 5))


def test_flat_matches_gvz_everywhere_sampled():
    for label, p in [
        ("heisenberg_p3", 5),
        ("extraspecial_p3_exp_p2", 3),
        ("heisenberg_x_heisenberg", 3),
        ("G_(17,1)", 5),
        ("G_(20,1)", 5),
        ("C_p3", 7),
    ]:
        G, T = bundle(label, p)
        assert pg.is_flat(G) == pg.is_gvz(T), (label, p)


def test_nested_verdicts():
    assert pg.is_nested(bundle("heisenberg_p3", 3)[1])
    assert pg.is_nested(bundle("G_(14,3)", 5)[1])
    assert not pg.is_nested(bundle("G_(12,1)", 5)[1])
    assert not pg.is_nested(bundle("heisenberg_x_heisenberg", 3)[1])


def test_vz_verdicts():
    assert pg.is_vz(bundle("heisenberg_p3", 3)[1])[0]
    assert pg.is_vz(bundle("extraspecial_p5_exp_p", 3)[1])[0]
    ok, note = pg.is_vz(bundle("G_(14,3)", 5)[1])
    assert not ok and note is None
    ok, note = pg.is_vz(bundle("E_p2", 3)[1])
    assert not ok and "abelian" in note


def test_camina_pair_heisenberg():
    G, T = bundle("heisenberg_p3", 3)
    assert pg.is_camina_pair(G, G.center, T)
    assert pg.is_camina_pair(G, G.derived, T)  # same subgroup here


def test_camina_pair_rejected_for_improper():
    G, T = bundle("heisenberg_p3", 3)
    triv = pg.subgroup_generated([], G)
    with pytest.raises(ValueError):
        pg.is_camina_pair(G, triv, T)


def test_camina_pair_false_for_product():
    G, T = bundle("heisenberg_x_heisenberg", 3)
    assert not pg.is_camina_pair(G, G.center, T)


def test_gen_camina_pair():
    G, T = bundle("heisenberg_p3", 3)
    assert pg.is_gen_camina_pair(G, G.center, T)
    whole = pg.Subgroup(group=G, indices=np.arange(G.order, dtype=np.int64))
    assert pg.is_gen_camina_pair(G, whole, T)
    G18, T18 = bundle("G_(18,1)", 5)
    assert not pg.is_gen_camina_pair(G18, G18.center, T18)


# -- structural suites -----------------------------------------------------------


def test_check_special_degree():
    G, T = bundle("heisenberg_p3", 3)
    assert pg.check_special_degree(T) == []
    G, T = bundle("G_(18,1)", 5)
    assert pg.check_special_degree(T) == []
    G, T = bundle("E_p3", 3)
    assert pg.check_special_degree(T) == []  # vacuous


def test_check_lift_equivalence_trivial_and_center():
    G, _ = bundle("heisenberg_p3", 3)
    triv = pg.subgroup_generated([], G)
    assert pg.check_lift_equivalence(G, triv) == []
    assert pg.check_lift_equivalence(G, G.center) == []


def test_check_lift_equivalence_g18():
    G, _ = bundle("G_(18,1)", 5)
    K = pg.subgroup_generated([G.element_of(1)], G)
    assert pg.check_lift_equivalence(G, K) == []


def test_check_nil_le_cd():
    G, T = bundle("heisenberg_p3", 3)
    assert pg.check_nil_le_cd(G, T) == "holds"
    G, T = bundle("G_(14,3)", 5)
    assert pg.check_nil_le_cd(G, T) == "holds"
    G, T = bundle("G_(17,1)", 5)
    assert pg.check_nil_le_cd(G, T) == "inapplicable"


def test_perm_degree():
    G, T = bundle("heisenberg_p3", 3)
    pd = pg.gvz_min_perm_degree(G, T)
    assert pd.exponent == Fraction(2) and pd.value == 9
    G, T = bundle("extraspecial_p5_exp_p", 5)
    pd = pg.gvz_min_perm_degree(G, T)
    assert pd.exponent == Fraction(3) and pd.value == 125
    G, T = bundle("C_p3", 3)
    pd = pg.gvz_min_perm_degree(G, T)
    assert pd.value == 27


def test_perm_degree_half_integer_flag():
    assert PermDegree(5, Fraction(7, 2), False, None).exponent == Fraction(7, 2)
    G, T = bundle("heisenberg_x_heisenberg", 3)
    with pytest.raises(ValueError, match="cyclic"):
        pg.gvz_min_perm_degree(G, T)
    G, T = bundle("G_(17,1)", 5)
    with pytest.raises(ValueError, match="central type"):
        pg.gvz_min_perm_degree(G, T)


# -- counting formulas (expected values frozen by hand evaluation) ----------------


def test_counting_p6():
    assert pg.counting_formulas(5, 6).gvz_count == 270
    assert pg.counting_formulas(5, 6).nested_count == 156
    assert pg.counting_formulas(7, 6).gvz_count == 334
    assert pg.counting_formulas(7, 6).nested_count == 202
    # p = 11: gcd(10,3) = 1, gcd(10,4) = 2: (363 + 308 + 315 + 2 + 4)/2 = 496
    assert pg.counting_formulas(11, 6).gvz_count == 496
    assert pg.counting_formulas(11, 6).nested_count == (363 + 110 + 187) // 2


def test_counting_p5():
    for p in (3, 5, 7):
        c = pg.counting_formulas(p, 5)
        assert c.gvz_count == p + 31
        assert c.nested_count == 23


def test_counting_rejects_bad_input():
    with pytest.raises(ValueError):
        pg.counting_formulas(3, 6)
    with pytest.raises(ValueError):
        pg.counting_formulas(4, 5)
    with pytest.raises(ValueError):
        pg.counting_formulas(2, 5)
    with pytest.raises(ValueError):
        pg.counting_formulas(5, 4)


# -- reports -----------------------------------------------------------------------


def test_report_heisenberg():
    rep = pg.classification_report(pg.build("heisenberg_p3", 3))
    assert rep.is_gvz and rep.is_nested and rep.is_vz and rep.is_flat
    assert rep.cd == {1: 9, 3: 2}
    assert rep.center_chain == (3, 27)
    assert rep.camina_pair_with_center
    assert rep.gen_camina_pair_with_center
    assert rep.nilpotency_class == 2


def test_report_invariants_enforced():
    for label, p in [("G_(12,1)", 5), ("G_(20,1)", 5), ("E_p2", 7)]:
        rep = pg.classification_report(pg.build(label, p))
        assert rep.is_gvz == rep.is_flat
        if rep.is_vz:
            assert rep.is_nested
        if rep.is_nested:
            assert rep.is_gvz


def test_report_json_round_trip():
    import json

    rep = pg.classification_report(pg.build("heisenberg_p3", 3))
    js = json.loads(json.dumps(rep.to_json(), sort_keys=True))
    assert js["gvz"] is True and js["vz"] is True
    assert js["cd"] == {"1": 9, "3": 2}
    assert len(js["per_character"]) == 11


def test_report_rejects_even_prime():
    P = pg.parse_presentation("group g prime 2\ngens a\n")
    with pytest.raises(ValueError, match="odd"):
        pg.classification_report(P)


def test_class_mask_requires_class_union():
    G, T = bundle("heisenberg_p3", 3)
    a = pg.subgroup_generated([G.element_of(G.gen_index(0))], G)
    with pytest.raises(AssertionError):
        _class_mask(a, T)
