import pytest

from trisect import standard_fold_pattern, validate_fold_pattern
from trisect.diagram import ParamOutOfRange
from trisect.folds import DEFINITE, INDEFINITE, FoldArc, FoldPattern


def census(sector):
    cuspless = sum(1 for a in sector if a.kind == INDEFINITE and a.cusps == 0)
    cusped = sum(1 for a in sector if a.kind == INDEFINITE and a.cusps == 1)
    definite = sum(1 for a in sector if a.kind == DEFINITE)
    return cuspless, cusped, definite


def test_fig3_instance():
    p = standard_fold_pattern(4, 3, 2, 2)
    assert len(p.sectors[0]) == 5
    assert census(p.sectors[0]) == (3, 1, 1)
    assert census(p.sectors[1]) == (2, 2, 1)
    assert census(p.sectors[2]) == (2, 2, 1)
    for ray in range(3):
        c = p.ray_census(ray)
        assert c[0] == 3 and list(c[1:]) == [2] * 4
    rep = validate_fold_pattern(p)
    assert rep.valid and str(rep.params) == "(4;3,2,2)"


def test_degenerate_patterns():
    p0 = standard_fold_pattern(0, 0, 0, 0)
    assert all(len(s) == 1 and s[0].kind == DEFINITE for s in p0.sectors)
    assert p0.ray_census(0) == (3,)
    p1 = standard_fold_pattern(1, 1, 1, 1)
    assert all(len(s) == 2 for s in p1.sectors)
    assert all(a.cusps == 0 for s in p1.sectors for a in s)


def test_round_trip_all_parameters_up_to_genus_six():
    for g in range(7):
        for k1 in range(g + 1):
            for k2 in range(g + 1):
                for k3 in range(g + 1):
                    rep = validate_fold_pattern(standard_fold_pattern(g, k1, k2, k3))
                    assert rep.valid
                    assert (rep.params.g,) + rep.params.ks == (g, k1, k2, k3)


def test_param_range_errors():
    with pytest.raises(ParamOutOfRange):
        standard_fold_pattern(2, 3, 0, 0)
    with pytest.raises(ParamOutOfRange):
        standard_fold_pattern(-1, 0, 0, 0)


def test_two_cusps_invalid():
    p = standard_fold_pattern(1, 0, 0, 0)
    bad = list(list(s) for s in p.sectors)
    bad[0][0] = FoldArc(INDEFINITE, 2, 1, 1)
    rep = validate_fold_pattern(FoldPattern(tuple(tuple(s) for s in bad)))
    assert not rep.valid
    assert any("cusps" in v for v in rep.violations)


def test_mismatched_sector_genus_invalid():
    a = standard_fold_pattern(2, 0, 0, 0).sectors[0]
    b = standard_fold_pattern(1, 0, 0, 0).sectors[0]
    rep = validate_fold_pattern(FoldPattern((a, b, a)))
    assert not rep.valid
    assert any("disagree" in v for v in rep.violations)


def test_definite_must_be_outermost():
    inner_definite = (
        FoldArc(DEFINITE, 0, 1, 1),
        FoldArc(INDEFINITE, 0, 2, 2),
    )
    p = FoldPattern((inner_definite,) * 3)
    rep = validate_fold_pattern(p)
    assert not rep.valid
    assert any("outermost" in v for v in rep.violations)


def test_cusped_definite_invalid():
    bad = (
        FoldArc(INDEFINITE, 0, 1, 1),
        FoldArc(DEFINITE, 1, 2, 2),
    )
    rep = validate_fold_pattern(FoldPattern((bad,) * 3))
    assert not rep.valid
