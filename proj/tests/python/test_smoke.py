import pytest

import thinville


def test_heisenberg_arithmetic():
    h = thinville.builtin("heisenberg-5")
    assert h.order == 125
    g1, g2 = h.generator(1), h.generator(2)
    assert h.commutator(g2, g1) == [0, 0, 1]
    assert h.collect([(2, 1), (1, 1)]) == [1, 1, 1]
    assert h.power(g1, 5) == [0, 0, 0]
    assert h.multiply(g1, h.inverse(g1)) == [0, 0, 0]
    assert h.element_order(g1) == 5
    assert h.nilpotency_class() == 2
    assert h.is_maximal_class()


def test_parse_and_consistency():
    text = "p 5\nn 3\ncomm 2 1 = g3^1\n"
    assert thinville.check_consistency(text)
    assert thinville.Group(text).order == 125
    with pytest.raises(thinville.ParseError):
        thinville.Group("p 4\nn 2\n")
    with pytest.raises(thinville.PreconditionError):
        thinville.Group("p 5\nn 3\npow 1 = g2^1\ncomm 2 1 = g3^1\n")


def test_catalog_groups():
    ids = thinville.catalog_ids()
    for name in ("sg-3_5-3", "sg-3_6-34", "sg-3_6-37", "sg-3_6-40", "thin5-A1"):
        assert name in ids
    s = thinville.load("sg-3_5-3")
    assert s.is_thin() and s.is_metabelian()
    assert s.widths() == [2, 1, 2]
    s40 = thinville.load("sg-3_6-40")
    assert not s40.is_thin()
    assert s40.center_order() == 9


def test_beauville_search():
    cert = thinville.load("sg-3_5-3").beauville("exhaustive")
    assert cert["outcome"] == "found"
    assert cert["verified"]
    assert thinville.builtin("elab-3").beauville("exhaustive")["outcome"] == "refuted"
    assert thinville.builtin("cpk2-5-2").beauville("exhaustive")["outcome"] == "found"
    with pytest.raises(ValueError):
        thinville.builtin("elab-5").beauville("sideways")


def test_analyze_report():
    r = thinville.load("sg-3_5-3").analyze()
    assert r["thin"] == "true"
    assert r["metabelian"] == "true"
    assert r["beauville"] == "found"
    case = thinville.load("thin5-A4-neg").case_classification()
    assert case["case"] == "A4"
    assert not case["predicted_beauville"]


def test_formulas():
    assert thinville.cij(1, 3, 5) == 4
    assert thinville.quadratic_nonresidues(7) == [3, 5, 6]
    assert thinville.catanese_check(25)
    assert not thinville.catanese_check(9)
    ok, table = thinville.formulas(7)
    assert ok
    assert "geometric sum" in table


def test_errors_share_a_base():
    with pytest.raises(thinville.Error):
        thinville.load("no-such-group")
    assert issubclass(thinville.ParseError, thinville.Error)
