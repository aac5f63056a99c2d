from fractions import Fraction as F

import pytest

from topogame import serialize as sz, topology as tp


def test_render_parse_q_roundtrip():
    for q in (F(0), F(1, 2), F(-3, 7), F(5)):
        assert sz.parse_q(sz.render_q(q)) == q
    assert sz.render_q(F(-1, 2)) == "-1/2"
    assert sz.render_q(F(2)) == "2/1"


@pytest.mark.parametrize("b", [
    tp.Interval(F(0), F(1, 3)),
    tp.Cylinder("0110"),
    tp.FiniteOpen(frozenset("ab")),
    tp.box({0: tp.Interval(F(0), F(1)), 2: tp.Cylinder("1")}),
])
def test_element_roundtrip(b):
    assert sz.element_from_obj(sz.element_to_obj(b)) == b


@pytest.mark.parametrize("p", [
    tp.RationalPoint(F(-5, 4)),
    tp.BitStream(frozenset([0, 3])),
    tp.Atom("c"),
    tp.TuplePoint(((1, tp.RationalPoint(F(1, 2))),)),
])
def test_point_roundtrip(p):
    assert sz.point_from_obj(sz.point_to_obj(p)) == p


def test_space_roundtrip():
    fin = tp.make_finite(["a", "b"], [frozenset(), frozenset("a"),
                                      frozenset("ab")])
    for sp in (tp.REAL_LINE, tp.CANTOR, fin,
               tp.make_product([fin, tp.RATIONAL_LINE])):
        assert sz.space_from_obj(sz.space_to_obj(sp)) == sp


def test_dumps_canonical_is_stable():
    obj = {"b": 1, "a": [2, {"z": "x"}]}
    s = sz.dumps_canonical(obj)
    assert s == sz.dumps_canonical(obj)
    assert s.endswith("\n")
    assert s.index('"a"') < s.index('"b"')
