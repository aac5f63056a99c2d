"""Canonical structured-text (JSON) encodings.

All emissions are deterministic: sorted keys, fixed "p/q" rational rendering,
two-space indent, trailing newline. Byte-identical output for equal values is
relied on by the golden-file tests.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import topology as tp
from .errors import InvalidElement


def render_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_q(s: str) -> Fraction:
    return Fraction(s)


def element_to_obj(b: tp.BaseElement):
    if isinstance(b, tp.Interval):
        return {"type": "interval", "lo": render_q(b.lo), "hi": render_q(b.hi)}
    if isinstance(b, tp.Cylinder):
        return {"type": "cylinder", "stem": b.stem}
    if isinstance(b, tp.FiniteOpen):
        return {"type": "finite", "atoms": sorted(b.atoms)}
    if isinstance(b, tp.ProductBox):
        return {"type": "box",
                "assignments": {str(i): element_to_obj(e)
                                for i, e in b.assignments}}
    raise InvalidElement(f"not a base element: {b!r}")


def element_from_obj(o) -> tp.BaseElement:
    t = o.get("type")
    if t == "interval":
        return tp.Interval(parse_q(o["lo"]), parse_q(o["hi"]))
    if t == "cylinder":
        return tp.Cylinder(o["stem"])
    if t == "finite":
        return tp.FiniteOpen(frozenset(o["atoms"]))
    if t == "box":
        return tp.box({int(i): element_from_obj(e)
                       for i, e in o["assignments"].items()})
    raise InvalidElement(f"unknown element type {t!r}")


def point_to_obj(p: tp.Point):
    if isinstance(p, tp.RationalPoint):
        return {"type": "rational", "value": render_q(p.value)}
    if isinstance(p, tp.BitStream):
        return {"type": "bits", "support": sorted(p.support)}
    if isinstance(p, tp.Atom):
        return {"type": "atom", "id": p.id}
    if isinstance(p, tp.TuplePoint):
        return {"type": "tuple",
                "components": {str(i): point_to_obj(q)
                               for i, q in p.components}}
    raise InvalidElement(f"not a point: {p!r}")


def point_from_obj(o) -> tp.Point:
    t = o.get("type")
    if t == "rational":
        return tp.RationalPoint(parse_q(o["value"]))
    if t == "bits":
        return tp.BitStream(frozenset(o["support"]))
    if t == "atom":
        return tp.Atom(o["id"])
    if t == "tuple":
        return tp.TuplePoint(tuple(sorted(
            (int(i), point_from_obj(q)) for i, q in o["components"].items())))
    raise InvalidElement(f"unknown point type {t!r}")


def space_to_obj(space: tp.SpacePresentation):
    if space.kind == "finite":
        return {"kind": "finite", "atoms": list(space.atoms),
                "opens": [sorted(o) for o in space.opens]}
    if space.kind == "product":
        return {"kind": "product",
                "factors": [space_to_obj(f) for f in space.factors]}
    return {"kind": space.kind}


def space_from_obj(o) -> tp.SpacePresentation:
    kind = o["kind"]
    if kind == "finite":
        return tp.make_finite(o["atoms"], o["opens"])
    if kind == "product":
        return tp.make_product(space_from_obj(f) for f in o["factors"])
    return tp.SpacePresentation(kind)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    return json.loads(text)
