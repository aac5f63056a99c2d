"""Symbolic base elements and space presentations with exact set operations.

All arithmetic is exact rational (``fractions.Fraction``); no floats anywhere.
A space presentation carries a countable family of basic open descriptors with
decidable subset / intersection / membership, plus a fixed injective
enumeration of the family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import BoundExceeded, InvalidElement, KindMismatch

# ---------------------------------------------------------------------------
# Base elements


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi) with rational endpoints, lo < hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise InvalidElement(f"empty interval ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class Cylinder:
    """Set of 0/1 streams extending a finite stem."""

    stem: str

    def __post_init__(self) -> None:
        if any(c not in "01" for c in self.stem):
            raise InvalidElement(f"bad stem {self.stem!r}")


@dataclass(frozen=True)
class FiniteOpen:
    """A declared nonempty open set of a finite space, given by its atoms."""

    atoms: frozenset

    def __post_init__(self) -> None:
        if not self.atoms:
            raise InvalidElement("empty finite open")


@dataclass(frozen=True)
class ProductBox:
    """Finite-support box: factors without an assignment mean the whole factor.

    ``assignments`` is a tuple of (factor index, element) sorted by index.
    """

    assignments: tuple = ()

    def __post_init__(self) -> None:
        idxs = [i for i, _ in self.assignments]
        if idxs != sorted(set(idxs)):
            raise InvalidElement("box assignments must be sorted and unique")

    def component(self, i: int):
        for j, e in self.assignments:
            if j == i:
                return e
        return None


BaseElement = Union[Interval, Cylinder, FiniteOpen, ProductBox]


def box(assignments: dict) -> ProductBox:
    return ProductBox(tuple(sorted(assignments.items())))


# ---------------------------------------------------------------------------
# Points


@dataclass(frozen=True)
class RationalPoint:
    value: Fraction


@dataclass(frozen=True)
class BitStream:
    """Eventually-zero 0/1 stream given by its finite support."""

    support: frozenset


@dataclass(frozen=True)
class Atom:
    id: str


@dataclass(frozen=True)
class TuplePoint:
    """Point of a product: finitely many non-default components."""

    components: tuple = ()

    def component(self, i: int):
        for j, p in self.components:
            if j == i:
                return p
        return None


Point = Union[RationalPoint, BitStream, Atom, TuplePoint]


# ---------------------------------------------------------------------------
# Space presentations

LINE_KINDS = ("rational-line", "real-line")
KINDS = ("rational-line", "real-line", "cantor", "finite", "product")


@dataclass(frozen=True)
class SpacePresentation:
    kind: str
    atoms: tuple = ()          # finite only
    opens: tuple = ()          # finite only; frozensets incl. empty and full
    factors: tuple = ()        # product only

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidElement(f"unknown space kind {self.kind!r}")

    @property
    def completeness_class(self) -> str:
        if self.kind == "real-line":
            return "complete-metric"
        if self.kind == "rational-line":
            return "incomplete-metric"
        if self.kind == "cantor":
            return "zero-dim-compact"
        if self.kind == "finite":
            return "finite"
        # product: finite iff all factors finite; a product is only as
        # complete as its weakest factor
        classes = {f.completeness_class for f in self.factors}
        if classes == {"finite"}:
            return "finite"
        if "incomplete-metric" in classes:
            return "incomplete-metric"
        return "complete-metric"


RATIONAL_LINE = SpacePresentation("rational-line")
REAL_LINE = SpacePresentation("real-line")
CANTOR = SpacePresentation("cantor")


def make_finite(atoms, opens) -> SpacePresentation:
    """Finite space from an atom list and an open-set list (declaration order
    preserved). The family must contain the empty set and the full atom set
    and be closed under union and intersection."""
    atom_t = tuple(atoms)
    atom_set = frozenset(atom_t)
    open_t = tuple(frozenset(o) for o in opens)
    seen = set(open_t)
    if len(seen) != len(open_t):
        raise InvalidElement("duplicate open set in declaration")
    if frozenset() not in seen or atom_set not in seen:
        raise InvalidElement("opens must contain the empty set and the full set")
    for a, b in itertools.combinations(open_t, 2):
        if a | b not in seen or a & b not in seen:
            raise InvalidElement("opens not closed under union/intersection")
    for o in open_t:
        if not o <= atom_set:
            raise InvalidElement("open set mentions unknown atom")
    return SpacePresentation("finite", atoms=atom_t, opens=open_t)


def make_product(factors) -> SpacePresentation:
    factors = tuple(factors)
    if not factors:
        raise InvalidElement("empty factor list")
    return SpacePresentation("product", factors=factors)


_ELEMENT_KIND = {
    "rational-line": Interval,
    "real-line": Interval,
    "cantor": Cylinder,
    "finite": FiniteOpen,
    "product": ProductBox,
}

_POINT_KIND = {
    "rational-line": RationalPoint,
    "real-line": RationalPoint,
    "cantor": BitStream,
    "finite": Atom,
    "product": TuplePoint,
}


def validate_element(b: BaseElement, space: SpacePresentation) -> None:
    if not isinstance(b, _ELEMENT_KIND[space.kind]):
        raise KindMismatch(f"{type(b).__name__} does not belong to {space.kind}")
    if isinstance(b, FiniteOpen):
        if b.atoms not in space.opens:
            raise InvalidElement(f"{sorted(b.atoms)} is not a declared open set")
    if isinstance(b, ProductBox):
        for i, e in b.assignments:
            if not 0 <= i < len(space.factors):
                raise InvalidElement(f"factor index {i} out of range")
            validate_element(e, space.factors[i])


def validate_point(p: Point, space: SpacePresentation) -> None:
    if not isinstance(p, _POINT_KIND[space.kind]):
        raise KindMismatch(f"{type(p).__name__} is not a point of {space.kind}")
    if isinstance(p, Atom) and p.id not in space.atoms:
        raise InvalidElement(f"unknown atom {p.id!r}")
    if isinstance(p, TuplePoint):
        for i, q in p.components:
            if not 0 <= i < len(space.factors):
                raise InvalidElement(f"factor index {i} out of range")
            validate_point(q, space.factors[i])


# ---------------------------------------------------------------------------
# Decidable set operations


def is_whole(b: BaseElement, space: SpacePresentation) -> bool:
    """True iff the descriptor denotes the whole space."""
    if isinstance(b, Interval):
        return False
    if isinstance(b, Cylinder):
        return b.stem == ""
    if isinstance(b, FiniteOpen):
        return b.atoms == frozenset(space.atoms)
    return all(is_whole(e, space.factors[i]) for i, e in b.assignments)


def subset(b1: BaseElement, b2: BaseElement, space: SpacePresentation) -> bool:
    """denotation(b1) <= denotation(b2); reflexive and transitive."""
    validate_element(b1, space)
    validate_element(b2, space)
    return _subset(b1, b2, space)


def _subset(b1, b2, space) -> bool:
    if isinstance(b1, Interval):
        return b2.lo <= b1.lo and b1.hi <= b2.hi
    if isinstance(b1, Cylinder):
        return b1.stem.startswith(b2.stem)
    if isinstance(b1, FiniteOpen):
        return b1.atoms <= b2.atoms
    # boxes: componentwise over every factor assigned by either side
    for i in {i for i, _ in b1.assignments} | {i for i, _ in b2.assignments}:
        f = space.factors[i]
        c1, c2 = b1.component(i), b2.component(i)
        if c2 is None:
            continue
        if c1 is None:
            if not is_whole(c2, f):
                return False
        elif not _subset(c1, c2, f):
            return False
    return True


def intersect(b1: BaseElement, b2: BaseElement,
              space: SpacePresentation) -> Optional[BaseElement]:
    """Exact intersection, or None when empty. The supported families are
    closed under nonempty intersection."""
    validate_element(b1, space)
    validate_element(b2, space)
    return _intersect(b1, b2, space)


def _intersect(b1, b2, space):
    if isinstance(b1, Interval):
        lo, hi = max(b1.lo, b2.lo), min(b1.hi, b2.hi)
        return Interval(lo, hi) if lo < hi else None
    if isinstance(b1, Cylinder):
        if b1.stem.startswith(b2.stem):
            return b1
        if b2.stem.startswith(b1.stem):
            return b2
        return None
    if isinstance(b1, FiniteOpen):
        common = b1.atoms & b2.atoms
        return FiniteOpen(common) if common else None
    out = {}
    for i in {i for i, _ in b1.assignments} | {i for i, _ in b2.assignments}:
        f = space.factors[i]
        c1, c2 = b1.component(i), b2.component(i)
        if c1 is None:
            out[i] = c2
        elif c2 is None:
            out[i] = c1
        else:
            c = _intersect(c1, c2, f)
            if c is None:
                return None
            out[i] = c
    return box(out)


def member(p: Point, b: BaseElement, space: SpacePresentation) -> bool:
    validate_point(p, space)
    validate_element(b, space)
    return _member(p, b, space)


def _member(p, b, space) -> bool:
    if isinstance(b, Interval):
        return b.lo < p.value < b.hi
    if isinstance(b, Cylinder):
        return all((i in p.support) == (c == "1") for i, c in enumerate(b.stem))
    if isinstance(b, FiniteOpen):
        return p.id in b.atoms
    for i, e in b.assignments:
        f = space.factors[i]
        q = p.component(i)
        if q is None:
            q = canonical_point(f)
        if not _member(q, e, f):
            return False
    return True


def canonical_point(space: SpacePresentation) -> Point:
    """Default point per factor used by TuplePoint."""
    if space.kind in LINE_KINDS:
        return RationalPoint(Fraction(0))
    if space.kind == "cantor":
        return BitStream(frozenset())
    if space.kind == "finite":
        return Atom(min(space.atoms))
    return TuplePoint(())


def pick_point(b: BaseElement, space: SpacePresentation) -> Point:
    """Deterministic witness inside b: interval midpoint, zero-filled stem,
    least atom, componentwise for boxes."""
    validate_element(b, space)
    return _pick_point(b, space)


def _pick_point(b, space):
    if isinstance(b, Interval):
        return RationalPoint((b.lo + b.hi) / 2)
    if isinstance(b, Cylinder):
        return BitStream(frozenset(i for i, c in enumerate(b.stem) if c == "1"))
    if isinstance(b, FiniteOpen):
        return Atom(min(b.atoms))
    comps = tuple((i, _pick_point(e, space.factors[i])) for i, e in b.assignments)
    return TuplePoint(comps)


def canonical_opener(space: SpacePresentation) -> BaseElement:
    """Canonical first move for player beta."""
    if space.kind in LINE_KINDS:
        return Interval(Fraction(0), Fraction(1))
    if space.kind == "cantor":
        return Cylinder("")
    if space.kind == "finite":
        return FiniteOpen(frozenset(space.atoms))
    return ProductBox(())


# ---------------------------------------------------------------------------
# Canonical enumerations


def rationals() -> Iterator[Fraction]:
    """0, then the positive Calkin--Wilf sequence interleaved with negatives:
    0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, ..."""
    yield Fraction(0)
    x = Fraction(1)
    while True:
        yield x
        yield -x
        x = 1 / (2 * (x.numerator // x.denominator) + 1 - x)


def _interval_stream() -> Iterator[Interval]:
    rs: list = []
    gen = rationals()

    def r(i: int) -> Fraction:
        while len(rs) <= i:
            rs.append(next(gen))
        return rs[i]

    # fixed pairing of rational indices, restricted to lo < hi
    for d in itertools.count(1):
        for i in range(d + 1):
            j = d - i
            if i == j:
                continue
            lo, hi = r(i), r(j)
            if lo < hi:
                yield Interval(lo, hi)


def _cylinder_stream() -> Iterator[Cylinder]:
    for n in itertools.count(0):
        for bits in itertools.product("01", repeat=n):
            yield Cylinder("".join(bits))


def _box_stream(space: SpacePresentation) -> Iterator[ProductBox]:
    factor_bases: list = [[] for _ in space.factors]
    gens = [base_elements(f) for f in space.factors]
    done = [False] * len(space.factors)

    def fb(f: int, k: int):
        while len(factor_bases[f]) <= k and not done[f]:
            try:
                factor_bases[f].append(next(gens[f]))
            except StopIteration:
                done[f] = True
        return factor_bases[f][k] if k < len(factor_bases[f]) else None

    seen = set()
    yield ProductBox(())
    nf = len(space.factors)
    for m in itertools.count(1):
        width = min(m, nf)
        for mask in range(1, 1 << width):
            support = [i for i in range(width) if mask >> i & 1]
            for combo in itertools.product(range(m), repeat=len(support)):
                parts = {i: fb(i, k) for i, k in zip(support, combo)}
                if any(v is None for v in parts.values()):
                    continue
                b = box(parts)
                if b not in seen:
                    seen.add(b)
                    yield b
        # finite factors exhaust; once every index is reachable the pass
        # above was complete
        if (all(done) and width == nf
                and m > max(len(fs) for fs in factor_bases)):
            return


def base_elements(space: SpacePresentation) -> Iterator[BaseElement]:
    """Fixed injective enumeration of the basic opens; prefix-stable."""
    if space.kind in LINE_KINDS:
        return _interval_stream()
    if space.kind == "cantor":
        return _cylinder_stream()
    if space.kind == "finite":
        return iter([FiniteOpen(o) for o in space.opens if o])
    return _box_stream(space)


def enumerate_base(space: SpacePresentation, n: int) -> list:
    return list(itertools.islice(base_elements(space), n))


def index_of(space: SpacePresentation, b: BaseElement, limit: int = 100000) -> int:
    """Index of b in the canonical enumeration; scans up to limit entries."""
    for i, e in enumerate(itertools.islice(base_elements(space), limit)):
        if e == b:
            return i
    raise BoundExceeded(f"not within the first {limit} enumerated elements")


# ---------------------------------------------------------------------------
# Local refinement enumeration
#
# The global base enumeration is not boundedly searchable inside a narrow
# open, so refinement walks a canonical local enumeration instead: dyadic
# subdivisions for intervals, stem extensions for cylinders, declared opens
# for finite spaces, componentwise for boxes. The first candidate is always
# the open itself.


def refinement_candidates(space: SpacePresentation,
                          b: BaseElement) -> Iterator[BaseElement]:
    validate_element(b, space)
    yield b
    yield from proper_refinements(space, b)


def proper_refinements(space: SpacePresentation,
                       b: BaseElement) -> Iterator[BaseElement]:
    if isinstance(b, Interval):
        seen = {(b.lo, b.hi)}
        w = b.hi - b.lo
        for d in itertools.count(1):
            step = w / (1 << d)
            for i in range(1 << d):
                for j in range(i + 1, (1 << d) + 1):
                    lo, hi = b.lo + i * step, b.lo + j * step
                    if (lo, hi) not in seen:
                        seen.add((lo, hi))
                        yield Interval(lo, hi)
    elif isinstance(b, Cylinder):
        for n in itertools.count(1):
            for bits in itertools.product("01", repeat=n):
                yield Cylinder(b.stem + "".join(bits))
    elif isinstance(b, FiniteOpen):
        for o in space.opens:
            if o and o < b.atoms:
                yield FiniteOpen(o)
    else:
        # round-robin over factors, refining one component at a time
        gens = []
        for i, f in enumerate(space.factors):
            c = b.component(i)
            if c is None:
                gens.append((i, base_elements(f)))
            else:
                gens.append((i, proper_refinements(f, c)))
        live = list(gens)
        while live:
            nxt = []
            for i, g in live:
                try:
                    e = next(g)
                except StopIteration:
                    continue
                if is_whole(e, space.factors[i]):
                    nxt.append((i, g))
                    continue
                out = {j: c for j, c in b.assignments}
                out[i] = e
                yield box(out)
                nxt.append((i, g))
            if len(nxt) == len(live) and not nxt:
                break
            live = nxt


# ---------------------------------------------------------------------------
# Denotation size (used by the singleton-intersection check)


def singleton_size(b: BaseElement, space: SpacePresentation) -> int:
    """0, 1, or 2 meaning 'two or more points'."""
    if isinstance(b, Interval):
        return 2  # rationals are dense in any nonempty open interval
    if isinstance(b, Cylinder):
        return 2
    if isinstance(b, FiniteOpen):
        return min(len(b.atoms), 2)
    total = 1
    for i, f in enumerate(space.factors):
        c = b.component(i)
        if c is None:
            s = len(f.atoms) if f.kind == "finite" else 2
        else:
            s = singleton_size(c, f)
        total = min(total * s, 2)
        if total == 0:
            return 0
    return total
