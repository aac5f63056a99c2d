"""Carrier-relation-base triples: compilers from winning strategies, axiom
checkers, the pairwise-join replay, chain extraction, products, quotienting,
and the singleton-intersection check.

A triple is a carrier of elements with a transitive "below" relation and an
antitone assignment of basic opens. Compiled triples key their elements by
ordered lists of (generating play, response value) pairs, which keeps the
base assignment well-defined even when distinct plays share a response.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

from . import serialize as sz
from . import topology as tp
from .errors import (BoundExceeded, DisjointBases, InvalidElement,
                     NoUpperBoundWithinBound, NotDirected,
                     RefineBoundExceeded)
from .games import BETA, Move, PartialPlay, step, stronger


@dataclass(frozen=True)
class CheckBounds:
    base_prefix: int = 16
    point_samples: int = 8
    max_directed_size: int = 3
    max_directed_subsets: int = 5000
    search_bound: int = 256
    singleton_exact_limit: int = 14


# ---------------------------------------------------------------------------
# Generating plays and compiled carrier elements


@dataclass(frozen=True)
class GenPlay:
    """A generating partial play together with the strategy's response to it.
    ``full`` ends with the second player's response move; ``value`` is that
    response's open set."""

    full: PartialPlay

    @property
    def value(self) -> tp.BaseElement:
        return self.full.moves[-1].open

    def key(self):
        return tuple((m.open, m.point) for m in self.full.moves
                     if m.role == BETA)


@dataclass(frozen=True)
class CarrierElement:
    id: str
    payload: tuple = ()     # GenPlay tuple for compiled origins


class RepTriple:
    """Interface shared by all triple implementations."""

    origin: str
    mode: str
    space: tp.SpacePresentation

    def carrier_ids(self) -> list:
        raise NotImplementedError

    def element(self, i: str) -> CarrierElement:
        raise NotImplementedError

    def leq(self, p: str, q: str) -> bool:
        raise NotImplementedError

    def bmap(self, i: str) -> tp.BaseElement:
        raise NotImplementedError

    def refine(self, u: tp.BaseElement) -> str:
        raise NotImplementedError

    def refine_at(self, x: tp.Point, u: tp.BaseElement) -> str:
        raise NotImplementedError

    def upper_bound(self, p: str, q: str) -> str:
        raise NotImplementedError

    def upper_bound_at(self, x: tp.Point, p: str, q: str) -> str:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# Compiled triples: carriers built from a winning strategy's responses


class CompiledRep(RepTriple):
    def __init__(self, strategy, space: tp.SpacePresentation, mode: str,
                 depth: int, branching: int):
        if depth < 1 or branching < 1:
            raise InvalidElement("depth and branching must be >= 1")
        self.strategy = strategy
        self.space = space
        self.mode = mode
        self.depth = depth
        self.branching = branching
        self.origin = f"compiled-{mode}"
        self._elems: dict = {}
        self._order: list = []
        self._by_key: dict = {}
        self._play_by_key: dict = {}
        self._leq_cache: dict = {}
        self._ub_cache: dict = {}
        self._build()

    # -- construction

    def _gen_play_from(self, prev: Optional[GenPlay], u: tp.BaseElement,
                       point: Optional[tp.Point]) -> GenPlay:
        base = prev.full if prev is not None else PartialPlay(self.mode)
        if self.mode == "ch":
            pt = point if point is not None else tp.pick_point(u, self.space)
        else:
            pt = None
        play = step(base, Move(BETA, u, pt), self.space)
        play = step(play, self.strategy.respond(play), self.space)
        g = GenPlay(play)
        return self._play_by_key.setdefault(g.key(), g)

    def _build(self) -> None:
        bases = tp.enumerate_base(self.space, self.branching)
        levels = [[self._gen_play_from(None, u, None) for u in bases]]
        for _ in range(self.depth - 1):
            nxt = []
            for g in levels[-1]:
                for u in bases:
                    if tp.subset(u, g.value, self.space):
                        nxt.append(self._gen_play_from(g, u, None))
            levels.append(nxt)
        plays = [g for lvl in levels for g in lvl]
        records = [(g,) for g in plays]
        self._order = []
        for rec in records:
            self._add_record(rec)
        frontier = records
        for _ in range(self.depth - 1):
            nxt = []
            for rec in frontier:
                used = {g.key() for g in rec}
                for g in plays:
                    if g.key() in used:
                        continue
                    if tp.subset(g.value, rec[-1].value, self.space):
                        nxt.append(rec + (g,))
            for rec in nxt:
                self._add_record(rec)
            frontier = nxt

    def _add_record(self, payload: tuple) -> str:
        key = tuple(g.key() for g in payload)
        if key in self._by_key:
            return self._by_key[key]
        i = f"q{len(self._order):06d}"
        self._by_key[key] = i
        self._elems[i] = CarrierElement(i, payload)
        self._order.append(i)
        return i

    # -- triple interface

    def carrier_ids(self) -> list:
        return list(self._order)

    def element(self, i: str) -> CarrierElement:
        return self._elems[i]

    def bmap(self, i: str) -> tp.BaseElement:
        return self._elems[i].payload[-1].value

    def leq(self, p: str, q: str) -> bool:
        c = self._leq_cache.get((p, q))
        if c is not None:
            return c
        pp, qq = self._elems[p].payload, self._elems[q].payload
        ok = (len(pp) <= len(qq)
              and tp.subset(qq[0].value, pp[-1].value, self.space)
              and all(any(stronger(g.full, h.full) for h in qq) for g in pp))
        self._leq_cache[(p, q)] = ok
        return ok

    def refine(self, u: tp.BaseElement) -> str:
        # every playable open is basic here, so the one-move play on u itself
        # is the canonical refinement witness
        g = self._gen_play_from(None, u, None)
        return self._add_record((g,))

    def refine_at(self, x: tp.Point, u: tp.BaseElement) -> str:
        g = self._gen_play_from(None, u, x)
        return self._add_record((g,))

    def upper_bound(self, p: str, q: str) -> str:
        return self._join(None, p, q)

    def upper_bound_at(self, x: tp.Point, p: str, q: str) -> str:
        return self._join(x, p, q)

    def _join(self, x: Optional[tp.Point], p: str, q: str) -> str:
        key = (x, p, q)
        if key in self._ub_cache:
            return self._ub_cache[key]
        v = tp.intersect(self.bmap(p), self.bmap(q), self.space)
        if v is None:
            raise DisjointBases(p, q)
        target = v
        payload = []
        for g in self._elems[p].payload + self._elems[q].payload:
            g2 = self._gen_play_from(g, target, x)
            payload.append(g2)
            target = g2.value
        r = self._add_record(tuple(payload))
        self._ub_cache[key] = r
        return r


def compile_rep(strategy, space: tp.SpacePresentation, mode: str,
                depth: int, branching: int) -> CompiledRep:
    return CompiledRep(strategy, space, mode, depth, branching)


def upper_bound_witness(rep: RepTriple, p: str, q: str) -> str:
    return rep.upper_bound(p, q)


# ---------------------------------------------------------------------------
# Handcrafted triples (explicit finite fragments, also the file format)


class HandcraftedRep(RepTriple):
    def __init__(self, space, mode, elements, pairs, origin="handcrafted",
                 search_bound: int = 256):
        """elements: ordered (id, base element) pairs; pairs: iterable of
        (p, q) with p below q."""
        self.space = space
        self.mode = mode
        self.origin = origin
        self._order = [i for i, _ in elements]
        self._bmap = dict(elements)
        self._pairs = frozenset(tuple(p) for p in pairs)
        self.search_bound = search_bound

    def carrier_ids(self) -> list:
        return list(self._order)

    def element(self, i: str) -> CarrierElement:
        return CarrierElement(i)

    def bmap(self, i: str) -> tp.BaseElement:
        return self._bmap[i]

    def leq(self, p: str, q: str) -> bool:
        return (p, q) in self._pairs

    def refine(self, u: tp.BaseElement) -> str:
        for i in self._order[:self.search_bound]:
            if tp.subset(self._bmap[i], u, self.space):
                return i
        raise RefineBoundExceeded(self.search_bound)

    def refine_at(self, x: tp.Point, u: tp.BaseElement) -> str:
        for i in self._order[:self.search_bound]:
            b = self._bmap[i]
            if tp.member(x, b, self.space) and tp.subset(b, u, self.space):
                return i
        raise RefineBoundExceeded(self.search_bound)

    def upper_bound(self, p: str, q: str) -> str:
        for r in self._order:
            if self.leq(p, r) and self.leq(q, r):
                return r
        raise NoUpperBoundWithinBound(p, q)

    def upper_bound_at(self, x: tp.Point, p: str, q: str) -> str:
        for r in self._order:
            if (self.leq(p, r) and self.leq(q, r)
                    and tp.member(x, self._bmap[r], self.space)):
                return r
        raise NoUpperBoundWithinBound(p, q)


# ---------------------------------------------------------------------------
# Products


class ProductRep(RepTriple):
    """Product triple: each factor gains a fresh least element (empty slot),
    tuples have finite support, everything acts componentwise."""

    LEAST = None
    _GUARD = 200000

    def __init__(self, reps, spaces):
        reps = list(reps)
        spaces = list(spaces)
        if not reps or len(reps) != len(spaces):
            raise InvalidElement("need equal-length nonempty rep/space lists")
        self.factors = reps
        self.space = tp.make_product(spaces)
        self.mode = reps[0].mode
        self.origin = "product"
        self._tuple_by_id: dict = {}
        self._order: list = []
        total = 1
        for r in reps:
            total *= len(r.carrier_ids()) + 1
            if total > self._GUARD:
                raise BoundExceeded("product carrier too large to materialize")
        choices = [[self.LEAST] + r.carrier_ids() for r in reps]
        for combo in itertools.product(*choices):
            self._intern(combo)

    @staticmethod
    def _tuple_id(combo) -> str:
        return json.dumps([c if c is not None else 0 for c in combo],
                          separators=(",", ":"))

    def _intern(self, combo) -> str:
        i = self._tuple_id(combo)
        if i not in self._tuple_by_id:
            self._tuple_by_id[i] = tuple(combo)
            self._order.append(i)
        return i

    def components(self, i: str) -> tuple:
        return self._tuple_by_id[i]

    def carrier_ids(self) -> list:
        return list(self._order)

    def element(self, i: str) -> CarrierElement:
        return CarrierElement(i)

    def bmap(self, i: str) -> tp.BaseElement:
        combo = self._tuple_by_id[i]
        return tp.box({k: self.factors[k].bmap(c)
                       for k, c in enumerate(combo) if c is not self.LEAST})

    def leq(self, p: str, q: str) -> bool:
        pc, qc = self._tuple_by_id[p], self._tuple_by_id[q]
        for f, a, b in zip(self.factors, pc, qc):
            if a is self.LEAST:
                continue
            if b is self.LEAST or not f.leq(a, b):
                return False
        return True

    def refine(self, u: tp.ProductBox) -> str:
        combo = [self.LEAST] * len(self.factors)
        for k, e in u.assignments:
            combo[k] = self.factors[k].refine(e)
        return self._intern(combo)

    def refine_at(self, x: tp.TuplePoint, u: tp.ProductBox) -> str:
        combo = [self.LEAST] * len(self.factors)
        for k, e in u.assignments:
            pt = x.component(k) or tp.canonical_point(self.space.factors[k])
            combo[k] = self.factors[k].refine_at(pt, e)
        return self._intern(combo)

    def upper_bound(self, p: str, q: str) -> str:
        return self._join(None, p, q)

    def upper_bound_at(self, x, p: str, q: str) -> str:
        return self._join(x, p, q)

    def _join(self, x, p: str, q: str) -> str:
        pc, qc = self._tuple_by_id[p], self._tuple_by_id[q]
        combo = []
        for k, (f, a, b) in enumerate(zip(self.factors, pc, qc)):
            if a is self.LEAST:
                combo.append(b)
            elif b is self.LEAST:
                combo.append(a)
            elif x is not None:
                pt = x.component(k) or tp.canonical_point(self.space.factors[k])
                combo.append(f.upper_bound_at(pt, a, b))
            else:
                combo.append(f.upper_bound(a, b))
        return self._intern(combo)


def product_rep(reps, spaces) -> ProductRep:
    return ProductRep(reps, spaces)


class PosetRep(RepTriple):
    """Bare ordered carrier over {0..n-1} given by reflexive up-set bitmasks;
    supports only the order operations (no base assignment). Used by the
    exhaustive chain-extraction sweep."""

    def __init__(self, up):
        self.up = tuple(up)
        self.mode = "bm"
        self.origin = "poset"
        self.space = None

    def carrier_ids(self) -> list:
        return list(range(len(self.up)))

    def leq(self, p: int, q: int) -> bool:
        return bool(self.up[p] >> q & 1)

    def upper_bound(self, p: int, q: int) -> int:
        m = self.up[p] & self.up[q]
        if not m:
            raise NoUpperBoundWithinBound(p, q)
        return (m & -m).bit_length() - 1

    def bmap(self, i):
        raise NotImplementedError("poset carriers carry no base assignment")


# ---------------------------------------------------------------------------
# Chain extraction


def extract_chain(rep: RepTriple, directed: list) -> list:
    """Increasing chain dominating a directed input list: start at the first
    element and repeatedly join with the next one. A directed set carries its
    own pairwise bounds, so the join is looked up inside the input first; the
    upper_bound witness oracle is the fallback for carriers that can
    manufacture joins."""
    ids = list(directed)
    if not ids:
        return []

    def bound(p, q):
        for r in ids:
            if rep.leq(p, r) and rep.leq(q, r):
                return r
        return rep.upper_bound(p, q)

    for p, q in itertools.combinations(ids, 2):
        try:
            bound(p, q)
        except (NoUpperBoundWithinBound, DisjointBases) as e:
            raise NotDirected(p, q) from e
    chain = [ids[0]]
    for p in ids[1:]:
        chain.append(bound(chain[-1], p))
    return chain


# ---------------------------------------------------------------------------
# Quotient by mutual comparability


def antisym_quotient(rep: RepTriple) -> HandcraftedRep:
    ids = rep.carrier_ids()
    parent = {i: i for i in ids}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p, q in itertools.combinations(ids, 2):
        if rep.leq(p, q) and rep.leq(q, p):
            parent[find(p)] = find(q)
    reps_of: dict = {}
    for i in ids:
        reps_of.setdefault(find(i), []).append(i)
    # class representative: earliest member in carrier order
    class_rep = {root: members[0] for root, members in reps_of.items()}
    for root, members in reps_of.items():
        b = rep.bmap(class_rep[root])
        if any(rep.bmap(m) != b for m in members):
            raise InvalidElement("base map not constant on a mutual class")
    order = [class_rep[find(i)] for i in ids]
    kept = list(dict.fromkeys(order))
    elements = [(i, rep.bmap(i)) for i in kept]
    pairs = [(p, q) for p in kept for q in kept if rep.leq(p, q)]
    return HandcraftedRep(rep.space, rep.mode, elements, pairs,
                          origin=f"quotient({rep.origin})")


# ---------------------------------------------------------------------------
# Axiom checking


AXIOMS = {"piD": ("piD1", "piD2", "piD3", "piD4", "piD5w1", "piD5"),
          "D": ("D1", "D2", "D3", "D4", "D5w1", "D5")}


@dataclass
class AxiomReport:
    system: str
    fragment_size: int
    bounds: CheckBounds
    statuses: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def all_pass(self) -> bool:
        return all(s == "pass" for s in self.statuses.values())

    def render(self) -> str:
        lines = [f"system: {self.system}",
                 f"fragment-size: {self.fragment_size}"]
        for a in AXIOMS[self.system]:
            s = self.statuses[a]
            w = self.witnesses.get(a)
            lines.append(f"{a}: {s}" + (f"  witness={w}" if w else ""))
        return "\n".join(lines) + "\n"


def check_axioms(rep: RepTriple, system: str, space: tp.SpacePresentation,
                 bounds: CheckBounds = CheckBounds()) -> AxiomReport:
    import numpy as np

    ids = rep.carrier_ids()
    n = len(ids)
    report = AxiomReport(system, n, bounds)
    bvals = [rep.bmap(i) for i in ids]
    m = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            m[a, b] = rep.leq(ids[a], ids[b])
    rows = [sum(1 << b for b in range(n) if m[a, b]) for a in range(n)]

    pre = "piD" if system == "piD" else "D"

    # 1: base / pi-base against the canonical enumeration
    if space.kind == "finite":
        sample = [tp.FiniteOpen(o) for o in space.opens if o]
    else:
        sample = tp.enumerate_base(space, bounds.base_prefix)
    ok, wit = True, None
    for u in sample:
        if system == "piD":
            if not any(tp.subset(b, u, space) for b in bvals):
                ok, wit = False, sz.element_to_obj(u)
                break
        else:
            for x in _points_in(u, space, bounds):
                if not any(tp.member(x, b, space) and tp.subset(b, u, space)
                           for b in bvals):
                    ok, wit = False, (sz.point_to_obj(x), sz.element_to_obj(u))
                    break
            if not ok:
                break
    _set(report, pre + "1", ok, wit)

    # 2: transitivity, exhaustive on the fragment
    t = (m.astype(np.uint8) @ m.astype(np.uint8)).astype(bool)
    bad = t & ~m
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        _set(report, pre + "2", False, (ids[a], ids[b]))
        trans_ok = False
    else:
        _set(report, pre + "2", True, None)
        trans_ok = True

    # 3: antitone base map
    ok, wit = True, None
    for a, b in zip(*np.nonzero(m)):
        if not tp.subset(bvals[b], bvals[a], space):
            ok, wit = False, (ids[int(a)], ids[int(b)])
            break
    _set(report, pre + "3", ok, wit)
    antitone_ok = ok

    # 4: pairwise joins
    if system == "piD":
        status, wit = _check_pi_d4(rep, ids, bvals, m, space)
    else:
        status, wit = _check_d4(rep, ids, bvals, m, space, bounds)
    report.statuses[pre + "4"] = status
    if wit:
        report.witnesses[pre + "4"] = wit

    # 5: directed intersections. Mechanical check over enumerated directed
    # subsets; on a finite carrier a directed subset always contains an upper
    # bound of all its members, so with 2 and 3 established the intersection
    # contains that member's base set and the full axiom holds exactly.
    fail = _directed_intersection_failure(rep, ids, bvals, rows, space, bounds)
    if fail is not None:
        for a in (pre + "5w1", pre + "5"):
            report.statuses[a] = "fail"
            report.witnesses[a] = fail
    elif trans_ok and antitone_ok:
        for a in (pre + "5w1", pre + "5"):
            report.statuses[a] = "pass"
    else:
        for a in (pre + "5w1", pre + "5"):
            report.statuses[a] = "bound-exceeded"
    return report


def _set(report, axiom, ok, wit):
    report.statuses[axiom] = "pass" if ok else "fail"
    if wit:
        report.witnesses[axiom] = wit


def _points_in(u, space, bounds):
    if space.kind == "finite":
        return [tp.Atom(a) for a in sorted(u.atoms)]
    return [tp.pick_point(u, space)]


def _check_pi_d4(rep, ids, bvals, m, space):
    import numpy as np

    ub = (m.astype(np.uint8) @ m.T.astype(np.uint8)).astype(bool)
    n = len(ids)
    for a in range(n):
        for b in range(a, n):
            if tp.intersect(bvals[a], bvals[b], space) is None:
                continue
            if ub[a, b]:
                continue
            try:
                r = rep.upper_bound(ids[a], ids[b])
            except (NoUpperBoundWithinBound, DisjointBases):
                return "fail", (ids[a], ids[b])
            except (RefineBoundExceeded, BoundExceeded):
                return "bound-exceeded", (ids[a], ids[b])
            if not (rep.leq(ids[a], r) and rep.leq(ids[b], r)):
                return "fail", (ids[a], ids[b])
    return "pass", None


def _check_d4(rep, ids, bvals, m, space, bounds):
    if space.kind == "finite":
        points = [tp.Atom(a) for a in space.atoms]
    else:
        points = []
        seen = set()
        for u in tp.enumerate_base(space, bounds.point_samples):
            x = tp.pick_point(u, space)
            if x not in seen:
                seen.add(x)
                points.append(x)
    n = len(ids)
    for x in points:
        members = [k for k in range(n) if tp.member(x, bvals[k], space)]
        for ai in range(len(members)):
            for bi in range(ai, len(members)):
                a, b = members[ai], members[bi]
                if any(m[a, r] and m[b, r] for r in members):
                    continue
                try:
                    r = rep.upper_bound_at(x, ids[a], ids[b])
                except (NoUpperBoundWithinBound, DisjointBases,
                        NotImplementedError):
                    return "fail", (sz.point_to_obj(x), ids[a], ids[b])
                except (RefineBoundExceeded, BoundExceeded):
                    return "bound-exceeded", (sz.point_to_obj(x), ids[a], ids[b])
                if not (rep.leq(ids[a], r) and rep.leq(ids[b], r)
                        and tp.member(x, rep.bmap(r), space)):
                    return "fail", (sz.point_to_obj(x), ids[a], ids[b])
    return "pass", None


def _directed_intersection_failure(rep, ids, bvals, rows, space, bounds):
    n = len(ids)
    count = 0
    for size in range(1, bounds.max_directed_size + 1):
        for combo in itertools.combinations(range(n), size):
            count += 1
            if count > bounds.max_directed_subsets:
                return None
            mask = 0
            for k in combo:
                mask |= 1 << k
            if not all(rows[a] & rows[b] & mask
                       for a in combo for b in combo):
                continue
            cap = bvals[combo[0]]
            for k in combo[1:]:
                cap = tp.intersect(cap, bvals[k], space)
                if cap is None:
                    break
            if cap is None:
                return [ids[k] for k in combo]
    return None


# ---------------------------------------------------------------------------
# Singleton-intersection upgrade check


def singleton_upgrade(rep: RepTriple, bounds: CheckBounds = CheckBounds()) -> bool:
    """True iff every directed subset of the carrier has a one-point base
    intersection. Exact for small carriers; larger carriers raise unless a
    violation is found within the enumeration bound."""
    ids = rep.carrier_ids()
    n = len(ids)
    space = rep.space
    exact = n <= bounds.singleton_exact_limit
    if exact:
        subsets = itertools.chain.from_iterable(
            itertools.combinations(range(n), k) for k in range(1, n + 1))
    else:
        subsets = itertools.islice(
            itertools.chain.from_iterable(
                itertools.combinations(range(n), k)
                for k in range(1, bounds.max_directed_size + 1)),
            bounds.max_directed_subsets)
    bvals = [rep.bmap(i) for i in ids]
    leq = [[rep.leq(p, q) for q in ids] for p in ids]
    for combo in subsets:
        if not all(any(leq[a][r] and leq[b][r] for r in combo)
                   for a in combo for b in combo):
            continue
        cap = bvals[combo[0]]
        for k in combo[1:]:
            cap = tp.intersect(cap, bvals[k], space)
            if cap is None:
                break
        if cap is None or tp.singleton_size(cap, space) != 1:
            return False
    if not exact:
        raise BoundExceeded("carrier too large for an exact check")
    return True


# ---------------------------------------------------------------------------
# Fragment files


def rep_to_obj(rep: RepTriple):
    ids = rep.carrier_ids()
    return {"origin": rep.origin,
            "mode": rep.mode,
            "space": sz.space_to_obj(rep.space),
            "elements": [{"id": i, "B": sz.element_to_obj(rep.bmap(i))}
                         for i in ids],
            "leq": sorted([p, q] for p in ids for q in ids
                          if rep.leq(p, q))}


def rep_from_obj(o) -> HandcraftedRep:
    space = sz.space_from_obj(o["space"])
    elements = [(e["id"], sz.element_from_obj(e["B"])) for e in o["elements"]]
    pairs = [tuple(p) for p in o["leq"]]
    return HandcraftedRep(space, o.get("mode", "bm"), elements, pairs,
                          origin=o.get("origin", "handcrafted"))


def save_rep(rep: RepTriple, path: str) -> None:
    with open(path, "w") as f:
        f.write(sz.dumps_canonical(rep_to_obj(rep)))


def load_rep(path: str) -> HandcraftedRep:
    with open(path) as f:
        return rep_from_obj(sz.loads(f.read()))
