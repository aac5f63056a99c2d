"""Pure strategy objects.

A strategy is a pure responder: equal plays always get equal responses, and a
response is always a legal step. The seeded "random" agent derives its choice
from a cryptographic hash of (seed, play), which keeps it both pure and
reproducible across runs.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import topology as tp
from .errors import InvalidElement, KindMismatch
from .games import ALPHA, BETA, Move, PartialPlay, play_key

ALPHA_KINDS = ("completeness", "minimal-open", "cylinder-extend")
BETA_KINDS = ("diagonal", "random")


@dataclass(frozen=True)
class Strategy:
    id: str
    mode: str
    role: str
    respond: Callable[[PartialPlay], Move] = field(compare=False)
    rep: object = field(default=None, compare=False, repr=False)
    chain_ids: Optional[Callable] = field(default=None, compare=False,
                                          repr=False)


def _stable_hash(*parts: str) -> int:
    h = hashlib.sha256("\x1f".join(parts).encode()).hexdigest()
    return int(h, 16)


# ---------------------------------------------------------------------------
# Built-in second-player (alpha) strategies


def make_alpha(kind: str, space: tp.SpacePresentation,
               mode: str = "bm") -> Strategy:
    if kind == "completeness":
        if space.kind not in tp.LINE_KINDS or mode != "bm":
            raise KindMismatch("completeness plays bm on interval lines")
        respond = _completeness_respond
    elif kind == "minimal-open":
        if space.kind != "finite":
            raise KindMismatch("minimal-open requires a finite space")
        respond = _minimal_open_respond(space, mode)
    elif kind == "cylinder-extend":
        if space.kind != "cantor":
            raise KindMismatch("cylinder-extend requires the cantor space")
        respond = _cylinder_extend_respond(mode)
    else:
        raise InvalidElement(f"unknown alpha kind {kind!r}")
    return Strategy(kind, mode, ALPHA, respond)


def _completeness_respond(play: PartialPlay) -> Move:
    # midpoint shrink: reply (c - r, c + r) with r = min(width/8, 2^-n-2);
    # the closed hull [c - r, c + r] then sits strictly inside the opponent's
    # interval and diameters drop by at least a factor of four per round
    u = play.last_open
    n = len(play.moves) // 2
    c = (u.lo + u.hi) / 2
    r = min((u.hi - u.lo) / 8, Fraction(1, 1 << (n + 2)))
    return Move(ALPHA, tp.Interval(c - r, c + r))


def _minimal_open_respond(space: tp.SpacePresentation, mode: str):
    def respond(play: PartialPlay) -> Move:
        u = play.last_open
        if mode == "ch":
            x = play.last_beta_point
            for o in space.opens:
                if o and x.id in o and o <= u.atoms:
                    return Move(ALPHA, tp.FiniteOpen(o))
            raise InvalidElement("finite opens admit no reply containing the point")
        for o in space.opens:
            if o and o <= u.atoms:
                return Move(ALPHA, tp.FiniteOpen(o))
        raise InvalidElement("no nonempty declared open inside the move")
    return respond


def _cylinder_extend_respond(mode: str):
    def respond(play: PartialPlay) -> Move:
        u = play.last_open
        if mode == "ch":
            x = play.last_beta_point
            bit = "1" if len(u.stem) in x.support else "0"
            return Move(ALPHA, tp.Cylinder(u.stem + bit))
        return Move(ALPHA, tp.Cylinder(u.stem + "0"))
    return respond


# ---------------------------------------------------------------------------
# Built-in first-player (beta) agents


def make_beta(kind: str, space: tp.SpacePresentation, seed: int = 0,
              mode: str = "bm") -> Strategy:
    if kind == "diagonal":
        if space.kind != "rational-line":
            raise KindMismatch("diagonal plays on the rational line only")
        return Strategy("diagonal", mode, BETA, _diagonal_respond(space, mode))
    if kind == "random":
        return Strategy(f"random:{seed}", mode, BETA,
                        _random_respond(space, seed, mode))
    raise InvalidElement(f"unknown beta kind {kind!r}")


def _with_point(open_: tp.BaseElement, space, mode: str) -> Move:
    if mode == "ch":
        return Move(BETA, open_, tp.pick_point(open_, space))
    return Move(BETA, open_)


def _diagonal_respond(space: tp.SpacePresentation, mode: str):
    def respond(play: PartialPlay) -> Move:
        u = play.last_open or tp.canonical_opener(space)
        n = len(play.moves) // 2
        r = next(itertools.islice(tp.rationals(), n, None))
        if u.lo <= r < u.hi:
            # exclude r by moving strictly to its right
            w = u.hi - r
            nxt = tp.Interval(r + w / 4, r + w / 2)
        else:
            # already excluded: canonical middle-half shrink
            w = u.hi - u.lo
            nxt = tp.Interval(u.lo + w / 4, u.lo + 3 * w / 4)
        return _with_point(nxt, space, mode)
    return respond


def _random_respond(space: tp.SpacePresentation, seed: int, mode: str):
    def respond(play: PartialPlay) -> Move:
        if not play.moves:
            return _with_point(tp.canonical_opener(space), space, mode)
        u = play.last_open
        candidates = list(itertools.islice(
            tp.proper_refinements(space, u), 16))
        if not candidates:
            # a minimal open: repeating is legal since nesting is non-strict
            return _with_point(u, space, mode)
        i = _stable_hash(str(seed), play_key(play)) % len(candidates)
        return _with_point(candidates[i], space, mode)
    return respond


# ---------------------------------------------------------------------------
# Strategies derived from representation triples


def rep_to_strategy(rep, mode: str = "bm") -> Strategy:
    """Second-player strategy that walks a growing chain in the carrier: at
    each round it refines the opponent's open inside the triple, joins the
    result with the previous chain element, and replies with that element's
    base set. The memo below is a cache keyed by the play; it never changes
    observable behaviour."""
    memo: dict = {}

    def chain_for(entries: tuple) -> list:
        if not entries:
            return []
        if entries in memo:
            return memo[entries]
        prev = chain_for(entries[:-1])
        m = entries[-1]
        if mode == "ch":
            p = rep.refine_at(m.point, m.open)
            q = p if not prev else rep.upper_bound_at(m.point, p, prev[-1])
        else:
            p = rep.refine(m.open)
            q = p if not prev else rep.upper_bound(p, prev[-1])
        out = prev + [q]
        memo[entries] = out
        return out

    def chain_ids(play: PartialPlay) -> list:
        return chain_for(play.beta_entries())

    def respond(play: PartialPlay) -> Move:
        return Move(ALPHA, rep.bmap(chain_ids(play)[-1]))

    return Strategy(f"rep:{rep.origin}", mode, ALPHA, respond, rep=rep,
                    chain_ids=chain_ids)


# ---------------------------------------------------------------------------
# Descriptor-string resolution (used by the CLI and the serve mode)


def resolve(descriptor: str, space: tp.SpacePresentation, mode: str,
            role: str, seed: int = 0) -> Strategy:
    if role == ALPHA:
        if descriptor in ALPHA_KINDS:
            return make_alpha(descriptor, space, mode)
        if descriptor.startswith("rep:"):
            from .representations import load_rep
            return rep_to_strategy(load_rep(descriptor[4:]), mode)
        raise InvalidElement(f"unknown alpha strategy {descriptor!r}")
    if descriptor == "diagonal":
        return make_beta("diagonal", space, seed, mode)
    if descriptor == "random":
        return make_beta("random", space, seed, mode)
    if descriptor.startswith("random:"):
        return make_beta("random", space, int(descriptor.split(":", 1)[1]), mode)
    raise InvalidElement(f"unknown beta strategy {descriptor!r}")
