"""State machines for the nested-open-set games.

Two modes: "bm" (players alternately shrink open sets) and "ch" (the first
player additionally names a point each round that the reply must contain).
Games here are finite prefixes; winning is attested by finite-depth
certificates checked in exact arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import serialize as sz
from . import topology as tp
from .errors import (InvalidElement, ModeMismatch, NotNested, NotYourTurn,
                     PointOutside, TopogameError, UnknownCertificateKind)

BETA = "beta"
ALPHA = "alpha"
MODES = ("bm", "ch")


@dataclass(frozen=True)
class Move:
    role: str
    open: tp.BaseElement
    point: Optional[tp.Point] = None


@dataclass(frozen=True)
class PartialPlay:
    mode: str
    moves: tuple = ()

    @property
    def turn(self) -> str:
        return BETA if len(self.moves) % 2 == 0 else ALPHA

    @property
    def last_open(self) -> Optional[tp.BaseElement]:
        return self.moves[-1].open if self.moves else None

    def beta_entries(self) -> tuple:
        """The first player's move entries (the data a strategy responds to)."""
        return tuple(m for m in self.moves if m.role == BETA)

    def beta_opens(self) -> tuple:
        return tuple(m.open for m in self.moves if m.role == BETA)

    @property
    def last_beta_point(self) -> Optional[tp.Point]:
        for m in reversed(self.moves):
            if m.role == BETA:
                return m.point
        return None

    @property
    def rounds_played(self) -> int:
        return len(self.moves) // 2


def step(play: PartialPlay, move: Move, space: tp.SpacePresentation) -> PartialPlay:
    """Extend a legal play by one move, enforcing all legality rules."""
    if move.role != play.turn:
        raise NotYourTurn(f"expected {play.turn}")
    tp.validate_element(move.open, space)
    prev = play.last_open
    if prev is not None and not tp.subset(move.open, prev, space):
        raise NotNested("move must be contained in the previous open")
    if play.mode == "ch":
        if move.role == BETA:
            if move.point is None:
                raise PointOutside("first player must name a point")
            if not tp.member(move.point, move.open, space):
                raise PointOutside("named point lies outside the chosen open")
        else:
            if move.point is not None:
                raise PointOutside("second player does not name points")
            x = play.last_beta_point
            if x is None or not tp.member(x, move.open, space):
                raise PointOutside("reply must contain the opponent's point")
    elif move.point is not None:
        raise PointOutside("points only occur in ch mode")
    return PartialPlay(play.mode, play.moves + (move,))


def stronger(p1: PartialPlay, p2: PartialPlay) -> bool:
    """True iff p2 extends p1 entrywise on the first player's moves."""
    if p1.mode != p2.mode:
        raise ModeMismatch(p1.mode, p2.mode)
    e1, e2 = p1.beta_entries(), p2.beta_entries()
    if len(e1) > len(e2):
        return False
    return all(a.open == b.open and a.point == b.point
               for a, b in zip(e1, e2))


def play_key(play: PartialPlay) -> str:
    """Stable canonical encoding of a play; used as a pure-hash input."""
    parts = []
    for m in play.moves:
        p = "" if m.point is None else repr(sz.point_to_obj(m.point))
        parts.append(f"{m.role}|{sz.element_to_obj(m.open)!r}|{p}")
    return play.mode + ";" + ";".join(parts)


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class ClosureStep:
    open: tp.BaseElement
    diameter: Fraction
    bound: Fraction


@dataclass(frozen=True)
class ShrinkingClosures:
    steps: tuple


@dataclass(frozen=True)
class Stabilized:
    stable: tp.BaseElement
    since_round: int


@dataclass(frozen=True)
class RepChain:
    chain: tuple            # ((id, base element), ...)
    leq_pairs: tuple        # ((id, id), ...) attested below-relations


@dataclass(frozen=True)
class ExclusionList:
    excluded: tuple         # Fractions provably outside the final open
    prefix_length: int


Certificate = object


def diameter(b: tp.BaseElement) -> Fraction:
    if isinstance(b, tp.Interval):
        return b.hi - b.lo
    if isinstance(b, tp.Cylinder):
        return Fraction(1, 1 << len(b.stem))
    raise InvalidElement(f"no diameter for {type(b).__name__}")


def build_certificate(space: tp.SpacePresentation, play: PartialPlay,
                      alpha=None) -> Certificate:
    """Certificate schema chosen by the space's completeness class, except
    that a representation-derived second player always attests via its
    recorded chain."""
    rep = getattr(alpha, "rep", None)
    if rep is not None:
        ids = alpha.chain_ids(play)
        chain = tuple((i, rep.bmap(i)) for i in ids)
        pairs = tuple((a, b) for a, b in zip(ids, ids[1:]) if rep.leq(a, b))
        return RepChain(chain, pairs)

    cc = space.completeness_class
    opens = [m.open for m in play.moves]
    if cc == "finite":
        stable = opens[-1]
        since = len(opens) - 1
        while since > 0 and opens[since - 1] == stable:
            since -= 1
        return Stabilized(stable, since)
    if cc in ("complete-metric", "zero-dim-compact"):
        d0 = diameter(opens[0])
        steps = []
        for k, m in enumerate(play.moves):
            if m.role != ALPHA:
                continue
            n = k // 2
            steps.append(ClosureStep(m.open, diameter(m.open),
                                     d0 / (1 << n)))
        return ShrinkingClosures(tuple(steps))
    if cc == "incomplete-metric":
        final = opens[-1]
        prefix = play.rounds_played
        excluded = tuple(
            r for r in itertools.islice(tp.rationals(), prefix)
            if not tp.member(tp.RationalPoint(r), final, space))
        return ExclusionList(excluded, prefix)
    raise InvalidElement(f"no certificate schema for class {cc}")


# ---------------------------------------------------------------------------
# Transcripts


@dataclass(frozen=True)
class Transcript:
    space: tp.SpacePresentation
    mode: str
    alpha_id: str
    beta_id: str
    seed: int
    rounds: int
    play: PartialPlay
    certificate: Certificate
    rep: object = field(default=None, compare=False, repr=False)


def simulate(space: tp.SpacePresentation, alpha, beta, rounds: int,
             seed: int, mode: Optional[str] = None) -> Transcript:
    """Run a full game: the first player moves, the second replies, for the
    given number of rounds. Deterministic given its inputs."""
    mode = mode or alpha.mode
    play = PartialPlay(mode)
    for _ in range(rounds):
        play = step(play, beta.respond(play), space)
        play = step(play, alpha.respond(play), space)
    cert = build_certificate(space, play, alpha)
    return Transcript(space, mode, alpha.id, beta.id, seed, rounds, play,
                      cert, rep=getattr(alpha, "rep", None))


# ---------------------------------------------------------------------------
# Verification


def verify_certificate(t: Transcript, rep=None) -> bool:
    """Check the certificate invariants against the recorded moves, in exact
    arithmetic."""
    c = t.certificate
    space = t.space
    if isinstance(c, ShrinkingClosures):
        return _verify_shrinking(c, t)
    if isinstance(c, Stabilized):
        opens = [m.open for m in t.play.moves]
        if not opens or not 0 <= c.since_round < len(opens):
            return False
        if any(o != c.stable for o in opens[c.since_round:]):
            return False
        if len(opens) >= 2 and (opens[-1] != c.stable or opens[-2] != c.stable):
            return False
        return True
    if isinstance(c, ExclusionList):
        final = t.play.moves[-1].open
        prefix = list(itertools.islice(tp.rationals(), c.prefix_length))
        outside = tuple(r for r in prefix
                        if not tp.member(tp.RationalPoint(r), final, space))
        return c.excluded == outside
    if isinstance(c, RepChain):
        return _verify_rep_chain(c, t, rep if rep is not None else t.rep)
    raise UnknownCertificateKind(type(c).__name__)


def _verify_shrinking(c: ShrinkingClosures, t: Transcript) -> bool:
    alpha_moves = [m for m in t.play.moves if m.role == ALPHA]
    if len(c.steps) != len(alpha_moves):
        return False
    if not t.play.moves:
        return False
    d0 = diameter(t.play.moves[0].open)
    prev_open = t.play.moves[0].open
    prev_diam = None
    for n, (s, m) in enumerate(zip(c.steps, alpha_moves)):
        if s.open != m.open or s.diameter != diameter(s.open):
            return False
        if s.bound != d0 / (1 << n) or s.diameter > s.bound:
            return False
        if prev_diam is not None and not s.diameter < prev_diam:
            return False
        if not _closure_inside(s.open, prev_open):
            return False
        prev_open, prev_diam = s.open, s.diameter
    return True


def _closure_inside(inner: tp.BaseElement, outer: tp.BaseElement) -> bool:
    if isinstance(inner, tp.Interval):
        # closed hull [lo, hi] must sit strictly inside the outer open
        return outer.lo < inner.lo and inner.hi < outer.hi
    if isinstance(inner, tp.Cylinder):
        # cylinders are clopen, so closure containment is stem extension
        return inner.stem.startswith(outer.stem)
    return False


def _verify_rep_chain(c: RepChain, t: Transcript, rep) -> bool:
    alpha_moves = [m for m in t.play.moves if m.role == ALPHA]
    if len(c.chain) != len(alpha_moves):
        return False
    pairset = set(c.leq_pairs)
    ids = [i for i, _ in c.chain]
    for (i, b), m in zip(c.chain, alpha_moves):
        if not tp.subset(b, m.open, t.space):
            return False
    for a, b in zip(ids, ids[1:]):
        if (a, b) not in pairset:
            return False
        if rep is not None and not rep.leq(a, b):
            return False
    if rep is not None:
        for i, b in c.chain:
            if rep.bmap(i) != b:
                return False
    return True


def verify_transcript(t: Transcript, rep=None) -> bool:
    """Full check: replay every move through the legality rules, then verify
    the certificate."""
    try:
        play = PartialPlay(t.mode)
        for m in t.play.moves:
            play = step(play, m, t.space)
        return verify_certificate(t, rep=rep)
    except UnknownCertificateKind:
        raise
    except TopogameError:
        return False


# ---------------------------------------------------------------------------
# Transcript serialization


def move_to_obj(m: Move):
    o = {"role": m.role, "open": sz.element_to_obj(m.open)}
    if m.point is not None:
        o["point"] = sz.point_to_obj(m.point)
    return o


def move_from_obj(o) -> Move:
    return Move(o["role"], sz.element_from_obj(o["open"]),
                sz.point_from_obj(o["point"]) if "point" in o else None)


def certificate_to_obj(c: Certificate):
    if isinstance(c, ShrinkingClosures):
        return {"kind": "shrinking-closures",
                "steps": [{"open": sz.element_to_obj(s.open),
                           "diameter": sz.render_q(s.diameter),
                           "bound": sz.render_q(s.bound)} for s in c.steps]}
    if isinstance(c, Stabilized):
        return {"kind": "stabilized", "stable": sz.element_to_obj(c.stable),
                "since_round": c.since_round}
    if isinstance(c, RepChain):
        return {"kind": "rep-chain",
                "chain": [{"id": i, "B": sz.element_to_obj(b)}
                          for i, b in c.chain],
                "leq_pairs": [list(p) for p in c.leq_pairs]}
    if isinstance(c, ExclusionList):
        return {"kind": "exclusion-list",
                "excluded": [sz.render_q(r) for r in c.excluded],
                "prefix_length": c.prefix_length}
    raise UnknownCertificateKind(type(c).__name__)


def certificate_from_obj(o) -> Certificate:
    k = o.get("kind")
    if k == "shrinking-closures":
        return ShrinkingClosures(tuple(
            ClosureStep(sz.element_from_obj(s["open"]),
                        sz.parse_q(s["diameter"]), sz.parse_q(s["bound"]))
            for s in o["steps"]))
    if k == "stabilized":
        return Stabilized(sz.element_from_obj(o["stable"]), o["since_round"])
    if k == "rep-chain":
        return RepChain(tuple((e["id"], sz.element_from_obj(e["B"]))
                              for e in o["chain"]),
                        tuple(tuple(p) for p in o["leq_pairs"]))
    if k == "exclusion-list":
        return ExclusionList(tuple(sz.parse_q(r) for r in o["excluded"]),
                             o["prefix_length"])
    raise UnknownCertificateKind(str(k))


def transcript_to_obj(t: Transcript):
    return {"space": sz.space_to_obj(t.space),
            "mode": t.mode,
            "alpha": t.alpha_id,
            "beta": t.beta_id,
            "seed": t.seed,
            "rounds": t.rounds,
            "moves": [move_to_obj(m) for m in t.play.moves],
            "certificate": certificate_to_obj(t.certificate)}


def transcript_from_obj(o) -> Transcript:
    play = PartialPlay(o["mode"], tuple(move_from_obj(m) for m in o["moves"]))
    return Transcript(sz.space_from_obj(o["space"]), o["mode"], o["alpha"],
                      o["beta"], o["seed"], o["rounds"], play,
                      certificate_from_obj(o["certificate"]))


def transcript_to_text(t: Transcript) -> str:
    return sz.dumps_canonical(transcript_to_obj(t))


def transcript_from_text(text: str) -> Transcript:
    return transcript_from_obj(sz.loads(text))
