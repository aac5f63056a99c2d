import itertools
from fractions import Fraction as F

import pytest

from topogame import games, representations as rp, strategies as st
from topogame import topology as tp
from topogame.errors import (InvalidElement, KindMismatch,
                             RefineBoundExceeded)

RL = tp.REAL_LINE
QL = tp.RATIONAL_LINE
CN = tp.CANTOR
SIER = tp.make_finite(["a", "b"], [frozenset(), frozenset("a"),
                                   frozenset("ab")])


def iv(lo, hi):
    return tp.Interval(F(lo), F(hi))


def _play_bm(space, *opens):
    play = games.PartialPlay("bm")
    for i, o in enumerate(opens):
        role = games.BETA if i % 2 == 0 else games.ALPHA
        play = games.step(play, games.Move(role, o), space)
    return play


# ---------------------------------------------------------------------------
# alpha strategies


def test_completeness_round0_example():
    a = st.make_alpha("completeness", RL)
    m = a.respond(_play_bm(RL, iv(0, 1)))
    assert m.open == iv(F(3, 8), F(5, 8))


def test_completeness_requires_line_bm():
    with pytest.raises(KindMismatch):
        st.make_alpha("completeness", CN)
    with pytest.raises(KindMismatch):
        st.make_alpha("completeness", RL, mode="ch")


def test_completeness_closure_and_diameter_every_round():
    a = st.make_alpha("completeness", RL)
    b = st.make_beta("random", RL, 17)
    play = games.PartialPlay("bm")
    d0 = None
    prev = None
    for n in range(20):
        play = games.step(play, b.respond(play), RL)
        if d0 is None:
            d0 = games.diameter(play.last_open)
        u = play.last_open
        play = games.step(play, a.respond(play), RL)
        v = play.last_open
        assert u.lo < v.lo and v.hi < u.hi          # closure containment
        assert games.diameter(v) <= d0 / (1 << n)   # stated bound
        if prev is not None:
            assert games.diameter(v) < prev
        prev = games.diameter(v)


def test_cylinder_extend_example():
    a = st.make_alpha("cylinder-extend", CN)
    m = a.respond(_play_bm(CN, tp.Cylinder("0")))
    assert m.open == tp.Cylinder("00")


def test_cylinder_extend_ch_follows_point():
    a = st.make_alpha("cylinder-extend", CN, mode="ch")
    play = games.PartialPlay("ch")
    play = games.step(play, games.Move(games.BETA, tp.Cylinder("0"),
                                       tp.BitStream(frozenset([1]))), CN)
    assert a.respond(play).open == tp.Cylinder("01")


def test_minimal_open_example():
    a = st.make_alpha("minimal-open", SIER)
    m = a.respond(_play_bm(SIER, tp.FiniteOpen(frozenset("ab"))))
    assert m.open == tp.FiniteOpen(frozenset("a"))


def test_unknown_kinds_rejected():
    with pytest.raises(InvalidElement):
        st.make_alpha("nope", RL)
    with pytest.raises(InvalidElement):
        st.make_beta("nope", RL)


# ---------------------------------------------------------------------------
# beta agents


def test_diagonal_round0_example():
    b = st.make_beta("diagonal", QL)
    m = b.respond(games.PartialPlay("bm"))
    assert m.open == iv(F(1, 4), F(1, 2))


def test_diagonal_requires_rational_line():
    with pytest.raises(KindMismatch):
        st.make_beta("diagonal", RL)


def test_diagonal_excludes_prefix_64_rounds():
    b = st.make_beta("diagonal", QL)
    a = st.make_alpha("completeness", QL)
    play = games.PartialPlay("bm")
    for _ in range(64):
        play = games.step(play, b.respond(play), QL)
        play = games.step(play, a.respond(play), QL)
    final = play.last_open
    for r in itertools.islice(tp.rationals(), 64):
        assert not tp.member(tp.RationalPoint(r), final, QL)


def test_random_determinism():
    for space in (RL, CN, SIER):
        b1 = st.make_beta("random", space, 11)
        b2 = st.make_beta("random", space, 11)
        a = {"real-line": "completeness", "cantor": "cylinder-extend",
             "finite": "minimal-open"}[space.kind]
        alpha = st.make_alpha(a, space)
        t1 = games.simulate(space, alpha, b1, 8, 11)
        t2 = games.simulate(space, alpha, b2, 8, 11)
        assert games.transcript_to_text(t1) == games.transcript_to_text(t2)


def test_random_seeds_differ():
    a = st.make_alpha("completeness", RL)
    t1 = games.simulate(RL, a, st.make_beta("random", RL, 1), 6, 1)
    t2 = games.simulate(RL, a, st.make_beta("random", RL, 2), 6, 2)
    assert games.transcript_to_text(t1) != games.transcript_to_text(t2)


def test_strategy_legality_over_random_plays():
    """Every built-in second-player response is a legal step on >= 10^3
    randomly generated legal plays per space."""
    cases = [
        (RL, "completeness", "bm"),
        (SIER, "minimal-open", "bm"),
        (SIER, "minimal-open", "ch"),
        (CN, "cylinder-extend", "bm"),
        (CN, "cylinder-extend", "ch"),
    ]
    for space, kind, mode in cases:
        alpha = st.make_alpha(kind, space, mode)
        count = 0
        for seed in range(150):
            b = st.make_beta("random", space, seed, mode)
            play = games.PartialPlay(mode)
            for _ in range(7):
                play = games.step(play, b.respond(play), space)
                # step() raising would fail the test
                play = games.step(play, alpha.respond(play), space)
                count += 1
        assert count >= 1000


# ---------------------------------------------------------------------------
# rep-derived strategies


def test_rep_to_strategy_handcrafted_example():
    rep = rp.HandcraftedRep(
        SIER, "bm",
        [("p", tp.FiniteOpen(frozenset("a"))),
         ("q", tp.FiniteOpen(frozenset("ab")))],
        [("p", "p"), ("q", "q"), ("q", "p")])
    s = st.rep_to_strategy(rep)
    m = s.respond(_play_bm(SIER, tp.FiniteOpen(frozenset("ab"))))
    assert m.open == tp.FiniteOpen(frozenset("a"))


def test_rep_refine_bound_exceeded():
    rep = rp.HandcraftedRep(RL, "bm", [("p", iv(5, 6))], [("p", "p")],
                            search_bound=1)
    s = st.rep_to_strategy(rep)
    with pytest.raises(RefineBoundExceeded):
        s.respond(_play_bm(RL, iv(0, 1)))


def test_rep_strategy_chain_invariants():
    """q_n below q_{n+1} and B(q_n) inside the opponent's open, every round."""
    a = st.make_alpha("minimal-open", SIER)
    rep = rp.compile_rep(a, SIER, "bm", depth=2, branching=2)
    s = st.rep_to_strategy(rep)
    b = st.make_beta("random", SIER, 7)
    play = games.PartialPlay("bm")
    for _ in range(6):
        play = games.step(play, b.respond(play), SIER)
        u = play.last_open
        ids = s.chain_ids(play)
        assert tp.subset(rep.bmap(ids[-1]), u, SIER)
        for p, q in zip(ids, ids[1:]):
            assert rep.leq(p, q)
        play = games.step(play, s.respond(play), SIER)


def test_resolve_descriptors():
    assert st.resolve("completeness", RL, "bm", games.ALPHA).id == \
        "completeness"
    assert st.resolve("random:5", RL, "bm", games.BETA).id == "random:5"
    assert st.resolve("diagonal", QL, "bm", games.BETA).id == "diagonal"
    with pytest.raises(InvalidElement):
        st.resolve("mystery", RL, "bm", games.ALPHA)
