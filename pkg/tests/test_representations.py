import itertools
from fractions import Fraction as F

import pytest

from topogame import finite, games, representations as rp, strategies as st
from topogame import topology as tp
from topogame.errors import (BoundExceeded, DisjointBases, InvalidElement,
                             NotDirected)

RL = tp.REAL_LINE
SIER = tp.make_finite(["a", "b"], [frozenset(), frozenset("a"),
                                   frozenset("ab")])
DISCRETE2 = tp.make_finite(["a", "b"], [frozenset(), frozenset("a"),
                                        frozenset("b"), frozenset("ab")])


def iv(lo, hi):
    return tp.Interval(F(lo), F(hi))


def _sier_rep(depth=2, branching=2, mode="bm"):
    a = st.make_alpha("minimal-open", SIER, mode)
    return rp.compile_rep(a, SIER, mode, depth, branching)


# ---------------------------------------------------------------------------
# compiled triples


def test_compiled_sierpinski_axioms_pass():
    rep = _sier_rep()
    report = rp.check_axioms(rep, "piD", SIER)
    assert report.all_pass(), report.render()


def test_compiled_singleton_record_bmap():
    rep = _sier_rep()
    i = rep.refine(tp.FiniteOpen(frozenset("ab")))
    g = rep.element(i).payload
    assert len(g) == 1
    assert rep.bmap(i) == g[-1].value == tp.FiniteOpen(frozenset("a"))


def test_compiled_leq_transitive_exhaustive():
    rep = _sier_rep()
    ids = rep.carrier_ids()
    for p, q, r in itertools.product(ids, repeat=3):
        if rep.leq(p, q) and rep.leq(q, r):
            assert rep.leq(p, r)


def test_compiled_bmap_antitone():
    rep = _sier_rep()
    ids = rep.carrier_ids()
    for p, q in itertools.product(ids, repeat=2):
        if rep.leq(p, q):
            assert tp.subset(rep.bmap(q), rep.bmap(p), SIER)


def test_compiled_payload_values_decreasing():
    rep = _sier_rep()
    for i in rep.carrier_ids():
        vals = [g.value for g in rep.element(i).payload]
        for u, v in zip(vals, vals[1:]):
            assert tp.subset(v, u, SIER)


def test_compile_rejects_bad_bounds():
    a = st.make_alpha("minimal-open", SIER)
    with pytest.raises(InvalidElement):
        rp.compile_rep(a, SIER, "bm", 0, 2)


# ---------------------------------------------------------------------------
# upper_bound_witness


def test_upper_bound_postconditions_sampled():
    a = st.make_alpha("completeness", RL)
    rep = rp.compile_rep(a, RL, "bm", depth=2, branching=5)
    # intervals all centered at 1/2, so every pair of responses intersects
    ids = [rep.refine(tp.Interval(F(1, 2) - w, F(1, 2) + w))
           for w in (F(1, 2), F(1, 3), F(1, 4), F(1, 5), F(1, 8))]
    checked = 0
    for p, q in itertools.combinations(ids, 2):
        v = tp.intersect(rep.bmap(p), rep.bmap(q), RL)
        assert v is not None
        r = rp.upper_bound_witness(rep, p, q)
        assert rep.leq(p, r) and rep.leq(q, r)
        assert tp.subset(rep.bmap(r), v, RL)
        checked += 1
    assert checked >= 5


def test_upper_bound_self():
    rep = _sier_rep()
    p = rep.carrier_ids()[0]
    r = rep.upper_bound(p, p)
    assert rep.leq(p, r)
    assert tp.subset(rep.bmap(r), rep.bmap(p), SIER)


def test_upper_bound_disjoint_bases():
    a = st.make_alpha("minimal-open", DISCRETE2)
    rep = rp.compile_rep(a, DISCRETE2, "bm", depth=1, branching=3)
    by_b = {rep.bmap(i): i for i in rep.carrier_ids()}
    p = by_b[tp.FiniteOpen(frozenset("a"))]
    q = by_b[tp.FiniteOpen(frozenset("b"))]
    with pytest.raises(DisjointBases):
        rep.upper_bound(p, q)


def test_upper_bound_sier_refines_intersection():
    rep = _sier_rep()
    by_b = {}
    for i in rep.carrier_ids():
        by_b.setdefault(rep.bmap(i), i)
    p = by_b[tp.FiniteOpen(frozenset("a"))]
    q = rep.refine(tp.FiniteOpen(frozenset("ab")))
    r = rep.upper_bound(q, p)
    assert tp.subset(rep.bmap(r), tp.FiniteOpen(frozenset("a")), SIER)


# ---------------------------------------------------------------------------
# chain extraction


def test_extract_chain_singleton():
    rep = _sier_rep()
    p = rep.carrier_ids()[0]
    assert rp.extract_chain(rep, [p]) == [p]


def test_extract_chain_two_comparable():
    up = (0b111, 0b110, 0b100)   # chain 0 <= 1 <= 2
    rep = rp.PosetRep(up)
    chain = rp.extract_chain(rep, [0, 2])
    assert chain[0] == 0
    for p, q in zip(chain, chain[1:]):
        assert rep.leq(p, q)
    assert all(any(rep.leq(p, c) for c in chain) for p in (0, 2))


def test_extract_chain_not_directed():
    up = (0b001, 0b010)          # two incomparable points
    rep = rp.PosetRep(up)
    with pytest.raises(NotDirected):
        rp.extract_chain(rep, [0, 1])


# ---------------------------------------------------------------------------
# constructed axiom violations


def test_pi_d3_violation_detected():
    # q below p but B(p) not inside B(q): antitone fails
    rep = rp.HandcraftedRep(
        SIER, "bm",
        [("p", tp.FiniteOpen(frozenset("a"))),
         ("q", tp.FiniteOpen(frozenset("ab")))],
        [("p", "p"), ("q", "q"), ("p", "q")])
    report = rp.check_axioms(rep, "piD", SIER)
    assert report.statuses["piD3"] == "fail"
    assert report.witnesses["piD3"] == ("p", "q")


def test_pi_d4_violation_detected():
    # two elements with intersecting bases and no common upper bound
    space = tp.make_finite(
        ["a", "b", "c"],
        [frozenset(), frozenset("a"), frozenset("ab"), frozenset("ac"),
         frozenset("abc")])
    rep = rp.HandcraftedRep(
        space, "bm",
        [("p", tp.FiniteOpen(frozenset("ab"))),
         ("q", tp.FiniteOpen(frozenset("ac")))],
        [("p", "p"), ("q", "q")])
    report = rp.check_axioms(rep, "piD", space)
    assert report.statuses["piD4"] == "fail"


def test_pi_d1_failure_detected():
    # carrier misses any element inside {a}
    rep = rp.HandcraftedRep(
        SIER, "bm",
        [("q", tp.FiniteOpen(frozenset("ab")))],
        [("q", "q")])
    report = rp.check_axioms(rep, "piD", SIER)
    assert report.statuses["piD1"] == "fail"


def test_d_system_on_compiled_ch_fragment():
    # the discrete space: the strategy's replies cover every point, so the
    # point-sensitive axiom system holds on the compiled fragment
    a = st.make_alpha("minimal-open", DISCRETE2, "ch")
    rep = rp.compile_rep(a, DISCRETE2, "ch", depth=2, branching=3)
    report = rp.check_axioms(rep, "D", DISCRETE2)
    assert report.all_pass(), report.render()


def test_report_render_format():
    report = rp.check_axioms(_sier_rep(), "piD", SIER)
    lines = report.render().splitlines()
    assert lines[0] == "system: piD"
    assert lines[1].startswith("fragment-size: ")
    assert lines[2] == "piD1: pass"


# ---------------------------------------------------------------------------
# products


def test_unary_product_isomorphic_plus_least():
    rep = _sier_rep(depth=1, branching=2)
    pr = rp.product_rep([rep], [SIER])
    assert len(pr.carrier_ids()) == len(rep.carrier_ids()) + 1
    for i in rep.carrier_ids():
        pid = pr._tuple_id((i,))
        assert pr.bmap(pid) == tp.box({0: rep.bmap(i)})
    least = pr._tuple_id((None,))
    assert tp.is_whole(pr.bmap(least), pr.space)
    for i in pr.carrier_ids():
        assert pr.leq(least, i)


def test_pair_product_bmap_componentwise():
    rep = _sier_rep(depth=1, branching=2)
    pr = rp.product_rep([rep, rep], [SIER, SIER])
    p = rep.carrier_ids()[0]
    pid = pr._tuple_id((p, None))
    assert pr.bmap(pid) == tp.box({0: rep.bmap(p)})
    for i in pr.carrier_ids():
        combo = pr.components(i)
        expect = tp.box({k: rep.bmap(c) for k, c in enumerate(combo)
                         if c is not None})
        assert pr.bmap(i) == expect


def test_pair_product_axioms():
    rep = _sier_rep()
    pr = rp.product_rep([rep, rep], [SIER, SIER])
    report = rp.check_axioms(pr, "piD", pr.space,
                             rp.CheckBounds(max_directed_size=2,
                                            max_directed_subsets=400))
    for ax in ("piD1", "piD2", "piD3", "piD4"):
        assert report.statuses[ax] == "pass", report.render()


def test_product_length_mismatch():
    rep = _sier_rep()
    with pytest.raises(InvalidElement):
        rp.product_rep([rep], [SIER, SIER])
    with pytest.raises(InvalidElement):
        rp.product_rep([], [])


# ---------------------------------------------------------------------------
# antisymmetrization


def test_quotient_already_antisymmetric():
    rep = rp.HandcraftedRep(
        SIER, "bm",
        [("p", tp.FiniteOpen(frozenset("a"))),
         ("q", tp.FiniteOpen(frozenset("ab")))],
        [("p", "p"), ("q", "q"), ("q", "p")])
    q = rp.antisym_quotient(rep)
    assert sorted(q.carrier_ids()) == ["p", "q"]


def test_quotient_merges_mutual_pair():
    rep = rp.HandcraftedRep(
        SIER, "bm",
        [("p", tp.FiniteOpen(frozenset("a"))),
         ("p2", tp.FiniteOpen(frozenset("a"))),
         ("q", tp.FiniteOpen(frozenset("ab")))],
        [("p", "p"), ("p2", "p2"), ("q", "q"),
         ("p", "p2"), ("p2", "p"), ("q", "p"), ("q", "p2")])
    q = rp.antisym_quotient(rep)
    assert sorted(q.carrier_ids()) == ["p", "q"]
    assert q.leq("q", "p") and not q.leq("p", "q")


def test_quotient_preserves_axiom_report():
    rep = _sier_rep()
    q = rp.antisym_quotient(rep)
    r1 = rp.check_axioms(rep, "piD", SIER)
    r2 = rp.check_axioms(q, "piD", SIER)
    assert r1.statuses == r2.statuses


# ---------------------------------------------------------------------------
# singleton upgrade


def test_singleton_upgrade_discrete_true():
    rep = rp.HandcraftedRep(
        DISCRETE2, "bm",
        [("p", tp.FiniteOpen(frozenset("a"))),
         ("q", tp.FiniteOpen(frozenset("b")))],
        [("p", "p"), ("q", "q")])
    assert rp.singleton_upgrade(rep)


def test_singleton_upgrade_chain_true_stable_false():
    # strict (irreflexive) order: the pair {q, p} is the only candidate and
    # fails directedness at (p, p), so the check is vacuously true
    chain = rp.HandcraftedRep(
        SIER, "bm",
        [("q", tp.FiniteOpen(frozenset("ab"))),
         ("p", tp.FiniteOpen(frozenset("a")))],
        [("q", "p")])
    assert rp.singleton_upgrade(chain)
    stable = rp.HandcraftedRep(
        SIER, "bm",
        [("q", tp.FiniteOpen(frozenset("ab")))],
        [("q", "q")])
    assert not rp.singleton_upgrade(stable)


def test_singleton_upgrade_one_atom_edge_case():
    one = tp.make_finite(["a"], [frozenset(), frozenset("a")])
    rep = rp.HandcraftedRep(one, "bm",
                            [("q", tp.FiniteOpen(frozenset("a")))],
                            [("q", "q")])
    assert rp.singleton_upgrade(rep)


def test_singleton_upgrade_bound_exceeded():
    n = 20
    atoms = [f"x{i}" for i in range(n)]
    space = tp.make_finite(atoms, [frozenset(), frozenset(atoms)])
    # no leq pairs at all: nothing directed beyond singletons, but the
    # carrier is too large for the exact check
    elems = [(f"e{i}", tp.FiniteOpen(frozenset(atoms))) for i in range(n)]
    rep = rp.HandcraftedRep(space, "bm", elems, [])
    with pytest.raises(BoundExceeded):
        rp.singleton_upgrade(rep)


# ---------------------------------------------------------------------------
# file round-trips


def test_rep_file_roundtrip(tmp_path):
    rep = _sier_rep()
    path = tmp_path / "frag.json"
    rp.save_rep(rep, str(path))
    back = rp.load_rep(str(path))
    assert back.carrier_ids() == rep.carrier_ids()
    for i in rep.carrier_ids():
        assert back.bmap(i) == rep.bmap(i)
    for p, q in itertools.product(rep.carrier_ids(), repeat=2):
        assert back.leq(p, q) == rep.leq(p, q)
    report = rp.check_axioms(back, "piD", back.space)
    assert report.all_pass()
