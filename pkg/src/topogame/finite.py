"""Exhaustive enumeration oracles for small finite structures.

Used by the sweep tests: every topology on a small labeled atom set, and
every labeled partial order on up to six elements.
"""

from __future__ import annotations

import itertools

from . import topology as tp

ATOM_NAMES = "abcdefgh"


def all_topologies(n: int) -> list:
    """Every topology on n labeled atoms, as space presentations whose opens
    are declared in (size, lexicographic) order."""
    atoms = list(ATOM_NAMES[:n])
    universe = [frozenset(c) for k in range(n + 1)
                for c in itertools.combinations(atoms, k)]
    proper = [s for s in universe if s and s != frozenset(atoms)]
    out = []
    for mask in range(1 << len(proper)):
        fam = {frozenset(), frozenset(atoms)}
        fam.update(s for i, s in enumerate(proper) if mask >> i & 1)
        if all(a | b in fam and a & b in fam
               for a, b in itertools.combinations(fam, 2)):
            opens = sorted(fam, key=lambda s: (len(s), sorted(s)))
            out.append(tp.make_finite(atoms, opens))
    return out


def all_posets(n: int) -> list:
    """Every labeled partial order on {0..n-1}, as tuples of reflexive
    up-set bitmasks: up[i] has bit j set iff i <= j.

    Built incrementally: a poset on k+1 elements is a poset on k elements
    plus element k with a chosen down-set and up-set."""
    posets = [tuple()]
    for k in range(n):
        nxt = []
        for up in posets:
            down = _down_masks(up, k)
            downsets = [d for d in range(1 << k) if _is_downset(d, down, k)]
            upsets = [u for u in range(1 << k) if _is_upset(u, up, k)]
            for d in downsets:
                for u in upsets:
                    if d & u:
                        continue
                    # everything below k must already sit below everything
                    # above k
                    if any(up[i] & u != u for i in range(k) if d >> i & 1):
                        continue
                    new = tuple((up[i] | (1 << k)) if d >> i & 1 else up[i]
                                for i in range(k)) + (u | (1 << k),)
                    nxt.append(new)
        posets = nxt
    return posets


def _down_masks(up, k):
    down = [0] * k
    for i in range(k):
        for j in range(k):
            if up[j] >> i & 1:
                down[i] |= 1 << j
    return down


def _is_downset(d, down, k):
    return all(down[i] & d == down[i] for i in range(k) if d >> i & 1)


def _is_upset(u, up, k):
    return all(up[i] & u == up[i] for i in range(k) if u >> i & 1)
