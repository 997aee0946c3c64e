"""Set-sharing: sets of sharing groups and their operators.

A sharing group is a non-empty ``frozenset`` of variable names and a sharing
set is a ``frozenset`` of groups.  All operators are pure.
"""

from __future__ import annotations

from collections.abc import Iterable
from itertools import combinations

Group = frozenset
SharingSet = frozenset


def make(groups: Iterable[Iterable[str]]) -> SharingSet:
    """Build a sharing set; an empty group is rejected."""
    out = set()
    for g in groups:
        g = frozenset(g)
        if not g:
            raise ValueError("the empty set is not a sharing group")
        out.add(g)
    return frozenset(out)


def vars_of(sh: SharingSet) -> frozenset:
    return frozenset().union(*sh)


def star(sh: SharingSet) -> SharingSet:
    """Closure under union of one or more groups."""
    closed = set(sh)
    frontier = set(sh)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in sh:
                u = a | b
                if u not in closed:
                    fresh.add(u)
        closed |= fresh
        frontier = fresh
    return frozenset(closed)


def rel(vs: Iterable[str], sh: SharingSet) -> SharingSet:
    vs = frozenset(vs)
    return frozenset(g for g in sh if not g.isdisjoint(vs))


def nrel(vs: Iterable[str], sh: SharingSet) -> SharingSet:
    vs = frozenset(vs)
    return frozenset(g for g in sh if g.isdisjoint(vs))


def bin(sh1: SharingSet, sh2: SharingSet) -> SharingSet:  # noqa: A001
    return frozenset(a | b for a in sh1 for b in sh2)


def self_bin(sh: SharingSet) -> SharingSet:
    return bin(sh, sh)


def aexists(sh: SharingSet, vs: Iterable[str]) -> SharingSet:
    vs = frozenset(vs)
    out = {g - vs for g in sh}
    out.discard(frozenset())
    out.update(frozenset((x,)) for x in vs)
    return frozenset(out)


def amgu_sh(sh: SharingSet, x: str, vs: Iterable[str]) -> SharingSet:
    """Plain set-sharing unification of ``x`` with a term over ``vs``."""
    vs = frozenset(vs)
    sh_x = rel((x,), sh)
    sh_t = rel(vs, sh)
    return nrel(vs | {x}, sh) | bin(star(sh_x), star(sh_t))


def _subsets(universe: Iterable[str]):
    items = sorted(universe)
    for k in range(1, len(items) + 1):
        for c in combinations(items, k):
            yield frozenset(c)


def rho_con(sh: SharingSet) -> SharingSet:
    """Groundness observable: every group over the non-ground variables."""
    return frozenset(_subsets(vars_of(sh)))


def rho_ps(sh: SharingSet, vi: Iterable[str]) -> SharingSet:
    """Independence observable: groups whose pairs all share in ``sh``."""
    pairs = set()
    for g in sh:
        pairs.update(frozenset(p) for p in combinations(sorted(g), 2))
    out = []
    for s in _subsets(vi):
        if all(frozenset(p) in pairs for p in combinations(sorted(s), 2)):
            out.append(s)
    return frozenset(out)


def rho_psd(sh: SharingSet) -> SharingSet:
    """Pair-sharing dependency closure.

    Every member of the closure is a union of groups of ``sh``, so candidates
    are drawn from ``star(sh)`` and filtered by the defining condition.
    """
    out = []
    for s in star(sh):
        below = [u for u in sh if u <= s]
        if all(frozenset().union(*(u for u in below if y in u)) == s for y in s):
            out.append(s)
    return frozenset(out)


def sorted_groups(sh: Iterable[Iterable[str]]) -> list[list[str]]:
    """Canonical listing: each group sorted, groups sorted lexicographically."""
    return sorted(sorted(g) for g in sh)


def format_sharing(sh: Iterable[Iterable[str]]) -> str:
    """Compact ``{x x1, y}``-style rendering used in reports."""
    return "{" + ", ".join(" ".join(g) for g in sorted_groups(sh)) + "}"
