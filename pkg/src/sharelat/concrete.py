"""Sharing, groundness, freeness and linearity of a concrete substitution.

All extractors look at ``y sigma^i`` for bounded ``i`` without building the
terms: for every variable we track how many times each variable occurs in
``y sigma^i``, saturating the count at 2.  Saturation is harmless because the
definitions only ever ask whether a count is zero, one, or more.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .errors import UnsatisfiableSubstitution
from .sharing import SharingSet
from .solver import has_infinite_tree
from .terms import AnalysisContext, Term, Theory, Var, mvars


def _capped(counts: Mapping[str, int]) -> dict:
    return {z: min(k, 2) for z, k in counts.items()}


class _Powers:
    """Capped occurrence counts of ``y sigma^i`` for ``y`` in ``dom(sigma)``."""

    def __init__(self, sigma: Mapping[str, Term]):
        self.sigma = sigma
        self.dom = frozenset(sigma)
        self.n = len(sigma)
        self.step = {y: _capped(mvars(t)) for y, t in sigma.items()}
        self._cache = {0: {y: {y: 1} for y in self.dom}}

    def _next(self, counts: dict) -> dict:
        out: dict = {}
        for w, k in counts.items():
            sub = self.step.get(w)
            if sub is None:
                out[w] = min(2, out.get(w, 0) + k)
                continue
            for z, j in sub.items():
                out[z] = min(2, out.get(z, 0) + k * j)
        return out

    def at(self, i: int) -> dict:
        """Map from each domain variable ``y`` to its counts in ``y sigma^i``."""
        cache = self._cache
        if i not in cache:
            prev = self.at(i - 1)
            cache[i] = {y: self._next(c) for y, c in prev.items()}
        return cache[i]


@dataclass(frozen=True)
class ConcreteProfile:
    """Everything the abstraction needs to know about one substitution.

    ``occ_map`` and the three variable sets are computed over
    ``vars(sigma)`` plus the extra variables requested; every other variable
    is mapped to itself and behaves uniformly.
    """

    occ_map: dict
    ssets: SharingSet
    gvars: frozenset
    fvars: frozenset
    lvars: frozenset


def _universe(sigma: Mapping[str, Term], extra: Iterable[str]) -> frozenset:
    vs = set(sigma)
    for t in sigma.values():
        vs |= t.vars
    vs.update(extra)
    return frozenset(vs)


def occ(sigma: Mapping[str, Term], v: str) -> frozenset:
    """Variables ``y`` such that ``v`` is a non-domain variable of ``y sigma^n``."""
    if v in sigma:
        return frozenset()
    reach = _Powers(sigma).at(len(sigma))
    return frozenset([v] + [y for y, c in reach.items() if v in c])


def ssets(sigma: Mapping[str, Term], ctx: AnalysisContext | Iterable[str]) -> SharingSet:
    vi = ctx.vi if isinstance(ctx, AnalysisContext) else frozenset(ctx)
    return profile(sigma, vi).ssets


def gvars(sigma: Mapping[str, Term]) -> frozenset:
    """Domain variables bound to ground (possibly infinite) trees."""
    dom = sigma.keys()
    reach = _Powers(sigma).at(len(sigma))
    return frozenset(y for y, c in reach.items() if all(z in dom for z in c))


def _free_chain(sigma: Mapping[str, Term], y: str) -> bool:
    t = sigma.get(y)
    while t is not None:
        if not isinstance(t, Var):
            return False
        t = sigma.get(t.name)
    return True


def fvars(sigma: Mapping[str, Term], within: Iterable[str] = ()) -> frozenset:
    """Free variables among ``vars(sigma)`` and ``within``.

    ``y sigma^n`` is a variable exactly when the chain of variable-to-variable
    bindings starting at ``y`` ends outside the domain.
    """
    return frozenset(y for y in _universe(sigma, within) if _free_chain(sigma, y))


def lvars(sigma: Mapping[str, Term], within: Iterable[str] = ()) -> frozenset:
    """Linear variables among ``vars(sigma)`` and ``within``."""
    return profile(sigma, within).lvars


def profile(sigma: Mapping[str, Term], vi: Iterable[str] = ()) -> ConcreteProfile:
    vi = frozenset(vi)
    powers = _Powers(sigma)
    dom = powers.dom
    n = powers.n
    reach = powers.at(n)
    doubled = powers.at(2 * n)
    universe = _universe(sigma, vi)

    occ_map = {v: {v} for v in universe if v not in dom}
    for v in dom:
        occ_map[v] = set()
    for y, c in reach.items():
        for z in c:
            if z not in dom:
                occ_map[z].add(y)
    occ_map = {v: frozenset(ys) for v, ys in occ_map.items()}

    groups = {ys & vi for ys in occ_map.values()}
    groups.discard(frozenset())

    ground = frozenset(y for y, c in reach.items() if all(z in dom for z in c))
    free = frozenset(y for y in universe if _free_chain(sigma, y))
    linear = set(universe - dom)
    for y, c in reach.items():
        twice = doubled[y]
        if all(twice.get(z) == 1 for z in c if z not in dom):
            linear.add(y)
    return ConcreteProfile(occ_map, frozenset(groups), ground, free, frozenset(linear))


def check_satisfiable(sigma: Mapping[str, Term], theory: Theory) -> None:
    if Theory(theory) is Theory.FT and has_infinite_tree(sigma):
        raise UnsatisfiableSubstitution("substitution has no finite-tree solution")


def alpha_sfl(sigma: Mapping[str, Term], ctx: AnalysisContext):
    """Abstract a single substitution into the sharing/freeness/linearity domain."""
    from .sfl import SflElement

    check_satisfiable(sigma, ctx.theory)
    p = profile(sigma, ctx.vi)
    return SflElement(ctx.vi, p.ssets, p.fvars & ctx.vi, p.lvars & ctx.vi)


def gamma_member(d, sigma: Mapping[str, Term], ctx: AnalysisContext) -> bool:
    """True iff ``sigma`` is described by the abstract element ``d``."""
    if d.is_bottom:
        return False
    p = profile(sigma, ctx.vi)
    return p.ssets <= d.sh and d.f <= p.fvars and d.l <= p.lvars
