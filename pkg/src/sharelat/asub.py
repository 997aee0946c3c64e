"""Pair-sharing with groundness and non-linearity.

An element is ``(g, r)``: definitely ground variables ``g`` and a relation
``r`` of one- and two-variable groups.  ``{x, y}`` in ``r`` means ``x`` and
``y`` may share; ``{x}`` means ``x`` may be non-linear.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from . import sharing as S
from .errors import BottomQuery, ContextMismatch, OutOfContext
from .terms import Binding, Term, Var, occ_lin


@dataclass(frozen=True)
class AsubElement:
    vi: frozenset
    g: frozenset = frozenset()
    r: frozenset = frozenset()
    bottom: bool = False

    @classmethod
    def bot(cls, vi: Iterable[str]) -> AsubElement:
        return cls(frozenset(vi), bottom=True)

    @classmethod
    def of(cls, vi, g, r) -> AsubElement:
        vi, g = frozenset(vi), frozenset(g)
        r = S.make(r)
        if any(len(p) > 2 for p in r):
            raise ValueError("relation groups have at most two variables")
        if not g.isdisjoint(S.vars_of(r)):
            raise ValueError("ground variables cannot occur in the relation")
        stray = (g | S.vars_of(r)) - vi
        if stray:
            raise OutOfContext(f"variables {sorted(stray)} are not in vi")
        return cls(vi, g, r)

    def __str__(self):
        if self.bottom:
            return "bottom"
        return f"<{{{' '.join(sorted(self.g))}}}, {S.format_sharing(self.r)}>"


def _check(k: AsubElement) -> None:
    if k.bottom:
        raise BottomQuery("operation needs a non-bottom pair-sharing element")


def leq_asub(k1: AsubElement, k2: AsubElement) -> bool:
    if k1.vi != k2.vi:
        raise ContextMismatch("elements are over different variables of interest")
    if k1.bottom:
        return True
    if k2.bottom:
        return False
    return k1.g >= k2.g and k1.r <= k2.r


def alpha_asub(d) -> AsubElement:
    """Pair-sharing abstraction of a sharing/freeness/linearity element."""
    if d.is_bottom:
        return AsubElement.bot(d.vi)
    nonground = S.vars_of(d.sh)
    r = {frozenset((x,)) for x in nonground if x not in d.l}
    for grp in d.sh:
        r.update(frozenset(p) for p in combinations(grp, 2))
    return AsubElement(d.vi, d.vi - nonground, frozenset(r))


def _occ_lin(k: AsubElement, y: str, t: Term) -> bool:
    if y in k.g:
        return True
    return occ_lin(y, t) and all(frozenset((y, z)) not in k.r for z in t.vars)


def chi_term(k: AsubElement, t) -> int:
    """Abstract multiplicity of a term: 0 ground, 1 linear, 2 unknown."""
    _check(k)
    t = Var(t) if isinstance(t, str) else t
    if t.vars <= k.g:
        return 0
    if all(_occ_lin(k, y, t) for y in t.vars):
        return 1
    return 2


def chi_binding(k: AsubElement, b: Binding):
    """``0`` when either side is ground, else the pair of multiplicities."""
    mx, mt = chi_term(k, Var(b.lhs)), chi_term(k, b.rhs)
    if mx == 0 or mt == 0:
        return 0
    return (mx, mt)


def _pairs(vs: Iterable[str], ws: Iterable[str]) -> frozenset:
    return frozenset(frozenset((v, w)) for v in vs for w in ws)


def soln(k: AsubElement, b: Binding) -> AsubElement:
    """Sharing created by solving the binding on its own."""
    if not ({b.lhs} | b.rhs.vars) <= k.vi:
        raise OutOfContext(f"binding {b} mentions variables outside vi")
    m = chi_binding(k, b)
    vx, vt = frozenset((b.lhs,)), b.rhs.vars
    if m == 0:
        return AsubElement(k.vi, vx | vt, frozenset())
    left = vx if m[0] == 1 else vx | vt
    right = vt if m[1] == 1 else vx | vt
    return AsubElement(k.vi, frozenset(), _pairs(left, right))


def compose_asub(k: AsubElement, k2: AsubElement) -> AsubElement:
    """Compose ``k`` with the relation ``k2`` induced by new equations."""
    _check(k)
    _check(k2)
    g = k.g | k2.g
    near: dict[str, set] = {v: {v} for v in k.vi}
    for p in k.r:
        if len(p) == 2:
            u, v = tuple(p)
            near[u].add(v)
            near[v].add(u)
    r = set(k.r)
    for p in k2.r:
        x, y = (tuple(p) * 2)[:2]
        for u in near[x]:
            for v in near[y]:
                r.add(frozenset((u, v)))
    return AsubElement(k.vi, g, frozenset(p for p in r if p.isdisjoint(g)))


def amgu_asub(k: AsubElement, b: Binding) -> AsubElement:
    if k.bottom:
        return k
    return compose_asub(k, soln(k, b))
