"""Set-sharing combined with freeness and linearity.

An element is a triple ``(sh, f, l)`` over a fixed set ``vi`` of variables of
interest: possible sharing groups, definitely free variables and definitely
linear variables.  The least element is the triple ``(∅, vi, vi)``, which
describes no substitution at all, so it doubles as the canonical bottom.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from . import sharing as S
from .errors import BottomQuery, ContextMismatch, OutOfContext
from .terms import AnalysisContext, Binding, Term, Theory, Var, occ_lin


class Variant(str, enum.Enum):
    """Which abstract unification operator to use."""

    CLASSIC = "classic"
    ENHANCED = "enhanced"
    SFL2 = "sfl2"


class Observable(str, enum.Enum):
    CON = "con"
    PS = "ps"
    F = "f"
    L = "l"
    PSD = "psd"


class _AllGroups:
    """Stands for the set of every non-empty subset of ``vi``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_GROUPS"

    def __reduce__(self):
        return (_AllGroups, ())


ALL_GROUPS = _AllGroups()


@dataclass(frozen=True)
class SflElement:
    vi: frozenset
    sh: frozenset
    f: frozenset
    l: frozenset  # noqa: E741

    @classmethod
    def bottom(cls, vi: Iterable[str]) -> SflElement:
        vi = frozenset(vi)
        return cls(vi, frozenset(), vi, vi)

    @classmethod
    def of(cls, vi, sh, f, l) -> SflElement:  # noqa: E741
        """Validating constructor for user-supplied components."""
        vi = frozenset(vi)
        sh = S.make(sh)
        f, l = frozenset(f), frozenset(l)  # noqa: E741
        stray = (S.vars_of(sh) | f | l) - vi
        if stray:
            raise OutOfContext(f"variables {sorted(stray)} are not in vi")
        return cls(vi, sh, f, l)

    @property
    def is_bottom(self) -> bool:
        return not self.sh and self.f == self.vi and self.l == self.vi

    def __str__(self):
        if self.is_bottom:
            return "bottom"
        sh = "ALL" if self.sh is ALL_GROUPS else S.format_sharing(self.sh)
        return f"<{sh}, {{{' '.join(sorted(self.f))}}}, {{{' '.join(sorted(self.l))}}}>"


def _same_vi(d1: SflElement, d2: SflElement) -> None:
    if d1.vi != d2.vi:
        raise ContextMismatch("elements are over different variables of interest")


def _sh_leq(sh1, sh2, vi) -> bool:
    if sh2 is ALL_GROUPS:
        return True
    if sh1 is ALL_GROUPS:
        return len(sh2) == 2 ** len(vi) - 1
    return sh1 <= sh2


def leq(d1: SflElement, d2: SflElement) -> bool:
    _same_vi(d1, d2)
    return _sh_leq(d1.sh, d2.sh, d1.vi) and d1.f >= d2.f and d1.l >= d2.l


def lub(d1: SflElement, d2: SflElement) -> SflElement:
    _same_vi(d1, d2)
    if ALL_GROUPS in (d1.sh, d2.sh):
        sh = ALL_GROUPS
    else:
        sh = d1.sh | d2.sh
    return SflElement(d1.vi, sh, d1.f & d2.f, d1.l & d2.l)


# -- predicates ----------------------------------------------------------------


def _require(d: SflElement, *terms: Term) -> None:
    if d.is_bottom:
        raise BottomQuery("predicate queried on bottom")
    for t in terms:
        if not t.vars <= d.vi:
            raise OutOfContext(f"variables {sorted(t.vars - d.vi)} are not in vi")


def _as_term(t) -> Term:
    return Var(t) if isinstance(t, str) else t


def _ind(sh, vs, ws) -> bool:
    return S.rel(vs, sh).isdisjoint(S.rel(ws, sh))


def _ground(sh, vs) -> bool:
    return not S.rel(vs, sh)


def _occ_lin(d: SflElement, y: str, t: Term) -> bool:
    if _ground(d.sh, (y,)):
        return True
    if y not in d.l or not occ_lin(y, t):
        return False
    return all(_ind(d.sh, (y,), (z,)) for z in t.vars if z != y)


def _lin(d: SflElement, t: Term) -> bool:
    return all(_occ_lin(d, y, t) for y in t.vars)


def _free(d: SflElement, t: Term) -> bool:
    return isinstance(t, Var) and t.name in d.f


def pred_ind(d: SflElement, s, t) -> bool:
    s, t = _as_term(s), _as_term(t)
    _require(d, s, t)
    return _ind(d.sh, s.vars, t.vars)


def pred_ground(d: SflElement, t) -> bool:
    t = _as_term(t)
    _require(d, t)
    return _ground(d.sh, t.vars)


def pred_occ_lin(d: SflElement, y: str, t) -> bool:
    t = _as_term(t)
    _require(d, t)
    return _occ_lin(d, y, t)


def pred_free(d: SflElement, t) -> bool:
    t = _as_term(t)
    _require(d, t)
    return _free(d, t)


def pred_lin(d: SflElement, t) -> bool:
    t = _as_term(t)
    _require(d, t)
    return _lin(d, t)


def share_with(d: SflElement, t) -> frozenset:
    t = _as_term(t)
    _require(d, t)
    return S.vars_of(S.rel(t.vars, d.sh))


def cyclic(x: str, t: Term, sh: S.SharingSet) -> S.SharingSet:
    """Drop groups where ``x`` can only occur inside the cyclic term ``t``."""
    others = t.vars - {x}
    return S.nrel(t.vars | {x}, sh) | S.rel(others, sh)


# -- abstract unification ------------------------------------------------------


def sharing_case(d: SflElement, x: str, t: Term, variant: Variant = Variant.ENHANCED) -> int:
    """Which of the five sharing cases (1..5) a binding falls in.

    1 free, 2 both linear, 3 ``x`` linear, 4 ``t`` linear, 5 otherwise.  The
    classic operator only takes cases 2 to 4 when ``x`` and ``t`` are
    independent.
    """
    vx = Var(x)
    if _free(d, vx) or _free(d, t):
        return 1
    lx, lt = _lin(d, vx), _lin(d, t)
    if Variant(variant) is Variant.CLASSIC and (lx or lt) and not _ind(d.sh, (x,), t.vars):
        return 5
    if lx and lt:
        return 2
    if lx:
        return 3
    if lt:
        return 4
    return 5


def _pieces(sh, x: str, t: Term):
    xt = t.vars | {x}
    sh_x = S.rel((x,), sh)
    sh_t = S.rel(t.vars, sh)
    return sh_x, sh_t, sh_x & sh_t, S.nrel(xt, sh)


def sharing_enhanced(sh, x: str, t: Term, case: int) -> S.SharingSet:
    sh_x, sh_t, sh_xt, sh_minus = _pieces(sh, x, t)
    if case == 1:
        new = S.bin(sh_x, sh_t)
    elif case == 2:
        xt_star = S.star(sh_xt)
        new = S.bin(sh_x | S.bin(sh_x, xt_star), sh_t | S.bin(sh_t, xt_star))
    elif case == 3:
        new = S.bin(S.star(sh_x), sh_t)
    elif case == 4:
        new = S.bin(sh_x, S.star(sh_t))
    else:
        new = S.bin(S.star(sh_x), S.star(sh_t))
    return cyclic(x, t, sh_minus | new)


def sharing_classic(sh, x: str, t: Term, case: int) -> S.SharingSet:
    sh_x, sh_t, _, sh_minus = _pieces(sh, x, t)
    if case in (1, 2):
        new = S.bin(sh_x, sh_t)
    elif case == 3:
        new = S.bin(S.star(sh_x), sh_t)
    elif case == 4:
        new = S.bin(sh_x, S.star(sh_t))
    else:
        new = S.bin(S.star(sh_x), S.star(sh_t))
    return sh_minus | new


def amgu_sfl2_sharing(sh, b: Binding, case: int) -> S.SharingSet:
    """Sharing component for the non-redundant domain.

    Only equal to the enhanced operator's result up to pair-sharing
    dependency closure: star-unions become self-bin-unions and in the
    both-linear case the inner bin-unions are skipped.
    """
    x, t = b.lhs, b.rhs
    sh_x, sh_t, _, sh_minus = _pieces(sh, x, t)
    if case == 2:
        if x not in t.vars:
            return sh_minus | S.bin(sh_x, sh_t)
        return sh_minus | S.bin(S.self_bin(sh_x), S.rel(t.vars - {x}, sh))
    if case == 1:
        new = S.bin(sh_x, sh_t)
    elif case == 3:
        new = S.bin(S.self_bin(sh_x), sh_t)
    elif case == 4:
        new = S.bin(sh_x, S.self_bin(sh_t))
    else:
        new = S.bin(S.self_bin(sh_x), S.self_bin(sh_t))
    return cyclic(x, t, sh_minus | new)


def _theory(ctx) -> Theory:
    if isinstance(ctx, AnalysisContext):
        return ctx.theory
    return Theory(ctx)


def amgu(
    d: SflElement,
    b: Binding,
    ctx: AnalysisContext | Theory = Theory.RT,
    variant: Variant = Variant.ENHANCED,
) -> SflElement:
    """Abstract effect of the binding ``b`` on ``d``."""
    if isinstance(ctx, AnalysisContext) and ctx.vi != d.vi:
        raise ContextMismatch("element and context disagree on vi")
    x, t = b.lhs, b.rhs
    if x not in d.vi or not t.vars <= d.vi:
        raise OutOfContext(f"binding {b} mentions variables outside vi")
    if d.is_bottom or (_theory(ctx) is Theory.FT and x in t.vars):
        return SflElement.bottom(d.vi)
    variant = Variant(variant)
    vx = Var(x)
    case = sharing_case(d, x, t, variant)
    if variant is Variant.ENHANCED:
        sh = sharing_enhanced(d.sh, x, t, case)
    elif variant is Variant.CLASSIC:
        sh = sharing_classic(d.sh, x, t, case)
    else:
        sh = amgu_sfl2_sharing(d.sh, b, case)

    sx = S.vars_of(S.rel((x,), d.sh))
    st = S.vars_of(S.rel(t.vars, d.sh))
    free_x, free_t = _free(d, vx), _free(d, t)
    if free_x and free_t:
        f = d.f
    elif free_x:
        f = d.f - sx
    elif free_t:
        f = d.f - st
    else:
        f = d.f - (sx | st)
    lin_x, lin_t = _lin(d, vx), _lin(d, t)
    if lin_x and lin_t:
        l2 = d.l - (sx & st)
    elif lin_x:
        l2 = d.l - sx
    elif lin_t:
        l2 = d.l - st
    else:
        l2 = d.l - (sx | st)
    l = (d.vi - S.vars_of(sh)) | f | l2  # noqa: E741
    return SflElement(d.vi, sh, f, l)


def grounding_first(d: SflElement, bs: Sequence[Binding]) -> list[Binding]:
    """Stable reordering that puts bindings known to ground their variables first."""
    from .asub import alpha_asub, chi_binding

    kappa = alpha_asub(d)
    if kappa.bottom:
        return list(bs)
    zero = [b for b in bs if chi_binding(kappa, b) == 0]
    rest = [b for b in bs if chi_binding(kappa, b) != 0]
    return zero + rest


def aunify(
    d: SflElement,
    bs: Sequence[Binding],
    ctx: AnalysisContext | Theory = Theory.RT,
    variant: Variant = Variant.ENHANCED,
    grounding_first_order: bool = False,
) -> SflElement:
    """Fold :func:`amgu` over ``bs`` from the left."""
    if grounding_first_order:
        bs = grounding_first(d, bs)
    for b in bs:
        d = amgu(d, b, ctx, variant)
    return d


def aproj(d: SflElement, vs: Iterable[str]) -> SflElement:
    """Forget everything about the variables in ``vs`` (``vi`` is unchanged)."""
    vs = frozenset(vs)
    if not vs <= d.vi:
        raise OutOfContext(f"variables {sorted(vs - d.vi)} are not in vi")
    if d.is_bottom:
        return d
    return SflElement(d.vi, S.aexists(d.sh, vs), d.f | vs, d.l | vs)


def restrict(d: SflElement, vs: Iterable[str]) -> SflElement:
    """Remove ``vs`` from the variables of interest and from every component."""
    vs = frozenset(vs)
    vi = d.vi - vs
    if d.is_bottom:
        return SflElement.bottom(vi)
    sh = {g - vs for g in d.sh}
    sh.discard(frozenset())
    return SflElement(vi, frozenset(sh), d.f - vs, d.l - vs)


def observables(d: SflElement, which: Observable | str) -> SflElement:
    which = Observable(which)
    if d.is_bottom:
        return d
    empty = frozenset()
    if which is Observable.CON:
        return SflElement(d.vi, S.rho_con(d.sh), empty, empty)
    if which is Observable.PS:
        return SflElement(d.vi, S.rho_ps(d.sh, d.vi), empty, empty)
    if which is Observable.F:
        return SflElement(d.vi, ALL_GROUPS, d.f, empty)
    if which is Observable.L:
        return SflElement(d.vi, ALL_GROUPS, empty, d.l)
    return SflElement(d.vi, S.rho_psd(d.sh), d.f, d.l)


def equiv_psd(d1: SflElement, d2: SflElement) -> bool:
    _same_vi(d1, d2)
    if d1.is_bottom or d2.is_bottom:
        return d1.is_bottom and d2.is_bottom
    return d1.f == d2.f and d1.l == d2.l and S.rho_psd(d1.sh) == S.rho_psd(d2.sh)
