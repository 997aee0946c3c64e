"""Concrete unification over finite or rational trees.

Solutions are relevant substitutions in rational solved form.  The solver
keeps a solved-form state and processes equations Martelli-Montanari style:
variables are dereferenced along variable-to-variable chains only, so no
term is ever substituted into and no fresh variable is introduced.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .errors import UnsatisfiableInput
from .terms import Binding, Substitution, Term, Theory, Var, apply

Equation = tuple[Term, Term]


def _find(state: dict, name: str) -> str:
    t = state.get(name)
    while isinstance(t, Var):
        name = t.name
        t = state.get(name)
    return name


def _merge(state: dict, equations: Iterable[Equation]) -> bool:
    stack = list(equations)
    stack.reverse()
    seen = set()
    while stack:
        s, t = stack.pop()
        a = _find(state, s.name) if isinstance(s, Var) else None
        b = _find(state, t.name) if isinstance(t, Var) else None
        if a is not None and b is not None:
            if a == b:
                continue
            ta, tb = state.get(a), state.get(b)
            lo, hi = sorted((a, b))
            if ta is None or tb is None:
                # the unbound one is eliminated in favour of the other
                if ta is None and tb is None:
                    state[lo] = Var(hi)
                elif ta is None:
                    state[a] = Var(b)
                else:
                    state[b] = Var(a)
                continue
            t_lo, t_hi = state[lo], state[hi]
            state[lo] = Var(hi)
            stack.append((t_lo, t_hi))
            continue
        if a is not None or b is not None:
            v, u = (a, t) if a is not None else (b, s)
            tv = state.get(v)
            if tv is None:
                state[v] = u
            else:
                stack.append((tv, u))
            continue
        if s.name != t.name or len(s.args) != len(t.args):
            return False
        if s == t or (s, t) in seen:
            continue
        # decomposing the same pair twice adds no new constraint
        seen.add((s, t))
        stack.extend(reversed(list(zip(s.args, t.args))))
    return True


def has_infinite_tree(sigma: Mapping[str, Term]) -> bool:
    """True iff some variable is bound to an infinite rational tree.

    Equivalent to a cycle in the domain-variable dependency graph, since
    rational solved form excludes pure variable cycles.
    """
    state: dict[str, int] = {}

    def visit(x):
        state[x] = 1
        for y in sigma[x].vars:
            if y in sigma:
                mark = state.get(y)
                if mark == 1 or (mark is None and visit(y)):
                    return True
        state[x] = 2
        return False

    return any(state.get(x) is None and visit(x) for x in sigma)


def extend(
    sigma: Mapping[str, Term],
    equations: Iterable[Equation],
    theory: Theory = Theory.RT,
) -> Substitution | None:
    """Solve ``sigma`` (already in rational solved form) plus ``equations``.

    Returns ``None`` when there is no solution in ``theory``.
    """
    state = dict(sigma)
    if not _merge(state, equations):
        return None
    if Theory(theory) is Theory.FT and has_infinite_tree(state):
        return None
    return Substitution(state, check=False)


def solve(equations: Iterable[Equation], theory: Theory = Theory.RT) -> Substitution | None:
    """A relevant most general solution of ``equations``, or ``None``."""
    return extend({}, equations, theory)


def as_equations(sigma: Mapping[str, Term] | Iterable[Binding]) -> list[Equation]:
    if isinstance(sigma, Mapping):
        return [(Var(x), sigma[x]) for x in sorted(sigma)]
    return [(Var(b.lhs), b.rhs) for b in sigma]


def entails(sigma: Mapping[str, Term], s: Term, t: Term) -> bool:
    """True iff ``s = t`` holds in every model of ``sigma``.

    Decided by a bisimulation between the rational trees that ``sigma``
    assigns to ``s`` and ``t``; parameters (non-domain variables) are
    equal only to themselves.
    """
    assumed = set()
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        while isinstance(a, Var) and a.name in sigma:
            a = sigma[a.name]
        while isinstance(b, Var) and b.name in sigma:
            b = sigma[b.name]
        if isinstance(a, Var) or isinstance(b, Var):
            if a != b:
                return False
            continue
        if a.name != b.name or len(a.args) != len(b.args):
            return False
        if a == b or (a, b) in assumed:
            continue
        assumed.add((a, b))
        stack.extend(zip(a.args, b.args))
    return True


def equivalent(
    sigma: Mapping[str, Term],
    tau: Mapping[str, Term],
    theory: Theory = Theory.RT,
) -> bool:
    """True iff ``sigma`` and ``tau`` are equivalent equation systems."""
    if Theory(theory) is Theory.FT and (has_infinite_tree(sigma) or has_infinite_tree(tau)):
        raise UnsatisfiableInput("substitution is not satisfiable over finite trees")
    return all(entails(tau, Var(x), sigma[x]) for x in sigma) and all(
        entails(sigma, Var(x), tau[x]) for x in tau
    )


def finite_closure(sigma: Mapping[str, Term], t: Term) -> Term:
    """``t sigma^k`` at its fixpoint; only defined without infinite trees."""
    if has_infinite_tree(sigma):
        raise ValueError("substitution binds an infinite tree")
    while not t.vars.isdisjoint(sigma.keys()):
        t = apply(sigma, t)
    return t
