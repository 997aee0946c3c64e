"""Deterministic enumeration of terms, bindings, substitutions and elements.

Everything here is ordered so that two runs produce the same stream.  The
signature used throughout is ``a/0, f/1, g/2``.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence
from functools import lru_cache

from .errors import CapExceeded
from .sfl import SflElement
from .solver import has_infinite_tree
from .terms import Binding, Fun, Substitution, Term, Theory, Var, is_rsubst

NAMES = ("x", "y", "z", "w", "u", "v", "s", "t")


def var_names(k: int) -> tuple[str, ...]:
    if k <= len(NAMES):
        return NAMES[:k]
    return tuple(f"x{i}" for i in range(1, k + 1))


def _term_key(t: Term):
    if isinstance(t, Var):
        return (0, t.name)
    return (1, t.name, tuple(_term_key(a) for a in t.args))


@lru_cache(maxsize=None)
def terms(names: tuple[str, ...], depth: int) -> tuple[Term, ...]:
    """All terms over ``names`` and ``a/0, f/1, g/2`` of depth at most ``depth``."""
    if depth < 0:
        return ()
    level = [Var(n) for n in names] + [Fun("a")]
    if depth > 0:
        below = terms(names, depth - 1)
        level += [Fun("f", (s,)) for s in below]
        level += [Fun("g", (s, u)) for s in below for u in below]
    seen = set()
    out = []
    for t in level:
        if t not in seen:
            seen.add(t)
            out.append(t)
    out.sort(key=lambda t: (t.size, _term_key(t)))
    return tuple(out)


@lru_cache(maxsize=None)
def bindings_by_weight(names: tuple[str, ...], depth: int) -> dict:
    """Bindings grouped by weight ``1 + size(rhs)``."""
    out: dict[int, list[Binding]] = {}
    for x in names:
        for t in terms(names, depth):
            if isinstance(t, Var) and t.name == x:
                continue
            out.setdefault(1 + t.size, []).append(Binding(x, t))
    return {w: tuple(bs) for w, bs in sorted(out.items())}


def binding_weight(b: Binding) -> int:
    return 1 + b.rhs.size


def count_substitutions(names: Sequence[str], depth: int) -> int:
    """Exact number of substitutions in rational solved form over ``names``."""
    ts = terms(tuple(names), depth)
    nonvar = sum(1 for t in ts if not isinstance(t, Var))
    total = 0
    choices = [None, "t"] + list(names)
    for pattern in itertools.product(choices, repeat=len(names)):
        if any(p == x for p, x in zip(pattern, names)):
            continue
        links = {x: Var(p) for x, p in zip(names, pattern) if p not in (None, "t")}
        if not is_rsubst(links):
            continue
        total += nonvar ** sum(1 for p in pattern if p == "t")
    return total


def enumerate_substitutions(
    names: Sequence[str], depth: int, cap: int = 1_000_000
) -> Iterator[Substitution]:
    """Every substitution in rational solved form over ``names`` up to ``depth``.

    Raises :class:`CapExceeded` before producing anything when the stream
    would be longer than ``cap``.
    """
    names = tuple(names)
    n = count_substitutions(names, depth)
    if n > cap:
        raise CapExceeded(n, cap)
    ts = terms(names, depth)
    options = [[None] + [t for t in ts if t != Var(x)] for x in names]
    for combo in itertools.product(*options):
        mapping = {x: t for x, t in zip(names, combo) if t is not None}
        if is_rsubst(mapping):
            yield Substitution(mapping, check=False)


# -- weight-ordered enumeration -------------------------------------------------


def substitutions_of_weight(
    names: tuple[str, ...], depth: int, weight: int
) -> Iterator[Substitution]:
    """Substitutions whose bindings have total weight exactly ``weight``."""
    by_w = bindings_by_weight(names, depth)

    def go(i: int, left: int, acc: dict):
        if i == len(names):
            if left == 0:
                yield dict(acc)
            return
        yield from go(i + 1, left, acc)
        x = names[i]
        for w, bs in by_w.items():
            if w > left:
                break
            for b in bs:
                if b.lhs != x:
                    continue
                acc[x] = b.rhs
                yield from go(i + 1, left - w, acc)
                del acc[x]

    for mapping in go(0, weight, {}):
        if is_rsubst(mapping):
            yield Substitution(mapping, check=False)


def rename(sigma, perm: dict) -> Substitution:
    from .terms import apply

    ren = {x: Var(y) for x, y in perm.items()}
    return Substitution({perm[x]: apply(ren, t) for x, t in sigma.items()}, check=False)


def _sigma_key(sigma) -> tuple:
    return tuple((x, _term_key(sigma[x])) for x in sorted(sigma))


def is_canonical(sigma, names: tuple[str, ...]) -> bool:
    """True iff ``sigma`` is the least member of its orbit under renamings of ``names``."""
    key = _sigma_key(sigma)
    for p in itertools.permutations(names):
        perm = dict(zip(names, p))
        if _sigma_key(rename(sigma, perm)) < key:
            return False
    return True


def sigmas_of_weight(names, depth, weight, theory: Theory, symmetric: bool = True):
    for sigma in substitutions_of_weight(names, depth, weight):
        if Theory(theory) is Theory.FT and has_infinite_tree(sigma):
            continue
        if symmetric and not is_canonical(sigma, names):
            continue
        yield sigma


# -- abstract elements ----------------------------------------------------------


def all_groups(names: Sequence[str]) -> list[frozenset]:
    out = []
    for k in range(1, len(names) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(names, k))
    return out


def all_sharing_sets(names: Sequence[str]) -> list[frozenset]:
    groups = all_groups(names)
    out = []
    for mask in range(1 << len(groups)):
        out.append(frozenset(g for i, g in enumerate(groups) if mask >> i & 1))
    return out


def all_subsets(names: Sequence[str]) -> list[frozenset]:
    return [frozenset()] + all_groups(names)


def all_elements(names: Sequence[str]) -> list[SflElement]:
    """Every element ``(sh, f, l)`` over ``names``; bottom appears once."""
    vi = frozenset(names)
    out = []
    subsets = all_subsets(names)
    for sh in all_sharing_sets(names):
        for f in subsets:
            for l in subsets:  # noqa: E741
                out.append(SflElement(vi, sh, f, l))
    return out


def _chain(vs: Sequence[str]) -> Term:
    if len(vs) == 1:
        return Var(vs[0])
    return Fun("g", (Var(vs[0]), _chain(vs[1:])))


def binding_pool(names: Sequence[str]) -> list[Binding]:
    """Bindings covering every abstract shape of a right-hand side.

    The abstract operators only look at which variables occur in ``t``,
    whether each occurs once or more, and whether ``t`` is a variable, so one
    representative per shape is enough.
    """
    names = tuple(names)
    pool = []
    for x in names:
        for y in names:
            if y != x:
                pool.append(Binding(x, Var(y)))
        pool.append(Binding(x, Fun("a")))
        for vs in all_groups(names):
            vs = sorted(vs)
            for twice in itertools.product((False, True), repeat=len(vs)):
                occ = []
                for v, tw in zip(vs, twice):
                    occ += [v, v] if tw else [v]
                t = Fun("f", (Var(occ[0]),)) if len(occ) == 1 else _chain(occ)
                pool.append(Binding(x, t))
    return pool


def random_term(rng: random.Random, names: Sequence[str], depth: int) -> Term:
    if depth == 0 or rng.random() < 0.35:
        if rng.random() < 0.8:
            return Var(rng.choice(names))
        return Fun("a")
    if rng.random() < 0.4:
        return Fun("f", (random_term(rng, names, depth - 1),))
    return Fun("g", (random_term(rng, names, depth - 1), random_term(rng, names, depth - 1)))


def random_binding(rng: random.Random, names: Sequence[str], depth: int) -> Binding:
    while True:
        x = rng.choice(names)
        t = random_term(rng, names, depth)
        if t != Var(x):
            return Binding(x, t)


def random_substitution(rng: random.Random, names: Sequence[str], depth: int) -> Substitution:
    while True:
        mapping = {}
        for x in names:
            if rng.random() < 0.5:
                t = random_term(rng, names, depth)
                if t != Var(x):
                    mapping[x] = t
        if is_rsubst(mapping):
            return Substitution(mapping, check=False)
