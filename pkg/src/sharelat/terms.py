"""Finite terms, bindings and substitutions in rational solved form.

Variables are identified by their lowercase name (``"x1"``) and printed with
a leading capital (``X1``), so the textual syntax stays Prolog-like while
sets of variables sort lexicographically on the name.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from .errors import CircularComposition, NotAFunction, ParseError


class Theory(str, enum.Enum):
    """Equality theory: finite trees (occurs-check) or rational trees."""

    FT = "ft"
    RT = "rt"


class Var:
    __slots__ = ("name", "vars", "_hash")

    def __init__(self, name: str):
        self.name = name
        self.vars = frozenset((name,))
        self._hash = hash(("V", name))

    size = 1
    depth = 0

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __lt__(self, other):
        return self.name < other.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return format_term(self)


class Fun:
    """Application of a functor to arguments; constants have no arguments.

    ``vars``, ``size`` and ``depth`` are computed once at construction.
    """

    __slots__ = ("name", "args", "vars", "size", "depth", "_hash")

    def __init__(self, name: str, args: Iterable[Term] = ()):
        self.name = name
        self.args = tuple(args)
        vs = frozenset()
        for a in self.args:
            vs = vs | a.vars
        self.vars = vs
        self.size = 1 + sum(a.size for a in self.args)
        self.depth = 1 + max((a.depth for a in self.args), default=-1)
        self._hash = hash((name, self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    def __eq__(self, other):
        return (
            isinstance(other, Fun)
            and self._hash == other._hash
            and self.name == other.name
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Fun({self.name!r}, {list(self.args)!r})"

    def __str__(self):
        return format_term(self)


Term = Var | Fun


def mvars(t: Term) -> Counter:
    """Multiset of the variables occurring in ``t``."""
    counts: Counter = Counter()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            counts[s.name] += 1
        else:
            stack.extend(s.args)
    return counts


def occ_lin(y: str, t: Term) -> bool:
    """True iff ``y`` occurs exactly once in ``t``."""
    return mvars(t)[y] == 1


def is_ground(t: Term) -> bool:
    return not t.vars


def is_linear(t: Term) -> bool:
    return all(n == 1 for n in mvars(t).values())


# -- bindings and substitutions ---------------------------------------------


@dataclass(frozen=True)
class Binding:
    lhs: str
    rhs: Term

    def __post_init__(self):
        if isinstance(self.rhs, Var) and self.rhs.name == self.lhs:
            raise ValueError(f"{self.lhs} -> {self.lhs} is not a binding")

    @property
    def vars(self) -> frozenset:
        return self.rhs.vars | {self.lhs}

    def __str__(self):
        return f"{format_var(self.lhs)} -> {format_term(self.rhs)}"


def _circular(bindings: Mapping[str, Term]) -> bool:
    # cycle detection on the variable-to-variable sub-map; out-degree is 1
    state: dict[str, int] = {}
    for start in bindings:
        path = []
        v = start
        while True:
            mark = state.get(v)
            if mark == 2:
                break
            if mark == 1:
                return True
            t = bindings.get(v)
            if not isinstance(t, Var):
                break
            state[v] = 1
            path.append(v)
            v = t.name
        for p in path:
            state[p] = 2
    return False


def is_rsubst(bindings: Iterable[Binding] | Mapping[str, Term]) -> bool:
    """True iff the bindings contain no circular variable-to-variable subset.

    Raises :class:`NotAFunction` when two bindings share a left-hand side.
    """
    if isinstance(bindings, Mapping):
        return not _circular(bindings)
    seen: dict[str, Term] = {}
    for b in bindings:
        if b.lhs in seen:
            raise NotAFunction(f"variable {b.lhs} is bound twice")
        seen[b.lhs] = b.rhs
    return not _circular(seen)


class Substitution(Mapping):
    """Immutable finite map from variable names to terms.

    Bindings ``x -> x`` are rejected, and so are circular variable chains
    unless ``check=False`` is passed.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings=(), check: bool = True):
        if isinstance(bindings, Mapping):
            items = dict(bindings)
        else:
            items = {}
            for b in bindings:
                lhs, rhs = (b.lhs, b.rhs) if isinstance(b, Binding) else b
                if lhs in items:
                    raise NotAFunction(f"variable {lhs} is bound twice")
                items[lhs] = rhs
        for x, t in items.items():
            if isinstance(t, Var) and t.name == x:
                raise ValueError(f"{x} -> {x} is not a binding")
        if check and _circular(items):
            raise ValueError("substitution has a circular subset")
        self._map = items
        self._hash = None

    def __getitem__(self, key):
        return self._map[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        return NotImplemented

    def __repr__(self):
        return f"Substitution({format_substitution(self)})"

    def __str__(self):
        return format_substitution(self)

    @property
    def dom(self) -> frozenset:
        return frozenset(self._map)

    @property
    def vars(self) -> frozenset:
        vs = set(self._map)
        for t in self._map.values():
            vs |= t.vars
        return frozenset(vs)

    def bindings(self) -> list[Binding]:
        return [Binding(x, self._map[x]) for x in sorted(self._map)]


def apply(sigma: Mapping[str, Term], t: Term) -> Term:
    """Simultaneous application ``t sigma``."""
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args or t.vars.isdisjoint(sigma.keys()):
        return t
    return Fun(t.name, [apply(sigma, a) for a in t.args])


def apply_power(sigma: Mapping[str, Term], t: Term, i: int) -> Term:
    """``t sigma^i``; ``i = 0`` is the identity."""
    if i < 0:
        raise ValueError("power must be non-negative")
    dom = sigma.keys()
    for _ in range(i):
        if t.vars.isdisjoint(dom):
            break
        t = apply(sigma, t)
    return t


def compose(tau: Mapping[str, Term], sigma: Mapping[str, Term]) -> Substitution:
    """``tau o sigma``, the substitution with ``t (tau o sigma) = t sigma tau``."""
    out = {}
    for x in sorted(set(sigma) | set(tau)):
        t = apply(tau, apply(sigma, Var(x)))
        if t != Var(x):
            out[x] = t
    if _circular(out):
        raise CircularComposition("composition is not in rational solved form")
    return Substitution(out, check=False)


# -- text syntax --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<var>[A-Z_][A-Za-z0-9_]*)|(?P<atom>[a-z][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<punct>[(),{}=]))"
)


def format_var(name: str) -> str:
    return name[:1].upper() + name[1:]


def var_name(token: str) -> str:
    """Internal name of a variable token: ``X1`` -> ``x1``."""
    return token.lower()


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return format_var(t.name)
    if not t.args:
        return t.name
    return f"{t.name}({', '.join(format_term(a) for a in t.args)})"


def format_substitution(sigma: Mapping[str, Term]) -> str:
    body = ", ".join(f"{format_var(x)} -> {format_term(sigma[x])}" for x in sorted(sigma))
    return "{" + body + "}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                start = len(text[pos:]) - len(text[pos:].lstrip()) + pos
                raise ParseError(f"unexpected character {text[start]!r}", text, start)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value or kind == "eof":
            found = "end of input" if kind == "eof" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", self.text, pos)

    def at_end(self):
        return self.peek()[0] == "eof"

    def finish(self):
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r} after end of input", self.text, pos)

    def term(self) -> Term:
        kind, val, pos = self.next()
        if kind == "var":
            return Var(var_name(val))
        if kind != "atom":
            found = "end of input" if kind == "eof" else repr(val)
            raise ParseError(f"expected a term, found {found}", self.text, pos)
        if self.peek()[1] != "(":
            return Fun(val)
        self.next()
        args = [self.term()]
        while self.peek()[1] == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return Fun(val, args)

    def variable(self) -> str:
        kind, val, pos = self.next()
        if kind != "var":
            raise ParseError(f"expected a variable, found {val!r}", self.text, pos)
        return var_name(val)

    def binding(self) -> Binding:
        kind, val, pos = self.peek()
        x = self.variable()
        self.expect("->")
        t = self.term()
        if isinstance(t, Var) and t.name == x:
            raise ParseError(f"{val} -> {val} is not a binding", self.text, pos)
        return Binding(x, t)

    def substitution(self) -> Substitution:
        self.expect("{")
        bindings = []
        if self.peek()[1] != "}":
            bindings.append(self.binding())
            while self.peek()[1] == ",":
                self.next()
                bindings.append(self.binding())
        self.expect("}")
        return Substitution(bindings, check=False)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def parse_binding(text: str) -> Binding:
    p = _Parser(text)
    b = p.binding()
    p.finish()
    return b


def parse_equation(text: str) -> tuple[Term, Term]:
    p = _Parser(text)
    lhs = p.term()
    p.expect("=")
    rhs = p.term()
    p.finish()
    return lhs, rhs


def parse_substitution(text: str, check: bool = True) -> Substitution:
    """Parse ``{X -> f(Y), Y -> a}``.

    With ``check`` the result must be in rational solved form.
    """
    p = _Parser(text)
    sigma = p.substitution()
    p.finish()
    if check and _circular(sigma):
        raise ParseError("substitution has a circular subset", text, 0)
    return sigma


def var(name: str) -> Var:
    return Var(name)


def fun(name: str, *args: Term) -> Fun:
    return Fun(name, args)


@dataclass(frozen=True)
class AnalysisContext:
    """Variables of interest plus the equality theory used by the analysis."""

    vi: frozenset
    theory: Theory = Theory.RT

    def __post_init__(self):
        object.__setattr__(self, "vi", frozenset(self.vi))
        object.__setattr__(self, "theory", Theory(self.theory))

    @property
    def ordered(self) -> list[str]:
        return sorted(self.vi)
