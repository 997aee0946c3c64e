"""Scenario files and the analysis driver behind ``sharelat analyze``.

A scenario is a small line-oriented text file::

    # comment
    vi: x, x1, x2, y
    theory: rt
    start: subst {X -> f(X1, X2)}
    bind: X -> f(X, Y)

``start`` may instead be ``sfl sh={{x,x1},{y}} free={x1} lin={x,x1,y}`` or
``bottom``.  Other keys: ``variant``, ``domain`` and ``eq: s = t`` (extra
equations, only used by ``concretize``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import sharing as S
from .asub import AsubElement, alpha_asub, amgu_asub, leq_asub
from .concrete import alpha_sfl
from .errors import ParseError
from .sfl import Observable, SflElement, Variant, amgu, equiv_psd, leq, observables
from .solver import solve
from .terms import (
    AnalysisContext,
    Substitution,
    Term,
    Theory,
    Var,
    format_term,
    parse_binding,
    parse_equation,
    parse_substitution,
    var_name,
)

DOMAINS = ("sh", "sfl", "sfl2", "asub")


@dataclass
class Scenario:
    vi: tuple
    theory: Theory = Theory.RT
    start: Substitution | SflElement | None = None
    bindings: list = field(default_factory=list)
    equations: list = field(default_factory=list)
    variant: Variant = Variant.ENHANCED
    domain: str = "sfl"

    @property
    def ctx(self) -> AnalysisContext:
        return AnalysisContext(self.vi, self.theory)


def _err(msg: str, line: int, col: int = 0) -> ParseError:
    return ParseError(msg, pos=col, line=line)


def _lift(e: ParseError, line: int, offset: int) -> ParseError:
    return ParseError(e.message, e.text, offset + e.pos, line)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _names(text: str, line: int, offset: int) -> list[str]:
    out = []
    pos = offset
    for part in text.split(","):
        name = part.strip()
        if not name:
            if text.strip():
                raise _err("empty variable name", line, pos)
            continue
        if not _NAME.match(name):
            raise _err(f"bad variable name {name!r}", line, pos + part.index(name))
        out.append(var_name(name))
        pos += len(part) + 1
    return out


def _brace_set(text: str, i: int, line: int, offset: int):
    """Parse ``{a, b}`` starting at ``text[i]``; returns (names, next index)."""
    if i >= len(text) or text[i] != "{":
        raise _err("expected '{'", line, offset + i)
    j = text.find("}", i)
    if j < 0:
        raise _err("unclosed '{'", line, offset + i)
    inner = text[i + 1 : j]
    if "{" in inner:
        raise _err("unexpected '{'", line, offset + i + 1 + inner.index("{"))
    return _names(inner, line, offset + i + 1), j + 1


def _skip(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t,":
        i += 1
    return i


def _sharing(text: str, line: int, offset: int):
    """Parse ``{{x, y}, {z}}``."""
    i = _skip(text, 0)
    if not text[i:].startswith("{"):
        raise _err("expected '{'", line, offset + i)
    i += 1
    groups = []
    while True:
        i = _skip(text, i)
        if i < len(text) and text[i] == "}":
            i += 1
            break
        names, i = _brace_set(text, i, line, offset)
        if not names:
            raise _err("the empty set is not a sharing group", line, offset + i - 2)
        groups.append(names)
    if text[i:].strip():
        raise _err(f"unexpected {text[i:].strip()!r}", line, offset + i)
    return groups


_FIELD = re.compile(r"\s*(sh|free|lin|linear)\s*=\s*")


def _sfl_start(text: str, vi, line: int, offset: int) -> SflElement:
    parts = {}
    i = 0
    while i < len(text) and text[i:].strip():
        m = _FIELD.match(text, i)
        if not m:
            raise _err("expected sh=, free= or lin=", line, offset + _skip(text, i))
        key = "lin" if m.group(1) == "linear" else m.group(1)
        j = m.end()
        if key == "sh":
            depth, k = 0, j
            while k < len(text):
                depth += {"{": 1, "}": -1}.get(text[k], 0)
                k += 1
                if depth == 0:
                    break
            if depth:
                raise _err("unclosed '{'", line, offset + j)
            parts[key] = _sharing(text[j:k], line, offset + j)
        else:
            names, k = _brace_set(text, j, line, offset)
            parts[key] = names
        i = k
    missing = {"sh", "free", "lin"} - parts.keys()
    if missing:
        raise _err(f"missing {', '.join(sorted(missing))}", line, offset)
    return SflElement.of(vi, parts["sh"], parts["free"], parts["lin"])


def parse_scenario(text: str) -> Scenario:
    vi = None
    theory = Theory.RT
    variant = Variant.ENHANCED
    domain = "sfl"
    start_line = None
    binds = []
    eqs = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            raise _err("expected 'key: value'", n, len(body) - len(body.lstrip()))
        key, value = body.split(":", 1)
        offset = len(key) + 1 + len(value) - len(value.lstrip())
        key, value = key.strip().lower(), value.strip()
        if key == "vi":
            vi = _names(value, n, offset)
        elif key == "theory":
            if value.lower() not in ("ft", "rt"):
                raise _err(f"unknown theory {value!r}", n, offset)
            theory = Theory(value.lower())
        elif key == "variant":
            try:
                variant = Variant(value.lower())
            except ValueError:
                raise _err(f"unknown variant {value!r}", n, offset) from None
        elif key == "domain":
            if value.lower() not in DOMAINS:
                raise _err(f"unknown domain {value!r}", n, offset)
            domain = value.lower()
        elif key == "start":
            if start_line is not None:
                raise _err("start given twice", n, 0)
            start_line = (n, value, offset)
        elif key == "bind":
            try:
                binds.append((n, parse_binding(value)))
            except ParseError as e:
                raise _lift(e, n, offset) from None
        elif key == "eq":
            try:
                eqs.append((n, parse_equation(value)))
            except ParseError as e:
                raise _lift(e, n, offset) from None
        else:
            raise _err(f"unknown key {key!r}", n, 0)

    start = None
    start_vars = set()
    if start_line is not None:
        n, value, offset = start_line
        head, _, rest = value.partition(" ")
        rest_off = offset + len(head) + 1 + len(rest) - len(rest.lstrip())
        rest = rest.strip()
        if head == "subst":
            try:
                start = parse_substitution(rest)
            except ParseError as e:
                raise _lift(e, n, rest_off) from None
            start_vars = set(start.vars)
        elif head == "sfl":
            start = ("sfl", n, rest, rest_off)
        elif head == "bottom" and not rest:
            start = ("bottom", n)
        else:
            raise _err(f"unknown start {head!r}; use subst, sfl or bottom", n, offset)

    mentioned = set(start_vars)
    for _, b in binds:
        mentioned |= b.vars
    for _, (s, t) in eqs:
        mentioned |= s.vars | t.vars
    if vi is None:
        vi = sorted(mentioned)
        if isinstance(start, tuple) and start[0] == "sfl":
            raise _err("an sfl start needs a vi line", start[1], 0)
    vi = tuple(dict.fromkeys(vi))
    vi_set = frozenset(vi)
    if start_line is not None and not start_vars <= vi_set:
        bad = sorted(start_vars - vi_set)[0]
        raise _err(f"variable {format_term(Var(bad))} is not in vi", start_line[0], start_line[2])
    for n, b in binds:
        if not b.vars <= vi_set:
            bad = sorted(b.vars - vi_set)[0]
            raise _err(f"variable {format_term(Var(bad))} is not in vi", n, 0)
    if isinstance(start, tuple):
        if start[0] == "bottom":
            start = SflElement.bottom(vi_set)
        else:
            _, n, rest, rest_off = start
            try:
                start = _sfl_start(rest, vi_set, n, rest_off)
            except ParseError:
                raise
            except ValueError as e:  # bad element components
                raise _err(str(e), n, rest_off) from None
    if domain == "sfl2":
        variant = Variant.SFL2
    return Scenario(
        vi=vi,
        theory=theory,
        start=start,
        bindings=[b for _, b in binds],
        equations=[e for _, e in eqs],
        variant=variant,
        domain=domain,
    )


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# -- JSON views ---------------------------------------------------------------


def sfl_to_json(d: SflElement) -> dict:
    if d.is_bottom:
        return {"bottom": True}
    return {"sh": S.sorted_groups(d.sh), "free": sorted(d.f), "linear": sorted(d.l)}


def sfl_from_json(obj: dict, vi) -> SflElement:
    if obj.get("bottom"):
        return SflElement.bottom(vi)
    return SflElement.of(vi, obj["sh"], obj["free"], obj["linear"])


def asub_to_json(k: AsubElement) -> dict:
    if k.bottom:
        return {"bottom": True}
    return {"ground": sorted(k.g), "rel": S.sorted_groups(k.r)}


# -- analysis -----------------------------------------------------------------


def initial_element(sc: Scenario) -> SflElement:
    if isinstance(sc.start, SflElement):
        return sc.start
    sigma = sc.start if sc.start is not None else Substitution()
    return alpha_sfl(sigma, sc.ctx)


def _show(domain: str, value) -> tuple[str, object]:
    if domain == "sh":
        return S.format_sharing(value), S.sorted_groups(value)
    if domain == "asub":
        return str(value), asub_to_json(value)
    return str(value), sfl_to_json(value)


def run_analyze(sc: Scenario) -> dict:
    """Fold the scenario's bindings in its domain; records every step."""
    d = initial_element(sc)
    ctx = sc.ctx
    if sc.domain == "sh":
        state = d.sh

        def step(s, b):
            return S.amgu_sh(s, b.lhs, b.rhs.vars)

    elif sc.domain == "asub":
        state = alpha_asub(d)
        step = amgu_asub
    else:
        state = d

        def step(s, b):
            return amgu(s, b, ctx, sc.variant)

    def view(s):
        if sc.domain == "sfl2":
            s = observables(s, Observable.PSD)
        return _show(sc.domain, s)

    text, js = view(state)
    out = {
        "vi": list(sc.vi),
        "theory": sc.theory.value,
        "domain": sc.domain,
        "variant": sc.variant.value,
        "initial": js,
        "steps": [],
        "_text": {"initial": text, "steps": []},
    }
    for b in sc.bindings:
        state = step(state, b)
        text, js = view(state)
        out["steps"].append({"binding": str(b), "result": js})
        out["_text"]["steps"].append((str(b), text))
    out["final"] = js
    out["_text"]["final"] = text
    return out


def run_compare(sc: Scenario) -> dict:
    """Run the classic, enhanced and non-redundant operators and pair-sharing side by side."""
    ctx = sc.ctx
    d0 = initial_element(sc)
    cur = {v: d0 for v in Variant}
    k = alpha_asub(d0)
    steps = []
    for b in sc.bindings:
        cur = {v: amgu(cur[v], b, ctx, v) for v in Variant}
        k = amgu_asub(k, b)
        steps.append({"binding": str(b), **{v.value: cur[v] for v in Variant}, "asub": k})
    cls, enh, opt = cur[Variant.CLASSIC], cur[Variant.ENHANCED], cur[Variant.SFL2]
    a_cls, a_enh = alpha_asub(cls), alpha_asub(enh)
    extra = sorted(sorted(p) for p in (a_cls.r - k.r)) if not (a_cls.bottom or k.bottom) else []
    relations = {
        "enhanced_leq_classic": leq(enh, cls),
        "sfl2_psd_equivalent_enhanced": equiv_psd(opt, enh),
        "asub_of_enhanced_leq_asub": leq_asub(a_enh, k),
        "asub_of_classic_leq_asub": leq_asub(a_cls, k),
        "classic_pairs_missing_from_asub": extra,
    }
    return {"vi": list(sc.vi), "theory": sc.theory.value, "initial": d0, "steps": steps, "relations": relations}


def compare_to_json(res: dict) -> dict:
    steps = []
    for s in res["steps"]:
        row = {"binding": s["binding"]}
        for v in Variant:
            row[v.value] = sfl_to_json(s[v.value])
        row["asub"] = asub_to_json(s["asub"])
        steps.append(row)
    return {
        "vi": res["vi"],
        "theory": res["theory"],
        "initial": sfl_to_json(res["initial"]),
        "steps": steps,
        "relations": res["relations"],
    }


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def render_compare(res: dict) -> str:
    lines = [f"vi: {', '.join(res['vi'])}", f"theory: {res['theory']}", f"initial: {res['initial']}"]
    for s in res["steps"]:
        lines.append(f"bind {s['binding']}")
        for v in Variant:
            lines.append(f"  {v.value + ':':10}{s[v.value]}")
        lines.append(f"  {'asub:':10}{s['asub']}")
    r = res["relations"]
    lines.append("relations:")
    lines.append(f"  enhanced <= classic: {_yes(r['enhanced_leq_classic'])}")
    lines.append(f"  sfl2 psd-equivalent to enhanced: {_yes(r['sfl2_psd_equivalent_enhanced'])}")
    lines.append(f"  asub(enhanced) <= asub: {_yes(r['asub_of_enhanced_leq_asub'])}")
    lines.append(f"  asub(classic) <= asub: {_yes(r['asub_of_classic_leq_asub'])}")
    missing = ", ".join(" ".join(p) for p in r["classic_pairs_missing_from_asub"])
    lines.append(f"  pairs in asub(classic) but not in asub: {{{missing}}}")
    return "\n".join(lines)


def render_analysis(res: dict) -> str:
    t = res["_text"]
    lines = [
        f"vi: {', '.join(res['vi'])}",
        f"theory: {res['theory']}",
        f"domain: {res['domain']}",
    ]
    if res["domain"] in ("sfl", "sfl2"):
        lines.append(f"variant: {res['variant']}")
    lines.append(f"initial: {t['initial']}")
    for b, text in t["steps"]:
        lines.append(f"bind {b}: {text}")
    lines.append(f"final: {t['final']}")
    return "\n".join(lines)


def analysis_json(res: dict) -> dict:
    return {k: v for k, v in res.items() if not k.startswith("_")}


def scenario_equations(sc: Scenario) -> list[tuple[Term, Term]]:
    eqs = []
    if isinstance(sc.start, Substitution):
        eqs += [(Var(x), sc.start[x]) for x in sorted(sc.start)]
    eqs += [(Var(b.lhs), b.rhs) for b in sc.bindings]
    eqs += list(sc.equations)
    return eqs


def run_concretize(sc: Scenario):
    return solve(scenario_equations(sc), sc.theory)

