from itertools import product

import pytest
from conftest import bindings, substitutions
from hypothesis import given
from hypothesis import strategies as st

from sharelat import sharing as S
from sharelat.asub import AsubElement, alpha_asub, amgu_asub, chi_binding, chi_term, compose_asub, leq_asub, soln
from sharelat.concrete import alpha_sfl
from sharelat.errors import BottomQuery, ContextMismatch
from sharelat.sfl import SflElement, Variant, amgu
from sharelat.terms import AnalysisContext, Theory, parse_binding, parse_term

VI7 = ["x", "x1", "x2", "y", "y1", "y2", "z"]
R = S.make(p.split() for p in ["x x1", "x x2", "x y", "x z", "y y1", "y y2", "y z"])
KAPPA = AsubElement.of(VI7, (), R)
BOTH_LIN = SflElement.of(
    VI7,
    [g.split() for g in ["x x1", "x x2", "x y z", "y y1", "y y2"]],
    set(VI7) - {"x", "y"},
    VI7,
)


def rel(*ps):
    return S.make(p.split() for p in ps)


def test_alpha_examples():
    assert alpha_asub(BOTH_LIN) == KAPPA
    assert alpha_asub(SflElement.bottom("xy")).bottom
    assert alpha_asub(SflElement.of("xy", [], "", "")) == AsubElement.of("xy", "xy", ())


def test_example_chain():
    b = parse_binding("X -> Y")
    assert chi_binding(KAPPA, b) == (1, 1)
    assert soln(KAPPA, b) == AsubElement.of(VI7, (), rel("x y"))
    extra = rel(
        "x", "x y1", "x y2", "x1 y", "x1 y1", "x1 y2", "x1 z",
        "x2 y", "x2 y1", "x2 y2", "x2 z", "y", "y1 z", "y2 z", "z",
    )
    got = amgu_asub(KAPPA, b)
    assert got.g == frozenset()
    assert got.r == R | extra
    assert frozenset(("x1", "x2")) not in got.r
    assert frozenset(("y1", "y2")) not in got.r


def test_classic_loses_independence():
    b = parse_binding("X -> Y")
    cls = alpha_asub(amgu(BOTH_LIN, b, Theory.RT, Variant.CLASSIC))
    assert frozenset(("x1", "x2")) in cls.r
    assert not leq_asub(cls, amgu_asub(KAPPA, b))
    enh = alpha_asub(amgu(BOTH_LIN, b, Theory.RT, Variant.ENHANCED))
    assert leq_asub(enh, amgu_asub(KAPPA, b))


def test_chi_cases():
    k = AsubElement.of("xyz", "z", rel("x", "x y"))
    assert chi_term(k, parse_term("f(Z)")) == 0
    assert chi_term(k, parse_term("f(Y, Y)")) == 2
    assert chi_term(k, parse_term("Y")) == 1
    assert chi_term(k, parse_term("X")) == 2
    assert chi_binding(k, parse_binding("Y -> Z")) == 0
    with pytest.raises(BottomQuery):
        chi_term(AsubElement.bot("xy"), parse_term("X"))


def test_soln_rows():
    k = AsubElement.of("xy", (), rel("x", "y"))
    assert soln(k, parse_binding("X -> f(Y)")) == AsubElement.of("xy", (), rel("x", "x y", "y"))
    assert soln(AsubElement.of("xy", "y", ()), parse_binding("X -> Y")) == AsubElement.of("xy", "xy", ())


def test_compose_identity_and_grounding():
    assert compose_asub(KAPPA, AsubElement.of(VI7, (), ())) == KAPPA
    k = AsubElement.of("xy", (), rel("x y"))
    assert amgu_asub(k, parse_binding("X -> a")) == AsubElement.of("xy", "x", ())


def test_leq_examples():
    k = AsubElement.of("xy", "x", ())
    assert leq_asub(AsubElement.bot("xy"), k)
    assert leq_asub(k, k)
    assert leq_asub(k, AsubElement.of("xy", (), rel("x y")))
    with pytest.raises(ContextMismatch):
        leq_asub(k, AsubElement.of("xz", "x", ()))


def test_bottom_is_strict():
    assert amgu_asub(AsubElement.bot("xy"), parse_binding("X -> Y")).bottom


# Independent transcription of the multiplicity table and composition.


def ref_soln(k, b):
    vx, vt = {b.lhs}, set(b.rhs.vars)
    m = chi_binding(k, b)
    table = {
        (1, 1): (vx, vt),
        (1, 2): (vx, vx | vt),
        (2, 1): (vx | vt, vt),
        (2, 2): (vx | vt, vx | vt),
    }
    if m == 0:
        return AsubElement(k.vi, frozenset(vx | vt), frozenset())
    left, right = table[m]
    return AsubElement(k.vi, frozenset(), frozenset(frozenset((v, w)) for v in left for w in right))


def ref_compose(k, k2):
    g = k.g | k2.g

    def share(kk, u, v):
        return frozenset((u, v)) in kk.r

    def near(u, v):
        return u == v or share(k, u, v)

    r = set()
    for u, v in product(k.vi, repeat=2):
        if {u, v} & g:
            continue
        if share(k, u, v) or any(
            near(u, x) and share(k2, x, y) and near(y, v) for x, y in product(k.vi, repeat=2)
        ):
            r.add(frozenset((u, v)))
    return AsubElement(k.vi, g, frozenset(r))


VI = "xyzw"


@st.composite
def asub_elements(draw):
    g = draw(st.sets(st.sampled_from(VI)))
    rest = [v for v in VI if v not in g]
    pairs = [frozenset((a, b)) for a in rest for b in rest]
    r = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return AsubElement(frozenset(VI), frozenset(g), frozenset(r))


@given(asub_elements(), bindings())
def test_soln_matches_table(k, b):
    assert soln(k, b) == ref_soln(k, b)


@given(asub_elements(), asub_elements())
def test_compose_matches_definition(k, k2):
    assert compose_asub(k, k2) == ref_compose(k, k2)


@given(asub_elements(), bindings())
def test_amgu_keeps_invariants(k, b):
    out = amgu_asub(k, b)
    assert out.g.isdisjoint(S.vars_of(out.r))
    assert all(1 <= len(p) <= 2 for p in out.r)


@given(substitutions(), bindings())
def test_dominance(sigma, b):
    d = alpha_sfl(sigma, AnalysisContext(VI, Theory.RT))
    assert leq_asub(alpha_asub(amgu(d, b)), amgu_asub(alpha_asub(d), b))
