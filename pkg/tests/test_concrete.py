import pytest
from conftest import substitutions
from hypothesis import given
from hypothesis import strategies as st

from sharelat import sharing as S
from sharelat.concrete import alpha_sfl, fvars, gamma_member, gvars, lvars, occ, profile, ssets
from sharelat.enumeration import enumerate_substitutions
from sharelat.errors import UnsatisfiableSubstitution
from sharelat.sfl import SflElement
from sharelat.solver import finite_closure, has_infinite_tree, solve
from sharelat.terms import AnalysisContext, Theory, Var, apply_power, occ_lin, parse_substitution, parse_term

X = ["x1", "x2", "x3", "x4"]


def sh(*groups):
    return S.make(g.split() for g in groups)


# Reference extractors: literal readings of the definitions using apply_power.


def _n(sigma):
    return len(sigma)


def _universe(sigma, extra=()):
    vs = set(sigma) | set(extra)
    for t in sigma.values():
        vs |= t.vars
    return vs


def ref_occ(sigma, v, n=None):
    n = _n(sigma) if n is None else n
    cands = set(sigma) | {v}
    return {y for y in cands if v in apply_power(sigma, Var(y), n).vars - sigma.keys()}


def ref_gvars(sigma):
    vs = _universe(sigma)
    return {y for y in sigma if all(y not in ref_occ(sigma, v) for v in vs)}


def ref_fvars(sigma, extra=()):
    n = _n(sigma)
    return {y for y in _universe(sigma, extra) if isinstance(apply_power(sigma, Var(y), n), Var)}


def ref_lvars(sigma, extra=()):
    n = _n(sigma)
    out = set()
    for y in _universe(sigma, extra):
        once = apply_power(sigma, Var(y), n)
        twice = apply_power(sigma, Var(y), 2 * n)
        if all(occ_lin(z, twice) for z in once.vars - sigma.keys()):
            out.add(y)
    return out


def test_occ_example():
    s = parse_substitution("{X1 -> f(X2), X2 -> g(X3, X4), X3 -> X1}")
    assert occ(s, "x4") == set(X)
    for v in ("x1", "x2", "x3"):
        assert occ(s, v) == set()
    assert ssets(s, X) == {frozenset(X)}
    assert occ({}, "x") == {"x"}


def test_ssets_examples():
    assert ssets({}, ["x", "y"]) == sh("x", "y")
    assert ssets(parse_substitution("{X -> f(Y, Z)}"), "xyz") == sh("x y", "x z")


def test_gvars_examples():
    s = parse_substitution("{X1 -> X2, X2 -> f(a), X3 -> X4, X4 -> f(X2, X4)}")
    assert gvars(s) == set(X)
    assert gvars({}) == set()
    assert gvars(parse_substitution("{X -> f(Y)}")) == set()


def test_fvars_examples():
    s = parse_substitution("{X1 -> X2, X2 -> f(X3), X3 -> X4, X4 -> X5}")
    vi = X + ["x5"]
    assert fvars(s, vi) & set(vi) == {"x3", "x4", "x5"}
    assert "y" in fvars({}, ["y"])
    assert "x" not in fvars(parse_substitution("{X -> f(X)}"))


def test_lvars_examples():
    s = parse_substitution("{X1 -> X2, X2 -> X3, X3 -> f(X1, X4)}")
    assert lvars(s, X) & set(X) == {"x4"}
    t = parse_substitution("{X1 -> f(X2, X2), X2 -> f(X2)}")
    assert lvars(t, X) & set(X) == set(X)
    assert lvars({}, "xyz") == set("xyz")


def test_alpha_examples():
    vi = ["x", "x1", "x2", "y", "y1", "y2", "z"]
    ctx = AnalysisContext(vi, Theory.RT)
    d = alpha_sfl(parse_substitution("{X -> f(X1, X2, Z), Y -> f(Y1, Z, Y2)}"), ctx)
    assert d.sh == sh("x x1", "x x2", "x y z", "y y1", "y y2")
    assert d.f == set(vi) - {"x", "y"}
    assert d.l == set(vi)

    ctx = AnalysisContext(["x", "x1", "x2", "y"], Theory.RT)
    d = alpha_sfl(parse_substitution("{X -> f(X1, X2)}"), ctx)
    assert (d.sh, d.f, d.l) == (sh("x x1", "x x2", "y"), {"x1", "x2", "y"}, {"x", "x1", "x2", "y"})

    d = alpha_sfl({}, AnalysisContext(["x"], Theory.RT))
    assert (d.sh, d.f, d.l) == (sh("x"), {"x"}, {"x"})


def test_alpha_rejects_infinite_tree_under_ft():
    s = parse_substitution("{X -> f(X)}")
    with pytest.raises(UnsatisfiableSubstitution):
        alpha_sfl(s, AnalysisContext(["x"], Theory.FT))
    assert alpha_sfl(s, AnalysisContext(["x"], Theory.RT)).sh == frozenset()


def test_gamma_bottom_and_self():
    ctx = AnalysisContext("xy", Theory.RT)
    s = parse_substitution("{X -> f(Y)}")
    assert gamma_member(alpha_sfl(s, ctx), s, ctx)
    assert not gamma_member(SflElement.bottom("xy"), s, ctx)


def test_spurious_element_has_empty_concretization():
    # Every variable is free and linear, so pairwise sharing would need a
    # variable aliased to two others at once: no substitution qualifies.
    ctx = AnalysisContext("xyz", Theory.RT)
    d = SflElement.of("xyz", [["x", "y"], ["x", "z"], ["y", "z"]], "xyz", "xyz")
    assert not any(gamma_member(d, s, ctx) for s in enumerate_substitutions("xyz", 1))


@given(substitutions())
def test_extractors_match_definitions(sigma):
    vi = "xyzw"
    p = profile(sigma, vi)
    for v in _universe(sigma, vi):
        assert p.occ_map[v] == ref_occ(sigma, v)
    assert p.gvars == ref_gvars(sigma)
    assert p.fvars == ref_fvars(sigma, vi)
    assert p.lvars == ref_lvars(sigma, vi)


@given(substitutions(), st.integers(1, 2))
def test_occ_stable_past_binding_count(sigma, extra):
    n = len(sigma)
    for v in _universe(sigma):
        assert ref_occ(sigma, v, n) == ref_occ(sigma, v, n + extra)


@given(substitutions())
def test_corollary_inclusions(sigma):
    vi = frozenset("xyzw")
    p = profile(sigma, vi)
    assert p.fvars & vi <= S.vars_of(p.ssets)
    assert p.fvars | p.gvars <= p.lvars


@given(substitutions())
def test_finite_trees_agree_with_full_expansion(sigma):
    if has_infinite_tree(sigma):
        return
    vi = "xyzw"
    p = profile(sigma, vi)
    for y in vi:
        full = finite_closure(sigma, Var(y))
        assert (y in p.gvars) == (y in sigma and not full.vars)
        assert (y in p.fvars) == isinstance(full, Var)
        assert (y in p.lvars) == all(occ_lin(z, full) for z in full.vars)


@given(st.lists(st.tuples(st.sampled_from("xyzw"), st.sampled_from(["a", "f(X)", "g(Y, Z)", "g(X, W)", "Y", "f(f(Z))"])), max_size=5), st.randoms(use_true_random=False))
def test_invariance_under_equation_order(pairs, rnd):
    e = [(Var(x), parse_term(t)) for x, t in pairs]
    shuffled = list(e)
    rnd.shuffle(shuffled)
    shuffled = [(t, s) if rnd.random() < 0.5 else (s, t) for s, t in shuffled]
    a, b = solve(e, Theory.RT), solve(shuffled, Theory.RT)
    assert (a is None) == (b is None)
    if a is not None:
        vi = "xyzw"
        pa, pb = profile(a, vi), profile(b, vi)
        assert pa.ssets == pb.ssets
        assert (pa.gvars & set(vi), pa.fvars & set(vi), pa.lvars & set(vi)) == (
            pb.gvars & set(vi),
            pb.fvars & set(vi),
            pb.lvars & set(vi),
        )
