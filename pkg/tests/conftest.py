import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from sharelat.terms import Binding, Fun, Substitution, Var, is_rsubst

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

NAMES = ("x", "y", "z", "w")


def term_strategy(names=NAMES, max_leaves=8):
    leaf = st.one_of(st.sampled_from(names).map(Var), st.just(Fun("a")), st.just(Fun("b")))
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            kids.map(lambda t: Fun("f", (t,))),
            st.tuples(kids, kids).map(lambda p: Fun("g", p)),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def substitutions(draw, names=NAMES, max_leaves=5):
    """Random substitutions in rational solved form over ``names``."""
    dom = draw(st.lists(st.sampled_from(names), unique=True, max_size=len(names)))
    out = {}
    for x in dom:
        t = draw(term_strategy(names, max_leaves))
        if t == Var(x):
            continue
        out[x] = t
        if not is_rsubst(out):
            del out[x]
    return Substitution(out)


@st.composite
def bindings(draw, names=NAMES, max_leaves=5):
    x = draw(st.sampled_from(names))
    t = draw(term_strategy(names, max_leaves).filter(lambda t: t != Var(x)))
    return Binding(x, t)


@pytest.fixture
def root():
    return ROOT
