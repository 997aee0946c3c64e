"""Diagnostic: is amgu monotone in its element argument?

Samples comparable pairs d1 <= d2 and a binding, and reports any case where
amgu(d1, b) is not below amgu(d2, b).  Nothing here is asserted; the
operator is not claimed to be monotone.
"""

import argparse
import random

from sharelat.enumeration import all_elements, binding_pool, var_names
from sharelat.sfl import SflElement, Variant, amgu, leq
from sharelat.terms import AnalysisContext, Theory


def widen(rng, d, names):
    """A random element above ``d``."""
    groups = set(d.sh)
    for _ in range(rng.randint(0, 2)):
        k = rng.randint(1, len(names))
        groups.add(frozenset(rng.sample(names, k)))
    f = frozenset(v for v in d.f if rng.random() < 0.7)
    l = frozenset(v for v in d.l if rng.random() < 0.7)  # noqa: E741
    return SflElement(d.vi, frozenset(groups), f, l)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vi", type=int, default=3)
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--variant", default="enhanced", choices=[v.value for v in Variant])
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    names = list(var_names(args.vi))
    ctx = AnalysisContext(names, Theory.RT)
    pool = binding_pool(names)
    elements = [d for d in all_elements(names) if not d.is_bottom]
    found = []
    for _ in range(args.samples):
        d1 = rng.choice(elements)
        d2 = widen(rng, d1, names)
        assert leq(d1, d2)
        b = rng.choice(pool)
        r1, r2 = amgu(d1, b, ctx, args.variant), amgu(d2, b, ctx, args.variant)
        if not leq(r1, r2):
            found.append((d1, d2, b, r1, r2))
    print(f"samples={args.samples} non-monotone={len(found)}")
    for d1, d2, b, r1, r2 in found[: args.show]:
        print(f"  d1={d1}\n  d2={d2}\n  b={b}\n  amgu(d1)={r1}\n  amgu(d2)={r2}\n")


if __name__ == "__main__":
    main()
