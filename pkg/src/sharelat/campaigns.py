"""Enumeration and fuzz campaigns that check the domain's correctness claims.

Each campaign returns a :class:`CampaignReport`.  Reports are deterministic
for a given configuration, and running with several worker processes gives
the same report as running with one.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

from . import sharing as S
from .asub import alpha_asub, amgu_asub, leq_asub
from .concrete import alpha_sfl, gamma_member, profile
from .enumeration import (
    all_elements,
    all_groups,
    all_sharing_sets,
    all_subsets,
    binding_pool,
    bindings_by_weight,
    random_binding,
    random_substitution,
    random_term,
    sigmas_of_weight,
    var_names,
)
from .sfl import (
    Observable,
    SflElement,
    Variant,
    amgu,
    aunify,
    leq,
    observables,
    sharing_case,
)
from .solver import extend, solve
from .terms import AnalysisContext, Binding, Fun, Substitution, Theory, Var, apply

KINDS = (
    "soundness",
    "dominance",
    "congruence",
    "variant-equivalence",
    "minimality",
    "invariance",
    "structural",
)


@dataclass
class CampaignConfig:
    kind: str = "soundness"
    seed: int = 0
    vi_size: int = 2
    depth: int = 1
    iters: int = 1000
    theory: Theory = Theory.RT
    exhaustive: bool = True
    cap: int = 1_000_000
    max_bindings: int = 2
    workers: int = 1
    max_failures: int = 10

    def __post_init__(self):
        self.theory = Theory(self.theory)
        if self.kind not in KINDS:
            raise ValueError(f"unknown campaign kind {self.kind!r}")
        limit = 4 if self.exhaustive else 8
        if not 1 <= self.vi_size <= limit:
            raise ValueError(f"vi_size must be between 1 and {limit}")
        if self.depth < 0 or self.iters < 0 or self.cap < 1:
            raise ValueError("depth, iters and cap must be non-negative")
        if self.max_bindings not in (1, 2, 3):
            raise ValueError("max_bindings must be 1, 2 or 3")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    @property
    def names(self) -> tuple[str, ...]:
        return var_names(self.vi_size)


@dataclass
class CampaignReport:
    kind: str
    cases: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    extras: dict = field(default_factory=dict)
    always_ok: bool = False

    @property
    def ok(self) -> bool:
        return self.always_ok or self.failure_count == 0

    def to_json(self) -> dict:
        out = {"cases": self.cases, "failures": self.failures, "ok": self.ok}
        out["kind"] = self.kind
        out["failure_count"] = self.failure_count
        out.update(self.extras)
        return out

    def render(self) -> str:
        lines = [f"campaign: {self.kind}", f"cases: {self.cases}"]
        for k, v in self.extras.items():
            lines.append(f"{k}: {v}")
        lines.append(f"failures: {self.failure_count}")
        for f in self.failures:
            lines.append(f"  input: {f['input']}")
            lines.append(f"  expected: {f['expected']}")
            lines.append(f"  got: {f['got']}")
        lines.append("ok" if self.ok else "FAILED")
        return "\n".join(lines)


def element_json(d) -> dict:
    if d.is_bottom:
        return {"bottom": True}
    sh = "ALL" if not isinstance(d.sh, frozenset) else S.sorted_groups(d.sh)
    return {"sh": sh, "free": sorted(d.f), "linear": sorted(d.l)}


def asub_json(k) -> dict:
    if k.bottom:
        return {"bottom": True}
    return {"ground": sorted(k.g), "rel": S.sorted_groups(k.r)}


# -- shrinking ----------------------------------------------------------------


@dataclass(frozen=True)
class Case:
    """A concrete test input: a substitution followed by a binding sequence."""

    vi: tuple
    sigma: Substitution
    bs: tuple
    theory: Theory = Theory.RT

    def to_json(self) -> dict:
        return {
            "vi": list(self.vi),
            "theory": Theory(self.theory).value,
            "sigma": str(self.sigma),
            "bindings": [str(b) for b in self.bs],
        }


def _ground_var(case: Case, v: str) -> Case | None:
    a = Fun("a")
    ren = {v: a}
    sigma = {}
    for x, t in case.sigma.items():
        if x == v:
            continue
        sigma[x] = apply(ren, t)
    bs = []
    for b in case.bs:
        if b.lhs == v:
            continue
        bs.append(Binding(b.lhs, apply(ren, b.rhs)))
    vi = tuple(x for x in case.vi if x != v)
    if not vi:
        return None
    return Case(vi, Substitution(sigma, check=False), tuple(bs), case.theory)


def _candidates(case: Case):
    for i in range(len(case.bs)):
        yield replace(case, bs=case.bs[:i] + case.bs[i + 1 :])
    for x in sorted(case.sigma):
        rest = {y: t for y, t in case.sigma.items() if y != x}
        yield replace(case, sigma=Substitution(rest, check=False))
    for v in case.vi:
        smaller = _ground_var(case, v)
        if smaller is not None:
            yield smaller


def shrink(case: Case, fails: Callable[[Case], bool], max_steps: int = 1000) -> Case:
    """Greedy shrinking: drop bindings, then substitution bindings, then variables.

    Every accepted step is re-checked with ``fails``, so the result still fails.
    """
    steps = 0
    progress = True
    while progress and steps < max_steps:
        progress = False
        for smaller in _candidates(case):
            steps += 1
            if fails(smaller):
                case = smaller
                progress = True
                break
    return case


def soundness_violated(case: Case, variant: Variant = Variant.ENHANCED) -> bool:
    """True iff the abstract result fails to describe the concrete solution."""
    ctx = AnalysisContext(case.vi, case.theory)
    try:
        d = alpha_sfl(case.sigma, ctx)
    except ValueError:
        return False
    tau = extend(case.sigma, [(Var(b.lhs), b.rhs) for b in case.bs], case.theory)
    if tau is None:
        return False
    return not gamma_member(aunify(d, case.bs, ctx, variant), tau, ctx)


def dominance_violated(case: Case) -> bool:
    """True iff some step of the sequence is less precise than the pair-sharing step."""
    ctx = AnalysisContext(case.vi, case.theory)
    try:
        d = alpha_sfl(case.sigma, ctx)
    except ValueError:
        return False
    for b in case.bs:
        nxt = amgu(d, b, ctx)
        if not leq_asub(alpha_asub(nxt), amgu_asub(alpha_asub(d), b)):
            return True
        d = nxt
    return False


# -- concrete enumeration scan ------------------------------------------------


class _Scan:
    """Per-process state for checking (sigma, bindings) cases."""

    def __init__(self, names, depth, theory, max_bindings, checks):
        self.names = tuple(names)
        self.ctx = AnalysisContext(self.names, theory)
        self.theory = Theory(theory)
        self.by_w = bindings_by_weight(self.names, depth)
        self.max_bindings = max_bindings
        self.checks = checks
        self.amgu_memo: dict = {}
        self.dom_memo: dict = {}

    def amgu(self, d, b):
        key = (d, b)
        r = self.amgu_memo.get(key)
        if r is None:
            r = amgu(d, b, self.ctx)
            self.amgu_memo[key] = r
        return r

    def dominance(self, d, b):
        """None when fine, else (expected, got) descriptions."""
        key = (d, b)
        if key in self.dom_memo:
            return self.dom_memo[key]
        out = None
        lhs = alpha_asub(self.amgu(d, b))
        rhs = amgu_asub(alpha_asub(d), b)
        if not rhs.bottom and (not rhs.g.isdisjoint(S.vars_of(rhs.r)) or any(len(p) > 2 for p in rhs.r)):
            out = ("pair-sharing invariant", str(rhs))
        elif not leq_asub(lhs, rhs):
            out = (f"below {rhs}", str(lhs))
        self.dom_memo[key] = out
        return out

    def sequences(self, rem: int):
        """Binding sequences of total weight ``rem``, in a fixed order."""
        by_w = self.by_w
        for b in by_w.get(rem, ()):
            yield (b,)
        if self.max_bindings >= 2:
            for w1, bs1 in by_w.items():
                for w2, bs2 in by_w.items():
                    if w1 + w2 == rem:
                        for b1 in bs1:
                            for b2 in bs2:
                                yield (b1, b2)
        if self.max_bindings >= 3:
            for w1, bs1 in by_w.items():
                for w2, bs2 in by_w.items():
                    bs3 = by_w.get(rem - w1 - w2, ())
                    for b1, b2, b3 in itertools.product(bs1, bs2, bs3):
                        yield (b1, b2, b3)

    def run(self, sigma, rem: int, limit: int):
        return self.run_sequences(sigma, itertools.islice(self.sequences(rem), limit))

    def run_sequences(self, sigma, seqs):
        ctx = self.ctx
        failures = []
        stats = {"steps": 0, "solutions": 0}
        cases = 0
        prefix: dict = {(): (alpha_sfl(sigma, ctx), sigma)}
        for bs in seqs:
            cases += 1
            d, tau = prefix[()]
            for i, b in enumerate(bs):
                key = bs[: i + 1]
                hit = prefix.get(key)
                if hit is None:
                    if "dominance" in self.checks and not d.is_bottom:
                        stats["steps"] += 1
                        bad = self.dominance(d, b)
                        if bad:
                            failures.append(("dominance", sigma, key, bad[0], bad[1]))
                    nd = self.amgu(d, b)
                    ntau = None if tau is None else extend(tau, [(Var(b.lhs), b.rhs)], self.theory)
                    hit = (nd, ntau)
                    if len(prefix) > 4096:
                        prefix = {(): prefix[()]}
                    prefix[key] = hit
                d, tau = hit
            if "soundness" in self.checks and tau is not None:
                stats["solutions"] += 1
                if not gamma_member(d, tau, ctx):
                    failures.append(("soundness", sigma, bs, f"describes {tau}", str(d)))
        return cases, failures, stats


def _count_exact(scan: _Scan, rem: int) -> int:
    # sequences of length 1..max_bindings with total weight exactly rem
    weights = tuple((w, len(bs)) for w, bs in scan.by_w.items())
    total = 0
    for length in range(1, scan.max_bindings + 1):
        total += _count_len(weights, rem, length)
    return total


@lru_cache(maxsize=None)
def _count_len(weights: tuple, rem: int, length: int) -> int:
    if length == 0:
        return 1 if rem == 0 else 0
    return sum(n * _count_len(weights, rem - w, length - 1) for w, n in weights if w <= rem)


def _corollary_violation(sigma, vi):
    p = profile(sigma, vi)
    if not (p.fvars & vi) <= S.vars_of(p.ssets):
        return ("free variables share", f"fvars {sorted(p.fvars & vi)}, ssets {S.format_sharing(p.ssets)}")
    if not (p.fvars | p.gvars) <= p.lvars:
        return (
            "free and ground variables linear",
            f"fvars {sorted(p.fvars)}, gvars {sorted(p.gvars)}, lvars {sorted(p.lvars)}",
        )
    return None


_WORKER: dict = {}


def _worker_init(args):
    _WORKER["scan"] = _Scan(*args)


def _worker_run(chunk):
    scan = _WORKER["scan"]
    return [scan.run(sigma, rem, limit) for sigma, rem, limit in chunk]


def _jobs(cfg: CampaignConfig, scan: _Scan):
    """Weight-ordered (sigma, remaining weight, case limit) jobs up to the cap."""
    names = cfg.names
    sigma_cache: dict = {}
    max_sigma = 8 * len(names) if cfg.depth >= 2 else (4 + 1) * len(names)
    max_w = max_sigma + cfg.max_bindings * max(scan.by_w)
    budget = cfg.cap
    info = {"cap": cfg.cap, "cap_hit": False, "levels_complete": 0, "max_weight": max_w}
    jobs = []
    for w in range(2, max_w + 1):
        for ws in range(0, w - 1):
            if ws not in sigma_cache:
                sigma_cache[ws] = list(sigmas_of_weight(names, cfg.depth, ws, cfg.theory))
            n = _count_exact(scan, w - ws)
            if not n:
                continue
            for sigma in sigma_cache[ws]:
                if budget <= 0:
                    info["cap_hit"] = True
                    return jobs, info
                take = min(n, budget)
                jobs.append((sigma, w - ws, take))
                budget -= take
        if budget <= 0:
            info["cap_hit"] = True
            info["levels_complete"] = w
            return jobs, info
        info["levels_complete"] = w
    return jobs, info


def _random_jobs(cfg: CampaignConfig):
    rng = random.Random(cfg.seed)
    names = cfg.names
    out = []
    for _ in range(cfg.iters):
        while True:
            sigma = random_substitution(rng, names, cfg.depth)
            if cfg.theory is Theory.RT:
                break
            from .solver import has_infinite_tree

            if not has_infinite_tree(sigma):
                break
        k = rng.randint(1, cfg.max_bindings)
        bs = tuple(random_binding(rng, names, cfg.depth) for _ in range(k))
        out.append((sigma, bs))
    return out


def scan_concrete(cfg: CampaignConfig, checks=("soundness", "dominance")) -> dict:
    """Check (sigma, bindings) cases; see :func:`run_campaign` for the kinds."""
    args = (cfg.names, cfg.depth, cfg.theory, cfg.max_bindings, tuple(checks))
    scan = _Scan(*args)
    results = []
    if cfg.exhaustive:
        jobs, info = _jobs(cfg, scan)
        if cfg.workers > 1:
            size = max(1, len(jobs) // (cfg.workers * 8))
            chunks = [jobs[i : i + size] for i in range(0, len(jobs), size)]
            with ProcessPoolExecutor(cfg.workers, initializer=_worker_init, initargs=(args,)) as ex:
                for part in ex.map(_worker_run, chunks):
                    results.extend(part)
        else:
            results = [scan.run(sigma, rem, limit) for sigma, rem, limit in jobs]
        info["sigmas"] = len(jobs)
    else:
        info = {"seed": cfg.seed, "iters": cfg.iters}
        for sigma, bs in _random_jobs(cfg):
            results.append(scan.run_sequences(sigma, [bs]))
    cases = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    stats = {"steps": 0, "solutions": 0}
    for r in results:
        for k, v in r[2].items():
            stats[k] += v
    return {"cases": cases, "failures": failures, "stats": stats, "info": info}


def _concrete_report(kind: str, cfg: CampaignConfig, scanned: dict, checks) -> CampaignReport:
    rep = CampaignReport(kind, cases=scanned["cases"])
    info = dict(scanned["info"])
    info.update(
        {
            "vi_size": cfg.vi_size,
            "depth": cfg.depth,
            "theory": cfg.theory.value,
            "mode": "exhaustive" if cfg.exhaustive else "random",
        }
    )
    stats = scanned["stats"]
    if "soundness" in checks:
        info["solutions_checked"] = stats["solutions"]
    if "dominance" in checks:
        info["steps_checked"] = stats["steps"]
    rep.extras = info
    fails = [f for f in scanned["failures"] if f[0] in checks]
    rep.failure_count = len(fails)
    for kind_, sigma, bs, expected, got in fails[: cfg.max_failures]:
        case = Case(cfg.names, sigma, tuple(bs), cfg.theory)
        pred = {
            "soundness": soundness_violated,
            "dominance": dominance_violated,
        }.get(kind_)
        small = shrink(case, pred) if pred and pred(case) else case
        rep.failures.append(
            {"input": small.to_json(), "expected": expected, "got": got, "check": kind_}
        )
    return rep


# -- abstract campaigns ---------------------------------------------------------


def _element_key(d: SflElement) -> tuple:
    return (tuple(S.sorted_groups(d.sh)), tuple(sorted(d.f)), tuple(sorted(d.l)))


def _rename_element(d: SflElement, perm: dict) -> SflElement:
    sh = frozenset(frozenset(perm[v] for v in g) for g in d.sh)
    return SflElement(d.vi, sh, frozenset(perm[v] for v in d.f), frozenset(perm[v] for v in d.l))


def canonical_elements(names: Sequence[str]) -> list[SflElement]:
    """One element per orbit under renaming ``names``; bottom excluded."""
    names = tuple(names)
    perms = [dict(zip(names, p)) for p in itertools.permutations(names)]
    out = []
    for d in all_elements(names):
        if d.is_bottom:
            continue
        key = _element_key(d)
        if all(_element_key(_rename_element(d, p)) >= key for p in perms):
            out.append(d)
    return out


@lru_cache(maxsize=200_000)
def _psd(sh: frozenset) -> frozenset:
    return S.rho_psd(sh)


def _psd_key(d: SflElement):
    if d.is_bottom:
        return None
    return (_psd(d.sh), d.f, d.l)


def variant_equivalence(cfg: CampaignConfig) -> CampaignReport:
    """Enhanced and non-redundant operators agree up to pair-sharing closure."""
    rep = CampaignReport("variant-equivalence")
    hits = {c: 0 for c in range(1, 6)}
    classic_fail = 0
    sizes = range(1, cfg.vi_size + 1)
    for k in sizes:
        names = var_names(k)
        ctx = AnalysisContext(names, cfg.theory)
        pool = binding_pool(names)
        for d in canonical_elements(names):
            for b in pool:
                rep.cases += 1
                enh = amgu(d, b, ctx, Variant.ENHANCED)
                opt = amgu(d, b, ctx, Variant.SFL2)
                if not enh.is_bottom:
                    hits[sharing_case(d, b.lhs, b.rhs)] += 1
                if _psd_key(enh) != _psd_key(opt):
                    rep.failure_count += 1
                    if len(rep.failures) < cfg.max_failures:
                        rep.failures.append(
                            {
                                "input": {"element": element_json(d), "binding": str(b)},
                                "expected": str(enh),
                                "got": str(opt),
                                "check": "psd-equivalence",
                            }
                        )
                cls = amgu(d, b, ctx, Variant.CLASSIC)
                if not leq(enh, cls):
                    classic_fail += 1
                    rep.failure_count += 1
                    if len(rep.failures) < cfg.max_failures:
                        rep.failures.append(
                            {
                                "input": {"element": element_json(d), "binding": str(b)},
                                "expected": f"below {cls}",
                                "got": str(enh),
                                "check": "enhanced-below-classic",
                            }
                        )
    rep.extras = {
        "vi_sizes": list(sizes),
        "theory": cfg.theory.value,
        "case_hits": {str(c): n for c, n in hits.items()},
        "all_cases_hit": all(n > 0 for n in hits.values()),
        "classic_dominance_failures": classic_fail,
        "elements": "one per renaming orbit",
    }
    if not rep.extras["all_cases_hit"]:
        rep.failure_count += 1
        rep.failures.append(
            {"input": "case coverage", "expected": "every case hit", "got": rep.extras["case_hits"]}
        )
    return rep


def psd_preserving_edits(sh: frozenset) -> list[frozenset]:
    """Sharing sets one group away from ``sh`` with the same closure."""
    closure = _psd(sh)
    out = [sh | {g} for g in sorted(closure - sh, key=sorted)]
    for g in sorted(sh, key=sorted):
        smaller = sh - {g}
        if _psd(smaller) == closure:
            out.append(smaller)
    return out


class _Vectors:
    """Memoized closure keys of ``amgu(e, b)`` for every pool binding ``b``."""

    def __init__(self, ctx: AnalysisContext, pool):
        self.ctx = ctx
        self.pool = pool
        self.next: dict = {}
        self.ids: dict = {}
        self.vec: dict = {}

    def successors(self, e):
        r = self.next.get(e)
        if r is None:
            r = tuple(amgu(e, b, self.ctx) for b in self.pool)
            self.next[e] = r
        return r

    def vector_id(self, e) -> int:
        v = self.vec.get(e)
        if v is None:
            key = tuple(_psd_key(n) for n in self.successors(e))
            v = self.ids.setdefault(key, len(self.ids))
            self.vec[e] = v
        return v


def congruence(cfg: CampaignConfig) -> CampaignReport:
    """Closure-preserving edits never change the closure of any operation's result."""
    rep = CampaignReport("congruence")
    counts = {"pairs": 0, "aunify": 0, "lub": 0, "aproj": 0}
    for k in range(1, cfg.vi_size + 1):
        names = var_names(k)
        vi = frozenset(names)
        ctx = AnalysisContext(names, cfg.theory)
        pool = binding_pool(names)
        vec = _Vectors(ctx, pool)
        shs = all_sharing_sets(names)
        subsets = all_subsets(names)
        n_elements = len(shs) * len(subsets) ** 2

        def fail(check, d1, d2, detail, expected, got):
            rep.failure_count += 1
            if len(rep.failures) < cfg.max_failures:
                rep.failures.append(
                    {
                        "input": {"d1": element_json(d1), "d2": element_json(d2), "op": detail},
                        "expected": expected,
                        "got": got,
                        "check": check,
                    }
                )

        # lub and projection only touch the sharing component of the edited
        # element, and edits leave freeness and linearity alone, so these
        # checks factor through the sharing sets.
        sh_pairs = [(sh, e) for sh in shs for e in psd_preserving_edits(sh)]
        for sh1, sh2 in sh_pairs:
            for other in shs:
                if _psd(sh1 | other) != _psd(sh2 | other):
                    d1 = SflElement(vi, sh1, frozenset(), frozenset())
                    fail("lub", d1, replace(d1, sh=sh2), {"lub_with": S.sorted_groups(other)}, "", "")
            for vs in subsets:
                if _psd(S.aexists(sh1, vs)) != _psd(S.aexists(sh2, vs)):
                    d1 = SflElement(vi, sh1, frozenset(), frozenset())
                    fail("aproj", d1, replace(d1, sh=sh2), {"aproj": sorted(vs)}, "", "")
        n_pairs = len(sh_pairs) * len(subsets) ** 2
        counts["pairs"] += n_pairs
        counts["lub"] += n_pairs * n_elements
        counts["aproj"] += n_pairs * len(subsets)

        for sh1, sh2 in sh_pairs:
            for f in subsets:
                for l in subsets:  # noqa: E741
                    d1 = SflElement(vi, sh1, f, l)
                    d2 = SflElement(vi, sh2, f, l)
                    if d1.is_bottom or d2.is_bottom:
                        continue
                    counts["aunify"] += len(pool) + len(pool) ** 2
                    if vec.vector_id(d1) == vec.vector_id(d2):
                        s1, s2 = vec.successors(d1), vec.successors(d2)
                        bad = [
                            i
                            for i in range(len(pool))
                            if s1[i] != s2[i] and vec.vector_id(s1[i]) != vec.vector_id(s2[i])
                        ]
                        for i in bad[:1]:
                            j = next(
                                j
                                for j, (a, b) in enumerate(zip(vec.successors(s1[i]), vec.successors(s2[i])))
                                if _psd_key(a) != _psd_key(b)
                            )
                            fail(
                                "aunify",
                                d1,
                                d2,
                                {"bindings": [str(pool[i]), str(pool[j])]},
                                str(vec.successors(s1[i])[j]),
                                str(vec.successors(s2[i])[j]),
                            )
                    else:
                        i = next(
                            i
                            for i, (a, b) in enumerate(zip(vec.successors(d1), vec.successors(d2)))
                            if _psd_key(a) != _psd_key(b)
                        )
                        fail(
                            "aunify",
                            d1,
                            d2,
                            {"bindings": [str(pool[i])]},
                            str(vec.successors(d1)[i]),
                            str(vec.successors(d2)[i]),
                        )
    rep.cases = counts["aunify"] + counts["lub"] + counts["aproj"]
    rep.extras = {
        "vi_sizes": list(range(1, cfg.vi_size + 1)),
        "theory": cfg.theory.value,
        "edited_pairs": counts["pairs"],
        "aunify_sequences": counts["aunify"],
        "lub_instances": counts["lub"],
        "aproj_instances": counts["aproj"],
        "max_sequence_length": 2,
    }
    return rep


_DISTINGUISH = (Observable.CON, Observable.PS, Observable.F, Observable.L)


def _observe(d):
    return tuple(observables(d, r) for r in _DISTINGUISH)


def find_witness(d1, d2, ctx, pool, max_len: int = 3, budget: int = 20_000):
    """A binding sequence after which some observable tells ``d1`` and ``d2`` apart."""
    frontier = [((), d1, d2)]
    tried = 0
    for _ in range(max_len + 1):
        nxt = []
        for bs, e1, e2 in frontier:
            tried += 1
            if _observe(e1) != _observe(e2):
                return list(bs)
            if tried > budget:
                return None
            if len(bs) < max_len:
                for b in pool:
                    a1, a2 = amgu(e1, b, ctx), amgu(e2, b, ctx)
                    if a1 != a2:
                        nxt.append((bs + (b,), a1, a2))
        frontier = nxt
    return None


def minimality(cfg: CampaignConfig) -> CampaignReport:
    """Pairs with different closures are told apart by some sequence."""
    rng = random.Random(cfg.seed)
    names = var_names(min(cfg.vi_size, 3))
    ctx = AnalysisContext(names, cfg.theory)
    pool = binding_pool(names)
    elements = [d for d in all_elements(names) if not d.is_bottom]
    rep = CampaignReport("minimality", always_ok=True)
    found = 0
    lengths: dict = {}
    not_found = []
    while rep.cases < cfg.iters:
        d1, d2 = rng.choice(elements), rng.choice(elements)
        if rep.cases % 2:
            # same freeness and linearity, so only sharing can tell them apart
            d2 = SflElement(d1.vi, d2.sh, d1.f, d1.l)
            if d2.is_bottom:
                continue
        if _psd_key(d1) == _psd_key(d2):
            continue
        rep.cases += 1
        w = find_witness(d1, d2, ctx, pool)
        if w is None:
            if len(not_found) < cfg.max_failures:
                not_found.append({"d1": element_json(d1), "d2": element_json(d2)})
            continue
        found += 1
        lengths[len(w)] = lengths.get(len(w), 0) + 1
    rep.extras = {
        "vi_size": len(names),
        "seed": cfg.seed,
        "witness_found": found,
        "witness_rate": round(found / rep.cases, 4) if rep.cases else 1.0,
        "witness_lengths": {str(k): v for k, v in sorted(lengths.items())},
        "not_found_within_bound": not_found,
        "bound": "sequences of length <= 3 from the binding pool",
    }
    return rep


def invariance(cfg: CampaignConfig) -> CampaignReport:
    """Solving an equation set in different orders gives the same abstraction."""
    rng = random.Random(cfg.seed)
    names = cfg.names
    ctx = AnalysisContext(names, cfg.theory)
    rep = CampaignReport("invariance")
    solvable = differing = 0
    for _ in range(cfg.iters):
        n = rng.randint(1, 4)
        eqs = []
        for _ in range(n):
            lhs = random_term(rng, names, cfg.depth)
            if rng.random() < 0.5:
                lhs = Var(rng.choice(names))
            eqs.append((lhs, random_term(rng, names, cfg.depth)))
        variants = [eqs, eqs[::-1], [(t, s) for s, t in eqs]]
        shuffled = eqs[:]
        rng.shuffle(shuffled)
        variants.append([(t, s) if rng.random() < 0.5 else (s, t) for s, t in shuffled])
        sols = [solve(e, cfg.theory) for e in variants]
        rep.cases += 1
        if all(s is None for s in sols):
            continue
        if any(s is None for s in sols):
            got = "satisfiability differs"
            abstracts = None
        else:
            solvable += 1
            if len(set(sols)) > 1:
                differing += 1
            abstracts = [alpha_sfl(s, ctx) for s in sols]
            if all(a == abstracts[0] for a in abstracts):
                continue
            got = [str(a) for a in abstracts]
        rep.failure_count += 1
        if len(rep.failures) < cfg.max_failures:
            rep.failures.append(
                {
                    "input": [f"{s} = {t}" for s, t in eqs],
                    "expected": "same abstraction for every order",
                    "got": got,
                }
            )
    rep.extras = {
        "seed": cfg.seed,
        "theory": cfg.theory.value,
        "solvable": solvable,
        "different_solved_forms": differing,
    }
    return rep


def uco_laws(names: Sequence[str]) -> dict:
    """Check idempotence, extensiveness and monotonicity of the closures.

    Monotonicity is checked on every pair ``sh ⊂ sh ∪ {g}``; any inclusion
    is a chain of such steps.
    """
    vi = frozenset(names)
    ops = {
        "star": S.star,
        "rho_con": S.rho_con,
        "rho_ps": lambda sh: S.rho_ps(sh, vi),
        "rho_psd": S.rho_psd,
    }
    groups = all_groups(tuple(sorted(vi)))
    shs = all_sharing_sets(tuple(sorted(vi)))
    out = {}
    for name, op in ops.items():
        image = {sh: op(sh) for sh in shs}
        bad = 0
        for sh, r in image.items():
            if not sh <= r:
                bad += 1
            if op(r) != r:
                bad += 1
            for g in groups:
                if g not in sh and not r <= image[sh | {g}]:
                    bad += 1
        out[name] = bad
    return out


def _sigmas_upto_cap(cfg: CampaignConfig):
    """Substitutions by increasing weight, all of them (no renaming reduction)."""
    names = cfg.names
    max_w = (8 if cfg.depth >= 2 else 5) * len(names)
    n = 0
    for w in range(0, max_w + 1):
        for sigma in sigmas_of_weight(names, cfg.depth, w, cfg.theory, symmetric=False):
            if n >= cfg.cap:
                return
            n += 1
            yield sigma


def structural(cfg: CampaignConfig) -> CampaignReport:
    """Closure laws on sharing sets plus the corollary inclusions on substitutions."""
    rep = CampaignReport("structural")
    laws = uco_laws(var_names(cfg.vi_size))
    n_sh = 2 ** (2**cfg.vi_size - 1)
    for name, bad in laws.items():
        rep.cases += n_sh
        if bad:
            rep.failure_count += bad
            rep.failures.append({"input": name, "expected": "closure laws hold", "got": f"{bad} violations"})
    checked = 0
    bad = []
    for sigma in _sigmas_upto_cap(cfg):
        checked += 1
        v = _corollary_violation(sigma, frozenset(cfg.names))
        if v:
            bad.append((sigma, v))
    rep.cases += checked
    rep.failure_count += len(bad)
    for sigma, (expected, got) in bad[: cfg.max_failures]:
        rep.failures.append({"input": str(sigma), "expected": expected, "got": got})
    rep.extras = {"closure_law_violations": laws, "substitutions_checked": checked}
    return rep


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    if cfg.kind in ("soundness", "dominance"):
        checks = (cfg.kind,)
        return _concrete_report(cfg.kind, cfg, scan_concrete(cfg, checks), checks)
    return {
        "congruence": congruence,
        "variant-equivalence": variant_equivalence,
        "minimality": minimality,
        "invariance": invariance,
        "structural": structural,
    }[cfg.kind](cfg)
