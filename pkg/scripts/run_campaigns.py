"""Run the full set of campaigns at acceptance scale and write a JSON summary.

    python3 scripts/run_campaigns.py --out results.json
"""

import argparse
import json
import time

from sharelat.campaigns import CampaignConfig, run_campaign

PLAN = [
    *(
        CampaignConfig(kind, vi_size=vi, depth=2, theory=th, cap=1_000_000)
        for kind in ("soundness", "dominance")
        for vi in (2, 3)
        for th in ("ft", "rt")
    ),
    CampaignConfig("variant-equivalence", vi_size=3),
    CampaignConfig("congruence", vi_size=3),
    CampaignConfig("structural", vi_size=4, depth=2, cap=200_000),
    CampaignConfig("invariance", vi_size=4, depth=2, iters=10_000, exhaustive=False),
    CampaignConfig("minimality", vi_size=3, iters=200),
    CampaignConfig("soundness", vi_size=8, depth=2, iters=20_000, exhaustive=False, seed=1),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=None)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--only", default=None, help="run only this campaign kind")
    args = ap.parse_args()
    results = []
    all_ok = True
    for cfg in PLAN:
        if args.only and cfg.kind != args.only:
            continue
        cfg.workers = args.workers
        t0 = time.perf_counter()
        rep = run_campaign(cfg)
        dt = time.perf_counter() - t0
        all_ok &= rep.ok
        print(f"{cfg.kind:20} vi={cfg.vi_size} {cfg.theory.value} cases={rep.cases} "
              f"failures={rep.failure_count} {'ok' if rep.ok else 'FAILED'} {dt:.1f}s")
        results.append({"config": {"kind": cfg.kind, "vi_size": cfg.vi_size, "depth": cfg.depth,
                                   "theory": cfg.theory.value, "exhaustive": cfg.exhaustive,
                                   "seed": cfg.seed, "iters": cfg.iters, "cap": cfg.cap},
                        "seconds": round(dt, 2), "report": rep.to_json()})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2)
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
