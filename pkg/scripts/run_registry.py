"""Certify every registry case and print per-case timings."""
import argparse
import time
from dataclasses import dataclass

from gameseries.cases import REGISTRY_VERSION, registry, run_case


@dataclass
class Config:
    bound: int | None = None
    only: str | None = None


def main(cfg: Config) -> int:
    total, bad = 0.0, 0
    for case in registry().values():
        if cfg.only and cfg.only not in case.id:
            continue
        t0 = time.perf_counter()
        res = run_case(case, cfg.bound)
        dt = time.perf_counter() - t0
        total += dt
        for r in res:
            print(r.report())
            bad += not r.as_expected
        print(f"# {case.id}: {dt:.2f}s")
    print(f"# registry_version={REGISTRY_VERSION} unexpected={bad} total={total:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int)
    ap.add_argument("--only")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.bound, a.only)))
