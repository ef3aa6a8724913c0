"""Run every verification suite and write one report per theorem.

    python3 scripts/run_all_suites.py --trials 200 --seed 7 --jobs 4 --out reports/
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from cohiggs.suites import THEOREMS, run_suite


@dataclass
class SuiteConfig:
    trials: int = 100
    seed: int = 0
    jobs: int = 1
    bound: int = 9
    theorems: tuple = THEOREMS
    out: Path | None = None
    notes: bool = field(default=False)


def parse_args(argv=None) -> SuiteConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--bound", type=int, default=9)
    p.add_argument("--theorem", action="append", choices=THEOREMS, help="repeatable; default is all")
    p.add_argument("--out", type=Path, help="directory for <theorem>.json and <theorem>.txt")
    p.add_argument("--notes", action="store_true", help="print NOTE findings too")
    a = p.parse_args(argv)
    return SuiteConfig(a.trials, a.seed, a.jobs, a.bound, tuple(a.theorem or THEOREMS), a.out, a.notes)


def run(cfg: SuiteConfig) -> int:
    if cfg.out:
        cfg.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    print(f"{'theorem':<14}{'trials':>7}{'fail':>6}{'notes':>7}{'seconds':>9}")
    for theorem in cfg.theorems:
        start = time.perf_counter()
        report = run_suite(theorem, cfg.trials, cfg.seed, bound=cfg.bound, jobs=cfg.jobs)
        took = time.perf_counter() - start
        notes = [f for f in report.findings if f.status == "NOTE"]
        print(f"{theorem:<14}{report.trials:>7}{report.failures:>6}{len(notes):>7}{took:>9.2f}")
        if cfg.notes:
            for f in notes:
                print(f"    {f.line()}")
        for f in report.findings:
            if f.status == "FAIL":
                print(f"    {f.line()}")
        if cfg.out:
            (cfg.out / f"{theorem}.json").write_text(report.to_json() + "\n")
            (cfg.out / f"{theorem}.txt").write_text(report.to_text() + "\n")
        failed += not report.passed
    print("all suites passed" if not failed else f"{failed} suite(s) failed")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(run(parse_args()))
