#!/usr/bin/env python3
"""Run the full claim audit and write text + structured reports.

Usage: python scripts/run_audit.py [--trials N] [--seed S] [--out-dir DIR]
"""
import argparse
from pathlib import Path

from qfuzzy.lab import CLAIM_ORDER, AuditConfig, audit
from qfuzzy.reports import render_structured, render_text


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out-dir", default="audit-out")
    args = parser.parse_args()

    config = AuditConfig(trials=args.trials, seed=args.seed)
    reports = audit(set(CLAIM_ORDER), config)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "audit.txt").write_text(render_text(reports))
    (out_dir / "audit.json").write_text(render_structured(reports))

    failing = [r for r in reports if r.failures]
    print(render_text(reports))
    print(f"wrote {out_dir}/audit.txt and {out_dir}/audit.json")
    print(f"{len(reports)} reports, {len(failing)} with failures")


if __name__ == "__main__":
    main()
