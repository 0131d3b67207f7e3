"""Run every sweep file under data/ and write one JSON report per sweep to reports/."""

import argparse
import json
import sys
from pathlib import Path

from herzog.cli import run

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=ROOT / "reports")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for cfg in sorted((ROOT / "data").glob("sweep_*.json")):
        out = args.out_dir / f"{cfg.stem}.report.json"
        code = run(["sweep", str(cfg), "--jobs", str(args.jobs), "--out", str(out), "--timing"])
        counts = json.loads(out.read_text())["counts"]
        print(f"{cfg.name:28s} exit {code}  {counts}")
        worst = max(worst, code)
    sys.exit(worst)


if __name__ == "__main__":
    main()
