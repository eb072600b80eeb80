"""Command-line front end: scenario runs, parameter sweeps, oracle checks.

    pass-robust run <config.toml> [--out DIR] [--seed N] [--trials N]
    pass-robust sweep <config.toml> --axis pt_dbm --values -10,-5,0,5,10 [...]
    pass-robust validate {lemma,adversary,socp-oracle,exclusion} [--seed N] [--out DIR]

Runs and sweeps write a fixed-schema CSV plus a JSON manifest into the
output directory; validation suites print one line per check and exit
nonzero on any failure.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from .experiments import (SWEEP_AXES, load_config, run_scenario, run_sweep,
                          write_csv, write_manifest)
from .validate import SUITES, run_validation


def _add_common(p):
    p.add_argument("--out", default="results", help="output directory (default: results)")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--trials", type=int, default=None, help="override the config trial count")


def _overrides(args):
    out = {}
    if args.seed is not None:
        out["seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        out["trials"] = args.trials
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pass-robust",
        description="Robust joint beamforming and pinching-antenna placement")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario and write a single CSV row")
    p_run.add_argument("config", help="TOML scenario file")
    _add_common(p_run)

    p_sweep = sub.add_parser("sweep", help="run the scenario once per axis value")
    p_sweep.add_argument("config", help="TOML scenario file")
    p_sweep.add_argument("--axis", required=True, choices=sorted(SWEEP_AXES),
                         help="parameter to sweep")
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated axis values")
    _add_common(p_sweep)

    p_val = sub.add_parser("validate", help="run an oracle check suite")
    p_val.add_argument("suite", choices=sorted(SUITES))
    p_val.add_argument("--seed", type=int, default=None)
    p_val.add_argument("--out", default=None,
                       help="also write the JSON report into this directory")
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse reads "--values -10,-5,0" as a missing argument (the comma
    # list is not a plain negative number); splice the pair into --values=...
    for i, tok in enumerate(argv[:-1]):
        if tok == "--values":
            argv[i:i + 2] = ["--values=" + argv[i + 1]]
            break
    args = build_parser().parse_args(argv)

    if args.command == "validate":
        report = run_validation(args.suite, seed=args.seed)
        for c in report["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            print(f"[{mark}] {c['name']}: value={c['value']:.6g} bound={c['bound']:.6g}"
                  + (f"  ({c['detail']})" if c["detail"] else ""))
        if args.out is not None:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"validate_{args.suite.replace('-', '_')}.json"
            with open(path, "w") as fh:
                json.dump(report, fh, indent=2)
                fh.write("\n")
            print(f"report written to {path}")
        return 0 if report["passed"] else 1

    config = load_config(args.config, overrides=_overrides(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    if args.command == "run":
        rows = [run_scenario(config)]
        csv_path = write_csv(out / "run.csv", rows)
        axis = values = None
    else:
        values = [float(v) for v in args.values.split(",") if v.strip() != ""]
        axis = args.axis
        rows = run_sweep(config, axis, values)
        csv_path = write_csv(out / f"sweep_{axis}.csv", rows)
    wall = time.perf_counter() - t0
    write_manifest(out / "manifest.json", config, wall,
                   " ".join(["pass-robust"] + argv),
                   [csv_path], axis=axis, values=values)
    for row in rows:
        print(", ".join(f"{k}={row[k]:.6g}" if isinstance(row[k], float)
                        else f"{k}={row[k]}" for k in row))
    print(f"wrote {csv_path} ({len(rows)} row{'s' if len(rows) != 1 else ''}, {wall:.1f} s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
