"""dgchirp command line: certify frames, run recovery and Monte Carlo sweeps, time the decoder.

Every run writes <out>.csv (one row per trial and metric) and <out>.json
(config echo, summary, wall-clock, pass/fail).  Exit status is 0 when every
asserted bound holds, 1 on a bound violation and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass

from . import __version__, bench, lab
from .decoder import RecoveryOptions
from .frame import FrameParams

CSV_SCHEMA = "dgchirp-records/1"
COMMANDS = ("verify", "recover", "strip", "crossterm", "l2l2", "bench")

# per-command defaults; a --config file overrides these and flags override both
DEFAULTS = {
    "verify": {"m": 3, "r": 0},
    "recover": {"m": 7, "r": 0, "k": 3, "trials": 500},
    "strip": {"m": 11, "r": 0, "k": 4, "epsilon": 0.5, "trials": 1000},
    "crossterm": {"m": 9, "r": 0, "k": 4, "delta": 0.01, "trials": 200},
    "l2l2": {"m": 5, "r": 0, "k": 3, "epsilon": 0.5, "sigma_data": 0.01, "sigma_meas": 0.01,
             "trials": 200},
    "bench": {"m": 9, "r": 0, "k": 3, "trials": 200},
}
COMMON = {"m": 3, "r": 0, "k": 3, "epsilon": 0.5, "delta": 0.01, "sigma_data": 0.0,
          "sigma_meas": 0.0, "trials": 100, "seed": 0, "jobs": 1, "out": None,
          "max_retries": 2, "kerdock": False}


class UsageError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    m: int
    r: int
    k: int
    epsilon: float
    delta: float
    sigma_data: float
    sigma_meas: float
    trials: int
    seed: int
    out_path: str
    jobs: int = 1
    max_retries: int = 2
    kerdock: bool = False

    def validate(self) -> FrameParams:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.trials < 1:
            raise UsageError("trials must be at least 1")
        if self.jobs < 1:
            raise UsageError("jobs must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        try:
            params = FrameParams(self.m, self.r)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if self.command != "verify" and self.k < 1:
            raise UsageError("k must be at least 1")
        if self.command in ("strip", "l2l2") and not 0 < self.epsilon < 1:
            raise UsageError("epsilon must lie in (0, 1)")
        if self.command == "crossterm" and not 0 < self.delta < 1:
            raise UsageError("delta must lie in (0, 1)")
        if self.sigma_data < 0 or self.sigma_meas < 0:
            raise UsageError("noise levels must be nonnegative")
        return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dgchirp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "verify": "exact certificates for a small frame (m <= 5)",
        "recover": "noiseless planted recovery, support and coefficient accuracy",
        "strip": "Monte Carlo check of the statistical isometry",
        "crossterm": "Monte Carlo check of cross-term concentration",
        "l2l2": "noisy recovery against the l2/l2 error bound",
        "bench": "recovery wall-clock across r and backends",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--m", type=int)
        p.add_argument("--r", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--epsilon", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--sigma-data", type=float)
        p.add_argument("--sigma-meas", type=float)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output path prefix for .csv and .json")
        p.add_argument("--jobs", type=int, help="worker processes for trials")
        p.add_argument("--max-retries", type=int)
        p.add_argument("--kerdock", action="store_true", default=None,
                       help="add the nearest Kerdock matrix as a candidate (r = 0)")
        p.add_argument("--config", help="JSON file of defaults; flags take precedence")
    return parser


def resolve_config(ns: argparse.Namespace) -> ExperimentConfig:
    values = dict(COMMON)
    values.update(DEFAULTS[ns.command])
    if ns.config:
        try:
            with open(ns.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if not isinstance(loaded, dict):
            raise UsageError("config must be a JSON object")
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if key == "out_path":
                key = "out"
            if key not in values:
                raise UsageError(f"unknown config key {key!r}")
            values[key] = value
    for key in values:
        flag = getattr(ns, key, None)
        if flag is not None:
            values[key] = flag
    out = values.pop("out") or f"dgchirp-{ns.command}"
    return ExperimentConfig(command=ns.command, out_path=out, **values)


def _dispatch(cfg: ExperimentConfig, params: FrameParams):
    opts = RecoveryOptions(max_retries=cfg.max_retries, kerdock_projection=cfg.kerdock,
                           seed=cfg.seed)
    if cfg.command == "verify":
        if params.m > 5:
            raise UsageError("verify is exhaustive and needs m <= 5")
        bundle = lab.verify_suite(params, raise_on_failure=False)
        records = [lab.ExperimentRecord(i, params.m, params.r, 0, cfg.seed, c["check_name"],
                                        c["violations"], 0, c["violations"] == 0)
                   for i, c in enumerate(bundle["checks"])]
        return lab.ExperimentResult("verify", bundle, records, bundle["passed"])
    if cfg.command == "recover":
        return lab.recovery_experiment(params, cfg.k, cfg.trials, cfg.seed, opts, jobs=cfg.jobs)
    if cfg.command == "strip":
        sp = lab.StripParams(cfg.k, cfg.epsilon, cfg.trials)
        try:
            sp.delta_bound(params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return lab.strip_montecarlo(params, sp, cfg.seed, jobs=cfg.jobs)
    if cfg.command == "crossterm":
        if cfg.k < 2:
            raise UsageError("crossterm needs k >= 2")
        return lab.gamma_experiment(params, cfg.k, cfg.delta, cfg.trials, cfg.seed, jobs=cfg.jobs)
    if cfg.command == "l2l2":
        noise = lab.NoiseModel(cfg.sigma_data, cfg.sigma_meas)
        return lab.l2l2_experiment(params, cfg.k, noise, cfg.epsilon, cfg.trials, cfg.seed,
                                   opts, jobs=cfg.jobs)
    return _bench(cfg, params)


def _bench(cfg: ExperimentConfig, params: FrameParams):
    if params.m < 5:
        raise UsageError("bench needs m >= 5 so that r = 2 exists")
    ms = (params.m, params.m + 2) if params.m + 2 <= 25 else (params.m,)
    report = bench.run(ms=ms, k=cfg.k, trials=cfg.trials, warmup=max(1, cfg.trials // 2),
                       seed=cfg.seed)
    records = []
    for res in report["recovery"]:
        for row in res["rows"]:
            records.append(lab.ExperimentRecord(
                len(records), row["m"], row["r"], row["k"], cfg.seed,
                f"ms_per_recovery_{res['backend']}", row["ms_per_recovery"], float("nan"), True))
            budget = row["k"] * (row["m"] + 2) + row["k"] ** 2
            records.append(lab.ExperimentRecord(
                len(records), row["m"], row["r"], row["k"], cfg.seed,
                f"column_evaluations_{res['backend']}", row["max_column_evaluations"], budget,
                row["max_column_evaluations"] <= budget))
        records.append(lab.ExperimentRecord(
            len(records), res["m"], 2, res["k"], cfg.seed, f"time_ratio_r2_r0_{res['backend']}",
            res["ratio_r2_r0"], 2.0, res["passed"]))
    report["table"] = bench.format_report(report)
    ok = report["passed"] and all(rec.passed for rec in records)
    return lab.ExperimentResult("bench", report, records, ok)


def write_outputs(cfg: ExperimentConfig, result, wall: float) -> None:
    records = sorted(result.records, key=lambda rec: (rec.trial_id, rec.metric_name))
    with open(cfg.out_path + ".csv", "w", newline="") as fh:
        fh.write(f"# {CSV_SCHEMA} command={cfg.command}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(lab.ExperimentRecord.CSV_FIELDS)
        for rec in records:
            w.writerow(rec.row())
    summary = {"config": asdict(cfg), "summary": result.summary, "passed": result.passed,
               "wall_clock_s": wall, "version": __version__, "csv_schema": CSV_SCHEMA}
    with open(cfg.out_path + ".json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def run(cfg: ExperimentConfig) -> int:
    params = cfg.validate()
    t0 = time.perf_counter()
    result = _dispatch(cfg, params)
    wall = time.perf_counter() - t0
    write_outputs(cfg, result, wall)
    if cfg.command == "bench":
        print(result.summary["table"])
    else:
        print(json.dumps(result.summary, sort_keys=True, default=str))
    if not result.passed:
        failing = next((rec for rec in result.records if not rec.passed), None)
        msg = f"bound violated in {cfg.command}"
        if failing is not None:
            msg += ": " + json.dumps(dict(zip(lab.ExperimentRecord.CSV_FIELDS, failing.row())))
        print(msg, file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
        return run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dgchirp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
