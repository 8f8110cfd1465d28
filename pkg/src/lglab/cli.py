"""Command-line front end.

Every command prints a single flat JSON record to stdout (numeric values
rounded to 15 significant digits); ``lgi-sweep`` and ``reproduce-fig2``
additionally write the sweep dataset to a CSV or JSON file with a stable
column set, LF line endings and deterministic bytes for fixed arguments.

Exit codes: 0 success, 2 usage or validation error, 1 internal invariant
failure.

An optional JSON config file (flat map mirroring the long option names) can
supply defaults; precedence is flags > config > built-in defaults. The
environment variable ``LGLAB_SEED`` overrides the default seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .experiment import RunSpec, empirical_nsit, run
from .interferometer import MZConfig, detection_probabilities, input_state, output_observable, path_observable
from .lgi import sweep_beta
from .mrcheck import CorrelationTriple, macrorealist_feasible
from .quasiprob import nsit_check, quasi
from .weakval import mz_weak_values

SWEEP_COLUMNS = (
    "beta",
    "alpha",
    "K31",
    "K32",
    "K33",
    "K34",
    "w3",
    "w4",
    "p3",
    "p4",
    "violated",
)

UNDEFINED = "undefined"


class CliError(Exception):
    """Usage/validation error; maps to exit code 2."""


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _num(x: float) -> float:
    """Round to 15 significant digits for serialization."""
    return float(_fmt(x))


def _default_seed() -> int:
    env = os.environ.get("LGLAB_SEED")
    return int(env) if env is not None else 0


def _mz_config(merged: dict) -> MZConfig:
    beta = merged["beta"]
    if beta is None:
        raise CliError("--beta is required")
    if abs(beta) > 1.0:
        raise CliError(f"--beta must lie in [-1, 1], got {beta}")
    alpha = merged.get("alpha")
    if alpha is not None and abs(alpha**2 + beta**2 - 1.0) > 1e-9:
        raise CliError("--alpha and --beta must satisfy alpha^2 + beta^2 = 1")
    try:
        return MZConfig(beta=beta, alpha=alpha, phi=merged.get("phi") or 0.0)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def cmd_probabilities(merged: dict) -> dict:
    cfg = _mz_config(merged)
    p3, p4 = detection_probabilities(cfg)
    return {"beta": _num(cfg.beta), "alpha": _num(cfg.alpha), "phi": _num(cfg.phi),
            "p3": _num(p3), "p4": _num(p4)}


def cmd_weak_values(merged: dict) -> dict:
    cfg = _mz_config(merged)
    p3, p4 = detection_probabilities(cfg)
    w3, w4 = mz_weak_values(cfg, allow_undefined=True)
    rec = {"beta": _num(cfg.beta), "alpha": _num(cfg.alpha), "p3": _num(p3), "p4": _num(p4)}
    for name, w in (("w3", w3), ("w4", w4)):
        if w is None:
            rec[name] = UNDEFINED
            rec[f"{name}_anomalous"] = UNDEFINED
        else:
            rec[name] = _num(w.value.real)
            rec[f"{name}_anomalous"] = w.anomalous_real
    return rec


def _sweep_rows(merged: dict):
    n = merged["grid"]
    lo, hi = merged["min"], merged["max"]
    if n is None or n < 2:
        raise CliError("--grid must be an integer >= 2")
    if not (-1.0 <= lo < hi <= 1.0):
        raise CliError(f"sweep range must satisfy -1 <= min < max <= 1, got [{lo}, {hi}]")
    step = (hi - lo) / (n - 1)
    grid = [lo + k * step for k in range(n - 1)] + [hi]
    return sweep_beta(grid)


def _row_record(row) -> dict:
    return {
        "beta": _num(row.beta),
        "alpha": _num(row.alpha),
        "K31": _num(row.k31),
        "K32": _num(row.k32),
        "K33": _num(row.k33),
        "K34": _num(row.k34),
        "w3": UNDEFINED if row.w3 is None else _num(row.w3),
        "w4": UNDEFINED if row.w4 is None else _num(row.w4),
        "p3": _num(row.p3),
        "p4": _num(row.p4),
        "violated": "none" if row.violated_index is None else str(row.violated_index),
    }


def _write_sweep(path: str, fmt: str, rows) -> None:
    records = [_row_record(r) for r in rows]
    try:
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
                writer.writeheader()
                for rec in records:
                    writer.writerow(
                        {k: (_fmt(v) if isinstance(v, float) else v) for k, v in rec.items()}
                    )
        else:
            with open(path, "w", newline="") as fh:
                json.dump(records, fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        raise CliError(f"cannot write output file {path!r}: {exc}") from exc


def cmd_lgi_sweep(merged: dict) -> dict:
    fmt = merged["format"]
    if fmt not in ("csv", "json"):
        raise CliError(f"--format must be csv or json, got {fmt!r}")
    output = merged["output"]
    if not output:
        raise CliError("--output is required")
    rows = _sweep_rows(merged)
    _write_sweep(output, fmt, rows)
    violated = sum(1 for r in rows if r.violated_index is not None)
    return {"rows": len(rows), "violated_rows": violated, "output": output, "format": fmt}


def cmd_quasiprob(merged: dict) -> dict:
    cfg = _mz_config(merged)
    state = input_state(cfg)
    m2, m3 = path_observable(), output_observable()
    table = quasi(state, m2, m3)
    res_i, res_j = nsit_check(state, m2, m3)
    rec = {"beta": _num(cfg.beta), "alpha": _num(cfg.alpha)}
    for (mi, mj), v in sorted(table.q.items(), reverse=True):
        rec[f"q(m2={mi:+d},m3={mj:+d})"] = _num(v)
    rec["negativity"] = _num(table.negativity)
    rec["nsit_residual_m2"] = _num(res_i)
    rec["nsit_residual_m3"] = _num(res_j)
    return rec


def cmd_mr_check(merged: dict) -> dict:
    for key in ("e2", "e3", "e23"):
        if merged[key] is None:
            raise CliError(f"--{key} is required")
        if abs(merged[key]) > 1.0:
            raise CliError(f"--{key} must lie in [-1, 1], got {merged[key]}")
    verdict = macrorealist_feasible(
        CorrelationTriple(e2=merged["e2"], e3=merged["e3"], e23=merged["e23"])
    )
    return {
        "e2": _num(merged["e2"]),
        "e3": _num(merged["e3"]),
        "e23": _num(merged["e23"]),
        "feasible": verdict.feasible,
        "margin": _num(verdict.margin),
    }


def cmd_simulate(merged: dict) -> dict:
    cfg = _mz_config(merged)
    kind = merged["kind"]
    shots = merged["shots"]
    if kind not in ("interference", "path", "sequential"):
        raise CliError(f"--kind must be interference, path or sequential, got {kind!r}")
    if shots is None or shots < 1:
        raise CliError("--shots must be a positive integer")
    est = run(RunSpec(cfg=cfg, shots=shots, seed=merged["seed"], kind=kind))
    rec = {"beta": _num(cfg.beta), "alpha": _num(cfg.alpha), "kind": kind,
           "shots": est.total, "seed": int(merged["seed"])}
    for label in est.counts:
        rec[f"count[{label}]"] = est.counts[label]
        rec[f"estimate[{label}]"] = _num(est.estimates[label])
        rec[f"stderr[{label}]"] = _num(est.stderr[label])
    if "zero_count_outcomes" in est.metadata:
        rec["zero_count_stderr_rule"] = est.metadata["zero_count_stderr_rule"]
    return rec


def cmd_nsit(merged: dict) -> dict:
    cfg = _mz_config(merged)
    shots = merged["shots"]
    if shots is None or shots < 1:
        raise CliError("--shots must be a positive integer")
    gap, se = empirical_nsit(cfg, shots, merged["seed"])
    return {
        "beta": _num(cfg.beta),
        "alpha": _num(cfg.alpha),
        "shots": shots,
        "seed": int(merged["seed"]),
        "gap": _num(gap),
        "gap_stderr": _num(se),
        "true_gap": _num(cfg.alpha * cfg.beta),
    }


# (handler, {option: (type, default)})
COMMANDS = {
    "probabilities": (cmd_probabilities, {"beta": (float, None), "alpha": (float, None), "phi": (float, 0.0)}),
    "weak-values": (cmd_weak_values, {"beta": (float, None), "alpha": (float, None)}),
    "lgi-sweep": (
        cmd_lgi_sweep,
        {
            "grid": (int, None),
            "min": (float, -1.0),
            "max": (float, 1.0),
            "output": (str, None),
            "format": (str, "csv"),
        },
    ),
    "reproduce-fig2": (
        cmd_lgi_sweep,
        {
            "grid": (int, 1001),
            "min": (float, -1.0),
            "max": (float, 1.0),
            "output": (str, "fig2.csv"),
            "format": (str, "csv"),
        },
    ),
    "quasiprob": (cmd_quasiprob, {"beta": (float, None), "alpha": (float, None)}),
    "mr-check": (cmd_mr_check, {"e2": (float, None), "e3": (float, None), "e23": (float, None)}),
    "simulate": (
        cmd_simulate,
        {
            "beta": (float, None),
            "alpha": (float, None),
            "shots": (int, None),
            "seed": (int, None),
            "kind": (str, "interference"),
        },
    ),
    "nsit": (
        cmd_nsit,
        {"beta": (float, None), "alpha": (float, None), "shots": (int, None), "seed": (int, None)},
    ),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lglab",
        description="Interferometric Leggett-Garg toolkit: probabilities, weak "
        "values, LG sweeps, quasiprobabilities and Monte Carlo runs.",
    )
    parser.add_argument("--config", help="JSON file of default option values")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, options) in COMMANDS.items():
        p = sub.add_parser(name)
        for opt, (typ, _default) in options.items():
            p.add_argument(f"--{opt}", type=typ, default=None)
    return parser


def _merge(args: argparse.Namespace) -> dict:
    _, options = COMMANDS[args.command]
    config = {}
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config file {args.config!r}: {exc}") from exc
        if not isinstance(config, dict):
            raise CliError("config file must contain a flat JSON object")
    merged = {}
    for opt, (typ, default) in options.items():
        flag = getattr(args, opt)
        if flag is not None:
            merged[opt] = flag
        elif opt in config:
            merged[opt] = typ(config[opt])
        else:
            merged[opt] = default
    if "seed" in merged and merged["seed"] is None:
        merged["seed"] = _default_seed()
    return merged


def read_records(path: str) -> list[dict]:
    """Read back a CSV emitted by lgi-sweep, parsing numeric fields to float."""
    records = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rec = {}
            for key, raw in row.items():
                try:
                    rec[key] = int(raw)
                except ValueError:
                    try:
                        rec[key] = float(raw)
                    except ValueError:
                        rec[key] = raw
            records.append(rec)
    return records


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, _ = COMMANDS[args.command]
    try:
        merged = _merge(args)
        record = handler(merged)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(record))
    return 0


if __name__ == "__main__":
    sys.exit(main())
