"""Command-line driver: ``timebell {optimal,scan,simulate,lhv,frames,verify}``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments or
preconditions, 3 I/O failure. Every command prints its run manifest first
(as a ``#`` comment line) and then one or more CSV tables.

Parameters resolve as: command-line flag, then ``--config`` JSON entry, then
built-in default.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import asdict

import numpy as np

from . import lhv
from .experiment import estimate_chsh, parse_scheduler, run_experiment
from .io import (
    MANIFEST_NAME,
    RECORDS_NAME,
    SUMMARY_NAME,
    OutputTable,
    RunManifest,
    read_text,
    records_from_csv,
    records_to_csv,
    summary_to_json,
    write_text,
)
from .quantum import Hamiltonian, TimeSettings, chsh_analytic, chsh_value, optimal_settings
from .relativity import LABELS, Event, achievable_orderings, classify, critical_velocity, ordering_witnesses

DEFAULTS = {
    "delta_e": 1.0,
    "e_plus": None,
    "e_minus": None,
    "t0": 0.0,
    "seed": 0,
    "pairs": 100_000,
    "scheduler": "uniform",
    "steps": 9,
    "range": [-math.pi / 2, math.pi / 2],
    "out": "timebell-run",
}


class UsageError(Exception):
    """Invalid arguments or unmet preconditions (exit code 2)."""


def _resolve(args):
    params = dict(DEFAULTS)
    if args.config is not None:
        try:
            cfg = json.loads(read_text(args.config))
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config} is not valid JSON: {exc}") from exc
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        params.update(cfg)
        if "e_plus" in cfg or "e_minus" in cfg:
            params["delta_e"] = cfg.get("delta_e")
    explicit = {k: v for k, v in vars(args).items() if k in DEFAULTS and v is not None}
    if "e_plus" in explicit or "e_minus" in explicit:
        params["delta_e"] = None
    params.update(explicit)
    return params


def _hamiltonian(params):
    ep, em, de = params["e_plus"], params["e_minus"], params["delta_e"]
    try:
        if ep is not None or em is not None:
            if ep is None or em is None:
                raise UsageError("--e-plus and --e-minus must be given together")
            if de is not None and de != em - ep:
                raise UsageError("--delta-e conflicts with --e-plus/--e-minus")
            return Hamiltonian(ep, em)
        return Hamiltonian.from_gap(de)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _settings_params(settings):
    return {"t": settings.t, "t_prime": settings.t_prime, "u": settings.u, "u_prime": settings.u_prime}


def _emit(manifest, tables, out):
    out.write("# manifest " + json.dumps(asdict(manifest), sort_keys=True) + "\n")
    for name, table in tables:
        out.write(f"# table {name}\n")
        out.write(table.to_csv())


def cmd_optimal(params):
    h = _hamiltonian(params)
    s = optimal_settings(h, params["t0"])
    table = OutputTable(
        ("t", "t_prime", "u", "u_prime", "chsh_analytic", "chsh_value"),
        [(s.t, s.t_prime, s.u, s.u_prime, chsh_analytic(h, s), chsh_value(h, s))],
    )
    run = {"delta_e": h.delta_e, "e_plus": h.e_plus, "e_minus": h.e_minus, "t0": params["t0"]}
    return RunManifest("optimal", run), [("optimal", table)]


def scan_rows(h, t0, lo, hi, steps):
    """Rows ``(delta, u, u_prime, chsh_value)`` for wing-2 phase shears ``delta``."""
    base = optimal_settings(h, t0)
    rows = []
    for delta in np.linspace(lo, hi, steps).tolist():
        shift = delta / h.delta_e
        s = TimeSettings(base.t, base.t_prime, base.u + shift, base.u_prime + shift)
        rows.append((delta, s.u, s.u_prime, chsh_value(h, s)))
    return rows


def cmd_scan(params):
    h = _hamiltonian(params)
    steps = params["steps"]
    try:
        lo, hi = (float(x) for x in params["range"])
    except (TypeError, ValueError):
        raise UsageError("range must be two numbers") from None
    if steps < 1:
        raise UsageError("--steps must be >= 1")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi or (steps > 1 and lo == hi):
        raise UsageError(f"bad shear range [{lo}, {hi}]")
    rows = scan_rows(h, params["t0"], lo, hi, steps)
    run = {"delta_e": h.delta_e, "e_plus": h.e_plus, "e_minus": h.e_minus, "t0": params["t0"],
           "range": [lo, hi], "steps": steps}
    return RunManifest("scan", run), [("scan", OutputTable(("delta", "u", "u_prime", "chsh_value"), rows))]


def _simulation(params):
    h = _hamiltonian(params)
    n = params["pairs"]
    if n < 4:
        raise UsageError("--pairs must be >= 4")
    if params["seed"] < 0:
        raise UsageError("--seed must be non-negative")
    try:
        parse_scheduler(params["scheduler"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    s = optimal_settings(h, params["t0"])
    return h, s


def _summary_text(h, s, records):
    try:
        est = estimate_chsh(records)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return summary_to_json(est, chsh_value(h, s)), est


def cmd_simulate(params):
    h, s = _simulation(params)
    records = run_experiment(h, s, params["pairs"], params["seed"], params["scheduler"])
    summary, est = _summary_text(h, s, records)
    run = {"delta_e": h.delta_e, "e_plus": h.e_plus, "e_minus": h.e_minus, "t0": params["t0"],
           "settings": _settings_params(s), "pairs": params["pairs"], "seed": params["seed"],
           "scheduler": params["scheduler"], "out": params["out"]}
    manifest = RunManifest("simulate", run)
    out = params["out"]
    os.makedirs(out, exist_ok=True)
    write_text(os.path.join(out, MANIFEST_NAME), manifest.to_json())
    write_text(os.path.join(out, RECORDS_NAME), records_to_csv(records))
    write_text(os.path.join(out, SUMMARY_NAME), summary)
    table = OutputTable(
        ("chsh_value", "stderr", "analytic_value", "n_pairs"),
        [(est.value, est.stderr, chsh_value(h, s), est.n_pairs)],
    )
    return manifest, [("summary", table)]


def cmd_verify(params):
    """Recompute the summary from the records file and compare it byte for byte."""
    out = params["out"]
    manifest = RunManifest.from_json(read_text(os.path.join(out, MANIFEST_NAME)))
    run = manifest.params
    h = Hamiltonian(run["e_plus"], run["e_minus"])
    s = TimeSettings(**run["settings"])
    try:
        records = records_from_csv(read_text(os.path.join(out, RECORDS_NAME)))
    except ValueError as exc:
        raise UsageError(f"malformed records file: {exc}") from exc
    expected, _ = _summary_text(h, s, records)
    stored = read_text(os.path.join(out, SUMMARY_NAME))
    ok = expected == stored
    table = OutputTable(("out", "n_records", "summary_matches"), [(out, len(records), str(ok).lower())])
    return RunManifest("verify", {"out": out, "verified": ok}), [("verify", table)]


def cmd_lhv(params):
    labels = lhv.SettingLabels()
    pi_max, pi_wit = lhv.max_over_pi_strategies(labels)
    full_max, full_wit = lhv.max_over_full_strategies(labels)
    bounds = OutputTable(
        ("kind", "max_abs_bell", "strategies_scanned"),
        [("parameter_independent", pi_max, len(lhv.pi_strategies(labels))),
         ("full", full_max, len(lhv.full_strategies(labels)))],
    )
    rows = [("parameter_independent", wing, own, None, pi_wit.values[(wing, own)])
            for wing, own in labels.pi_keys()]
    rows += [("full", wing, own, other, full_wit.values[(wing, own, other)])
             for wing, own, other in labels.full_keys()]
    witnesses = OutputTable(("kind", "wing", "own", "other", "value"), rows)
    return RunManifest("lhv", {}), [("bounds", bounds), ("witnesses", witnesses)]


def parse_event(text, label):
    try:
        t, x = (float(p) for p in text.split(","))
        return Event(t, x, label)
    except ValueError:
        raise UsageError(f"cannot parse event {label}={text!r}; expected T,X") from None


def cmd_frames(params):
    specs = params["events"]
    events = [parse_event(spec, label) for spec, label in zip(specs, LABELS)]
    try:
        witnesses = ordering_witnesses(events)
        pairs = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            e1, e2 = events[i], events[j]
            pairs.append((f"{e1.label}-{e2.label}", classify(e1, e2).value, critical_velocity(e1, e2)))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    assert set(witnesses) == achievable_orderings(events)
    orderings = OutputTable(
        ("ordering", "witness_velocity"),
        sorted((" < ".join(o), v) for o, v in witnesses.items()),
    )
    run = {"events": {e.label: [e.t, e.x] for e in events}}
    return RunManifest("frames", run), [("pairs", OutputTable(("pair", "interval", "critical_velocity"), pairs)),
                 ("orderings", orderings)]


COMMANDS = {
    "optimal": cmd_optimal,
    "scan": cmd_scan,
    "simulate": cmd_simulate,
    "lhv": cmd_lhv,
    "frames": cmd_frames,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default parameters")
    energy = argparse.ArgumentParser(add_help=False)
    energy.add_argument("--delta-e", type=float, help="energy gap E- minus E+ (default 1)")
    energy.add_argument("--e-plus", type=float, help="energy of |+>; use with --e-minus")
    energy.add_argument("--e-minus", type=float, help="energy of |->; use with --e-plus")
    energy.add_argument("--t0", type=float, help="initial phase of the optimal settings (default 0)")

    parser = argparse.ArgumentParser(prog="timebell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("optimal", parents=[common, energy], help="optimal measurement times")
    p = sub.add_parser("scan", parents=[common, energy], help="CHSH value under a wing-2 phase shear")
    p.add_argument("--steps", type=int)
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"), help="shear range in radians")
    p = sub.add_parser("simulate", parents=[common, energy], help="Monte Carlo pair experiment")
    p.add_argument("--pairs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--scheduler", help="'uniform' (default) or 'fixed(i)', i in 0..3")
    p.add_argument("--out", help="output directory")
    sub.add_parser("lhv", parents=[common], help="local-realist bounds by enumeration")
    p = sub.add_parser("frames", parents=[common], help="event orderings across inertial frames")
    p.add_argument("events", nargs=3, metavar="T,X",
                   help="eta_pm, eta_prime, eta_dprime; put '--' first if a value is negative")
    p = sub.add_parser("verify", parents=[common], help="recompute a simulation summary")
    p.add_argument("--out", help="directory written by 'simulate'")
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        params = _resolve(args)
        if args.command == "frames":
            params["events"] = args.events
        manifest, tables = COMMANDS[args.command](params)
        _emit(manifest, tables, out)
    except UsageError as exc:
        print(f"timebell {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"timebell {args.command}: I/O error: {exc}", file=sys.stderr)
        return 3
    if args.command == "verify" and not manifest.params["verified"]:
        print("timebell verify: summary does not match records", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
