"""Command-line front end: simulate, estimate, theory, mc subcommands.

Exit codes: 0 success, 1 runtime failure, 2 invalid usage/configuration.
All randomness flows from explicit seeds; nothing is seeded from the clock.
"""

import argparse
import json
import math
import sys

from . import fou, lse, montecarlo, theory
from .errors import FracouError, ConfigError, DomainError
from .fbm import RngSeed
from .fou import ModelParams, SamplingScheme

_MC_KEYS = {
    "theta",
    "hurst",
    "x0",
    "replications",
    "seed",
    "stream",
    "ef2_mode",
    "eta",
    "dlt",
    "oversample",
    "gamma",
    "n_list",
    "schedule",
    "out_json",
    "out_csv",
}
_MC_REQUIRED = {"theta", "hurst", "replications", "seed"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracou",
        description="Fractional Ornstein-Uhlenbeck simulation and LSE verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate one observed path to CSV")
    _add_model_flags(sim)
    sim.add_argument("--x0", type=float, default=0.0)
    sim.add_argument("--oversample", type=int, default=8)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--stream", type=int, default=0)
    sim.add_argument("--out", required=True, help="output CSV path ('-' for stdout)")
    sim.set_defaults(func=cmd_simulate)

    est = sub.add_parser("estimate", help="LSE from a path CSV, JSON to stdout")
    est.add_argument("--in", dest="infile", required=True, help="path CSV from simulate")
    est.set_defaults(func=cmd_estimate)

    theo = sub.add_parser("theory", help="closed-form constants and bound budget")
    _add_model_flags(theo)
    theo.add_argument("--ef2", choices=["asymptotic", "quadrature"], default="asymptotic")
    theo.add_argument("--eta", type=float)
    theo.add_argument("--dlt", type=float)
    theo.set_defaults(func=cmd_theory)

    mc = sub.add_parser("mc", help="Monte Carlo study from a JSON config")
    mc.add_argument("config", help="JSON run configuration")
    mc.add_argument("--threads", type=int, default=None)
    mc.set_defaults(func=cmd_mc)
    return parser


def _add_model_flags(p):
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--hurst", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--delta", type=float)
    grid.add_argument("--gamma", type=float)


def _scheme_from_args(args, oversample: int = 8) -> SamplingScheme:
    if args.delta is not None:
        return SamplingScheme(n=args.n, delta=args.delta, oversample=oversample)
    return SamplingScheme.from_gamma(args.n, args.gamma, oversample=oversample)


def cmd_simulate(args) -> int:
    params = ModelParams(theta=args.theta, hurst=args.hurst, x0=args.x0)
    if params.hurst >= 0.75:
        print(
            "warning: H >= 3/4 is outside the Berry-Esseen range; "
            "theory/mc outputs are unavailable for this path",
            file=sys.stderr,
        )
    scheme = _scheme_from_args(args, oversample=args.oversample)
    path = fou.simulate_path(params, scheme, RngSeed(args.seed, args.stream))
    if args.out == "-":
        fou.write_path_csv(path, sys.stdout)
    else:
        fou.write_path_csv(path, args.out)
    return 0


def cmd_estimate(args) -> int:
    x, delta = fou.read_path_csv(args.infile)
    result = lse.estimate_series(x, delta)
    print(
        json.dumps(
            {
                "theta_hat": result.theta_hat,
                "numerator": result.numerator,
                "denominator": result.denominator,
                "n": result.n,
                "delta": result.delta,
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_theory(args) -> int:
    params = ModelParams(theta=args.theta, hurst=args.hurst)
    if args.gamma is not None:
        lo, hi = theory.gamma_window(params.hurst)
        if not (lo < args.gamma < hi):
            raise ConfigError(
                f"--gamma {args.gamma} outside the admissible interval ({lo:.6g}, {hi:.6g})"
            )
    scheme = _scheme_from_args(args)
    consts = theory.constants(params, scheme, ef2_mode=args.ef2)
    if (args.eta is None) != (args.dlt is None):
        raise ConfigError("--eta and --dlt must be given together")
    if args.eta is not None:
        budget_obj = theory.bound_budget(scheme, params, args.eta, args.dlt)
        budget = dict(budget_obj.terms(), total=budget_obj.total, constant_c=1,
                      note="rate-only: theorem constant c unknown")
    else:
        budget = None
    print(
        json.dumps(
            {
                "alpha_n": consts.alpha_n,
                "alpha_limit_rate": consts.alpha_limit_rate,
                "a_theta_h": consts.a_theta_h,
                "ef2": consts.ef2,
                "ef2_source": consts.ef2_source,
                "lambda_n": consts.lambda_n,
                "sigma_h2": consts.sigma_h2,
                "budget": budget,
            },
            sort_keys=True,
        )
    )
    return 0


def _load_mc_config(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError("mc config must be a JSON object")
    unknown = set(doc) - _MC_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = _MC_REQUIRED - set(doc)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")
    params = ModelParams(
        theta=doc["theta"], hurst=doc["hurst"], x0=doc.get("x0", 0.0)
    )
    oversample = doc.get("oversample", 8)
    gamma = doc.get("gamma")
    if "schedule" in doc:
        if gamma is not None or "n_list" in doc:
            raise ConfigError("give either 'schedule' or ('n_list' and 'gamma'), not both")
        entries = doc["schedule"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError("'schedule' must be a nonempty list of {n, delta}")
        schedule = []
        for entry in entries:
            extra = set(entry) - {"n", "delta"}
            if extra:
                raise ConfigError(f"unknown schedule keys: {sorted(extra)}")
            schedule.append(
                SamplingScheme(n=entry["n"], delta=entry["delta"], oversample=oversample)
            )
    elif "n_list" in doc and gamma is not None:
        if not doc["n_list"]:
            raise ConfigError("'n_list' must be nonempty")
        schedule = [
            SamplingScheme.from_gamma(n, gamma, oversample=oversample)
            for n in doc["n_list"]
        ]
    else:
        raise ConfigError("config needs 'schedule' or both 'n_list' and 'gamma'")
    config = montecarlo.McConfig(
        params=params,
        schedule=schedule,
        replications=doc["replications"],
        base_seed=RngSeed(doc["seed"], doc.get("stream", 0)),
        ef2_mode=doc.get("ef2_mode", "asymptotic"),
        eta=doc.get("eta"),
        dlt=doc.get("dlt"),
        gamma=gamma,
    )
    return config, doc.get("out_json"), doc.get("out_csv")


def cmd_mc(args) -> int:
    config, out_json, out_csv = _load_mc_config(args.config)
    report = montecarlo.run(config, threads=args.threads)
    payload = json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if out_json:
        with open(out_json, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if out_csv:
        with open(out_csv, "w") as fh:
            fh.write(",".join(montecarlo.CSV_COLUMNS) + "\n")
            for res in report.results:
                cells = []
                for value in res.csv_row():
                    if isinstance(value, float):
                        cells.append("" if math.isnan(value) else f"{value:.17g}")
                    else:
                        cells.append(str(value))
                fh.write(",".join(cells) + "\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except (ConfigError, DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FracouError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - unexpected runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
