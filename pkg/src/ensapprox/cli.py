"""Command-line interface.

Subcommands:
  approx      build a product approximator and sweep its error over lambda
  counts      unit/layer count comparison table across dimensions
  bounds      exact majority-error tail, Hoeffding bound, optional simulation
  probe       steepness-limit probe of a sigmoidal unit
  experiment  run the multi-copy ensemble protocol from a config file

Every subcommand prints a JSON document to stdout (or --out) and takes
--seed wherever randomness is involved.  Exit status is 0 on success, 2
for usage errors, 1 for domain errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from .activations import ActivationSpec, discriminatory_limit_probe
from .deeptree import build_deep_monomial_network, unit_count_comparison
from .ensemble import error_bound_report
from .experiment import (
    ExperimentConfig,
    emit_report,
    load_config,
    render_json,
    run_experiment,
)
from .shallow import build_monomial_network, monomial_sup_error

_DEFAULT_SCHEDULE = "0.2,0.1,0.05,0.025"


def _floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _activation(args) -> ActivationSpec:
    defaults = {"logistic": 0.0, "shifted-logistic": 1.0, "hyperbolic-sigmoid": 0.0, "hard-threshold": 0.0}
    offset = args.bias_offset if args.bias_offset is not None else defaults[args.activation]
    return ActivationSpec(kind=args.activation, bias_offset=offset)


def _add_activation_flags(sub, default: str) -> None:
    sub.add_argument(
        "--activation",
        choices=["logistic", "shifted-logistic", "hyperbolic-sigmoid", "hard-threshold"],
        default=default,
    )
    sub.add_argument("--bias-offset", type=float, default=None, help="expansion offset override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ensapprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="build a product approximator and sweep lambda")
    p.add_argument("--d", type=int, required=True, help="number of input variables")
    p.add_argument("--topology", choices=["shallow", "balanced", "chain"], default="shallow")
    p.add_argument("--lambda", dest="lambdas", type=_floats, default=None,
                   help=f"comma-separated input scales (default {_DEFAULT_SCHEDULE})")
    _add_activation_flags(p, "shifted-logistic")
    p.add_argument("--interior-samples", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("counts", help="unit and layer counts, flat vs tree")
    p.add_argument("--d", type=int, nargs="+", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bounds", help="majority-error tail and Hoeffding bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, default=None, help="enable Monte Carlo with this many trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("probe", help="steepness-limit probe of one unit")
    p.add_argument("--w", type=_floats, required=True, help="comma-separated input weights")
    p.add_argument("--x", type=_floats, required=True, help="comma-separated probe point")
    p.add_argument("--w0", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--lambdas", type=_floats, default=[1.0, 10.0, 100.0, 1000.0])
    _add_activation_flags(p, "logistic")
    p.add_argument("--out", default=None)

    p = sub.add_parser("experiment", help="run the multi-copy ensemble protocol")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--data", default=None, help="CSV dataset (alternative to --config)")
    p.add_argument("--label", default=None, help="label column name for --data")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    return parser


def _cmd_approx(args) -> str:
    activation = _activation(args)
    lambdas = args.lambdas or _floats(_DEFAULT_SCHEDULE)
    if args.topology == "shallow":
        nets = {lam: build_monomial_network(args.d, activation, lam) for lam in lambdas}
        last = nets[lambdas[-1]]
        unit_count = last.unit_count
        ensemble_layers = 1
    else:
        nets = {
            lam: build_deep_monomial_network(args.d, activation, lam, args.topology)
            for lam in lambdas
        }
        last = nets[lambdas[-1]]
        unit_count = last.unit_count
        ensemble_layers = last.ensemble_layers
    sweep = [
        {
            "lambda": lam,
            "sup_cube_error": monomial_sup_error(
                nets[lam].predict, args.d, args.interior_samples, args.seed
            ),
        }
        for lam in lambdas
    ]
    return render_json(
        {
            "d": args.d,
            "topology": args.topology,
            "activation": asdict(activation),
            "unit_count": unit_count,
            "ensemble_layers": ensemble_layers,
            "layer_count_with_leaves": ensemble_layers + 1,
            "sweep": sweep,
        }
    )


def _cmd_counts(args) -> str:
    rows = unit_count_comparison(args.d)
    return render_json({"rows": [row._asdict() for row in rows]})


def _cmd_bounds(args) -> str:
    report = error_bound_report(args.n, args.eps, trials=args.trials, seed=args.seed)
    doc = {
        "n": report.n,
        "epsilon": report.epsilon,
        "exact_tail": report.exact_tail,
        "hoeffding": report.hoeffding,
        "monte_carlo": asdict(report.monte_carlo) if report.monte_carlo else None,
    }
    return render_json(doc)


def _cmd_probe(args) -> str:
    result = discriminatory_limit_probe(
        _activation(args), args.w, args.w0, args.phi, args.lambdas, args.x
    )
    return render_json(
        {
            "case": result.case,
            "limit_value": result.limit_value,
            "values": [{"lambda": lam, "value": val} for lam, val in result.values],
        }
    )


def _cmd_experiment(args) -> str:
    if (args.config is None) == (args.data is None):
        raise ValueError("experiment needs exactly one of --config or --data")
    if args.config is not None:
        config = load_config(args.config)
    else:
        if args.label is None:
            raise ValueError("--data requires --label naming the label column")
        config = ExperimentConfig(dataset_kind="csv", dataset_path=args.data, label_column=args.label)
    if args.seed is not None:
        config = ExperimentConfig(**{**config.as_dict(), "seed": args.seed})
    report = run_experiment(config)
    return emit_report(report, format=args.format)


_HANDLERS = {
    "approx": _cmd_approx,
    "counts": _cmd_counts,
    "bounds": _cmd_bounds,
    "probe": _cmd_probe,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _HANDLERS[args.command](args)
        if args.out is not None:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (ValueError, OSError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
