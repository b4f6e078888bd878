"""Command-line entry point: ``onebit-dl {convergence,sweep-t,sweep-n,single}``.

Exit codes: 0 success, 1 parameter error, 2 numeric divergence beyond the
failure threshold, 3 I/O error.
"""

import argparse
import logging
import math
import sys

from onebit_dl.errors import NumericDivergenceError, ParameterError
from onebit_dl.harness.config import SweepSpec, coerce, load_config
from onebit_dl.harness.experiments import run_convergence, run_sweep, run_trial
from onebit_dl.harness.outputs import emit_outputs
from onebit_dl.matio import save_matrix
from onebit_dl.model import RngStream

log = logging.getLogger("onebit_dl")

EXIT_PARAMETER, EXIT_DIVERGENCE, EXIT_IO = 1, 2, 3

DEFAULT_VALUES = {
    "sweep-t": (100, 200, 300, 400, 500, 600, 700, 800, 900, 1000),
    "sweep-n": (100, 200, 300, 400, 500),
    "convergence": (0.1, 1.0, 10.0),
}


class _Divergence(Exception):
    pass


def _parse_values(text, kind):
    try:
        return tuple(kind(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ParameterError(f"bad --values list {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="onebit-dl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "convergence": "cost J(D) versus iteration for several step sizes",
        "sweep-t": "NMSE versus number of training signals T",
        "sweep-n": "NMSE versus number of sign measurements n",
        "single": "one trial; also saves matrices and cost traces",
    }
    for name, help_text in helps.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value configuration file")
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--variant", choices=("l1", "l2", "both"))
        p.add_argument("--no-baseline", action="store_true")
        p.add_argument("--threads", type=int, default=1, help="concurrent Monte Carlo trials")
        if name != "single":
            p.add_argument("--values", help="comma-separated sweep values (mu values for convergence)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override any configuration field, e.g. --set T=500")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args):
    overrides = {}
    for item in args.set:
        if "=" not in item:
            raise ParameterError(f"--set expects KEY=VALUE, got {item!r}")
        key, raw = item.split("=", 1)
        overrides[key.strip()] = coerce(key.strip(), raw)
    overrides.update(seed=args.seed, variant=args.variant)
    if args.no_baseline:
        overrides["baseline"] = False
    return load_config(args.config, **overrides)


def _run(args):
    cfg = config_from_args(args)
    if args.threads < 1:
        raise ParameterError("--threads must be >= 1")
    values = getattr(args, "values", None)

    if args.command == "convergence":
        mus = _parse_values(values, float) if values else DEFAULT_VALUES["convergence"]
        rows, truncated = run_convergence(cfg, mus)
        for mu, variant, it in truncated:
            log.warning("trace mu=%g %s diverged at iteration %d", mu, variant, it)
        emit_outputs({"fig1": rows}, args.out)
        return

    if args.command == "single":
        keep = {}
        result = run_trial(cfg, RngStream(cfg.seed, 0), keep=keep)
        rows = [
            {
                "variant": name,
                "nmse_db": r.nmse_db,
                "sign_consistency": r.sign_consistency,
                "final_cost": r.cost_trace[-1] if r.cost_trace else math.nan,
                "wall_time": r.wall_time,
            }
            for name, r in result.items()
        ]
        emit_outputs({"single": rows}, args.out)
        inst = keep["instance"]
        for key, M in (("A", inst.A), ("Phi", inst.Phi), ("D", inst.D), ("S", inst.S),
                       ("X", inst.X), ("Y", inst.Y), ("D_init", keep["D_init"])):
            save_matrix(f"{args.out}/{key}.txt", M)
        for name, r in result.items():
            if name != "baseline":
                save_matrix(f"{args.out}/D_{name}.txt", keep[f"D_{name}"])
                save_matrix(f"{args.out}/cost_{name}.txt", r.cost_trace)
        for row in rows:
            print(f"{row['variant']:>9s}  NMSE {row['nmse_db']:8.3f} dB  sign consistency {row['sign_consistency']:.4f}")
        return

    parameter, figure = ("T", "fig2") if args.command == "sweep-t" else ("n", "fig3")
    sweep = SweepSpec(parameter, _parse_values(values, int) if values else DEFAULT_VALUES[args.command])
    rows = run_sweep(cfg, sweep, threads=args.threads)
    emit_outputs({figure: rows}, args.out)
    for row in rows:
        print(f"{parameter}={row[parameter]:<5d} {row['variant']:>9s}  NMSE {row['nmse_db']:8.3f} dB  ({row['trials_ok']}/{row['trials']})")
    if any(math.isnan(r["nmse_db"]) for r in rows):
        raise _Divergence("too many diverged trials in at least one sweep cell")


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _run(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except (NumericDivergenceError, _Divergence) as exc:
        print(f"numeric divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
