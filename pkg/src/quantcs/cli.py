"""Command line front end: run experiment plans, recover one signal, verify.

Subcommands:

* ``run``: execute a JSON experiment plan, write per-cell aggregates as CSV
  and optionally a log-log SVG plot.
* ``recover``: one draw-measure-recover trial for a sparse model, printing
  the per-iterate errors as CSV on stdout.
* ``verify``: run the oracle cross-check suites; exit 0 iff all pass.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .harness import (
    DeltaRule,
    ExperimentPlan,
    emit_csv,
    emit_svg_loglog,
    plan_from_json,
    run_experiment,
)
from .pgd import Family, PgdConfig, RandomInit, ZeroInit, pgd_recover
from .harness import family_setup
from .rng import derive_seed
from .sensing import measure, sample_instance
from .signals import SignalModel, Sparse, gen_signal
from .verify import SUITES, run_suite

__all__ = ["main"]


def _cmd_run(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        plan = plan_from_json(fh.read())
    result = run_experiment(plan, threads=args.threads)
    emit_csv(result.cells, args.out)
    if args.svg is not None:
        emit_svg_loglog(result.cells, args.svg)
    print(f"wrote {len(result.cells)} cells ({len(result.records)} trials) to {args.out}")
    return 0


def _cmd_recover(args) -> int:
    family = Family(args.family)
    model = SignalModel(
        Sparse(k=args.k, n=args.n),
        alpha=1.0 if family is Family.ONE_BIT_GAUSSIAN else 0.0,
        beta=1.0,
    )
    plan = ExperimentPlan(
        family=family,
        model=model,
        m_grid=(args.m,),
        L=args.L,
        delta_rule=DeltaRule(rule="fixed", delta=args.delta) if args.delta is not None else (
            DeltaRule(rule="five_over_l") if family is Family.DITHERED_MULTI_BIT else None
        ),
        lam=getattr(args, "lambda"),
        trials=1,
        iterations=args.iters,
        master_seed=args.seed,
    )
    setup = family_setup(plan)
    seed = derive_seed(plan.master_seed, 0, 0)
    x = gen_signal(model, seed)
    inst = sample_instance(setup.matrix_kind, setup.dither, args.m, args.n, seed)
    y = measure(inst, setup.spec, x)
    init = RandomInit(seed) if setup.init == "random_in_model" else ZeroInit()
    res = pgd_recover(
        PgdConfig(eta=setup.eta, iterations=args.iters, init=init),
        model,
        setup.spec,
        inst,
        y,
        truth=x,
    )
    print("iter,error")
    for t, err in enumerate(res.errors, start=1):
        print(f"{t},{err:.12g}")
    final = float(np.linalg.norm(res.estimate - x))
    print(f"final,{final:.12g}")
    return 0


def _cmd_verify(args) -> int:
    names = [args.suite] if args.suite else sorted(SUITES)
    failures = 0
    for name in names:
        for check in run_suite(name):
            status = "pass" if check.passed else "FAIL"
            print(f"[{status}] {name}.{check.name}: {check.detail}")
            failures += not check.passed
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantcs", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment plan from JSON")
    p_run.add_argument("--config", required=True, help="path to the plan JSON")
    p_run.add_argument("--out", required=True, help="path of the CSV to write")
    p_run.add_argument("--svg", default=None, help="optional path of a log-log SVG plot")
    p_run.add_argument("--threads", type=int, default=1, help="worker threads (output is identical for any value)")
    p_run.set_defaults(func=_cmd_run)

    p_rec = sub.add_parser("recover", help="single recovery trial for a sparse model")
    p_rec.add_argument("--family", required=True, choices=[f.value for f in Family])
    p_rec.add_argument("--n", type=int, required=True, help="ambient dimension")
    p_rec.add_argument("--k", type=int, required=True, help="sparsity level")
    p_rec.add_argument("--m", type=int, required=True, help="number of measurements")
    p_rec.add_argument("--L", type=int, default=None, help="quantizer levels (multi-bit)")
    p_rec.add_argument("--delta", type=float, default=None, help="fixed cell width (multi-bit; default 5/L)")
    p_rec.add_argument("--lambda", type=float, default=None, help="dither level (dithered one-bit)")
    p_rec.add_argument("--seed", type=int, default=0)
    p_rec.add_argument("--iters", type=int, default=100)
    p_rec.set_defaults(func=_cmd_recover)

    p_ver = sub.add_parser("verify", help="run oracle cross-check suites")
    p_ver.add_argument("--suite", choices=sorted(SUITES), default=None, help="run one suite (default: all)")
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
