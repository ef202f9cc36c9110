"""Command-line front end.

Exit codes: 0 ok, 2 parse, 3 dimension, 4 numeric, 5 validation. Errors are
reported on stderr as one line, ``error[<kind>]: <message>``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import costmodel, probability, qpram
from .errors import QValuationError, UnsupportedDim, ValidationError
from .linalg import make_state, projector_from_matrix, projector_from_state
from .schema import load_projector, load_state
from .solvability import is_consistent
from .valuation import (
    PropositionPair,
    Semantics,
    comparability,
    distributivity_witness,
    valuate,
)


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-9
    seed: int = 0
    shots: int = 10000
    format: Optional[str] = None
    pivoting: bool = True
    early_exit: bool = False
    weights: tuple[int, int, int, int] = (1, 1, 1, 1)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValidationError("--tolerance must be positive")
        if self.shots < 1:
            raise ValidationError("--shots must be at least 1")


def _parse_weights(text: str) -> tuple[int, int, int, int]:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"--weights expects four integers m,d,a,c, got {text!r}") from None
    if len(w) != 4 or min(w) <= 0:
        raise ValidationError(f"--weights expects four positive integers m,d,a,c, got {text!r}")
    return w


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error[parse]: {message}\n")
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qvaluation", description=__doc__.splitlines()[0])
    ap.add_argument("--tolerance", type=float, default=1e-9)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--shots", type=int, default=10000)
    ap.add_argument("--format", choices=("json", "csv"), default=None)
    ap.add_argument("--no-pivot", action="store_true", help="literal elimination, no row swaps")
    ap.add_argument("--early-exit", action="store_true")
    ap.add_argument("--weights", default="1,1,1,1", help="op weights mul,div,add,cmp")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sem = dict(choices=("bvn", "partial"), default="partial")

    p = sub.add_parser("valuate", help="truth value of an atomic proposition in a state")
    p.add_argument("projector")
    p.add_argument("state")
    p.add_argument("--semantics", **sem)

    p = sub.add_parser("compare", help="comparability of two propositions")
    p.add_argument("q")
    p.add_argument("p")
    p.add_argument("--semantics", **sem)

    p = sub.add_parser("lattice-demo", help="distributivity counterexample on a qubit")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--q-angle", type=float, default=45.0, help="degrees")
    p.add_argument("--q-phase", type=float, default=0.0, help="degrees")

    p = sub.add_parser("prob-scan", help="tally forced probability verdicts")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--semantics", choices=("bvn", "partial"), default="bvn")

    p = sub.add_parser("bench", help="operation-count table over problem sizes")
    p.add_argument("--min", type=int, default=8)
    p.add_argument("--max", type=int, default=128)
    p.add_argument("--factor", type=int, default=2)
    p.add_argument("--q", type=int, default=costmodel.DEFAULT_Q)

    p = sub.add_parser("qpram", help="simulate the QPRAM kernel test")
    p.add_argument("projector")
    p.add_argument("state")
    p.add_argument("--q", type=int, default=costmodel.DEFAULT_Q)
    return ap


def _flat_csv(obj: dict) -> str:
    row = {k: v for k, v in obj.items() if not isinstance(v, (dict, list))}
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
    w.writeheader()
    w.writerow(row)
    return buf.getvalue()


def _emit(obj: dict, cfg: RunConfig, out) -> None:
    if cfg.format == "csv":
        out.write(_flat_csv(obj))
    else:
        out.write(json.dumps(obj) + "\n")


def _membership_kw(cfg: RunConfig) -> dict:
    return dict(tol=cfg.tolerance, pivoting=cfg.pivoting, early_exit=cfg.early_exit,
                weights=cfg.weights)


def cmd_valuate(args, cfg: RunConfig, out) -> None:
    p = load_projector(args.projector, tol=cfg.tolerance)
    psi = load_state(args.state)
    verdict = valuate(p, psi, Semantics(args.semantics), **_membership_kw(cfg))
    _emit(verdict.to_dict(), cfg, out)


def cmd_compare(args, cfg: RunConfig, out) -> None:
    pair = PropositionPair(load_projector(args.q, tol=cfg.tolerance),
                           load_projector(args.p, tol=cfg.tolerance))
    _emit(comparability(pair, Semantics(args.semantics), tol=cfg.tolerance).to_dict(), cfg, out)


def cmd_lattice_demo(args, cfg: RunConfig, out) -> None:
    if args.dim != 2:
        raise UnsupportedDim(f"the counterexample lives in dimension 2, got --dim {args.dim}")
    theta, phi = math.radians(args.q_angle), math.radians(args.q_phase)
    q = projector_from_state(make_state([math.cos(theta), np.exp(1j * phi) * math.sin(theta)]))
    p1 = projector_from_matrix([[1, 0], [0, 0]])
    p2 = projector_from_matrix([[0, 0], [0, 1]])
    report = distributivity_witness(q, p1, p2, tol=cfg.tolerance)
    _emit(report.to_dict(), cfg, out)


def cmd_prob_scan(args, cfg: RunConfig, out) -> None:
    report = probability.dispersion_scan(args.dim, args.samples, cfg.seed, Semantics(args.semantics))
    _emit(report.to_dict(), cfg, out)


def bench_sizes(lo: int, hi: int, factor: int) -> list[int]:
    if not 2 <= lo < hi:
        raise ValidationError(f"need 2 <= --min < --max, got {lo}, {hi}")
    if factor < 2:
        raise ValidationError(f"--factor must be at least 2, got {factor}")
    ns = []
    n = lo
    while n <= hi:
        ns.append(n)
        n *= factor
    if len(ns) < 3:
        raise ValidationError("need at least 3 sizes to fit growth exponents")
    return ns


def cmd_bench(args, cfg: RunConfig, out) -> None:
    ns = bench_sizes(args.min, args.max, args.factor)
    if args.q < 1:
        raise ValidationError(f"--q must be at least 1, got {args.q}")
    rows = costmodel.bench_rows(ns, args.q, cfg.weights)
    slopes = costmodel.bench_slopes(rows)
    if cfg.format == "json":
        out.write(json.dumps({"rows": rows, "slopes": slopes}) + "\n")
        return
    w = csv.DictWriter(out, fieldnames=list(costmodel.BENCH_COLUMNS), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "eff_qpram": f"{r['eff_qpram']:.6f}"})
    out.write("# slopes " + " ".join(f"{k}={v:.4f}" for k, v in slopes.items()) + "\n")


def cmd_qpram(args, cfg: RunConfig, out) -> None:
    if args.q < 1:
        raise ValidationError(f"--q must be at least 1, got {args.q}")
    p = load_projector(args.projector, tol=cfg.tolerance)
    psi = load_state(args.state)
    m = qpram.init_machine(p, psi, args.q, pivoting=cfg.pivoting, tol=cfg.tolerance)
    m = qpram.run_to_completion(m)
    corr = qpram.correlate(m, 0)
    estimate = qpram.sample(corr, cfg.shots, cfg.seed)
    m = qpram.measure_processors(m, 1, cfg.seed + 1)
    decision = qpram.hypothesis_test(m.records)
    _emit({
        "n": m.n,
        "q": m.q,
        "consistent": is_consistent(m.tableau),
        "pr_zero": estimate.zeros / estimate.shots,
        "pr_zero_exact": qpram.measure_zero_prob(corr),
        "shots": estimate.shots,
        "zeros": estimate.zeros,
        "oracle_queries": m.oracle_queries,
        "reject_h0": decision.reject_h0,
        "type_i_error": decision.type_i_error,
    }, cfg, out)


COMMANDS = {
    "valuate": cmd_valuate,
    "compare": cmd_compare,
    "lattice-demo": cmd_lattice_demo,
    "prob-scan": cmd_prob_scan,
    "bench": cmd_bench,
    "qpram": cmd_qpram,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            tolerance=args.tolerance, seed=args.seed, shots=args.shots, format=args.format,
            pivoting=not args.no_pivot, early_exit=args.early_exit,
            weights=_parse_weights(args.weights),
        )
        COMMANDS[args.command](args, cfg, out)
    except QValuationError as exc:
        msg = " ".join(str(exc).split())
        err.write(f"error[{exc.code}]: {type(exc).__name__}: {msg}\n")
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
