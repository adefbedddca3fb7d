"""Command-line front end.

Subcommands
-----------
point     evaluate one metric at one parameter point and print a CSV row
sweep     emit CSV curve families over a (q, mean-SNR dB) grid
roc       trace the fading-averaged ROC at fixed parameters
validate  run the executable validation suites (including the errata report)

The library works in linear SNR throughout; decibels exist only here
(mean_snr = 10**(db/10)).  All CSV output uses the fixed header
``snr_db,q,u,metric,method,value,est_error`` with UTF-8 text, LF line
endings, and floats rendered at 17 significant digits.

Exit codes: 0 success, 1 validation-suite failure, 2 usage error,
3 numerical non-convergence (sweeps annotate the failing rows with ``nan``
and keep going, then exit 3 at the end).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from typing import IO, Callable, List, Optional, Sequence, Tuple

from . import average, detector, hoyt, montecarlo
from . import validate as validation
from .detector import DetectorConfig
from .hoyt import HoytFading
from .montecarlo import McConfig
from .quadrature import EvalPolicy
from .specfun import ConvergenceError

__all__ = ["main", "SweepSpec", "CurveRow", "CSV_HEADER"]

CSV_HEADER = ("snr_db", "q", "u", "metric", "method", "value", "est_error")

_SWEEP_METRICS = ("auc", "cauc", "pd", "pf", "roc")
_METHOD_FLAGS = ("closed", "series", "quadrature", "mc", "all")

# which concrete routes "--method all" expands to, per metric; pf has no
# fading integral and pd no closed fading average, so their sets are smaller
_ALL_EXPANSION = {
    "auc": ("closed", "quadrature", "mc"),
    "cauc": ("closed", "quadrature", "mc"),
    "pd": ("quadrature", "mc"),
    "pf": ("closed", "mc"),
}


class UsageError(ValueError):
    """Semantically invalid flag combination (maps to exit code 2)."""


@dataclass(frozen=True)
class SweepSpec:
    """A validated sweep request: one detector, a q list, an SNR grid."""

    u: float
    q_list: Tuple[float, ...]
    snr_db: Tuple[float, ...]          # resolved ascending grid, dB
    metric: str
    method: str

    def __post_init__(self):
        if not (math.isfinite(self.u) and self.u > 0.0):
            raise UsageError(f"u must be positive and finite, got {self.u}")
        if not self.q_list:
            raise UsageError("q list must be nonempty")
        for q in self.q_list:
            if not (0.0 < q <= 1.0):
                raise UsageError(f"each q must lie in (0, 1], got {q}")
        if not self.snr_db:
            raise UsageError("SNR grid must be nonempty")
        if self.metric not in _SWEEP_METRICS:
            raise UsageError(f"unknown metric {self.metric!r}")
        if self.method not in _METHOD_FLAGS:
            raise UsageError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class CurveRow:
    """One CSV row; value is a probability unless the row records a failure."""

    snr_db: float
    q: float
    u: float
    metric: str
    method: str
    value: float
    est_error: float

    def __post_init__(self):
        if math.isfinite(self.value) and not (0.0 <= self.value <= 1.0):
            raise ValueError(f"row value must lie in [0, 1], got {self.value}")

    def fields(self) -> List[str]:
        return [_fmt(self.snr_db), _fmt(self.q), _fmt(self.u),
                self.metric, self.method, _fmt(self.value),
                _fmt(self.est_error)]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _clamp01(x: float) -> float:
    if math.isfinite(x):
        return min(1.0, max(0.0, x))
    return x


def _closed_label(cfg: DetectorConfig) -> str:
    return "closed_integer" if cfg.is_integer else "closed_series"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_q_list(text: str) -> Tuple[float, ...]:
    try:
        vals = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise UsageError(f"bad q list {text!r}: {exc}") from None
    if not vals:
        raise UsageError("q list is empty")
    return vals


def _parse_snr_axis(text: str, allow_range: bool) -> Tuple[float, ...]:
    """A single dB value, or an inclusive 'start:stop:step' grid."""
    if ":" not in text:
        try:
            return (float(text),)
        except ValueError as exc:
            raise UsageError(f"bad snr-db value {text!r}: {exc}") from None
    if not allow_range:
        raise UsageError("this command takes a single --snr-db value")
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"snr-db range must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad snr-db range {text!r}: {exc}") from None
    if not all(map(math.isfinite, (start, stop, step))):
        raise UsageError("snr-db range endpoints and step must be finite")
    if step <= 0.0:
        raise UsageError(f"snr-db step must be > 0, got {step}")
    if stop < start:
        raise UsageError("snr-db range must be ascending (stop >= start)")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + k * step for k in range(count))


def _preprocess_argv(argv: Sequence[str]) -> List[str]:
    # glue values that begin with '-' (negative dB, '-inf', '-5:30:1')
    # onto their flag so argparse does not read them as option names
    glued = ("--snr-db", "--lambda")
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in glued and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoytsense",
        description="Energy-detection AUC/CAUC over Hoyt fading: closed "
                    "forms, quadrature and Monte-Carlo cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, roc: bool = False):
        p.add_argument("--u", type=float, required=True,
                       help="time-bandwidth product (detector half-DOF)")
        p.add_argument("--rel-tol", type=float, default=1e-10,
                       help="relative tolerance for series/quadrature")
        p.add_argument("--out", default=None,
                       help="output CSV path (default: standard output)")

    p_point = sub.add_parser("point", help="single metric evaluation")
    p_point.add_argument("--metric", required=True,
                         choices=("auc", "cauc", "pd", "pf"))
    add_common(p_point)
    p_point.add_argument("--q", type=float, default=None,
                         help="Hoyt parameter; omit for the unfaded detector")
    p_point.add_argument("--snr-db", default=None,
                         help="SNR in dB (mean SNR when --q is given; "
                              "-inf is accepted as the zero-SNR limit)")
    p_point.add_argument("--lambda", dest="threshold", type=float,
                         default=None, help="detector threshold (pd/pf)")

    p_sweep = sub.add_parser("sweep", help="CSV curve families")
    p_sweep.add_argument("--metric", default="auc", choices=_SWEEP_METRICS)
    p_sweep.add_argument("--method", default=None, choices=_METHOD_FLAGS,
                         help="evaluation route (default: closed, or "
                              "quadrature for pd, which has no closed "
                              "fading average)")
    add_common(p_sweep)
    p_sweep.add_argument("--q", required=True,
                         help="comma-separated Hoyt parameters, e.g. 0.1,0.5,1")
    p_sweep.add_argument("--snr-db", required=True,
                         help="mean-SNR grid in dB: start:stop:step "
                              "(inclusive stop) or a single value")
    p_sweep.add_argument("--lambda", dest="threshold", type=float,
                         default=None, help="detector threshold (pd/pf)")
    p_sweep.add_argument("--trials", type=int, default=1_000_000,
                         help="Monte-Carlo trials per row")
    p_sweep.add_argument("--seed", type=int, default=0,
                         help="Monte-Carlo master seed")

    p_roc = sub.add_parser("roc", help="fading-averaged ROC trace")
    add_common(p_roc, roc=True)
    p_roc.add_argument("--q", type=float, required=True)
    p_roc.add_argument("--snr-db", required=True, help="mean SNR in dB")
    p_roc.add_argument("--points", type=int, default=21,
                       help="number of false-alarm grid points (>= 2)")

    p_val = sub.add_parser("validate", help="run validation suites")
    p_val.add_argument("--suite", default="all",
                       choices=("specfun", "detector", "hoyt", "average",
                                "mc", "errata", "all"))
    p_val.add_argument("--trials", type=int, default=None,
                       help="Monte-Carlo trials for the mc suite")
    p_val.add_argument("--seed", type=int, default=None,
                       help="Monte-Carlo master seed for the mc suite")
    return parser


def _auto_policy(rel_tol: float, max_mean_snr: float) -> EvalPolicy:
    """Size the series budget to the largest mean SNR on the grid.

    The average-AUC series contracts by roughly 2*gb/(2*gb + 1 + q**2) per
    term, so the term count to a fixed tolerance grows linearly with the
    mean SNR; the default 5000-term budget is kept as a floor.
    """
    if rel_tol <= 0.0 or not math.isfinite(rel_tol):
        raise UsageError(f"rel-tol must be positive and finite, got {rel_tol}")
    span = 2.0 * max(max_mean_snr, 0.0) + 2.0
    needed = int((max(-math.log(rel_tol), 5.0) + math.log(span)) * span) + 2000
    return EvalPolicy(rel_tol=rel_tol,
                      max_terms=min(max(needed, 5_000), 5_000_000))


# ---------------------------------------------------------------------------
# CSV plumbing
# ---------------------------------------------------------------------------

def _open_sink(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_rows(rows: Sequence[CurveRow], path: Optional[str]) -> None:
    sink, owned = _open_sink(path)
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.fields())
    finally:
        if owned:
            sink.close()


def _failure_row(snr_db: float, q: float, u: float, metric: str,
                 method: str, err: Exception) -> CurveRow:
    print(f"hoytsense: row (snr_db={snr_db}, q={q}, metric={metric}, "
          f"method={method}) failed: {err}", file=sys.stderr)
    return CurveRow(snr_db, q, u, metric, method, math.nan, math.inf)


# ---------------------------------------------------------------------------
# row evaluation
# ---------------------------------------------------------------------------

def _eval_fading_row(metric: str, method: str, cfg: DetectorConfig,
                     f: HoytFading, threshold: Optional[float],
                     policy: EvalPolicy, mc: McConfig) -> Tuple[float, str, float]:
    """(value, method label, est_error) for one sweep cell."""
    if metric in ("auc", "cauc"):
        if method == "closed":
            mv = average.avg_auc_closed(cfg, f, policy)
        elif method == "series":
            mv = average.avg_auc_closed(cfg, f, policy, form="series")
        elif method == "quadrature":
            mv = average.avg_auc_quadrature(cfg, f, policy)
        elif method == "mc":
            est = montecarlo.estimate_auc(cfg, f, mc)
            val = est.value if metric == "auc" else 1.0 - est.value
            return val, "monte_carlo", est.std_error
        else:  # pragma: no cover - guarded by the parser
            raise UsageError(f"method {method!r} not valid here")
        val = mv.value if metric == "auc" else 1.0 - mv.value
        return val, mv.method, mv.est_error

    if metric == "pd":
        if threshold is None:
            raise UsageError("--lambda is required for metric pd")
        if method == "quadrature":
            mv = average.avg_pd_quadrature(cfg, f, threshold, policy)
            return mv.value, mv.method, mv.est_error
        if method == "mc":
            est = montecarlo.estimate_pd(cfg, f, threshold, mc)
            return est.value, "monte_carlo", est.std_error
        raise UsageError("metric pd supports methods quadrature and mc only "
                         "(no closed fading average exists here)")

    if metric == "pf":
        if threshold is None:
            raise UsageError("--lambda is required for metric pf")
        if method == "closed":
            return detector.pf(cfg, threshold), _closed_label(cfg), 1e-15
        if method == "mc":
            est = montecarlo.estimate_pd(cfg, 0.0, threshold, mc)
            return est.value, "monte_carlo", est.std_error
        raise UsageError("metric pf supports methods closed and mc only")

    raise UsageError(f"metric {metric!r} is not sweepable; "
                     "use the roc subcommand for ROC traces")


def _cmd_sweep(args) -> int:
    method = args.method
    if method is None:
        method = "quadrature" if args.metric == "pd" else "closed"
    plan = SweepSpec(u=args.u, q_list=_parse_q_list(args.q),
                     snr_db=_parse_snr_axis(args.snr_db, allow_range=True),
                     metric=args.metric, method=method)
    if plan.metric == "roc":
        raise UsageError("metric roc is not sweepable; "
                         "use the roc subcommand for ROC traces")
    for db in plan.snr_db:
        if not math.isfinite(db):
            raise UsageError("sweep grids must use finite dB values")
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")

    cfg = DetectorConfig(plan.u)
    policy = _auto_policy(args.rel_tol, _db_to_linear(max(plan.snr_db)))
    mc = McConfig(trials=args.trials, master_seed=args.seed)
    methods = (_ALL_EXPANSION[plan.metric] if plan.method == "all"
               else (plan.method,))

    rows: List[CurveRow] = []
    failed = False
    for q in plan.q_list:
        for db in plan.snr_db:
            f = HoytFading(q, _db_to_linear(db))
            for method in methods:
                try:
                    val, label, err = _eval_fading_row(
                        plan.metric, method, cfg, f, args.threshold,
                        policy, mc)
                    rows.append(CurveRow(db, q, plan.u, plan.metric, label,
                                         _clamp01(val), err))
                except (ConvergenceError, OverflowError) as exc:
                    failed = True
                    rows.append(_failure_row(db, q, plan.u, plan.metric,
                                             method, exc))
    _write_rows(rows, args.out)
    return 3 if failed else 0


def _cmd_point(args) -> int:
    cfg = DetectorConfig(args.u)
    policy = EvalPolicy(rel_tol=args.rel_tol, max_terms=5_000)
    metric = args.metric
    q = args.q
    if q is not None and not (0.0 < q <= 1.0):
        raise UsageError(f"q must lie in (0, 1], got {q}")

    db = math.nan
    mean = None
    if args.snr_db is not None:
        (db,) = _parse_snr_axis(args.snr_db, allow_range=False)
        mean = 0.0 if db == -math.inf else _db_to_linear(db)
        if not (mean >= 0.0 and not math.isnan(mean)):
            raise UsageError(f"snr-db {args.snr_db!r} is not usable")
        if math.isinf(mean):
            raise UsageError("snr-db +inf is not supported")
        policy = _auto_policy(args.rel_tol, mean)

    failed = False
    try:
        if metric in ("auc", "cauc"):
            if mean is None:
                raise UsageError(f"--snr-db is required for metric {metric}")
            if q is None:
                mv = detector.auc_awgn(cfg, mean, policy)
                val, label, err = mv.value, mv.method, mv.est_error
            elif mean == 0.0:
                # zero-SNR limit: chance level exactly, any q
                val, label, err = 0.5, _closed_label(cfg), 0.0
            else:
                mv = average.avg_auc_closed(cfg, HoytFading(q, mean), policy)
                val, label, err = mv.value, mv.method, mv.est_error
            if metric == "cauc":
                val = 1.0 - val
        elif metric == "pd":
            if args.threshold is None or mean is None:
                raise UsageError("metric pd needs --lambda and --snr-db")
            if q is None:
                val = detector.pd(cfg, mean, args.threshold)
                label, err = _closed_label(cfg), 1e-15
            elif mean == 0.0:
                val = detector.pf(cfg, args.threshold)
                label, err = _closed_label(cfg), 1e-15
            else:
                mv = average.avg_pd_quadrature(cfg, HoytFading(q, mean),
                                               args.threshold, policy)
                val, label, err = mv.value, mv.method, mv.est_error
        else:  # pf
            if args.threshold is None:
                raise UsageError("metric pf needs --lambda")
            val = detector.pf(cfg, args.threshold)
            label, err = _closed_label(cfg), 1e-15
        row = CurveRow(db, math.nan if q is None else q, args.u,
                       metric, label, _clamp01(val), err)
    except (ConvergenceError, OverflowError) as exc:
        failed = True
        row = _failure_row(db, math.nan if q is None else q, args.u,
                           metric, "n/a", exc)
    _write_rows([row], args.out)
    return 3 if failed else 0


def _cmd_roc(args) -> int:
    if args.points < 2:
        raise UsageError(f"--points must be >= 2, got {args.points}")
    if not (0.0 < args.q <= 1.0):
        raise UsageError(f"q must lie in (0, 1], got {args.q}")
    (db,) = _parse_snr_axis(args.snr_db, allow_range=False)
    if not math.isfinite(db):
        raise UsageError("roc needs a finite --snr-db")
    cfg = DetectorConfig(args.u)
    f = HoytFading(args.q, _db_to_linear(db))
    policy = _auto_policy(args.rel_tol, f.mean_snr)

    rows: List[CurveRow] = []
    failed = False
    n = args.points
    for k in range(n):
        target = min(max(k / (n - 1.0), 1e-9), 1.0 - 1e-9)
        try:
            lam = detector.threshold_for_pf(cfg, target)
            realized = detector.pf(cfg, lam)
            mv = average.avg_pd_quadrature(cfg, f, lam, policy)
            rows.append(CurveRow(db, args.q, args.u, "pf",
                                 _closed_label(cfg), _clamp01(realized),
                                 abs(realized - target)))
            rows.append(CurveRow(db, args.q, args.u, "pd", mv.method,
                                 _clamp01(mv.value), mv.est_error))
        except (ConvergenceError, OverflowError) as exc:
            failed = True
            rows.append(_failure_row(db, args.q, args.u, "pf",
                                     "closed", exc))
            rows.append(_failure_row(db, args.q, args.u, "pd",
                                     "quadrature", exc))
    _write_rows(rows, args.out)
    return 3 if failed else 0


def _cmd_validate(args) -> int:
    lines = validation.run_suite(args.suite, trials=args.trials,
                                 master_seed=args.seed)
    width = max(len(name) for name, _, _ in lines)
    passed = 0
    for name, ok, detail in lines:
        tag = "PASS" if ok else "FAIL"
        passed += ok
        print(f"{tag}  {name:<{width}}  {detail}")
    print(f"-- {passed}/{len(lines)} checks passed "
          f"(suite: {args.suite})")
    return 0 if passed == len(lines) else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(_preprocess_argv(argv))
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    handlers: dict = {"point": _cmd_point, "sweep": _cmd_sweep,
                      "roc": _cmd_roc, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"hoytsense: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"hoytsense: error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"hoytsense: non-convergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
