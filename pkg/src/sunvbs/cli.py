"""Command-line front end.

Every subcommand writes one table (CSV or JSON) to stdout or ``--out``;
logs go to stderr.  Exit codes: 0 success, 1 invalid input, 2 failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import log

import numpy as np

from . import __version__
from .entanglement import (UnsupportedBlockLength, block_spectrum_exact,
                           geometric_entanglement_per_block, renyi, von_neumann)
from .localizable import entanglement_length_report
from .tensor import hermitian_eigs
from .transfer import chain_norm, connected_correlator, correlation_length, transfer_power

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_range(text: str) -> list[int]:
    """``5``, ``1..6`` or ``2..20:2`` (inclusive)."""
    try:
        if ".." not in text:
            return [int(text)]
        span, _, step = text.partition(":")
        start, end = (int(x) for x in span.split(".."))
        step = int(step) if step else 1
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use start..end[:step]") from None
    if step < 1:
        raise argparse.ArgumentTypeError("range step must be positive")
    values = list(range(start, end + 1, step))
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


@dataclass
class RunConfig:
    command: str
    n: list[int]
    L: list[int] = field(default_factory=list)
    N: list[int] = field(default_factory=list)
    alpha: list[float] = field(default_factory=list)
    bc: str = "open"
    seed: int = 0
    format: str = "csv"
    out: str | None = None
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self):
        if any(n < 2 for n in self.n):
            raise UsageError("--n must be >= 2")
        if any(L < 1 for L in self.L):
            raise UsageError("--L must be >= 1")
        if any(N < 1 for N in self.N):
            raise UsageError("--N must be >= 1")
        if any(a <= 0 for a in self.alpha):
            raise UsageError("--alpha values must be positive")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def render(cfg: RunConfig, columns: list[str], rows: list[dict]) -> str:
    if cfg.format == "json":
        config = {k: v for k, v in asdict(cfg).items() if k not in ("out", "workers")}
        meta = {"tool": "sunvbs", "version": __version__, "config": config}
        return json.dumps({"meta": meta, "columns": columns, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def _sweep(cfg: RunConfig, fn, points):
    # map preserves input order regardless of completion order
    with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as pool:
        return list(pool.map(fn, points))


def cmd_spectrum(cfg):
    def row(pt):
        n, L = pt
        spec, _ = hermitian_eigs(transfer_power(n, L).lr())
        l1 = (1 - 1 / n**2) ** L
        l2 = (-1 / n**2) ** L
        (v1, m1), (v2, m2) = sorted(spec.classes, key=lambda c: c[1])
        return {"n": n, "L": L, "lambda_1": v1, "multiplicity_1": m1, "lambda_2": v2,
                "multiplicity_2": m2, "max_abs_dev": max(abs(v1 - l1), abs(v2 - l2))}
    cols = ["n", "L", "lambda_1", "multiplicity_1", "lambda_2", "multiplicity_2", "max_abs_dev"]
    return cols, _sweep(cfg, row, [(n, L) for n in cfg.n for L in cfg.L])


def cmd_corrlen(cfg):
    def row(n):
        vals = np.linalg.eigvalsh(transfer_power(n, 1).lr())
        mags = np.sort(np.abs(vals))[::-1]
        return {"n": n, "xi_c": correlation_length(n),
                "xi_c_from_spectrum": -1 / log(mags[-1] / mags[0])}
    return ["n", "xi_c", "xi_c_from_spectrum"], _sweep(cfg, row, cfg.n)


def cmd_norm(cfg):
    def row(pt):
        n, N = pt
        v = chain_norm(n, N, cfg.bc)
        return {"n": n, "N": N, "bc": cfg.bc, "norm": v, "log_density": log(abs(v)) / N}
    return ["n", "N", "bc", "norm", "log_density"], _sweep(cfg, row, [(n, N) for n in cfg.n for N in cfg.N])


def _alpha_name(a: float) -> str:
    return f"S_renyi_{int(a)}" if float(a).is_integer() else f"S_renyi_{a:g}"


def cmd_block_entropy(cfg):
    def row(pt):
        n, L = pt
        spec = block_spectrum_exact(n, L)
        r = {"n": n, "L": L, "lambda_singlet": spec.lambda_singlet,
             "lambda_adjoint": spec.lambda_adjoint, "S_vn": von_neumann(spec)}
        for a in cfg.alpha:
            r[_alpha_name(a)] = renyi(spec, a)
        return r
    cols = ["n", "L", "lambda_singlet", "lambda_adjoint", "S_vn"] + [_alpha_name(a) for a in cfg.alpha]
    return cols, _sweep(cfg, row, [(n, L) for n in cfg.n for L in cfg.L])


def cmd_geom_ent(cfg):
    odd = [L for L in cfg.L if L % 2]
    if odd:
        raise UsageError(f"geom-ent supports even L only (got {odd}); "
                         "odd block lengths need a separate derivation")

    def row(pt):
        n, L = pt
        return {"n": n, "L": L, "E": geometric_entanglement_per_block(n, L)}
    return ["n", "L", "E"], _sweep(cfg, row, [(n, L) for n in cfg.n for L in cfg.L])


def cmd_correlator(cfg):
    a, b = cfg.extra["a"], cfg.extra["b"]
    for n in cfg.n:
        if max(a, b) >= n * n - 1 or min(a, b) < 0:
            raise UsageError(f"generator index out of range 0..{n * n - 2} for n={n}")

    def row(pt):
        n, d = pt
        return {"n": n, "a": a, "b": b, "d": d, "corr": connected_correlator(n, a, b, d)}
    return ["n", "a", "b", "d", "corr"], _sweep(cfg, row, [(n, d) for n in cfg.n for d in cfg.extra["d"]])


def cmd_localizable(cfg):
    samples = cfg.extra.get("samples")
    rows = []
    for n in cfg.n:
        for r in entanglement_length_report(n, cfg.N, samples=samples, seed=cfg.seed):
            d = asdict(r)
            if r.mode == "sample":
                d["prob_sum"] = None
            rows.append(d)
    cols = ["n", "N", "mode", "outcomes", "prob_sum", "min_entropy", "max_entropy", "xi_c"]
    return cols, rows


def cmd_verify(cfg):
    from .verify import run_checks
    results = run_checks(cfg.n, cfg.extra["max_N"], seed=cfg.seed)
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in results]
    return ["check", "passed", "detail"], rows


COMMANDS = {
    "spectrum": cmd_spectrum,
    "corrlen": cmd_corrlen,
    "norm": cmd_norm,
    "block-entropy": cmd_block_entropy,
    "geom-ent": cmd_geom_ent,
    "correlator": cmd_correlator,
    "localizable": cmd_localizable,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sunvbs", description="SU(n) valence bond solid entanglement laboratory")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, L=None, N=None, alpha=False):
        p.add_argument("--n", type=parse_range, default=[2], help="SU(n) rank or range (default 2)")
        if L is not None:
            p.add_argument("--L", type=parse_range, default=parse_range(L),
                           help=f"block length range start..end[:step] (default {L})")
        if N is not None:
            p.add_argument("--N", type=parse_range, default=parse_range(N),
                           help=f"chain length range (default {N})")
        if alpha:
            p.add_argument("--alpha", type=parse_floats, default=[2.0, 3.0],
                           help="comma-separated Renyi orders (default 2,3)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--workers", type=int, default=1, help="worker threads for sweeps")
        return p

    common(sub.add_parser("spectrum", help="LR spectrum of A(L)"), L="1")
    common(sub.add_parser("corrlen", help="correlation length"))
    p = common(sub.add_parser("norm", help="chain norm"), N="1..10")
    p.add_argument("--bc", choices=["open", "periodic"], default="open")
    common(sub.add_parser("block-entropy", help="block spectrum and entropies"), L="1..10", alpha=True)
    common(sub.add_parser("geom-ent", help="geometric entanglement per block (even L)"), L="2..20:2")
    p = common(sub.add_parser("correlator", help="bulk connected correlator"))
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--d", type=parse_range, default=parse_range("1..8"))
    p = common(sub.add_parser("localizable", help="Bell-measurement entanglement swapping"), N="1..4")
    p.add_argument("--samples", type=int, default=None,
                   help="sample this many outcomes per N instead of enumerating")
    p = common(sub.add_parser("verify", help="closed forms vs numerical oracles"))
    p.add_argument("--max-N", dest="max_N", type=int, default=8)
    return parser


def config_from_args(args) -> RunConfig:
    extra = {k: getattr(args, k) for k in ("a", "b", "d", "samples", "max_N") if hasattr(args, k)}
    return RunConfig(command=args.command, n=args.n, L=getattr(args, "L", []),
                     N=getattr(args, "N", []), alpha=getattr(args, "alpha", []),
                     bc=getattr(args, "bc", "open"), seed=args.seed, format=args.format,
                     out=args.out, workers=args.workers, extra=extra)


def run(argv=None) -> int:
    try:
        cfg = config_from_args(build_parser().parse_args(argv))
        cfg.validate()
        columns, rows = COMMANDS[cfg.command](cfg)
    except (UsageError, UnsupportedBlockLength, ValueError) as exc:
        print(f"sunvbs: error: {exc}", file=sys.stderr)
        return 1
    text = render(cfg, columns, rows)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.command == "verify":
        passed = sum(r["passed"] for r in rows)
        print(f"verify: {passed}/{len(rows)} checks passed", file=sys.stderr)
        return 0 if passed == len(rows) else 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
