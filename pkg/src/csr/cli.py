"""``csr`` command-line tool.

Subcommands: ``fit``, ``denoise``, ``synth``, ``gibbs``, ``reconstruct``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .basis import BasisSpec, Family
from .design import SampleGrid, build_design, make_grid, uniform_grid
from .diagnostics import DEFAULT_DELTA, gibbs_compare
from .errors import CSRError, DataError, InputValidationError, NumericalError, ParseError
from .fit import SeriesBatch, fit_batch
from .io import atomic_write, dumps_json, read_coefficients, read_series_csv, write_coefficients, write_series_csv
from .signals import parse_signal
from .svg import PALETTE, Line, line_plot
from .synth import RNG_ALGORITHM, NoiseModel, sample_observation
from .transform import reconstruct

log = logging.getLogger("csr")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 2, 3, 4
DEFAULT_DEGREE = 59


class UsageError(CSRError):
    pass


def _sidecar(path: Path, suffix: str) -> Path:
    return path.with_name(path.stem + suffix)


def _load_batch(path: Path, grid_policy: str) -> tuple[SampleGrid, SeriesBatch, np.ndarray, np.ndarray | None]:
    """Read a series CSV; returns grid, batch in grid order, the row permutation and raw timestamps."""
    if not path.is_file():
        raise UsageError(f"input file not found: {path}")
    t, labels, values = read_series_csv(path)
    if t is None or grid_policy == "uniform":
        order = np.arange(values.shape[0])
        grid = uniform_grid(values.shape[0])
    else:
        order = np.argsort(t, kind="stable")
        grid = make_grid(t)
    return grid, SeriesBatch(values[order], labels), order, t


def _grid_meta(grid: SampleGrid, source: str) -> dict:
    t_min, t_max = grid.original_range
    return {
        "source": source,
        "n": grid.n,
        "t_min": t_min,
        "t_max": t_max,
        "offset": grid.offset,
        "scale": grid.scale,
        "uniform": grid.is_uniform(),
    }


def _parse_tau(raw: str) -> np.ndarray:
    text = raw
    if raw.startswith("@"):
        p = Path(raw[1:])
        if not p.is_file():
            raise UsageError(f"variance file not found: {p}")
        text = p.read_text(encoding="utf-8")
    tokens = [tok for tok in text.replace(",", " ").split() if tok]
    if not tokens:
        raise ParseError("empty variance list")
    out = []
    for i, tok in enumerate(tokens):
        if "x" in tok:
            val, _, count = tok.partition("x")
        else:
            val, count = tok, "1"
        try:
            out.extend([float(val)] * int(count))
        except ValueError:
            raise ParseError(f"bad variance entry {tok!r} (item {i + 1})") from None
    tau2 = np.array(out)
    if np.any(tau2 < 0) or not np.all(np.isfinite(tau2)):
        raise InputValidationError("variances must be finite and non-negative")
    return tau2


def cmd_fit(args) -> int:
    inp, out = Path(args.input), Path(args.output)
    grid, batch, _, _ = _load_batch(inp, args.grid)
    spec = BasisSpec(args.basis, args.degree)
    if args.normalize:
        batch = batch.normalized()
    dm = build_design(spec, grid)
    cs = fit_batch(dm, batch, method=args.method)
    gmeta = _grid_meta(grid, "uniform" if args.grid == "uniform" else "file")
    write_coefficients(
        out,
        cs,
        {
            "n": grid.n,
            "normalize": bool(args.normalize),
            "preprocess": [list(x) for x in cs.preprocess],
            "grid": gmeta,
            "grid_id": grid.grid_id,
        },
    )
    report = {
        "subcommand": "fit",
        "basis": spec.family.value,
        "degree": spec.degree,
        "m": spec.n_functions,
        "n": grid.n,
        "p": cs.p,
        "method": args.method,
        "normalize": bool(args.normalize),
        "grid": gmeta,
        "series": [
            {"label": lab, "rss": float(r), "offset": o, "scale": s}
            for lab, r, (o, s) in zip(cs.labels, cs.residual_norms, cs.preprocess)
        ],
    }
    atomic_write(Path(args.report) if args.report else _sidecar(out, ".json"), dumps_json(report))
    log.info("fitted %d series with %s", cs.p, spec)
    return EXIT_OK


def _select(labels: list[str], selection: str | None) -> list[int]:
    if not selection:
        return list(range(min(len(labels), len(PALETTE))))
    picked = []
    for tok in selection.split(","):
        tok = tok.strip()
        if tok in labels:
            picked.append(labels.index(tok))
        elif tok.isdigit() and int(tok) < len(labels):
            picked.append(int(tok))
        else:
            raise UsageError(f"unknown series {tok!r}")
    return picked


def cmd_denoise(args) -> int:
    inp, out = Path(args.input), Path(args.output)
    grid, batch, order, t_raw = _load_batch(inp, args.grid)
    spec = BasisSpec(args.basis, args.degree)
    work = batch.normalized() if args.normalize else batch
    cs = fit_batch(build_design(spec, grid), work)
    fitted = reconstruct(cs, grid).restored()
    inverse = np.empty_like(order)
    inverse[order] = np.arange(order.size)
    t_out = grid.timestamps if t_raw is None or args.grid == "uniform" else t_raw[order]
    write_series_csv(out, batch.labels, fitted[inverse], t_out[inverse])
    if args.plot:
        lines = []
        for color_i, i in enumerate(_select(batch.labels, args.series)):
            color = PALETTE[color_i % len(PALETTE)]
            lines.append(Line(t_out, batch.values[:, i], f"{batch.labels[i]} (raw)", color, 0.8, 0.6))
            lines.append(Line(t_out, fitted[:, i], f"{batch.labels[i]} (k={spec.degree})", color, 2.5))
        svg = line_plot(lines, args.width, args.height, f"{spec.family.value} series representation, k={spec.degree}")
        atomic_write(_sidecar(out, ".svg"), svg)
    return EXIT_OK


def cmd_synth(args) -> int:
    out = Path(args.output)
    if args.tau is None:
        raise UsageError("synth requires --tau LIST or --tau @FILE")
    tau2 = _parse_tau(args.tau)
    family = Family.parse(args.basis)
    if args.degree is None:
        degree = {Family.COSINE: tau2.size - 1, Family.SINE: tau2.size}.get(family, (tau2.size - 1) // 2)
    else:
        degree = args.degree
    spec = BasisSpec(family, degree)
    model = NoiseModel(spec, tau2, residual_sigma=args.sigma, seed=args.seed)
    grid = uniform_grid(args.n)
    mean = parse_signal(args.signal)
    obs = sample_observation(mean, model, grid, args.p)
    labels = [f"y{i + 1}" for i in range(args.p)]
    clean = np.repeat(np.asarray(mean(grid.points), dtype=float)[:, None], args.p, axis=1)
    write_series_csv(out, labels, obs.values, grid.points)
    write_series_csv(_sidecar(out, ".clean.csv"), labels, clean, grid.points)
    meta = {
        "subcommand": "synth",
        "basis": spec.family.value,
        "degree": spec.degree,
        "variances": tau2.tolist(),
        "residual_sigma": args.sigma,
        "signal": args.signal,
        "n": args.n,
        "p": args.p,
        "seed": args.seed,
        "rng": RNG_ALGORITHM,
    }
    atomic_write(_sidecar(out, ".json"), dumps_json(meta))
    return EXIT_OK


def cmd_gibbs(args) -> int:
    out = Path(args.output)
    signal = parse_signal(args.signal)
    n = args.n if args.n is not None else max(2048, 8 * args.degree)
    grid = uniform_grid(n)
    report = gibbs_compare(signal, args.degree, grid, args.delta, name=args.signal)
    atomic_write(out, dumps_json(dict(report.to_dict(), subcommand="gibbs")))
    if args.plot:
        lines = [Line(grid.points, np.broadcast_to(signal(grid.points), grid.points.shape), args.signal, "#222222", 2.5)]
        for i, (fam, fitted) in enumerate(report.fits.items()):
            fe = report.families[fam]
            lines.append(Line(grid.points, fitted, f"{fam} ({fe.n_functions} fns)", PALETTE[(i * 2) % len(PALETTE)], 1.2))
        atomic_write(_sidecar(out, ".svg"), line_plot(lines, args.width, args.height, f"boundary behaviour, k={args.degree}"))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    inp, out = Path(args.input), Path(args.output)
    if not inp.is_file():
        raise UsageError(f"input file not found: {inp}")
    meta, cs = read_coefficients(inp)
    g = meta.get("grid", {})
    offset, scale = float(g.get("offset", 0.0)), float(g.get("scale", 1.0))
    if args.grid_from:
        t, _, _ = read_series_csv(args.grid_from)
        if t is None:
            raise ParseError(f"{args.grid_from} has no 't' column")
        t = np.sort(t)
        grid = SampleGrid((t - offset) / scale, offset=offset, scale=scale)
    else:
        n = args.n or int(meta.get("n", 0))
        if n < 2:
            raise UsageError("give --n or a coefficient file that records n")
        grid = SampleGrid(np.arange(n) / (n - 1), offset=offset, scale=scale)
    rec = reconstruct(cs, grid)
    write_series_csv(out, cs.labels, rec.restored(), grid.timestamps)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csr", description="Cosine series representation of functional data.")
    parser.add_argument("--version", action="version", version=f"csr {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def basis_opts(p, degree=DEFAULT_DEGREE):
        hint = "inferred from --tau" if degree is None else str(degree)
        p.add_argument("--degree", type=int, default=degree, help=f"degree k (default: {hint})")
        p.add_argument("--basis", choices=[f.value for f in Family], default="cosine")

    def plot_opts(p):
        p.add_argument("--plot", action="store_true", help="also write an SVG next to the output")
        p.add_argument("--width", type=int, default=800)
        p.add_argument("--height", type=int, default=400)

    p = sub.add_parser("fit", help="fit coefficients to every series of a CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="coefficient CSV")
    p.add_argument("--report", help="JSON report path (default: OUTPUT with .json)")
    basis_opts(p)
    p.add_argument("--normalize", action="store_true", help="z-score each series before fitting")
    p.add_argument("--grid", choices=["file", "uniform"], default="file")
    p.add_argument("--method", choices=["qr", "normal"], default="qr")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("denoise", help="replace each series by its fitted representation")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    basis_opts(p)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--grid", choices=["file", "uniform"], default="file")
    p.add_argument("--series", help="comma-separated series names or indices to plot")
    plot_opts(p)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("synth", help="simulate noisy observations")
    p.add_argument("--output", required=True)
    basis_opts(p, degree=None)
    p.add_argument("--tau", help="variances per basis index: '0.04,0.04', '0.04x21' or @FILE")
    p.add_argument("--sigma", type=float, default=0.0, help="white residual standard deviation")
    p.add_argument("--signal", default="zero", help="mean signal expression, e.g. 'psi:3'")
    p.add_argument("--n", type=int, default=1200)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("gibbs", help="compare boundary errors of cosine, sine and fourier fits")
    p.add_argument("--output", required=True, help="JSON report")
    p.add_argument("--signal", default="t")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--n", type=int)
    plot_opts(p)
    p.set_defaults(func=cmd_gibbs)

    p = sub.add_parser("reconstruct", help="evaluate a coefficient file on a grid")
    p.add_argument("--input", required=True, help="coefficient CSV from 'fit'")
    p.add_argument("--output", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--grid-from", help="CSV whose 't' column gives the target timestamps")
    p.set_defaults(func=cmd_reconstruct)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="csr: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"csr: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"csr: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"csr: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
