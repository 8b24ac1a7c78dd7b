"""Command-line front end.

Subcommands map one-to-one onto the library surface:

* ``rate``     time series of the decay rate -> CSV
* ``spectrum`` spectral densities on a detuning grid -> CSV
* ``surface``  spectrum rows over a time grid -> long-format CSV
* ``peaks``    envelope peak detection -> JSON, plus a sideband
               resolvability line on stdout
* ``validate`` the full oracle suite -> JSON, exit 3 on any failure
* ``sweep``    one-parameter study emitting one spectrum CSV per point
               plus an index JSON

All numbers are emitted with 9 significant digits in scientific notation,
and outputs carry no timestamps, so identical inputs give byte-identical
files.  Exit codes: 0 success, 2 usage or configuration error, 3 oracle
failure, 4 I/O failure.  Every error prints one ``error: <kind>: <detail>``
line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from .oracle import NonconvergenceError, run_validation_suite
from .params import ConfigError, PhysicalParams, config_digest, load_config
from .rate import QuadratureError, rate_series
from .spectrum import SpectrumSeries, envelope, find_peaks, spectrum_series

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

SWEEP_PARAMS = ("omega0", "omega_p", "amplitude", "z0", "t")


def _fmt(x: float) -> str:
    """9 significant digits, scientific: the one number format in files."""
    return f"{x:.8e}"


def _round9(x: float) -> float:
    """Round through the emission format so JSON matches CSV precision."""
    return float(_fmt(x))


@dataclass(frozen=True)
class ResolvabilityReport:
    """Whether the drive sidebands clear a spectral linewidth."""

    omega_p: float
    linewidth: float
    margin: float
    resolvable: bool


def resolvability(p: PhysicalParams, linewidth: float | None = None) -> ResolvabilityReport:
    """Compare the sideband displacement omega_p against a linewidth.

    The lateral peaks sit at +/-omega_p from the carrier, so they are
    observable once omega_p exceeds the linewidth; the default linewidth is
    the configured free-space decay rate.
    """
    lw = p.a21 if linewidth is None else linewidth
    if not np.isfinite(lw) or lw <= 0:
        raise ValueError(f"linewidth must be finite and positive, got {lw!r}")
    margin = p.omega_p / lw
    return ResolvabilityReport(
        omega_p=p.omega_p, linewidth=lw, margin=margin, resolvable=margin > 1.0
    )


def _error(kind: str, detail) -> None:
    print(f"error: {kind}: {detail}", file=sys.stderr)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_rate(series, path: str) -> None:
    _write_text(path, _csv("t_s,gamma_over_a21", zip(series.t, series.gamma)))


def emit_spectrum(series: SpectrumSeries, path: str) -> None:
    rows = zip(series.delta, series.p_static, series.p_dynamic, series.p_total)
    _write_text(path, _csv("delta_rad_per_s,p_static,p_dynamic,p_total", rows))


def emit_surface(rows, path: str) -> None:
    _write_text(path, _csv("t_s,delta_rad_per_s,p_total", rows))


def _peak_payload(report) -> list[dict]:
    return [
        {
            "offset": _round9(pk.offset),
            "height": _round9(pk.height),
            "fwhm": _round9(pk.fwhm),
            "class": pk.label,
        }
        for pk in report.peaks
    ]


def _oracle_payload(reports) -> list[dict]:
    payload = []
    for r in reports:
        d = asdict(r)
        for key in ("closed_form", "quadrature", "abs_err", "rel_err", "tol"):
            d[key] = _round9(d[key])
        payload.append(d)
    return payload


def _series_for(p: PhysicalParams, args) -> SpectrumSeries:
    return spectrum_series(
        p, args.t, delta_min=args.delta_min, delta_max=args.delta_max, n=args.n
    )


def _cmd_rate(p: PhysicalParams, args) -> int:
    series = rate_series(p, args.t_start, args.t_end, args.n, order=args.order)
    emit_rate(series, args.out)
    return EXIT_OK


def _cmd_spectrum(p: PhysicalParams, args) -> int:
    series = _series_for(p, args)
    if args.envelope:
        series = envelope(series)
    emit_spectrum(series, args.out)
    return EXIT_OK


def _cmd_surface(p: PhysicalParams, args) -> int:
    if args.nt < 1:
        raise ValueError(f"--nt must be at least 1, got {args.nt}")
    t_grid = np.linspace(args.t_start, args.t_end, args.nt)

    def one(t: float) -> SpectrumSeries:
        return spectrum_series(
            p, float(t), delta_min=args.delta_min, delta_max=args.delta_max, n=args.n
        )

    with ThreadPoolExecutor(max_workers=args.workers or os.cpu_count()) as pool:
        series_rows = list(pool.map(one, t_grid))
    rows = (
        (s.t, d, pt)
        for s in series_rows
        for d, pt in zip(s.delta, s.p_total)
    )
    emit_surface(rows, args.out)
    return EXIT_OK


def _cmd_peaks(p: PhysicalParams, args) -> int:
    series = envelope(_series_for(p, args))
    report = find_peaks(series, prominence_rel=args.prominence)
    _write_text(args.out, _json_text(_peak_payload(report)))
    reso = resolvability(p, args.linewidth)
    print(
        json.dumps(
            {
                "omega_p": _round9(reso.omega_p),
                "linewidth": _round9(reso.linewidth),
                "margin": _round9(reso.margin),
                "resolvable": reso.resolvable,
            },
            sort_keys=True,
        )
    )
    return EXIT_OK


def _cmd_validate(p: PhysicalParams, args) -> int:
    reports = run_validation_suite(p)
    text = _json_text(_oracle_payload(reports))
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    if not all(r.passed for r in reports):
        failed = [r.name for r in reports if not r.passed]
        _error("validation", f"{len(failed)} oracle check(s) failed: {', '.join(failed)}")
        return EXIT_VALIDATION
    return EXIT_OK


def _sweep_grid(args) -> np.ndarray:
    if args.points < 2:
        raise ValueError(f"--points must be at least 2, got {args.points}")
    if args.grid == "geometric":
        if args.start <= 0 or args.end <= 0:
            raise ValueError("geometric grids need positive --start and --end")
        return np.geomspace(args.start, args.end, args.points)
    return np.linspace(args.start, args.end, args.points)


def _cmd_sweep(p: PhysicalParams, args) -> int:
    if args.param != "t" and args.t is None:
        raise ValueError("--t is required unless sweeping t itself")
    values = _sweep_grid(args)
    os.makedirs(args.out, exist_ok=True)

    def one(value: float):
        if args.param == "t":
            q, t = p, float(value)
        else:
            q, t = replace(p, **{args.param: float(value)}), args.t
        series = spectrum_series(
            q, t, delta_min=args.delta_min, delta_max=args.delta_max, n=args.n
        )
        return q, t, series

    with ThreadPoolExecutor(max_workers=args.workers or os.cpu_count()) as pool:
        results = list(pool.map(one, values))

    index = []
    for i, (value, (q, t, series)) in enumerate(zip(values, results)):
        name = f"point_{i:03d}.csv"
        emit_spectrum(series, os.path.join(args.out, name))
        index.append(
            {
                "value": _round9(float(value)),
                "t": _round9(t),
                "file": name,
                "config_digest": config_digest(q),
            }
        )
    _write_text(
        os.path.join(args.out, "index.json"),
        _json_text({"param": args.param, "grid": args.grid, "points": index}),
    )
    return EXIT_OK


def _add_window_args(sub, n_default: int) -> None:
    sub.add_argument("--delta-min", type=float, default=None,
                     help="lower detuning bound, rad/s (default -4*omega_p)")
    sub.add_argument("--delta-max", type=float, default=None,
                     help="upper detuning bound, rad/s (default +4*omega_p)")
    sub.add_argument("--n", type=int, default=n_default,
                     help=f"detuning grid points (default {n_default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscmirror",
        description="Decay rate and emission spectrum of an atom near an oscillating mirror.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(s) -> None:
        s.add_argument("--config", required=True, help="JSON parameter file")
        s.add_argument("--workers", type=int, default=None,
                       help="worker threads for grid evaluation (default: all cores)")

    s = sub.add_parser("rate", help="decay rate vs time")
    common(s)
    s.add_argument("--t-start", type=float, default=0.0, help="window start, s (default 0)")
    s.add_argument("--t-end", type=float, required=True, help="window end, s")
    s.add_argument("--n", type=int, default=1000, help="time grid points (default 1000)")
    s.add_argument("--order", choices=("exact", "first"), default="exact",
                   help="bracket evaluation: exact trajectory or first order in amplitude")
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(handler=_cmd_rate)

    s = sub.add_parser("spectrum", help="spectral density vs detuning")
    common(s)
    s.add_argument("--t", type=float, required=True, help="observation time, s")
    _add_window_args(s, 2001)
    s.add_argument("--envelope", action="store_true",
                   help="replace p_total by its ripple envelope")
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(handler=_cmd_spectrum)

    s = sub.add_parser("surface", help="spectral density over a time grid")
    common(s)
    s.add_argument("--t-start", type=float, required=True, help="first time, s")
    s.add_argument("--t-end", type=float, required=True, help="last time, s")
    s.add_argument("--nt", type=int, default=50, help="time grid points (default 50)")
    _add_window_args(s, 1001)
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(handler=_cmd_surface)

    s = sub.add_parser("peaks", help="detect and classify envelope peaks")
    common(s)
    s.add_argument("--t", type=float, required=True, help="observation time, s")
    _add_window_args(s, 4001)
    s.add_argument("--prominence", type=float, default=0.02,
                   help="relative prominence threshold (default 0.02)")
    s.add_argument("--linewidth", type=float, default=None,
                   help="linewidth for the resolvability report, rad/s (default a21)")
    s.add_argument("--out", required=True, help="output JSON path")
    s.set_defaults(handler=_cmd_peaks)

    s = sub.add_parser("validate", help="run the oracle suite")
    common(s)
    s.add_argument("--out", default=None, help="output JSON path (default stdout)")
    s.set_defaults(handler=_cmd_validate)

    s = sub.add_parser("sweep", help="one-parameter spectrum study")
    common(s)
    s.add_argument("--param", choices=SWEEP_PARAMS, required=True,
                   help="which parameter to vary")
    s.add_argument("--start", type=float, required=True, help="first value")
    s.add_argument("--end", type=float, required=True, help="last value")
    s.add_argument("--points", type=int, default=5, help="sweep points (default 5)")
    s.add_argument("--grid", choices=("linear", "geometric"), default="geometric",
                   help="grid spacing (default geometric)")
    s.add_argument("--t", type=float, default=None,
                   help="observation time, s (required unless --param t)")
    _add_window_args(s, 2001)
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(handler=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its diagnostic
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        p = load_config(args.config)
    except ConfigError as exc:
        _error("config", exc)
        return EXIT_USAGE
    try:
        return args.handler(p, args)
    except (ValueError, ConfigError) as exc:
        _error("usage", exc)
        return EXIT_USAGE
    except (NonconvergenceError, QuadratureError) as exc:
        _error("numeric", exc)
        return EXIT_USAGE
    except OSError as exc:
        _error("io", exc)
        return EXIT_IO


def run() -> None:
    sys.exit(main())
