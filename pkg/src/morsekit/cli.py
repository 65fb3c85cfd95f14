"""Command-line interface: emits the library's parameter-space map, wavelet
gallery, concentration curves, property tables, transform coefficients,
Bessel-fit results, and limiting-form diagnostics as CSV or JSON.

Outputs are deterministic: floats are printed with shortest round-trip
formatting, infinities as "inf", undefined cells blank, and results do not
depend on the thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from . import __version__
from .core import (
    MorseParams,
    approx_spectrum,
    duration,
    eval_spectrum,
    half_power_frequency,
    peak_frequency,
    sample_wavelet,
)
from .props import (
    heisenberg_area,
    quadrature_moment,
    sigma_omega,
    sigma_t,
    skewness_freq,
)
from .superfamily import (
    BesselFitGrid,
    bessel_fit,
    gaussianity_rho_sq,
    gmw_wavelet,
    limit_diagnostics,
    morlet_nu_for_duration,
    morlet_wavelet,
)
from .transform import SignalBuffer, scale_grid, transform

DEFAULT_P_LINES = (1.0 / 3.0, 1.0, 3.0, 9.0, 27.0)
GALLERY_VALUES = (1.0 / 3.0, 1.0, 3.0, 9.0, 27.0)


@dataclass
class RunConfig:
    command: str
    out: Path | None = None
    format: str = "csv"
    threads: int = 0
    options: dict = field(default_factory=dict)

    def describe(self) -> str:
        parts = []
        for k, v in sorted(self.options.items()):
            if isinstance(v, (list, tuple)) and len(v) > 6:
                v = f"[{_fmt(v[0])}..{_fmt(v[-1])}]x{len(v)}"
            elif isinstance(v, (list, tuple)):
                v = "[" + ",".join(str(x) for x in v) + "]"
            parts.append(f"{k}={v}")
        return f"morsekit {self.command} format={self.format} " + " ".join(parts)

    def n_workers(self) -> int:
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def _fmt_complex(c: complex) -> str:
    sign = "+" if c.imag >= 0 else "-"
    return f"{_fmt(c.real)}{sign}{_fmt(abs(c.imag))}j"


def _jsonable(v):
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return v


class _Sink:
    """Writes one table to a CSV or JSON file (or stdout)."""

    def __init__(self, cfg: RunConfig, path: Path | None):
        self.cfg = cfg
        self.path = path

    def write(self, columns, rows, meta: dict | None = None):
        if self.cfg.format == "json":
            payload = {
                "command": self.cfg.command,
                "config": self.cfg.describe(),
                "columns": list(columns),
                "rows": [[_jsonable(v) for v in row] for row in rows],
            }
            if meta:
                payload["meta"] = {k: _jsonable(v) for k, v in meta.items()}
            text = json.dumps(payload, indent=1, allow_nan=False) + "\n"
        else:
            lines = [f"# {self.cfg.describe()}"]
            if meta:
                for k, v in sorted(meta.items()):
                    lines.append(f"# {k}={_fmt(v)}")
            lines.append(",".join(columns))
            for row in rows:
                lines.append(",".join(_fmt(v) for v in row))
            text = "\n".join(lines) + "\n"
        if self.path is None:
            sys.stdout.write(text)
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(text)


def _out_file(cfg: RunConfig, stem: str) -> Path | None:
    if cfg.out is None:
        return None
    ext = "json" if cfg.format == "json" else "csv"
    out = cfg.out
    if out.suffix:  # a file path was given directly
        return out
    return out / f"{stem}.{ext}"


def _parse_list_or_range(text: str, log_range: bool = True) -> list[float]:
    """Parse 'a,b,c' as a list or 'lo:hi:n' as n log-spaced values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be lo:hi:count (got {text!r})")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 2 or hi <= lo:
            raise ValueError(f"bad range {text!r}")
        grid = np.geomspace(lo, hi, n) if log_range else np.linspace(lo, hi, n)
        return [float(v) for v in grid]
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_pgrid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"pgrid must be start:step:stop (got {text!r})")
    start, step, stop = (float(v) for v in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"bad pgrid {text!r}")
    n = int(round((stop - start) / step))
    return [start + k * step for k in range(n + 1) if start + k * step <= stop + 1e-12]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_map(cfg: RunConfig) -> int:
    betas = cfg.options["beta"]
    gammas = cfg.options["gamma"]

    def area_row(b):
        out = []
        for g in gammas:
            a = heisenberg_area(MorseParams(b, g))
            out.append((b, g, a))
        return out

    workers = cfg.n_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(area_row, betas))
    else:
        chunks = [area_row(b) for b in betas]
    rows = [cell for chunk in chunks for cell in chunk]
    _Sink(cfg, _out_file(cfg, "heisenberg_map")).write(
        ("beta", "gamma", "heisenberg_area"), rows
    )

    # zero-skewness curve gamma*(beta) by per-row sign bracketing
    sk_rows = []
    g_lo, g_hi = min(gammas), max(gammas)
    for b in betas:
        f = lambda g: skewness_freq(MorseParams(b, g))
        try:
            if f(g_lo) * f(g_hi) < 0:
                gstar = brentq(f, g_lo, g_hi, xtol=1e-12, rtol=1e-10)
                sk_rows.append((b, float(gstar)))
        except ValueError:
            continue
    _Sink(cfg, _out_file(cfg, "skewness_zero")).write(("beta", "gamma_star"), sk_rows)

    loc_rows = [(g, (g - 1.0) / 2.0) for g in gammas if g >= 1.0]
    _Sink(cfg, _out_file(cfg, "localization_border")).write(
        ("gamma", "beta_border"), loc_rows
    )

    p_rows = []
    for p_val in cfg.options["p_lines"]:
        for g in gammas:
            p_rows.append((p_val, p_val**2 / g, g))
    _Sink(cfg, _out_file(cfg, "constant_p_lines")).write(
        ("duration", "beta", "gamma"), p_rows
    )
    return 0


def cmd_gallery(cfg: RunConfig) -> int:
    betas = cfg.options["beta"]
    gammas = cfg.options["gamma"]
    n = 511  # odd: symmetric time grid, and the frequency grid hits 1 exactly

    index_rows = []
    for b in betas:
        for g in gammas:
            p = MorseParams(b, g)
            wp, pd = peak_frequency(p), duration(p)
            t_span = 20.0 * pd / wp
            wf = sample_wavelet(p, 1.0, n, t_span / n)
            t_scaled = wf.times * wp / pd
            freq_scaled = np.linspace(0.0, 3.0, n)
            spec = eval_spectrum(p, freq_scaled * wp)
            gauss = approx_spectrum(p, freq_scaled * wp, order=2)
            quart = approx_spectrum(p, freq_scaled * wp, order=4)
            rows = [
                (
                    t_scaled[i],
                    wf.values[i].real,
                    wf.values[i].imag,
                    abs(wf.values[i]),
                    freq_scaled[i],
                    spec[i],
                    gauss[i],
                    quart[i],
                )
                for i in range(n)
            ]
            stem = f"pair_beta{_fmt(b)}_gamma{_fmt(g)}".replace(".", "p")
            _Sink(cfg, _out_file(cfg, stem)).write(
                (
                    "time_scaled",
                    "wavelet_real",
                    "wavelet_imag",
                    "wavelet_modulus",
                    "freq_scaled",
                    "spectrum",
                    "gaussian_approx",
                    "quartic_approx",
                ),
                rows,
                meta={"beta": b, "gamma": g, "peak_frequency": wp, "duration": pd},
            )
            ext = "json" if cfg.format == "json" else "csv"
            index_rows.append((f"{stem}.{ext}", b, g, wp, pd))
    _Sink(cfg, _out_file(cfg, "index")).write(
        ("file", "beta", "gamma", "peak_frequency", "duration"), index_rows
    )
    return 0


def _morlet_curve_point(p_dur: float):
    """(1/A, rho^2) of the Morlet wavelet at matched duration, or blanks."""
    try:
        nu = morlet_nu_for_duration(p_dur)
    except ValueError as exc:
        print(f"warning: P={p_dur:g}: {exc}", file=sys.stderr)
        return None, None
    wav = morlet_wavelet(nu)
    m0 = quadrature_moment(wav.spectrum, 0, "energy", full_line=True)
    m1 = quadrature_moment(wav.spectrum, 1, "energy", full_line=True)
    m2 = quadrature_moment(wav.spectrum, 2, "energy", full_line=True)
    d = quadrature_moment(wav.spectrum, 0, "derivative_energy", full_line=True)
    mu = m1 / m0
    area = math.sqrt(d / m0) * math.sqrt(m2 / m0 - mu * mu)
    return 1.0 / area, gaussianity_rho_sq(wav)


def cmd_curves(cfg: RunConfig) -> int:
    p_grid = cfg.options["pgrid"]
    gammas = cfg.options["gamma"]
    columns = ["duration"]
    columns += [f"inv_area_gamma{_fmt(g)}" for g in gammas] + ["inv_area_morlet"]
    columns += [f"rho2_gamma{_fmt(g)}" for g in gammas] + ["rho2_morlet"]

    rows = []
    for p_dur in p_grid:
        row = [p_dur]
        inv_a, rho = [], []
        for g in gammas:
            b = p_dur**2 / g
            if b <= 0.5:
                inv_a.append(None)
                rho.append(None if b <= 0 else gaussianity_rho_sq(
                    gmw_wavelet(MorseParams(b, g))
                ))
                continue
            p = MorseParams(b, g)
            inv_a.append(1.0 / heisenberg_area(p))
            rho.append(gaussianity_rho_sq(gmw_wavelet(p)))
        m_inv, m_rho = _morlet_curve_point(p_dur)
        rows.append(row + inv_a + [m_inv] + rho + [m_rho])
    _Sink(cfg, _out_file(cfg, "concentration_curves")).write(columns, rows)
    return 0


def cmd_props(cfg: RunConfig) -> int:
    columns = (
        "beta",
        "gamma",
        "char_frequency",
        "duration",
        "sigma_t",
        "sigma_omega",
        "heisenberg_area",
        "skewness",
        "in_localization_region",
    )
    rows = []
    for b, g in cfg.options["pairs"]:
        p = MorseParams(b, g)
        if b == 0:
            rows.append(
                (b, g, half_power_frequency(p), 0.0, math.inf, None, math.inf, None,
                 int(p.in_localization_region))
            )
            continue
        rows.append(
            (
                b,
                g,
                peak_frequency(p),
                duration(p),
                sigma_t(p),
                sigma_omega(p),
                heisenberg_area(p),
                skewness_freq(p),
                int(p.in_localization_region),
            )
        )
    _Sink(cfg, _out_file(cfg, "properties")).write(columns, rows)
    return 0


def _read_signal_file(path: Path) -> SignalBuffer:
    dt = 1.0
    values = []
    complex_seen = False
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ValueError(f"cannot read signal file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("dt="):
                try:
                    dt = float(body[3:])
                except ValueError as exc:
                    raise ValueError(f"line {lineno}: bad dt header {body!r}") from exc
            continue
        parts = line.replace(",", " ").split()
        try:
            if len(parts) == 1:
                values.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                values.append(complex(float(parts[0]), float(parts[1])))
                complex_seen = True
            else:
                raise ValueError("expected 1 (real) or 2 (real imag) columns")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: could not parse {line!r}: {exc}") from exc
    if len(values) < 2:
        raise ValueError("signal file holds fewer than 2 samples")
    arr = np.asarray(values)
    if not complex_seen:
        arr = arr.real
    return SignalBuffer(samples=arr, dt=dt)


def cmd_cwt(cfg: RunConfig) -> int:
    sig = _read_signal_file(cfg.options["signal"])
    p = MorseParams(cfg.options["wavelet_beta"], cfg.options["wavelet_gamma"])
    grid = scale_grid(
        len(sig.samples),
        p,
        density=cfg.options["density"],
        eta=cfg.options["eta"],
        p0=cfg.options["p0"],
    )
    norm = "unitary_n_half" if cfg.options["norm"] == "nhalf" else "bandpass_n1"
    res = transform(sig, grid, normalization=norm, boundary=cfg.options["boundary"])

    n = res.coefficients.shape[0]
    times = np.arange(n) * sig.dt
    if cfg.format == "json":
        payload = {
            "command": "cwt",
            "config": cfg.describe(),
            "dt": sig.dt,
            "normalization": res.normalization,
            "boundary": res.boundary,
            "scales": [float(s) for s in grid.scales],
            "peak_frequencies": [float(f) for f in grid.peak_frequencies(sig.dt)],
            "real": [[float(v) for v in row] for row in res.coefficients.real],
            "imag": [[float(v) for v in row] for row in res.coefficients.imag],
        }
        text = json.dumps(payload, allow_nan=False) + "\n"
        out = _out_file(cfg, "cwt")
        if out is None:
            sys.stdout.write(text)
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text)
        return 0

    columns = ["t"] + [f"scale={_fmt(float(s))}" for s in grid.scales]
    lines = [f"# {cfg.describe()}"]
    lines.append(f"# dt={_fmt(sig.dt)} normalization={res.normalization} "
                 f"boundary={res.boundary}")
    lines.append(",".join(columns))
    for i in range(n):
        cells = [_fmt(times[i])] + [
            _fmt_complex(res.coefficients[i, j]) for j in range(len(grid))
        ]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    out = _out_file(cfg, "cwt")
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    return 0


def cmd_besselfit(cfg: RunConfig) -> int:
    grid = BesselFitGrid(
        beta_lo=cfg.options["beta"][0],
        beta_hi=cfg.options["beta"][-1],
        gamma_lo=cfg.options["gamma"][0],
        gamma_hi=cfg.options["gamma"][-1],
        n_beta=len(cfg.options["beta"]),
        n_gamma=len(cfg.options["gamma"]),
    )
    res = bessel_fit(grid)
    print(
        f"best beta={_fmt(res.best_params.beta)} "
        f"gamma={_fmt(res.best_params.gamma)} alpha_sq={_fmt(res.alpha_sq)} "
        f"({len(res.grid_trace)} evaluations)"
    )
    if cfg.out is not None:
        _Sink(cfg, _out_file(cfg, "besselfit_trace")).write(
            ("beta", "gamma", "alpha_sq"),
            res.grid_trace,
            meta={
                "best_beta": res.best_params.beta,
                "best_gamma": res.best_params.gamma,
                "best_alpha_sq": res.alpha_sq,
            },
        )
    return 0


def cmd_limits(cfg: RunConfig) -> int:
    rows = limit_diagnostics(
        cfg.options["pvalue"], cfg.options["gamma"], target=cfg.options["target"]
    )
    _Sink(cfg, _out_file(cfg, "limit_deviations")).write(
        ("gamma", "beta", "sup_deviation"),
        [(r.gamma, r.beta, r.sup_deviation) for r in rows],
        meta={"duration": cfg.options["pvalue"], "target": cfg.options["target"]},
    )
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="morsekit",
        description="Generalized Morse wavelet toolkit: parameter maps, "
        "galleries, concentration curves, properties, CWT, Bessel fit, "
        "and limiting-form diagnostics.",
    )
    ap.add_argument("--version", action="version", version=f"morsekit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, out_help="output file or directory"):
        sp.add_argument("--out", type=Path, default=None, help=out_help)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument(
            "--threads",
            type=int,
            default=int(os.environ.get("MORSEKIT_THREADS", "0")),
            help="worker threads (0 = auto); results are thread-count independent",
        )

    sp = sub.add_parser("map", help="Heisenberg-area map over the (beta, gamma) plane")
    common(sp, "output directory (required)")
    sp.add_argument("--beta", default="0.55:60:200", help="list or lo:hi:n log range")
    sp.add_argument("--gamma", default="0.3:30:200", help="list or lo:hi:n log range")
    sp.add_argument(
        "--p-lines",
        default=",".join(str(v) for v in DEFAULT_P_LINES),
        help="constant-duration diagonals to emit",
    )

    sp = sub.add_parser("gallery", help="time/frequency wavelet gallery")
    common(sp, "output directory (required)")
    sp.add_argument("--beta", default=",".join(str(v) for v in GALLERY_VALUES))
    sp.add_argument("--gamma", default=",".join(str(v) for v in GALLERY_VALUES))

    sp = sub.add_parser(
        "curves", help="1/A and Gaussian-similarity curves vs duration"
    )
    common(sp)
    sp.add_argument("--pgrid", default="0.5:0.05:8", help="start:step:stop")
    sp.add_argument("--gamma", default="1,2,3,4,5,6")

    sp = sub.add_parser("props", help="property table for (beta,gamma) pairs")
    common(sp)
    sp.add_argument("pairs", nargs="+", help="pairs as beta,gamma")

    sp = sub.add_parser("cwt", help="continuous wavelet transform of a signal file")
    common(sp)
    sp.add_argument("--signal", type=Path, required=True)
    sp.add_argument("--wavelet-beta", type=float, default=9.0)
    sp.add_argument("--wavelet-gamma", type=float, default=3.0)
    sp.add_argument("--density", type=int, default=4)
    sp.add_argument("--eta", type=float, default=0.1)
    sp.add_argument("--p0", type=float, default=5.0)
    sp.add_argument("--norm", choices=("n1", "nhalf"), default="n1")
    sp.add_argument(
        "--boundary", choices=("periodic", "zero", "mirror"), default="periodic"
    )

    sp = sub.add_parser("besselfit", help="best Morse approximation of the Bessel wavelet")
    common(sp)
    sp.add_argument("--beta", default="1:50:100", help="lo:hi:n log grid")
    sp.add_argument("--gamma", default="0.02:2:100", help="lo:hi:n log grid")

    sp = sub.add_parser("limits", help="sup-norm distance from limiting forms")
    common(sp)
    sp.add_argument("--pvalue", type=float, default=3.0, help="duration P")
    sp.add_argument("--gamma", default="1,0.5,0.1,0.01")
    sp.add_argument("--target", choices=("lognormal", "shannon"), default="lognormal")
    return ap


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        out=args.out,
        format=args.format,
        threads=args.threads,
    )
    if args.command == "map":
        cfg.options["beta"] = _parse_list_or_range(args.beta)
        cfg.options["gamma"] = _parse_list_or_range(args.gamma)
        cfg.options["p_lines"] = [float(v) for v in args.p_lines.split(",")]
        if cfg.out is None:
            raise ValueError("map writes several files: --out DIR is required")
    elif args.command == "gallery":
        cfg.options["beta"] = _parse_list_or_range(args.beta)
        cfg.options["gamma"] = _parse_list_or_range(args.gamma)
        if cfg.out is None:
            raise ValueError("gallery writes several files: --out DIR is required")
    elif args.command == "curves":
        cfg.options["pgrid"] = _parse_pgrid(args.pgrid)
        cfg.options["gamma"] = _parse_list_or_range(args.gamma)
    elif args.command == "props":
        pairs = []
        for text in args.pairs:
            parts = text.split(",")
            if len(parts) != 2:
                raise ValueError(f"each pair must be beta,gamma (got {text!r})")
            pairs.append((float(parts[0]), float(parts[1])))
        cfg.options["pairs"] = pairs
    elif args.command == "cwt":
        cfg.options.update(
            signal=args.signal,
            wavelet_beta=args.wavelet_beta,
            wavelet_gamma=args.wavelet_gamma,
            density=args.density,
            eta=args.eta,
            p0=args.p0,
            norm=args.norm,
            boundary=args.boundary,
        )
    elif args.command == "besselfit":
        cfg.options["beta"] = _parse_list_or_range(args.beta)
        cfg.options["gamma"] = _parse_list_or_range(args.gamma)
    elif args.command == "limits":
        cfg.options["pvalue"] = args.pvalue
        cfg.options["gamma"] = [float(v) for v in args.gamma.split(",")]
        cfg.options["target"] = args.target
    return cfg


_DISPATCH = {
    "map": cmd_map,
    "gallery": cmd_gallery,
    "curves": cmd_curves,
    "props": cmd_props,
    "cwt": cmd_cwt,
    "besselfit": cmd_besselfit,
    "limits": cmd_limits,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _DISPATCH[args.command](cfg)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
