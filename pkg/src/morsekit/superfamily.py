"""Named members and limits of the analytic-wavelet superfamily.

The generalized Morse family contains the Cauchy/Klauder/Paul wavelets at
gamma = 1, the analytic Derivative-of-Gaussian wavelets at gamma = 2, and
the Airy wavelets at gamma = 3; it reaches the lognormal (log Gabor)
wavelets as gamma -> 0 at fixed duration, the Shannon wavelet as
gamma -> inf, and the analytic filter at (0, 0).  The Morlet and Bessel
wavelets sit outside the family; the Bessel wavelet is nevertheless
approximated to alpha^2 ~ 0.9995 near (beta, gamma) = (22, 1/10), which
`bessel_fit` recovers by grid search plus pattern-search refinement.
Growing beta at fixed gamma shrinks the relative bandwidth
sigma_omega/omega_peak toward zero, so in that corner the members tend to
pure complex exponentials (a diagnostic, not a constructible member).

Cross-family comparisons put every spectrum on a common footing: peak
value 2, and for Morse members a frequency axis rescaled so the peak sits
at unit frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import MorseParams, duration, eval_rescaled_spectrum
from .props import quadrature_integral

__all__ = [
    "MorletParams",
    "NamedWavelet",
    "FitResult",
    "BesselFitGrid",
    "LimitDeviation",
    "morlet_spectrum",
    "morlet_peak_and_duration",
    "morlet_nu_for_duration",
    "lognormal_spectrum",
    "shannon_spectrum",
    "shannon_time",
    "bessel_spectrum",
    "analytic_filter_spectrum",
    "analytic_filter_time_samples",
    "gmw_wavelet",
    "morlet_wavelet",
    "lognormal_wavelet",
    "shannon_wavelet",
    "bessel_wavelet",
    "analytic_filter_wavelet",
    "similarity_alpha_sq",
    "gaussianity_rho_sq",
    "bessel_fit",
    "limit_diagnostics",
]


@dataclass(frozen=True)
class MorletParams:
    """Oscillation frequency of the Morlet wavelet (radian)."""

    nu: float

    def __post_init__(self):
        if not np.isfinite(self.nu) or self.nu <= 0:
            raise ValueError(f"nu must be finite and > 0 (got {self.nu})")


@dataclass(frozen=True)
class NamedWavelet:
    """A wavelet known to the similarity machinery by its spectrum.

    ``spectrum`` must be evaluable at any finite frequency.  ``gamma_eff``
    advises the quadrature substitution for long-tailed spectra;
    ``full_line`` marks spectra with negative-frequency support (Morlet);
    ``hard_upper`` marks a hard band edge (Shannon).
    """

    kind: str
    params: object
    spectrum: Callable
    gamma_eff: float = 1.0
    full_line: bool = False
    hard_upper: float | None = None
    square_integrable: bool = True


@dataclass(frozen=True)
class FitResult:
    """Outcome of the Bessel-approximation search."""

    best_params: MorseParams
    alpha_sq: float
    grid_trace: list = field(default_factory=list)


@dataclass(frozen=True)
class BesselFitGrid:
    """Coarse search box for bessel_fit (log-spaced in both axes)."""

    beta_lo: float = 1.0
    beta_hi: float = 50.0
    gamma_lo: float = 0.02
    gamma_hi: float = 2.0
    n_beta: int = 100
    n_gamma: int = 100

    def __post_init__(self):
        if min(self.beta_lo, self.gamma_lo) <= 0:
            raise ValueError("grid bounds must be positive")
        if self.beta_hi <= self.beta_lo or self.gamma_hi <= self.gamma_lo:
            raise ValueError("grid bounds must be increasing")
        if min(self.n_beta, self.n_gamma) < 2:
            raise ValueError("need at least a 2x2 grid")


@dataclass(frozen=True)
class LimitDeviation:
    gamma: float
    beta: float
    sup_deviation: float


# ---------------------------------------------------------------------------
# Morlet
# ---------------------------------------------------------------------------


def _morlet_unnormalized(omega, nu: float):
    # exp(-(w-nu)^2/2) * (1 - exp(-w nu)) rewritten as a difference of two
    # Gaussians so no factor overflows at large negative frequency
    w = np.asarray(omega, dtype=float)
    return np.exp(-0.5 * (w - nu) ** 2) - np.exp(-0.5 * (w * w + nu * nu))


def morlet_peak_and_duration(m: MorletParams) -> tuple[float, float]:
    """Peak frequency and duration of the Morlet wavelet.

    The peak solves d/dw ln Psi = -(w - nu) + nu q/(1 - q) = 0 with
    q = exp(-w nu), by safeguarded Newton from initial guess nu; the
    derivative is strictly decreasing so the root is unique and always
    exceeds nu.  The duration is the square root of minus the rescaled
    second log-derivative at the peak, the analogue of sqrt(beta*gamma).
    """
    nu = m.nu
    if nu < 0.1:
        raise ValueError(f"peak solver requires nu >= 0.1 (got {nu})")

    def gfun(w):
        q = math.exp(-w * nu)
        return -(w - nu) + nu * q / (1.0 - q)

    def gprime(w):
        q = math.exp(-w * nu)
        return -1.0 - nu * nu * q / (1.0 - q) ** 2

    # bracket: g(nu) > 0 and g decreasing
    lo, hi = nu, nu + 1.0
    for _ in range(200):
        if gfun(hi) < 0:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise RuntimeError(f"could not bracket Morlet peak for nu={nu}")

    w = nu
    for _ in range(100):
        gw = gfun(w)
        if gw > 0:
            lo = w
        else:
            hi = w
        step = gw / gprime(w)
        w_new = w - step
        if not lo < w_new < hi:
            w_new = 0.5 * (lo + hi)
        if abs(w_new - w) <= 1e-12 * max(1.0, abs(w)):
            w = w_new
            break
        w = w_new
    else:
        raise RuntimeError(
            f"Morlet peak iteration did not converge for nu={nu} "
            f"(bracket [{lo}, {hi}])"
        )

    q = math.exp(-w * nu)
    p_sq = w * w * (1.0 + nu * nu * q / (1.0 - q) ** 2)
    return w, math.sqrt(p_sq)


def morlet_amplitude(m: MorletParams) -> float:
    """Normalizing constant putting the spectral maximum at 2."""
    wp, _ = morlet_peak_and_duration(m)
    return 2.0 / float(_morlet_unnormalized(wp, m.nu))


def morlet_spectrum(m: MorletParams, omega):
    """Morlet spectrum, maximum value 2.

    The zero-mean correction makes the value negative on part of the
    negative-frequency axis: the wavelet is only approximately analytic.
    """
    a = morlet_amplitude(m)
    out = a * _morlet_unnormalized(omega, m.nu)
    return float(out) if np.ndim(omega) == 0 else out


def morlet_nu_for_duration(p_target: float, nu_max: float = 200.0) -> float:
    """Invert the duration map: the nu whose Morlet duration equals
    p_target.  The duration decreases to sqrt(2) as nu -> 0, so targets
    at or below that are unreachable and raise."""
    from scipy.optimize import brentq

    lo, hi = 0.1, nu_max
    p_lo = morlet_peak_and_duration(MorletParams(lo))[1]
    if p_target <= p_lo:
        raise ValueError(
            f"no Morlet wavelet has duration {p_target:.4g} "
            f"(minimum reachable is {p_lo:.4g})"
        )
    f = lambda nu: morlet_peak_and_duration(MorletParams(nu))[1] - p_target
    return float(brentq(f, lo, hi, xtol=1e-12, rtol=8.9e-16))


# ---------------------------------------------------------------------------
# other named spectra
# ---------------------------------------------------------------------------


def lognormal_spectrum(p_duration: float, omega):
    """Lognormal (log Gabor) spectrum 2 exp(-P^2 ln^2(w) / 2), zero for
    w <= 0; symmetric in w <-> 1/w with peak value 2 at unit frequency."""
    if p_duration <= 0:
        raise ValueError("duration must be positive")
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.zeros_like(w)
    pos = w > 0
    with np.errstate(under="ignore"):
        out[pos] = 2.0 * np.exp(-0.5 * p_duration**2 * np.log(w[pos]) ** 2)
    return float(out[0]) if scalar else out


def shannon_spectrum(omega):
    """Ideal band-pass rectangle: 2 on 0 < w <= 1, else 0."""
    w = np.asarray(omega, dtype=float)
    out = np.where((w > 0) & (w <= 1.0), 2.0, 0.0)
    return float(out) if np.ndim(omega) == 0 else out


def shannon_time(t):
    """Time-domain Shannon form pi*sinc(t/2pi)*exp(it), with
    sinc(x) = sin(pi x)/(pi x).  Decays only like 1/t.

    Note the conventional published form evaluated here is pi^2 times, and
    a half-unit carrier shift away from, the exact inverse transform of
    the unit band-pass spectrum: its own spectrum is 2*pi^2 on the band
    (1/2, 3/2].
    """
    tt = np.asarray(t, dtype=float)
    out = np.pi * np.sinc(tt / (2.0 * np.pi)) * np.exp(1j * tt)
    return complex(out) if np.ndim(t) == 0 else out


def bessel_spectrum(omega):
    """Bessel wavelet spectrum 2 e^2 exp(-(w + 1/w)) for w > 0, else 0.

    Essentially zero at the origin (every derivative vanishes) and peak
    value 2 at unit frequency.
    """
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.zeros_like(w)
    pos = w > 0
    with np.errstate(under="ignore", over="ignore"):
        out[pos] = 2.0 * np.exp(2.0 - (w[pos] + 1.0 / w[pos]))
    return float(out[0]) if scalar else out


def analytic_filter_spectrum(omega):
    """Twice the analytic filter: 2 for w > 0, 0 otherwise."""
    w = np.asarray(omega, dtype=float)
    out = np.where(w > 0, 2.0, 0.0)
    return float(out) if np.ndim(omega) == 0 else out


def analytic_filter_time_samples(n: int, dt: float):
    """Band-limited realization of the analytic filter's time side.

    The exact time-domain object is a delta plus the Hilbert kernel
    i/(pi t) and is not a function; the only faithful sampled form is the
    inverse DFT of the sampled spectrum over the nonnegative bins (the
    filter never decays, so the band edge is the Nyquist bin by
    construction), centered on the grid midpoint.
    """
    if n < 16 or dt <= 0:
        raise ValueError("need n >= 16 and dt > 0")
    k = np.arange(n)
    spec = np.zeros(n)
    pos = k[1 : n // 2 + 1]
    spec[pos] = 2.0
    values = np.roll(np.fft.ifft(spec), n // 2) / dt
    times = (k - n // 2) * dt
    return times, values


# ---------------------------------------------------------------------------
# NamedWavelet constructors
# ---------------------------------------------------------------------------


def gmw_wavelet(p: MorseParams) -> NamedWavelet:
    """Morse member with its frequency axis rescaled so the peak sits at
    unit frequency, matching the canonical scale of the other named
    spectra (all of which peak at or band-limit to w = 1)."""
    if p.beta <= 0:
        raise ValueError("cross-family comparison needs beta > 0")
    return NamedWavelet(
        kind="gmw",
        params=p,
        spectrum=lambda w: eval_rescaled_spectrum(p, w),
        gamma_eff=p.gamma,
    )


def morlet_wavelet(m: MorletParams | float) -> NamedWavelet:
    if not isinstance(m, MorletParams):
        m = MorletParams(float(m))
    a = morlet_amplitude(m)
    return NamedWavelet(
        kind="morlet",
        params=m,
        spectrum=lambda w: a * _morlet_unnormalized(w, m.nu),
        full_line=True,
    )


def lognormal_wavelet(p_duration: float) -> NamedWavelet:
    return NamedWavelet(
        kind="lognormal",
        params=p_duration,
        spectrum=lambda w: lognormal_spectrum(p_duration, w),
    )


def shannon_wavelet() -> NamedWavelet:
    return NamedWavelet(
        kind="shannon", params=None, spectrum=shannon_spectrum, hard_upper=1.0
    )


def bessel_wavelet() -> NamedWavelet:
    return NamedWavelet(kind="bessel", params=None, spectrum=bessel_spectrum)


def analytic_filter_wavelet() -> NamedWavelet:
    return NamedWavelet(
        kind="analytic_filter",
        params=None,
        spectrum=analytic_filter_spectrum,
        square_integrable=False,
    )


# ---------------------------------------------------------------------------
# similarity functionals
# ---------------------------------------------------------------------------


def _cross_integral(w1: NamedWavelet, w2: NamedWavelet) -> float:
    full = w1.full_line or w2.full_line
    uppers = [u for u in (w1.hard_upper, w2.hard_upper) if u is not None]
    hard_upper = min(uppers) if uppers else None
    gamma_eff = 1.0 if full else max(w1.gamma_eff, w2.gamma_eff)
    f = lambda w: np.asarray(w1.spectrum(w), dtype=float) * np.asarray(
        w2.spectrum(w), dtype=float
    )
    return quadrature_integral(
        f, gamma_eff=gamma_eff, full_line=full, hard_upper=hard_upper
    )


def _self_energy(w: NamedWavelet) -> float:
    return _cross_integral(w, w)


def similarity_alpha_sq(w1: NamedWavelet, w2: NamedWavelet) -> float:
    """Squared inner product of two unit-energy spectra, in [0, 1].

    Both supported spectra are real, so the time-domain magnitude-squared
    inner product equals its frequency-domain counterpart by Parseval:
    (int S1 S2)^2 / (int S1^2 * int S2^2).  Equals 1 only for identical
    shapes (Cauchy-Schwarz).
    """
    for w in (w1, w2):
        if not w.square_integrable:
            raise ValueError(f"{w.kind} spectrum is not square integrable")
    num = _cross_integral(w1, w2)
    return float(num * num / (_self_energy(w1) * _self_energy(w2)))


def _peak_and_duration_of(w: NamedWavelet) -> tuple[float, float]:
    if w.kind == "gmw":
        return 1.0, duration(w.params)  # rescaled spectrum peaks at 1
    if w.kind == "morlet":
        return morlet_peak_and_duration(w.params)
    raise ValueError(f"no peak/duration definition for kind {w.kind!r}")


def gaussianity_rho_sq(w: NamedWavelet) -> float:
    """Similarity of a wavelet to the Gaussian bell implied by its own
    peak frequency and duration, 2 exp(-P^2 (w/w_p - 1)^2 / 2), both
    normalized to unit energy.

    The Morlet is integrated over the full frequency line (its correction
    term lives partly at negative frequency); Morse members over (0, inf).
    """
    wp, p_dur = _peak_and_duration_of(w)
    rate = 0.5 * (p_dur / wp) ** 2

    def gauss(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(under="ignore"):
            return 2.0 * np.exp(-rate * (x - wp) ** 2)

    gw = NamedWavelet(
        kind="gaussian_form", params=None, spectrum=gauss, full_line=w.full_line
    )
    num = _cross_integral(w, gw)
    return float(num * num / (_self_energy(w) * _self_energy(gw)))


# ---------------------------------------------------------------------------
# Bessel fit
# ---------------------------------------------------------------------------


def bessel_fit(grid: BesselFitGrid | None = None) -> FitResult:
    """Search the (beta, gamma) plane for the best Bessel-wavelet match.

    A coarse log-spaced grid scan (row-major over beta then gamma) is
    followed by a derivative-free pattern search in log-parameter space,
    halving the step on failure to improve and stopping once it falls
    below 1e-3.  The trace records every coarse-grid evaluation in
    row-major order, then the refinement path.
    """
    if grid is None:
        grid = BesselFitGrid()
    bess = bessel_wavelet()
    e_bess = _self_energy(bess)

    def alpha_sq(beta: float, gamma: float) -> float:
        wav = gmw_wavelet(MorseParams(beta, gamma))
        num = _cross_integral(wav, bess)
        return float(num * num / (_self_energy(wav) * e_bess))

    betas = np.geomspace(grid.beta_lo, grid.beta_hi, grid.n_beta)
    gammas = np.geomspace(grid.gamma_lo, grid.gamma_hi, grid.n_gamma)
    trace = []
    best = (-1.0, grid.beta_lo, grid.gamma_lo)
    for b in betas:
        for g in gammas:
            a2 = alpha_sq(b, g)
            trace.append((float(b), float(g), a2))
            if a2 > best[0]:
                best = (a2, float(b), float(g))

    # pattern-search refinement in log coordinates, clipped to the box
    log_lo = np.log(np.array([grid.beta_lo, grid.gamma_lo]))
    log_hi = np.log(np.array([grid.beta_hi, grid.gamma_hi]))
    x = np.log(np.array([best[1], best[2]]))
    fx = best[0]
    step = float(
        max(
            np.log(betas[1] / betas[0]),
            np.log(gammas[1] / gammas[0]),
        )
    )
    while step >= 1e-3:
        improved = False
        for axis in (0, 1):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[axis] += sign * step
                cand = np.clip(cand, log_lo, log_hi)
                if np.array_equal(cand, x):
                    continue
                b, g = float(np.exp(cand[0])), float(np.exp(cand[1]))
                a2 = alpha_sq(b, g)
                trace.append((b, g, a2))
                if a2 > fx:
                    x, fx = cand, a2
                    improved = True
        if not improved:
            step *= 0.5

    beta, gamma = float(np.exp(x[0])), float(np.exp(x[1]))
    return FitResult(
        best_params=MorseParams(beta, gamma), alpha_sq=fx, grid_trace=trace
    )


# ---------------------------------------------------------------------------
# limiting-form diagnostics
# ---------------------------------------------------------------------------

_LIMIT_GRID = np.arange(0.05, 4.0 + 1e-12, 0.002)


def limit_diagnostics(
    p_duration: float, gammas, target: str = "lognormal"
) -> list[LimitDeviation]:
    """Sup-norm distance of the peak-rescaled Morse spectrum from a
    limiting form, at fixed duration P (so beta = P^2/gamma).

    target="lognormal" compares against 2 exp(-P^2 ln^2 w / 2), the
    gamma -> 0 limit; target="shannon" against the unit band-pass
    rectangle, the gamma -> inf limit, excluding a +-0.05 band around the
    discontinuity at w = 1 where pointwise convergence fails.  The grid
    is fixed at w in [0.05, 4] with step 0.002.
    """
    if p_duration <= 0:
        raise ValueError("duration must be positive")
    if target not in ("lognormal", "shannon"):
        raise ValueError(f"unknown target {target!r}")

    w = _LIMIT_GRID
    if target == "lognormal":
        ref = lognormal_spectrum(p_duration, w)
        mask = np.ones_like(w, dtype=bool)
    else:
        ref = shannon_spectrum(w)
        mask = np.abs(w - 1.0) >= 0.05

    rows = []
    for g in gammas:
        beta = p_duration**2 / g
        phi = eval_rescaled_spectrum(MorseParams(beta, g), w)
        dev = float(np.max(np.abs(phi - ref)[mask]))
        rows.append(LimitDeviation(gamma=float(g), beta=float(beta), sup_deviation=dev))
    return rows
