"""Generalized Morse wavelets: exact frequency-domain evaluation and
time-domain sampling.

The wavelet family is defined in the frequency domain as

    Psi(omega) = U(omega) * a * omega**beta * exp(-omega**gamma)

where ``U`` is the unit step and the amplitude ``a`` is chosen so that the
spectrum peaks at the value 2.  All power/exponential evaluation is done in
log space so that large ``beta`` (up to several hundred) neither overflows
nor loses the peak normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

import numpy as np

__all__ = [
    "MorseParams",
    "SampledSpectrum",
    "SampledWaveform",
    "ExpansionCoeffs",
    "peak_frequency",
    "half_power_frequency",
    "duration",
    "amplitude_constant",
    "log_amplitude_constant",
    "eval_spectrum",
    "eval_rescaled_spectrum",
    "log_spectrum_derivatives",
    "expansion_coeffs",
    "approx_spectrum",
    "sample_spectrum",
    "sample_wavelet",
]


@dataclass(frozen=True)
class MorseParams:
    """The (beta, gamma) pair indexing the generalized Morse family.

    ``beta`` controls the low-frequency (and time-domain) decay, ``gamma``
    the high-frequency decay.  ``beta = 0`` is allowed: the member is then
    an analytic lowpass filter rather than a zero-mean wavelet.
    """

    beta: float
    gamma: float

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be finite and >= 0 (got {self.beta})")
        if not np.isfinite(self.gamma) or self.gamma <= 0:
            raise ValueError(f"gamma must be finite and > 0 (got {self.gamma})")

    @property
    def in_localization_region(self) -> bool:
        """True where the family solves the time/frequency localization
        operator problem (queried for reporting, never enforced)."""
        return self.gamma >= 1.0 and self.beta > (self.gamma - 1.0) / 2.0


@dataclass(frozen=True)
class SampledSpectrum:
    """Frequency-domain samples on an explicit radian grid."""

    frequencies: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        freqs = np.asarray(self.frequencies, dtype=float)
        vals = np.asarray(self.values)
        if freqs.ndim != 1 or vals.ndim != 1 or len(freqs) != len(vals):
            raise ValueError("frequencies and values must be 1-D and equally long")
        if len(freqs) > 1 and not np.all(np.diff(freqs) > 0):
            raise ValueError("frequency grid must be strictly increasing")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SampledWaveform:
    """Time-domain samples on a uniform grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if t.ndim != 1 or v.ndim != 1 or len(t) != len(v):
            raise ValueError("times and values must be 1-D and equally long")
        if len(t) > 2:
            steps = np.diff(t)
            # allow ulp-level jitter from forming t = k*dt at large |t|
            tol = 1e-9 * abs(steps[0]) + 1e-12 * float(np.abs(t).max())
            if not np.all(np.abs(steps - steps[0]) <= tol):
                raise ValueError("time grid must be uniform")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Coefficients of the log-spectrum expansion about the peak.

    In the nondimensional offset x = omega/omega_peak - 1 the log spectrum
    is -duration_sq/2 * x**2 + cubic * x**3 + quartic * x**4 + O(x**5).
    The cubic term vanishes identically at gamma = 3.
    """

    duration_sq: float
    cubic: float
    quartic: float


def peak_frequency(p: MorseParams) -> float:
    """Frequency at which the spectrum is maximized: (beta/gamma)**(1/gamma).

    Computed as exp((ln beta - ln gamma)/gamma) so that extreme parameter
    ratios neither overflow nor underflow prematurely.
    """
    if p.beta == 0:
        raise ValueError(
            "beta = 0 has no interior spectral maximum; "
            "use half_power_frequency for a characteristic frequency"
        )
    return float(np.exp((np.log(p.beta) - np.log(p.gamma)) / p.gamma))


def half_power_frequency(p: MorseParams) -> float:
    """Characteristic frequency of the beta = 0 lowpass member: the point
    where the spectrum has fallen to half its peak value, (ln 2)**(1/gamma)."""
    if p.beta != 0:
        raise ValueError("half_power_frequency is the beta = 0 reporting path")
    return float(np.log(2.0) ** (1.0 / p.gamma))


def duration(p: MorseParams) -> float:
    """Dimensionless duration P = sqrt(beta*gamma).

    P/pi counts the oscillations inside the central time window, and 1/P is
    a bandwidth measure; P is constant along beta*gamma = const diagonals.
    """
    return float(np.sqrt(p.beta * p.gamma))


def log_amplitude_constant(p: MorseParams) -> float:
    """ln of the amplitude constant enforcing a spectral peak value of 2."""
    if p.beta == 0:
        return float(np.log(2.0))
    b, g = p.beta, p.gamma
    return float(np.log(2.0) + (b / g) * (1.0 + np.log(g) - np.log(b)))


def amplitude_constant(p: MorseParams) -> float:
    """Amplitude constant a with peak spectral value 2; equals 2 at beta = 0.

    May overflow to inf for extreme (beta, gamma); spectrum evaluation never
    forms it explicitly (see log_amplitude_constant).
    """
    return float(np.exp(log_amplitude_constant(p)))


def _log_spectrum_exponent(p: MorseParams, omega: np.ndarray) -> np.ndarray:
    # exponent of Psi on omega > 0 only; callers mask non-positive omega
    la = log_amplitude_constant(p)
    logw = np.log(omega)
    with np.errstate(over="ignore"):
        return la + p.beta * logw - np.exp(p.gamma * logw)


def eval_spectrum(p: MorseParams, omega):
    """Evaluate the frequency-domain wavelet Psi(omega).

    For beta > 0 the log-space exponent is formed relative to the peak,
    ln 2 + beta*ln(w/w_p) + (beta/gamma)*(1 - (w/w_p)**gamma), which keeps
    the peak value exactly 2 where the direct form ln a + beta*ln w -
    w**gamma would cancel numbers of order beta/gamma.

    Parameters
    ----------
    omega : float or ndarray
        Radian frequency; any real value.

    Returns
    -------
    float or ndarray
        Nonnegative spectral values.  Zero for omega <= 0 (analyticity;
        also exactly at omega = 0 for every beta >= 0), with underflow
        flushed to zero.
    """
    if p.beta > 0:
        return eval_rescaled_spectrum(p, np.asarray(omega) / peak_frequency(p))
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.zeros_like(w)
    pos = (w > 0) & np.isfinite(w)
    if np.any(pos):
        with np.errstate(under="ignore"):
            out[pos] = np.exp(_log_spectrum_exponent(p, w[pos]))
    return float(out[0]) if scalar else out


def eval_rescaled_spectrum(p: MorseParams, omega):
    """Spectrum with the frequency axis rescaled by the peak frequency, so
    the maximum value 2 always sits at unit frequency.

    Equal to eval_spectrum(p, peak_frequency(p) * omega) but evaluated
    directly as 2 * omega**beta * exp(beta/gamma * (1 - omega**gamma)),
    which stays finite for parameter values whose peak frequency would
    overflow.
    """
    if p.beta == 0:
        raise ValueError("rescaled spectrum requires beta > 0 (no peak to rescale by)")
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.zeros_like(w)
    pos = (w > 0) & np.isfinite(w)
    if np.any(pos):
        b, g = p.beta, p.gamma
        logw = np.log(w[pos])
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            expo = b * logw + (b / g) * (1.0 - np.exp(g * logw))
            vals = 2.0 * np.exp(expo)
        out[pos] = np.where(np.isnan(expo), 0.0, vals)
    return float(out[0]) if scalar else out


def log_spectrum_derivatives(p: MorseParams, n_max: int) -> list[float]:
    """Derivatives of ln Psi at the peak frequency, orders 1..n_max.

    Uses the exact form ln Psi = ln a + beta ln w - w**gamma together with
    the peak identity w_p**gamma = beta/gamma, which reduces order n to

        beta * [(-1)**(n-1) (n-1)! - prod_{j=1..n-1}(gamma - j)] / w_p**n

    so the first derivative is exactly zero.
    """
    if p.beta <= 0:
        raise ValueError("log-spectrum derivatives require beta > 0")
    if not 1 <= n_max <= 10:
        raise ValueError("n_max must be between 1 and 10")
    log_wp = (math.log(p.beta) - math.log(p.gamma)) / p.gamma
    out = []
    for n in range(1, n_max + 1):
        prod = 1.0
        for j in range(1, n):
            prod *= p.gamma - j
        coef = (-1.0) ** (n - 1) * factorial(n - 1) - prod
        if coef == 0.0:
            out.append(0.0)
            continue
        # beta * coef / wp**n via logs: wp**n alone can leave double range
        mag = math.log(p.beta) + math.log(abs(coef)) - n * log_wp
        out.append(math.copysign(math.exp(mag), coef) if mag > -745.0 else 0.0)
    return out


def expansion_coeffs(p: MorseParams) -> ExpansionCoeffs:
    """Cubic and quartic coefficients of the log-spectrum expansion.

    cubic  = -(gamma - 3) * beta*gamma / 6
    quartic = -((gamma - 3)**2 + 2) * beta*gamma / 24

    These agree with w_p**n / n! times the exact log derivatives.
    """
    if p.beta <= 0:
        raise ValueError("expansion coefficients require beta > 0")
    p2 = p.beta * p.gamma
    cubic = -(p.gamma - 3.0) * p2 / 6.0
    quartic = -((p.gamma - 3.0) ** 2 + 2.0) * p2 / 24.0
    return ExpansionCoeffs(duration_sq=p2, cubic=cubic, quartic=quartic)


def approx_spectrum(p: MorseParams, omega, order: int = 2):
    """Local approximants of the spectrum about its peak.

    order=2 is the pure Gaussian form 2*exp(-P**2/2 * x**2) with
    x = omega/omega_peak - 1; order=4 additionally keeps the cubic and
    quartic log-expansion terms.  Neither applies the positive-frequency
    step: these are local models, finite at any real frequency.
    """
    if order not in (2, 4):
        raise ValueError("order must be 2 or 4")
    wp = peak_frequency(p)
    c = expansion_coeffs(p)
    x = np.asarray(omega, dtype=float) / wp - 1.0
    expo = -0.5 * c.duration_sq * x**2
    if order == 4:
        expo = expo + c.cubic * x**3 + c.quartic * x**4
    with np.errstate(under="ignore", over="ignore"):
        out = 2.0 * np.exp(expo)
    return float(out) if np.ndim(omega) == 0 else out


def sample_spectrum(p: MorseParams, frequencies) -> SampledSpectrum:
    """Spectrum samples on an explicit (strictly increasing) radian grid."""
    freqs = np.asarray(frequencies, dtype=float)
    return SampledSpectrum(frequencies=freqs, values=eval_spectrum(p, freqs))


def sample_wavelet(
    p: MorseParams,
    scale: float,
    n: int,
    dt: float,
    alias_threshold: float = 0.1,
) -> SampledWaveform:
    """Sample the time-domain wavelet at the given scale.

    The spectrum Psi(scale * w_k) is sampled on the DFT frequency grid
    w_k = 2*pi*k/(n*dt), k = 0..n-1 (the full circle treated as
    nonnegative frequencies), inverse transformed, and circularly rotated
    so the wavelet center sits at the grid midpoint.  The scale enters only
    through the spectrum argument, which realizes the 1/s time-domain
    normalization.

    Parameters
    ----------
    scale : float
        Dilation factor s > 0; the scaled peak frequency is
        peak_frequency(p)/s.
    n : int
        Sample count, at least 16.
    dt : float
        Sample spacing in time units.
    alias_threshold : float
        Raise if the spectrum at the Nyquist frequency exceeds this
        fraction of its peak value.

    Returns
    -------
    SampledWaveform
        n complex samples on times (arange(n) - n//2) * dt.
    """
    if scale <= 0:
        raise ValueError(f"scale must be positive (got {scale})")
    if n < 16:
        raise ValueError(f"need at least 16 samples (got {n})")
    if dt <= 0:
        raise ValueError(f"dt must be positive (got {dt})")

    nyquist = np.pi / dt
    if p.beta > 0 and scale * peak_frequency(p) >= nyquist:
        raise ValueError(
            "scaled peak frequency exceeds the Nyquist rate; "
            "increase the scale or decrease dt"
        )
    ratio = eval_spectrum(p, scale * nyquist) / 2.0
    if ratio > alias_threshold:
        raise ValueError(
            f"aliasing: spectrum at Nyquist is {ratio:.3g} of peak "
            f"(threshold {alias_threshold:g})"
        )

    k = np.arange(n)
    omega = 2.0 * np.pi * k / (n * dt)
    spec = eval_spectrum(p, scale * omega)
    values = np.roll(np.fft.ifft(spec), n // 2) / dt
    times = (k - n // 2) * dt
    return SampledWaveform(times=times, values=values)
