"""FFT-based continuous wavelet transform with automatic scale selection.

Each scale row is the inverse DFT of the signal spectrum multiplied by the
sampled wavelet spectrum, which is exact for the periodic boundary and
O(N log N) per scale.  Internal frequencies are radians per sample; the
sample spacing dt enters only when converting a scale to a physical
frequency, peak_frequency/(scale*dt).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import MorseParams, duration, eval_spectrum, peak_frequency

__all__ = [
    "SignalBuffer",
    "ScaleGrid",
    "CwtResult",
    "scale_grid",
    "transform",
    "ridge_frequency_check",
]

NORMALIZATIONS = ("bandpass_n1", "unitary_n_half")
BOUNDARIES = ("periodic", "zero", "mirror")


@dataclass(frozen=True)
class SignalBuffer:
    """A uniformly sampled signal with its sample spacing in seconds."""

    samples: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        x = np.asarray(self.samples)
        if x.ndim != 1 or len(x) < 2:
            raise ValueError("signal must be 1-D with at least 2 samples")
        if not np.all(np.isfinite(x.real)) or (
            np.iscomplexobj(x) and not np.all(np.isfinite(x.imag))
        ):
            raise ValueError("signal contains non-finite values")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive (got {self.dt})")
        object.__setattr__(self, "samples", x)


@dataclass(frozen=True)
class ScaleGrid:
    """Logarithmically spaced scales with the cutoffs that produced them.

    ``high_cutoff_eta`` is the admissible spectral amplitude fraction at
    the Nyquist rate; ``low_cutoff_p0`` the number of wavelet footprints
    required to fit in the record.
    """

    scales: np.ndarray
    params: MorseParams
    high_cutoff_eta: float
    low_cutoff_p0: float
    density: int

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=float)
        if s.ndim != 1 or len(s) == 0:
            raise ValueError("scales must be a non-empty 1-D array")
        if s[0] <= 0 or (len(s) > 1 and not np.all(np.diff(s) > 0)):
            raise ValueError("scales must be positive and strictly increasing")
        object.__setattr__(self, "scales", s)

    def __len__(self):
        return len(self.scales)

    def log_step(self) -> float:
        """Grid spacing in log-scale units (ln 2 / density)."""
        return math.log(2.0) / self.density

    def peak_frequencies(self, dt: float = 1.0) -> np.ndarray:
        """Physical peak frequency analyzed by each scale."""
        return peak_frequency(self.params) / (self.scales * dt)


@dataclass(frozen=True)
class CwtResult:
    """Complex transform coefficients, time along rows, scale along columns."""

    coefficients: np.ndarray
    scales: ScaleGrid
    normalization: str
    boundary: str
    dt: float = 1.0

    def __post_init__(self):
        c = np.asarray(self.coefficients)
        if c.ndim != 2 or c.shape[1] != len(self.scales):
            raise ValueError("coefficient matrix must be time x scale")
        object.__setattr__(self, "coefficients", c)


def _high_frequency_scale(p: MorseParams, eta: float) -> float:
    """Smallest admissible scale: Psi(s*pi)/2 == eta at the Nyquist rate,
    found by bisection on the decaying high-frequency flank."""
    wp = peak_frequency(p)
    target = 2.0 * eta

    # bracket the crossing on x = s*pi > wp where Psi is decreasing
    lo = wp
    hi = 2.0 * wp
    for _ in range(200):
        if eval_spectrum(p, hi) < target:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise RuntimeError("could not bracket the high-frequency cutoff")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if eval_spectrum(p, mid) > target:
            lo = mid
        else:
            hi = mid
        if (hi - lo) <= 1e-12 * hi:
            break
    return 0.5 * (lo + hi) / math.pi


def scale_grid(
    signal_len: int,
    p: MorseParams,
    density: int = 4,
    eta: float = 0.1,
    p0: float = 5.0,
) -> ScaleGrid:
    """Build the log-spaced scale grid for a signal of the given length.

    The smallest scale keeps the wavelet's Nyquist response at the
    fraction ``eta`` of its peak (aliasing control); the largest keeps at
    least ``p0`` wavelet footprints 2*s*P/w_p inside the record.  Scales
    are spaced ``density`` points per octave, endpoints included.
    """
    if p.beta <= 0:
        raise ValueError("scale selection requires beta > 0")
    if density < 1:
        raise ValueError("density must be at least 1")
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    if p0 < 1:
        raise ValueError("p0 must be at least 1")
    if signal_len < 2:
        raise ValueError("signal too short")

    s_min = _high_frequency_scale(p, eta)
    s_max = signal_len * peak_frequency(p) / (2.0 * duration(p) * p0)
    if s_min > s_max:
        raise ValueError(
            f"signal of length {signal_len} is too short for this wavelet: "
            f"min scale {s_min:.4g} exceeds max scale {s_max:.4g} "
            f"(eta={eta}, p0={p0})"
        )
    n_octaves = math.log2(s_max / s_min)
    n_steps = max(1, math.ceil(n_octaves * density))
    scales = np.geomspace(s_min, s_max, n_steps + 1)
    return ScaleGrid(
        scales=scales,
        params=p,
        high_cutoff_eta=eta,
        low_cutoff_p0=p0,
        density=density,
    )


def _next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length()


def transform(
    x: SignalBuffer,
    grid: ScaleGrid,
    normalization: str = "bandpass_n1",
    boundary: str = "periodic",
) -> CwtResult:
    """Continuous wavelet transform of a signal over a scale grid.

    With the bandpass normalization (scale exponent 1) a unit-amplitude
    tone at a scale's analyzed frequency yields unit coefficient modulus;
    the unitary normalization (exponent 1/2) multiplies each row by
    sqrt(scale).  Only nonnegative DFT bins contribute (the wavelet is
    analytic); at the Nyquist bin the spectrum is evaluated on the
    positive side.  Non-periodic boundaries pad to the next power of two
    at or above twice the length, zero in 'zero' mode and even reflection
    in 'mirror' mode, and crop after inversion.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}")

    sig = np.asarray(x.samples)
    n = len(sig)
    if boundary == "periodic":
        buf, offset = sig, 0
    else:
        m = _next_pow2(2 * n)
        left = (m - n) // 2
        right = m - n - left
        mode = "constant" if boundary == "zero" else "symmetric"
        buf = np.pad(sig, (left, right), mode=mode)
        offset = left
    m = len(buf)

    spectrum = np.fft.fft(buf)
    k_pos = np.arange(m // 2 + 1)  # nonnegative bins, Nyquist on the + side
    omega_pos = 2.0 * np.pi * k_pos / m

    scales = grid.scales
    coeffs = np.empty((n, len(scales)), dtype=complex)
    filt = np.zeros(m)
    for j, s in enumerate(scales):
        filt[:] = 0.0
        filt[k_pos] = eval_spectrum(grid.params, s * omega_pos)
        row = np.fft.ifft(spectrum * filt)
        if normalization == "unitary_n_half":
            row = row * math.sqrt(s)
        coeffs[:, j] = row[offset : offset + n]

    return CwtResult(
        coefficients=coeffs,
        scales=grid,
        normalization=normalization,
        boundary=boundary,
        dt=x.dt,
    )


def ridge_frequency_check(result: CwtResult, omega0: float) -> float:
    """Scale of maximum modulus for a pure-tone input, with contract checks.

    ``omega0`` is the tone frequency in radians per sample.  Raises if the
    modulus maximum sits on the grid boundary (tone outside the analyzed
    band) or if the ridge modulus varies over time (input was not a pure
    tone).  The returned scale satisfies |s*omega0 - w_p|/w_p <= one grid
    step.
    """
    mod = np.abs(result.coefficients)
    per_scale = mod.mean(axis=0)
    j = int(np.argmax(per_scale))
    if j in (0, len(per_scale) - 1):
        raise ValueError("no interior modulus maximum: tone outside analyzed band")
    ridge = mod[:, j]
    if ridge.std() > 0.05 * ridge.mean():
        raise ValueError("ridge modulus varies over time: input is not a pure tone")
    s = float(result.scales.scales[j])
    wp = peak_frequency(result.scales.params)
    if abs(math.log(s * omega0 / wp)) > result.scales.log_step() * (1 + 1e-9):
        raise ValueError(
            f"ridge scale {s:.6g} misses the predicted scale by more than "
            "one grid step"
        )
    return s
