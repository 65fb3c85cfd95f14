"""Shared independent oracles for the test suite.

Everything here recomputes quantities from first principles (extended
precision, closed-form algebra, or dense numerics) without touching the
code paths under test.
"""

import math

import mpmath as mp

# the closed-form oracle grid used throughout the property checks
ORACLE_BETAS = (0.6, 1.0, 2.0, 3.0, 9.0, 27.0)
ORACLE_GAMMAS = (0.25, 0.5, 1.0, 2.0, 3.0, 6.0, 12.0)

_STENCILS = {
    1: (mp.mpf(1), mp.mpf(-8), mp.mpf(0), mp.mpf(8), mp.mpf(-1)),
    2: (mp.mpf(-1), mp.mpf(16), mp.mpf(-30), mp.mpf(16), mp.mpf(-1)),
    3: (mp.mpf(-6), mp.mpf(12), mp.mpf(0), mp.mpf(-12), mp.mpf(6)),
    4: (mp.mpf(12), mp.mpf(-48), mp.mpf(72), mp.mpf(-48), mp.mpf(12)),
}
_DIVISORS = {1: mp.mpf(12), 2: mp.mpf(12), 3: mp.mpf(12), 4: mp.mpf(12)}


def fd_log_derivative(beta: float, gamma: float, order: int, rel_step=1e-4) -> float:
    """5-point central finite difference of ln Psi at the peak, order 1..4.

    Evaluated at 50 significant digits so that the h**-order roundoff
    amplification of the fixed step h = rel_step * w_p stays far below the
    truncation error; the double-precision code under test never enters.
    """
    with mp.workdps(50):
        b, g = mp.mpf(beta), mp.mpf(gamma)
        wp = mp.exp((mp.log(b) - mp.log(g)) / g)
        la = mp.log(2) + (b / g) * (1 + mp.log(g) - mp.log(b))
        lnpsi = lambda w: la + b * mp.log(w) - w**g
        h = mp.mpf(rel_step) * wp
        vals = [lnpsi(wp + k * h) for k in (-2, -1, 0, 1, 2)]
        acc = mp.fsum(c * v for c, v in zip(_STENCILS[order], vals))
        return float(acc / (_DIVISORS[order] * h**order))


def morlet_sigma_t_closed_form(nu: float) -> float:
    """Temporal spread of the Morlet wavelet from exact Gaussian integrals.

    With envelope exp(-t^2/2) and zero-mean correction, |psi(t)|^2 =
    a^2 e^{-t^2} (1 - 2 e^{-nu^2/2} cos(nu t) + e^{-nu^2}); the moments
    reduce to Gaussian cosine transforms.
    """
    e1 = math.exp(-(nu**2))
    e2 = math.exp(-0.75 * nu**2)
    energy = 1.0 + e1 - 2.0 * e2
    second = 0.5 + 0.5 * e1 - 2.0 * e2 * (0.5 - nu**2 / 4.0)
    return math.sqrt(second / energy)


def morlet_sigma_omega_closed_form(nu: float) -> float:
    """Frequency spread of the Morlet wavelet from exact Gaussian integrals.

    |Psi|^2 is a sum of three Gaussians (centers nu, nu/2, 0), so all
    moments are elementary.
    """
    e2 = math.exp(-0.75 * nu**2)
    e1 = math.exp(-(nu**2))
    m0 = 1.0 - 2.0 * e2 + e1
    m1 = nu * (1.0 - e2)
    m2 = (nu**2 + 0.5) - 2.0 * e2 * (nu**2 / 4.0 + 0.5) + 0.5 * e1
    mu = m1 / m0
    return math.sqrt(m2 / m0 - mu * mu)


def log_trapezoid_integral(f, lo: float, hi: float, n: int = 200001) -> float:
    """Dense log-spaced trapezoid rule over [lo, hi]; a crude but fully
    independent cross-check for smooth positive-axis integrals."""
    import numpy as np

    x = np.geomspace(lo, hi, n)
    return float(np.trapezoid(f(x), x))
