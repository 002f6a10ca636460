"""Scalar special functions: Gamma family, Bessel functions, double Gamma, Kratzel.

The double Gamma function ``G(z; tau)`` is normalised by ``G(1; tau) = 1`` and

    G(z + 1; tau)   = Gamma(z / tau) G(z; tau)
    G(z + tau; tau) = (2 pi)^((tau - 1) / 2) tau^(1/2 - z) Gamma(z) G(z; tau).

It is evaluated through the Barnes zeta function
``zeta_2(s, z | 1, tau) = sum_{j,k >= 0} (z + j + k tau)^(-s)``: the derivative
``L(z) = d/ds zeta_2(0, z)`` obeys a first-order recursion in ``z`` with Gamma
increments, and has a Watson-lemma asymptotic series with no constant term.
``log G`` differs from ``-L`` by a quadratic polynomial fixed by the two
recursions above and the normalisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as sc
from scipy.optimize import brentq

from .errors import AccuracyError, DomainError, RangeError

LOG_2PI = math.log(2.0 * math.pi)

# Watson-series truncation and the real part above which it is used.
_ASYM_TERMS = 32
_ASYM_RADIUS = 10.0

# Accuracy window of the double Gamma evaluation (validated by the recursions).
DOUBLE_GAMMA_WINDOW = (0.05, 50.0)

BESSEL_ORDER_RANGE = (0.0, 50.0)
BESSEL_ARGUMENT_RANGE = (1e-6, 1e4)


@dataclass(frozen=True)
class DoubleGammaArgs:
    z: float
    tau: float

    def __post_init__(self):
        if not (self.z > 0 and self.tau > 0):
            raise DomainError(f"double Gamma needs z > 0 and tau > 0, got z={self.z!r}, tau={self.tau!r}")


@dataclass(frozen=True)
class BesselQuery:
    kind: str
    order: float
    argument: float

    def __post_init__(self):
        if self.kind not in ("J", "Y", "K"):
            raise DomainError(f"Bessel kind must be one of J, Y, K, got {self.kind!r}")
        lo, hi = BESSEL_ORDER_RANGE
        if not lo <= self.order <= hi:
            raise RangeError(f"Bessel order {self.order!r} outside [{lo}, {hi}]")
        lo, hi = BESSEL_ARGUMENT_RANGE
        if not lo <= self.argument <= hi:
            raise RangeError(f"Bessel argument {self.argument!r} outside [{lo:g}, {hi:g}]")


def _positive(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} must be positive")
    return arr


def _unwrap(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def log_gamma(x):
    """``ln Gamma(x)`` for positive ``x`` (scalar or array)."""
    return _unwrap(sc.gammaln(_positive(x)))


def digamma_trigamma(x):
    """Return ``(psi(x), psi'(x))`` for positive ``x``."""
    arr = _positive(x)
    return _unwrap(sc.psi(arr)), _unwrap(sc.polygamma(1, arr))


def bessel(q: BesselQuery) -> float:
    """Bessel J, Y or Macdonald K of real order at a positive argument."""
    if q.kind == "J":
        return float(sc.jv(q.order, q.argument))
    if q.kind == "Y":
        return float(sc.yv(q.order, q.argument))
    return float(sc.kv(q.order, q.argument))


# --- double Gamma -----------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_plus():
    b = sc.bernoulli(_ASYM_TERMS + 1).astype(float)
    b[1] = 0.5
    return b


@lru_cache(maxsize=256)
def _watson_coefficients(tau: float) -> np.ndarray:
    """Taylor coefficients of ``t^2 / ((1 - e^-t)(1 - e^(-tau t)))``, divided by tau."""
    n = _ASYM_TERMS + 2
    b = _bernoulli_plus() / sc.factorial(np.arange(n))
    u_tau = b * tau ** np.arange(n)
    coef = np.convolve(b, u_tau)[:n] / tau
    # pre-multiply the (k - 3)! weights of the Watson series
    weights = np.ones(n)
    weights[3:] = sc.factorial(np.arange(n - 3))
    return coef * weights


def _zeta2_value_at_zero(z, tau):
    """``zeta_2(0, z | 1, tau)``, a quadratic polynomial in z."""
    return (0.5 * z * z - 0.5 * z * (1.0 + tau) + (1.0 + tau * tau) / 12.0 + 0.25 * tau) / tau


def _barnes_zeta_deriv(z: np.ndarray, tau: float) -> np.ndarray:
    """``d/ds zeta_2(s, z | 1, tau)`` at ``s = 0`` for complex z with Re z > 0."""
    if tau > 1.0:
        # zeta_2(s, z | 1, tau) = tau^-s zeta_2(s, z / tau | 1, 1 / tau)
        return -math.log(tau) * _zeta2_value_at_zero(z, tau) + _barnes_zeta_deriv(z / tau, 1.0 / tau)
    log_tau = math.log(tau)
    shifts = np.maximum(0, np.ceil(_ASYM_RADIUS - z.real)).astype(int)
    acc = np.zeros_like(z)
    w = z.copy()
    for j in range(int(shifts.max(initial=0))):
        live = j < shifts
        wj = w[live]
        # L(w) - L(w + 1) = d/ds [tau^-s zeta_H(s, w / tau)] at s = 0
        acc[live] += -log_tau * (0.5 - wj / tau) + sc.loggamma(wj / tau) - 0.5 * LOG_2PI
        w[live] = wj + 1.0
    c = _watson_coefficients(tau)
    lw = np.log(w)
    series = c[0] * w * w * (0.75 - 0.5 * lw) + c[1] * w * (lw - 1.0) - c[2] * lw
    inv = 1.0 / w
    power = inv.copy()
    for k in range(3, c.size):
        series += c[k] * power
        power = power * inv
    return series + acc


@lru_cache(maxsize=256)
def _normalisation(tau: float):
    a2 = -math.log(tau) / (2.0 * tau)
    a1 = 0.5 * LOG_2PI + 0.5 * math.log(tau) + math.log(tau) / (2.0 * tau)
    a0 = _barnes_zeta_deriv(np.array([1.0 + 0j]), tau)[0].real - a2 - a1
    return a2, a1, a0


def log_double_gamma_complex(z, tau: float) -> np.ndarray:
    """``log G(z; tau)`` continued analytically to Re z > 0 (array in, array out)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z.real <= 0):
        raise DomainError("complex double Gamma requires Re z > 0")
    a2, a1, a0 = _normalisation(float(tau))
    return -_barnes_zeta_deriv(z.copy(), float(tau)) + (a2 * z + a1) * z + a0


def log_double_gamma(z, tau):
    """``ln G(z; tau)`` for positive ``z`` and ``tau``.

    Accepts a scalar or array ``z``. Absolute accuracy is about 1e-12 times
    ``max(1, |ln G|)`` over the window z, tau in [0.05, 50].
    """
    zs = np.asarray(z, dtype=float)
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    _positive(zs, "z")
    out = log_double_gamma_complex(zs.ravel(), float(tau)).real.reshape(zs.shape)
    return _unwrap(out)


# --- Kratzel function -------------------------------------------------------


def _kratzel_convergent(rho, nu, lam):
    if lam < 0:
        return False
    right = rho > 0 or nu < 0
    left = lam > 0 or rho < 0 or nu > 0
    return right and left


def kratzel(rho: float, nu: float, lam: float, rtol: float = 1e-12) -> float:
    """Kratzel function ``int_0^inf x^(nu-1) exp(-x^rho - lam/x) dx``.

    With ``x = e^t`` the integrand becomes ``exp(phi(t))`` with
    ``phi(t) = nu t - e^(rho t) - lam e^(-t)``, which decays doubly
    exponentially where the exponentials dominate; the trapezoid rule on the
    line then converges geometrically in the step size.
    """
    rho, nu, lam = float(rho), float(nu), float(lam)
    if not _kratzel_convergent(rho, nu, lam):
        raise DomainError(f"Kratzel integral diverges for rho={rho}, nu={nu}, lam={lam}")

    def phi(t):
        return nu * t - np.exp(rho * t) - lam * np.exp(-t)

    def dphi(t):
        return nu - rho * math.exp(rho * t) + lam * math.exp(-t)

    lo, hi = -1.0, 1.0
    while dphi(lo) <= 0:
        lo *= 2.0
    while dphi(hi) >= 0:
        hi *= 2.0
    t_star = brentq(dphi, lo, hi, xtol=1e-14)
    peak = float(phi(t_star))

    # walk outwards until the integrand is below e^-50 of its peak
    def edge(direction):
        step = 0.5
        t = t_star
        while phi(t + direction * step) > peak - 50.0:
            t += direction * step
            step *= 1.5
        return t + direction * step

    left, right = edge(-1.0), edge(1.0)
    n = 64
    previous = None
    while n <= 1 << 16:
        t = np.linspace(left, right, n + 1)
        h = t[1] - t[0]
        total = h * np.sum(np.exp(phi(t) - peak))
        if previous is not None and abs(total - previous) <= rtol * total:
            return float(total * math.exp(peak))
        previous = total
        n *= 2
    raise AccuracyError("Kratzel trapezoid did not converge", previous, total)
