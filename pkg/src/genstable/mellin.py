"""Mellin transform ``M(s) = E[X^-s] = E[Y^s]`` of the generalized stable law.

Two independent evaluation routes are provided:

* ``double-gamma``: the closed form through the double Gamma function with
  period ``a``;
* ``product``: the Beta-product representation summed term by term in logs,
  with the tail closed by a Stirling-Bernoulli expansion and Hurwitz zeta sums.

Both accept complex ``s`` (used by the contour inversion in :mod:`density`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as sc
from scipy.integrate import quad

from .errors import DomainError
from .params import GenStableParams
from .specfun import log_double_gamma_complex

ROUTES = ("lattice", "product", "double-gamma")

# log of the largest finite double
_LOG_MAX = 709.78

# Range of the period a in which the double-gamma route is preferred.
_DG_PERIOD_WINDOW = (0.02, 50.0)
_DG_MAX_ABS_S = 1e3

_TAIL_ORDER = 24
_TAIL_RATIO = 6.0


@dataclass(frozen=True)
class MellinValue:
    """``M(s)`` stored as a logarithm, with provenance and a relative error bound."""

    s: float
    log_value: float
    route: str
    err: float

    @property
    def overflow(self) -> bool:
        return self.log_value > _LOG_MAX

    @property
    def value(self) -> float:
        if self.overflow:
            return math.inf
        return math.exp(self.log_value)


# --- Beta products ----------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_poly_coeffs(order: int):
    """Coefficient lists (highest degree first) of B_0 .. B_order."""
    b = sc.bernoulli(order)
    out = []
    for n in range(order + 1):
        out.append(np.array([sc.comb(n, j, exact=False) * b[j] for j in range(n + 1)]))
    return out


def _bernoulli_poly(n, x):
    return np.polyval(_bernoulli_poly_coeffs(_TAIL_ORDER + 1)[n], x)


@dataclass(frozen=True)
class BetaProduct:
    """Law of ``prod_n kappa_n B(p0 + n delta, q)`` with unit-mean factors.

    ``kappa_n = (p_n + q) / p_n`` is the reciprocal mean of the n-th Beta
    factor, which makes the infinite product a.s. convergent.
    """

    p0: float
    q: float
    delta: float

    def _exact_terms(self, s, start, stop):
        n = np.arange(start, stop, dtype=float)
        p = self.p0 + self.delta * n
        lg_p, lg_pq = sc.gammaln(p), sc.gammaln(p + self.q)
        log_ratio = np.log1p(self.q / p)
        s = np.asarray(s)
        total = np.zeros(s.shape, dtype=s.dtype)
        # chunk over n to bound memory for long contours
        for lo in range(0, n.size, 4096):
            sl = slice(lo, lo + 4096)
            ps = p[sl][None, :]
            ss = s.reshape(-1, 1)
            if np.iscomplexobj(s):
                lg_a, lg_m = sc.loggamma(ps + ss), sc.loggamma(ps + self.q + ss)
            else:
                lg_a, lg_m = sc.gammaln(ps + ss), sc.gammaln(ps + self.q + ss)
            t = ss * log_ratio[sl][None, :] + lg_a - lg_p[sl][None, :] - lg_m + lg_pq[sl][None, :]
            total = total + t.sum(axis=1).reshape(s.shape)
        return total

    def _tail_coefficients(self, s):
        """Coefficients e_k(s), k = 2.., of the term expansion in powers of 1/(n delta)."""
        ca, cm = self.p0, self.p0 + self.q
        coefs = []
        for k in range(2, _TAIL_ORDER + 1):
            sign = (-1.0) ** (k + 1)
            e = sign * s * (cm**k - ca**k) / k
            e = e + sign / (k * (k + 1)) * (
                _bernoulli_poly(k + 1, ca + s) - _bernoulli_poly(k + 1, ca)
                - _bernoulli_poly(k + 1, cm + s) + _bernoulli_poly(k + 1, cm)
            )
            coefs.append(e)
        return coefs

    def _tail_log_mean_coefficients(self):
        """Derivatives in s at 0 of the tail coefficients (the E[log] expansion)."""
        ca, cm = self.p0, self.p0 + self.q
        coefs = []
        for k in range(2, _TAIL_ORDER + 1):
            sign = (-1.0) ** (k + 1)
            coefs.append(sign / k * ((cm**k - ca**k) + _bernoulli_poly(k, ca) - _bernoulli_poly(k, cm)))
        return coefs

    def cutoff(self, s_abs: float) -> int:
        reach = abs(self.p0) + abs(self.q) + s_abs + 1.0
        return int(math.ceil(_TAIL_RATIO * reach / self.delta))

    def _zeta_weights(self, start):
        k = np.arange(2, _TAIL_ORDER + 1, dtype=float)
        return sc.zeta(k, start) * self.delta ** (-k)

    def log_mellin(self, s, start: int = 0):
        """``log E[(prod_{n >= start} ...)^s]`` for real or complex ``s`` (array)."""
        s = np.atleast_1d(np.asarray(s))
        if not np.iscomplexobj(s):
            s = s.astype(float)
        cut = max(start, self.cutoff(float(np.max(np.abs(s)))))
        exact = self._exact_terms(s, start, cut) if cut > start else np.zeros(s.shape, dtype=s.dtype)
        weights = self._zeta_weights(cut)
        tail = sum(w * e for w, e in zip(weights, self._tail_coefficients(s)))
        return exact + tail

    def tail_log_mean(self, start: int) -> float:
        """``E[log prod_{n >= start} kappa_n B_n]``, the mean-log of an omitted tail."""
        cut = max(start, self.cutoff(0.0))
        n = np.arange(start, cut, dtype=float)
        p = self.p0 + self.delta * n
        exact = float(np.sum(np.log1p(self.q / p) + sc.psi(p) - sc.psi(p + self.q)))
        weights = self._zeta_weights(cut)
        tail = sum(w * e for w, e in zip(weights, self._tail_log_mean_coefficients()))
        return exact + float(tail)


def first_product(p: GenStableParams):
    """Y = C prod_n ((m + a n)/(a + a n)) B(a + a n, alpha), C = a^(alpha/a) Gamma(m/a)."""
    a = p.a
    log_c = (p.alpha / a) * math.log(a) + math.lgamma(p.m / a)
    return log_c, BetaProduct(p0=a, q=p.alpha, delta=a)


def second_product(p: GenStableParams):
    """Y^a = C prod_n ((m + n)/(a + n)) B(1 + n/a, m/a - 1), C = Gamma(m)/Gamma(a)."""
    a = p.a
    log_c = math.lgamma(p.m) - math.lgamma(a)
    return log_c, BetaProduct(p0=1.0, q=p.m / a - 1.0, delta=1.0 / a)


# --- log M ------------------------------------------------------------------


def _check_strip(p: GenStableParams, s):
    if np.any(np.real(s) <= -p.a):
        raise DomainError(f"s must satisfy s > -a = {-p.a!r} (beyond first pole)")


def log_mellin_double_gamma(p: GenStableParams, s):
    s = np.atleast_1d(np.asarray(s))
    _check_strip(p, s)
    a, m = p.a, p.m
    lg = log_double_gamma_complex
    const = lg(np.array([a, m], dtype=complex), a)
    out = (p.alpha / a) * s * math.log(a) + lg(m + s, a) - const[1] - lg(a + s, a) + const[0]
    return out if np.iscomplexobj(s) else out.real


def log_mellin_product(p: GenStableParams, s, representation: str = "first"):
    s = np.atleast_1d(np.asarray(s))
    _check_strip(p, s)
    if representation == "first":
        log_c, prod = first_product(p)
        return s * log_c + prod.log_mellin(s)
    # second representation: M(s) = E[(Y^a)^(s/a)]
    log_c, prod = second_product(p)
    t = s / p.a
    return t * log_c + prod.log_mellin(t)


def _auto_route(p: GenStableParams, s) -> str:
    lo, hi = _DG_PERIOD_WINDOW
    if lo <= p.a <= hi and np.max(np.abs(s)) <= _DG_MAX_ABS_S:
        return "double-gamma"
    return "product"


def log_mellin(p: GenStableParams, s, route: str = "auto"):
    """Vectorised ``log M(s)``; complex ``s`` gives the analytic continuation."""
    s = np.atleast_1d(np.asarray(s))
    if route == "auto":
        route = _auto_route(p, s)
    if route == "double-gamma":
        return log_mellin_double_gamma(p, s)
    if route == "product":
        return log_mellin_product(p, s)
    raise ValueError(f"unknown route {route!r}")


def mellin(p: GenStableParams, s: float, route: str = "auto") -> MellinValue:
    """``M(s) = E[Y^s]`` for real ``s > -a``."""
    s = float(s)
    if s <= -p.a:
        raise DomainError(f"s = {s!r} is beyond first pole s = -a = {-p.a!r}")
    if route == "auto":
        route = _auto_route(p, np.array([s]))
    if route == "lattice":
        k = s / p.a
        if abs(k - round(k)) > 1e-12 or k < 0:
            raise DomainError("lattice route needs s = k a with integer k >= 0")
        return moment_lattice(p, int(round(k)))
    lv = float(log_mellin(p, np.array([s]), route)[0])
    err = 1e-12 * (1.0 + abs(lv))
    return MellinValue(s=s, log_value=lv, route=route, err=err)


def moment_lattice(p: GenStableParams, k: int) -> MellinValue:
    """``M(k a)`` from ``M(0) = 1`` and ``M(s + a) = M(s) Gamma(m + s) / Gamma(a + s)``."""
    if k < 0:
        raise DomainError("lattice index must be nonnegative")
    j = np.arange(k, dtype=float)
    lv = float(np.sum(sc.gammaln(p.m + j * p.a) - sc.gammaln(p.a + j * p.a)))
    return MellinValue(s=k * p.a, log_value=lv, route="lattice", err=1e-15 * (k + 1) * (1.0 + abs(lv)))


def asymptotic_constant(p: GenStableParams) -> float:
    """Constant ``c_{m,alpha}`` of the stretched-exponential behaviour of the density at 0."""
    m, alpha, a = p.m, p.alpha, p.a
    log_g = log_double_gamma_complex(np.array([m], dtype=complex), a)[0].real
    log_c = (
        0.5 * (m - 2.0) * math.log(2.0 * math.pi)
        + alpha * (1.0 - m) / (2.0 * a) * math.log(a)
        - 0.5 * math.log(alpha)
        - log_g
    )
    return math.exp(log_c)


def _sy_bracket(s, y):
    """``e^(-s y) - 1 + s y`` without loss for small ``s y``."""
    z = s * y
    return np.where(z < 1e-3, z * z * (0.5 - z / 6.0 + z * z / 24.0), np.expm1(-z) + z)


def levy_exponent(p: GenStableParams, s: float) -> float:
    """Laplace exponent ``psi(s)`` of the Levy process whose exponential functional is X.

    Valid for ``m > 2 alpha``. The Levy density near 0 is regularised by
    subtracting its ``(a y)^(-beta-2)`` leading term, whose contribution
    ``Gamma(-beta-1) s^(beta+1)`` is added back in closed form.
    """
    if not p.m > 2.0 * p.alpha:
        raise DomainError("beta >= 1, representation invalid (needs m > 2 alpha)")
    if s < 0:
        raise DomainError("levy_exponent needs s >= 0")
    if s == 0:
        return 0.0
    a, m, beta = p.a, p.m, p.beta
    c = a * m * beta / math.gamma(1.0 - beta)

    def remainder(y):
        ay = a * y
        # e^(-m y) (1 - e^(-a y))^(-beta-2) - (a y)^(-beta-2)
        inner = (beta + 2.0) * np.log(ay / -np.expm1(-ay)) - m * y
        return ay ** (-beta - 2.0) * np.expm1(inner)

    def integrand(y):
        return _sy_bracket(s, y) * remainder(y)

    pieces = [(0.0, 1.0), (1.0, 10.0), (10.0, np.inf)]
    num = sum(quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=200)[0] for lo, hi in pieces)
    singular = a ** (-beta - 2.0) * math.gamma(-beta - 1.0) * s ** (beta + 1.0)
    return a**beta * (math.gamma(beta + 1.0) * s + c * (num + singular))


def moment_growth_sequence(p: GenStableParams, n: int) -> float:
    """``a_n = M(b n)^(1/n) / n``, whose limit is ``b / e``."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    lv = float(log_mellin(p, np.array([p.b * n]))[0])
    return math.exp(lv / n - math.log(n))


def _power_ratio(c, log_x):
    """``c x^c / (1 - x^c)`` written through ``L = -log x``."""
    return c * np.exp(-c * log_x) / -np.expm1(-c * log_x)


def labr_selfdecomp_criterion(a: float, b: float, r: float, points: int = 4096) -> bool:
    """Whether ``x^a (1 - x^b) / ((1 - x)(1 - x^r))`` is non-decreasing on (0, 1).

    The sign of the derivative equals that of
    ``D(x) = a - b x^b/(1-x^b) + x/(1-x) + r x^r/(1-x^r)``. ``D(0+) = a > 0``
    and ``D(1-) = +inf``, so only interior sign changes matter; they are
    scanned on a logit-spaced grid reaching 1e-13 from both ends.
    """
    if not (a > 0 and b > 0 and r > 0):
        raise DomainError("a, b, r must be positive")
    t = np.linspace(-30.0, 30.0, points)
    log_x = np.log1p(np.exp(-t))
    d = a - _power_ratio(b, log_x) + _power_ratio(1.0, log_x) + _power_ratio(r, log_x)
    scale = 1.0 + _power_ratio(1.0, log_x)
    return bool(np.all(d >= -1e-12 * scale))
