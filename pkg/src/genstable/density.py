"""Density of the generalized stable law and its companions.

``density`` dispatches between closed forms, the convergent power series at
infinity of the three Fox-function families, and numerical Mellin inversion.
Asymptotic forms at both ends and Laplace transforms live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy import special as sc
from scipy.integrate import quad

from .errors import DomainError, PreconditionError
from .mellin import asymptotic_constant, log_mellin
from .params import GenStableParams

METHODS = (
    "closed",
    "series-integer-alpha",
    "series-lattice-m",
    "series-integer-m",
    "mellin-inversion",
    "quadrature",
)
SERIES_FAMILIES = ("integer-alpha", "lattice-m", "integer-m")

_INT_TOL = 1e-12
_POLE_GUARD = 1e-4
# auto mode accepts a series only below this error
_SERIES_ACCEPT = 1e-11
_RATIO_BLOCK = 8
# cancellation beyond this many digits is not worth multiprecision
_MP_MAX_DPS = 160
_LOGM_RTOL = 2e-13
_UNDERFLOW_EXPONENT = 760.0


@dataclass(frozen=True)
class DensityEvaluation:
    x: float
    value: float
    method: str
    err: float


@dataclass(frozen=True)
class FoxParams:
    """Parameters of ``prefactor * H^{m,n}_{p,q}[scale * x | upper; lower]``."""

    family: str
    m: int
    n: int
    p: int
    q: int
    upper: tuple = field(default_factory=tuple)
    lower: tuple = field(default_factory=tuple)
    prefactor: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if len(self.upper) != self.p or len(self.lower) != self.q:
            raise ValueError("parameter lists do not match the declared orders")


def _near_int(v, tol=_INT_TOL):
    return abs(v - round(v)) <= tol * max(1.0, abs(v))


def _scalar_x(x):
    x = float(x)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    return x


# --- closed forms -----------------------------------------------------------


def _log_kv(nu, z):
    return np.log(sc.kve(nu, z)) - z


def _closed_log_density(p: GenStableParams, x):
    """Log-density from an exact formula, or None when no closed form applies."""
    m, alpha, a = p.m, p.alpha, p.a
    lx = np.log(x)
    if p.regime() == "frechet":
        return (-alpha - 1.0) * lx - 1.0 / x - math.lgamma(alpha)
    if _near_int(alpha) and round(alpha) == 1:
        return (-a - 1.0) * lx - np.exp(-a * lx) / a
    if _near_int(alpha) and round(alpha) == 2:
        nu = 1.0 / a
        z = 2.0 / (a * np.exp(0.5 * a * lx))
        return math.log(2.0) + (-a - 1.5) * lx + _log_kv(nu, z) - nu * math.log(a) - math.lgamma(nu)
    if abs(m - 3.0 * a) <= _INT_TOL * m:
        # X = (Gamma_a Gamma_2a)^-1: 2 x^(-3a/2-1) K_a(2/sqrt x) / (Gamma(a) Gamma(2a))
        z = 2.0 / np.sqrt(x)
        return (
            math.log(2.0) + (-1.5 * a - 1.0) * lx + _log_kv(a, z) - math.lgamma(a) - math.lgamma(2.0 * a)
        )
    return None


def has_closed_form(p: GenStableParams) -> bool:
    return _closed_log_density(p, np.array([1.0])) is not None


# --- series at infinity -----------------------------------------------------


def series_families(p: GenStableParams):
    """Families whose Fox representation applies (convergence not checked)."""
    out = []
    if _near_int(p.alpha):
        out.append("integer-alpha")
    ratio = p.m / p.a
    if _near_int(ratio) and round(ratio) >= 2:
        out.append("lattice-m")
    if _near_int(p.m) and round(p.m) >= 1:
        out.append("integer-m")
    return out


def _series_layout(p: GenStableParams, family: str, ln=math.log, lgamma=math.lgamma, num=float):
    """Return (log prefactor, branch list) for the chosen family.

    Each branch holds closures of k: ``log_c``, ``power`` (x exponent) and
    ``rgamma`` (argument of an extra 1/Gamma or None), plus the constant
    ``gamma`` shifts s for the factors Gamma(s - k). ``ln``, ``lgamma`` and
    ``num`` select the arithmetic, so one layout serves double and mpmath.
    """
    a = num(p.a)
    la = ln(a)
    if family == "integer-alpha":
        if not _near_int(p.alpha):
            raise PreconditionError("integer-alpha series needs alpha in N")
        n = int(round(p.alpha))
        log_pref = (n / a + 1) * la - sum(lgamma(1 + (i - 1) / a) for i in range(1, n + 1))
        shifts = [(j - r) / a for r in range(1, n + 1) for j in range(1, n + 1) if j != r]
        branches = []
        for r in range(1, n + 1):
            g = [(j - r) / a for j in range(1, n + 1) if j != r]
            branches.append(
                dict(
                    log_c=lambda k, r=r, n=n: -(r * n / a + n * (k + 1)) * la,
                    gamma=g,
                    power=lambda k, r=r: -(r + a * (k + 1)),
                    rgamma=None,
                )
            )
        condition = "a irrational, or a = p/q irreducible with p >= n"
    elif family == "lattice-m":
        ratio = p.m / p.a
        if not (_near_int(ratio) and round(ratio) >= 2):
            raise PreconditionError("lattice-m series needs m / a in {2, 3, ...}")
        n = int(round(ratio))
        log_pref = -sum(lgamma(i * a) for i in range(1, n))
        shifts = [(j - r) * a for r in range(1, n) for j in range(1, n) if j != r]
        branches = []
        for r in range(1, n):
            g = [(j - r) * a for j in range(1, n) if j != r]
            branches.append(dict(log_c=lambda k: 0 * k, gamma=g, power=lambda k, r=r: -r * a - k - 1, rgamma=None))
        condition = "n = 2, or a, ..., (n-2) a not in N"
    elif family == "integer-m":
        if not (_near_int(p.m) and round(p.m) >= 1):
            raise PreconditionError("integer-m series needs m in N")
        n = int(round(p.m))
        log_pref = (n / a) * la - sum(lgamma(i / a) for i in range(1, n))
        shifts = [(j - r) / a for r in range(1, n + 1) for j in range(1, n + 1) if j != r]
        branches = []
        for r in range(1, n + 1):
            g = [(j - r) / a for j in range(1, n + 1) if j != r]
            branches.append(
                dict(
                    log_c=lambda k, r=r, n=n: -(r * n / a + n * k) * la,
                    gamma=g,
                    power=lambda k, r=r: -r - a * k,
                    rgamma=lambda k, r=r: 1 - r - a * k,
                )
            )
        condition = "a irrational, or a = p/q irreducible with p >= n"
    else:
        raise ValueError(f"unknown series family {family!r}")
    # Gamma((j - r)/a - k) hits a pole for some k >= 0 iff the shift is an integer
    for sh in shifts:
        if abs(float(sh) - round(float(sh))) < _POLE_GUARD:
            raise PreconditionError(f"{family} series: convergence condition violated ({condition})")
    return log_pref, branches


def _series_terms(branches, k):
    """Per-branch pieces of the terms: log-constant, x-exponent and sign, shape (branches, k)."""
    bases, powers, signs = [], [], []
    lfact = sc.gammaln(k + 1.0)
    for br in branches:
        lg = br["log_c"](k) - lfact
        sg = np.where(k % 2 == 0, 1.0, -1.0)
        for shift in br["gamma"]:
            arg = shift - k
            lg = lg + sc.gammaln(arg)
            sg = sg * sc.gammasgn(arg)
        if br["rgamma"] is not None:
            arg = br["rgamma"](k)
            rg = sc.rgamma(arg)
            lg = np.where(rg == 0.0, -np.inf, lg - sc.gammaln(arg))
            sg = sg * np.sign(rg)
        bases.append(lg)
        powers.append(br["power"](k))
        signs.append(sg)
    return np.array(bases), np.array(powers), np.array(signs)


def _series_sums(log_pref, pieces, lx, n_terms):
    base, power, sign = pieces
    w = _RATIO_BLOCK
    with np.errstate(over="ignore", invalid="ignore"):
        logs = log_pref + base[None, :, : n_terms + 2 * w] + power[None, :, : n_terms + 2 * w] * lx[:, None, None]
        mags = np.exp(logs)
        body = np.sum(sign[None, :, :n_terms] * mags[:, :, :n_terms], axis=(1, 2))
        abs_sum = mags[:, :, :n_terms].sum(axis=(1, 2))
        # block ratio test: single terms can vanish exactly (poles of 1/Gamma)
        nxt = mags[:, :, n_terms:n_terms + w].sum(axis=(1, 2))
        nxt2 = mags[:, :, n_terms + w:n_terms + 2 * w].sum(axis=(1, 2))
        rho = np.where(nxt > 0, nxt2 / np.where(nxt > 0, nxt, 1.0), 0.0)
        tail = np.where(rho < 1.0, nxt / (1.0 - np.minimum(rho, 0.5 + 0.5 * rho)), np.inf)
        err = tail + 8.0 * np.finfo(float).eps * abs_sum
    bad = ~np.isfinite(body) | ~np.isfinite(err)
    return np.where(bad, np.nan, body), np.where(bad, np.inf, err), rho, nxt


def _series_eval_many(p, x, family, terms=None, kmax=4096, chunk=256):
    """Vectorised series: returns (values, errs); non-finite sums get err = inf."""
    log_pref, branches = _series_layout(p, family)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    lx_all = np.log(x)
    vals = np.empty(x.size)
    errs = np.empty(x.size)
    top = terms if terms is not None else kmax
    pieces = _series_terms(branches, np.arange(top + 2 * _RATIO_BLOCK, dtype=float))
    for lo in range(0, x.size, chunk):
        sl = slice(lo, lo + chunk)
        lx = lx_all[sl]
        todo = np.arange(lx.size)
        n_terms = terms if terms is not None else 32
        out_v = np.empty(lx.size)
        out_e = np.empty(lx.size)
        while todo.size:
            body, err, rho, nxt = _series_sums(log_pref, pieces, lx[todo], n_terms)
            if terms is not None or n_terms >= kmax:
                done = np.ones(todo.size, dtype=bool)
            else:
                done = (rho < 0.5) & (nxt <= 1e-17 * np.maximum(np.abs(body), 1e-300)) | ~np.isfinite(body)
            out_v[todo[done]] = body[done]
            out_e[todo[done]] = err[done]
            todo = todo[~done]
            n_terms = min(2 * n_terms, kmax)
        vals[sl], errs[sl] = out_v, out_e
    return vals, errs


def _series_point_mp(p, x, family, dps, kmax):
    """One series value in ``dps``-digit arithmetic: (value, err, digits lost to cancellation)."""
    w = _RATIO_BLOCK
    with mp.workdps(dps):
        log_pref, branches = _series_layout(p, family, mp.log, mp.loggamma, mp.mpf)
        lx = mp.log(mp.mpf(x))
        pref = mp.exp(log_pref)
        total = abs_sum = mp.mpf(0)
        blocks = []
        block = mp.mpf(0)
        fact = mp.mpf(1)
        for k in range(kmax):
            if k:
                fact *= k
            for br in branches:
                t = mp.exp(br["log_c"](k) + br["power"](k) * lx) / fact
                for sh in br["gamma"]:
                    t *= mp.gamma(sh - k)
                if br["rgamma"] is not None:
                    t *= mp.rgamma(br["rgamma"](k))
                t = -t if k % 2 else t
                total += t
                abs_sum += abs(t)
                block += abs(t)
            if (k + 1) % w:
                continue
            blocks.append(block)
            block = mp.mpf(0)
            if len(blocks) >= 2 and blocks[-2] > 0:
                rho = blocks[-1] / blocks[-2]
                if rho < 0.5 and blocks[-1] <= mp.eps * abs(total):
                    break
        else:
            return math.nan, math.inf, 0.0
        nfac = max(len(br["gamma"]) for br in branches) + 2
        err = pref * (blocks[-1] / (1 - rho) + 8 * nfac * mp.eps * abs_sum)
        value = pref * total
        lost = float(mp.log10(abs_sum / abs(total))) if total != 0 else float(dps)
        return float(value), float(err), lost


def _series_refine_mp(p, x, family, kmax=4096):
    """Multiprecision series value for points where double precision cancels too much."""
    dps = 30
    while True:
        v, e, lost = _series_point_mp(p, x, family, dps, kmax)
        need = int(lost) + 25
        if need <= dps or need > _MP_MAX_DPS or not math.isfinite(v):
            return v, e + np.finfo(float).eps * abs(v)
        dps = need


def _series_eval_checked(p, x, family, terms=None):
    """Double-precision series, redone in multiprecision where its bound is too loose."""
    v, e = _series_eval_many(p, x, family, terms)
    if terms is None:
        redo = ~(e <= _SERIES_ACCEPT * np.abs(v))
        for i in np.flatnonzero(redo):
            v2, e2 = _series_refine_mp(p, float(x[i]), family)
            if e2 < e[i]:
                v[i], e[i] = v2, e2
    return v, e


def _series_eval(p, x, family, terms=None):
    v, e = _series_eval_checked(p, np.array([float(x)]), family, terms)
    return float(v[0]), float(e[0])


def density_series(p: GenStableParams, x: float, family: str, terms: int | None = None) -> DensityEvaluation:
    """Convergent power series at infinity for one of the three Fox families.

    ``family`` is one of ``integer-alpha`` (alpha in N), ``lattice-m``
    (m / a in {2, 3, ...}) or ``integer-m`` (m in N). With ``terms`` given the
    sum is truncated there; otherwise terms are added until the ratio test
    certifies the tail. ``err`` bounds the tail plus accumulated rounding.
    """
    x = _scalar_x(x)
    if family not in SERIES_FAMILIES:
        raise ValueError(f"family must be one of {SERIES_FAMILIES}")
    if family not in series_families(p):
        raise PreconditionError(f"{family} family does not apply to m={p.m}, alpha={p.alpha}")
    value, err = _series_eval(p, x, family, terms)
    return DensityEvaluation(x=x, value=value, method=f"series-{family}", err=err)


# --- Mellin inversion -------------------------------------------------------


class _Inverter:
    """Trapezoidal inversion of ``f(x) = (1/2 pi i) int M(1 - z) x^-z dz``.

    Contours are vertical lines ``Re z = c`` with ``c < 1 + a``. For each x
    the contour is taken from a fixed candidate set, at the minimiser of
    ``log M(1 - c) - c log x`` (a saddle point of the integrand on the real
    axis), which removes the cancellation that otherwise ruins both tails.
    Contour data depend on c only, so they are cached and shared across x.
    """

    _DROP = 40.0
    _BLOCK = 512

    def __init__(self, p: GenStableParams):
        self.p = p
        a = p.a
        # the saddle only needs to be approximate: geometric spacing in the
        # distance to the pole keeps the cancellation loss small
        self.candidates = (1.0 + a) - np.geomspace(1e-3, 600.0 + a, 240)
        self.log_m = log_mellin(p, 1.0 - self.candidates)
        self._cache = {}

    def _curvature(self, c):
        e = 1e-3 * min(1.0, 1.0 + self.p.a - c)
        lm = log_mellin(self.p, np.array([1.0 - c - e, 1.0 - c, 1.0 - c + e]))
        return max((lm[0] - 2.0 * lm[1] + lm[2]) / (e * e), 1e-12)

    def contour(self, c, halfheight=None):
        key = (float(c), halfheight)
        if key in self._cache:
            return self._cache[key]
        d = 1.0 + self.p.a - c
        h = min(0.25, 2.0 * math.pi * d / 45.0, 2.0 * math.pi / math.sqrt(90.0 * self._curvature(c)))
        g0 = float(log_mellin(self.p, np.array([1.0 - c]))[0])
        ys, vals = [], []
        y0 = 0.0
        while True:
            y = y0 + h * np.arange(self._BLOCK)
            if halfheight is not None:
                y = y[y <= halfheight]
            lm = log_mellin(self.p, (1.0 - c) - 1j * y)
            ys.append(y)
            vals.append(lm)
            if halfheight is not None:
                if y.size < self._BLOCK:
                    break
            elif lm.real.max() < g0 - self._DROP:
                break
            y0 = y[-1] + h
        y = np.concatenate(ys)
        lm = np.concatenate(vals)
        w = np.full(y.size, h)
        w[0] = 0.5 * h
        tail = math.exp(float(lm[-1].real) - g0) if halfheight is not None else math.exp(-self._DROP)
        data = (y, lm, w, g0, tail)
        self._cache[key] = data
        return data

    def saddle(self, x):
        lx = np.log(np.atleast_1d(x))
        g = self.log_m[None, :] - self.candidates[None, :] * lx[:, None]
        return self.candidates[np.argmin(g, axis=1)]

    def evaluate(self, x, contour=None, halfheight=None):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if contour is None:
            cs = self.saddle(x)
        else:
            if not contour < 1.0 + self.p.a:
                raise DomainError(f"contour {contour!r} outside the strip Re z < 1 + a = {1.0 + self.p.a!r}")
            cs = np.full(x.size, float(contour))
        values = np.empty(x.size)
        errs = np.empty(x.size)
        eps = np.finfo(float).eps
        for c in np.unique(cs):
            sel = cs == c
            y, lm, w, g0, tail = self.contour(c, halfheight)
            lx = np.log(x[sel])
            phase = lm[None, :] - (c + 1j * y[None, :]) * lx[:, None]
            terms = np.exp(phase) * w[None, :]
            values[sel] = terms.sum(axis=1).real / math.pi
            scale = np.exp(g0 - c * lx)
            # log M itself carries a relative error of order 1e-13 (1 + |log M|)
            node_err = 16.0 * eps + _LOGM_RTOL * (1.0 + np.abs(lm.real))
            rounding = np.abs(terms) @ node_err / math.pi
            errs[sel] = rounding + scale * (tail * 10.0 + math.exp(-self._DROP))
        return values, errs


@lru_cache(maxsize=64)
def _inverter(m: float, alpha: float) -> _Inverter:
    return _Inverter(GenStableParams(m, alpha))


def density_mellin_inversion(
    p: GenStableParams, x: float, contour: float | None = None, halfheight: float | None = None
) -> DensityEvaluation:
    """Density by trapezoidal Mellin inversion along ``Re z = contour``.

    With ``contour=None`` the line is placed at the real saddle point of the
    integrand; ``halfheight`` truncates the line at ``|Im z| <= halfheight``
    (default: until the integrand has decayed by e^-40).
    """
    x = _scalar_x(x)
    if halfheight is not None and not halfheight > 0:
        raise DomainError("halfheight must be positive")
    v, e = _inverter(p.m, p.alpha).evaluate(np.array([x]), contour, halfheight)
    return DensityEvaluation(x=x, value=max(float(v[0]), 0.0), method="mellin-inversion", err=float(e[0]))


# --- dispatch ---------------------------------------------------------------


def density_values(p: GenStableParams, x, method: str | None = None):
    """Vectorised density: returns (values, errs, per-point method tags).

    In auto mode the choice is made per point, so a series that is only
    numerically stable on part of the grid is used there and inversion elsewhere.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)):
        raise DomainError("x must be positive")
    vals, errs = np.zeros(x.size), np.zeros(x.size)
    tags = np.full(x.size, "", dtype=object)
    auto = method in (None, "auto")
    # below this point the density underflows double precision
    live = x > zero_exponent_point(p, _UNDERFLOW_EXPONENT)
    if method == "closed" or auto:
        lf = _closed_log_density(p, x[live])
        if lf is not None:
            v = np.exp(lf)
            vals[live], errs[live] = v, 4.0 * np.finfo(float).eps * (1.0 + np.abs(lf)) * v
            tags[:] = "closed"
            return vals, errs, tags
        if method == "closed":
            raise PreconditionError("no closed form for these parameters")
    todo = live.copy()
    if auto:
        for fam in series_families(p):
            idx = np.flatnonzero(todo)
            if idx.size == 0:
                break
            try:
                v, e = _series_eval_many(p, x[idx], fam)
            except PreconditionError:
                continue
            ok = (v > 0) & (e <= _SERIES_ACCEPT * v)
            vals[idx[ok]], errs[idx[ok]] = v[ok], e[ok]
            tags[idx[ok]] = f"series-{fam}"
            todo[idx[ok]] = False
        method = "mellin-inversion"
    if method.startswith("series-"):
        fam = method[len("series-"):]
        if fam not in series_families(p):
            raise PreconditionError(f"{fam} family does not apply to m={p.m}, alpha={p.alpha}")
        idx = np.flatnonzero(todo)
        v, e = _series_eval_checked(p, x[idx], fam)
        vals[idx], errs[idx] = np.maximum(v, 0.0), e
    elif method == "mellin-inversion":
        if np.any(todo):
            v, e = _inverter(p.m, p.alpha).evaluate(x[todo])
            vals[todo], errs[todo] = np.maximum(v, 0.0), e
    else:
        raise ValueError(f"unknown method {method!r}")
    tags[tags == ""] = method
    return vals, errs, tags


def density(p: GenStableParams, x: float, method: str | None = None) -> DensityEvaluation:
    """``f_{m,alpha}(x)``; ``method=None`` picks closed form, then series, then inversion."""
    x = _scalar_x(x)
    v, e, tag = density_values(p, np.array([x]), method)
    return DensityEvaluation(x=x, value=float(v[0]), method=str(tag[0]), err=float(e[0]))


def density_reflected(p: GenStableParams, x: float, method: str | None = None) -> DensityEvaluation:
    """Density ``g(x) = x^-2 f(1/x)`` of ``Y = 1/X``."""
    x = _scalar_x(x)
    inner = density(p, 1.0 / x, method)
    return DensityEvaluation(x=x, value=inner.value / (x * x), method=inner.method, err=inner.err / (x * x))


# --- asymptotics ------------------------------------------------------------


def log_asymptotic_zero(p: GenStableParams, x):
    m, alpha, a = p.m, p.alpha, p.a
    lx = np.log(x)
    return (
        math.log(asymptotic_constant(p))
        - m * (1.0 + alpha) / (2.0 * alpha) * lx
        - (alpha / a) * np.exp(-(a / alpha) * lx)
    )


def asymptotic_zero(p: GenStableParams, x: float) -> float:
    """Leading behaviour ``c x^(-m(1+alpha)/(2 alpha)) exp(-(alpha/a) x^(-a/alpha))`` as x -> 0."""
    x = _scalar_x(x)
    return float(np.exp(log_asymptotic_zero(p, x)))


def asymptotic_infinity(p: GenStableParams, x: float) -> float:
    """Leading behaviour ``x^(alpha - m - 1) / Gamma(alpha)`` as x -> infinity."""
    x = _scalar_x(x)
    return math.exp((p.alpha - p.m - 1.0) * math.log(x) - math.lgamma(p.alpha))


def zero_exponent_point(p: GenStableParams, exponent: float) -> float:
    """The x at which ``(alpha/a) x^(-a/alpha)`` equals ``exponent``."""
    return (exponent * p.a / p.alpha) ** (-p.alpha / p.a)


def log_small_ball_probability(p: GenStableParams, x: float, points: int = 8001) -> float:
    """``log int_0^x asymptotic_zero(v) dv``, summed in log space (no underflow)."""
    x = _scalar_x(x)
    b = p.a / p.alpha
    exponent = (1.0 / b) * x ** (-b)
    # below log x - width the integrand has dropped by e^-60 at least
    width = math.log1p(60.0 / exponent) / b + 60.0 / max(1.0, p.m * (1.0 + p.alpha) / (2.0 * p.alpha))
    t = np.linspace(math.log(x) - width, math.log(x), points)
    logs = log_asymptotic_zero(p, np.exp(t)) + t
    w = np.full(points, t[1] - t[0])
    w[0] = w[-1] = 0.5 * w[0]
    peak = logs.max()
    return float(peak + math.log(np.sum(w * np.exp(logs - peak))))


def small_ball_estimate(p: GenStableParams, exponent: float) -> float:
    """``x^((alpha-m)/alpha) log P[X < 1/x]`` at the point where the exponent equals ``exponent``.

    Its limit as the exponent grows is ``-alpha/(m-alpha)``.
    """
    eps = zero_exponent_point(p, exponent)
    return eps ** (p.a / p.alpha) * log_small_ball_probability(p, eps)


# --- Laplace transforms -----------------------------------------------------


def _laplace_closed(p: GenStableParams, lam: float):
    m, alpha = p.m, p.alpha
    if p.regime() == "frechet":
        z = 2.0 * math.sqrt(lam)
        return math.exp(math.log(2.0) + 0.5 * alpha * math.log(lam) + _log_kv(alpha, z) - math.lgamma(alpha))
    if _near_int(m) and round(m) == 1:
        return math.exp(-(lam ** (1.0 - alpha)) / (1.0 - alpha))
    if _near_int(m) and round(m) == 2:
        nu = 1.0 / (2.0 - alpha)
        z = 2.0 * nu * lam ** (1.0 / (2.0 * nu))
        return math.exp(
            math.log(2.0) + nu * math.log(nu) - math.lgamma(nu) + 0.5 * math.log(lam) + _log_kv(nu, z)
        )
    return None


def _laplace_quadrature(p: GenStableParams, lam: float):
    """``int e^(-lam x) f(x) dx`` on the log scale plus an asymptotic right tail."""
    x_lo = zero_exponent_point(p, 60.0)
    x_hi = min(60.0 / lam, 1e8)
    t_lo, t_hi = math.log(x_lo), math.log(x_hi)
    previous = None
    h = 0.05
    while True:
        t = np.arange(t_lo, t_hi + h, h)
        xs = np.exp(t)
        f, ferr = density_values(p, xs)[:2]
        g = np.exp(-lam * xs) * xs
        w = np.full(t.size, h)
        w[0] = w[-1] = 0.5 * h
        total = float(np.sum(w * g * f))
        rounding = float(np.sum(w * g * ferr))
        if previous is not None and abs(total - previous) <= 1e-11:
            break
        previous = total
        h *= 0.5
    tail = 0.0
    if x_hi >= 1e8:
        c = 1.0 / math.gamma(p.alpha)
        tail = quad(lambda x: c * math.exp(-lam * x) * x ** (-p.a - 1.0), x_hi, np.inf, epsrel=1e-10)[0]
    err = abs(total - previous) + rounding + abs(tail) * 1e-2
    return total + tail, err


def laplace_transform(p: GenStableParams, lam: float, method: str | None = None) -> float:
    """``E[exp(-lam X)]``: closed form for m in {1, 2} or m = 2 alpha, numeric otherwise."""
    return laplace_transform_eval(p, lam, method)[0]


def laplace_transform_eval(p: GenStableParams, lam: float, method: str | None = None):
    """Return ``(value, err, method)``."""
    lam = float(lam)
    if lam < 0:
        raise DomainError("lam must be nonnegative")
    if lam == 0:
        return 1.0, 0.0, "closed"
    if method in (None, "closed"):
        v = _laplace_closed(p, lam)
        if v is not None:
            return v, 1e-14 * v, "closed"
        if method == "closed":
            raise PreconditionError("no closed-form Laplace transform for these parameters")
    v, e = _laplace_quadrature(p, lam)
    return v, e, "quadrature"


# --- Fox parameters ---------------------------------------------------------


def fox_parameters(p: GenStableParams, family: str | None = None) -> FoxParams:
    """Fox H-function parameters of the density for one of the three families.

    Returned exactly as the representation reads: orders, (a_i, A_i) pairs,
    prefactor and argument scale. No evaluation is attempted.
    """
    fams = series_families(p)
    if family is None:
        if not fams:
            raise PreconditionError("no Fox family applies (needs alpha in N, m/a in {2,3,...} or m in N)")
        family = fams[0]
    if family not in fams:
        raise PreconditionError(f"{family} family does not apply to m={p.m}, alpha={p.alpha}")
    a = p.a
    if family == "integer-alpha":
        n = int(round(p.alpha))
        pref = a ** (n / a) / math.prod(math.gamma(1.0 + (i - 1) / a) for i in range(1, n + 1))
        upper = tuple((-i / a, 1.0 / a) for i in range(1, n + 1))
        return FoxParams(family, 0, n, n, 0, upper, (), pref, a ** (n / a))
    if family == "lattice-m":
        n = int(round(p.m / a))
        pref = 1.0 / math.prod(math.gamma(i * a) for i in range(1, n))
        upper = tuple((-i * a, 1.0) for i in range(1, n))
        return FoxParams(family, 0, n - 1, n - 1, 0, upper, (), pref, 1.0)
    n = int(round(p.m))
    pref = a ** (n / a - 1.0) / math.prod(math.gamma(i / a) for i in range(1, n))
    upper = tuple((1.0 - i / a, 1.0 / a) for i in range(1, n + 1))
    return FoxParams(family, 0, n, n, 1, upper, ((0.0, 1.0),), pref, a ** (n / a))


def fox_log_mellin(fp: FoxParams, z):
    """``log int_0^inf x^(z-1) prefactor H[scale x] dx`` from the H-function parameters."""
    z = np.asarray(z, dtype=float)
    out = math.log(fp.prefactor) - z * math.log(fp.scale)
    for j, (b, B) in enumerate(fp.lower):
        out = out + (sc.gammaln(b + B * z) if j < fp.m else -sc.gammaln(1.0 - b - B * z))
    for i, (ai, Ai) in enumerate(fp.upper):
        out = out + (sc.gammaln(1.0 - ai - Ai * z) if i < fp.n else -sc.gammaln(ai + Ai * z))
    return out
