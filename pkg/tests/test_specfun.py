import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special as sc

from genstable.errors import DomainError, RangeError
from genstable.specfun import (
    BesselQuery,
    DoubleGammaArgs,
    bessel,
    digamma_trigamma,
    kratzel,
    log_double_gamma,
    log_double_gamma_complex,
    log_gamma,
)

LOG_2PI = math.log(2 * math.pi)
zs = st.floats(0.1, 20.0)
taus = st.floats(0.1, 20.0)


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (0.5, 0.5723649429247001), (5.0, 3.1780538303479458)])
def test_log_gamma_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize(
    "x, psi, tri",
    [
        (1.0, -0.5772156649015329, 1.6449340668482264),
        (2.0, 0.42278433509846713, 0.6449340668482264),
        (0.5, -1.9635100260214235, 4.934802200544679),
    ],
)
def test_digamma_trigamma_values(x, psi, tri):
    p, t = digamma_trigamma(x)
    assert p == pytest.approx(psi, rel=1e-12)
    assert t == pytest.approx(tri, rel=1e-12)
    assert t > 0


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
def test_gamma_family_rejects_nonpositive(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)
    with pytest.raises(DomainError):
        digamma_trigamma(bad)


def test_bessel_values():
    assert bessel(BesselQuery("K", 0.5, 1.0)) == pytest.approx(0.4610685044, rel=1e-9)
    assert bessel(BesselQuery("J", 0.5, math.pi / 2)) == pytest.approx(2 / math.pi, rel=1e-12)
    # K_0(1) = int_0^inf exp(-cosh t) dt, by an independent quadrature
    oracle = float(mp.quad(lambda t: mp.exp(-mp.cosh(t)), [0, 2, 5, 8]))
    assert bessel(BesselQuery("K", 0.0, 1.0)) == pytest.approx(oracle, rel=1e-12)
    assert oracle == pytest.approx(0.4210244382, rel=1e-9)


@pytest.mark.parametrize(
    "kind, order, arg, exc",
    [("K", 51.0, 1.0, RangeError), ("J", 1.0, 2e4, RangeError), ("Y", 1.0, 1e-7, RangeError), ("I", 1.0, 1.0, DomainError)],
)
def test_bessel_rejects_out_of_range(kind, order, arg, exc):
    with pytest.raises(exc) as info:
        BesselQuery(kind, order, arg)
    assert kind == "I" or any(c.isdigit() for c in str(info.value))


@given(st.floats(0.5, 30.0), st.floats(1e-3, 1e3))
def test_bessel_wronskian(nu, x):
    j, y = bessel(BesselQuery("J", nu, x)), bessel(BesselQuery("Y", nu, x))
    if max(abs(j), abs(y)) > 1e250:
        return
    # recurrence derivatives: C'_nu = C_{nu-1} - (nu/x) C_nu
    jp = sc.jv(nu - 1, x) - nu / x * j
    yp = sc.yv(nu - 1, x) - nu / x * y
    w = j * yp - jp * y
    assert w == pytest.approx(2 / (math.pi * x), rel=1e-9)


@given(st.floats(1e-6, 1e4))
def test_k_half_closed_form(x):
    assert bessel(BesselQuery("K", 0.5, x)) == pytest.approx(math.sqrt(math.pi / (2 * x)) * math.exp(-x), rel=1e-12)


# --- double Gamma ---


@pytest.mark.parametrize("z, tau, expected", [(1.0, 0.7, 0.0), (2.0, 2.0, 0.5723649429247001), (3.0, 1.0, 0.0)])
def test_log_double_gamma_values(z, tau, expected):
    assert log_double_gamma(z, tau) == pytest.approx(expected, abs=1e-12)


@given(zs, taus)
def test_first_recursion(z, tau):
    lhs = log_double_gamma(z + 1.0, tau)
    rhs = math.lgamma(z / tau) + log_double_gamma(z, tau)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@given(zs, taus)
def test_second_recursion(z, tau):
    lhs = log_double_gamma(z + tau, tau)
    rhs = 0.5 * (tau - 1) * LOG_2PI + (0.5 - z) * math.log(tau) + math.lgamma(z) + log_double_gamma(z, tau)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@pytest.mark.parametrize("tau", [0.3, 1.0, 2.0, 5.0, 10.0])
def test_special_value_at_tau(tau):
    expected = 0.5 * (tau - 1) * LOG_2PI - 0.5 * math.log(tau)
    value = log_double_gamma(tau, tau)
    # relative accuracy on G itself, i.e. absolute on its logarithm
    assert abs(value - expected) <= 1e-10


@given(st.floats(0.05, 30.0))
def test_tau_one_matches_barnes_g(z):
    # G(z; 1) is the Barnes G-function
    assert log_double_gamma(z, 1.0) == pytest.approx(float(mp.log(mp.barnesg(z))), abs=1e-11 * max(1, z * z))


@given(st.floats(0.2, 10.0), st.floats(-20.0, 20.0), st.floats(0.2, 5.0))
def test_complex_first_recursion(x, y, tau):
    z = np.array([complex(x, y)])
    lhs = log_double_gamma_complex(z + 1.0, tau)[0]
    rhs = sc.loggamma(z[0] / tau) + log_double_gamma_complex(z, tau)[0]
    # equality modulo 2 pi i
    d = lhs - rhs
    assert abs(d.real) <= 1e-9 * max(1.0, abs(lhs))
    assert abs((d.imag + math.pi) % (2 * math.pi) - math.pi) <= 1e-8 * max(1.0, abs(lhs))


def test_double_gamma_argument_checks():
    with pytest.raises(DomainError):
        DoubleGammaArgs(0.0, 1.0)
    with pytest.raises(DomainError):
        log_double_gamma(1.0, -1.0)
    with pytest.raises(DomainError):
        log_double_gamma(-0.5, 1.0)


def test_double_gamma_vectorised():
    z = np.array([0.5, 1.0, 2.5])
    out = log_double_gamma(z, 0.8)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(0.0, abs=1e-13)


# --- Kratzel ---


@pytest.mark.parametrize(
    "rho, nu, lam, expected",
    [(1, 2, 0, 1.0), (2, 1, 0, math.sqrt(math.pi) / 2), (1, 1, 1, 2 * sc.kv(1, 2.0)), (-1, -1, 0, 1.0)],
)
def test_kratzel_values(rho, nu, lam, expected):
    assert kratzel(rho, nu, lam) == pytest.approx(expected, rel=1e-8)


@given(st.floats(-3.0, 3.0), st.floats(0.05, 10.0))
def test_kratzel_rho_one_is_macdonald(nu, lam):
    # Z_1^nu(lam) = 2 lam^(nu/2) K_nu(2 sqrt lam); scipy kv returns nan for subnormal orders
    expected = float(2 * mp.mpf(lam) ** (mp.mpf(nu) / 2) * mp.besselk(nu, 2 * mp.sqrt(lam)))
    assert kratzel(1.0, nu, lam) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("rho, nu, lam", [(1, -1, 0), (1, 1, -1), (-1, 1, 0), (0, 0, 0)])
def test_kratzel_divergent(rho, nu, lam):
    with pytest.raises(DomainError):
        kratzel(rho, nu, lam)
