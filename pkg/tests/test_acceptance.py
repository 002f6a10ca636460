"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
Tolerances are the stated ones; nothing is relaxed here.
"""

import math
import sys
import time

import numpy as np
import pytest
from scipy import special as sc

from genstable.density import (
    asymptotic_infinity,
    asymptotic_zero,
    density_values,
    laplace_transform,
    series_families,
    small_ball_estimate,
    zero_exponent_point,
)
from genstable.errors import PreconditionError
from genstable.fracops import ide_residual, steutel_residual, stieltjes_check
from genstable.mellin import log_mellin, moment_growth_sequence, moment_lattice
from genstable.params import GenStableParams as P
from genstable.sampling import SampleConfig, factorization_check, sample
from genstable.specfun import log_double_gamma

LOG_2PI = math.log(2.0 * math.pi)

# spans m < 2 alpha, m = 2 alpha and m > 2 alpha
EIGHT = [P(2, 1), P(4, 2), P(1, 0.5), P(3, 1), P(2.7, 2), P(3, 1.3), P(1.2, 0.9), P(2, 1.7)]
TWELVE = EIGHT + [P(2.5, 1.2), P(5, 0.3), P(1.5, 1), P(0.8, 0.4)]
XGRID = np.geomspace(0.2, 20.0, 25)


def report(number, ok, detail, capsys=None):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def check(number, ok, detail, capsys):
    report(number, ok, detail, capsys)
    assert ok, detail


def c1():
    t0 = time.perf_counter()
    worst = 0.0
    for p in TWELVE:
        a = p.a
        s = np.linspace(-a + 0.01, 20.0, 50)
        lhs = log_mellin(p, s + a) + sc.gammaln(a + s) - log_mellin(p, s) - sc.gammaln(p.m + s)
        worst = max(worst, float(np.max(np.abs(np.expm1(lhs)))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and dt < 10.0
    return ok, f"functional equation max deviation {worst:.2e} (<= 1e-9), {dt:.1f} s (< 10 s)"


def c2():
    t0 = time.perf_counter()
    zs = np.linspace(0.1, 20.0, 40)
    lg = np.vectorize(math.lgamma)
    w1 = w2 = w3 = 0.0
    for tau in np.linspace(0.1, 20.0, 40):
        g = log_double_gamma(zs, tau)
        r1 = log_double_gamma(zs + 1.0, tau) - lg(zs / tau) - g
        r2 = log_double_gamma(zs + tau, tau) - (0.5 * (tau - 1) * LOG_2PI + (0.5 - zs) * math.log(tau) + lg(zs) + g)
        r3 = log_double_gamma(tau, tau) - (0.5 * (tau - 1) * LOG_2PI - 0.5 * math.log(tau))
        # relative error of G is the absolute error of log G
        w1 = max(w1, float(np.max(np.abs(np.expm1(r1)))))
        w2 = max(w2, float(np.max(np.abs(np.expm1(r2)))))
        w3 = max(w3, abs(math.expm1(float(r3))))
    dt = time.perf_counter() - t0
    ok = max(w1, w2, w3) <= 1e-9 and dt < 30.0
    return ok, f"recursions {w1:.1e}, {w2:.1e}; special value {w3:.1e} (<= 1e-9), {dt:.1f} s (< 30 s)"


def c3():
    errs = {}
    errs["f_2,1(1)"] = abs(density_values(P(2, 1), np.array([1.0]))[0][0] - math.exp(-1))
    worst = 0.0
    x = np.geomspace(0.05, 50.0, 30)
    for alpha in (0.3, 0.5, 1.0, 1.7, 3.0):
        exact = x ** (-alpha - 1) * np.exp(-1 / x) / math.gamma(alpha)
        worst = max(worst, float(np.max(np.abs(density_values(P(2 * alpha, alpha), x)[0] - exact))))
    errs["f_2a,a grid"] = worst
    errs["f_1,1/2(1)"] = abs(density_values(P(1, 0.5), np.array([1.0]))[0][0] - math.exp(-1) / math.sqrt(math.pi))
    errs["L_2,1(1)"] = abs(laplace_transform(P(2, 1), 1.0) - 2 * sc.kv(1, 2.0))
    errs["L_1,1/2(1)"] = abs(laplace_transform(P(1, 0.5), 1.0) - math.exp(-2))
    ok = max(errs.values()) <= 1e-9
    return ok, "golden values, max error " + ", ".join(f"{k} {v:.1e}" for k, v in errs.items()) + " (<= 1e-9)"


def _methods(p):
    out = ["mellin-inversion"]
    try:
        density_values(p, np.array([1.0]), "closed")
        out.append("closed")
    except PreconditionError:
        pass
    out += [f"series-{fam}" for fam in series_families(p)]
    return out


def c4():
    t0 = time.perf_counter()
    worst, skipped, pairs = 0.0, 0, 0
    notes = []
    for p in EIGHT:
        vals = {}
        for method in _methods(p):
            try:
                v, e, _ = density_values(p, XGRID, method)
            except PreconditionError:
                continue
            vals[method] = (v, np.isfinite(e))
        names = list(vals)
        if len(names) < 2:
            notes.append(f"{p.m},{p.alpha}: one method only")
            continue
        for i, m1 in enumerate(names):
            for m2 in names[i + 1:]:
                v1, ok1 = vals[m1]
                v2, ok2 = vals[m2]
                both = ok1 & ok2
                skipped += int(np.sum(~both))
                rel = np.abs(v1 - v2)[both] / np.abs(v2[both])
                worst = max(worst, float(rel.max()))
                pairs += 1
    dt = time.perf_counter() - t0
    ok = worst <= 1e-6 and dt < 120.0 and not notes
    detail = f"{pairs} method pairs over 8 sets, max relative disagreement {worst:.1e} (<= 1e-6), {dt:.1f} s"
    if skipped:
        detail += f"; {skipped} point-pairs where a series reports no finite bound"
    return ok, detail + ("; " + "; ".join(notes) if notes else "")


def c5():
    t0 = time.perf_counter()
    grid = np.geomspace(0.2, 20.0, 12)
    worst = {f"({p.m:g},{p.alpha:g})": ide_residual(p, grid).max_residual for p in EIGHT}
    dt = time.perf_counter() - t0
    top = max(worst.values())
    ok = top < 1e-5 and dt < 120.0
    return ok, f"max IDE residual {top:.1e} (< 1e-5) over 8 sets, {dt:.1f} s (< 120 s)"


def c6():
    bad = []
    inf_w = zero_w = sb_w = 0.0
    for p in EIGHT:
        tag = f"({p.m:g},{p.alpha:g})"
        r_inf = density_values(p, np.array([1e4]))[0][0] / asymptotic_infinity(p, 1e4)
        x0 = zero_exponent_point(p, 30.0)
        r_zero = density_values(p, np.array([x0]))[0][0] / asymptotic_zero(p, x0)
        sb = small_ball_estimate(p, 1e4) / (-p.alpha / p.a)
        inf_w = max(inf_w, abs(r_inf - 1))
        zero_w = max(zero_w, abs(r_zero - 1))
        sb_w = max(sb_w, abs(sb - 1))
        if abs(r_inf - 1) > 0.05:
            bad.append(f"{tag} ratio at 1e4 = {r_inf:.3f}")
        if abs(r_zero - 1) > 0.05 or (p.regime() == "frechet" and abs(r_zero - 1) > 1e-10):
            bad.append(f"{tag} ratio at exponent 30 = {r_zero:.3f}")
        if abs(sb - 1) > 0.03:
            bad.append(f"{tag} small-ball ratio = {sb:.3f}")
    detail = (
        f"max deviations: infinity {inf_w:.3f} (<= 0.05), zero {zero_w:.3f} (<= 0.05), "
        f"small-ball {sb_w:.4f} (<= 0.03)"
    )
    if bad:
        detail += "; outside: " + "; ".join(bad)
    return not bad, detail


def c7():
    devs = {}
    for p in (P(2, 1), P(3, 1), P(1.5, 1)):
        b = p.a / p.alpha
        devs[f"({p.m:g},{p.alpha:g})"] = moment_growth_sequence(p, 200) * math.e / b - 1.0
    ok = all(abs(d) <= 0.01 for d in devs.values())
    return ok, "a_n e/b - 1 at n=200: " + ", ".join(f"{k} {v:+.4f}" for k, v in devs.items()) + " (|.| <= 0.01)"


def c8():
    count = 100_000
    worst_z = 0.0
    for p in (P(2, 1), P(2.5, 1.2), P(1.5, 1), P(3, 1.3)):
        # depth 1000: see the mean-log bias note in the sampling tests
        y = sample(p, SampleConfig(count=count, seed=2024, truncation_depth=1000)).reciprocal()
        for k in (1, 2, 3):
            v = y ** (k * p.a)
            z = (v.mean() - moment_lattice(p, k).value) / (v.std(ddof=1) / math.sqrt(count))
            worst_z = max(worst_z, abs(z))
    pvals = [factorization_check(p, count, seed=99).pvalue for p in (P(1.5, 1), P(1.2, 0.9))]
    cfg = SampleConfig(count=20_000, seed=123)
    replay = sample(P(2.5, 1.2), cfg).values.tobytes() == sample(P(2.5, 1.2), cfg).values.tobytes()
    ok = worst_z <= 4 and min(pvals) > 1e-3 and replay
    return ok, (
        f"moments max |z| {worst_z:.2f} (<= 4); factorization KS p-values "
        + ", ".join(f"{q:.3f}" for q in pvals)
        + f" (> 0.001); replay identical: {replay}"
    )


def c9():
    lams = np.geomspace(0.1, 100.0, 12)
    passing = []
    for conv in ("paper", "derived"):
        worst = 0.0
        for alpha in (0.5, 1.0, 2.0):
            for lam in lams:
                ratio, integral = stieltjes_check(alpha, float(lam), conv)
                worst = max(worst, abs(integral / ratio - 1))
        if worst <= 1e-6:
            passing.append(conv)
    st1 = steutel_residual(1.0, [1.0, 2.0]).max_residual
    st2 = steutel_residual(0.5, [1.0]).max_residual
    ok = len(passing) == 1 and st1 < 1e-3 and st2 < 1e-3
    return ok, f"Stieltjes identity holds under {passing} (exactly one); Steutel residuals {st1:.1e}, {st2:.1e} (< 1e-3)"


def c10():
    d1 = max(abs(math.expm1(float(log_mellin(P(1, 1e-3), np.array([s]))[0]))) for s in (0.5, 1.0, 2.0))
    p = P(1, 1 - 1e-3)
    a = p.a
    d2 = 0.0
    for s in (0.5, 1.0):
        v = -s * math.log(a) + float(log_mellin(p, np.array([a * s]))[0]) - s * math.lgamma(p.m) - math.lgamma(1 + s)
        d2 = max(d2, abs(math.expm1(v)))
    ok = d1 < 1e-2 and d2 < 2e-2
    return ok, f"alpha -> 0: |M(s) - 1| max {d1:.1e} (< 1e-2); a -> 0: rescaled deviation {d2:.1e} (< 2e-2)"


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    check(number, ok, detail, capsys)


if __name__ == "__main__":
    results = [report(n, *fn()) for n, fn in enumerate(CRITERIA, start=1)]
    sys.exit(0 if all(results) else 1)
