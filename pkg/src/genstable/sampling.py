"""Random variates of X_{m,alpha} and its reciprocal Y = 1/X.

The generic samplers truncate one of the two infinite Beta products for Y
after ``truncation_depth`` factors. The omitted tail has unit mean, and its
log-mean is restored deterministically when ``tail_correction='mean-log'``.
Special parameter families have exact Gamma-product or positive-stable
samplers.

Streams: each block of ``_CHUNK`` draws takes its own child of the root
``SeedSequence``. Output depends only on (seed, config), never on how the
blocks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import ks_2samp

from .errors import PreconditionError
from .mellin import first_product, second_product
from .params import GenStableParams

_CHUNK = 8192
_INT_TOL = 1e-12
# below this many draws the KS test cannot detect realistic discrepancies
_UNDERPOWERED = 1000

REPRESENTATIONS = ("first-product", "second-product", "special")
TAIL_CORRECTIONS = ("none", "mean-log")


@dataclass(frozen=True)
class SampleConfig:
    count: int
    truncation_depth: int = 200
    tail_correction: str = "mean-log"
    seed: int = 0
    representation: str = "first-product"

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.truncation_depth < 1:
            raise ValueError("truncation_depth must be at least 1")
        if self.tail_correction not in TAIL_CORRECTIONS:
            raise ValueError(f"tail_correction must be one of {TAIL_CORRECTIONS}")
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"representation must be one of {REPRESENTATIONS}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SampleBatch:
    """Draws of X_{m,alpha}; ``tail_log_mean_applied`` is the log-factor used on X."""

    values: np.ndarray
    provenance: SampleConfig
    tail_log_mean_applied: float = 0.0

    def __post_init__(self):
        if self.values.size != self.provenance.count:
            raise ValueError("batch length does not match the configured count")
        if np.any(~(self.values > 0)):
            raise ValueError("sampled values must be positive")

    def reciprocal(self) -> np.ndarray:
        """Draws of Y = 1/X."""
        return 1.0 / self.values


def _chunks(count: int, seed: int):
    """Yield (size, Generator) pairs with one independent stream per block."""
    root = np.random.SeedSequence(seed)
    for index, start in enumerate(range(0, count, _CHUNK)):
        child = np.random.SeedSequence(root.entropy, spawn_key=(index,))
        yield min(_CHUNK, count - start), np.random.Generator(np.random.PCG64(child))


def _log_product_draws(prod, depth, size, rng):
    n = np.arange(depth, dtype=float)
    pn = prod.p0 + prod.delta * n
    log_kappa = np.log1p(prod.q / pn)
    # Beta variates are drawn through numpy's Gamma ratio sampler
    b = rng.beta(pn[None, :], prod.q, size=(size, depth))
    return np.log(b).sum(axis=1) + log_kappa.sum()


def sample(p: GenStableParams, cfg: SampleConfig) -> SampleBatch:
    """Approximate draws of X_{m,alpha} from a truncated Beta product."""
    if cfg.representation == "special":
        return sample_special(p, cfg.count, cfg.seed)
    if cfg.representation == "first-product":
        log_c, prod = first_product(p)
        power = 1.0
    else:
        log_c, prod = second_product(p)
        power = 1.0 / p.a
    tail = prod.tail_log_mean(cfg.truncation_depth) if cfg.tail_correction == "mean-log" else 0.0
    out = np.empty(cfg.count)
    pos = 0
    for size, rng in _chunks(cfg.count, cfg.seed):
        log_y = power * (log_c + _log_product_draws(prod, cfg.truncation_depth, size, rng) + tail)
        out[pos:pos + size] = np.exp(-log_y)
        pos += size
    return SampleBatch(values=out, provenance=cfg, tail_log_mean_applied=-power * tail)


def special_family(p: GenStableParams) -> str | None:
    if abs(p.alpha - round(p.alpha)) <= _INT_TOL * p.alpha:
        return "integer-alpha"
    ratio = p.m / p.a
    if abs(ratio - round(ratio)) <= _INT_TOL * ratio and round(ratio) >= 2:
        return "lattice-m"
    if abs(p.m - 1.0) <= _INT_TOL:
        return "stable"
    return None


def positive_stable(a: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Kanter's representation of Z_a with ``E exp(-lam Z_a) = exp(-lam^a)``, 0 < a < 1."""
    u = rng.uniform(0.0, math.pi, size)
    e = rng.standard_exponential(size)
    log_a = (
        a * np.log(np.sin(a * u)) + (1.0 - a) * np.log(np.sin((1.0 - a) * u)) - np.log(np.sin(u))
    ) / (1.0 - a)
    return np.exp((1.0 - a) / a * (log_a - np.log(e)))


def sample_special(p: GenStableParams, count: int, seed: int) -> SampleBatch:
    """Exact draws for alpha in N, m/a in {2, 3, ...} or m = 1."""
    family = special_family(p)
    if family is None:
        raise PreconditionError("no exact sampler: needs alpha in N, m/a in {2, 3, ...} or m = 1")
    a = p.a
    out = np.empty(count)
    pos = 0
    for size, rng in _chunks(count, seed):
        if family == "integer-alpha":
            n = int(round(p.alpha))
            shapes = 1.0 + np.arange(n) / a
            log_g = np.log(rng.gamma(shapes[None, :], size=(size, n))).sum(axis=1)
            x = np.exp(-(n * math.log(a) + log_g) / a)
        elif family == "lattice-m":
            n = int(round(p.m / a))
            shapes = a * np.arange(1, n)
            x = np.exp(-np.log(rng.gamma(shapes[None, :], size=(size, n - 1))).sum(axis=1))
        else:
            x = a ** (-1.0 / a) * positive_stable(a, size, rng)
        out[pos:pos + size] = x
        pos += size
    cfg = SampleConfig(count=count, seed=seed, representation="special", tail_correction="none")
    return SampleBatch(values=out, provenance=cfg)


@dataclass(frozen=True)
class FactorizationReport:
    statistic: float
    pvalue: float
    count: int
    underpowered: bool


def factorization_check(p: GenStableParams, count: int, seed: int, cfg: SampleConfig | None = None):
    """KS comparison of Y_{m,alpha} against Y_{m-a, m-2a} x Gamma_alpha (needs m < 2 alpha)."""
    if not p.regime() == "below":
        raise PreconditionError("factorization needs m < 2 alpha")
    base = cfg or SampleConfig(count=count, seed=seed)
    seeds = np.random.SeedSequence(seed).generate_state(3, dtype=np.uint64)
    left = sample(p, replace(base, count=count, seed=int(seeds[0]))).reciprocal()
    q = GenStableParams(p.m - p.a, p.m - 2.0 * p.a)
    right = sample(q, replace(base, count=count, seed=int(seeds[1]))).reciprocal()
    right = right * np.random.default_rng(int(seeds[2])).gamma(p.alpha, size=count)
    res = ks_2samp(left, right)
    return FactorizationReport(
        statistic=float(res.statistic), pvalue=float(res.pvalue), count=count, underpowered=count < _UNDERPOWERED
    )
