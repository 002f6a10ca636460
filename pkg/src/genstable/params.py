from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

EXISTENCE_MESSAGE = "density solution exists iff m > alpha"


@dataclass(frozen=True)
class GenStableParams:
    """Parameters (m, alpha) of the generalized stable law G(m, alpha).

    The law is the unique probability density solving
    ``I^alpha f = x^m f`` on the half-line. Derived quantities:

    * ``a = m - alpha``, the first pole of the Mellin transform sits at ``s = -a``;
    * ``b = a / alpha``, the stretched-exponential rate exponent at zero;
    * ``beta = alpha / a``.
    """

    m: float
    alpha: float

    def __post_init__(self):
        m, alpha = float(self.m), float(self.alpha)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "alpha", alpha)
        if not alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {alpha!r}")
        if not m > alpha:
            raise DomainError(f"{EXISTENCE_MESSAGE} (got m={m!r}, alpha={alpha!r})")

    @property
    def a(self) -> float:
        return self.m - self.alpha

    @property
    def b(self) -> float:
        return self.a / self.alpha

    @property
    def beta(self) -> float:
        return self.alpha / self.a

    def regime(self) -> str:
        """Position relative to the Frechet line m = 2 alpha: 'below', 'frechet' or 'above'."""
        gap = self.m - 2.0 * self.alpha
        if abs(gap) <= 1e-12 * max(1.0, self.m):
            return "frechet"
        return "below" if gap < 0 else "above"
