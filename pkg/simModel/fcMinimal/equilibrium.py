"""
Description: stationary density of the chartist fraction x under the
simplified switching rates,

    P_eq(x) ~ x^(r(1-δ)-1) (1-x)^(r(1+δ)-1) exp(-2 δ N x),

with r a free shape parameter. Normalization is done by adaptive quadrature
on a shifted log-density, so large exponents do not underflow.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy import integrate, optimize

from simModel.common.errors import DomainError

QUAD_EPSREL = 1e-10
R_BOUNDS = (1e-2, 1e4)


@dataclass
class EquilibriumDensity:
    r: float
    delta: float
    N: int
    _peak: Optional[float] = field(init=False, default=None, repr=False)
    _shift: float = field(init=False, repr=False)
    _norm: float = field(init=False, repr=False)

    def __post_init__(self):
        if not (self.r * (1.0 - self.delta) > 0.0 and self.r * (1.0 + self.delta) > 0.0):
            raise DomainError(
                f"non-integrable density: r(1-δ)={self.r * (1 - self.delta):.4g}, "
                f"r(1+δ)={self.r * (1 + self.delta):.4g}; both exponents must exceed -1")
        self._shift = self._log_peak()
        self._norm = self._integrate(0.0, 1.0)

    @property
    def exponents(self):
        return self.r * (1.0 - self.delta) - 1.0, self.r * (1.0 + self.delta) - 1.0

    def _log_unnormalized(self, x):
        a, b = self.exponents
        with np.errstate(divide="ignore", invalid="ignore"):
            return a * np.log(x) + b * np.log1p(-x) - 2.0 * self.delta * self.N * x

    def _log_peak(self) -> float:
        a, b = self.exponents
        if a < 0.0 or b < 0.0:
            # singular at a boundary: any interior reference works
            grid = np.linspace(0.01, 0.99, 99)
            return float(np.max(self._log_unnormalized(grid)))
        # concave for a, b >= 0
        res = optimize.minimize_scalar(lambda x: -self._log_unnormalized(x),
                                       bounds=(1e-12, 1.0 - 1e-12), method="bounded",
                                       options={"xatol": 1e-12})
        self._peak = float(res.x)
        return float(-res.fun)

    def _integrand(self, x: float) -> float:
        return float(np.exp(self._log_unnormalized(x) - self._shift))

    def _integrate(self, lo: float, hi: float) -> float:
        points = None
        if self._peak is not None and lo < self._peak < hi:
            points = [self._peak]
        value, _ = integrate.quad(self._integrand, lo, hi, epsabs=0.0, epsrel=QUAD_EPSREL,
                                  limit=500, points=points)
        return value

    def __call__(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        arr = np.asarray(x, dtype=np.float64)
        if np.any((arr <= 0.0) | (arr >= 1.0)):
            raise DomainError("the density is defined on the open interval (0, 1)")
        values = np.exp(self._log_unnormalized(arr) - self._shift) / self._norm
        return float(values) if np.ndim(x) == 0 else values

    def bin_masses(self, edges: Sequence[float]) -> np.ndarray:
        edges = np.asarray(edges, dtype=np.float64)
        masses = np.array([self._integrate(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])])
        return masses / self._norm


def equilibrium_density(x: Union[float, np.ndarray], r: float, delta: float, N: int):
    """normalized stationary density of x at the given points"""
    return EquilibriumDensity(r, delta, N)(x)


def equilibrium_bin_masses(edges: Sequence[float], r: float, delta: float, N: int) -> np.ndarray:
    return EquilibriumDensity(r, delta, N).bin_masses(edges)


def lattice_edges(N: int, bins: int = 50) -> np.ndarray:
    """bin edges on [0, 1] following the cells of the lattice x = k/N

    Point k falls in bin min(k * bins // N, bins - 1) and a bin spans the
    half-lattice cells [(k - 1/2)/N, (k + 1/2)/N] of its points, clipped to
    [0, 1]. Bins that collect no point have zero width.
    """
    if N < 1 or bins < 1:
        raise DomainError(f"need N >= 1 and bins >= 1, got N={N}, bins={bins}")
    j = np.arange(1, bins)
    first = -(-j * N // bins)
    inner = np.clip((first - 0.5) / N, 0.0, 1.0)
    return np.concatenate(([0.0], inner, [1.0]))


def lattice_counts(n_c: np.ndarray, N: int, bins: int = 50) -> np.ndarray:
    """counts of chartist numbers per bin, integer arithmetic only"""
    k = np.rint(np.asarray(n_c, dtype=np.float64)).astype(np.int64)
    if k.size and (k.min() < 0 or k.max() > N):
        raise DomainError(f"chartist counts must lie in [0, {N}]")
    return np.bincount(np.minimum(k * bins // N, bins - 1), minlength=bins)


def histogram_masses(n_c: np.ndarray, N: int, bins: int = 50) -> np.ndarray:
    counts = lattice_counts(n_c, N, bins)
    if counts.sum() == 0:
        raise DomainError("no samples to bin")
    return counts / counts.sum()


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def fit_shape_parameter(n_c: np.ndarray, delta: float, N: int, bins: int = 50) -> float:
    """maximum-likelihood r from binned chartist counts

    The likelihood is multinomial over the lattice bins of `lattice_edges`
    with bin probabilities integrated from the analytic density.
    """
    counts = lattice_counts(n_c, N, bins)
    if counts.sum() == 0:
        raise DomainError("no samples to fit")
    edges = lattice_edges(N, bins)

    def negative_log_likelihood(log_r: float) -> float:
        masses = EquilibriumDensity(float(np.exp(log_r)), delta, N).bin_masses(edges)
        masses = np.maximum(masses, 1e-300)
        return -float(np.dot(counts, np.log(masses)))

    res = optimize.minimize_scalar(negative_log_likelihood,
                                   bounds=(np.log(R_BOUNDS[0]), np.log(R_BOUNDS[1])),
                                   method="bounded", options={"xatol": 1e-4})
    return float(np.exp(res.x))
