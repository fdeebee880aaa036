"""Partial correlations, regression coefficients and signal-strength summaries.

The population model is ``N(0, Sigma)``. Sample routines center their columns
and regress without an intercept.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, inf, sqrt
from typing import Optional, Sequence

import numpy as np

from .core import EMPTY, GroundSet, SetLike, VarSet, as_varset
from .exceptions import (
    InsufficientSamplesError,
    InvalidArgumentError,
    NumericDegeneracyError,
    TooLargeError,
)

MAX_CONDITION = 1e12
DEFAULT_TOL = 1e-9


class CovarianceSpec:
    """A symmetric positive-definite covariance matrix.

    Build it with :meth:`from_covariance` or :meth:`from_precision`; the
    precision form is inverted once at construction.
    """

    def __init__(self, matrix, source_kind: str = "covariance", eps_pd: float = 1e-12,
                 labels: Optional[Sequence[str]] = None):
        if source_kind not in ("covariance", "precision"):
            raise InvalidArgumentError(f"unknown source kind {source_kind!r}")
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidArgumentError(f"expected a square matrix, got shape {m.shape}")
        scale = max(np.abs(m).max(), 1.0)
        if np.abs(m - m.T).max() > 1e-12 * scale:
            raise InvalidArgumentError("matrix is not symmetric")
        m = (m + m.T) / 2
        eig = np.linalg.eigvalsh(m)
        if eig.min() <= eps_pd:
            raise InvalidArgumentError(f"matrix is not positive definite (min eigenvalue {eig.min():.3g})")
        self.source_kind = source_kind
        self.eps_pd = eps_pd
        self.ground = GroundSet(m.shape[0], tuple(labels) if labels else ())
        if source_kind == "precision":
            self._precision = m
            cov = np.linalg.inv(m)
            self.covariance = (cov + cov.T) / 2
        else:
            self.covariance = m
            self._precision = None

    @classmethod
    def from_covariance(cls, sigma, **kw) -> "CovarianceSpec":
        return cls(sigma, "covariance", **kw)

    @classmethod
    def from_precision(cls, omega, **kw) -> "CovarianceSpec":
        return cls(omega, "precision", **kw)

    @property
    def precision(self) -> np.ndarray:
        if self._precision is None:
            p = np.linalg.inv(self.covariance)
            self._precision = (p + p.T) / 2
        return self._precision

    @property
    def d(self) -> int:
        return self.covariance.shape[0]

    def correlation(self) -> np.ndarray:
        s = np.sqrt(np.diag(self.covariance))
        return self.covariance / np.outer(s, s)

    def sample(self, n: int, rng: np.random.Generator) -> "SampleMatrix":
        x = rng.multivariate_normal(np.zeros(self.d), self.covariance, size=n, method="cholesky")
        return SampleMatrix(x, labels=self.ground.labels)


class SampleMatrix:
    """``n`` observations of ``d`` variables."""

    def __init__(self, data, labels: Optional[Sequence[str]] = None):
        x = np.asarray(data, dtype=float)
        if x.ndim != 2:
            raise InvalidArgumentError("sample data must be two-dimensional")
        if x.shape[0] < 3:
            raise InsufficientSamplesError(f"need at least 3 observations, got {x.shape[0]}")
        if not np.all(np.isfinite(x)):
            raise InvalidArgumentError("sample data contains non-finite values")
        self.data = x
        self.centered = x - x.mean(axis=0)
        self.ground = GroundSet(x.shape[1], tuple(labels) if labels else ())

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class PartialCorrelation:
    value: float
    i: int
    j: int
    S: VarSet
    source: str = "exact"
    n: Optional[int] = None

    def __float__(self) -> float:
        return self.value


def _clamp(r: float) -> float:
    return max(-1.0, min(1.0, r))


def _check_condition(block: np.ndarray) -> None:
    if block.size and np.linalg.cond(block) > MAX_CONDITION:
        raise NumericDegeneracyError("conditioning block is ill-conditioned")


def conditional_covariance(sigma: np.ndarray, targets: Sequence[int], given: Sequence[int]) -> np.ndarray:
    """Schur complement ``Sigma_TT - Sigma_TG Sigma_GG^-1 Sigma_GT``."""
    t = list(targets)
    g = list(given)
    block = sigma[np.ix_(t, t)]
    if not g:
        return block.copy()
    gg = sigma[np.ix_(g, g)]
    _check_condition(gg)
    tg = sigma[np.ix_(t, g)]
    return block - tg @ np.linalg.solve(gg, tg.T)


def conditional_correlation(sigma: np.ndarray, targets: Sequence[int], given: Sequence[int]) -> np.ndarray:
    omega = conditional_covariance(sigma, targets, given)
    diag = np.diag(omega)
    if np.any(diag <= 0):
        raise NumericDegeneracyError("non-positive conditional variance")
    s = np.sqrt(diag)
    return np.clip(omega / np.outer(s, s), -1.0, 1.0)


def _validate_pair(i: int, j: int, S: VarSet, d: int) -> None:
    if i == j or i in S or j in S:
        raise InvalidArgumentError(f"i={i}, j={j} and S={S!r} must be disjoint")
    if not (0 <= i < d and 0 <= j < d) or S.mask >> d:
        raise InvalidArgumentError("index out of range")


def regression_coefficients(spec: CovarianceSpec, j: int, S: SetLike) -> np.ndarray:
    """Coefficients of the best linear predictor of ``X_j`` from ``X_S``.

    Entries follow the ascending order of ``S``.
    """
    S = as_varset(S)
    if j in S:
        raise InvalidArgumentError("j must not be in S")
    idx = list(S)
    if not idx:
        return np.zeros(0)
    ss = spec.covariance[np.ix_(idx, idx)]
    _check_condition(ss)
    return np.linalg.solve(ss, spec.covariance[idx, j])


def regression_support(spec: CovarianceSpec, j: int, S: SetLike, tol: float = DEFAULT_TOL) -> VarSet:
    S = as_varset(S)
    beta = regression_coefficients(spec, j, S)
    return VarSet(k for k, b in zip(S, beta) if abs(b) > tol)


def partial_correlation(spec: CovarianceSpec, i: int, j: int, S: SetLike = EMPTY) -> PartialCorrelation:
    S = as_varset(S)
    _validate_pair(i, j, S, spec.d)
    omega = conditional_covariance(spec.covariance, [i, j], list(S))
    if omega[0, 0] <= 0 or omega[1, 1] <= 0:
        raise NumericDegeneracyError("non-positive conditional variance")
    rho = omega[0, 1] / sqrt(omega[0, 0] * omega[1, 1])
    return PartialCorrelation(_clamp(float(rho)), i, j, S, "exact")


def residualize(x: np.ndarray, basis: Optional[np.ndarray]) -> np.ndarray:
    """Residuals of the columns of ``x`` after least squares on ``basis``."""
    if basis is None or basis.shape[1] == 0:
        return x
    coef, *_ = np.linalg.lstsq(basis, x, rcond=None)
    return x - basis @ coef


def residual_correlation(ri: np.ndarray, rj: np.ndarray, scale_i: float, scale_j: float) -> float:
    ni = np.linalg.norm(ri)
    nj = np.linalg.norm(rj)
    if ni <= 1e-12 * max(scale_i, 1e-300) or nj <= 1e-12 * max(scale_j, 1e-300):
        raise NumericDegeneracyError("zero residual variance")
    return _clamp(float(ri @ rj / (ni * nj)))


def sample_partial_correlation(data: SampleMatrix, i: int, j: int, S: SetLike = EMPTY) -> PartialCorrelation:
    """Correlation of the residuals of ``X_i`` and ``X_j`` regressed on ``X_S``."""
    S = as_varset(S)
    _validate_pair(i, j, S, data.d)
    if data.n < len(S) + 3:
        raise InsufficientSamplesError(f"n={data.n} is too small to condition on {len(S)} variables")
    x = data.centered
    basis = x[:, list(S)] if S else None
    r = residualize(x[:, [i, j]], basis)
    rho = residual_correlation(r[:, 0], r[:, 1], np.linalg.norm(x[:, i]), np.linalg.norm(x[:, j]))
    return PartialCorrelation(rho, i, j, S, "sample", data.n)


@dataclass
class SignalStrengths:
    """Smallest nonzero and largest absolute partial correlation over small conditioning sets."""

    alpha: float
    zeta: float
    has_signal: bool
    triples: int
    exhaustive: bool = True
    zero_triples: list = field(default_factory=list, repr=False)


def _triples(d: int, t: int):
    for i, j in combinations(range(d), 2):
        rest = VarSet.full(d).discard(i).discard(j)
        for S in rest.subsets(t):
            yield i, j, S


def count_triples(d: int, t: int) -> int:
    return comb(d, 2) * sum(comb(d - 2, r) for r in range(min(t, d - 2) + 1))


def signal_strengths(spec: CovarianceSpec, t: int, tol: float = DEFAULT_TOL,
                     max_triples: int = 10**7, samples: Optional[int] = None,
                     rng: Optional[np.random.Generator] = None) -> SignalStrengths:
    """Compute ``alpha = min |rho| over nonzero rho`` and ``zeta = max |rho|``.

    Both range over pairs ``i < j`` and conditioning sets with ``|S| <= t``.
    A ``|rho| <= tol`` counts as zero. If there is no nonzero correlation,
    ``alpha`` is ``inf`` and ``has_signal`` is False. When the exhaustive count
    would exceed ``max_triples``, pass ``samples`` to estimate from uniformly
    random triples instead.
    """
    d = spec.d
    if d < 2:
        raise InvalidArgumentError("need at least two variables")
    if t < 0 or t > d - 2:
        raise InvalidArgumentError(f"t must lie in [0, {d - 2}]")
    total = count_triples(d, t)
    if samples is None:
        if total > max_triples:
            raise TooLargeError(f"{total} triples exceed the limit {max_triples}; pass samples= to estimate")
        triples = _triples(d, t)
        exhaustive = True
    else:
        rng = rng or np.random.default_rng(0)
        triples = (_random_triple(d, t, rng) for _ in range(samples))
        exhaustive = False
    alpha, zeta, seen, zeros = inf, 0.0, 0, []
    for i, j, S in triples:
        r = abs(partial_correlation(spec, i, j, S).value)
        seen += 1
        zeta = max(zeta, r)
        if r > tol:
            alpha = min(alpha, r)
        else:
            zeros.append((i, j, S))
    return SignalStrengths(alpha, zeta, alpha < inf, seen, exhaustive, zeros)


def _random_triple(d: int, t: int, rng: np.random.Generator):
    i, j = (int(x) for x in rng.choice(d, size=2, replace=False))
    rest = [k for k in range(d) if k not in (i, j)]
    sizes = [comb(len(rest), r) for r in range(min(t, len(rest)) + 1)]
    size = int(rng.choice(len(sizes), p=np.array(sizes) / sum(sizes)))
    S = VarSet(int(x) for x in rng.choice(rest, size=size, replace=False)) if size else EMPTY
    return min(i, j), max(i, j), S
