"""Recovery of the sparse lattice decomposition from Gaussian samples.

Each trial draws ``n`` samples, runs the sparse decomposition with the
thresholded sample partial-correlation oracle and checks for an exact match
with the population decomposition computed by the exact Gaussian oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import CILatticeError, InvalidArgumentError
from .lattice import sparse_decomposition
from .oracles import GaussianOracle, SampleGaussianOracle
from .stats import DEFAULT_TOL, CovarianceSpec, signal_strengths


@dataclass
class ExperimentConfig:
    spec: CovarianceSpec
    node: int
    t: int
    n: int
    tau: Optional[float] = None
    trials: int = 20
    seed: int = 0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.tau is not None and self.tau <= 0:
            raise InvalidArgumentError("tau must be positive")
        if self.trials < 1:
            raise InvalidArgumentError("trials must be at least 1")
        if self.n < 3:
            raise InvalidArgumentError("n must be at least 3")
        if self.t < 0 or self.t > 4 + self.n / 2:
            raise InvalidArgumentError("t must satisfy 0 <= t <= 4 + n/2")
        if not 0 <= self.node < self.spec.d:
            raise InvalidArgumentError(f"node {self.node} outside ground set")


@dataclass
class TrialResult:
    exact_match: bool
    lattices: int
    inconsistency: Optional[str] = None


@dataclass
class ExperimentReport:
    recovery_rate: float
    per_trial: list[TrialResult]
    alpha: float
    zeta: float
    tau: float
    n: int
    t: int
    d: int
    population_lattices: int
    population: list = field(default_factory=list, repr=False)

    @property
    def n_alpha2(self) -> float:
        return self.n * self.alpha ** 2

    @property
    def log_term(self) -> float:
        return math.log(self.n) + self.t * math.log(self.d)

    def as_dict(self) -> dict:
        return {
            "recoveryRate": self.recovery_rate,
            "trials": len(self.per_trial),
            "alpha": self.alpha,
            "zeta": self.zeta,
            "tau": self.tau,
            "n": self.n,
            "t": self.t,
            "d": self.d,
            "nAlpha2": self.n_alpha2,
            "logTerm": self.log_term,
            "populationLattices": self.population_lattices,
            "perTrial": [
                {"exactMatch": r.exact_match, "lattices": r.lattices, "inconsistency": r.inconsistency}
                for r in self.per_trial
            ],
        }


def run_recovery_experiment(config: ExperimentConfig) -> ExperimentReport:
    spec = config.spec
    population = sparse_decomposition(GaussianOracle(spec, config.tol), config.node, config.t)
    target = population.lattice_set()
    strengths = signal_strengths(spec, min(config.t, spec.d - 2), tol=config.tol)
    tau = config.tau
    if tau is None:
        if not strengths.has_signal:
            raise InvalidArgumentError("no nonzero partial correlation; supply tau explicitly")
        tau = strengths.alpha / 2
    results = []
    for k in range(config.trials):
        rng = np.random.default_rng(config.seed + k)
        data = spec.sample(config.n, rng)
        try:
            found = sparse_decomposition(SampleGaussianOracle(data, tau), config.node, config.t)
        except CILatticeError as exc:
            results.append(TrialResult(False, 0, str(exc)))
            continue
        results.append(TrialResult(found.lattice_set() == target, found.k))
    rate = sum(r.exact_match for r in results) / len(results)
    return ExperimentReport(rate, results, strengths.alpha, strengths.zeta, tau, config.n, config.t,
                            spec.d, population.k, population.lattices)
