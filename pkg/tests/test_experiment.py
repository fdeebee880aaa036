import math

import numpy as np
import pytest

from cilattice import CovarianceSpec, InvalidArgumentError
from cilattice.experiment import ExperimentConfig, run_recovery_experiment
from cilattice.graphtools import markov_chain_gaussian


@pytest.fixture(scope="module")
def chain():
    return markov_chain_gaussian(6, 0.8)


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(tau=0.0), dict(trials=0), dict(n=2), dict(t=-1), dict(node=6)])
    def test_invalid(self, chain, kw):
        base = dict(spec=chain, node=2, t=1, n=100)
        base.update(kw)
        with pytest.raises(InvalidArgumentError):
            ExperimentConfig(**base)

    def test_order_limit(self, chain):
        ExperimentConfig(chain, 0, 6, 4)
        with pytest.raises(InvalidArgumentError):
            ExperimentConfig(chain, 0, 7, 4)


class TestRun:
    def test_report_fields(self, chain):
        rep = run_recovery_experiment(ExperimentConfig(chain, 2, 1, 2000, trials=4, seed=3))
        assert rep.tau == pytest.approx(rep.alpha / 2)
        assert rep.recovery_rate == sum(r.exact_match for r in rep.per_trial) / 4
        assert rep.n_alpha2 == pytest.approx(2000 * rep.alpha ** 2)
        assert rep.log_term == pytest.approx(math.log(2000) + math.log(6))
        d = rep.as_dict()
        assert d["trials"] == 4 and len(d["perTrial"]) == 4

    def test_deterministic(self, chain):
        cfg = ExperimentConfig(chain, 2, 1, 300, trials=1, seed=9)
        assert run_recovery_experiment(cfg).as_dict() == run_recovery_experiment(cfg).as_dict()

    def test_large_n_recovers(self, chain):
        rep = run_recovery_experiment(ExperimentConfig(chain, 2, 2, 5000, trials=5))
        assert rep.recovery_rate == 1.0

    def test_no_signal_needs_tau(self):
        spec = CovarianceSpec.from_covariance(np.eye(4))
        with pytest.raises(InvalidArgumentError):
            run_recovery_experiment(ExperimentConfig(spec, 0, 1, 100, trials=1))
        rep = run_recovery_experiment(ExperimentConfig(spec, 0, 1, 2000, tau=0.1, trials=2))
        assert rep.population_lattices == 1

    def test_trial_failures_are_recorded(self, chain):
        # tiny n with many conditioning variables runs out of degrees of freedom
        rep = run_recovery_experiment(ExperimentConfig(chain, 2, 4, 5, trials=3))
        assert all(not r.exact_match for r in rep.per_trial)
        assert any(r.inconsistency for r in rep.per_trial)
