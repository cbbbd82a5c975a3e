import numpy as np
import pytest

from egwgd import AARSET, Dataset, EgwgParams, FitConfig, fit, loglik, sample

# The published five-parameter MLE for the Aarset data, used as a fixed
# evaluation point throughout the tests.
PRINTED_MLE = EgwgParams(a=0.000085, b=0.128, c=0.401, d=0.69901, theta=0.246)

# fixed truth for the simulation-recovery benchmark
RECOVERY_TRUTH = EgwgParams(a=0.001, b=0.5, c=0.3, d=0.8, theta=0.5)
RECOVERY_N = 2000
RECOVERY_SEED = 11


@pytest.fixture(scope="session")
def aarset_data():
    return Dataset(AARSET, label="aarset")


@pytest.fixture(scope="session")
def printed_mle():
    return PRINTED_MLE


@pytest.fixture(scope="session")
def aarset_egwgd_fit(aarset_data):
    """The full-family Aarset fit, shared across estimation/gof/acceptance."""
    import time
    t0 = time.time()
    res = fit(aarset_data, FitConfig(n_restarts=8))
    res.wall_seconds = time.time() - t0
    return res


@pytest.fixture(scope="session")
def recovery_case():
    """Simulated sample from the fixed truth plus its fit and both logliks."""
    draws = sample(RECOVERY_TRUTH, RECOVERY_N, RECOVERY_SEED)
    data = Dataset(draws, label="recovery")
    res = fit(data, FitConfig(n_restarts=8))
    return {
        "truth": RECOVERY_TRUTH,
        "data": data,
        "fit": res,
        "loglik_truth": loglik(RECOVERY_TRUTH, data),
    }


def random_params(rng):
    """Parameter draws covering the regimes the properties must hold in."""
    return EgwgParams(
        a=float(np.exp(rng.uniform(np.log(1e-5), np.log(1.0)))),
        b=float(rng.uniform(0.0, 3.0)),
        c=float(np.exp(rng.uniform(np.log(0.01), np.log(2.0)))),
        d=float(np.exp(rng.uniform(np.log(0.2), np.log(3.0)))),
        theta=float(np.exp(rng.uniform(np.log(0.1), np.log(5.0)))),
    )
