import math

import numpy as np
import pytest

from oracles import ALL_DISTS
from theatre_occupancy import RowSpec, exact_table, simulate, summarize
from theatre_occupancy import rng
from theatre_occupancy.montecarlo import simulate_trials


@pytest.mark.parametrize("semantics", ["model", "physical"])
def test_reproducible(semantics):
    spec = RowSpec(30, 2, "zipf-left", 0.4)
    a = simulate_trials(spec, 2000, 17, semantics)
    b = simulate_trials(spec, 2000, 17, semantics)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, simulate_trials(spec, 2000, 18, semantics))


@pytest.mark.parametrize("semantics", ["model", "physical"])
def test_trials_independent_of_batching(semantics):
    spec = RowSpec(25, 1, "geo-right", 0.6)
    whole = simulate_trials(spec, 1000, 3, semantics)
    first = simulate_trials(spec, 500, 3, semantics)
    second = simulate_trials(spec, 500, 3, semantics, first_trial=500)
    np.testing.assert_array_equal(whole, np.concatenate([first, second]))
    np.testing.assert_array_equal(simulate_trials(spec, 1, 3, semantics, first_trial=700), whole[700:701])


@pytest.mark.parametrize("semantics", ["model", "physical"])
@pytest.mark.parametrize("dist", ALL_DISTS)
@pytest.mark.parametrize("entrances", [1, 2])
def test_counts_in_range(semantics, dist, entrances):
    spec = RowSpec(15, entrances, dist, 0.3)
    counts = simulate_trials(spec, 500, 1, semantics)
    assert counts.dtype.kind == "i"
    assert counts.min() >= 1 and counts.max() <= 15


@pytest.mark.parametrize("semantics", ["model", "physical"])
def test_degenerate_rows(semantics):
    for dist in ALL_DISTS:
        assert (simulate_trials(RowSpec(1, 2, dist, 0.2), 50, 0, semantics) == 1).all()
        assert (simulate_trials(RowSpec(9, 1, dist, 1.0), 50, 0, semantics) == 9).all()
    # a selfish first arrival in seat 1 ends a one-entrance row at once
    counts = simulate_trials(RowSpec(9, 1, "geo-left", 0.0), 4000, 0, semantics)
    assert (counts == 1).mean() == pytest.approx(0.5, abs=0.04)


@pytest.mark.parametrize("dist", ALL_DISTS)
@pytest.mark.parametrize("p", [0.0, 0.5, 0.9])
def test_model_mean_matches_exact(dist, p):
    spec = RowSpec(40, 1, dist, p)
    s = simulate(spec, 20_000, 99)
    assert abs(s.mean - exact_table(spec).value) <= 4 * s.std_error


@pytest.mark.parametrize("entrances", [1, 2])
@pytest.mark.parametrize("p", [0.0, 0.5, 0.9])
def test_physical_uniform_matches_exact(entrances, p):
    spec = RowSpec(40, entrances, "uniform", p)
    s = simulate(spec, 20_000, 5, "physical")
    assert abs(s.mean - exact_table(spec).value) <= 4 * s.std_error


def test_summarize_examples():
    s = summarize([1, 2, 3, 4])
    assert s.mean == 2.5
    assert s.variance == pytest.approx(5 / 3)
    assert s.std_error == pytest.approx(math.sqrt(5 / 12))
    assert s.ci95[0] == pytest.approx(2.5 - 1.96 * math.sqrt(5 / 12))
    assert summarize([7, 7, 7]).variance == 0.0
    with pytest.raises(ValueError):
        summarize([1.0])


def test_summarize_matches_two_pass():
    x = 1e6 + np.random.default_rng(0).random(1_000_000)
    s = summarize(x)
    mean = math.fsum(x) / x.size
    var = math.fsum((x - mean) ** 2) / (x.size - 1)
    assert s.mean == pytest.approx(mean, rel=1e-14)
    assert s.variance == pytest.approx(var, rel=1e-9)


def test_single_trial_summary():
    s = simulate(RowSpec(5), 1, 0)
    assert s.trials == 1 and math.isnan(s.variance) and math.isnan(s.std_error)


def test_summary_to_dict():
    d = simulate(RowSpec(5, 2, "uniform", 0.5), 100, 4, "physical").to_dict()
    assert d["semantics"] == "physical" and d["seed"] == 4 and d["trials"] == 100
    assert d["spec"] == {"seats": 5, "entrances": 2, "distribution": "uniform", "courtesy": 0.5}


def test_rng_uniforms():
    keys = rng.trial_keys(0, np.arange(100_000))
    u = rng.uniforms(keys, 0)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.005
    # neighbouring draws and neighbouring trials look independent
    v = rng.uniforms(keys, 1)
    assert abs(np.corrcoef(u, v)[0, 1]) < 0.02
    assert abs(np.corrcoef(u[:-1], u[1:])[0, 1]) < 0.02
    assert rng.derive_seed(0, 0) != rng.derive_seed(0, 1) != rng.derive_seed(1, 0)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        simulate(RowSpec(5), 0, 0)
    with pytest.raises(ValueError):
        simulate(RowSpec(5), 10, 0, "quantum")
