import math

import pytest

import momdens


def test_log_gamma_and_kernel():
    assert momdens.log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert momdens.delta_density(2.0, 1.0, 1, 0.5) == pytest.approx(
        0.7357588823428846, rel=1e-14
    )
    mean, var = momdens.delta_stats(10.0, 2.0)
    assert mean == pytest.approx(2.0)
    assert var == pytest.approx(0.4)


def test_scenarios():
    assert set(momdens.scenario_names()) == {"lb-exp2", "excess-gamma22"}
    s = momdens.Scenario("excess-gamma22")
    assert s.total_weight == 4.0
    assert s.f(2.0) == pytest.approx(0.5 * math.exp(-1.0))
    assert s.survival(2.0) + s.cdf(2.0) == pytest.approx(1.0)
    with pytest.raises(momdens.ConfigError):
        momdens.Scenario("nope")


def test_star_estimator_on_a_sample():
    y = momdens.sample_scenario("lb-exp2", 300, 42)
    assert len(y) == 300
    assert y == momdens.sample_scenario("lb-exp2", 300, 42)
    alpha = momdens.alpha_global(300, 0.4)
    assert alpha == 10.0
    est = momdens.moment_density_star(y, 0.5, alpha, 1.0)
    assert 0.1 < est < 0.5
    basic = momdens.moment_density_basic(y, 0.5, alpha, 1.0)
    assert basic == pytest.approx(est * (alpha - 1) / alpha, rel=1e-13)
    w_hat = momdens.estimate_total_weight(y)
    assert 0.3 < w_hat < 0.7
    assert momdens.jones_density(y, w_hat, 300 ** -0.2, 1.0) > 0.0


def test_survival_and_plugins():
    y = momdens.sample_scenario("excess-gamma22", 400, 42)
    s_hat = momdens.survival_estimate(y, 4.0, 11.0, 2.0)
    assert 0.4 < s_hat < 1.1
    p = momdens.excess_plugins(y, 11.0, 2.0)
    assert set(p) == {"f_hat", "hazard_hat", "w_hat", "W_hat"}
    assert momdens.jones_survival(y, 4.0, 0.3, 2.0) > 0.0


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        momdens.moment_density_star([1.0, -1.0], 0.5, 5.0, 1.0)
    with pytest.raises(momdens.DomainError):
        momdens.direct_density([1.0], 1.5, 1.0)
    with pytest.raises(momdens.ConfigError):
        momdens.alpha_global(100, 3.0)


def test_theory_values():
    r = momdens.density_asymptotics("lb-exp2", 1.0, 10.0, 300)
    assert r["bias"] == pytest.approx(0.054134113294645076758, rel=1e-13)
    assert r["variance"] == pytest.approx(0.00040242490431467759969, rel=1e-12)
    assert momdens.density_mse_optimal("lb-exp2", 1.0, 300)["constant"] == pytest.approx(
        0.3312276007640379633, rel=1e-13
    )
    assert momdens.alpha_local_density("lb-exp2", 1.0, 300, 0.4) == pytest.approx(
        22.125998684377723014, rel=1e-13
    )
    assert momdens.exact_density_bias("lb-exp2", 1.0, 64.0) == pytest.approx(
        0.008414408395047016723, rel=1e-9
    )


def test_monte_carlo():
    rows = momdens.run_mc("lb-exp2", "star", [100, 400], [1.0], replicates=50, seed=3)
    assert [r["n"] for r in rows] == [100, 400]
    for r in rows:
        assert r["mse"] == pytest.approx(r["bias"] ** 2 + r["variance"], rel=1e-12)
    again = momdens.run_mc("lb-exp2", "star", [100, 400], [1.0], replicates=50, seed=3)
    assert rows == again
    slope, intercept, r2 = momdens.rate_fit([1, 10, 100], [1, 0.1, 0.01])
    assert slope == pytest.approx(-1.0)
    assert r2 == pytest.approx(1.0)
    with pytest.raises(momdens.ConfigError):
        momdens.run_mc("excess-gamma22", "star", [100], [1.0], replicates=10)


def test_normality_experiment():
    r = momdens.normality_experiment("lb-exp2", "star", 500, 1.0, replicates=400, seed=5)
    assert r["replicate_count"] == 400
    assert r["ks_distance"] < 1.36 / math.sqrt(400) + 0.02
    assert momdens.ks_distance_normal([0.0] * 200) >= 0.5
