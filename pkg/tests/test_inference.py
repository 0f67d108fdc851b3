"""
멱법칙 추론 테스트
"""

import math

import numpy as np
import pytest

from app.exceptions import InsufficientDataError
from app.schemas.common import Channel
from app.schemas.decoherence import ExperimentConfig
from app.schemas.inference import (
    DatasetMode,
    DatasetRow,
    FitMode,
    VisibilityDataset,
)
from app.schemas.run_config import FitOptions
from app.services.inference_service import row_seed, weighted_least_squares
from physconst import em_coupling

TEMPLATE = ExperimentConfig(mass=1e-9, separation=1e-6, duration=1.0, wavepacket_spread=1e-6)


@pytest.fixture
def analytic_dataset(inference):
    return inference.generate_dataset(FitOptions().points(), TEMPLATE, DatasetMode.ANALYTIC)


def test_analytic_dataset_keeps_measurable_points(analytic_dataset):
    assert len(analytic_dataset.rows) == 16
    assert analytic_dataset.dropped == []
    assert all(0 < row.gamma < 1 and row.gamma_se == 0 for row in analytic_dataset.rows)


def test_points_outside_window_are_dropped(inference, log_messages):
    points = [(1e-12, 0.1), (1e-6, 0.9), (1e-8, 0.5)]
    dataset = inference.generate_dataset(points, TEMPLATE, DatasetMode.ANALYTIC)
    assert [(r.m_kg, r.beta) for r in dataset.rows] == [(1e-8, 0.5)]
    assert len(dataset.dropped) == 2
    assert "신호 없음" in dataset.dropped[0].reason
    assert "완전 결어긋남" in dataset.dropped[1].reason
    assert sum("격자점 제외" in m for m in log_messages) == 2


def test_free_fit_recovers_exponents_and_hbar(inference, analytic_dataset, consts):
    fit = inference.fit_power_law(analytic_dataset)
    assert fit.exponent_mass == pytest.approx(2.0, abs=1e-6)
    assert fit.exponent_beta == pytest.approx(4.0, abs=1e-6)
    assert fit.hbar_estimate == pytest.approx(consts.hbar, rel=1e-6)
    assert fit.log_prefactor == pytest.approx(math.log(consts.G / (consts.hbar * consts.c)), rel=1e-9)
    assert fit.weighted is False
    assert fit.n_points == 16
    assert fit.residual_rms < 1e-9
    assert "C″" in fit.degeneracy_note


def test_fit_uses_known_c_double_prime(inference, consts):
    """C″ = 2 로 만든 데이터에서 같은 C″ 를 주면 ħ 복원"""
    template = TEMPLATE.model_copy(update={"model_constants": TEMPLATE.model_constants.model_copy(update={"c_double_prime": 2.0})})
    dataset = inference.generate_dataset(FitOptions().points(), template)
    assert inference.fit_power_law(dataset, c_double_prime=2.0).hbar_estimate == pytest.approx(consts.hbar, rel=1e-6)
    # C″ 를 잘못 가정하면 ħ 가 같은 배율로 어긋남
    assert inference.fit_power_law(dataset, c_double_prime=1.0).hbar_estimate == pytest.approx(consts.hbar / 2, rel=1e-6)


@pytest.mark.parametrize(
    "mode,fixed",
    [(FitMode.FIXED_MASS, [1]), (FitMode.FIXED_BETA, [2]), (FitMode.FIXED_BOTH, [1, 2])],
)
def test_fixed_exponent_modes(inference, analytic_dataset, consts, mode, fixed):
    fit = inference.fit_power_law(analytic_dataset, mode=mode)
    assert fit.mode is mode
    assert fit.exponent_mass == pytest.approx(2.0, abs=1e-6)
    assert fit.exponent_beta == pytest.approx(4.0, abs=1e-6)
    assert fit.hbar_estimate == pytest.approx(consts.hbar, rel=1e-6)
    covariance = np.array(fit.covariance)
    for index in fixed:
        assert np.all(covariance[index, :] == 0)
        assert np.all(covariance[:, index] == 0)


def test_refined_fit_agrees_with_linear_fit(inference, analytic_dataset, consts):
    fit = inference.fit_power_law(analytic_dataset, refine=True)
    assert fit.refined is True
    assert fit.exponent_mass == pytest.approx(2.0, abs=1e-5)
    assert fit.exponent_beta == pytest.approx(4.0, abs=1e-5)
    assert fit.hbar_estimate == pytest.approx(consts.hbar, rel=1e-5)


def test_single_mass_is_rank_deficient(inference):
    dataset = inference.generate_dataset([(1e-8, 0.3), (1e-8, 0.5), (1e-8, 0.9)], TEMPLATE)
    with pytest.raises(InsufficientDataError):
        inference.fit_power_law(dataset)
    # 질량 지수를 고정하면 적합 가능
    fit = inference.fit_power_law(dataset, mode=FitMode.FIXED_MASS)
    assert fit.exponent_beta == pytest.approx(4.0, abs=1e-6)


def test_classical_limit_has_nothing_to_fit(inference):
    """결어긋남이 없는 데이터(Γ = 1)에서는 적합이 거부됨"""
    dataset = VisibilityDataset(
        rows=[DatasetRow(m_kg=m, beta=b, gamma=1.0) for m in (1e-9, 1e-8) for b in (0.3, 0.6)]
    )
    assert dataset.fit_rows() == []
    with pytest.raises(InsufficientDataError):
        inference.fit_power_law(dataset)


def test_classical_limit_grid_is_fully_dropped(inference):
    """관측 가능한 질량보다 훨씬 가벼운 격자는 전부 측정 창 밖"""
    points = [(m, b) for m in (1e-20, 1e-18) for b in (1e-3, 1e-2)]
    dataset = inference.generate_dataset(points, TEMPLATE)
    assert dataset.rows == []
    assert len(dataset.dropped) == 4


def test_classical_prediction_is_rejected_by_decohered_data(inference, analytic_dataset):
    """고전 결합 예측 Γ ≡ 1 은 Γ < 1 데이터에 대해 로그 잔차가 무한대"""
    observed = np.array([math.log(-math.log(row.gamma)) for row in analytic_dataset.fit_rows()])
    with np.errstate(divide="ignore"):
        classical = np.log(-np.log(np.ones_like(observed)))
    assert np.all(np.isinf(observed - classical))
    # 같은 데이터에 멱법칙은 유한 잔차로 맞음
    assert math.isfinite(inference.fit_power_law(analytic_dataset).residual_rms)


def test_mass_rescaling_shifts_only_log_prefactor(inference, analytic_dataset):
    """모든 질량을 s 배 하면 log_prefactor 는 −â ln s 만큼 이동, 지수는 불변"""
    scale = 7.5
    rescaled = analytic_dataset.model_copy(
        update={"rows": [row.model_copy(update={"m_kg": row.m_kg * scale}) for row in analytic_dataset.rows]}
    )
    base = inference.fit_power_law(analytic_dataset)
    moved = inference.fit_power_law(rescaled)
    assert moved.exponent_mass == pytest.approx(base.exponent_mass, abs=1e-8)
    assert moved.exponent_beta == pytest.approx(base.exponent_beta, abs=1e-8)
    assert moved.log_prefactor == pytest.approx(base.log_prefactor - base.exponent_mass * math.log(scale), abs=1e-7)


def test_em_dataset_has_no_mass_dependence(inference, consts):
    """전자기 채널 데이터: â ≈ 0, b̂ ≈ 2"""
    template = TEMPLATE.model_copy(update={"net_charge": consts.elementary_charge})
    dataset = inference.generate_dataset(FitOptions().points(), template, channel=Channel.EM)
    assert dataset.channel is Channel.EM
    assert len(dataset.rows) == 16
    fit = inference.fit_power_law(dataset)
    assert fit.exponent_mass == pytest.approx(0.0, abs=1e-6)
    assert fit.exponent_beta == pytest.approx(2.0, abs=1e-6)
    alpha_e = em_coupling(consts.elementary_charge, consts)
    assert fit.log_prefactor == pytest.approx(math.log(2 * alpha_e / math.pi), rel=1e-9)


def test_equal_weights_reduce_to_unweighted_fit(rng):
    design = np.column_stack([np.ones(20), rng.normal(size=20), rng.normal(size=20)])
    y = design @ np.array([1.0, 2.0, -3.0]) + rng.normal(scale=0.1, size=20)
    unweighted, _ = weighted_least_squares(design, y)
    weighted, _ = weighted_least_squares(design, y, np.full(20, 7.0))
    np.testing.assert_allclose(weighted, unweighted, rtol=1e-10)


def test_weighted_covariance_is_symmetric_psd(rng):
    design = np.column_stack([np.ones(30), rng.normal(size=30)])
    y = design @ np.array([0.5, 1.5]) + rng.normal(scale=0.2, size=30)
    _, covariance = weighted_least_squares(design, y, rng.uniform(1, 10, size=30))
    np.testing.assert_allclose(covariance, covariance.T)
    assert np.all(np.linalg.eigvalsh(covariance) >= 0)


def test_row_seeds_are_distinct_and_reproducible():
    seeds = [row_seed(7, i) for i in range(50)]
    assert len(set(seeds)) == 50
    assert seeds == [row_seed(7, i) for i in range(50)]


# =============================================================================
# 몬테카를로 데이터셋
# =============================================================================

MC_POINTS = [(m, b) for m in (8e-9, 1.5e-8, 3e-8) for b in (0.6, 0.75, 0.9)]


@pytest.fixture
def monte_carlo_dataset(inference):
    return inference.generate_dataset(MC_POINTS, TEMPLATE, DatasetMode.MONTE_CARLO, n_events=200_000, seed=2024)


def test_monte_carlo_dataset_is_reproducible(inference):
    points = MC_POINTS[:2]
    first = inference.generate_dataset(points, TEMPLATE, DatasetMode.MONTE_CARLO, n_events=5_000, seed=1)
    second = inference.generate_dataset(points, TEMPLATE, DatasetMode.MONTE_CARLO, n_events=5_000, seed=1)
    assert first.model_dump_json() == second.model_dump_json()


def test_monte_carlo_rows_carry_standard_errors(monte_carlo_dataset):
    assert monte_carlo_dataset.mode is DatasetMode.MONTE_CARLO
    assert len(monte_carlo_dataset.rows) == len(MC_POINTS)
    assert all(row.gamma_se > 0 and row.n_events == 200_000 for row in monte_carlo_dataset.rows)


def test_monte_carlo_fit_with_fixed_exponents_recovers_hbar(inference, monte_carlo_dataset, consts):
    fit = inference.fit_power_law(monte_carlo_dataset, mode=FitMode.FIXED_BOTH)
    assert fit.weighted is True
    assert fit.hbar_estimate == pytest.approx(consts.hbar, rel=0.05)


def test_monte_carlo_free_fit_is_consistent_with_true_exponents(inference, monte_carlo_dataset):
    fit = inference.fit_power_law(monte_carlo_dataset)
    sigma_a = math.sqrt(fit.covariance[1][1])
    sigma_b = math.sqrt(fit.covariance[2][2])
    assert abs(fit.exponent_mass - 2.0) < 4 * sigma_a
    assert abs(fit.exponent_beta - 4.0) < 4 * sigma_b
    assert fit.provenance["dataset_mode"] == "monte_carlo"
    assert fit.provenance["seed"] == 2024
