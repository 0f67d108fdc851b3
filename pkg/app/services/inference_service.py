"""
멱법칙 추론 서비스

(m, β) 격자에서 가시도 데이터셋을 만들고(해석적 또는 몬테카를로),
ln(−ln Γ) = ln(C″G/(ħc)) + a ln m + b ln β 를 가중 최소제곱으로 적합해
지수 (a, b) 와 ħ 를 추정합니다.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import curve_fit

from app.exceptions import ErrorCodes, InsufficientDataError, NumericalError
from app.schemas.common import Channel
from app.schemas.decoherence import ExperimentConfig
from app.schemas.inference import (
    DatasetMode,
    DatasetRow,
    DroppedRow,
    FitMode,
    PowerLawFit,
    VisibilityDataset,
)
from app.schemas.simulation import ScreenGeometry
from physconst import PhysicalConstants, get_constants

from .decoherence_service import DecoherenceService
from .simulation_service import EventSimulator

# 측정 가능한 ln Γ 범위 (열린 구간)
MEASURABLE_LN_GAMMA = (-30.0, -1e-6)

TRUE_EXPONENT_MASS = 2.0
TRUE_EXPONENT_BETA = 4.0

# 가시도 추정은 무늬 간격에 무관하므로 몬테카를로 행에는 무차원 표준 스크린을 씁니다
CANONICAL_SCREEN = ScreenGeometry(
    slit_separation=1.0,
    screen_distance=1.0,
    screen_halfwidth=10.0,
    fringe_spacing=1.0,
)


def row_seed(seed: int, index: int) -> int:
    """데이터셋 시드에서 행마다 독립 시드 파생"""
    return int(np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(1)[0])


def weighted_least_squares(
    design: np.ndarray, y: np.ndarray, weights: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    가중 최소제곱 해와 공분산

    가중치가 있으면 (XᵀWX)⁻¹ (절대 오차), 없으면 s²(XᵀX)⁻¹ 을 공분산으로 씁니다.

    Raises:
        InsufficientDataError: 설계 행렬이 계수 부족인 경우
    """
    n, p = design.shape
    sqrt_w = np.sqrt(weights) if weights is not None else np.ones(n)
    xw = design * sqrt_w[:, None]
    yw = y * sqrt_w

    if n < p or np.linalg.matrix_rank(xw) < p:
        raise InsufficientDataError(
            f"설계 행렬 계수 부족: 점 {n} 개로 모수 {p} 개를 식별할 수 없습니다 "
            f"(서로 다른 질량/β 가 충분한지 확인하세요)",
            ErrorCodes.DESIGN_RANK_DEFICIENT,
        )

    coef, *_ = np.linalg.lstsq(xw, yw, rcond=None)
    normal_inv = np.linalg.inv(xw.T @ xw)
    if weights is None:
        dof = n - p
        residual = y - design @ coef
        s2 = float(residual @ residual) / dof if dof > 0 else 0.0
        normal_inv = s2 * normal_inv
    covariance = 0.5 * (normal_inv + normal_inv.T)
    return coef, covariance


class InferenceService:
    """데이터셋 생성과 멱법칙 적합"""

    def __init__(
        self,
        consts: Optional[PhysicalConstants] = None,
        simulator: Optional[EventSimulator] = None,
    ):
        self.consts = consts if consts else get_constants()
        self.decoherence = DecoherenceService(self.consts)
        self.simulator = simulator if simulator else EventSimulator(self.consts)

    # =========================================================================
    # 데이터셋
    # =========================================================================

    def generate_dataset(
        self,
        points: Sequence[Tuple[float, float]],
        template: ExperimentConfig,
        mode: DatasetMode = DatasetMode.ANALYTIC,
        n_events: int = 1_000_000,
        seed: int = 0,
        workers: int = 1,
        channel: Channel = Channel.GRAVITATIONAL,
    ) -> VisibilityDataset:
        """
        (m, β) 격자점마다 가시도 측정값 생성 (기본 중력 채널)

        전자기 채널 데이터는 질량 의존성이 없으므로 â ≈ 0, b̂ ≈ 2 로 적합됩니다.

        ln Γ 가 측정 창 (−30, −10⁻⁶) 밖인 점은 사유와 함께 제외됩니다.
        몬테카를로 모드에서는 행마다 독립 시드로 이벤트를 만들어 Γ̂ 와 표준오차를 기록합니다.
        """
        rows: List[DatasetRow] = []
        dropped: List[DroppedRow] = []
        low, high = MEASURABLE_LN_GAMMA

        for index, (mass, beta) in enumerate(points):
            config = template.with_point(mass, beta)
            result = self.decoherence.decoherence(config, channel)
            ln_gamma = result.ln_gamma

            if not low < ln_gamma < high:
                reason = "신호 없음 (ln Γ ≥ −1e-6)" if ln_gamma >= high else "완전 결어긋남 (ln Γ ≤ −30)"
                logger.warning(f"격자점 제외 (m={mass:.3e} kg, β={beta:.3g}): {reason}")
                dropped.append(DroppedRow(m_kg=mass, beta=beta, ln_gamma=ln_gamma, reason=reason))
                continue

            if mode is DatasetMode.ANALYTIC:
                rows.append(DatasetRow(m_kg=mass, beta=beta, gamma=result.gamma))
                continue

            events = self.simulator.sample_events(
                config,
                CANONICAL_SCREEN,
                n_events,
                row_seed(seed, index),
                channel,
                workers,
                n_bar=result.expected_quanta_per_path,
            )
            estimate = self.simulator.estimate_visibility(events)
            if not 0.0 < estimate.value <= 1.0:
                logger.warning(f"격자점 제외 (m={mass:.3e} kg, β={beta:.3g}): 추정 가시도 {estimate.value:.3g}")
                dropped.append(
                    DroppedRow(
                        m_kg=mass,
                        beta=beta,
                        ln_gamma=ln_gamma,
                        reason=f"추정 가시도 {estimate.value:.3g} 가 (0, 1] 밖",
                    )
                )
                continue
            rows.append(
                DatasetRow(
                    m_kg=mass,
                    beta=beta,
                    gamma=estimate.value,
                    gamma_se=estimate.standard_error,
                    n_events=n_events,
                )
            )

        logger.info(f"데이터셋 생성: {mode.value} ({channel.value}), 사용 {len(rows)} 행, 제외 {len(dropped)} 행")
        return VisibilityDataset(rows=rows, dropped=dropped, mode=mode, seed=seed, channel=channel)

    # =========================================================================
    # 적합
    # =========================================================================

    def fit_power_law(
        self,
        data: VisibilityDataset,
        c_double_prime: float = 1.0,
        mode: FitMode = FitMode.FREE,
        refine: bool = False,
    ) -> PowerLawFit:
        """
        ln(−ln Γ) 의 선형 적합

        표준오차는 델타 방법 se_y = se_Γ / (Γ |ln Γ|) 로 변환해 가중치로 씁니다.
        모든 표준오차가 0 이면 비가중 적합입니다. 고정한 지수의 공분산 행/열은 0 입니다.

        Raises:
            InsufficientDataError: 적합 가능한 점이 모자라거나 계수 부족인 경우
            NumericalError: 변환값이 유한하지 않거나 정밀화가 실패한 경우
        """
        rows = data.fit_rows()
        if not rows:
            raise InsufficientDataError(
                "적합할 행이 없습니다 (Γ < 1 인 행 필요)", ErrorCodes.DATASET_TOO_SMALL
            )

        gamma = np.array([r.gamma for r in rows])
        se = np.array([r.gamma_se for r in rows])
        ln_m = np.log([r.m_kg for r in rows])
        ln_beta = np.log([r.beta for r in rows])
        abs_ln_gamma = -np.log(gamma)
        y = np.log(abs_ln_gamma)
        if not np.all(np.isfinite(y)):
            raise NumericalError("ln(−ln Γ) 가 유한하지 않습니다", ErrorCodes.TRANSFORM_NOT_FINITE)

        weighted = bool(np.all(se > 0))
        if not weighted and np.any(se > 0):
            logger.warning("일부 행에만 표준오차가 있어 비가중 적합을 사용합니다")
        weights = (gamma * abs_ln_gamma / se) ** 2 if weighted else None

        fixed_mass = mode in (FitMode.FIXED_MASS, FitMode.FIXED_BOTH)
        fixed_beta = mode in (FitMode.FIXED_BETA, FitMode.FIXED_BOTH)
        target = y.copy()
        columns = [np.ones_like(y)]
        free = [0]
        if fixed_mass:
            target -= TRUE_EXPONENT_MASS * ln_m
        else:
            columns.append(ln_m)
            free.append(1)
        if fixed_beta:
            target -= TRUE_EXPONENT_BETA * ln_beta
        else:
            columns.append(ln_beta)
            free.append(2)
        design = np.column_stack(columns)

        coef, cov_free = weighted_least_squares(design, target, weights)
        refined = False
        if refine:
            coef, cov_free = self._refine(design, target, gamma, se if weighted else None, coef)
            refined = True

        params = np.array([0.0, TRUE_EXPONENT_MASS, TRUE_EXPONENT_BETA])
        params[free] = coef
        covariance = np.zeros((3, 3))
        covariance[np.ix_(free, free)] = cov_free

        residual = target - design @ coef
        log_prefactor, exponent_mass, exponent_beta = (float(v) for v in params)
        hbar = c_double_prime * self.consts.G / (self.consts.c * math.exp(log_prefactor))

        fit = PowerLawFit(
            exponent_mass=exponent_mass,
            exponent_beta=exponent_beta,
            log_prefactor=log_prefactor,
            hbar_estimate=hbar,
            covariance=covariance.tolist(),
            residual_rms=float(np.sqrt(np.mean(residual**2))),
            n_points=len(rows),
            mode=mode,
            weighted=weighted,
            refined=refined,
            c_double_prime=c_double_prime,
            provenance={
                "dataset_mode": data.mode.value,
                "seed": data.seed,
                "rows_used": len(rows),
                "rows_dropped": len(data.dropped),
                "constants": self.consts.name,
            },
        )
        logger.info(f"적합 완료: â={exponent_mass:.4f}, b̂={exponent_beta:.4f}, ħ̂={hbar:.4e}")
        return fit

    def _refine(
        self,
        design: np.ndarray,
        target: np.ndarray,
        gamma: np.ndarray,
        se: Optional[np.ndarray],
        start: np.ndarray,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Γ 공간 비선형 최소제곱 정밀화 (선형 해에서 시작)"""
        # target = y − (고정 지수 기여) 이므로 Γ 모형의 오프셋을 복원
        offset = np.log(-np.log(gamma)) - target

        def model(x: np.ndarray, *p: float) -> np.ndarray:
            return np.exp(-np.exp(x @ np.asarray(p) + offset))

        try:
            coef, cov = curve_fit(
                model,
                design,
                gamma,
                p0=start,
                sigma=se,
                absolute_sigma=se is not None,
            )
        except (RuntimeError, ValueError) as e:
            raise NumericalError(f"비선형 정밀화 실패: {e}", ErrorCodes.REFINEMENT_FAILED)
        if not np.all(np.isfinite(cov)):
            logger.warning("정밀화 공분산이 유한하지 않아 선형 적합 공분산을 유지합니다")
            _, cov = weighted_least_squares(
                design, target, None if se is None else (gamma * np.log(gamma) / se) ** 2
            )
        return coef, cov
