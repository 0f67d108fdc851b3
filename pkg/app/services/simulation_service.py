"""
검출 이벤트 몬테카를로 시뮬레이터

각 시행에서 방출 양자 수 k ~ Poisson(N̄) 를 뽑고,
k = 0 이면 간섭 무늬 분포, k ≥ 1 이면 균일 분포에서 스크린 위치를 샘플링합니다.

시행은 고정 크기 청크로 나누고 청크마다 (seed, 청크 번호) 에서 파생한
독립 RNG 스트림을 쓰므로 결과는 작업자 수와 무관합니다.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from app.exceptions import (
    ConfigError,
    DecoherenceError,
    ErrorCodes,
    InsufficientDataError,
    NumericalError,
)
from app.schemas.common import Channel, Estimate
from app.schemas.decoherence import ExperimentConfig
from app.schemas.simulation import (
    EventBatch,
    ScreenGeometry,
    SimulationSummary,
    TroughCorrelation,
)
from physconst import PhysicalConstants, de_broglie_wavelength, get_constants

from .decoherence_service import DecoherenceService, gamma_from_ln
from .regime_service import DEFAULT_STRICTNESS, RegimeValidator

DEFAULT_GRID_POINTS = 4096
DEFAULT_CHUNK_SIZE = 65536

# 이 이상은 정규 근사 (numpy poisson 의 λ 상한 부근)
POISSON_DIRECT_LIMIT = 1e15
COUNT_CEILING = 2**62

MIN_EVENTS_FOR_ESTIMATE = 100

# 기본 골 창 반폭 ε = d/200
DEFAULT_TROUGH_FRACTION = 1.0 / 200.0

# 무늬 한 주기당 최소 격자 점 수
MIN_POINTS_PER_FRINGE = 16


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    """(seed, 청크 번호) 로 결정되는 독립 RNG 스트림"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk_index,)))


def chunk_sizes(n: int, chunk_size: int) -> List[int]:
    full, rest = divmod(n, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


class FringeSampler:
    """
    간섭 무늬 밀도 ∝ 1 + cos(kx + φ) 의 역누적분포 샘플러

    [−W, W] 위 균일 격자에서 정확한 누적분포를 계산한 뒤 선형 보간으로 뒤집습니다.
    """

    def __init__(self, geometry: ScreenGeometry, fringe_spacing: float, grid_points: int):
        half = geometry.screen_halfwidth
        k = 2.0 * math.pi / fringe_spacing
        phi = geometry.fringe_phase

        self.grid = np.linspace(-half, half, grid_points)
        cdf = (self.grid + half) + (np.sin(k * self.grid + phi) - math.sin(phi - k * half)) / k
        cdf[0] = 0.0
        self.cdf = cdf / cdf[-1]

    def sample(self, u: np.ndarray) -> np.ndarray:
        return np.interp(u, self.cdf, self.grid)


class EventSimulator:
    """이벤트 시뮬레이션 / 가시도 추정 / 골 상관 분석"""

    def __init__(
        self,
        consts: Optional[PhysicalConstants] = None,
        grid_points: int = DEFAULT_GRID_POINTS,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
        strictness: float = DEFAULT_STRICTNESS,
    ):
        self.consts = consts if consts else get_constants()
        self.decoherence = DecoherenceService(self.consts)
        self.validator = RegimeValidator(self.consts, strictness)
        self.grid_points = grid_points
        self.chunk_size = chunk_size

    # =========================================================================
    # 기하
    # =========================================================================

    def fringe_spacing(self, config: ExperimentConfig, geometry: ScreenGeometry) -> float:
        """
        무늬 간격 d = λ_dB·D/L (λ_dB = ħ/(mv))

        Raises:
            ConfigError: d 가 유한한 양수가 아닌 경우 (m = 0 또는 β = 0)
        """
        if geometry.fringe_spacing is not None:
            return geometry.fringe_spacing
        speed = config.speed(self.consts)
        lambda_db = de_broglie_wavelength(config.mass, speed, self.consts)
        spacing = lambda_db * geometry.screen_distance / geometry.slit_separation
        if not math.isfinite(spacing) or spacing <= 0:
            raise ConfigError(
                f"무늬 간격을 계산할 수 없습니다 (d = {spacing}). fringe_spacing 을 지정하세요",
                ErrorCodes.FRINGE_SPACING_INVALID,
            )
        return spacing

    def check_regime(self, config: ExperimentConfig, allow_invalid: bool = False) -> None:
        report = self.validator.validate(config)
        if report.overall_valid:
            return
        failed = ", ".join(c.name for c in report.checks if c.required and not c.satisfied)
        if allow_invalid:
            logger.warning(f"유효성 검사 실패 ({failed}) 설정으로 시뮬레이션을 강행합니다")
            return
        raise ConfigError(
            f"유효성 검사를 통과하지 못한 설정입니다: {failed} (강행하려면 allow_invalid)",
            ErrorCodes.REGIME_INVALID,
        )

    # =========================================================================
    # 샘플링
    # =========================================================================

    def _draw_counts(self, rng: np.random.Generator, n_bar: float, size: int) -> np.ndarray:
        if n_bar <= POISSON_DIRECT_LIMIT:
            return rng.poisson(n_bar, size).astype(np.int64)
        counts = rng.normal(n_bar, math.sqrt(n_bar), size)
        return np.clip(counts, 1, COUNT_CEILING).astype(np.int64)

    def _simulate_chunk(
        self,
        seed: int,
        index: int,
        size: int,
        n_bar: float,
        sampler: FringeSampler,
        half: float,
    ) -> Tuple[np.ndarray, np.ndarray]:
        rng = chunk_rng(seed, index)
        k = self._draw_counts(rng, n_bar, size)
        u = rng.random(size)
        x = np.where(k == 0, sampler.sample(u), -half + 2.0 * half * u)
        return x, k

    def sample_events(
        self,
        config: ExperimentConfig,
        geometry: ScreenGeometry,
        n: int,
        seed: int,
        channel: Channel = Channel.GRAVITATIONAL,
        workers: int = 1,
        n_bar: Optional[float] = None,
    ) -> EventBatch:
        """
        n 개의 검출 이벤트 생성

        Args:
            n_bar: 기대 방출 양자 수 직접 지정 (생략 시 해석적 −ln Γ)

        Raises:
            DecoherenceError: n < 1
            NumericalError: N̄ 가 유한하지 않은 경우
        """
        if n < 1:
            raise DecoherenceError(
                f"이벤트 수는 1 이상이어야 합니다: {n}", ErrorCodes.EVENT_COUNT_INVALID
            )
        if n_bar is None:
            n_bar = self.decoherence.decoherence(config, channel).expected_quanta_per_path
        if not math.isfinite(n_bar):
            raise NumericalError(
                f"기대 양자 수가 유한하지 않습니다: {n_bar}",
                ErrorCodes.EXPECTED_QUANTA_NOT_FINITE,
            )
        if n_bar < 0:
            raise DecoherenceError(
                f"기대 양자 수는 음수일 수 없습니다: {n_bar}",
                ErrorCodes.NEGATIVE_EXPECTED_QUANTA,
            )
        if n_bar > POISSON_DIRECT_LIMIT:
            logger.warning(f"N̄ = {n_bar:.3e}: 정규 근사로 방출 수를 샘플링합니다")

        spacing = self.fringe_spacing(config, geometry)
        half = geometry.screen_halfwidth
        fringes = 2.0 * half / spacing
        if self.grid_points < MIN_POINTS_PER_FRINGE * fringes:
            logger.warning(
                f"스크린에 무늬 {fringes:.3g} 개, 격자 {self.grid_points} 점: "
                f"역누적분포 해상도가 부족할 수 있습니다"
            )

        sampler = FringeSampler(geometry, spacing, self.grid_points)
        sizes = chunk_sizes(n, self.chunk_size)

        def run(item: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
            index, size = item
            return self._simulate_chunk(seed, index, size, n_bar, sampler, half)

        if workers > 1 and len(sizes) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(run, enumerate(sizes)))
        else:
            parts = [run(item) for item in enumerate(sizes)]

        logger.debug(f"이벤트 {n} 개 생성 (청크 {len(sizes)}, 작업자 {workers}, N̄={n_bar:.3e})")
        return EventBatch(
            x=np.concatenate([p[0] for p in parts]),
            k=np.concatenate([p[1] for p in parts]),
            geometry=geometry,
            fringe_spacing=spacing,
        )

    # =========================================================================
    # 분석
    # =========================================================================

    def estimate_visibility(self, events: EventBatch) -> Estimate:
        """
        적률법 가시도 추정 Γ̂ = (⟨cos(kx+φ)⟩ − c_u) / (c_c − c_u)

        c_u, c_c 는 균일 분포/무늬 분포에서의 cos 기댓값으로,
        스크린이 무늬 주기의 정수배가 아닐 때의 잘림 효과를 보정합니다.
        전체 주기에서는 Γ̂ = 2⟨cos⟩ 와 같습니다. 결과는 잘라내지 않습니다.

        Raises:
            InsufficientDataError: 이벤트가 100 개 미만인 경우
        """
        n = len(events)
        if n < MIN_EVENTS_FOR_ESTIMATE:
            raise InsufficientDataError(
                f"가시도 추정에는 이벤트 {MIN_EVENTS_FOR_ESTIMATE} 개 이상이 필요합니다: {n}",
                ErrorCodes.TOO_FEW_EVENTS,
            )

        half = events.geometry.screen_halfwidth
        phi = events.geometry.fringe_phase
        k = events.wavenumber

        integral_cos = (math.sin(k * half + phi) - math.sin(phi - k * half)) / k
        integral_cos2 = half + (math.sin(2 * (k * half + phi)) - math.sin(2 * (phi - k * half))) / (4 * k)
        c_uniform = integral_cos / (2.0 * half)
        c_coherent = (integral_cos + integral_cos2) / (2.0 * half + integral_cos)
        denom = c_coherent - c_uniform

        cosines = np.cos(events.phase())
        value = (float(np.mean(cosines)) - c_uniform) / denom
        se = float(np.std(cosines, ddof=1)) / math.sqrt(n) / abs(denom)
        return Estimate(value=value, standard_error=se)

    def coherent_fraction(self, events: EventBatch) -> Estimate:
        """k = 0 인 이벤트 비율 (기댓값 exp(−N̄))"""
        n = len(events)
        p = float(np.mean(events.coherent))
        return Estimate(value=p, standard_error=math.sqrt(p * (1.0 - p) / n))

    def trough_correlation(self, events: EventBatch, epsilon: float) -> TroughCorrelation:
        """
        골 근처 창 |x − x_trough| < ε 안에서 P(k ≥ 1) 계산

        완전 결맞음(Γ = 1)이면 0, 부분 결어긋남이면 1 에 가깝습니다.

        Raises:
            DecoherenceError: ε 가 (0, d/2) 밖인 경우
        """
        if not 0 < epsilon < events.fringe_spacing / 2:
            raise DecoherenceError(
                f"골 창 ε 는 (0, d/2) 안에 있어야 합니다: ε={epsilon}, d={events.fringe_spacing}",
                ErrorCodes.TROUGH_WINDOW_INVALID,
            )
        # 골: kx + φ ≡ π (mod 2π)
        offset = np.mod(events.phase() - math.pi, 2.0 * math.pi)
        distance = np.minimum(offset, 2.0 * math.pi - offset) / events.wavenumber
        in_window = distance < epsilon

        window_events = int(np.count_nonzero(in_window))
        emission_events = int(np.count_nonzero(in_window & ~events.coherent))
        if window_events == 0:
            logger.warning(f"골 창 (ε = {epsilon:.3e} m) 안에 이벤트가 없습니다")
            return TroughCorrelation(
                epsilon=epsilon,
                window_events=0,
                emission_events=0,
                no_events_in_window=True,
            )
        return TroughCorrelation(
            epsilon=epsilon,
            window_events=window_events,
            emission_events=emission_events,
            conditional_probability=emission_events / window_events,
        )

    def run(
        self,
        config: ExperimentConfig,
        geometry: ScreenGeometry,
        n: int,
        seed: int,
        channel: Channel = Channel.GRAVITATIONAL,
        workers: int = 1,
        n_bar: Optional[float] = None,
        trough_window: Optional[float] = None,
        allow_invalid: bool = False,
    ) -> Tuple[EventBatch, SimulationSummary]:
        """
        샘플링과 분석을 한 번에 수행

        유효성 검사를 통과하지 못한 설정은 allow_invalid 를 주지 않으면 거부합니다.

        Raises:
            ConfigError: 유효성 검사 미통과 (allow_invalid=False)
        """
        self.check_regime(config, allow_invalid)
        if n_bar is None:
            n_bar = self.decoherence.decoherence(config, channel).expected_quanta_per_path
        events = self.sample_events(config, geometry, n, seed, channel, workers, n_bar)
        epsilon = trough_window if trough_window else events.fringe_spacing * DEFAULT_TROUGH_FRACTION

        summary = SimulationSummary(
            n_events=n,
            channel=channel,
            n_bar=n_bar,
            gamma_expected=gamma_from_ln(-n_bar),
            visibility_estimate=self.estimate_visibility(events),
            coherent_fraction=self.coherent_fraction(events),
            trough_emission_conditional=self.trough_correlation(events, epsilon),
            fringe_spacing=events.fringe_spacing,
            seed=seed,
        )
        logger.info(
            f"시뮬레이션 완료: Γ={summary.gamma_expected:.4g}, "
            f"Γ̂={summary.visibility_estimate.value:.4g}±{summary.visibility_estimate.standard_error:.2g}"
        )
        return events, summary
