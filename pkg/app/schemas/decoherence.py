"""
결어긋남 계산 스키마

실험 설정, 결어긋남 결과, 두 경로 축약 밀도행렬 모델 정의
"""

import math
from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from physconst import PhysicalConstants

from .common import Channel, Regime

# =============================================================================
# 실험 설정
# =============================================================================


class ModelConstants(BaseModel):
    """
    차수 1 상수 C, C′, C″

    로그 적외선 모델을 켜면 세 상수 모두 C(τ) = max(1, ln(τ/τ_IR)) 로 대체됩니다.
    """

    model_config = ConfigDict(frozen=True)

    c: float = Field(default=1.0, gt=0, title="C (비상대론 전자기)")
    c_prime: float = Field(default=1.0, gt=0, title="C′ (상대론 전자기)")
    c_double_prime: float = Field(default=1.0, gt=0, title="C″ (중력)")
    log_ir_model: bool = Field(default=False, title="로그 적외선 컷오프 모델 사용")
    tau_ir: Optional[float] = Field(default=None, gt=0, title="적외선 컷오프 시간 τ_IR (s)")

    @model_validator(mode="after")
    def _require_tau_ir(self) -> "ModelConstants":
        if self.log_ir_model and self.tau_ir is None:
            raise ValueError("log_ir_model 을 사용하려면 tau_ir 이 필요합니다")
        return self

    def effective(self, duration: float) -> Tuple[float, float, float]:
        """지속시간 τ 에서 실제로 쓰이는 (C, C′, C″)"""
        if not self.log_ir_model:
            return self.c, self.c_prime, self.c_double_prime
        value = max(1.0, math.log(duration / self.tau_ir))
        return value, value, value


class ExperimentConfig(BaseModel):
    """
    중첩 실험 하나의 물리적 기술

    β 를 생략하면 β = L/(cτ) 로 유도하고, 지정하면 그 값이 우선하며
    (L, τ) 는 컷오프와 유효성 검사에만 쓰입니다.
    가속도 a ∼ L/τ² 는 어떤 공식에도 들어가지 않고 보고용으로만 제공됩니다.
    """

    model_config = ConfigDict(frozen=True)

    mass: float = Field(..., ge=0, title="질량 m (kg)", examples=[1e-8])
    net_charge: float = Field(default=0.0, title="순전하 q (C)")
    separation: float = Field(..., gt=0, title="경로 간격 L (m)", examples=[1e-6])
    duration: float = Field(..., gt=0, title="중첩 지속시간 τ (s)", examples=[1e-3])
    beta: Optional[float] = Field(
        default=None, ge=0, lt=1, title="상대 속도 β = v/c (생략 시 L/(cτ))"
    )
    temperature: float = Field(default=0.0, ge=0, title="물체 온도 T (K)")
    wavepacket_spread: float = Field(..., gt=0, title="파속 폭 σ_x (m)")
    model_constants: ModelConstants = Field(default_factory=ModelConstants)
    relativistic_threshold: float = Field(
        default=0.5, gt=0, lt=1, title="상대론 영역 경계 β_rel"
    )
    em_relativistic_form: bool = Field(
        default=False, title="단파장 영역에서 ln Γ_E = −α_E C′ β² 사용"
    )
    constituent_mass: Optional[float] = Field(
        default=None, gt=0, title="콤프턴 파장 기준 질량 (기본: 전자 질량)"
    )

    def derived_beta(self, consts: PhysicalConstants) -> float:
        return self.separation / (consts.c * self.duration)

    def effective_beta(self, consts: PhysicalConstants) -> float:
        """
        실제로 쓰이는 β

        Raises:
            ValueError: β 를 생략했는데 L/(cτ) ≥ 1 인 경우
        """
        if self.beta is not None:
            return self.beta
        derived = self.derived_beta(consts)
        if derived >= 1.0:
            raise ValueError(
                f"L/(cτ) = {derived:.4g} ≥ 1 입니다. β 를 직접 지정하거나 τ 를 늘리세요"
            )
        return derived

    def speed(self, consts: PhysicalConstants) -> float:
        return self.effective_beta(consts) * consts.c

    def acceleration(self) -> float:
        return self.separation / self.duration**2

    def momentum_spread(self, consts: PhysicalConstants) -> float:
        """최소 불확정 관계 σ_p = ħ/(2σ_x)"""
        return consts.hbar / (2.0 * self.wavepacket_spread)

    def with_default_threshold(self, beta_rel: float) -> "ExperimentConfig":
        """β_rel 을 명시하지 않았으면 주어진 기본값(BREMS_RELATIVISTIC_THRESHOLD)을 쓴 사본"""
        if "relativistic_threshold" in self.model_fields_set:
            return self
        return self.model_copy(update={"relativistic_threshold": beta_rel})

    def with_point(self, mass: float, beta: float) -> "ExperimentConfig":
        """질량과 β 만 바꾼 사본 (스윕/데이터셋 생성용)"""
        return self.model_copy(update={"mass": mass, "beta": beta})


# =============================================================================
# 결과
# =============================================================================


class DecoherenceResult(BaseModel):
    """결어긋남 지수와 인자"""

    model_config = ConfigDict(frozen=True)

    channel: Channel = Field(..., title="복사 채널")
    ln_gamma: float = Field(..., le=0, title="ln Γ")
    gamma: float = Field(..., ge=0, le=1, title="결어긋남 인자 Γ")
    regime: Regime = Field(..., title="복사 파장 영역")
    radiation_wavelength: float = Field(..., gt=0, title="복사 파장 λ_rad = L/β (m)")
    expected_quanta_per_path: float = Field(..., ge=0, title="경로당 기대 양자 수 N̄")
    beta: float = Field(..., ge=0, lt=1, title="사용된 β")


class PlanckMassReport(BaseModel):
    """
    플랑크 질량을 여러 단위로 표현

    natural 프리셋(ħ = c = G = 1)에서는 kg 칸이 무차원 값 1 이고 SI 환산 칸은 비웁니다.
    """

    constants: str
    unit_system: str = Field(default="SI", title="kg 칸의 단위계 (SI | natural)")
    kg: float
    ug: Optional[float] = None
    amu: Optional[float] = None
    gev: Optional[float] = None


class GammaReport(BaseModel):
    """단일 점 평가 결과 (`gamma` 명령)"""

    em: DecoherenceResult
    gravitational: DecoherenceResult
    alpha_em: float = Field(..., title="α_E")
    alpha_gravitational: float = Field(..., title="α_G")
    acceleration: float = Field(..., title="a ∼ L/τ² (m/s²)")
    thermal_wavelength: float = Field(..., title="λ_th (m)")
    many_quanta: bool = Field(..., title="m β² ≳ m_P (중력 양자 다수 방출)")
    beta_disagreement: Optional[float] = Field(
        default=None, title="지정 β 와 L/(cτ) 의 비율 (지정 시)"
    )


# =============================================================================
# 축약 밀도행렬
# =============================================================================


# 밀도행렬 성질 검사 허용 오차
DENSITY_ATOL = 1e-12


class TwoPathDensityMatrix(BaseModel):
    """두 경로 부분공간의 축약 밀도행렬 ½[[1, Γ], [Γ*, 1]]"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: Any = Field(..., title="2×2 복소 행렬")

    @field_validator("entries", mode="before")
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=complex)
        if matrix.shape != (2, 2):
            raise ValueError(f"2×2 행렬이어야 합니다: shape={matrix.shape}")
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_state(self) -> "TwoPathDensityMatrix":
        # 에르미트, 대각 ½ (대각합 1), |ρ₀₁| ≤ ½ (양의 준정부호)
        matrix = self.entries
        if not np.allclose(matrix, matrix.conj().T, atol=DENSITY_ATOL, rtol=0):
            raise ValueError("에르미트 행렬이 아닙니다")
        if not np.allclose(np.diag(matrix), 0.5, atol=DENSITY_ATOL, rtol=0):
            raise ValueError(f"대각 성분은 ½ 이어야 합니다: {np.diag(matrix).tolist()}")
        if abs(matrix[0, 1]) > 0.5 + DENSITY_ATOL:
            raise ValueError(f"|ρ₀₁| ≤ ½ 이어야 합니다: {abs(matrix[0, 1])}")
        return self

    @field_serializer("entries")
    def _serialize_entries(self, matrix: np.ndarray) -> List[List[List[float]]]:
        return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]

    @property
    def coherence(self) -> complex:
        return complex(self.entries[0, 1])

    @property
    def visibility(self) -> float:
        """무늬 가시도 = 2|ρ₀₁| = |Γ|"""
        return 2.0 * abs(self.coherence)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, atol=atol, rtol=0))
