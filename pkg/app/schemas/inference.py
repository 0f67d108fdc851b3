"""
추론 스키마

가시도 데이터셋과 멱법칙 적합 결과 모델 정의
"""

import enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from .common import Channel


class DatasetMode(str, enum.Enum):
    ANALYTIC = "analytic"
    MONTE_CARLO = "monte_carlo"


class FitMode(str, enum.Enum):
    """고정할 지수 선택"""

    FREE = "free"
    FIXED_MASS = "fixed_mass"  # â = 2
    FIXED_BETA = "fixed_beta"  # b̂ = 4
    FIXED_BOTH = "fixed_both"


class DatasetRow(BaseModel):
    """(m, β) 한 점에서 측정한 가시도. gamma 는 측정값"""

    m_kg: float = Field(..., gt=0)
    beta: float = Field(..., gt=0, lt=1)
    gamma: float = Field(..., gt=0, le=1, title="측정 가시도")
    gamma_se: float = Field(default=0.0, ge=0, title="표준오차")
    n_events: int = Field(default=0, ge=0)


class DroppedRow(BaseModel):
    """측정 창 밖이라 제외된 격자점"""

    m_kg: float
    beta: float
    ln_gamma: Optional[float] = None
    reason: str


class VisibilityDataset(BaseModel):
    rows: List[DatasetRow] = Field(default_factory=list)
    dropped: List[DroppedRow] = Field(default_factory=list)
    mode: DatasetMode = DatasetMode.ANALYTIC
    seed: Optional[int] = None
    channel: Channel = Channel.GRAVITATIONAL

    def fit_rows(self) -> List[DatasetRow]:
        """Γ = 1 인 행(신호 없음)은 로그-로그 적합에서 제외"""
        return [row for row in self.rows if row.gamma < 1.0]


class PowerLawFit(BaseModel):
    """ln(−ln Γ) = log_prefactor + â ln m + b̂ ln β 적합 결과"""

    exponent_mass: float = Field(..., title="â")
    exponent_beta: float = Field(..., title="b̂")
    log_prefactor: float = Field(..., title="ln(C″G/(ħc)) 추정")
    hbar_estimate: float = Field(..., gt=0, title="ħ 추정 (J·s)")
    covariance: List[List[float]] = Field(..., title="(prefactor, â, b̂) 공분산")
    residual_rms: float = Field(..., ge=0)
    n_points: int = Field(..., ge=1)
    mode: FitMode
    weighted: bool
    refined: bool = False
    c_double_prime: float = Field(..., gt=0)
    degeneracy_note: str = Field(
        default="C″ 와 ħ 는 곱으로만 식별되므로 C″ 를 알려진 값으로 고정했습니다"
    )
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_covariance(self) -> "PowerLawFit":
        if len(self.covariance) != 3 or any(len(r) != 3 for r in self.covariance):
            raise ValueError("공분산은 3×3 이어야 합니다")
        return self
