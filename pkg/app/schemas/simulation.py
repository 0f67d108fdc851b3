"""
이벤트 시뮬레이션 스키마

스크린 기하, 검출 이벤트, 시뮬레이션 요약 모델 정의
"""

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .common import Channel, Estimate


class ScreenGeometry(BaseModel):
    """
    원거리장 두 경로 간섭 기하

    fringe_spacing 을 지정하면 d = λ_dB·D/L 대신 그 값을 그대로 씁니다.
    """

    model_config = ConfigDict(frozen=True)

    slit_separation: float = Field(..., gt=0, title="경로 간격 L (m)")
    screen_distance: float = Field(..., gt=0, title="스크린 거리 D (m)")
    screen_halfwidth: float = Field(..., gt=0, title="스크린 반폭 W (m)")
    fringe_phase: float = Field(default=0.0, title="무늬 위상 φ (rad)")
    fringe_spacing: Optional[float] = Field(
        default=None, gt=0, title="무늬 간격 d 직접 지정 (m)"
    )


class DetectionEvent(BaseModel):
    """스크린 검출 이벤트 하나"""

    model_config = ConfigDict(frozen=True)

    x: float = Field(..., title="스크린 위치 (m)")
    emitted_quanta: int = Field(..., ge=0, title="방출 양자 수 k")
    coherent_branch: bool = Field(..., title="k = 0 여부")


@dataclass(frozen=True)
class EventBatch:
    """
    배열로 보관한 이벤트 묶음

    10⁶ 개 이상의 이벤트를 모델 객체로 만들지 않도록 열 단위로 들고 있다가,
    필요할 때만 DetectionEvent 로 순회합니다.
    """

    x: np.ndarray
    k: np.ndarray
    geometry: ScreenGeometry
    fringe_spacing: float

    @property
    def coherent(self) -> np.ndarray:
        return self.k == 0

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.fringe_spacing

    def phase(self) -> np.ndarray:
        return self.wavenumber * self.x + self.geometry.fringe_phase

    def __len__(self) -> int:
        return int(self.x.shape[0])

    def __iter__(self) -> Iterator[DetectionEvent]:
        for x, k in zip(self.x.tolist(), self.k.tolist()):
            yield DetectionEvent(x=x, emitted_quanta=k, coherent_branch=k == 0)


class TroughCorrelation(BaseModel):
    """골 창 안에서의 방출 조건부 확률"""

    epsilon: float = Field(..., gt=0, title="골 창 반폭 ε (m)")
    window_events: int = Field(..., ge=0, title="창 안 이벤트 수")
    emission_events: int = Field(..., ge=0, title="창 안에서 k ≥ 1 인 이벤트 수")
    conditional_probability: Optional[float] = Field(
        default=None, ge=0, le=1, title="P(k ≥ 1 | 창)"
    )
    no_events_in_window: bool = Field(default=False)


class SimulationSummary(BaseModel):
    """시뮬레이션 요약 (작업자 수와 무관하게 결정적)"""

    n_events: int = Field(..., ge=1)
    channel: Channel
    n_bar: float = Field(..., ge=0, title="기대 방출 양자 수 N̄")
    gamma_expected: float = Field(..., ge=0, le=1, title="해석적 Γ = exp(−N̄)")
    visibility_estimate: Estimate
    coherent_fraction: Estimate
    trough_emission_conditional: TroughCorrelation
    fringe_spacing: float = Field(..., gt=0)
    seed: int = Field(..., ge=0)
