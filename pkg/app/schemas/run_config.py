"""
실행 설정 스키마

`--config` 로 읽는 JSON 파일의 구조와 HTTP 요청 본문 모델.
CLI 플래그는 같은 키를 덮어쓰고, 최종 설정은 모든 JSON 출력의 `config` 에 포함됩니다.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.exceptions import ConfigError, ErrorCodes
from physconst import ConstantSet

from .common import Channel, SweepChannel
from .decoherence import ExperimentConfig
from .inference import DatasetMode, FitMode, VisibilityDataset
from .simulation import ScreenGeometry
from .sweep import SweepSpec

# 스윕/적합처럼 질량과 β 를 격자로 바꾸는 명령의 기본 실험 틀
DEFAULT_TEMPLATE: Dict[str, Any] = {
    "mass": 1e-9,
    "separation": 1e-6,
    "duration": 1.0,
    "wavepacket_spread": 1e-6,
}


class SimulationOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(default=1_000_000, ge=1, title="이벤트 수")
    seed: int = Field(default=0, ge=0)
    workers: int = Field(default=1, ge=1, le=256)
    channel: Channel = Channel.GRAVITATIONAL
    grid_points: Optional[int] = Field(default=None, ge=64)
    trough_window: Optional[float] = Field(default=None, gt=0, title="골 창 ε (m)")
    n_bar: Optional[float] = Field(default=None, ge=0, title="N̄ 직접 지정")
    allow_invalid: bool = Field(default=False, title="유효성 검사 실패 설정도 시뮬레이션")


class SweepOptions(BaseModel):
    """로그 간격 격자 또는 명시 격자"""

    model_config = ConfigDict(extra="forbid")

    m_min: float = Field(default=1e-12, gt=0, title="최소 질량 (kg)")
    m_max: float = Field(default=1e-6, gt=0, title="최대 질량 (kg)")
    m_points: int = Field(default=64, ge=1)
    beta_min: float = Field(default=1e-3, gt=0, lt=1)
    beta_max: float = Field(default=0.9, gt=0, lt=1)
    beta_points: int = Field(default=64, ge=1)
    m_grid: Optional[List[float]] = None
    beta_grid: Optional[List[float]] = None
    channel: SweepChannel = SweepChannel.GRAVITATIONAL
    target_exponents: List[float] = Field(default_factory=lambda: [0.1, 1.0])

    def to_spec(self) -> SweepSpec:
        m_grid = self.m_grid or np.geomspace(self.m_min, self.m_max, self.m_points).tolist()
        beta_grid = self.beta_grid or np.geomspace(self.beta_min, self.beta_max, self.beta_points).tolist()
        return SweepSpec(
            m_grid=m_grid,
            beta_grid=beta_grid,
            channel=self.channel,
            target_exponents=self.target_exponents,
        )


class FitOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    masses: List[float] = Field(
        default_factory=lambda: [1e-9, 3e-9, 1e-8, 3e-8], title="데이터셋 질량 격자 (kg)"
    )
    betas: List[float] = Field(
        default_factory=lambda: [0.3, 0.5, 0.7, 0.9], title="데이터셋 β 격자"
    )
    dataset_mode: DatasetMode = DatasetMode.ANALYTIC
    n_events: int = Field(default=1_000_000, ge=100)
    seed: int = Field(default=0, ge=0)
    fit_mode: FitMode = FitMode.FREE
    refine: bool = False
    c_double_prime: float = Field(default=1.0, gt=0)
    channel: Channel = Channel.GRAVITATIONAL
    charge: Optional[float] = Field(default=None, title="데이터셋 순전하 q (C), 지정 시 실험 틀 대체")

    def points(self) -> List[Tuple[float, float]]:
        return [(m, beta) for m in self.masses for beta in self.betas]


class ValidationOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    strictness: Optional[float] = Field(default=None, gt=1)


def deep_merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """
    중첩 dict 병합

    None 값은 어느 깊이에서든 덮어쓰지 않고, None 만 담긴 섹션은 만들지 않습니다.
    """
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict):
            current = merged.get(key)
            section = deep_merge(current if isinstance(current, dict) else {}, value)
            if section or isinstance(current, dict):
                merged[key] = section
        else:
            merged[key] = value
    return merged


class RunConfig(BaseModel):
    """
    `--config` JSON 파일 구조

    Example:
        {"constants": "codata2018",
         "experiment": {"mass": 1e-8, "separation": 1e-6, "duration": 1e-3,
                        "wavepacket_spread": 1e-7, "beta": 0.5},
         "simulation": {"n": 1000000, "seed": 7}}
    """

    model_config = ConfigDict(extra="forbid")

    constants: Optional[ConstantSet] = None
    experiment: Optional[ExperimentConfig] = None
    geometry: Optional[ScreenGeometry] = None
    simulation: SimulationOptions = Field(default_factory=SimulationOptions)
    sweep: SweepOptions = Field(default_factory=SweepOptions)
    fit: FitOptions = Field(default_factory=FitOptions)
    validation: ValidationOptions = Field(default_factory=ValidationOptions)

    @classmethod
    def from_file(cls, path: Optional[str]) -> "RunConfig":
        """
        JSON 설정 파일 로드 (경로가 없으면 기본값)

        Raises:
            ConfigError: 파일이 없거나 JSON/스키마 오류
        """
        if not path:
            return cls()
        file = Path(path)
        if not file.is_file():
            raise ConfigError(f"설정 파일이 없습니다: {path}", ErrorCodes.CONFIG_FILE_NOT_FOUND)
        try:
            return cls.model_validate(json.loads(file.read_text(encoding="utf-8")))
        except json.JSONDecodeError as e:
            raise ConfigError(f"설정 파일 JSON 오류: {e}", ErrorCodes.CONFIG_PARSE_FAILED)
        except ValidationError as e:
            raise ConfigError(f"설정 파일 스키마 오류: {e}", ErrorCodes.CONFIG_INVALID)

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """CLI 플래그 덮어쓰기 적용 (검증 포함)"""
        base = self.model_dump(mode="python", exclude_unset=True)
        return RunConfig.model_validate(deep_merge(base, overrides))

    def template(self, beta_rel: Optional[float] = None) -> ExperimentConfig:
        """격자 명령용 실험 틀 (experiment 가 없으면 기본값, beta_rel 은 미지정 시 기본 β_rel)"""
        template = self.experiment or ExperimentConfig.model_validate(DEFAULT_TEMPLATE)
        return template.with_default_threshold(beta_rel) if beta_rel is not None else template

    def with_default_threshold(self, beta_rel: float) -> "RunConfig":
        if self.experiment is None:
            return self
        return self.model_copy(update={"experiment": self.experiment.with_default_threshold(beta_rel)})


# =============================================================================
# HTTP 요청 본문
# =============================================================================


class GammaRequest(BaseModel):
    experiment: ExperimentConfig


class ValidateRequest(BaseModel):
    experiment: ExperimentConfig
    strictness: Optional[float] = Field(default=None, gt=1)


class DensityMatrixRequest(BaseModel):
    gamma_real: float = Field(..., title="Re Γ")
    gamma_imag: float = Field(default=0.0, title="Im Γ")


class SweepRequest(BaseModel):
    spec: SweepSpec
    template: Optional[ExperimentConfig] = None


class SimulationRequest(BaseModel):
    experiment: ExperimentConfig
    geometry: ScreenGeometry
    simulation: SimulationOptions = Field(default_factory=SimulationOptions)


class FitRequest(BaseModel):
    dataset: VisibilityDataset
    fit_mode: FitMode = FitMode.FREE
    refine: bool = False
    c_double_prime: float = Field(default=1.0, gt=0)
