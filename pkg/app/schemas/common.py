"""
공통 스키마 모델

여러 모듈에서 공통으로 사용되는 열거형과 Pydantic 모델들
"""

import enum

from pydantic import BaseModel, ConfigDict, Field


class Channel(str, enum.Enum):
    """제동복사 채널"""

    EM = "EM"
    GRAVITATIONAL = "Gravitational"


class SweepChannel(str, enum.Enum):
    """스윕에서 선택 가능한 채널 (둘 다 포함)"""

    EM = "EM"
    GRAVITATIONAL = "Gravitational"
    BOTH = "Both"

    def channels(self) -> list:
        if self is SweepChannel.BOTH:
            return [Channel.EM, Channel.GRAVITATIONAL]
        return [Channel(self.value)]


class Regime(str, enum.Enum):
    """복사 파장 영역"""

    LONG_WAVELENGTH = "LongWavelength"
    SHORT_WAVELENGTH = "ShortWavelength"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


class Estimate(BaseModel):
    """표준오차가 붙은 추정값"""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., title="추정값")
    standard_error: float = Field(..., ge=0, title="표준오차")
