"""
유효성 검사 보고서 스키마
"""

from typing import List

from pydantic import BaseModel, Field


class RegimeCheck(BaseModel):
    """
    부등식 하나의 검사 결과

    margin 은 (큰 쪽)/(작은 쪽) 비율 그대로이며,
    satisfied 는 margin 이 strictness 배율을 넘는지로 판정합니다.
    """

    name: str = Field(..., title="검사 이름", examples=["compton"])
    satisfied: bool = Field(..., title="충족 여부")
    margin: float = Field(..., ge=0, title="(큰 쪽)/(작은 쪽) 비율")
    required: bool = Field(default=True, title="overall_valid 에 포함 여부")
    detail: str = Field(default="", title="설명")


class RegimeReport(BaseModel):
    """반고전 처리와 배경 결어긋남 회피 조건 보고서"""

    checks: List[RegimeCheck] = Field(default_factory=list)
    strictness: float = Field(..., gt=1, title="판정 배율")
    overall_valid: bool = Field(..., title="필수 검사 전체 충족 여부")

    def check(self, name: str) -> RegimeCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)
