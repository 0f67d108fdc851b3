"""
차원 태그 기반 단위 변환

완전한 단위 대수가 아니라, 8개의 차원 태그와 곱셈 인자 테이블만으로
같은 차원 안에서의 변환과 덧셈/뺄셈을 검사합니다.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

from .constants import PhysicalConstants, get_constants


class Dimension(str, enum.Enum):
    """물리량 차원 태그"""

    MASS = "mass"
    LENGTH = "length"
    TIME = "time"
    SPEED = "speed"
    DIMENSIONLESS = "dimensionless"
    TEMPERATURE = "temperature"
    CHARGE = "charge"
    ACTION = "action"


class DimensionError(ValueError):
    """차원 태그가 맞지 않는 연산/변환"""


# 차원별 SI 기준 단위
SI_UNITS: Dict[Dimension, str] = {
    Dimension.MASS: "kg",
    Dimension.LENGTH: "m",
    Dimension.TIME: "s",
    Dimension.SPEED: "m/s",
    Dimension.DIMENSIONLESS: "1",
    Dimension.TEMPERATURE: "K",
    Dimension.CHARGE: "C",
    Dimension.ACTION: "J*s",
}


@lru_cache(maxsize=None)
def unit_table(consts: PhysicalConstants) -> Dict[str, Tuple[Dimension, float]]:
    """
    단위 이름 → (차원, SI 환산 인자) 테이블

    amu, GeV/c², e, eV·s 처럼 상수에 의존하는 단위는 전달된 상수 집합으로 계산합니다.
    """
    ev = consts.elementary_charge  # 1 eV 를 J 로
    return {
        # 질량
        "kg": (Dimension.MASS, 1.0),
        "g": (Dimension.MASS, 1e-3),
        "mg": (Dimension.MASS, 1e-6),
        "ug": (Dimension.MASS, 1e-9),
        "amu": (Dimension.MASS, consts.amu),
        "GeV/c2": (Dimension.MASS, 1e9 * ev / consts.c**2),
        # 길이
        "m": (Dimension.LENGTH, 1.0),
        "mm": (Dimension.LENGTH, 1e-3),
        "um": (Dimension.LENGTH, 1e-6),
        "nm": (Dimension.LENGTH, 1e-9),
        "pm": (Dimension.LENGTH, 1e-12),
        # 시간
        "s": (Dimension.TIME, 1.0),
        "ms": (Dimension.TIME, 1e-3),
        "us": (Dimension.TIME, 1e-6),
        "ns": (Dimension.TIME, 1e-9),
        # 속도
        "m/s": (Dimension.SPEED, 1.0),
        "km/s": (Dimension.SPEED, 1e3),
        "c": (Dimension.SPEED, consts.c),
        # 기타
        "1": (Dimension.DIMENSIONLESS, 1.0),
        "K": (Dimension.TEMPERATURE, 1.0),
        "mK": (Dimension.TEMPERATURE, 1e-3),
        "C": (Dimension.CHARGE, 1.0),
        "e": (Dimension.CHARGE, consts.elementary_charge),
        "J*s": (Dimension.ACTION, 1.0),
        "eV*s": (Dimension.ACTION, ev),
    }


def _lookup(unit: str, consts: PhysicalConstants) -> Tuple[Dimension, float]:
    table = unit_table(consts)
    if unit not in table:
        raise DimensionError(f"알 수 없는 단위: {unit}")
    return table[unit]


@dataclass(frozen=True)
class Quantity:
    """
    차원 태그가 붙은 스칼라 물리량

    같은 차원끼리만 더하고 뺄 수 있으며, 곱셈/나눗셈은 스칼라나
    무차원량과만 허용합니다 (복합 단위는 지원하지 않음).

    Example:
        >>> Quantity(21.0, Dimension.MASS, "ug").to("amu").value
    """

    value: float
    dimension: Dimension
    unit: str = ""
    consts: Optional[PhysicalConstants] = None

    def __post_init__(self):
        if self.consts is None:
            object.__setattr__(self, "consts", get_constants())
        if not self.unit:
            object.__setattr__(self, "unit", SI_UNITS[self.dimension])
        dimension, _ = _lookup(self.unit, self.consts)
        if dimension is not self.dimension:
            raise DimensionError(
                f"단위 {self.unit} 는 {dimension.value} 차원입니다 "
                f"(요청: {self.dimension.value})"
            )

    @property
    def si_value(self) -> float:
        return self.value * _lookup(self.unit, self.consts)[1]

    def to(self, unit: str) -> "Quantity":
        return convert(self, unit)

    def _coerce(self, other: "Quantity") -> float:
        if not isinstance(other, Quantity):
            raise DimensionError("물리량끼리만 더하거나 뺄 수 있습니다")
        if other.dimension is not self.dimension:
            raise DimensionError(
                f"차원 불일치: {self.dimension.value} vs {other.dimension.value}"
            )
        return convert(other, self.unit).value

    def __add__(self, other: "Quantity") -> "Quantity":
        return Quantity(self.value + self._coerce(other), self.dimension, self.unit, self.consts)

    def __sub__(self, other: "Quantity") -> "Quantity":
        return Quantity(self.value - self._coerce(other), self.dimension, self.unit, self.consts)

    def __neg__(self) -> "Quantity":
        return Quantity(-self.value, self.dimension, self.unit, self.consts)

    def __mul__(self, other: Union[float, "Quantity"]) -> "Quantity":
        if isinstance(other, Quantity):
            if other.dimension is Dimension.DIMENSIONLESS:
                return Quantity(self.value * other.si_value, self.dimension, self.unit, self.consts)
            if self.dimension is Dimension.DIMENSIONLESS:
                return other * self
            raise DimensionError("복합 단위 곱셈은 지원하지 않습니다")
        return Quantity(self.value * float(other), self.dimension, self.unit, self.consts)

    __rmul__ = __mul__

    def __truediv__(self, other: Union[float, "Quantity"]) -> "Quantity":
        if isinstance(other, Quantity):
            if other.dimension is self.dimension:
                return Quantity(self.si_value / other.si_value, Dimension.DIMENSIONLESS)
            if other.dimension is Dimension.DIMENSIONLESS:
                return Quantity(self.value / other.si_value, self.dimension, self.unit, self.consts)
            raise DimensionError("복합 단위 나눗셈은 지원하지 않습니다")
        return Quantity(self.value / float(other), self.dimension, self.unit, self.consts)

    def __str__(self) -> str:
        return f"{self.value:.6g} {self.unit}"


def convert(x: Quantity, target_unit: str) -> Quantity:
    """
    같은 차원 안에서의 곱셈 변환

    Raises:
        DimensionError: 대상 단위의 차원이 다른 경우
    """
    target_dimension, target_factor = _lookup(target_unit, x.consts)
    if target_dimension is not x.dimension:
        raise DimensionError(
            f"{x.unit} ({x.dimension.value}) 를 {target_unit} "
            f"({target_dimension.value}) 로 변환할 수 없습니다"
        )
    if target_unit == x.unit:
        return x
    source_factor = _lookup(x.unit, x.consts)[1]
    return Quantity(x.value * (source_factor / target_factor), x.dimension, target_unit, x.consts)
