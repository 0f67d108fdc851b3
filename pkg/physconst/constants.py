"""
물리 상수 프리셋

CODATA 2018 권장값, 자연 단위계(ħ = c = G = 1), 설치된 scipy 가 번들한 값
세 가지 프리셋을 제공하고, 모든 모듈이 공통으로 쓰는 유도 스케일을 계산합니다.
"""

import enum
import math
from functools import lru_cache

import scipy.constants as sc
from pydantic import BaseModel, ConfigDict, Field


class ConstantSet(str, enum.Enum):
    """상수 프리셋 열거형"""

    CODATA2018 = "codata2018"
    NATURAL = "natural"
    SCIPY = "scipy"


# CODATA 2018 (SI). c, e, k_B 와 ħ 는 2019 SI 재정의 이후 정확값
_CODATA2018 = {
    "hbar": 1.054571817e-34,
    "c": 299792458.0,
    "G": 6.67430e-11,
    "elementary_charge": 1.602176634e-19,
    "vacuum_permittivity": 8.8541878128e-12,
    "boltzmann": 1.380649e-23,
    "amu": 1.66053906660e-27,
    "electron_mass": 9.1093837015e-31,
}

FINE_STRUCTURE_CODATA2018 = 7.2973525693e-3


class PhysicalConstants(BaseModel):
    """
    불변 물리 상수 집합

    Attributes:
        hbar: 환산 플랑크 상수 (J·s)
        c: 광속 (m/s)
        G: 중력 상수 (m³·kg⁻¹·s⁻²)
        elementary_charge: 기본 전하 (C)
        vacuum_permittivity: 진공 유전율 (F/m)
        boltzmann: 볼츠만 상수 (J/K)
        amu: 원자 질량 단위 (kg)
        electron_mass: 전자 질량 (kg), 콤프턴 파장 계산용
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(default=ConstantSet.CODATA2018.value, title="프리셋 이름")
    hbar: float = Field(..., gt=0)
    c: float = Field(..., gt=0)
    G: float = Field(..., gt=0)
    elementary_charge: float = Field(..., gt=0)
    vacuum_permittivity: float = Field(..., gt=0)
    boltzmann: float = Field(..., gt=0)
    amu: float = Field(..., gt=0)
    electron_mass: float = Field(..., gt=0)

    @classmethod
    def codata2018(cls) -> "PhysicalConstants":
        return cls(name=ConstantSet.CODATA2018.value, **_CODATA2018)

    @classmethod
    def natural(cls) -> "PhysicalConstants":
        """
        자연 단위계 프리셋 (ħ = c = G = 1, ε₀ = k_B = 1)

        질량은 플랑크 질량 단위로 표현되고, 기본 전하는 em_coupling(e) 가
        미세구조상수가 되도록 √(4πα) 로 둡니다.
        """
        si = _CODATA2018
        m_p = math.sqrt(si["hbar"] * si["c"] / si["G"])
        return cls(
            name=ConstantSet.NATURAL.value,
            hbar=1.0,
            c=1.0,
            G=1.0,
            elementary_charge=math.sqrt(4.0 * math.pi * FINE_STRUCTURE_CODATA2018),
            vacuum_permittivity=1.0,
            boltzmann=1.0,
            amu=si["amu"] / m_p,
            electron_mass=si["electron_mass"] / m_p,
        )

    @classmethod
    def from_scipy(cls) -> "PhysicalConstants":
        """설치된 scipy.constants 가 번들한 CODATA 값"""
        return cls(
            name=ConstantSet.SCIPY.value,
            hbar=sc.hbar,
            c=sc.c,
            G=sc.G,
            elementary_charge=sc.e,
            vacuum_permittivity=sc.epsilon_0,
            boltzmann=sc.k,
            amu=sc.physical_constants["atomic mass constant"][0],
            electron_mass=sc.m_e,
        )


@lru_cache(maxsize=None)
def get_constants(name: str = ConstantSet.CODATA2018.value) -> PhysicalConstants:
    """
    프리셋 이름으로 상수 집합 조회

    Raises:
        ValueError: 알 수 없는 프리셋 이름
    """
    try:
        preset = ConstantSet(name)
    except ValueError:
        choices = ", ".join(s.value for s in ConstantSet)
        raise ValueError(f"알 수 없는 상수 프리셋: {name} (가능: {choices})")

    if preset is ConstantSet.NATURAL:
        return PhysicalConstants.natural()
    if preset is ConstantSet.SCIPY:
        return PhysicalConstants.from_scipy()
    return PhysicalConstants.codata2018()


def planck_mass(consts: PhysicalConstants) -> float:
    """플랑크 질량 √(ħc/G)"""
    return math.sqrt(consts.hbar * consts.c / consts.G)


def gravitational_coupling(m: float, consts: PhysicalConstants) -> float:
    """
    중력 결합 상수 α_G = Gm²/(ħc) = (m/m_P)²

    Raises:
        ValueError: 음의 질량
    """
    if m < 0:
        raise ValueError(f"질량은 음수일 수 없습니다: {m}")
    return consts.G * m * m / (consts.hbar * consts.c)


def em_coupling(q: float, consts: PhysicalConstants) -> float:
    """전자기 결합 상수 α_E = q²/(4πε₀ħc) (SI 형태)"""
    return q * q / (4.0 * math.pi * consts.vacuum_permittivity * consts.hbar * consts.c)


def compton_wavelength(mass: float, consts: PhysicalConstants) -> float:
    """환산 콤프턴 파장 ħ/(mc)"""
    return consts.hbar / (mass * consts.c)


def de_broglie_wavelength(mass: float, speed: float, consts: PhysicalConstants) -> float:
    """드브로이 파장 ħ/(mv). 운동량이 0이면 무한대"""
    momentum = mass * speed
    if momentum <= 0:
        return math.inf
    return consts.hbar / momentum


def thermal_wavelength(temperature: float, consts: PhysicalConstants) -> float:
    """열적 파장 ħc/(k_B T). T = 0 이면 무한대"""
    if temperature <= 0:
        return math.inf
    return consts.hbar * consts.c / (consts.boltzmann * temperature)
