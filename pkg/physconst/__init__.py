"""
물리 상수 / 단위 모듈

앱 패키지와 독립적으로 사용할 수 있는 상수 테이블과 단위 변환 도구입니다.
주요 기능:
- CODATA 2018 / 자연 단위계 / scipy 번들 상수 프리셋
- 플랑크 질량, 중력/전자기 결합 상수 등 유도 스케일
- 차원 태그 기반의 가벼운 단위 변환

Usage:
    from physconst import PhysicalConstants, planck_mass, convert

    consts = PhysicalConstants.codata2018()
    m_p = planck_mass(consts)
"""

from .constants import (
    FINE_STRUCTURE_CODATA2018,
    ConstantSet,
    PhysicalConstants,
    compton_wavelength,
    de_broglie_wavelength,
    em_coupling,
    get_constants,
    gravitational_coupling,
    planck_mass,
    thermal_wavelength,
)
from .units import Dimension, DimensionError, Quantity, convert, unit_table

__version__ = "0.1.0"

__all__ = [
    "FINE_STRUCTURE_CODATA2018",
    "ConstantSet",
    "PhysicalConstants",
    "compton_wavelength",
    "de_broglie_wavelength",
    "em_coupling",
    "get_constants",
    "gravitational_coupling",
    "planck_mass",
    "thermal_wavelength",
    "Dimension",
    "DimensionError",
    "Quantity",
    "convert",
    "unit_table",
]
