"""
의존성 주입 패키지

설정과 물리 상수 집합에서 서비스 인스턴스를 만드는 의존성 함수들.
CLI 도 같은 함수를 직접 호출합니다.
"""

from typing import Optional

from fastapi import Depends

from app.config import AppSettings, get_settings
from app.services.decoherence_service import DecoherenceService
from app.services.inference_service import InferenceService
from app.services.regime_service import RegimeValidator
from app.services.simulation_service import EventSimulator
from app.services.sweep_service import SweepService
from physconst import ConstantSet, PhysicalConstants, get_constants


def resolve_constants(
    settings: AppSettings, requested: Optional[ConstantSet] = None
) -> PhysicalConstants:
    """상수 집합 선택: 명시 요청 > 환경변수(BREMS_CONSTANTS) > codata2018"""
    return get_constants(requested or settings.constants)


def get_physical_constants(settings: AppSettings = Depends(get_settings)) -> PhysicalConstants:
    return resolve_constants(settings)


# Service 의존성들
def get_decoherence_service(
    consts: PhysicalConstants = Depends(get_physical_constants),
) -> DecoherenceService:
    return DecoherenceService(consts)


def get_regime_validator(
    settings: AppSettings = Depends(get_settings),
    consts: PhysicalConstants = Depends(get_physical_constants),
) -> RegimeValidator:
    return RegimeValidator(consts, settings.strictness)


def get_event_simulator(
    settings: AppSettings = Depends(get_settings),
    consts: PhysicalConstants = Depends(get_physical_constants),
) -> EventSimulator:
    return EventSimulator(consts, settings.grid_points, settings.chunk_size, settings.strictness)


def get_inference_service(
    consts: PhysicalConstants = Depends(get_physical_constants),
    simulator: EventSimulator = Depends(get_event_simulator),
) -> InferenceService:
    return InferenceService(consts, simulator)


def get_sweep_service(
    settings: AppSettings = Depends(get_settings),
    consts: PhysicalConstants = Depends(get_physical_constants),
) -> SweepService:
    return SweepService(consts, settings.strictness, settings.workers)
