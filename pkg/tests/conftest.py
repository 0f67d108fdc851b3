"""
공통 테스트 픽스처
"""

import sys

import numpy as np
import pytest
from loguru import logger

from app.config import get_settings
from app.schemas.decoherence import ExperimentConfig
from app.schemas.simulation import ScreenGeometry
from app.services.decoherence_service import DecoherenceService
from app.services.inference_service import InferenceService
from app.services.regime_service import RegimeValidator
from app.services.simulation_service import EventSimulator
from app.services.sweep_service import SweepService
from physconst import get_constants, planck_mass


@pytest.fixture(autouse=True)
def _clear_settings_cache(monkeypatch):
    """환경변수에 따라 설정이 바뀌도록 캐시 초기화"""
    monkeypatch.delenv("BREMS_CONSTANTS", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    # CLI 테스트가 바꾼 싱크를 되돌림 (stderr 는 호출 시점에 조회)
    logger.remove()
    logger.add(lambda message: sys.stderr.write(message), level="DEBUG")


@pytest.fixture
def consts():
    return get_constants("codata2018")


@pytest.fixture
def m_planck(consts):
    return planck_mass(consts)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def decoherence(consts):
    return DecoherenceService(consts)


@pytest.fixture
def validator(consts):
    return RegimeValidator(consts)


@pytest.fixture
def simulator(consts):
    return EventSimulator(consts)


@pytest.fixture
def inference(consts, simulator):
    return InferenceService(consts, simulator)


@pytest.fixture
def sweeper(consts):
    return SweepService(consts)


@pytest.fixture
def experiment():
    """중성 10 ng 물체, L = 1 μm, τ = 1 ms (β ≈ 3.3e-12)"""
    return ExperimentConfig(
        mass=1e-11,
        separation=1e-6,
        duration=1e-3,
        wavepacket_spread=1e-7,
    )


@pytest.fixture
def screen():
    """무늬 간격 1 m 를 직접 지정한 무차원 스크린 (정수 주기)"""
    return ScreenGeometry(
        slit_separation=1.0,
        screen_distance=1.0,
        screen_halfwidth=10.0,
        fringe_spacing=1.0,
    )


@pytest.fixture
def log_messages():
    """loguru 메시지 수집"""
    messages = []
    handler_id = logger.add(lambda message: messages.append(message.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
