"""
스윕 Router
"""

from typing import List

from fastapi import APIRouter, Depends, Response

from app.config import AppSettings, get_settings
from app.dependencies import get_sweep_service
from app.schemas.decoherence import ExperimentConfig
from app.schemas.run_config import DEFAULT_TEMPLATE, SweepRequest
from app.schemas.sweep import ScenarioRow, SweepTable
from app.services.sweep_service import SweepService

from . import json_response

router = APIRouter(prefix="/sweep", tags=["Sweep"])


@router.post("", response_model=SweepTable)
def run_sweep(
    request: SweepRequest,
    service: SweepService = Depends(get_sweep_service),
    settings: AppSettings = Depends(get_settings),
) -> Response:
    """
    (m, β) 격자 스윕과 문턱 질량 경계

    - **spec**: 격자와 채널, 문턱값
    - **template**: 질량/β 외 실험 설정 (생략 시 기본 틀)
    """
    template = request.template or ExperimentConfig.model_validate(DEFAULT_TEMPLATE)
    template = template.with_default_threshold(settings.relativistic_threshold)
    return json_response(service.run_sweep(request.spec, template))


@router.get("/scenarios", response_model=List[ScenarioRow])
def list_scenarios(service: SweepService = Depends(get_sweep_service)) -> Response:
    """기준 질량 시나리오 판정표"""
    return json_response(service.run_scenarios())
