"""
시뮬레이션/추론 Router

이벤트 자체는 반환하지 않고 요약만 돌려줍니다 (이벤트 CSV 는 CLI 에서).
"""

from fastapi import APIRouter, Depends, Response

from app.config import AppSettings, get_settings
from app.dependencies import get_event_simulator, get_inference_service
from app.schemas.inference import PowerLawFit
from app.schemas.run_config import FitRequest, SimulationRequest
from app.schemas.simulation import SimulationSummary
from app.services.inference_service import InferenceService
from app.services.simulation_service import EventSimulator

from . import json_response

router = APIRouter(tags=["Simulation"])


@router.post("/simulation/run", response_model=SimulationSummary)
def run_simulation(
    request: SimulationRequest,
    simulator: EventSimulator = Depends(get_event_simulator),
    settings: AppSettings = Depends(get_settings),
) -> Response:
    options = request.simulation
    if options.grid_points:
        simulator = EventSimulator(
            simulator.consts, options.grid_points, simulator.chunk_size, simulator.validator.strictness
        )
    _, summary = simulator.run(
        request.experiment.with_default_threshold(settings.relativistic_threshold),
        request.geometry,
        options.n,
        options.seed,
        options.channel,
        options.workers,
        options.n_bar,
        options.trough_window,
        options.allow_invalid,
    )
    return json_response(summary)


@router.post("/inference/fit", response_model=PowerLawFit)
def fit_power_law(
    request: FitRequest,
    service: InferenceService = Depends(get_inference_service),
) -> Response:
    """가시도 데이터셋의 멱법칙 적합"""
    fit = service.fit_power_law(
        request.dataset,
        c_double_prime=request.c_double_prime,
        mode=request.fit_mode,
        refine=request.refine,
    )
    return json_response(fit)
