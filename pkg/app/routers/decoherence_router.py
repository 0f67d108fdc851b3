"""
결어긋남 Router

단일 점 평가, 유효성 검사, 밀도행렬, 플랑크 질량 API
"""

from fastapi import APIRouter, Depends, Response

from app.config import AppSettings, get_settings
from app.dependencies import get_decoherence_service, get_regime_validator
from app.schemas.decoherence import GammaReport, PlanckMassReport, TwoPathDensityMatrix
from app.schemas.regime import RegimeReport
from app.schemas.run_config import DensityMatrixRequest, GammaRequest, ValidateRequest
from app.services.decoherence_service import DecoherenceService, density_matrix
from app.services.regime_service import RegimeValidator

from . import json_response

# 라우터 인스턴스 생성
router = APIRouter(prefix="/decoherence", tags=["Decoherence"])


@router.post("/gamma", response_model=GammaReport)
def evaluate_gamma(
    request: GammaRequest,
    service: DecoherenceService = Depends(get_decoherence_service),
    settings: AppSettings = Depends(get_settings),
) -> Response:
    """
    전자기/중력 채널 결어긋남 평가

    - **experiment**: 실험 설정 (β 생략 시 L/(cτ))
    """
    experiment = request.experiment.with_default_threshold(settings.relativistic_threshold)
    return json_response(service.gamma_report(experiment))


@router.post("/validate", response_model=RegimeReport)
def validate_regime(
    request: ValidateRequest,
    validator: RegimeValidator = Depends(get_regime_validator),
    service: DecoherenceService = Depends(get_decoherence_service),
    settings: AppSettings = Depends(get_settings),
) -> Response:
    """반고전 처리 유효성 검사 (strictness 를 주면 설정값 대신 사용)"""
    if request.strictness is not None:
        validator = RegimeValidator(validator.consts, request.strictness)
    experiment = request.experiment.with_default_threshold(settings.relativistic_threshold)
    service.warn_if_beta_inconsistent(experiment)
    return json_response(validator.validate(experiment))


@router.post("/density-matrix", response_model=TwoPathDensityMatrix)
def build_density_matrix(request: DensityMatrixRequest) -> Response:
    return json_response(density_matrix(complex(request.gamma_real, request.gamma_imag)))


@router.get("/planck-mass", response_model=PlanckMassReport)
def get_planck_mass(service: DecoherenceService = Depends(get_decoherence_service)) -> Response:
    return json_response(service.planck_mass_report())
