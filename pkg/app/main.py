"""
FastAPI 메인 애플리케이션

CLI 와 같은 서비스 계층을 HTTP 로 노출하는 엔트리포인트
"""

from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException
from loguru import logger

from app.config import configure_logging, get_settings
from app.exceptions import (
    DecoherenceError,
    decoherence_exception_handler,
    http_exception_handler,
    value_error_handler,
)
from app.routers.decoherence_router import router as decoherence_router
from app.routers.simulation_router import router as simulation_router
from app.routers.sweep_router import router as sweep_router
from physconst import __version__


@asynccontextmanager
async def lifespan(app: FastAPI):
    """애플리케이션 라이프사이클 관리"""
    settings = get_settings()
    configure_logging(settings.log_level)
    logger.info(f"서비스 시작: {settings}")
    yield
    logger.info("서비스 종료")


# FastAPI 앱 인스턴스 생성
app = FastAPI(
    title="제동복사 결어긋남 API",
    description="중첩 상태의 전자기/중력 제동복사 결어긋남 계산",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
    exception_handlers={
        DecoherenceError: decoherence_exception_handler,
        ValueError: value_error_handler,
        HTTPException: http_exception_handler,
    },
)

# 라우터들을 앱에 등록
app.include_router(decoherence_router, prefix="/api/v1")
app.include_router(sweep_router, prefix="/api/v1")
app.include_router(simulation_router, prefix="/api/v1")


@app.get("/")
def read_root():
    """서비스 기본 정보 반환"""
    settings = get_settings()
    return {
        "service": "brems-decoherence",
        "version": __version__,
        "status": "running",
        "constants": settings.constants.value,
        "docs_url": "/docs",
        "api_version": "v1",
        "endpoints": {
            "gamma": "/api/v1/decoherence/gamma",
            "validate": "/api/v1/decoherence/validate",
            "density_matrix": "/api/v1/decoherence/density-matrix",
            "planck_mass": "/api/v1/decoherence/planck-mass",
            "sweep": "/api/v1/sweep",
            "scenarios": "/api/v1/sweep/scenarios",
            "simulation": "/api/v1/simulation/run",
            "fit": "/api/v1/inference/fit",
        },
    }
