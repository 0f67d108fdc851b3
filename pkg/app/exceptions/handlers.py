"""
예외 핸들러 모듈

FastAPI 애플리케이션과 CLI 에서 발생하는 예외들을 공통 형식으로 변환합니다.
"""

from typing import Any, Dict, Tuple

from fastapi import HTTPException, Request
from fastapi.responses import JSONResponse
from loguru import logger
from pydantic import ValidationError

from physconst import DimensionError

from .base import DecoherenceError
from .error_codes import ErrorCodes


def error_body(message: str, error_code: str, status_code: int) -> Dict[str, Any]:
    return {
        "error": {
            "message": message,
            "error_code": error_code,
            "status_code": status_code,
        }
    }


def classify_exception(exc: BaseException) -> Tuple[str, str, int, int]:
    """
    예외를 (메시지, 에러 코드, 종료 코드, HTTP 상태 코드) 로 분류

    - DecoherenceError: 자체 코드 사용
    - 입력 검증 실패 (pydantic, 차원 불일치, ValueError): 종료 코드 1
    - 그 외: 내부 오류, 종료 코드 2
    """
    if isinstance(exc, DecoherenceError):
        return exc.message, exc.error_code, exc.exit_code, exc.status_code
    if isinstance(exc, ValidationError):
        return str(exc), ErrorCodes.VALIDATION_ERROR, 1, 422
    if isinstance(exc, DimensionError):
        return str(exc), ErrorCodes.UNIT_MISMATCH, 1, 400
    if isinstance(exc, ValueError):
        return str(exc), ErrorCodes.VALIDATION_ERROR, 1, 400
    return f"내부 오류가 발생했습니다: {exc}", ErrorCodes.INTERNAL_ERROR, 2, 500


async def decoherence_exception_handler(
    request: Request, exc: DecoherenceError
) -> JSONResponse:
    """
    DecoherenceError 커스텀 예외 핸들러

    Args:
        request: FastAPI Request 객체
        exc: 발생한 DecoherenceError 예외 객체

    Returns:
        JSONResponse: 에러 정보를 포함한 JSON 응답
    """
    logger.warning(f"요청 처리 실패 [{exc.error_code}]: {exc.message}")
    return JSONResponse(
        status_code=exc.status_code,
        content=error_body(exc.message, exc.error_code, exc.status_code),
    )


async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    """서비스 내부에서 올라온 ValueError (차원 불일치 포함) 처리"""
    message, error_code, _, status_code = classify_exception(exc)
    return JSONResponse(
        status_code=status_code,
        content=error_body(message, error_code, status_code),
    )


async def http_exception_handler(request: Request, exc: HTTPException) -> JSONResponse:
    """
    예상치 못한 HTTPException 처리를 위한 기본 핸들러

    커스텀 에러로 처리하지 못한 HTTPException들을 일관된 형태로 응답
    """
    error_code_mapping = {
        400: ErrorCodes.VALIDATION_ERROR,
        404: ErrorCodes.UNKNOWN_ERROR,
        422: ErrorCodes.VALIDATION_ERROR,
        500: ErrorCodes.INTERNAL_ERROR,
    }
    error_code = error_code_mapping.get(exc.status_code, ErrorCodes.UNKNOWN_ERROR)

    return JSONResponse(
        status_code=exc.status_code,
        content=error_body(
            exc.detail if exc.detail else "알 수 없는 오류가 발생했습니다",
            error_code,
            exc.status_code,
        ),
    )
