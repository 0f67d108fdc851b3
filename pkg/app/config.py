"""
애플리케이션 설정 관리

환경변수(BREMS_*)와 .env 파일을 읽어 실행에 필요한 설정값을 제공하고,
loguru 로거를 초기화합니다.
"""

import os
import sys
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from loguru import logger
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from physconst import ConstantSet

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def load_environment() -> str:
    """환경에 따라 적절한 .env 파일을 로드"""
    # BREMS_ENVIRONMENT 로 환경 구분
    environment = os.getenv("BREMS_ENVIRONMENT", "local")
    env_file = ".env" if environment == "local" else f".env.{environment}"
    load_dotenv(env_file)
    return env_file


class AppSettings(BaseSettings):
    """환경변수 기반 설정 클래스"""

    model_config = SettingsConfigDict(env_prefix="BREMS_", extra="ignore")

    environment: str = Field(default="local", title="실행 환경")
    constants: ConstantSet = Field(
        default=ConstantSet.CODATA2018, title="물리 상수 프리셋"
    )
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO", title="로그 레벨"
    )
    workers: int = Field(default=1, ge=1, le=256, title="병렬 작업자 수")
    strictness: float = Field(
        default=10.0, gt=1.0, title="'훨씬 크다/작다' 판정 배율"
    )
    relativistic_threshold: float = Field(
        default=0.5, gt=0.0, lt=1.0, title="상대론 영역 경계 β_rel"
    )
    grid_points: int = Field(
        default=4096, ge=64, title="역누적분포 격자 점 수"
    )
    chunk_size: int = Field(
        default=65536, ge=1024, title="RNG 스트림 하나가 담당하는 시행 수"
    )

    def __str__(self) -> str:
        return (
            f"AppSettings(environment={self.environment}, "
            f"constants={self.constants.value}, workers={self.workers}, "
            f"strictness={self.strictness}, beta_rel={self.relativistic_threshold})"
        )


@lru_cache(maxsize=1)
def get_settings() -> AppSettings:
    """설정 싱글턴 (.env 로드 후 생성)"""
    load_environment()
    return AppSettings()


def configure_logging(level: str = "INFO") -> None:
    """stderr 싱크 하나만 남기고 포맷/레벨을 설정"""
    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT, backtrace=False)
