"""
Repository 패키지

CSV/JSON 파일 입출력 계층
"""

from .base import CsvRepository, write_json, write_text
from .dataset_repository import DatasetRepository
from .event_repository import EventRepository
from .sweep_repository import ScenarioRepository, SweepRepository

__all__ = [
    "CsvRepository",
    "DatasetRepository",
    "EventRepository",
    "ScenarioRepository",
    "SweepRepository",
    "write_json",
    "write_text",
]
