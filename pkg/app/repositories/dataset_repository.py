"""
가시도 데이터셋 Repository

CSV 는 적합에 쓰이는 행만 담습니다 (제외된 격자점은 JSON 출력에만 기록).
"""

from pathlib import Path
from typing import Optional, Union

from app.schemas.inference import DatasetMode, DatasetRow, VisibilityDataset

from .base import CsvRepository

DATASET_COLUMNS = ["m_kg", "beta", "gamma", "gamma_se", "n_events"]


class DatasetRepository(CsvRepository[DatasetRow]):
    def __init__(self):
        super().__init__(DatasetRow, DATASET_COLUMNS)

    def write_dataset(self, dataset: VisibilityDataset, path: Union[str, Path]) -> None:
        self.write(dataset.rows, path)

    def read_dataset(self, path: Union[str, Path], seed: Optional[int] = None) -> VisibilityDataset:
        rows = self.read(path)
        # 표준오차가 하나라도 있으면 측정(몬테카를로) 데이터로 간주
        mode = DatasetMode.MONTE_CARLO if any(r.gamma_se > 0 for r in rows) else DatasetMode.ANALYTIC
        return VisibilityDataset(rows=rows, mode=mode, seed=seed)
