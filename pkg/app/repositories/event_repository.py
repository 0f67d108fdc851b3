"""
검출 이벤트 Repository

10⁶ 개 이상의 이벤트를 모델 객체 없이 배열에서 바로 x_m,k,coherent 로 기록합니다.
"""

import csv
import io
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from app.exceptions import DecoherenceError, ErrorCodes
from app.schemas.simulation import EventBatch

from .base import write_text

EVENT_COLUMNS = ["x_m", "k", "coherent"]


class EventRepository:
    def dumps(self, events: EventBatch) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(EVENT_COLUMNS)
        writer.writerows(
            (repr(x), k, "true" if k == 0 else "false")
            for x, k in zip(events.x.tolist(), events.k.tolist())
        )
        return buffer.getvalue()

    def write(self, events: EventBatch, path: Union[str, Path]) -> None:
        write_text(self.dumps(events), path)

    def read_arrays(self, path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray]:
        """(x, k) 배열로 읽기"""
        try:
            with open(path, encoding="utf-8", newline="") as handle:
                reader = csv.reader(handle)
                header = next(reader)
                if header != EVENT_COLUMNS:
                    raise DecoherenceError(
                        f"이벤트 CSV 헤더가 다릅니다: {header}", ErrorCodes.CSV_PARSE_FAILED
                    )
                records = [(float(x), int(k)) for x, k, _ in reader]
        except (OSError, ValueError, StopIteration) as e:
            raise DecoherenceError(f"이벤트 CSV 를 읽을 수 없습니다: {path} ({e})", ErrorCodes.CSV_PARSE_FAILED)
        x = np.array([r[0] for r in records], dtype=float)
        k = np.array([r[1] for r in records], dtype=np.int64)
        return x, k
