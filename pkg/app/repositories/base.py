"""
파일 Repository 기본 클래스

pydantic 행 모델 목록을 CSV 로 쓰고 읽는 공통 로직.
float 는 repr 로 기록하므로 왕복 변환이 정확합니다.
"""

import csv
import enum
import io
from pathlib import Path
from typing import Any, Generic, Iterable, List, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from app.exceptions import DecoherenceError, ErrorCodes

RowType = TypeVar("RowType", bound=BaseModel)

PathLike = Union[str, Path]


def format_cell(value: Any) -> str:
    """CSV 셀 문자열 변환"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, enum.Enum):
        return str(value.value)
    return str(value)


def write_text(text: str, path: PathLike) -> None:
    """
    출력 파일 기록 (상위 디렉터리 생성)

    Raises:
        DecoherenceError: 파일을 쓸 수 없는 경우
    """
    try:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as e:
        raise DecoherenceError(f"출력 파일을 쓸 수 없습니다: {path} ({e})", ErrorCodes.OUTPUT_WRITE_FAILED)


def write_json(model: BaseModel, path: PathLike) -> None:
    write_text(model.model_dump_json(indent=2) + "\n", path)


class CsvRepository(Generic[RowType]):
    """CSV 기본 Repository 클래스 - 헤더는 행 모델 필드 순서"""

    def __init__(self, model: Type[RowType], columns: Sequence[str] = ()):
        self.model = model
        self.columns = list(columns) or list(model.model_fields)

    def dumps(self, rows: Iterable[RowType]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in rows:
            writer.writerow([format_cell(getattr(row, column)) for column in self.columns])
        return buffer.getvalue()

    def loads(self, text: str) -> List[RowType]:
        """
        CSV 텍스트를 행 모델 목록으로 변환

        Raises:
            DecoherenceError: 헤더가 다르거나 행 검증에 실패한 경우
        """
        reader = csv.DictReader(io.StringIO(text))
        missing = set(self.columns) - set(reader.fieldnames or [])
        if missing:
            raise DecoherenceError(
                f"CSV 헤더에 열이 없습니다: {sorted(missing)}", ErrorCodes.CSV_PARSE_FAILED
            )
        rows = []
        for line_number, record in enumerate(reader, start=2):
            values = {key: value for key, value in record.items() if key in self.columns and value != ""}
            try:
                rows.append(self.model.model_validate(values))
            except ValidationError as e:
                raise DecoherenceError(
                    f"CSV {line_number} 행 검증 실패: {e}", ErrorCodes.CSV_PARSE_FAILED
                )
        return rows

    def write(self, rows: Iterable[RowType], path: PathLike) -> None:
        write_text(self.dumps(rows), path)

    def read(self, path: PathLike) -> List[RowType]:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise DecoherenceError(f"CSV 파일을 읽을 수 없습니다: {path} ({e})", ErrorCodes.CSV_PARSE_FAILED)
        return self.loads(text)
