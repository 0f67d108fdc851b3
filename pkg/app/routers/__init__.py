"""
라우터 패키지

응답은 pydantic 의 model_dump_json 으로 직렬화합니다 (무한대 여유 비율은 null).
"""

from typing import Any, List, Union

from fastapi import Response
from pydantic import BaseModel, RootModel


def json_response(payload: Union[BaseModel, List[Any]]) -> Response:
    if not isinstance(payload, BaseModel):
        payload = RootModel[List[Any]](payload)
    return Response(content=payload.model_dump_json(), media_type="application/json")
