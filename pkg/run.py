"""
FastAPI 개발 서버 실행 스크립트

로컬에서 HTTP API 를 띄우기 위한 편의 스크립트.
명령행 계산은 `python -m app` 을 사용합니다.
"""

import uvicorn

from app.config import get_settings

if __name__ == "__main__":
    settings = get_settings()
    uvicorn.run(
        "app.main:app",  # 앱 위치
        host="127.0.0.1",  # 로컬호스트
        port=8000,
        reload=settings.environment == "local",  # 코드 변경시 자동 재시작
        log_level=settings.log_level.lower(),
    )
