"""
제동복사 결어긋남 계산 애플리케이션

서비스 계층을 CLI(`python -m app`)와 FastAPI(`app.main:app`) 두 가지로 노출합니다.
"""

from physconst import __version__
