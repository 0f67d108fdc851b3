"""
스키마 패키지

Pydantic 모델들을 관리하는 패키지
실험 설정, 계산 결과, 시뮬레이션/추론/스윕 데이터 구조 정의
"""
