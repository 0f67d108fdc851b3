"""
에러 코드 상수 정의

서비스에서 사용할 수 있는 모든 에러 코드
"""


class ErrorCodes:
    # =================================================================
    # 설정 관련 에러 (10000번대)
    # =================================================================
    CONFIG_INVALID = "CONFIG_INVALID"  # 10001: 실험 설정 불변식 위반
    CONFIG_FILE_NOT_FOUND = "CONFIG_FILE_NOT_FOUND"  # 10002: 설정 파일 없음
    CONFIG_PARSE_FAILED = "CONFIG_PARSE_FAILED"  # 10003: 설정 파일 파싱 실패
    UNIT_MISMATCH = "UNIT_MISMATCH"  # 10004: 차원/단위 불일치

    # =================================================================
    # 결어긋남 계산 관련 에러 (20000번대)
    # =================================================================
    BETA_OUT_OF_RANGE = "BETA_OUT_OF_RANGE"  # 20001: β ∉ [0, 1)
    PROBABILITY_OUT_OF_RANGE = "PROBABILITY_OUT_OF_RANGE"  # 20002: 확률 ∉ [0, 1]
    NEGATIVE_EXPECTED_QUANTA = "NEGATIVE_EXPECTED_QUANTA"  # 20003: N̄ < 0
    GAMMA_OUT_OF_DISK = "GAMMA_OUT_OF_DISK"  # 20004: |Γ| > 1
    REGIME_INVALID = "REGIME_INVALID"  # 20005: 유효성 검사를 통과하지 못한 설정

    # =================================================================
    # 시뮬레이션 관련 에러 (30000번대)
    # =================================================================
    EVENT_COUNT_INVALID = "EVENT_COUNT_INVALID"  # 30001: n < 1
    EXPECTED_QUANTA_NOT_FINITE = "EXPECTED_QUANTA_NOT_FINITE"  # 30002: 비유한 N̄
    FRINGE_SPACING_INVALID = "FRINGE_SPACING_INVALID"  # 30003: 무늬 간격 정의 불가
    TOO_FEW_EVENTS = "TOO_FEW_EVENTS"  # 30004: 가시도 추정에 필요한 이벤트 부족
    TROUGH_WINDOW_INVALID = "TROUGH_WINDOW_INVALID"  # 30005: 골 창 폭 오류

    # =================================================================
    # 추론 관련 에러 (40000번대)
    # =================================================================
    DATASET_TOO_SMALL = "DATASET_TOO_SMALL"  # 40001: 적합 가능한 행 부족
    DESIGN_RANK_DEFICIENT = "DESIGN_RANK_DEFICIENT"  # 40002: 설계 행렬 랭크 부족
    TRANSFORM_NOT_FINITE = "TRANSFORM_NOT_FINITE"  # 40003: ln(−ln Γ) 비유한
    REFINEMENT_FAILED = "REFINEMENT_FAILED"  # 40004: 가우스-뉴턴 정제 실패

    # =================================================================
    # 입출력 관련 에러 (50000번대)
    # =================================================================
    CSV_PARSE_FAILED = "CSV_PARSE_FAILED"  # 50001: CSV 파싱 실패
    OUTPUT_WRITE_FAILED = "OUTPUT_WRITE_FAILED"  # 50002: 출력 파일 쓰기 실패

    # =================================================================
    # 일반적인 에러 (90000번대)
    # =================================================================
    VALIDATION_ERROR = "VALIDATION_ERROR"  # 90001: 유효성 검사 실패
    INTERNAL_ERROR = "INTERNAL_ERROR"  # 90002: 내부 오류
    UNKNOWN_ERROR = "UNKNOWN_ERROR"  # 90003: 알 수 없는 에러
