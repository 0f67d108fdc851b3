"""
예외 클래스 정의

계산/시뮬레이션/추론 과정에서 발생하는 사용자 정의 예외들을 정의합니다.
"""


class DecoherenceError(Exception):
    """
    공통 커스텀 예외 클래스

    CLI 종료 코드와 HTTP 상태 코드를 함께 들고 다니므로,
    같은 예외가 두 인터페이스에서 일관된 형태로 보고됩니다.

    Attributes:
        message (str): 에러 메시지
        error_code (str): 에러 코드 (예: CONFIG_INVALID)
        exit_code (int): CLI 종료 코드 (1: 잘못된 입력, 2: 내부 수치 오류)
        status_code (int): HTTP 상태 코드 (기본값: 400)

    Example:
        >>> raise DecoherenceError("β 는 1 미만이어야 합니다", "CONFIG_INVALID")
    """

    def __init__(
        self,
        message: str,
        error_code: str,
        exit_code: int = 1,
        status_code: int = 400,
    ):
        self.message = message
        self.error_code = error_code
        self.exit_code = exit_code
        self.status_code = status_code
        super().__init__(self.message)

    def __str__(self):
        return self.message

    def __repr__(self):
        return (
            f"{type(self).__name__}(message='{self.message}', "
            f"error_code='{self.error_code}', exit_code={self.exit_code})"
        )


class ConfigError(DecoherenceError):
    """잘못된 실험 설정/입력"""


class NumericalError(DecoherenceError):
    """내부 수치 계산 실패 (비유한 값, 특이 행렬 등)"""

    def __init__(self, message: str, error_code: str):
        super().__init__(message, error_code, exit_code=2, status_code=500)


class InsufficientDataError(DecoherenceError):
    """추정/적합에 필요한 데이터 부족"""

    def __init__(self, message: str, error_code: str):
        super().__init__(message, error_code, exit_code=1, status_code=422)
