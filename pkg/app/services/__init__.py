"""
서비스 패키지

결어긋남 계산, 유효성 검사, 이벤트 시뮬레이션, 추론, 스윕 비즈니스 로직
"""
