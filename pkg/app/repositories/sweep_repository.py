from app.schemas.sweep import ScenarioRow, SweepRow

from .base import CsvRepository

SWEEP_COLUMNS = ["m_kg", "beta", "channel", "ln_gamma", "gamma", "regime", "valid"]


class SweepRepository(CsvRepository[SweepRow]):
    """스윕 표 CSV: m_kg,beta,channel,ln_gamma,gamma,regime,valid"""

    def __init__(self):
        super().__init__(SweepRow, SWEEP_COLUMNS)


class ScenarioRepository(CsvRepository[ScenarioRow]):
    def __init__(self):
        super().__init__(ScenarioRow)
