"""
Métricas de tempo por fase de execução.
Loga a duração de cada fase; fases lentas são logadas como WARNING.
"""
import logging
import time
from contextlib import contextmanager
from typing import Iterator

from config import settings

logger = logging.getLogger(__name__)


class PhaseTimer:
    def __init__(self, name: str):
        self.name = name
        self.elapsed = 0.0


@contextmanager
def timed_phase(name: str) -> Iterator[PhaseTimer]:
    """
    Mede a fase `name`.

    Logs incluem:
    - [METRICS] nome e duração em segundos
    - [SLOW_PHASE] quando passa de settings.SLOW_PHASE_SECONDS
    - [METRICS_ERROR] com traceback quando a fase levanta exceção
    """
    timer = PhaseTimer(name)
    start_time = time.perf_counter()
    try:
        yield timer
    except Exception as exc:
        timer.elapsed = time.perf_counter() - start_time
        logger.error(
            "[METRICS_ERROR] %s - ERRO após %.3fs: %s",
            name,
            timer.elapsed,
            str(exc),
            exc_info=True,
        )
        raise
    timer.elapsed = time.perf_counter() - start_time
    logger.info("[METRICS] %s - %.3fs", name, timer.elapsed)
    if timer.elapsed > settings.SLOW_PHASE_SECONDS:
        logger.warning("[SLOW_PHASE] %s levou %.3fs", name, timer.elapsed)
