"""
Configuração de logging centralizado para o laboratório.
Salva logs em arquivo com rotação diária quando LOG_TO_FILE está ativo.
"""
import logging
import os
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Optional

from config import settings


LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None) -> None:
    """
    Inicializa logging para toda a aplicação.

    Configura:
    - Console sempre (stderr)
    - Arquivo laboratorio.log com rotação à meia-noite, 30 dias de histórico,
      somente se settings.LOG_TO_FILE estiver ativo
    """
    resolved_level = (level or settings.LOG_LEVEL or "INFO").upper()
    numeric_level = getattr(logging, resolved_level, logging.INFO)
    formatter = logging.Formatter(LOG_FORMAT, DATE_FORMAT)

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    # Remover handlers existentes (para evitar duplicação)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler()
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    log_file: Optional[Path] = None
    if settings.LOG_TO_FILE:
        target_dir = Path(log_dir or os.environ.get("LOG_DIR", settings.LOG_DIR))
        target_dir.mkdir(parents=True, exist_ok=True)
        log_file = target_dir / "laboratorio.log"

        file_handler = TimedRotatingFileHandler(
            filename=str(log_file),
            when="midnight",
            interval=1,
            backupCount=30,
            encoding="utf-8",
        )
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(formatter)
        file_handler.suffix = "%Y-%m-%d"
        root_logger.addHandler(file_handler)

    logger = logging.getLogger(__name__)
    logger.info(
        "Logging configurado: nível=%s, arquivo=%s",
        resolved_level,
        log_file if log_file else "desativado",
    )
