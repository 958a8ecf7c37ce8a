"""
Escrita de relatórios: JSON (orjson, chaves ordenadas) e CSV (polars, 17
algarismos significativos), sempre por arquivo temporário + os.replace.
"""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Mapping

import orjson
import polars as pl

from .schema import LabConfig

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY


def config_digest(config: LabConfig) -> str:
    """sha256 da configuração resolvida serializada com chaves ordenadas."""
    payload = orjson.dumps(config.model_dump(mode="json"), option=orjson.OPT_SORT_KEYS)
    return hashlib.sha256(payload).hexdigest()


def _atomic_write(path: Path, chunks: list[bytes]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            for chunk in chunks:
                handle.write(chunk)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug("[CLI] Arquivo escrito: %s", path)
    return path


def write_json(path: Path, payload: Mapping[str, Any], digest: str, units: str) -> Path:
    document = {"config_digest": digest, "unidades": units, **payload}
    return _atomic_write(path, [orjson.dumps(document, option=JSON_OPTIONS), b"\n"])


def write_csv(path: Path, frame: pl.DataFrame, digest: str, units: str) -> Path:
    header = f"# config_digest={digest}; unidades={units}\n".encode("utf-8")
    body = frame.write_csv(float_scientific=True, float_precision=16).encode("utf-8")
    return _atomic_write(path, [header, body])


def read_json(path: Path) -> dict[str, Any]:
    return orjson.loads(Path(path).read_bytes())


__all__ = [
    "config_digest",
    "write_json",
    "write_csv",
    "read_json",
]
