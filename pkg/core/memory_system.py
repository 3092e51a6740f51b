# Memória persistente das células das tabelas LCD/LCK (um JSON por célula)
import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.errors import CacheConflictError, LCDToolkitError
from core.gf2_matrix import Gf2Matrix
from core.linear_code import LinearCode, min_distance
from core.validator import is_lcd

logger = logging.getLogger(__name__)

CACHE_ENV = "LCD_TOOLKIT_CACHE"


class CellMemory:
    """
    Guarda cada célula calculada num arquivo `{kind}_n{n}_{col}.json` dentro
    do diretório de cache. O primeiro valor gravado fica fixado: gravações
    posteriores precisam concordar com ele. Toda testemunha lida do disco é
    verificada de novo (LCD e distância) antes de ser usada.

    Sem diretório a memória fica desativada e todas as consultas falham.
    """

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory) if directory else None
        self.performance_stats = self._fresh_stats()

    @staticmethod
    def _fresh_stats() -> Dict[str, Any]:
        return {
            'hits': 0,
            'misses': 0,
            'writes': 0,
            'rejected': 0,
            'start_time': None,
            'end_time': None,
        }

    @classmethod
    def from_environment(cls, override: Optional[str] = None) -> "CellMemory":
        """Usa `override` (--cache) ou a variável LCD_TOOLKIT_CACHE."""
        return cls(override or os.environ.get(CACHE_ENV) or None)

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def cell_path(self, kind: str, n: int, col: int) -> Path:
        return self.directory / f"{kind}_n{n}_{col}.json"

    def _verify(self, record: Dict[str, Any]) -> bool:
        witness = record.get('witness')
        value = record['value']
        if witness is None:
            return value == 0
        code = LinearCode(Gf2Matrix.from_strings(witness))
        if code.n != record['n'] or not is_lcd(code):
            return False
        if record['kind'] == 'lcd':
            return code.k == record['k'] and min_distance(code) == value
        return code.k == value and min_distance(code) == record['d']

    def load(self, kind: str, n: int, col: int) -> Optional[Dict[str, Any]]:
        """
        Lê uma célula do cache.

        Returns:
            dicionário da célula, ou None se ausente ou se a testemunha não
            passar na verificação
        """
        if not self.enabled:
            return None
        path = self.cell_path(kind, n, col)
        if not path.exists():
            self.performance_stats['misses'] += 1
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
            valid = self._verify(record)
        except (OSError, KeyError, json.JSONDecodeError, LCDToolkitError) as exc:
            logger.warning("célula %s ilegível: %s", path.name, exc)
            valid = False
        if not valid:
            self.performance_stats['rejected'] += 1
            logger.warning("célula %s descartada: testemunha não confere", path.name)
            return None
        self.performance_stats['hits'] += 1
        logger.debug("cache: %s", path.name)
        return record

    def store(self, kind: str, n: int, col: int, record: Dict[str, Any]):
        """
        Grava a célula de forma atômica. Se outra execução já fixou a célula,
        o valor precisa ser o mesmo.

        Raises:
            CacheConflictError: se o valor fixado for diferente
        """
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.cell_path(kind, n, col)
        handle, tmp_name = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(handle, "w", encoding="utf-8") as tmp:
                json.dump(record, tmp, indent=2)
            try:
                os.link(tmp_name, path)
            except FileExistsError:
                pinned = json.loads(path.read_text(encoding="utf-8"))
                if pinned.get('value') != record['value']:
                    raise CacheConflictError(
                        f"célula {path.name} fixada com valor {pinned.get('value')}, "
                        f"nova gravação traz {record['value']}"
                    )
                logger.debug("cache: %s já fixada com o mesmo valor", path.name)
                return
        finally:
            os.unlink(tmp_name)
        self.performance_stats['writes'] += 1
        logger.info("cache: gravada %s", path.name)

    def _cell_files(self) -> List[Path]:
        if not self.enabled or not self.directory.exists():
            return []
        return sorted(self.directory.glob("*_n*_*.json"))

    def list_cells(self) -> Dict[str, int]:
        """Número de células gravadas por tipo de tabela."""
        counts = {"lcd": 0, "lck": 0}
        for path in self._cell_files():
            kind = path.name.split("_", 1)[0]
            counts[kind] = counts.get(kind, 0) + 1
        return counts

    def clear_memory(self) -> int:
        """
        Remove todas as células do diretório de cache.

        Returns:
            int: número de células removidas
        """
        files = self._cell_files()
        for path in files:
            path.unlink()
        self.performance_stats = self._fresh_stats()
        logger.info("cache: %d células removidas", len(files))
        return len(files)

    def start_session(self):
        self.performance_stats['start_time'] = time.time()

    def end_session(self):
        self.performance_stats['end_time'] = time.time()

    def get_session_duration(self) -> float:
        if self.performance_stats['start_time'] and self.performance_stats['end_time']:
            return self.performance_stats['end_time'] - self.performance_stats['start_time']
        return 0.0

    def get_memory_summary(self) -> Dict[str, Any]:
        """Resumo da sessão de cache."""
        stats = self.performance_stats
        lookups = stats['hits'] + stats['misses'] + stats['rejected']
        return {
            'directory': str(self.directory) if self.enabled else None,
            'hits': stats['hits'],
            'misses': stats['misses'],
            'writes': stats['writes'],
            'rejected': stats['rejected'],
            'hit_rate': (stats['hits'] / max(lookups, 1)) * 100,
            'session_duration': self.get_session_duration(),
        }
