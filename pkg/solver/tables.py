# Montagem, verificação e comparação das tabelas LCD[n,k] e LCK[n,d]
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import pandas as pd

from core.errors import LCDToolkitError, PreconditionError
from core.gf2_matrix import Gf2Matrix
from core.linear_code import LinearCode, min_distance
from core.memory_system import CellMemory
from core.validator import is_lcd
from solver.constructions import (
    construct_codim,
    construct_codim1,
    construct_n1,
    construct_n2,
    lcd_codim1_value,
    lcd_n1_value,
    lcd_n2_value,
    lck_vanishes,
)
from solver.lcd_search import (
    DEFAULT_SEARCH_BUDGET,
    SEARCH_MAX_K,
    Mapper,
    SearchSpec,
    exists_lcd,
    search_lcd,
    search_lck,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_N = 12

KIND_LCD = "lcd"
KIND_LCK = "lck"

SOURCE_CONSTRUCTION = "construction"
SOURCE_SEARCH = "search"
SOURCE_THEOREM = "theorem"
SOURCE_PUBLISHED = "published"

_PUBLISHED_LCD_ROWS = [
    [1],
    [1, 1],
    [3, 2, 1],
    [3, 2, 1, 1],
    [5, 2, 2, 2, 1],
    [5, 3, 2, 2, 1, 1],
    [7, 4, 3, 2, 2, 2, 1],
    [7, 5, 3, 3, 2, 2, 1, 1],
    [9, 6, 4, 4, 3, 2, 2, 2, 1],
    [9, 6, 5, 4, 3, 3, 2, 2, 1, 1],
    [11, 6, 5, 4, 4, 4, 3, 2, 2, 2, 1],
    [11, 7, 6, 5, 4, 4, 3, 2, 2, 2, 1, 1],
]

_PUBLISHED_LCK_ROWS = [
    [1],
    [2, 0],
    [3, 2, 1],
    [4, 2, 1, 0],
    [5, 4, 1, 0, 1],
    [6, 4, 2, 2, 1, 0],
    [7, 6, 3, 2, 1, 0, 1],
    [8, 6, 4, 2, 2, 0, 1, 0],
    [9, 8, 5, 4, 2, 2, 1, 0, 1],
    [10, 8, 6, 4, 3, 2, 1, 0, 1, 0],
    [11, 10, 7, 6, 3, 2, 1, 0, 1, 0, 1],
    [12, 10, 7, 6, 4, 3, 2, 0, 1, 0, 1, 0],
]

PUBLISHED_LCD: Dict[Tuple[int, int], int] = {
    (n, k): value for n, row in enumerate(_PUBLISHED_LCD_ROWS, 1) for k, value in enumerate(row, 1)
}
PUBLISHED_LCK: Dict[Tuple[int, int], int] = {
    (n, d): value for n, row in enumerate(_PUBLISHED_LCK_ROWS, 1) for d, value in enumerate(row, 1)
}

# células marcadas como corrigidas na tabela LCK publicada
STARRED_LCK = frozenset({(4, 3), (6, 5), (7, 5), (8, 3), (8, 7), (9, 5), (10, 9), (12, 7), (12, 11)})

# LCK[6,4] impresso como 2, mas LCD[6,2] = 3 e LCD[6,1] = 5 com peso ímpar;
# nenhum código LCD [6,k,4] existe e o critério de paridade também dá zero
PUBLISHED_LCK_ERRATA: Dict[Tuple[int, int], int] = {(6, 4): 0}


@dataclass
class TableEntry:
    """
    Uma célula de tabela. Para LCD `col` é k e `value` é d; para LCK `col`
    é d e `value` é k. A testemunha é a geradora completa (None se value = 0).
    """

    kind: str
    n: int
    col: int
    value: int
    witness: Optional[Gf2Matrix] = None
    source: str = SOURCE_SEARCH
    starred: bool = False
    elapsed: Optional[float] = None

    @property
    def col_key(self) -> str:
        return "k" if self.kind == KIND_LCD else "d"

    def verify(self) -> bool:
        """Refaz a verificação da testemunha (LCD e parâmetros)."""
        if self.witness is None:
            return self.value == 0
        code = LinearCode(self.witness)
        if not is_lcd(code):
            return False
        if self.kind == KIND_LCD:
            return code.k == self.col and min_distance(code) == self.value
        return code.k == self.value and min_distance(code) == self.col

    def to_dict(self, timings: bool = False) -> Dict:
        return {
            "kind": self.kind,
            "n": self.n,
            self.col_key: self.col,
            "value": self.value,
            "witness": self.witness.to_strings() if self.witness is not None else None,
            "source": self.source,
            "starred": self.starred,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timings and self.elapsed is not None else None,
        }

    @classmethod
    def from_dict(cls, record: Dict) -> "TableEntry":
        kind = record["kind"]
        witness = record.get("witness")
        return cls(
            kind=kind,
            n=record["n"],
            col=record["k" if kind == KIND_LCD else "d"],
            value=record["value"],
            witness=Gf2Matrix.from_strings(witness) if witness is not None else None,
            source=record.get("source", SOURCE_SEARCH),
            starred=record.get("starred", False),
            elapsed=record["elapsed_ms"] / 1000 if record.get("elapsed_ms") is not None else None,
        )


@dataclass
class LCDTable:
    """Tabela triangular (1 <= col <= n <= max_n) de um dos dois tipos."""

    kind: str
    max_n: int
    entries: Dict[Tuple[int, int], TableEntry] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (KIND_LCD, KIND_LCK):
            raise PreconditionError(f"tipo de tabela desconhecido: {self.kind}")

    def set(self, entry: TableEntry):
        self.entries[(entry.n, entry.col)] = entry

    def value(self, n: int, col: int) -> Optional[int]:
        entry = self.entries.get((n, col))
        return entry.value if entry else None

    def row(self, n: int) -> Dict[int, int]:
        return {col: e.value for (m, col), e in self.entries.items() if m == n}

    def is_complete(self) -> bool:
        return all((n, c) in self.entries for n in range(1, self.max_n + 1) for c in range(1, n + 1))

    def __iter__(self) -> Iterator[TableEntry]:
        for key in sorted(self.entries):
            yield self.entries[key]

    def __len__(self) -> int:
        return len(self.entries)

    def to_frame(self, star: bool = False) -> pd.DataFrame:
        """
        Linhas n, colunas k (ou d); células acima da diagonal ficam vazias.
        Com `star`, células marcadas recebem o sufixo "*".
        """
        columns = list(range(1, self.max_n + 1))
        data = []
        for n in range(1, self.max_n + 1):
            cells = []
            for col in columns:
                entry = self.entries.get((n, col))
                if entry is None:
                    cells.append("")
                else:
                    cells.append(f"{entry.value}*" if star and entry.starred else str(entry.value))
            data.append(cells)
        frame = pd.DataFrame(data, index=pd.Index(range(1, self.max_n + 1), name="n"), columns=columns)
        return frame


def published_table(kind: str, max_n: int = DEFAULT_MAX_N) -> LCDTable:
    """Tabela publicada (sem testemunhas), útil como referência."""
    if not 1 <= max_n <= DEFAULT_MAX_N:
        raise PreconditionError(f"tabelas publicadas cobrem 1 <= n <= {DEFAULT_MAX_N}")
    values = PUBLISHED_LCD if kind == KIND_LCD else PUBLISHED_LCK
    table = LCDTable(kind, max_n)
    for (n, col), value in values.items():
        if n <= max_n:
            starred = kind == KIND_LCK and (n, col) in STARRED_LCK
            table.set(TableEntry(kind, n, col, value, None, SOURCE_PUBLISHED, starred))
    return table


def _construction_for(n: int, k: int) -> Optional[Tuple[LinearCode, int]]:
    if k == 1:
        return construct_n1(n), lcd_n1_value(n)
    if k == 2:
        return construct_n2(n), lcd_n2_value(n)
    codim = n - k
    if codim == 1:
        return construct_codim1(n), lcd_codim1_value(n)
    if codim >= 2 and n >= (1 << codim):
        return construct_codim(n, codim), 2
    return None


def _confirm_construction(n: int, k: int, d: int, budget: int, force: bool):
    # a construção precisa ser alcançável pela busca e d + 1 inalcançável
    if k > SEARCH_MAX_K and n - k > 1:
        logger.warning("LCD[%d,%d]: k acima de %d, construção aceita sem confirmação", n, k, SEARCH_MAX_K)
        return
    if exists_lcd(n, k, d, budget=budget, force=force) is None:
        raise LCDToolkitError(f"busca não confirma LCD[{n},{k}] >= {d}")
    if d < n and exists_lcd(n, k, d + 1, budget=budget, force=force) is not None:
        raise LCDToolkitError(f"busca encontrou LCD[{n},{k}] > {d}")


def build_lcd_table(
    max_n: int,
    memory: Optional[CellMemory] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    force: bool = False,
    shards: int = 1,
    mapper: Optional[Mapper] = None,
    confirm: bool = True,
) -> LCDTable:
    """
    Monta LCD[n,k] para 1 <= k <= n <= max_n.

    Cada célula usa a fonte mais barata: k = 1 e k = 2 em forma fechada,
    codimensão i >= 2 com n >= 2^i pela construção identidade, e busca no
    resto. Com `confirm`, cada célula construída é confirmada pela busca em
    d e d + 1. Células já presentes em `memory` não são recalculadas.

    Args:
        max_n: maior comprimento
        memory: cache de células (opcional)
        budget: orçamento de candidatos por busca
        force: ignora o orçamento
        shards: fatias por busca
        mapper: função map para despachar as fatias
        confirm: confirma as construções pela busca

    Returns:
        LCDTable: tabela completa
    """
    if max_n < 1:
        raise PreconditionError("max_n deve ser >= 1")
    if max_n > DEFAULT_MAX_N and not force:
        raise PreconditionError(f"tabelas além de n = {DEFAULT_MAX_N} exigem --force")
    memory = memory or CellMemory()
    table = LCDTable(KIND_LCD, max_n)
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            cached = memory.load(KIND_LCD, n, k)
            if cached is not None:
                table.set(TableEntry.from_dict(cached))
                continue
            started = time.perf_counter()
            built = _construction_for(n, k)
            if built is not None:
                code, d = built
                if not is_lcd(code) or min_distance(code) != d:
                    raise LCDToolkitError(f"construção inválida para LCD[{n},{k}]")
                if confirm:
                    _confirm_construction(n, k, d, budget, force)
                entry = TableEntry(KIND_LCD, n, k, d, code.gen, SOURCE_CONSTRUCTION)
            else:
                result = search_lcd(SearchSpec(n, k), budget, force, hints=table.row(n), shards=shards, mapper=mapper)
                entry = TableEntry(KIND_LCD, n, k, result.d, result.code().gen, SOURCE_SEARCH)
            entry.elapsed = time.perf_counter() - started
            logger.info("LCD[%d,%d] = %d (%s)", n, k, entry.value, entry.source)
            table.set(entry)
            memory.store(KIND_LCD, n, k, entry.to_dict(timings=True))
    return table


def build_lck_table(
    max_n: int,
    lcd_table: Optional[LCDTable] = None,
    memory: Optional[CellMemory] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    force: bool = False,
    shards: int = 1,
    mapper: Optional[Mapper] = None,
) -> LCDTable:
    """
    Monta LCK[n,d] para 1 <= d <= n <= max_n, usando os valores LCD[n,k]
    para pular dimensões impossíveis. Zeros previstos pelo critério de paridade
    recebem a fonte "theorem" e são confirmados pela busca.
    """
    if max_n < 1:
        raise PreconditionError("max_n deve ser >= 1")
    memory = memory or CellMemory()
    if lcd_table is None or lcd_table.max_n < max_n:
        lcd_table = build_lcd_table(max_n, memory, budget, force, shards, mapper)
    table = LCDTable(KIND_LCK, max_n)
    for n in range(1, max_n + 1):
        hints = lcd_table.row(n)
        for d in range(1, n + 1):
            cached = memory.load(KIND_LCK, n, d)
            if cached is not None:
                table.set(TableEntry.from_dict(cached))
                continue
            started = time.perf_counter()
            result = search_lck(n, d, hints=hints, budget=budget, force=force, shards=shards, mapper=mapper)
            vanishes = lck_vanishes(n, d)
            if vanishes and result.found:
                logger.error("LCK[%d,%d]: critério de paridade prevê zero, busca achou k=%d", n, d, result.k)
            source = SOURCE_THEOREM if vanishes and not result.found else SOURCE_SEARCH
            entry = TableEntry(
                KIND_LCK,
                n,
                d,
                result.k,
                result.code().gen if result.found else None,
                source,
                starred=(n, d) in STARRED_LCK,
                elapsed=time.perf_counter() - started,
            )
            logger.info("LCK[%d,%d] = %d (%s)", n, d, entry.value, entry.source)
            table.set(entry)
            memory.store(KIND_LCK, n, d, entry.to_dict(timings=True))
    return table


@dataclass
class ConjectureReport:
    """Violações de LCD[n,k] <= LCD[n,k-1] e das formas fracas (ímpar passo 1, par passo 2)."""

    max_n: int
    violations: List[Tuple[int, int]]
    odd_step_violations: List[Tuple[int, int]]
    even_step_violations: List[Tuple[int, int]]

    @property
    def weak_forms_hold(self) -> bool:
        return not self.odd_step_violations and not self.even_step_violations

    def to_dict(self) -> Dict:
        return {
            "max_n": self.max_n,
            "violations": [list(v) for v in self.violations],
            "odd_step_violations": [list(v) for v in self.odd_step_violations],
            "even_step_violations": [list(v) for v in self.even_step_violations],
        }


def verify_conjecture(table: LCDTable) -> ConjectureReport:
    """
    Verifica a monotonicidade LCD[n,k] <= LCD[n,k-1] em toda a tabela e,
    separadamente, as formas já demonstradas: k ímpar contra k-1 e k par
    contra k-2.

    Raises:
        PreconditionError: tabela incompleta ou de tipo errado
    """
    if table.kind != KIND_LCD:
        raise PreconditionError("verify_conjecture exige uma tabela LCD")
    if not table.is_complete():
        raise PreconditionError("tabela incompleta")
    violations, odd, even = [], [], []
    for n in range(1, table.max_n + 1):
        for k in range(2, n + 1):
            value = table.value(n, k)
            if value > table.value(n, k - 1):
                violations.append((n, k))
                if k % 2 == 1:
                    odd.append((n, k))
            if k % 2 == 0 and k >= 4 and value > table.value(n, k - 2):
                even.append((n, k))
    for n, k in violations:
        logger.warning("monotonicidade violada em LCD[%d,%d]", n, k)
    return ConjectureReport(table.max_n, violations, odd, even)


def compare_with_published(table: LCDTable) -> List[Tuple[int, int, int, int]]:
    """
    Células que diferem da tabela publicada.

    Returns:
        list: (n, col, calculado, publicado) para cada divergência
    """
    published = PUBLISHED_LCD if table.kind == KIND_LCD else PUBLISHED_LCK
    differences = []
    for entry in table:
        expected = published.get((entry.n, entry.col))
        if expected is not None and expected != entry.value:
            differences.append((entry.n, entry.col, entry.value, expected))
            logger.warning(
                "%s[%d,%d]: calculado %d, publicado %d",
                table.kind.upper(), entry.n, entry.col, entry.value, expected,
            )
    return differences


def check_cross_consistency(lcd: LCDTable, lck: LCDTable) -> List[str]:
    """
    LCD[n,k] = d > 0 implica LCK[n,d] >= k, e LCK[n,d] = k > 0 implica
    LCD[n,k] >= d. Devolve a descrição de cada violação.
    """
    problems = []
    for entry in lcd:
        if entry.value > 0:
            lck_value = lck.value(entry.n, entry.value)
            if lck_value is not None and lck_value < entry.col:
                problems.append(f"LCD[{entry.n},{entry.col}]={entry.value} mas LCK[{entry.n},{entry.value}]={lck_value}")
    for entry in lck:
        if entry.value > 0:
            lcd_value = lcd.value(entry.n, entry.value)
            if lcd_value is not None and lcd_value < entry.col:
                problems.append(f"LCK[{entry.n},{entry.col}]={entry.value} mas LCD[{entry.n},{entry.value}]={lcd_value}")
    return problems
