# Verificação LCD: det(GG^T), dimensão do hull, pr-sequências e subcódigos LCD
import logging
import re
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterable, List, Set, Tuple

from core.errors import DimensionMismatchError, LCDToolkitError, PreconditionError
from core.gf2_matrix import Gf2Matrix, rank_of_row_ints
from core.linear_code import CodeParams, LinearCode, min_distance

logger = logging.getLogger(__name__)

PR_SEQUENCE_MAX_K = 24

_FORM_ONES_THEN_ZEROS = re.compile(r"11*0*")
_FORM_ALTERNATING = re.compile(r"(01)*0*")


@dataclass(frozen=True)
class PrSequence:
    """
    Sequência r0]r1...rk de uma matriz simétrica de ordem k: r0 = 1 se há um
    zero na diagonal; rm = 1 se alguma submatriz principal m x m tem posto m.
    """

    r0: int
    rs: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rs)

    @property
    def nonsingular(self) -> bool:
        return not self.rs or self.rs[-1] == 1

    @classmethod
    def parse(cls, text: str) -> "PrSequence":
        match = re.fullmatch(r"([01])\]([01]*)", text.strip())
        if not match:
            raise LCDToolkitError(f"pr-sequência inválida: {text!r}")
        return cls(int(match.group(1)), tuple(int(ch) for ch in match.group(2)))

    def __str__(self) -> str:
        return f"{self.r0}]" + "".join(str(r) for r in self.rs)


@dataclass(frozen=True)
class SubcodeCertificate:
    """Subcódigo LCD obtido apagando as linhas `removed` (1-based) da geradora."""

    removed_rows: Tuple[int, ...]
    sub_gen: Gf2Matrix
    sub_params: CodeParams

    def to_dict(self) -> Dict:
        return {
            "removed": list(self.removed_rows),
            "sub_gen": self.sub_gen.to_strings(),
            "params": self.sub_params.to_dict(),
        }


def is_lcd(c: LinearCode) -> bool:
    """Um código é LCD se e somente se det(G·G^T) = 1 sobre GF(2)."""
    gram = c.gram()
    if not gram.is_symmetric():
        raise PreconditionError("G·G^T deveria ser simétrica")
    return gram.det() == 1


def hull_dimension(c: LinearCode) -> int:
    """dim(C ∩ C^⊥) = k - posto(G·G^T)."""
    return c.k - c.gram().rank()


def _restricted_rank(rows: List[int], keep: Iterable[int]) -> int:
    keep = list(keep)
    mask = 0
    for i in keep:
        mask |= 1 << i
    return rank_of_row_ints(rows[i] & mask for i in keep)


def _pr_from_row_ints(rows: List[int]) -> PrSequence:
    k = len(rows)
    r0 = int(any(not (rows[i] >> i) & 1 for i in range(k)))
    rs = []
    for m in range(1, k + 1):
        hit = any(_restricted_rank(rows, subset) == m for subset in combinations(range(k), m))
        rs.append(int(hit))
    return PrSequence(r0, tuple(rs))


def pr_sequence(a: Gf2Matrix) -> PrSequence:
    """
    Calcula a pr-sequência de uma matriz simétrica.

    Args:
        a: matriz quadrada simétrica de ordem k

    Returns:
        PrSequence: a sequência r0]r1...rk

    Raises:
        DimensionMismatchError: se a não for quadrada ou simétrica
        PreconditionError: se k > PR_SEQUENCE_MAX_K
    """
    if not a.is_square():
        raise DimensionMismatchError(f"pr-sequência exige matriz quadrada, recebida {a.rows}x{a.cols}")
    if not a.is_symmetric():
        raise DimensionMismatchError("pr-sequência exige matriz simétrica")
    if a.rows > PR_SEQUENCE_MAX_K:
        raise PreconditionError(f"ordem {a.rows} acima do limite {PR_SEQUENCE_MAX_K}")
    return _pr_from_row_ints(a.row_ints())


def pr_attainable(p: PrSequence) -> bool:
    """
    Decide se a sequência tem uma das três formas atingíveis em característica 2:
    0]11..100..0, 1]0101..0100..0 ou 1]11..100..0 (blocos possivelmente vazios).
    """
    if p.k < 2:
        raise PreconditionError("classification stated for k >= 2")
    body = "".join(str(r) for r in p.rs)
    if p.r0 == 0:
        return bool(_FORM_ONES_THEN_ZEROS.fullmatch(body))
    return bool(_FORM_ALTERNATING.fullmatch(body) or _FORM_ONES_THEN_ZEROS.fullmatch(body))


def conforming_pr_sequences(k: int) -> Set[PrSequence]:
    """Todas as sequências de ordem k aceitas por pr_attainable."""
    candidates = (PrSequence(r0, rs) for r0 in (0, 1) for rs in product((0, 1), repeat=k))
    return {p for p in candidates if pr_attainable(p)}


def symmetric_matrix_rows(k: int, mask: int) -> List[int]:
    """Linhas (como inteiros) da matriz simétrica cujo triângulo superior é dado por `mask`."""
    rows = [0] * k
    bit = 0
    for i in range(k):
        for j in range(i, k):
            if (mask >> bit) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    return rows


def attained_pr_sequences(k: int, partition: Tuple[int, int] = (0, 1)) -> Set[PrSequence]:
    """
    Percorre todas as 2^{k(k+1)/2} matrizes simétricas de ordem k e devolve
    as pr-sequências atingidas. `partition=(i, T)` restringe às máscaras do
    triângulo superior congruentes a i módulo T.
    """
    index, total = partition
    if not 0 <= index < total:
        raise PreconditionError(f"partição inválida {index}/{total}")
    seen: Set[PrSequence] = set()
    for mask in range(index, 1 << (k * (k + 1) // 2), total):
        seen.add(_pr_from_row_ints(symmetric_matrix_rows(k, mask)))
    logger.debug("ordem %d, partição %d/%d: %d sequências", k, index, total, len(seen))
    return seen


def _nonsingular_after_removal(rows: List[int], removed: Tuple[int, ...]) -> bool:
    keep = [i for i in range(len(rows)) if i not in removed]
    return _restricted_rank(rows, keep) == len(keep)


def _certificate(c: LinearCode, removed: Tuple[int, ...]) -> SubcodeCertificate:
    sub = LinearCode(c.gen.delete_rows(removed))
    return SubcodeCertificate(
        removed_rows=tuple(i + 1 for i in removed),
        sub_gen=sub.gen,
        sub_params=CodeParams(sub.n, sub.k, min_distance(sub)),
    )


def extract_lcd_subcode(c: LinearCode) -> SubcodeCertificate:
    """
    Extrai um subcódigo LCD apagando linhas da geradora: uma linha quando k é
    ímpar, duas quando k é par (k >= 4). As remoções são testadas em ordem
    crescente (pares em ordem lexicográfica) e a primeira válida é usada.

    Para k = 2 a remoção de uma linha é tentada sem garantia.

    Raises:
        PreconditionError: se o código não for LCD, se k = 1, ou se k = 2 e
            nenhuma linha puder ser removida
    """
    if c.k < 2:
        raise PreconditionError("extração exige k >= 2")
    if not is_lcd(c):
        raise PreconditionError("o código não é LCD")
    rows = c.gram().row_ints()
    size = 1 if c.k % 2 == 1 or c.k == 2 else 2
    for removed in combinations(range(c.k), size):
        if _nonsingular_after_removal(rows, removed):
            return _certificate(c, removed)
    if c.k == 2:
        raise PreconditionError("no guarantee: nenhuma linha removível para k = 2")
    raise LCDToolkitError(f"nenhuma remoção de {size} linha(s) preserva LCD; verifique a entrada")
