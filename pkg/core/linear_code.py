# Códigos lineares binários: geradora, forma padrão, dual e distância mínima
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from core.errors import DimensionMismatchError, DistanceBudgetError, PreconditionError, TrivialCodeError
from core.gf2_matrix import Gf2Matrix, popcount_array

logger = logging.getLogger(__name__)

MIN_DISTANCE_MAX_K = 28
# linhas combinadas de uma vez numa tabela vetorizada; as demais seguem o código de Gray
_TABLE_ROWS = 14


@dataclass(frozen=True)
class CodeParams:
    """Parâmetros [n,k,d] de um código linear binário."""

    n: int
    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or not 1 <= self.d <= self.n:
            raise PreconditionError(f"parâmetros inválidos [{self.n},{self.k},{self.d}]")

    def to_dict(self) -> Dict[str, int]:
        return {"n": self.n, "k": self.k, "d": self.d}

    def __str__(self) -> str:
        return f"[{self.n},{self.k},{self.d}]"


class LinearCode:
    """
    Código linear binário [n,k] guardado pela sua matriz geradora (k x n, posto k).
    Use `from_generator` para matrizes possivelmente redundantes.
    """

    __slots__ = ("n", "k", "gen", "standard")

    def __init__(self, gen: Gf2Matrix):
        if gen.rows == 0:
            raise TrivialCodeError("trivial code: geradora sem linhas")
        if gen.rank() != gen.rows:
            raise DimensionMismatchError(
                f"geradora {gen.rows}x{gen.cols} não tem posto completo; use from_generator"
            )
        self.gen = gen
        self.n = gen.cols
        self.k = gen.rows
        self.standard = gen.select_columns(range(self.k)) == Gf2Matrix.identity(self.k)

    def params(self) -> CodeParams:
        return CodeParams(self.n, self.k, min_distance(self))

    def gram(self) -> Gf2Matrix:
        """G·G^T, a matriz de Gram da geradora."""
        return self.gen.mul(self.gen.transpose())

    def same_code(self, other: "LinearCode") -> bool:
        """Verdadeiro se as duas geradoras geram o mesmo conjunto de palavras."""
        if (self.n, self.k) != (other.n, other.k):
            return False
        stacked = Gf2Matrix.from_rows(self.gen.data + other.gen.data)
        return stacked.rank() == self.k

    def codeword_blocks(self) -> Iterator[np.ndarray]:
        return _gray_blocks(self.gen.words)

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}]"


def from_generator(g: Gf2Matrix) -> LinearCode:
    """
    Cria o código gerado pelas linhas de g. Linhas dependentes são descartadas
    (com aviso) e o código passa a ter k = posto(g).
    """
    if g.rows == 0:
        raise TrivialCodeError("trivial code: geradora sem linhas")
    rref, pivots = g.row_reduce()
    if not pivots:
        raise TrivialCodeError("trivial code: a geradora é nula")
    if len(pivots) < g.rows:
        logger.warning(
            "geradora com %d linhas tem posto %d; linhas dependentes descartadas",
            g.rows,
            len(pivots),
        )
        return LinearCode(rref.select_rows(range(len(pivots))))
    return LinearCode(g)


def standard_form(c: LinearCode) -> Tuple[LinearCode, Tuple[int, ...]]:
    """
    Forma padrão [I_k | A] de um código equivalente.

    Returns:
        tuple: (código em forma padrão, permutação) onde a coluna j do novo
        código é a coluna permutation[j - 1] do original; índices 1-based,
        como em principal_submatrix e nos certificados de subcódigo
    """
    rref, pivots = c.gen.row_reduce()
    pivot_set = set(pivots)
    order = list(pivots) + [j for j in range(c.n) if j not in pivot_set]
    return LinearCode(rref.select_columns(order)), tuple(j + 1 for j in order)


def _span_table(words: np.ndarray) -> np.ndarray:
    """Todas as 2^r combinações das linhas dadas; o índice i usa as linhas dos bits de i."""
    table = np.zeros((1, words.shape[1]), dtype=np.uint64)
    for row in words:
        table = np.concatenate([table, table ^ row])
    return table


def _gray_blocks(words: np.ndarray) -> Iterator[np.ndarray]:
    """
    Enumera as palavras do código em blocos. As primeiras linhas formam uma
    tabela fixa; as restantes são percorridas em código de Gray refletido, de
    modo que cada bloco novo custa uma única soma de linha. O primeiro bloco
    começa pela palavra nula.
    """
    low = min(words.shape[0], _TABLE_ROWS)
    table = _span_table(words[:low])
    high = words[low:]
    offset = np.zeros(words.shape[1], dtype=np.uint64)
    yield table
    for step in range(1, 1 << high.shape[0]):
        offset = offset ^ high[(step & -step).bit_length() - 1]
        yield table ^ offset


def _block_weights(block: np.ndarray) -> np.ndarray:
    if block.shape[1] == 0:
        return np.zeros(block.shape[0], dtype=np.int64)
    return popcount_array(block).sum(axis=1)


def _check_budget(k: int):
    if k > MIN_DISTANCE_MAX_K:
        raise DistanceBudgetError(
            f"k={k} acima do limite {MIN_DISTANCE_MAX_K} da enumeração; use bounded variant"
        )


def min_distance(c: LinearCode) -> int:
    """
    Distância mínima por enumeração exaustiva das 2^k - 1 palavras não nulas.

    Raises:
        DistanceBudgetError: se k > MIN_DISTANCE_MAX_K
    """
    _check_budget(c.k)
    best = c.n
    for index, block in enumerate(c.codeword_blocks()):
        weights = _block_weights(block)
        if index == 0:
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


def min_distance_at_least(c: LinearCode, t: int) -> bool:
    """Verdadeiro se toda palavra não nula tem peso >= t; para no primeiro contraexemplo."""
    if t <= 1:
        return True
    _check_budget(c.k)
    for index, block in enumerate(c.codeword_blocks()):
        weights = _block_weights(block)
        if index == 0:
            weights = weights[1:]
        if weights.size and int(weights.min()) < t:
            return False
    return True


def naive_min_distance(c: LinearCode) -> int:
    """Distância mínima palavra a palavra, sem Gray nem vetorização (referência para testes)."""
    _check_budget(c.k)
    rows = c.gen.row_ints()
    best = c.n
    for message in range(1, 1 << c.k):
        word = 0
        for i, row in enumerate(rows):
            if (message >> i) & 1:
                word ^= row
        best = min(best, bin(word).count("1"))
    return best


def dual(c: LinearCode) -> LinearCode:
    """
    Código dual [n, n-k]. Para a forma padrão [I_k | A] a geradora é
    [A^T | I_{n-k}] com as colunas devolvidas à ordem original.
    """
    if c.k == c.n:
        raise TrivialCodeError("dual is the zero code")
    std, permutation = standard_form(c)
    a = std.gen.select_columns(range(c.k, c.n))
    h = a.transpose().hstack(Gf2Matrix.identity(c.n - c.k))
    inverse = [0] * c.n
    for position, column in enumerate(permutation):
        inverse[column - 1] = position
    return LinearCode(h.select_columns(inverse))


def _enumerate_distribution(c: LinearCode) -> List[int]:
    counts = np.zeros(c.n + 1, dtype=np.int64)
    for block in c.codeword_blocks():
        counts += np.bincount(_block_weights(block), minlength=c.n + 1)
    return [int(v) for v in counts]


def krawtchouk(n: int, j: int, i: int) -> int:
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams(distribution: Sequence[int], n: int, dual_dimension: int) -> List[int]:
    """
    Distribuição de pesos do código a partir da distribuição do seu dual
    (transformada de MacWilliams com polinômios de Krawtchouk).
    """
    size = 1 << dual_dimension
    result = []
    for j in range(n + 1):
        total = sum(b * krawtchouk(n, j, i) for i, b in enumerate(distribution) if b)
        if total % size:
            raise PreconditionError("distribuição não corresponde a um código linear")
        result.append(total // size)
    return result


def weight_distribution(c: LinearCode) -> List[int]:
    """
    A_0..A_n do código, enumerando o menor entre C e C^⊥.

    Returns:
        list: número de palavras de cada peso
    """
    if c.k <= c.n - c.k or c.k == c.n:
        _check_budget(c.k)
        return _enumerate_distribution(c)
    d = dual(c)
    _check_budget(d.k)
    return macwilliams(_enumerate_distribution(d), c.n, d.k)
