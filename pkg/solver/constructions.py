# Construções explícitas de códigos LCD e fórmulas de limites
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from core.errors import PreconditionError
from core.gf2_matrix import Gf2Matrix
from core.linear_code import LinearCode

logger = logging.getLogger(__name__)

# rótulos das construções fechadas no JSON de `construct`
SOURCE_N2_6M_PLUS_1 = "Prop2(i)"
SOURCE_N2_6M_PM_2 = "Prop2(ii)"
SOURCE_N2_3I_ODD = "Prop2(iii)"
SOURCE_N2_3I_EVEN = "Prop3(i)"
SOURCE_N2_3I_MINUS_1 = "Prop3(ii)"
SOURCE_CODIM = "Prop4"


@dataclass(frozen=True)
class TwoDimBlocks:
    """
    Código [n,2] descrito por blocos de colunas: i1 colunas 10, i2 colunas 11,
    i3 colunas 01 e i0 colunas nulas (transpostas). A linha 1 cobre os blocos
    1-2 e a linha 2 os blocos 2-3.
    """

    i1: int
    i2: int
    i3: int
    i0: int = 0

    def __post_init__(self):
        if min(self.i1, self.i2, self.i3, self.i0) < 0:
            raise PreconditionError(f"blocos negativos: {self}")

    @property
    def n(self) -> int:
        return self.i1 + self.i2 + self.i3 + self.i0

    @property
    def full_rank(self) -> bool:
        return sum(1 for i in (self.i1, self.i2, self.i3) if i) >= 2

    def generator(self) -> Gf2Matrix:
        top = [1] * (self.i1 + self.i2) + [0] * (self.i3 + self.i0)
        bottom = [0] * self.i1 + [1] * (self.i2 + self.i3) + [0] * self.i0
        return Gf2Matrix.from_bits([top, bottom])

    def code(self) -> LinearCode:
        if not self.full_rank:
            raise PreconditionError(f"blocos {self.as_tuple()} não geram um código de dimensão 2")
        return LinearCode(self.generator())

    def distance(self) -> int:
        # pesos das três palavras não nulas: linha 1, linha 2 e a soma
        return min(self.i1 + self.i2, self.i2 + self.i3, self.i1 + self.i3)

    def gram(self) -> Gf2Matrix:
        a = (self.i1 + self.i2) % 2
        b = self.i2 % 2
        c = (self.i2 + self.i3) % 2
        return Gf2Matrix.from_bits([[a, b], [b, c]])

    def is_lcd(self) -> bool:
        return self.gram().det() == 1

    def as_tuple(self) -> Tuple[int, int, int]:
        return self.i1, self.i2, self.i3


def griesmer_length(k: int, d: int) -> int:
    """Menor n permitido pelo limite de Griesmer: soma de ceil(d / 2^i) para i < k."""
    if k < 1 or d < 1:
        raise PreconditionError(f"griesmer_length exige k, d >= 1 (k={k}, d={d})")
    return sum(-(-d // (1 << i)) for i in range(k))


def lcd_n1_value(n: int) -> int:
    """LCD[n,1]: a geradora precisa ter peso ímpar."""
    if n < 1:
        raise PreconditionError("n deve ser >= 1")
    return n if n % 2 else n - 1


def construct_n1(n: int) -> LinearCode:
    weight = lcd_n1_value(n)
    return LinearCode(Gf2Matrix.from_bits([[1] * weight + [0] * (n - weight)]))


def lcd_n2_value(n: int) -> int:
    """
    Valor exato de LCD[n,2]: floor(2n/3) para n ≡ 1, 2, 3, 4 (mod 6) e
    floor(2n/3) - 1 para n ≡ 0, 5 (mod 6).
    """
    if n < 2:
        raise PreconditionError("LCD[n,2] exige n >= 2")
    value = 2 * n // 3
    return value - 1 if n % 6 in (0, 5) else value


def n2_blocks(n: int) -> Tuple[TwoDimBlocks, str]:
    """
    Blocos (i1, i2, i3) da construção ótima de dimensão 2 para cada classe de n mod 6.

    Returns:
        tuple: (blocos, rótulo da construção)
    """
    if n < 2:
        raise PreconditionError("construção [n,2] exige n >= 2")
    residue = n % 6
    if residue == 1:
        m = n // 6
        return TwoDimBlocks(2 * m + 1, 2 * m - 1, 2 * m + 1), SOURCE_N2_6M_PLUS_1
    if residue == 2:
        m = n // 6
        return TwoDimBlocks(2 * m + 1, 2 * m, 2 * m + 1), SOURCE_N2_6M_PM_2
    if residue == 4:
        m = (n + 2) // 6
        return TwoDimBlocks(2 * m - 1, 2 * m, 2 * m - 1), SOURCE_N2_6M_PM_2
    if residue == 3:
        i = n // 3
        return TwoDimBlocks(i, i, i), SOURCE_N2_3I_ODD
    if residue == 0:
        i = n // 3
        return TwoDimBlocks(i + 1, i - 1, i), SOURCE_N2_3I_EVEN
    i = (n + 1) // 3
    return TwoDimBlocks(i - 1, i - 1, i + 1), SOURCE_N2_3I_MINUS_1


def construct_n2(n: int) -> LinearCode:
    """Código [n,2] LCD com distância mínima lcd_n2_value(n)."""
    blocks, _ = n2_blocks(n)
    return blocks.code()


def construct_codim(n: int, i: int) -> LinearCode:
    """
    Código [n, n-i] LCD com geradora [I_{n-i} | cauda], onde cada linha tem a
    mesma cauda: i uns (i par) ou i-1 uns e um zero (i ímpar). Assim todas as
    linhas têm peso ímpar e duas linhas distintas se cruzam num número par de
    posições, logo G·G^T = I.

    Raises:
        PreconditionError: se i < 2 ou n <= i
    """
    if i < 2 or n <= i:
        raise PreconditionError(f"construct_codim exige i >= 2 e n > i (n={n}, i={i})")
    k = n - i
    tail = [1] * i if i % 2 == 0 else [1] * (i - 1) + [0]
    rows = [[int(r == c) for c in range(k)] + tail for r in range(k)]
    return LinearCode(Gf2Matrix.from_bits(rows))


def lcd_codim1_value(n: int) -> int:
    """
    LCD[n, n-1]: 2 para n ímpar e 1 para n par. Um [n, n-1] com d = 2 tem
    como dual o vetor de uns, que só fica fora do código quando n é ímpar.
    """
    if n < 2:
        raise PreconditionError("LCD[n, n-1] exige n >= 2")
    return 2 if n % 2 else 1


def construct_codim1(n: int) -> LinearCode:
    """[I_{n-1} | 1] para n ímpar (código de peso par); [I_{n-1} | 0] para n par."""
    if n < 2:
        raise PreconditionError("construct_codim1 exige n >= 2")
    k = n - 1
    tail = n % 2
    rows = [[int(r == c) for c in range(k)] + [tail] for r in range(k)]
    return LinearCode(Gf2Matrix.from_bits(rows))


def codim_distance_cap(n: int, i: int) -> Optional[int]:
    """
    Limite d <= 2 para códigos [n, n-i] quando n >= 2^i. Na forma padrão há
    n - i caudas de comprimento i e só 2^i - i - 1 vetores de peso >= 2: ou
    alguma linha tem cauda de peso <= 1, ou duas linhas têm a mesma cauda e
    somam uma palavra de peso 2.

    Returns:
        2 se o argumento se aplica, None caso contrário
    """
    if i < 2:
        raise PreconditionError("codim_distance_cap exige i >= 2")
    return 2 if n >= (1 << i) else None


def lck_vanishes(n: int, d: int) -> bool:
    """
    Verdadeiro quando não existe código LCD [n,k,d] para nenhum k, pelos critérios
    de paridade: n par e d = n - 2i com n >= 6i; n ímpar e d = n - 2i - 1 com n > 6i + 3.
    Pares (n, d) fora desses padrões devolvem False.
    """
    if not 1 <= d <= n:
        raise PreconditionError(f"lck_vanishes exige 1 <= d <= n (n={n}, d={d})")
    if n % 2 == 0:
        if (n - d) % 2:
            return False
        i = (n - d) // 2
        return n >= 6 * i
    if (n - d - 1) % 2 or n - d - 1 < 0:
        return False
    i = (n - d - 1) // 2
    return n > 6 * i + 3


def two_dim_census(n: int) -> List[Tuple[TwoDimBlocks, int, bool]]:
    """
    Todas as classes de blocos (i1, i2, i3, i0) de soma n com posto 2.

    Returns:
        list: (blocos, distância, é LCD) para cada classe
    """
    if n < 2:
        raise PreconditionError("censo de dimensão 2 exige n >= 2")
    census = []
    for i1 in range(n + 1):
        for i2 in range(n + 1 - i1):
            for i3 in range(n + 1 - i1 - i2):
                blocks = TwoDimBlocks(i1, i2, i3, n - i1 - i2 - i3)
                if blocks.full_rank:
                    census.append((blocks, blocks.distance(), blocks.is_lcd()))
    return census


def census_best_distance(n: int) -> int:
    """Maior distância entre os blocos LCD do censo; reproduz lcd_n2_value(n)."""
    best = max(d for _, d, lcd in two_dim_census(n) if lcd)
    logger.debug("censo n=%d: melhor distância LCD %d", n, best)
    return best
