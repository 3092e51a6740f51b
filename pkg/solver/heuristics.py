# Limites superiores e estimativas usados para ordenar e podar as buscas
from math import comb
from typing import Dict, Optional

from core.errors import PreconditionError
from solver.constructions import codim_distance_cap, griesmer_length, lcd_codim1_value, lcd_n1_value, lcd_n2_value


def singleton_bound(n: int, k: int) -> int:
    """
    Singleton para códigos binários não triviais: os únicos códigos MDS binários
    são [n,1,n], [n,n-1,2] e [n,n,1]; para 2 <= k <= n-2 vale d <= n - k.
    """
    if k == 1:
        return n
    if k >= n - 1:
        return n - k + 1
    return n - k


def griesmer_max_distance(n: int, k: int) -> int:
    """Maior d com griesmer_length(k, d) <= n."""
    d = 1
    while griesmer_length(k, d + 1) <= n:
        d += 1
    return d


def upper_bound_distance(n: int, k: int, neighbours: Optional[Dict[int, int]] = None) -> int:
    """
    Limite superior para LCD[n,k].

    Combina os valores fechados de k = 1, k = 2 e k = n - 1, o Singleton não trivial,
    Griesmer, o teto de codimensão e, se fornecidos, os valores vizinhos da
    mesma linha da tabela: LCD[n,k] <= LCD[n,k-1] para k ímpar e
    LCD[n,k] <= LCD[n,k-2] para k par.

    Args:
        n: comprimento
        k: dimensão
        neighbours: valores conhecidos LCD[n, k'] indexados por k'

    Returns:
        int: limite superior (>= 1)
    """
    if not 1 <= k <= n:
        raise PreconditionError(f"parâmetros inválidos n={n}, k={k}")
    if k == 1:
        return lcd_n1_value(n)
    if k == 2:
        return lcd_n2_value(n)
    if k == n - 1:
        return lcd_codim1_value(n)
    bound = min(singleton_bound(n, k), griesmer_max_distance(n, k))
    codim = n - k
    if codim >= 2 and codim_distance_cap(n, codim) is not None:
        bound = min(bound, codim_distance_cap(n, codim))
    if neighbours:
        step = 1 if k % 2 else 2
        known = neighbours.get(k - step)
        if known is not None and known >= 1:
            bound = min(bound, known)
    return max(bound, 1)


def max_dimension_for_distance(n: int, d: int) -> int:
    """Maior k para o qual upper_bound_distance(n, k) >= d (0 se nenhum)."""
    for k in range(n, 0, -1):
        if griesmer_length(k, d) <= n and upper_bound_distance(n, k) >= d:
            return k
    return 0


def projected_candidates(n: int, k: int, reduce_columns: bool = True) -> int:
    """Número de matrizes A que a busca percorre sem poda."""
    r = n - k
    if reduce_columns:
        return comb((1 << k) + r - 1, r)
    return 1 << (k * r)
