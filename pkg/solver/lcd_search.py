# Busca exaustiva de códigos LCD em forma padrão [I_k | A]
"""
Toda geradora [n,k] é equivalente por permutação de coordenadas a uma geradora
[I_k | A]. Permutações preservam a distância e também G·G^T (PP^T = I), e para
[I_k | A] temos G·G^T = I_k + A·A^T. Basta, portanto, percorrer as matrizes A
de ordem k x (n-k). Permutar as colunas de A também não muda nada, então com
`reduce_columns` as colunas são percorridas em ordem não decrescente (como
inteiros com o bit i na linha i+1), ou seja, multiconjuntos de colunas.

A busca é uma DFS coluna a coluna. Para cada mensagem não nula m o vetor W
guarda o peso parcial wt(m) + #{colunas c já colocadas com <m, c> = 1}; cada
coluna restante soma no máximo 1, o que dá a poda min(W) + restantes < d.
A última coluna é avaliada de uma vez para todos os valores possíveis.

A DFS visita as tuplas de colunas em ordem lexicográfica crescente, então a
primeira testemunha encontrada é a menor. A partição (i, T) fica com as
tuplas cuja primeira coluna c satisfaz c mod T = i; a fusão dos resultados
(maior d, depois menor tupla) reproduz a execução sequencial.
"""
import logging
import time
from dataclasses import dataclass, replace
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from core.errors import DistanceBudgetError, PreconditionError, SearchBudgetError
from core.gf2_matrix import Gf2Matrix, batch_rank, popcount_array, rank_of_row_ints
from core.linear_code import CodeParams, LinearCode, krawtchouk
from solver.constructions import codim_distance_cap
from solver.heuristics import max_dimension_for_distance, projected_candidates, upper_bound_distance

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 2_000_000_000
ORACLE_MAX_CELLS = 24
SEARCH_MAX_K = 12
_ORACLE_BATCH = 1 << 14

MODE_MAX_DISTANCE = "max-distance"
MODE_EXISTS = "exists-distance"
MODES = (MODE_MAX_DISTANCE, MODE_EXISTS)

Mapper = Callable[[Callable, Iterable], Iterable]


@dataclass(frozen=True)
class SearchSpec:
    """
    Descrição de uma célula de busca.

    Args:
        n: comprimento
        k: dimensão
        mode: max-distance ou exists-distance
        d: distância alvo (modo exists-distance)
        exact: exige distância exatamente d em vez de >= d
        reduce_columns: percorre multiconjuntos de colunas
        prune_rows: ativa a poda pelo limite min(W) + restantes
        lcd_first: testa LCD antes da distância nas folhas
        partition: (índice, total) da fatia do espaço de busca
    """

    n: int
    k: int
    mode: str = MODE_MAX_DISTANCE
    d: Optional[int] = None
    exact: bool = False
    reduce_columns: bool = True
    prune_rows: bool = True
    lcd_first: bool = False
    partition: Tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.mode not in MODES:
            raise PreconditionError(f"modo desconhecido: {self.mode}")
        if not 1 <= self.k <= self.n:
            raise PreconditionError(f"busca exige 1 <= k <= n (n={self.n}, k={self.k})")
        if self.mode != MODE_MAX_DISTANCE and (self.d is None or not 1 <= self.d <= self.n):
            raise PreconditionError(f"distância alvo inválida: {self.d}")
        index, total = self.partition
        if total < 1 or not 0 <= index < total:
            raise PreconditionError(f"partição inválida {index}/{total}")

    @property
    def strategy(self) -> str:
        parts = [
            "multiset" if self.reduce_columns else "product",
            "pruned" if self.prune_rows else "unpruned",
            "lcd-first" if self.lcd_first else "distance-first",
        ]
        return "/".join(parts)


@dataclass
class SearchResult:
    """
    Resultado de uma busca: parâmetros, testemunha A (bloco de [I_k | A]) e
    a tupla de colunas que a identifica. d = 0 (ou k = 0 no modo LCK) e
    testemunha None quando nada foi encontrado.
    """

    n: int
    k: int
    d: int
    witness: Optional[Gf2Matrix]
    columns: Optional[Tuple[int, ...]]
    visited: int = 0
    elapsed: Optional[float] = None
    strategy: str = ""

    @property
    def found(self) -> bool:
        return self.columns is not None

    @property
    def params(self) -> Optional[CodeParams]:
        return CodeParams(self.n, self.k, self.d) if self.found else None

    def code(self) -> LinearCode:
        if not self.found:
            raise PreconditionError("resultado sem testemunha")
        return LinearCode(Gf2Matrix.identity(self.k).hstack(self.witness))

    def to_dict(self, timings: bool = False) -> Dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "witness_a": self.witness.to_strings() if self.found else None,
            "visited": self.visited,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timings and self.elapsed is not None else None,
            "strategy": self.strategy,
        }


class LCDSearchEngine:
    """
    Núcleo da busca para um par (n, k). As tabelas de paridade e de produtos
    externos são montadas uma vez e reutilizadas por todas as distâncias alvo.
    """

    def __init__(self, n: int, k: int, reduce_columns: bool = True, prune_rows: bool = True, lcd_first: bool = False):
        if not 1 <= k <= n:
            raise PreconditionError(f"busca exige 1 <= k <= n (n={n}, k={k})")
        self.n = n
        self.k = k
        self.r = n - k
        self.reduce_columns = reduce_columns
        self.prune_rows = prune_rows
        self.lcd_first = lcd_first
        self.visited = 0
        self.values = 1 << k
        self._row_mask = (1 << k) - 1
        self._identity = sum(1 << (i * k + i) for i in range(k))
        if self.r > 1:
            if k > SEARCH_MAX_K:
                raise DistanceBudgetError(f"busca limitada a k <= {SEARCH_MAX_K} com n - k >= 2 (k={k})")
            self._build_tables()

    def _build_tables(self):
        messages = np.arange(1, self.values, dtype=np.uint64)
        columns = np.arange(self.values, dtype=np.uint64)
        self.message_weights = popcount_array(messages).astype(np.int16)
        self.parity = np.empty((messages.size, self.values), dtype=np.int16)
        for start in range(0, messages.size, 512):
            chunk = messages[start:start + 512]
            self.parity[start:start + chunk.size] = popcount_array(chunk[:, None] & columns[None, :]) & 1
        # bloco i*k..i*k+k-1 de outer[c] é a linha i de c·c^T
        self.outer = []
        for c in range(self.values):
            value = 0
            for i in range(self.k):
                if (c >> i) & 1:
                    value |= c << (i * self.k)
            self.outer.append(value)

    def nonsingular(self, gram: int) -> bool:
        rows = [(gram >> (i * self.k)) & self._row_mask for i in range(self.k)]
        return rank_of_row_ints(rows) == self.k

    def _accepts(self, distance: int, target: int, exact: bool) -> bool:
        return distance == target if exact else distance >= target

    def exists(self, target: int, exact: bool = False, partition: Tuple[int, int] = (0, 1)) -> Optional[Tuple[int, ...]]:
        """
        Procura a menor tupla de colunas (na fatia `partition`) cujo código é
        LCD com distância >= target (ou = target se exact).

        Returns:
            tuple ou None: colunas da testemunha
        """
        index, total = partition
        if self.r == 0:
            # só a identidade: LCD com distância 1
            if index != 0:
                return None
            self.visited += 1
            return () if self._accepts(1, target, exact) else None
        if self.r == 1:
            return self._single_column(target, exact, partition)
        return self._descend((), 0, self.message_weights, self._identity, target, exact, partition)

    def _single_column(self, target: int, exact: bool, partition: Tuple[int, int]) -> Optional[Tuple[int, ...]]:
        # [I_k | c]: d = 2 só para c = 1...1, senão d = 1; I + c·c^T é invertível sse wt(c) é par
        index, total = partition
        full = self.values - 1
        if self._accepts(1, target, exact):
            candidates = range(index, self.values, total)
        else:
            candidates = [full] if full % total == index else []
        for c in candidates:
            self.visited += 1
            distance = 2 if c == full else 1
            if self._accepts(distance, target, exact) and bin(c).count("1") % 2 == 0:
                return (c,)
        return None

    def _choices(self, start: int, depth: int, partition: Tuple[int, int]) -> range:
        if depth == 0:
            index, total = partition
            return range(index, self.values, total)
        return range(start, self.values)

    def _descend(self, prefix, start, weights, gram, target, exact, partition):
        depth = len(prefix)
        remaining = self.r - depth
        if remaining == 1:
            return self._last_column(prefix, start, weights, gram, target, exact, partition)
        for c in self._choices(start, depth, partition):
            self.visited += 1
            extended = weights + self.parity[:, c]
            if self.prune_rows:
                low = int(extended.min())
                if low + remaining - 1 < target or (exact and low > target):
                    continue
            found = self._descend(
                prefix + (c,),
                c if self.reduce_columns else 0,
                extended,
                gram ^ self.outer[c],
                target,
                exact,
                partition,
            )
            if found is not None:
                return found
        return None

    def _last_column(self, prefix, start, weights, gram, target, exact, partition):
        values = np.fromiter(self._choices(start, len(prefix), partition), dtype=np.int64)
        self.visited += int(values.size)
        if self.lcd_first:
            values = np.array([v for v in values if self.nonsingular(gram ^ self.outer[int(v)])], dtype=np.int64)
        if values.size == 0:
            return None
        distances = (weights[:, None] + self.parity[:, values]).min(axis=0)
        passing = values[distances == target] if exact else values[distances >= target]
        for value in passing:
            value = int(value)
            if self.lcd_first or self.nonsingular(gram ^ self.outer[value]):
                return prefix + (value,)
        return None

    def distance_of(self, columns: Sequence[int]) -> int:
        if not columns:
            return 1
        if self.r == 1:
            return 2 if columns[0] == self.values - 1 else 1
        weights = self.message_weights.copy()
        for c in columns:
            weights = weights + self.parity[:, c]
        return int(weights.min())


def witness_matrix(columns: Sequence[int], k: int) -> Gf2Matrix:
    """Bloco A (k x r) cuja coluna j é columns[j] lida com o bit i na linha i+1."""
    return Gf2Matrix.from_column_values(list(columns), k)


def check_budget(n: int, k: int, reduce_columns: bool = True, budget: int = DEFAULT_SEARCH_BUDGET, force: bool = False) -> int:
    estimate = projected_candidates(n, k, reduce_columns)
    if estimate > budget and not force:
        raise SearchBudgetError(estimate, budget)
    return estimate


def _exists_job(spec: SearchSpec) -> SearchResult:
    """Uma fatia de exists-distance; função de topo para poder ser enviada a processos."""
    started = time.perf_counter()
    engine = LCDSearchEngine(spec.n, spec.k, spec.reduce_columns, spec.prune_rows, spec.lcd_first)
    columns = engine.exists(spec.d, spec.exact, spec.partition)
    elapsed = time.perf_counter() - started
    logger.debug(
        "n=%d k=%d d=%d exact=%s fatia %d/%d: %s após %d candidatos",
        spec.n, spec.k, spec.d, spec.exact, spec.partition[0], spec.partition[1],
        "testemunha" if columns is not None else "nada", engine.visited,
    )
    if columns is None:
        return SearchResult(spec.n, spec.k, 0, None, None, engine.visited, elapsed, spec.strategy)
    distance = spec.d if spec.exact else engine.distance_of(columns)
    return SearchResult(spec.n, spec.k, distance, witness_matrix(columns, spec.k), columns, engine.visited, elapsed, spec.strategy)


def merge_results(results: Sequence[SearchResult]) -> SearchResult:
    """
    Funde resultados de fatias: maior d e, no empate, menor tupla de colunas.
    Associativa e comutativa; soma os candidatos visitados.
    """
    results = list(results)
    if not results:
        raise PreconditionError("nada para fundir")
    found = [r for r in results if r.found]
    if found:
        best = min(found, key=lambda r: (-r.d, -r.k, r.columns))
    else:
        best = results[0]
    elapsed = [r.elapsed for r in results if r.elapsed is not None]
    return replace(
        best,
        visited=sum(r.visited for r in results),
        elapsed=max(elapsed) if elapsed else None,
    )


def _exists_round(spec: SearchSpec, shards: int, mapper: Optional[Mapper]) -> SearchResult:
    if shards <= 1:
        return _exists_job(spec)
    jobs = [replace(spec, partition=(i, shards)) for i in range(shards)]
    run = mapper or map
    return merge_results(list(run(_exists_job, jobs)))


def exists_lcd(
    n: int,
    k: int,
    d: int,
    exact: bool = False,
    partition: Tuple[int, int] = (0, 1),
    budget: int = DEFAULT_SEARCH_BUDGET,
    force: bool = False,
) -> Optional[Gf2Matrix]:
    """
    Procura um código LCD [I_k | A] com distância >= d (ou = d se exact).

    Returns:
        Gf2Matrix ou None: o bloco A da menor testemunha
    """
    check_budget(n, k, True, budget, force)
    spec = SearchSpec(n, k, MODE_EXISTS, d, exact, partition=partition)
    return _exists_job(spec).witness


def search_lcd(
    spec: SearchSpec,
    budget: int = DEFAULT_SEARCH_BUDGET,
    force: bool = False,
    hints: Optional[Dict[int, int]] = None,
    shards: int = 1,
    mapper: Optional[Mapper] = None,
) -> SearchResult:
    """
    LCD[n,k] com testemunha (modo max-distance), ou um único teste de
    existência (modo exists-distance).

    No modo max-distance a busca começa no limite superior de
    upper_bound_distance (com `hints` = valores vizinhos já conhecidos) e desce
    até a primeira distância com testemunha.

    Args:
        spec: célula de busca
        budget: máximo de candidatos projetados sem `force`
        force: ignora o orçamento
        hints: valores LCD[n, k'] conhecidos
        shards: número de fatias; com shards > 1 a fatia de `spec` é ignorada
        mapper: função no estilo map para despachar as fatias (ex. executor.map)

    Raises:
        SearchBudgetError: se a projeção exceder o orçamento
    """
    check_budget(spec.n, spec.k, spec.reduce_columns, budget, force)
    started = time.perf_counter()
    if spec.mode == MODE_EXISTS:
        result = _exists_round(spec, shards, mapper)
        return replace(result, elapsed=time.perf_counter() - started)

    bound = upper_bound_distance(spec.n, spec.k, hints)
    logger.info("LCD[%d,%d]: limite superior %d", spec.n, spec.k, bound)
    visited = 0
    result = None
    for d in range(bound, 0, -1):
        result = _exists_round(replace(spec, mode=MODE_EXISTS, d=d, exact=False), shards, mapper)
        visited += result.visited
        if result.found:
            break
        logger.info("LCD[%d,%d]: nenhum código com d >= %d", spec.n, spec.k, d)
    strategy = f"top-down<={bound}/{spec.strategy}"
    return replace(result, visited=visited, elapsed=time.perf_counter() - started, strategy=strategy)


def search_lck(
    n: int,
    d: int,
    hints: Optional[Dict[int, int]] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    force: bool = False,
    shards: int = 1,
    mapper: Optional[Mapper] = None,
    lcd_first: bool = False,
) -> SearchResult:
    """
    LCK[n,d]: maior k com um código LCD [n,k] de distância exatamente d.

    Desce k a partir do maior valor compatível com Griesmer e o Singleton não
    trivial, pulando os k cujo LCD[n,k] conhecido (em `hints`) fica abaixo de d.

    Returns:
        SearchResult: k = 0 e testemunha None quando não existe código
    """
    if not 1 <= d <= n:
        raise PreconditionError(f"search_lck exige 1 <= d <= n (n={n}, d={d})")
    started = time.perf_counter()
    visited = 0
    top = max_dimension_for_distance(n, d)
    for k in range(top, 0, -1):
        if hints and hints.get(k) is not None and hints[k] < d:
            continue
        if upper_bound_distance(n, k) < d:
            continue
        if k > SEARCH_MAX_K and n - k > 1:
            columns = _closed_form_columns(n, k, d)
            logger.info("LCK[%d,%d] = %d (forma fechada)", n, d, k)
            return SearchResult(n, k, d, witness_matrix(columns, k), columns, visited,
                                time.perf_counter() - started, f"closed-form<={top}")
        check_budget(n, k, True, budget, force)
        spec = SearchSpec(n, k, MODE_EXISTS, d, exact=True, lcd_first=lcd_first)
        result = _exists_round(spec, shards, mapper)
        visited += result.visited
        if result.found:
            logger.info("LCK[%d,%d] = %d", n, d, k)
            return replace(result, visited=visited, elapsed=time.perf_counter() - started,
                           strategy=f"descend-k<={top}/{spec.strategy}")
    logger.info("LCK[%d,%d] = 0", n, d)
    return SearchResult(n, 0, d, None, None, visited, time.perf_counter() - started, f"descend-k<={top}")


def _closed_form_columns(n: int, k: int, d: int) -> Tuple[int, ...]:
    """
    Testemunha com distância exatamente d para k acima de SEARCH_MAX_K, onde
    a busca não monta tabelas: A nula para d = 1 e, com n >= 2^(n-k), a cauda
    de construct_codim (colunas de uns, mais uma nula se n - k for ímpar).
    """
    r = n - k
    if d == 1:
        return (0,) * r
    if d == 2 and codim_distance_cap(n, r) is not None:
        full = (1 << k) - 1
        return (0,) * (r % 2) + (full,) * (r - r % 2)
    raise DistanceBudgetError(f"LCK[{n},{d}]: busca limitada a k <= {SEARCH_MAX_K} com n - k >= 2 (k={k})")


def naive_oracle(n: int, k: int) -> int:
    """
    Máximo d sobre TODAS as matrizes A (sem redução nem poda) com
    det(I + A·A^T) = 1. Referência para validar a busca reduzida.

    Raises:
        PreconditionError: se k·(n-k) > ORACLE_MAX_CELLS
    """
    if not 1 <= k <= n:
        raise PreconditionError(f"oráculo exige 1 <= k <= n (n={n}, k={k})")
    r = n - k
    cells = k * r
    if cells > ORACLE_MAX_CELLS:
        raise PreconditionError(f"k·(n-k) = {cells} acima do limite {ORACLE_MAX_CELLS} do oráculo")
    if r == 0:
        return 1
    eye = np.eye(k, dtype=np.int64)
    shifts = np.arange(cells, dtype=np.int64)
    best = 0
    if k <= r:
        messages = ((np.arange(1, 1 << k)[:, None] >> np.arange(k)) & 1).astype(np.int64)
        message_weights = messages.sum(axis=1)
    else:
        duals = ((np.arange(1 << r)[:, None] >> np.arange(r)) & 1).astype(np.int64)
        dual_weights = duals.sum(axis=1)
        kraw = np.array([[krawtchouk(n, j, i) for i in range(n + 1)] for j in range(n + 1)], dtype=np.int64)
    for start in range(0, 1 << cells, _ORACLE_BATCH):
        index = np.arange(start, min(start + _ORACLE_BATCH, 1 << cells), dtype=np.int64)
        a = ((index[:, None] >> shifts) & 1).reshape(-1, k, r)
        gram = (np.einsum("bir,bjr->bij", a, a) + eye) % 2
        lcd = batch_rank(gram.astype(np.uint8)) == k
        if not lcd.any():
            continue
        a = a[lcd]
        if k <= r:
            weights = (np.einsum("mk,bkr->bmr", messages, a) % 2).sum(axis=2) + message_weights
            distances = weights.min(axis=1)
        else:
            weights = (np.einsum("bkr,ur->buk", a, duals) % 2).sum(axis=2) + dual_weights
            counts = np.stack([(weights == w).sum(axis=1) for w in range(n + 1)], axis=1)
            distribution = (counts @ kraw.T) >> r
            distances = np.argmax(distribution[:, 1:] > 0, axis=1) + 1
        best = max(best, int(distances.max()))
    return best
