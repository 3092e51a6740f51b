# Álgebra linear densa sobre GF(2) com linhas empacotadas em palavras de 64 bits
import numpy as np
from typing import Iterable, List, Sequence, Tuple

from core.errors import DimensionMismatchError, LCDToolkitError

WORD_BITS = 64

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def _words_for(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def popcount_array(values) -> np.ndarray:
    """
    Conta os bits ligados elemento a elemento.

    Args:
        values: array de inteiros não negativos (até 64 bits)

    Returns:
        np.ndarray: array int64 com o peso de cada elemento
    """
    values = np.asarray(values)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(values).astype(np.int64)
    v = values.astype(np.uint64)
    v = v - ((v >> np.uint64(1)) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return ((v * _H01) >> np.uint64(56)).astype(np.int64)


def _clear_padding(words: np.ndarray, length: int):
    # bits além de `length` ficam sempre zerados (padding canônico)
    rem = length % WORD_BITS
    if rem and words.shape[-1]:
        words[..., -1] &= np.uint64((1 << rem) - 1)


def _pack(bits) -> np.ndarray:
    """Empacota o último eixo de um array de bits em palavras uint64 (bit 0 = coordenada 1)."""
    bits = np.asarray(bits)
    if bits.size and (bits.min() < 0 or bits.max() > 1):
        raise LCDToolkitError("entradas de matriz sobre GF(2) devem ser 0 ou 1")
    bits = bits.astype(np.uint8)
    length = bits.shape[-1]
    words = _words_for(length)
    lead = bits.shape[:-1]
    if words == 0:
        return np.zeros(lead + (0,), dtype=np.uint64)
    padded = np.zeros(lead + (words * WORD_BITS,), dtype=np.uint8)
    padded[..., :length] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, length: int) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint64)
    lead = words.shape[:-1]
    if length == 0:
        return np.zeros(lead + (0,), dtype=np.uint8)
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little")[..., :length]


def _words_to_int(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words.astype("<u8")).tobytes(), "little")


def _int_to_words(value: int, length: int) -> np.ndarray:
    count = _words_for(length)
    if count == 0:
        return np.zeros(0, dtype=np.uint64)
    raw = value.to_bytes(count * 8, "little")
    return np.frombuffer(raw, dtype="<u8").astype(np.uint64)


def rank_of_row_ints(rows: Iterable[int]) -> int:
    """
    Posto sobre GF(2) de linhas representadas como inteiros Python.

    Args:
        rows: linhas, bit j de cada inteiro = coluna j

    Returns:
        int: posto
    """
    basis: List[int] = []
    for value in rows:
        for b in basis:
            value = min(value, value ^ b)
        if value:
            basis.append(value)
            basis.sort(reverse=True)
    return len(basis)


class Gf2Vector:
    """
    Vetor binário de comprimento fixo, empacotado em palavras de 64 bits.
    O bit 0 da primeira palavra é a coordenada 1. Imutável.
    """

    __slots__ = ("length", "words")

    def __init__(self, length: int, words):
        if length < 0:
            raise DimensionMismatchError(f"comprimento negativo: {length}")
        words = np.array(words, dtype=np.uint64).reshape(-1)
        if words.shape[0] != _words_for(length):
            raise DimensionMismatchError(
                f"{words.shape[0]} palavras não correspondem a {length} bits"
            )
        _clear_padding(words, length)
        words.setflags(write=False)
        self.length = length
        self.words = words

    @classmethod
    def from_bits(cls, bits) -> "Gf2Vector":
        bits = np.asarray(bits).reshape(-1)
        return cls(bits.shape[0], _pack(bits))

    @classmethod
    def from_string(cls, text: str) -> "Gf2Vector":
        if any(ch not in "01" for ch in text):
            raise LCDToolkitError(f"vetor binário inválido: {text!r}")
        return cls.from_bits([int(ch) for ch in text])

    @classmethod
    def from_int(cls, value: int, length: int) -> "Gf2Vector":
        return cls(length, _int_to_words(value & ((1 << length) - 1), length))

    @classmethod
    def zeros(cls, length: int) -> "Gf2Vector":
        return cls(length, np.zeros(_words_for(length), dtype=np.uint64))

    @classmethod
    def ones(cls, length: int) -> "Gf2Vector":
        return cls.from_int((1 << length) - 1, length)

    def weight(self) -> int:
        """Peso de Hamming (número de bits ligados)."""
        return int(popcount_array(self.words).sum())

    def to_bits(self) -> np.ndarray:
        return _unpack(self.words, self.length)

    def to_int(self) -> int:
        return _words_to_int(self.words)

    def dot(self, other: "Gf2Vector") -> int:
        """Produto interno padrão sobre GF(2)."""
        return (self & other).weight() & 1

    def _check(self, other: "Gf2Vector"):
        if self.length != other.length:
            raise DimensionMismatchError(
                f"vetores de comprimentos diferentes: {self.length} e {other.length}"
            )

    def __add__(self, other: "Gf2Vector") -> "Gf2Vector":
        self._check(other)
        return Gf2Vector(self.length, self.words ^ other.words)

    __xor__ = __add__

    def __and__(self, other: "Gf2Vector") -> "Gf2Vector":
        self._check(other)
        return Gf2Vector(self.length, self.words & other.words)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise DimensionMismatchError(f"coordenada {index} fora do vetor de comprimento {self.length}")
        word, bit = divmod(index, WORD_BITS)
        return int((self.words[word] >> np.uint64(bit)) & np.uint64(1))

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Vector):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __str__(self) -> str:
        return "".join(str(int(b)) for b in self.to_bits())

    def __repr__(self) -> str:
        return f"Gf2Vector({self})"


class Gf2Matrix:
    """
    Matriz densa sobre GF(2). Cada linha ocupa palavras de 64 bits contíguas;
    operações de linha são XOR de palavras e o peso vem de popcount.

    Todas as operações devolvem novas matrizes: a eliminação gaussiana de
    rank/det trabalha numa cópia, nunca na entrada.
    """

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"dimensões inválidas: {rows}x{cols}")
        words = np.array(words, dtype=np.uint64).reshape(rows, _words_for(cols))
        _clear_padding(words, cols)
        words.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self.words = words

    # ------------------------------------------------------------------
    # construtores

    @classmethod
    def from_bits(cls, bits) -> "Gf2Matrix":
        """
        Cria a matriz a partir de uma lista de listas (ou array numpy) de 0/1.

        Args:
            bits: dados linha a linha

        Returns:
            Gf2Matrix: a matriz correspondente
        """
        arr = np.asarray(bits)
        if arr.ndim != 2:
            if arr.size == 0:
                return cls.zeros(0, 0)
            raise DimensionMismatchError("todas as linhas devem ter o mesmo comprimento")
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "Gf2Matrix":
        lines = list(lines)
        if lines and len({len(line) for line in lines}) != 1:
            raise DimensionMismatchError("todas as linhas devem ter o mesmo comprimento")
        return cls.from_bits([[int(ch) for ch in line] for line in lines])

    @classmethod
    def from_rows(cls, rows: Sequence[Gf2Vector], cols: int = None) -> "Gf2Matrix":
        rows = list(rows)
        if not rows:
            return cls.zeros(0, cols or 0)
        cols = rows[0].length
        if any(r.length != cols for r in rows):
            raise DimensionMismatchError("todas as linhas devem ter o mesmo comprimento")
        return cls(len(rows), cols, np.stack([r.words for r in rows]))

    @classmethod
    def from_row_ints(cls, values: Sequence[int], cols: int) -> "Gf2Matrix":
        values = list(values)
        words = [_int_to_words(v, cols) for v in values]
        if not words:
            return cls.zeros(0, cols)
        return cls(len(values), cols, np.stack(words))

    @classmethod
    def from_column_values(cls, values: Sequence[int], rows: int) -> "Gf2Matrix":
        """Monta a matriz cuja coluna j é o inteiro values[j] (bit i = linha i)."""
        bits = np.zeros((rows, len(values)), dtype=np.uint8)
        for j, value in enumerate(values):
            for i in range(rows):
                bits[i, j] = (value >> i) & 1
        return cls(rows, len(values), _pack(bits))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls.from_bits(np.eye(n, dtype=np.uint8)) if n else cls.zeros(0, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, np.zeros((rows, _words_for(cols)), dtype=np.uint64))

    # ------------------------------------------------------------------
    # acesso

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def data(self) -> List[Gf2Vector]:
        return [self.row(i) for i in range(self.rows)]

    def row(self, index: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.words[index])

    def row_ints(self) -> List[int]:
        return [_words_to_int(self.words[i]) for i in range(self.rows)]

    def column_values(self) -> List[int]:
        """Cada coluna como inteiro, bit i = linha i."""
        arr = self.to_array()
        weights = [1 << i for i in range(self.rows)]
        return [sum(w for w, b in zip(weights, arr[:, j]) if b) for j in range(self.cols)]

    def to_array(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.row(i)[j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    # ------------------------------------------------------------------
    # aritmética

    def transpose(self) -> "Gf2Matrix":
        if self.rows == 0 or self.cols == 0:
            return Gf2Matrix.zeros(self.cols, self.rows)
        return Gf2Matrix.from_bits(self.to_array().T)

    @property
    def T(self) -> "Gf2Matrix":
        return self.transpose()

    def mul(self, other: "Gf2Matrix") -> "Gf2Matrix":
        """
        Produto matricial sobre GF(2): a linha i do resultado é o XOR das
        linhas de `other` selecionadas pelos bits da linha i de `self`.
        """
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"produto {self.rows}x{self.cols} · {other.rows}x{other.cols} incompatível"
            )
        out = np.zeros((self.rows, _words_for(other.cols)), dtype=np.uint64)
        selectors = self.to_array().astype(bool)
        for i in range(self.rows):
            chosen = other.words[selectors[i]]
            if chosen.shape[0]:
                out[i] = np.bitwise_xor.reduce(chosen, axis=0)
        return Gf2Matrix(self.rows, other.cols, out)

    __matmul__ = mul

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"soma {self.shape} + {other.shape} incompatível")
        return Gf2Matrix(self.rows, self.cols, self.words ^ other.words)

    def row_reduce(self) -> Tuple["Gf2Matrix", List[int]]:
        """
        Forma escalonada reduzida por linhas (eliminação de Gauss-Jordan numa cópia).

        Returns:
            tuple: (matriz escalonada, lista de colunas pivô 0-based)
        """
        m = self.words.copy()
        pivots: List[int] = []
        row = 0
        for col in range(self.cols):
            if row == self.rows:
                break
            word, bit = divmod(col, WORD_BITS)
            mask = np.uint64(1 << bit)
            hits = (m[:, word] & mask) != 0
            below = np.flatnonzero(hits[row:])
            if below.size == 0:
                continue
            pivot = row + int(below[0])
            if pivot != row:
                m[[row, pivot]] = m[[pivot, row]]
                hits[[row, pivot]] = hits[[pivot, row]]
            hits[row] = False
            m[hits] ^= m[row]
            pivots.append(col)
            row += 1
        return Gf2Matrix(self.rows, self.cols, m), pivots

    def rank(self) -> int:
        return len(self.row_reduce()[1])

    def det(self) -> int:
        if not self.is_square():
            raise DimensionMismatchError(f"determinante de matriz não quadrada {self.rows}x{self.cols}")
        return 1 if self.rank() == self.rows else 0

    # ------------------------------------------------------------------
    # submatrizes

    def select_rows(self, indices: Sequence[int]) -> "Gf2Matrix":
        indices = list(indices)
        return Gf2Matrix(len(indices), self.cols, self.words[indices] if indices else np.zeros((0, _words_for(self.cols))))

    def select_columns(self, indices: Sequence[int]) -> "Gf2Matrix":
        indices = list(indices)
        if self.rows == 0:
            return Gf2Matrix.zeros(0, len(indices))
        return Gf2Matrix.from_bits(self.to_array()[:, indices].reshape(self.rows, len(indices)))

    def delete_rows(self, indices: Iterable[int]) -> "Gf2Matrix":
        dropped = set(indices)
        return self.select_rows([i for i in range(self.rows) if i not in dropped])

    def hstack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError(f"concatenação de {self.rows} com {other.rows} linhas")
        return Gf2Matrix.from_bits(np.hstack([self.to_array(), other.to_array()]).reshape(self.rows, self.cols + other.cols))

    def principal_submatrix(self, removed: Iterable[int]) -> "Gf2Matrix":
        """
        Remove as linhas e colunas indexadas pelo mesmo conjunto.

        Args:
            removed: índices 1-based a remover

        Returns:
            Gf2Matrix: submatriz principal de ordem rows - |removed|
        """
        if not self.is_square():
            raise DimensionMismatchError("submatriz principal exige matriz quadrada")
        removed = set(removed)
        bad = [i for i in removed if not 1 <= i <= self.rows]
        if bad:
            raise DimensionMismatchError(f"índices fora de 1..{self.rows}: {sorted(bad)}")
        keep = [i for i in range(self.rows) if i + 1 not in removed]
        return self.select_rows(keep).select_columns(keep)

    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def to_strings(self) -> List[str]:
        return ["".join(str(int(b)) for b in row) for row in self.to_array()]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.rows}x{self.cols})"


def mul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    return a.mul(b)


def rank(m: Gf2Matrix) -> int:
    return m.rank()


def det(m: Gf2Matrix) -> int:
    return m.det()


def transpose(m: Gf2Matrix) -> Gf2Matrix:
    return m.transpose()


def principal_submatrix(m: Gf2Matrix, removed: Iterable[int]) -> Gf2Matrix:
    return m.principal_submatrix(removed)


def batch_rank(stack) -> np.ndarray:
    """
    Posto de um lote de matrizes pequenas (até 64 colunas), vetorizado sobre o lote.

    Args:
        stack: array (lote, linhas, colunas) de 0/1

    Returns:
        np.ndarray: posto de cada matriz do lote
    """
    stack = np.asarray(stack, dtype=np.uint8)
    if stack.ndim != 3:
        raise DimensionMismatchError("batch_rank espera um array (lote, linhas, colunas)")
    count, nrows, ncols = stack.shape
    ranks = np.zeros(count, dtype=np.int64)
    if count == 0 or nrows == 0 or ncols == 0:
        return ranks
    if ncols > WORD_BITS:
        raise DimensionMismatchError(f"batch_rank suporta até {WORD_BITS} colunas")
    rows = _pack(stack)[..., 0].copy()
    used = np.zeros((count, nrows), dtype=bool)
    idx = np.arange(count)
    for col in range(ncols):
        mask = np.uint64(1 << col)
        has_bit = (rows & mask) != 0
        candidates = has_bit & ~used
        found = candidates.any(axis=1)
        pivot = candidates.argmax(axis=1)
        pivot_rows = rows[idx, pivot]
        clear = has_bit & found[:, None]
        clear[idx, pivot] = False
        rows = np.where(clear, rows ^ pivot_rows[:, None], rows)
        used[idx[found], pivot[found]] = True
        ranks += found
    return ranks
