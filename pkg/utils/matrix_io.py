# Leitura e escrita de matrizes binárias no formato texto (uma linha por linha da matriz)
import sys
from pathlib import Path
from typing import Iterable, List, Optional, TextIO

from core.errors import MatrixFormatError
from core.gf2_matrix import Gf2Matrix


def parse_matrix_text(text: str) -> Gf2Matrix:
    """
    Converte o texto de uma matriz em Gf2Matrix.

    Formato: uma linha da matriz por linha de texto, só caracteres '0'/'1';
    linhas iniciadas por '#' são comentários e linhas em branco são ignoradas.

    Args:
        text: conteúdo do arquivo

    Returns:
        Gf2Matrix: a matriz lida

    Raises:
        MatrixFormatError: caractere inválido, linhas de comprimentos
            diferentes ou nenhuma linha
    """
    rows: List[str] = []
    width: Optional[int] = None
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        bad = [ch for ch in line if ch not in "01"]
        if bad:
            raise MatrixFormatError(f"caractere inválido {bad[0]!r}", line=number)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise MatrixFormatError(f"comprimento {len(line)} difere de {width}", line=number)
        rows.append(line)
    if not rows:
        raise MatrixFormatError("nenhuma linha de matriz encontrada")
    return Gf2Matrix.from_strings(rows)


def read_matrix(path: str, stdin: Optional[TextIO] = None) -> Gf2Matrix:
    """Lê a matriz de um arquivo, ou da entrada padrão quando path é '-'."""
    if path == "-":
        return parse_matrix_text((stdin or sys.stdin).read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MatrixFormatError(f"arquivo não encontrado: {path}")
    except UnicodeDecodeError as exc:
        raise MatrixFormatError(f"arquivo {path} não está em UTF-8: {exc.reason}")
    except OSError as exc:
        raise MatrixFormatError(f"não foi possível ler {path}: {exc.strerror or exc}")
    return parse_matrix_text(text)


def format_matrix(m: Gf2Matrix, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.extend(m.to_strings())
    return "\n".join(lines) + "\n"


def write_matrix(m: Gf2Matrix, path: str, comments: Iterable[str] = ()):
    Path(path).write_text(format_matrix(m, comments), encoding="utf-8")
