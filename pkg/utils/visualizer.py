# Saída das tabelas em markdown, csv e json
import json
from typing import Dict, List, Optional

from core.errors import LCDToolkitError, PreconditionError
from solver.tables import KIND_LCK, LCDTable, TableEntry

FORMATS = ("markdown", "csv", "json")


def table_document(table: LCDTable, timings: bool = False, discrepancies: Optional[List[Dict]] = None) -> Dict:
    document = {
        "kind": table.kind,
        "max_n": table.max_n,
        "entries": [entry.to_dict(timings) for entry in table],
    }
    if discrepancies is not None:
        document["discrepancies"] = discrepancies
    return document


def emit(
    table: LCDTable,
    fmt: str = "markdown",
    timings: bool = False,
    discrepancies: Optional[List[Dict]] = None,
) -> str:
    """
    Renderiza a tabela. A saída depende só do conteúdo da tabela (e de
    `timings` no json), então tabelas iguais geram documentos idênticos.

    Args:
        table: tabela LCD ou LCK
        fmt: markdown, csv ou json
        timings: inclui elapsed_ms no json
        discrepancies: diferenças em relação à tabela publicada (só no json)

    Returns:
        str: o documento
    """
    if fmt not in FORMATS:
        raise LCDToolkitError(f"formato desconhecido: {fmt}")
    if fmt == "json":
        return json.dumps(table_document(table, timings, discrepancies), indent=2) + "\n"
    star = table.kind == KIND_LCK
    if table.max_n == 0 or len(table) == 0:
        if fmt == "markdown":
            return "| n |\n|---|\n"
        return "n\n"
    frame = table.to_frame(star=star)
    if fmt == "markdown":
        return frame.to_markdown() + "\n"
    return frame.to_csv(index_label="n")


def load_table_json(text: str) -> LCDTable:
    """Reconstrói uma tabela a partir do json gerado por emit."""
    try:
        document = json.loads(text)
        table = LCDTable(document["kind"], document["max_n"])
        for record in document["entries"]:
            table.set(TableEntry.from_dict(record))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"documento de tabela inválido: {exc}")
    return table
