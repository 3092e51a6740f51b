#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Toolkit de códigos LCD binários - ponto de entrada de linha de comando

Verifica a propriedade LCD, calcula distâncias, pr-sequências e subcódigos,
gera as construções fechadas e reproduz as tabelas LCD[n,k] e LCK[n,d] por
busca exaustiva.

Exemplos:
    python main.py check gen.txt
    python main.py search-lcd --n 6 --k 3
    python main.py --threads 4 table --kind lck --max-n 12 --format markdown
"""

import sys
import argparse
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO

# Adicionar o diretório do projeto ao path
sys.path.append(str(Path(__file__).parent))

from core import __version__
from core.errors import LCDToolkitError, PreconditionError
from core.gf2_matrix import Gf2Matrix
from core.linear_code import dual, from_generator, min_distance, weight_distribution
from core.memory_system import CACHE_ENV, CellMemory
from core.validator import (
    attained_pr_sequences,
    conforming_pr_sequences,
    extract_lcd_subcode,
    hull_dimension,
    is_lcd,
    pr_attainable,
    pr_sequence,
)
from solver.constructions import (
    SOURCE_CODIM,
    census_best_distance,
    construct_codim,
    lcd_n2_value,
    n2_blocks,
    two_dim_census,
)
from solver.lcd_search import (
    DEFAULT_SEARCH_BUDGET,
    MODE_EXISTS,
    MODE_MAX_DISTANCE,
    SearchSpec,
    naive_oracle,
    search_lcd,
    search_lck,
)
from solver.tables import (
    DEFAULT_MAX_N,
    KIND_LCD,
    KIND_LCK,
    PUBLISHED_LCK_ERRATA,
    build_lcd_table,
    build_lck_table,
    compare_with_published,
    published_table,
    verify_conjecture,
)
from utils.matrix_io import format_matrix, read_matrix, write_matrix
from utils.visualizer import FORMATS, emit

logger = logging.getLogger("lcd_toolkit")

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class Console:
    """Saída humana (banners) ou um único documento JSON com --json."""

    def __init__(self, out: TextIO, as_json: bool):
        self.out = out
        self.as_json = as_json

    def say(self, text: str = ""):
        if not self.as_json:
            print(text, file=self.out)

    def banner(self, title: str):
        self.say("=" * 60)
        self.say(title)
        self.say("=" * 60)

    def document(self, payload: Dict):
        if self.as_json:
            print(json.dumps(payload, indent=2), file=self.out)


def configure_logging(quiet: bool, verbose: bool):
    level = logging.WARNING if quiet else logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT, force=True)


@contextmanager
def worker_pool(threads: int):
    """Fornece (mapper, fatias); com uma thread a busca roda no processo atual."""
    if threads <= 1:
        yield None, 1
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield pool.map, threads


def parse_partition(text: str):
    try:
        index, total = (int(part) for part in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"partição deve ser I/T, recebido {text!r}")
    if total < 1 or not 0 <= index < total:
        raise argparse.ArgumentTypeError(f"partição inválida {text!r}")
    return index, total


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"esperado inteiro >= 1, recebido {text}")
    return value


class VersionAction(argparse.Action):
    """--version escrito no mesmo fluxo de saída dos comandos."""

    def __init__(self, option_strings, dest, out: Optional[TextIO] = None, **kwargs):
        super().__init__(option_strings, dest, nargs=0, default=argparse.SUPPRESS, **kwargs)
        self.out = out

    def __call__(self, parser, namespace, values, option_string=None):
        print(f"{parser.prog} {__version__}", file=self.out or sys.stdout)
        parser.exit()


# ----------------------------------------------------------------------
# comandos


def cmd_check(args, console: Console) -> Dict:
    code = from_generator(read_matrix(args.matrix))
    lcd = is_lcd(code)
    hull = hull_dimension(code)
    console.banner(f"🔍 VERIFICAÇÃO LCD: código [{code.n},{code.k}]")
    console.say("✅ LCD" if lcd else f"❌ not LCD, hull dimension {hull}")
    return {"n": code.n, "k": code.k, "lcd": lcd, "hull_dimension": hull}


def cmd_hull(args, console: Console) -> Dict:
    code = from_generator(read_matrix(args.matrix))
    hull = hull_dimension(code)
    console.say(f"hull dimension {hull}")
    return {"n": code.n, "k": code.k, "hull_dimension": hull}


def cmd_mindist(args, console: Console) -> Dict:
    params = from_generator(read_matrix(args.matrix)).params()
    console.say(str(params))
    return {"params": params.to_dict()}


def cmd_weights(args, console: Console) -> Dict:
    code = from_generator(read_matrix(args.matrix))
    distribution = weight_distribution(code)
    console.banner(f"📊 DISTRIBUIÇÃO DE PESOS: código [{code.n},{code.k}]")
    for weight, count in enumerate(distribution):
        if count:
            console.say(f"  A_{weight} = {count}")
    d = next(w for w, count in enumerate(distribution) if w and count)
    return {"n": code.n, "k": code.k, "d": d, "distribution": distribution}


def cmd_dual(args, console: Console) -> Dict:
    dual_code = dual(from_generator(read_matrix(args.matrix)))
    if args.output:
        write_matrix(dual_code.gen, args.output, [f"dual [{dual_code.n},{dual_code.k}]"])
    console.say(format_matrix(dual_code.gen, [f"dual [{dual_code.n},{dual_code.k}]"]).rstrip("\n"))
    return {"n": dual_code.n, "k": dual_code.k, "generator": dual_code.gen.to_strings()}


def cmd_construct(args, console: Console) -> Dict:
    if args.codim is not None:
        code, source = construct_codim(args.n, args.codim), SOURCE_CODIM
    elif args.k == 2:
        blocks, source = n2_blocks(args.n)
        code = blocks.code()
    else:
        raise PreconditionError("construções fechadas só para --k 2 ou --codim I")
    d = min_distance(code)
    lcd = is_lcd(code)
    comments = [f"[{code.n},{code.k},{d}] LCD={str(lcd).lower()} source={source}"]
    if args.output:
        write_matrix(code.gen, args.output, comments)
    console.say(format_matrix(code.gen, comments).rstrip("\n"))
    return {"params": [code.n, code.k, d], "lcd": lcd, "source": source, "generator": code.gen.to_strings()}


def _read_symmetric(args) -> Gf2Matrix:
    matrix = read_matrix(args.matrix)
    if args.gram:
        matrix = from_generator(matrix).gram()
    return matrix


def cmd_prseq(args, console: Console) -> Dict:
    sequence = pr_sequence(_read_symmetric(args))
    attainable = pr_attainable(sequence) if sequence.k >= 2 else None
    console.say(str(sequence))
    if attainable is not None:
        console.say(f"forma atingível: {'✅ sim' if attainable else '❌ não'}")
    return {"pr_sequence": str(sequence), "k": sequence.k, "attainable": attainable}


def cmd_subcode(args, console: Console) -> Dict:
    certificate = extract_lcd_subcode(from_generator(read_matrix(args.matrix)))
    console.banner(f"📋 SUBCÓDIGO LCD {certificate.sub_params}")
    console.say(f"linhas removidas: {list(certificate.removed_rows)}")
    console.say(format_matrix(certificate.sub_gen).rstrip("\n"))
    return certificate.to_dict()


def cmd_search_lcd(args, console: Console) -> Dict:
    partition = args.partition or (0, 1)
    spec = SearchSpec(
        n=args.n,
        k=args.k,
        mode=MODE_EXISTS if args.exact_d is not None else MODE_MAX_DISTANCE,
        d=args.exact_d,
        exact=args.exact_d is not None,
        reduce_columns=not args.no_reduce,
        prune_rows=not args.no_prune,
        lcd_first=args.lcd_first,
        partition=partition,
    )
    threads = 1 if args.partition else args.threads
    with worker_pool(threads) as (mapper, shards):
        result = search_lcd(spec, args.budget, args.force, shards=shards, mapper=mapper)
    if spec.mode == MODE_EXISTS:
        console.say(f"[{args.n},{args.k},{args.exact_d}] LCD: {'✅ existe' if result.found else '❌ não existe'}")
    else:
        console.say(f"LCD[{args.n},{args.k}] = {result.d}")
    if result.found:
        console.say("A =")
        console.say(format_matrix(result.witness).rstrip("\n") or "(vazia)")
    console.say(f"candidatos visitados: {result.visited}")
    return result.to_dict(args.timings)


def cmd_search_lck(args, console: Console) -> Dict:
    with worker_pool(args.threads) as (mapper, shards):
        result = search_lck(args.n, args.d, budget=args.budget, force=args.force, shards=shards, mapper=mapper)
    console.say(f"LCK[{args.n},{args.d}] = {result.k}")
    if result.found:
        console.say("A =")
        console.say(format_matrix(result.witness).rstrip("\n") or "(vazia)")
    payload = result.to_dict(args.timings)
    payload["value"] = result.k
    return payload


def cmd_oracle(args, console: Console) -> Dict:
    d = naive_oracle(args.n, args.k)
    console.say(f"oráculo LCD[{args.n},{args.k}] = {d}")
    return {"n": args.n, "k": args.k, "d": d}


def _report_discrepancies(table) -> List[Dict]:
    if table.max_n > DEFAULT_MAX_N:
        return []
    found = []
    for n, col, computed, published in compare_with_published(table):
        known = table.kind == KIND_LCK and PUBLISHED_LCK_ERRATA.get((n, col)) == computed
        found.append({"n": n, "col": col, "computed": computed, "published": published, "known_erratum": known})
    return found


def cmd_table(args, console: Console) -> Optional[str]:
    memory = CellMemory.from_environment(args.cache)
    memory.start_session()
    with worker_pool(args.threads) as (mapper, shards):
        lcd = build_lcd_table(args.max_n, memory, args.budget, args.force, shards, mapper, confirm=not args.no_confirm)
        table = lcd
        if args.kind == KIND_LCK:
            table = build_lck_table(args.max_n, lcd, memory, args.budget, args.force, shards, mapper)
    memory.end_session()
    discrepancies = _report_discrepancies(table)
    for item in discrepancies:
        level = logging.INFO if item["known_erratum"] else logging.WARNING
        logger.log(
            level,
            "%s[%d,%d]: calculado %d, publicado %d%s",
            table.kind.upper(), item["n"], item["col"], item["computed"], item["published"],
            " (erro conhecido da tabela publicada)" if item["known_erratum"] else "",
        )
    if memory.enabled:
        logger.info("cache: %s", memory.get_memory_summary())
    fmt = "json" if console.as_json else args.format
    print(emit(table, fmt, args.timings, discrepancies), end="", file=console.out)
    return None


def cmd_cache(args, console: Console) -> Dict:
    memory = CellMemory.from_environment(args.cache)
    if not memory.enabled:
        raise PreconditionError(f"nenhum diretório de cache: use --cache ou {CACHE_ENV}")
    if args.clear:
        removed = memory.clear_memory()
        console.say(f"🗑️ {removed} células removidas de {memory.directory}")
        return {"directory": str(memory.directory), "removed": removed}
    cells = memory.list_cells()
    console.banner(f"💾 CACHE {memory.directory}")
    for kind in (KIND_LCD, KIND_LCK):
        console.say(f"  {kind}: {cells[kind]} células")
    return {"directory": str(memory.directory), "cells": cells}


def cmd_verify_conjecture(args, console: Console) -> Dict:
    if args.published:
        table = published_table(KIND_LCD, args.max_n)
    else:
        memory = CellMemory.from_environment(args.cache)
        with worker_pool(args.threads) as (mapper, shards):
            table = build_lcd_table(args.max_n, memory, args.budget, args.force, shards, mapper)
    report = verify_conjecture(table)
    console.banner(f"🎯 MONOTONICIDADE DE LCD[n,k], n <= {args.max_n}")
    console.say(f"violações de LCD[n,k] <= LCD[n,k-1]: {report.violations or 'nenhuma'}")
    console.say(f"formas demonstradas: {'✅ válidas' if report.weak_forms_hold else '❌ violadas'}")
    return report.to_dict()


def cmd_census(args, console: Console) -> Dict:
    census = two_dim_census(args.n)
    best = census_best_distance(args.n)
    expected = lcd_n2_value(args.n)
    console.banner(f"📊 CENSO [n,2] PARA n = {args.n}")
    console.say(f"classes de blocos: {len(census)}; LCD: {sum(1 for _, _, lcd in census if lcd)}")
    console.say(f"melhor distância LCD: {best} (valor fechado {expected})")
    for blocks, d, lcd in census:
        if lcd and d == best:
            console.say(f"  (i1, i2, i3, i0) = ({blocks.i1}, {blocks.i2}, {blocks.i3}, {blocks.i0})")
    return {
        "n": args.n,
        "best": best,
        "closed_form": expected,
        "classes": [
            {"blocks": [b.i1, b.i2, b.i3, b.i0], "d": d, "lcd": lcd} for b, d, lcd in census
        ],
    }


def cmd_prsweep(args, console: Console) -> Dict:
    orders = []
    with worker_pool(args.threads) as (mapper, shards):
        for k in range(2, args.max_k + 1):
            jobs = [(k, (i, shards)) for i in range(shards)]
            run = mapper or map
            attained = set().union(*run(_sweep_job, jobs))
            conforming = conforming_pr_sequences(k)
            missing = sorted(str(p) for p in conforming - attained)
            unexpected = sorted(str(p) for p in attained - conforming)
            orders.append({
                "k": k,
                "matrices": 1 << (k * (k + 1) // 2),
                "attained": len(attained),
                "conforming": len(conforming),
                "missing": missing,
                "unexpected": unexpected,
            })
            ok = not missing and not unexpected
            console.say(f"k={k}: {len(attained)} sequências atingidas, {len(conforming)} previstas {'✅' if ok else '❌'}")
    return {"orders": orders, "ok": all(not o["missing"] and not o["unexpected"] for o in orders)}


def _sweep_job(job):
    k, partition = job
    return attained_pr_sequences(k, partition)


COMMANDS: Dict[str, Callable] = {
    "check": cmd_check,
    "hull": cmd_hull,
    "mindist": cmd_mindist,
    "weights": cmd_weights,
    "dual": cmd_dual,
    "construct": cmd_construct,
    "prseq": cmd_prseq,
    "subcode": cmd_subcode,
    "search-lcd": cmd_search_lcd,
    "search-lck": cmd_search_lck,
    "oracle": cmd_oracle,
    "table": cmd_table,
    "verify-conjecture": cmd_verify_conjecture,
    "census": cmd_census,
    "prsweep": cmd_prsweep,
    "cache": cmd_cache,
}


def _global_options(parser: argparse.ArgumentParser, suppress: bool):
    # nos subcomandos o default é SUPPRESS para não sobrescrever o valor global
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument('--json', action='store_true', default=default(False), help='Saída como um documento JSON')
    parser.add_argument('--quiet', action='store_true', default=default(False), help='Só avisos e erros no stderr')
    parser.add_argument('--verbose', action='store_true', default=default(False), help='Log de depuração')
    parser.add_argument('--threads', type=positive_int, default=default(1), help='Processos para buscas particionadas')
    parser.add_argument('--cache', type=str, default=default(None), help='Diretório de cache das tabelas')
    parser.add_argument('--timings', action='store_true', default=default(False), help='Inclui elapsed_ms no JSON')


def build_parser(out: Optional[TextIO] = None) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcd-toolkit", description='Toolkit de códigos LCD binários')
    parser.add_argument('--version', action=VersionAction, out=out, help='Mostra a versão e sai')
    _global_options(parser, suppress=False)
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        _global_options(sub, suppress=True)
        return sub

    def matrix_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = add(name, help_text)
        sub.add_argument('matrix', help="Arquivo da matriz ('-' para stdin)")
        return sub

    def budget_options(sub: argparse.ArgumentParser):
        sub.add_argument('--budget', type=positive_int, default=DEFAULT_SEARCH_BUDGET, help='Máximo de candidatos projetados')
        sub.add_argument('--force', action='store_true', help='Ignora o orçamento de busca')

    matrix_command("check", "Testa se a geradora define um código LCD")
    matrix_command("hull", "Dimensão do hull C ∩ C^⊥")
    matrix_command("mindist", "Parâmetros [n,k,d]")
    matrix_command("weights", "Distribuição de pesos A_0..A_n")
    sub = matrix_command("dual", "Geradora do código dual")
    sub.add_argument('--output', type=str, help='Grava a geradora neste arquivo')

    sub = add("construct", "Construções fechadas de códigos LCD")
    sub.add_argument('--n', type=positive_int, required=True)
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument('--k', type=positive_int, help='Dimensão (só 2)')
    group.add_argument('--codim', type=positive_int, help='Codimensão i >= 2')
    sub.add_argument('--output', type=str, help='Grava a geradora neste arquivo')

    sub = matrix_command("prseq", "pr-sequência de uma matriz simétrica")
    sub.add_argument('--gram', action='store_true', help='Usa G·G^T da geradora lida')
    matrix_command("subcode", "Extrai um subcódigo LCD")

    sub = add("search-lcd", "Busca exaustiva de LCD[n,k]")
    sub.add_argument('--n', type=positive_int, required=True)
    sub.add_argument('--k', type=positive_int, required=True)
    sub.add_argument('--exact-d', type=positive_int, help='Só testa a existência com distância exatamente D')
    sub.add_argument('--no-reduce', action='store_true', help='Percorre todas as matrizes A')
    sub.add_argument('--no-prune', action='store_true', help='Desliga a poda por peso')
    sub.add_argument('--lcd-first', action='store_true', help='Testa LCD antes da distância')
    sub.add_argument('--partition', type=parse_partition, help='Fatia I/T do espaço de busca')
    budget_options(sub)

    sub = add("search-lck", "Busca exaustiva de LCK[n,d]")
    sub.add_argument('--n', type=positive_int, required=True)
    sub.add_argument('--d', type=positive_int, required=True)
    budget_options(sub)

    sub = add("oracle", "Oráculo ingênuo (todas as matrizes A)")
    sub.add_argument('--n', type=positive_int, required=True)
    sub.add_argument('--k', type=positive_int, required=True)

    sub = add("table", "Monta a tabela LCD ou LCK")
    sub.add_argument('--kind', choices=[KIND_LCD, KIND_LCK], default=KIND_LCD)
    sub.add_argument('--max-n', type=positive_int, default=DEFAULT_MAX_N)
    sub.add_argument('--format', choices=list(FORMATS), default="markdown")
    sub.add_argument('--no-confirm', action='store_true', help='Não confirma as construções pela busca')
    budget_options(sub)

    sub = add("verify-conjecture", "Verifica LCD[n,k] <= LCD[n,k-1]")
    sub.add_argument('--max-n', type=positive_int, default=DEFAULT_MAX_N)
    sub.add_argument('--published', action='store_true', help='Usa a tabela publicada em vez de calcular')
    budget_options(sub)

    sub = add("census", "Censo dos códigos [n,2] por blocos")
    sub.add_argument('--n', type=int, required=True)

    sub = add("prsweep", "Varredura exaustiva das pr-sequências atingíveis")
    sub.add_argument('--max-k', type=int, default=5, choices=range(2, 7))

    sub = add("cache", "Resumo ou limpeza do diretório de cache")
    sub.add_argument('--clear', action='store_true', help='Remove todas as células gravadas')
    return parser


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Executa um comando.

    Returns:
        int: 0 em sucesso, 1 em erro de domínio, 2 em erro de uso
    """
    out = out or sys.stdout
    parser = build_parser(out)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    configure_logging(args.quiet, args.verbose)
    console = Console(out, args.json)
    try:
        payload = COMMANDS[args.command](args, console)
    except LCDToolkitError as exc:
        logger.error("%s", exc)
        return 1
    if payload is not None:
        console.document(payload)
    return 0


def main():
    """
    Função principal do sistema
    """
    sys.exit(run())


if __name__ == "__main__":
    main()
