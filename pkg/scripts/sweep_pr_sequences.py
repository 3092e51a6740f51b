#!/usr/bin/env python3
"""
Script para varrer todas as matrizes simétricas de ordem k sobre GF(2) e
conferir que as pr-sequências atingidas são exatamente as das três formas.
"""

import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

from core.validator import attained_pr_sequences, conforming_pr_sequences


def _sweep(job):
    k, partition = job
    return attained_pr_sequences(k, partition)


def sweep_orders(max_k: int, workers: int = 1) -> bool:
    """Varre as ordens 2..max_k; devolve True se todas conferem."""
    all_ok = True
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for k in range(2, max_k + 1):
            jobs = [(k, (i, workers)) for i in range(workers)]
            attained = set().union(*pool.map(_sweep, jobs))
            conforming = conforming_pr_sequences(k)
            ok = attained == conforming
            all_ok = all_ok and ok
            print(f"k={k}: {1 << (k * (k + 1) // 2)} matrizes, {len(attained)} sequências {'✅' if ok else '❌'}")
            for p in sorted(str(p) for p in conforming - attained):
                print(f"  prevista e não atingida: {p}")
            for p in sorted(str(p) for p in attained - conforming):
                print(f"  atingida fora das formas: {p}")
    return all_ok


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Varredura exaustiva das pr-sequências")
    parser.add_argument("--max-k", type=int, default=5, help="Maior ordem")
    parser.add_argument("--workers", type=int, default=1, help="Processos")

    args = parser.parse_args()
    sys.exit(0 if sweep_orders(args.max_k, args.workers) else 1)
