#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Testes da busca exaustiva LCD/LCK e do oráculo ingênuo
"""

import sys
from itertools import combinations_with_replacement
from pathlib import Path

import pytest

# Adicionar o diretório do projeto ao path
sys.path.append(str(Path(__file__).parent))

from core.errors import PreconditionError, SearchBudgetError
from core.gf2_matrix import Gf2Matrix
from core.linear_code import LinearCode, min_distance
from core.validator import is_lcd
from solver.constructions import lcd_n1_value, lcd_n2_value
from solver.lcd_search import (
    MODE_EXISTS,
    LCDSearchEngine,
    SearchResult,
    SearchSpec,
    check_budget,
    exists_lcd,
    merge_results,
    naive_oracle,
    search_lcd,
    search_lck,
    witness_matrix,
)


def lcd(n, k, **kwargs):
    return search_lcd(SearchSpec(n, k), **kwargs)


def small_cells(max_cells):
    return [(n, k) for n in range(1, 13) for k in range(1, n + 1) if k * (n - k) <= max_cells]


def brute_force_witness(n, k, d):
    """Primeira tupla não decrescente de colunas com código LCD de distância >= d."""
    for columns in combinations_with_replacement(range(1 << k), n - k):
        code = LinearCode(Gf2Matrix.identity(k).hstack(witness_matrix(columns, k)))
        if is_lcd(code) and min_distance(code) >= d:
            return columns
    return None


class TestSearchLcd:
    @pytest.mark.parametrize("n, k, expected", [(6, 3, 2), (2, 2, 1), (5, 3, 2), (4, 2, 2), (7, 4, 2), (9, 4, 4)])
    def test_examples(self, n, k, expected):
        result = lcd(n, k)
        assert result.d == expected
        assert result.found
        code = result.code()
        assert is_lcd(code)
        assert min_distance(code) == expected

    @pytest.mark.slow
    def test_twelve_six(self):
        assert lcd(12, 6).d == 4

    def test_result_payload(self):
        payload = lcd(6, 3).to_dict()
        assert set(payload) == {"n", "k", "d", "witness_a", "visited", "elapsed_ms", "strategy"}
        assert payload["d"] == 2
        assert len(payload["witness_a"]) == 3
        assert payload["elapsed_ms"] is None
        assert payload["strategy"].startswith("top-down<=")

    def test_witness_is_lexicographically_smallest(self):
        for n, k in [(5, 2), (6, 3), (7, 3), (6, 2)]:
            result = lcd(n, k)
            assert result.columns == brute_force_witness(n, k, result.d)

    def test_partitions_do_not_change_result(self):
        sequential = lcd(8, 3)
        for shards in (2, 3, 5):
            sharded = lcd(8, 3, shards=shards)
            assert sharded.d == sequential.d
            assert sharded.columns == sequential.columns
            assert sharded.witness == sequential.witness

    def test_reductions_do_not_change_value(self):
        for n, k in [(6, 2), (6, 3), (7, 3)]:
            full = lcd(n, k).d
            assert search_lcd(SearchSpec(n, k, reduce_columns=False)).d == full
            assert search_lcd(SearchSpec(n, k, prune_rows=False)).d == full
            assert search_lcd(SearchSpec(n, k, lcd_first=True)).d == full

    def test_dimension_one_and_two_columns(self):
        for n in range(1, 10):
            assert lcd(n, 1).d == lcd_n1_value(n)
        for n in range(2, 10):
            assert lcd(n, 2).d == lcd_n2_value(n)

    @pytest.mark.slow
    def test_dimension_one_and_two_columns_up_to_twelve(self):
        for n in range(10, 13):
            assert lcd(n, 1).d == lcd_n1_value(n)
            assert lcd(n, 2).d == lcd_n2_value(n)

    def test_codimension_columns(self):
        for i in (2, 3):
            for n in range(1 << i, 10):
                assert lcd(n, n - i).d == 2

    def test_hints_tighten_start(self):
        result = lcd(9, 5, hints={4: 4})
        assert result.strategy.startswith("top-down<=4")
        assert result.d == lcd(9, 5).d

    def test_budget_guard(self):
        with pytest.raises(SearchBudgetError) as info:
            lcd(12, 6, budget=1000)
        assert info.value.estimate > 1000
        assert "--force" in str(info.value)
        assert check_budget(12, 6, budget=1000, force=True) == info.value.estimate

    def test_search_cell_validation(self):
        with pytest.raises(PreconditionError):
            SearchSpec(5, 6)
        with pytest.raises(PreconditionError):
            SearchSpec(5, 2, partition=(2, 2))
        with pytest.raises(PreconditionError):
            SearchSpec(5, 2, mode=MODE_EXISTS)


class TestExistsLcd:
    def test_examples(self):
        assert exists_lcd(6, 2, 4) is None
        witness = exists_lcd(7, 2, 4)
        assert witness is not None
        assert min_distance(LinearCode(Gf2Matrix.identity(2).hstack(witness))) >= 4
        identity = exists_lcd(5, 5, 1, exact=True)
        assert identity is not None
        assert identity.shape == (5, 0)

    def test_exact_distance(self):
        # LCD[5,1] = 5, mas nenhum [5,1] LCD tem distância exatamente 4
        assert exists_lcd(5, 1, 4, exact=True) is None
        assert exists_lcd(5, 1, 3, exact=True) is not None

    @pytest.mark.parametrize("n", [n for n in range(2, 31) if n % 6 in (0, 5)])
    def test_two_thirds_is_unreachable(self, n):
        assert exists_lcd(n, 2, 2 * n // 3) is None

    def test_engine_partitions_cover_space(self):
        engine = LCDSearchEngine(7, 3)
        found = [engine.exists(2, partition=(i, 4)) for i in range(4)]
        hits = sorted(f for f in found if f is not None)
        assert hits[0] == LCDSearchEngine(7, 3).exists(2)


class TestSearchLck:
    @pytest.mark.parametrize("n, d, expected", [(8, 3, 4), (2, 2, 0), (12, 7, 2), (5, 4, 0), (5, 5, 1), (1, 1, 1)])
    def test_examples(self, n, d, expected):
        result = search_lck(n, d)
        assert result.k == expected
        if expected:
            code = result.code()
            assert is_lcd(code)
            assert min_distance(code) == d
        else:
            assert result.witness is None

    def test_hints_skip_impossible_dimensions(self):
        hinted = search_lck(8, 3, hints={5: 2, 4: 3})
        assert hinted.k == 4
        assert hinted.visited <= search_lck(8, 3).visited

    def test_rejects_bad_distance(self):
        with pytest.raises(PreconditionError):
            search_lck(5, 6)


class TestMerge:
    def _result(self, d, columns):
        witness = witness_matrix(columns, 2) if columns is not None else None
        return SearchResult(6, 2, d, witness, columns, visited=3)

    def test_merge_prefers_distance_then_smallest_columns(self):
        merged = merge_results([self._result(2, (3, 3, 3, 3)), self._result(3, (1, 3, 3, 2)), self._result(3, (1, 2, 3, 3))])
        assert merged.d == 3
        assert merged.columns == (1, 2, 3, 3)
        assert merged.visited == 9

    def test_merge_is_order_independent(self):
        parts = [self._result(0, None), self._result(3, (2, 2, 3, 3)), self._result(3, (1, 3, 3, 3))]
        assert merge_results(parts).columns == merge_results(parts[::-1]).columns

    def test_merge_of_nothing_found(self):
        merged = merge_results([self._result(0, None), self._result(0, None)])
        assert not merged.found
        assert merged.params is None

    def test_merge_requires_input(self):
        with pytest.raises(PreconditionError):
            merge_results([])


class TestNaiveOracle:
    @pytest.mark.parametrize("n, k, expected", [(5, 3, 2), (4, 2, 2), (7, 4, 2), (3, 3, 1)])
    def test_examples(self, n, k, expected):
        assert naive_oracle(n, k) == expected

    def test_cap(self):
        with pytest.raises(PreconditionError):
            naive_oracle(10, 5)

    @pytest.mark.parametrize("n, k", small_cells(12))
    def test_matches_reduced_search(self, n, k):
        assert lcd(n, k).d == naive_oracle(n, k)

    @pytest.mark.slow
    @pytest.mark.parametrize("n, k", [cell for cell in small_cells(20) if cell[1] * (cell[0] - cell[1]) > 12])
    def test_matches_reduced_search_up_to_twenty_cells(self, n, k):
        assert lcd(n, k).d == naive_oracle(n, k)


class TestCodimensionOne:
    @pytest.mark.parametrize("n", range(2, 10))
    def test_matches_oracle(self, n):
        assert lcd(n, n - 1).d == naive_oracle(n, n - 1)

    def test_dimension_above_parity_table_limit(self):
        even = lcd(14, 13)
        assert even.d == 1
        assert even.columns == (0,)
        odd = lcd(15, 14)
        assert odd.d == 2
        assert odd.columns == ((1 << 14) - 1,)
        code = odd.code()
        assert is_lcd(code)
        assert min_distance(code) == 2

    def test_exact_distance(self):
        assert exists_lcd(14, 13, 2) is None
        assert exists_lcd(14, 13, 1, exact=True) is not None
        assert exists_lcd(15, 14, 1, exact=True) is not None

    def test_partitions(self):
        sequential = lcd(15, 14)
        assert lcd(15, 14, shards=4).columns == sequential.columns

    def test_lck_uses_closed_form_above_limit(self):
        result = search_lck(16, 2)
        assert result.k == 14
        assert result.strategy.startswith("closed-form")
        code = result.code()
        assert is_lcd(code)
        assert min_distance(code) == 2
        assert search_lck(15, 2).k == 14
