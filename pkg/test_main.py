#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Testes da linha de comando
"""

import io
import json
import sys
from pathlib import Path

import pytest

# Adicionar o diretório do projeto ao path
sys.path.append(str(Path(__file__).parent))

from core import __version__
from core.errors import MatrixFormatError
from main import run
from utils.matrix_io import parse_matrix_text, read_matrix


def invoke(*argv):
    out = io.StringIO()
    status = run(list(argv), out)
    return status, out.getvalue()


@pytest.fixture
def matrix_file(tmp_path):
    def write(*rows, name="gen.txt"):
        path = tmp_path / name
        path.write_text("# matriz de teste\n" + "\n".join(rows) + "\n", encoding="utf-8")
        return str(path)
    return write


def test_check_reports_hull(matrix_file):
    status, text = invoke("check", matrix_file("11"))
    assert status == 0
    assert "not LCD, hull dimension 1" in text


def test_check_json(matrix_file):
    status, text = invoke("--json", "check", matrix_file("11111"))
    assert status == 0
    assert json.loads(text) == {"n": 5, "k": 1, "lcd": True, "hull_dimension": 0}


def test_global_flags_after_command(matrix_file):
    status, text = invoke("check", matrix_file("11"), "--json")
    assert status == 0
    assert json.loads(text)["hull_dimension"] == 1


def test_prseq_identity(matrix_file):
    status, text = invoke("prseq", matrix_file("100", "010", "001"))
    assert status == 0
    assert "0]111" in text


def test_prseq_of_gram(matrix_file):
    status, text = invoke("--json", "prseq", "--gram", matrix_file("1111000", "0001111"))
    assert status == 0
    assert json.loads(text) == {"pr_sequence": "1]01", "k": 2, "attainable": True}


def test_mindist(matrix_file):
    status, text = invoke("--json", "mindist", matrix_file("1111000", "0001111"))
    assert status == 0
    assert json.loads(text) == {"params": {"n": 7, "k": 2, "d": 4}}


def test_dual_writes_output(matrix_file, tmp_path):
    target = tmp_path / "dual.txt"
    status, _ = invoke("dual", matrix_file("111"), "--output", str(target))
    assert status == 0
    dual = read_matrix(str(target))
    assert dual.shape == (2, 3)


def test_construct_dimension_two():
    status, text = invoke("--json", "construct", "--n", "7", "--k", "2")
    assert status == 0
    payload = json.loads(text)
    assert payload["params"] == [7, 2, 4]
    assert payload["lcd"] is True
    assert payload["source"] == "Prop2(i)"
    assert payload["generator"] == ["1111000", "0001111"]


def test_construct_codimension():
    status, text = invoke("--json", "construct", "--n", "9", "--codim", "3")
    assert status == 0
    payload = json.loads(text)
    assert payload["params"] == [9, 6, 2]
    assert payload["source"] == "Prop4"


@pytest.mark.parametrize("argv, params, source", [
    (["--n", "16", "--codim", "4"], [16, 12, 2], "Prop4"),
    (["--n", "8", "--k", "2"], [8, 2, 5], "Prop2(ii)"),
    (["--n", "9", "--k", "2"], [9, 2, 6], "Prop2(iii)"),
    (["--n", "12", "--k", "2"], [12, 2, 7], "Prop3(i)"),
    (["--n", "11", "--k", "2"], [11, 2, 6], "Prop3(ii)"),
])
def test_construct_source_labels(argv, params, source):
    status, text = invoke("--json", "construct", *argv)
    assert status == 0
    payload = json.loads(text)
    assert payload["params"] == params
    assert payload["source"] == source
    assert payload["lcd"] is True


def test_construct_rejects_other_dimensions():
    assert invoke("construct", "--n", "9", "--k", "3")[0] == 1
    assert invoke("construct", "--n", "9", "--k", "1")[0] == 1


def test_subcode(matrix_file):
    status, text = invoke("--json", "subcode", matrix_file("100", "010", "001"))
    assert status == 0
    assert json.loads(text)["removed"] == [1]


def test_search_lcd():
    status, text = invoke("search-lcd", "--n", "6", "--k", "3")
    assert status == 0
    assert "LCD[6,3] = 2" in text


def test_search_lcd_json_is_deterministic():
    first = invoke("--json", "search-lcd", "--n", "6", "--k", "3")
    second = invoke("--json", "search-lcd", "--n", "6", "--k", "3")
    assert first == second
    payload = json.loads(first[1])
    assert payload["d"] == 2
    assert payload["elapsed_ms"] is None


def test_search_lcd_exact_and_partition():
    status, text = invoke("--json", "search-lcd", "--n", "7", "--k", "2", "--exact-d", "4", "--partition", "0/1")
    assert status == 0
    assert json.loads(text)["d"] == 4


def test_search_budget_refusal():
    status, _ = invoke("search-lcd", "--n", "12", "--k", "6", "--budget", "10")
    assert status == 1


def test_search_lck():
    status, text = invoke("--json", "search-lck", "--n", "8", "--d", "3")
    assert status == 0
    assert json.loads(text)["value"] == 4


def test_oracle():
    status, text = invoke("--json", "oracle", "--n", "5", "--k", "3")
    assert status == 0
    assert json.loads(text) == {"n": 5, "k": 3, "d": 2}


def test_table_csv():
    status, text = invoke("table", "--kind", "lcd", "--max-n", "3", "--format", "csv")
    assert status == 0
    assert text.splitlines() == ["n,1,2,3", "1,1,,", "2,1,1,", "3,3,2,1"]


def test_table_json_with_cache(tmp_path):
    argv = ["--json", "--cache", str(tmp_path), "table", "--kind", "lck", "--max-n", "4"]
    first = invoke(*argv)
    second = invoke(*argv)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    assert json.loads(first[1])["kind"] == "lck"


def test_verify_conjecture_published():
    status, text = invoke("--json", "verify-conjecture", "--published")
    assert status == 0
    assert json.loads(text)["violations"] == []


def test_census():
    status, text = invoke("--json", "census", "--n", "6")
    assert status == 0
    payload = json.loads(text)
    assert payload["best"] == payload["closed_form"] == 3


def test_prsweep():
    status, text = invoke("--json", "prsweep", "--max-k", "3")
    assert status == 0
    assert json.loads(text)["ok"] is True


def test_bad_matrix_is_a_domain_error(matrix_file):
    status, _ = invoke("check", matrix_file("10", "1x"))
    assert status == 1


def test_missing_file_is_a_domain_error(tmp_path):
    status, _ = invoke("check", str(tmp_path / "nada.txt"))
    assert status == 1


def test_usage_errors():
    assert invoke()[0] == 2
    assert invoke("search-lcd", "--n", "6")[0] == 2
    assert invoke("--threads", "0", "oracle", "--n", "3", "--k", "1")[0] == 2


def test_version_goes_to_output(capsys):
    status, text = invoke("--version")
    assert status == 0
    assert text.strip() == f"lcd-toolkit {__version__}"
    assert capsys.readouterr().out == ""


def test_matrix_text_errors_carry_line_numbers():
    with pytest.raises(MatrixFormatError) as info:
        parse_matrix_text("# cabeçalho\n101\n10\n")
    assert "linha 3" in str(info.value)


def test_unreadable_inputs_are_domain_errors(tmp_path):
    assert invoke("check", str(tmp_path))[0] == 1
    binary = tmp_path / "latin1.txt"
    binary.write_bytes(b"# matriz \xe7\xe3o\n101\n")
    assert invoke("check", str(binary))[0] == 1


def test_weights(matrix_file):
    status, text = invoke("--json", "weights", matrix_file("1111000", "0001111"))
    assert status == 0
    assert json.loads(text) == {"n": 7, "k": 2, "d": 4, "distribution": [1, 0, 0, 0, 2, 0, 1, 0]}


def test_table_reports_known_erratum():
    status, text = invoke("--json", "table", "--kind", "lck", "--max-n", "6")
    assert status == 0
    payload = json.loads(text)
    assert payload["discrepancies"] == [
        {"n": 6, "col": 4, "computed": 0, "published": 2, "known_erratum": True}
    ]


def test_table_without_discrepancies():
    status, text = invoke("--json", "table", "--kind", "lcd", "--max-n", "5")
    assert status == 0
    assert json.loads(text)["discrepancies"] == []


@pytest.mark.parametrize("fmt", ["json", "markdown"])
def test_table_output_does_not_depend_on_threads(fmt):
    argv = ["table", "--kind", "lck", "--max-n", "7", "--format", fmt]
    single = invoke("--threads", "1", *argv)
    pooled = invoke("--threads", "3", *argv)
    assert single[0] == pooled[0] == 0
    assert single[1] == pooled[1]


def test_cache_summary_and_clear(tmp_path):
    assert invoke("--cache", str(tmp_path), "table", "--kind", "lcd", "--max-n", "3")[0] == 0
    status, text = invoke("--json", "--cache", str(tmp_path), "cache")
    assert status == 0
    assert json.loads(text)["cells"] == {"lcd": 6, "lck": 0}
    status, text = invoke("--json", "--cache", str(tmp_path), "cache", "--clear")
    assert status == 0
    assert json.loads(text)["removed"] == 6
    assert list(tmp_path.glob("*.json")) == []


def test_cache_requires_directory(monkeypatch):
    monkeypatch.delenv("LCD_TOOLKIT_CACHE", raising=False)
    assert invoke("cache")[0] == 1
