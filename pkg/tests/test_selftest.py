"""
Testes para polycone.selftest.

Cobre:
- Execução reduzida de propriedades escolhidas: todas PASS, relatório JSON gravado
- Mesma semente produz o mesmo relatório
- Propriedade que levanta exceção vira FAIL sem derrubar a suíte
- Propriedade diofantina com k > 1
"""

import json
from pathlib import Path

import pytest

from polycone import selftest
from polycone.selftest import executar_selftest


def test_selftest_reduzido_passa(tmp_path: Path) -> None:
    saida = tmp_path / "selftest.json"

    checks, resumo = executar_selftest(seed=0, quick=True, output_json=saida, somente=["hilbert", "escape"])

    assert [c.passed for c in checks] == [True, True]
    assert list(resumo.columns) == ["propriedade", "invariante", "status"]
    assert list(resumo["propriedade"]) == ["hilbert", "escape"]
    rel = json.loads(saida.read_text(encoding="utf-8"))
    assert rel["seed"] == 0
    assert rel["quick"] is True
    assert {c["status"] for c in rel["checks"]} == {"PASS"}


def test_selftest_reprodutivel(tmp_path: Path) -> None:
    a, b = tmp_path / "a.json", tmp_path / "b.json"

    executar_selftest(seed=5, quick=True, output_json=a, somente=["truncamento"])
    executar_selftest(seed=5, quick=True, output_json=b, somente=["truncamento"])

    assert a.read_text(encoding="utf-8") == b.read_text(encoding="utf-8")


def test_propriedade_com_excecao_vira_fail(monkeypatch: pytest.MonkeyPatch) -> None:
    def quebra(rng, quick):
        raise ValueError("instância degenerada")

    monkeypatch.setattr(selftest, "_PROPRIEDADES", [("quebrada", quebra)])

    checks, resumo = executar_selftest(seed=0, quick=True, output_json=None)

    assert len(checks) == 1
    assert not checks[0].passed
    assert checks[0].witness == "instância degenerada"
    assert list(resumo["status"]) == ["FAIL"]


def test_selftest_diofantina_passa() -> None:
    """Instâncias com k ∈ {1, 2, 3} e dimensão até 3."""
    checks, _ = executar_selftest(seed=1, quick=True, output_json=None, somente=["diofantina"])

    assert len(checks) == 1
    assert checks[0].passed, checks[0].witness
