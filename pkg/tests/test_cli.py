"""
Testes para polycone.cli.

Cobre:
- hilbert com arquivo de entrada: relatório completo e código 0
- approx com --x/--k/--eps: tupla {3/2, 7/5} para √2
- Orçamento esgotado: código 3 com parcial embutido
- Esquema inválido (arquivo ausente, JSON malformado, campo faltando): código 4, stdout vazio
- Verificação reprovada (inclusive hipótese violada e leque inconsistente): código 2
- Reprodutibilidade byte a byte do relatório e saída --csv
- Subcomandos tóricos
"""

import json
from pathlib import Path

import pandas as pd
import pytest

from polycone.cli import main


def _json(tmp_path: Path, nome: str, dados: object) -> str:
    caminho = tmp_path / nome
    caminho.write_text(json.dumps(dados), encoding="utf-8")
    return str(caminho)


def _rodar(argv: list[str]) -> int:
    with pytest.raises(SystemExit) as info:
        main(argv)
    return info.value.code


# ===========================================================================
# Cones e monoides
# ===========================================================================


def test_hilbert_relatorio_completo(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    entrada = _json(tmp_path, "cone.json", {"rays": [[1, 0], [1, 3]]})

    assert _rodar(["hilbert", "--input", entrada]) == 0

    rel = json.loads(capsys.readouterr().out)
    assert rel["command"] == "hilbert"
    assert rel["outputs"]["basis"] == [[1, 0], [1, 1], [1, 2], [1, 3]]
    assert rel["inputs_digest"].startswith("sha256:")
    assert isinstance(rel["seed"], int)
    assert rel["elapsed_ms"] == 0
    assert all(c["status"] == "PASS" for c in rel["verification"])


def test_relatorio_reprodutivel(tmp_path: Path) -> None:
    entrada = _json(tmp_path, "cone.json", {"rays": [[1, 0], [1, 3]]})
    a, b = tmp_path / "a.json", tmp_path / "b.json"

    assert _rodar(["hilbert", "--input", entrada, "--output", str(a)]) == 0
    assert _rodar(["hilbert", "--input", entrada, "--output", str(b)]) == 0

    assert a.read_bytes() == b.read_bytes()


def test_hilbert_csv(tmp_path: Path) -> None:
    entrada = _json(tmp_path, "cone.json", {"rays": [[1, 0], [1, 3]]})
    csv = tmp_path / "base.csv"

    assert _rodar(["hilbert", "--input", entrada, "--output", str(tmp_path / "r.json"), "--csv", str(csv)]) == 0

    df = pd.read_csv(csv, encoding="utf-8-sig")
    assert list(df["elemento"]) == ["1 0", "1 1", "1 2", "1 3"]


def test_saturate(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    entrada = _json(tmp_path, "m.json", {"gens": [[2, 0], [1, 1], [0, 2]]})

    assert _rodar(["saturate", "--input", entrada]) == 0

    saidas = json.loads(capsys.readouterr().out)["outputs"]
    assert saidas["monoid"]["gens"] == [[0, 1], [1, 0]]
    assert saidas["was_saturated"] is False


# ===========================================================================
# Aproximação diofantina
# ===========================================================================


def test_approx_raiz_de_dois(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    x = _json(tmp_path, "x.json", [{"rad": [{"d": 2, "c": 1}]}])

    assert _rodar(["approx", "--x", x, "--k", "1", "--eps", "1/4"]) == 0

    rel = json.loads(capsys.readouterr().out)
    assert rel["outputs"]["denominators"] == [2, 5]


def test_approx_orcamento_esgotado(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    x = _json(tmp_path, "x.json", [{"rad": [{"d": 2, "c": 1}]}])

    assert _rodar(["approx", "--x", x, "--eps", "1/100", "--budget", "5"]) == 3

    rel = json.loads(capsys.readouterr().out)
    assert "partial" in rel["outputs"]
    assert rel["outputs"]["tightest"] is not None
    assert rel["verification"][0]["status"] == "FAIL"


# ===========================================================================
# Erros de esquema e verificações reprovadas
# ===========================================================================


def test_arquivo_ausente_sai_com_4(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    assert _rodar(["hilbert", "--input", str(tmp_path / "nao_existe.json")]) == 4

    capturado = capsys.readouterr()
    assert capturado.out == ""
    assert "não encontrado" in capturado.err


def test_json_malformado_sai_com_4(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    caminho = tmp_path / "ruim.json"
    caminho.write_text("{rays: [", encoding="utf-8")

    assert _rodar(["hilbert", "--input", str(caminho)]) == 4
    assert capsys.readouterr().out == ""


def test_campo_obrigatorio_ausente_sai_com_4(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    entrada = _json(tmp_path, "e.json", {"eps": "1/4"})

    assert _rodar(["extend", "--input", entrada]) == 4
    assert capsys.readouterr().out == ""


def test_cone_com_reta_sai_com_4(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    entrada = _json(tmp_path, "cone.json", {"rays": [[1, 0], [-1, 0], [0, 1]]})

    assert _rodar(["hilbert", "--input", entrada]) == 4
    assert "reta" in capsys.readouterr().err


def test_hipotese_violada_sai_com_2_e_nao_com_4(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    """Entrada bem formada, mas ‖√2 − 1‖ ≥ ε/k₁: falha de cálculo, não de esquema."""
    entrada = _json(
        tmp_path,
        "e.json",
        {"x": [{"rad": [{"d": 2, "c": 1}]}], "k": 1, "eps": "1/4", "eta": "1/4", "x1": [1], "k1": 1},
    )

    assert _rodar(["extend", "--input", entrada]) == 2

    rel = json.loads(capsys.readouterr().out)
    assert rel["verification"][0]["invariant"] == "pré-condição"
    assert "Hipótese" in rel["verification"][0]["witness"]


def test_parametro_mal_formado_sai_com_4(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    entrada = _json(
        tmp_path,
        "e.json",
        {"x": [{"rad": [{"d": 2, "c": 1}]}], "k": 1, "eps": "1/4", "eta": "1/4", "x1": ["três meios"], "k1": 2},
    )

    assert _rodar(["extend", "--input", entrada]) == 4

    capturado = capsys.readouterr()
    assert capturado.out == ""
    assert "Parâmetros de extensão" in capturado.err


def test_plcheck_com_pecas_discordantes_sai_com_2(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    """As peças divergem no raio comum (1, 1); a verificação do leque reprova."""
    entrada = _json(
        tmp_path,
        "f.json",
        {
            "function": {
                "fan": [{"rays": [[1, 0], [1, 1]]}, {"rays": [[1, 1], [0, 1]]}],
                "pieces": [[1, 0], [0, 0]],
            }
        },
    )

    assert _rodar(["plcheck", "--input", entrada]) == 2

    rel = json.loads(capsys.readouterr().out)
    assert rel["verification"][0]["invariant"] == "leque consistente e cobre o suporte"
    assert rel["verification"][0]["status"] == "FAIL"
    assert "discordam" in rel["verification"][0]["witness"]


def test_plcheck_com_leque_valido_passa(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    entrada = _json(
        tmp_path,
        "f.json",
        {
            "function": {
                "fan": [{"rays": [[1, 0], [1, 1]]}, {"rays": [[1, 1], [0, 1]]}],
                "pieces": [[0, 1], [1, 0]],
            }
        },
    )

    assert _rodar(["plcheck", "--input", entrada]) == 0

    rel = json.loads(capsys.readouterr().out)
    assert rel["verification"][0] == {
        "invariant": "leque consistente e cobre o suporte",
        "status": "PASS",
        "witness": None,
    }


def test_deteccao_de_funcao_nao_concava_sai_com_2(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    """max(x, y) viola a hipótese de concavidade."""
    entrada = _json(
        tmp_path,
        "f.json",
        {
            "function": {
                "fan": [{"rays": [[1, 0], [1, 1]]}, {"rays": [[1, 1], [0, 1]]}],
                "pieces": [[1, 0], [0, 1]],
            }
        },
    )

    assert _rodar(["pldetect", "--input", entrada]) == 2

    rel = json.loads(capsys.readouterr().out)
    assert rel["outputs"] == {"detected": None}


# ===========================================================================
# Tóricos
# ===========================================================================


@pytest.fixture
def plano(tmp_path: Path) -> str:
    return _json(tmp_path, "plano.json", {"rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [2, 0]]})


@pytest.fixture
def explosao(tmp_path: Path) -> str:
    return _json(
        tmp_path,
        "explosao.json",
        {"rays": [[1, 0], [0, 1], [-1, -1], [1, 1]], "max_cones": [[0, 3], [3, 1], [1, 2], [2, 0]]},
    )


def test_toric_sections(tmp_path: Path, plano: str, capsys: pytest.CaptureFixture) -> None:
    divisor = _json(tmp_path, "d.json", [0, 0, 2])

    assert _rodar(["toric-sections", "--model", plano, "--divisor", divisor]) == 0

    assert json.loads(capsys.readouterr().out)["outputs"]["count"] == 6


def test_toric_fix(tmp_path: Path, explosao: str, capsys: pytest.CaptureFixture) -> None:
    divisor = _json(tmp_path, "d.json", [0, 0, 0, 2])

    assert _rodar(["toric-fix", "--model", explosao, "--divisor", divisor]) == 0

    saidas = json.loads(capsys.readouterr().out)["outputs"]
    assert saidas["fix"] == ["0/1", "0/1", "0/1", "2/1"]
    assert saidas["mob"] == ["0/1", "0/1", "0/1", "0/1"]


def test_toric_ord(tmp_path: Path, explosao: str, capsys: pytest.CaptureFixture) -> None:
    divisor = _json(tmp_path, "d.json", [0, 0, 0, 2])

    assert _rodar(["toric-ord", "--model", explosao, "--divisor", divisor, "--ray", "3"]) == 0

    assert json.loads(capsys.readouterr().out)["outputs"]["ord"] == "2/1"


def test_toric_ord_sem_raio_sai_com_4(tmp_path: Path, explosao: str) -> None:
    divisor = _json(tmp_path, "d.json", [0, 0, 0, 2])

    assert _rodar(["toric-ord", "--model", explosao, "--divisor", divisor]) == 4


def test_toric_divisor_com_tamanho_errado(tmp_path: Path, plano: str) -> None:
    divisor = _json(tmp_path, "d.json", [0, 2])

    assert _rodar(["toric-sections", "--model", plano, "--divisor", divisor]) == 4


def test_toric_adjoint(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    reta = _json(tmp_path, "reta.json", {"rays": [[1], [-1]], "max_cones": [[0], [1]]})
    familia = _json(tmp_path, "f.json", {"grading_gens": 2, "matrix": [[2, 0], [3, 0]]})

    assert _rodar(["toric-adjoint", "--model", reta, "--family", familia, "--bound", "4"]) == 0

    assert json.loads(capsys.readouterr().out)["outputs"]["size"] == 7
