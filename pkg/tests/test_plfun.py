"""
Testes para polycone.plfun.

Cobre:
- Construção de PLFunction: mínimo de funcionais, validação de leque
  (peças discordantes, sobreposição, faceta não compartilhada)
- Concavidade exata por paredes
- Certificado de aditividade: PASS, FAIL e HYPOTHESIS-UNMET
- Certificado de truncamento e avaliação de f♯
- Endireitamento sobre leque dado
- Detecção de leque e recusa de função não côncava
- Cota de Lipschitz local
"""

from fractions import Fraction

import pytest

from polycone.erros import PLDetectionError
from polycone.monoids import AffineMonoid
from polycone.oracles import superlinearity_violations
from polycone.plfun import (
    PLFunction,
    Straightening,
    SuperadditiveOracle,
    Verdict,
    additivity_certificate,
    check_concave,
    common_refinement,
    detect_pl_2plane,
    halton_point,
    lipschitz_bound,
    plfunction_from_json,
    sample_interior_rays,
    straighten,
    van_der_corput,
)
from polycone.polyhedra import RationalCone, membership


@pytest.fixture
def minimo() -> PLFunction:
    """min(x, y) sobre o ortante."""
    return PLFunction.from_min_of_functionals([(1, 0), (0, 1)], RationalCone.orthant(2))


def _leque_diagonal() -> list[RationalCone]:
    return [
        RationalCone.from_generators([(1, 0), (1, 1)]),
        RationalCone.from_generators([(0, 1), (1, 1)]),
    ]


# ===========================================================================
# Amostragem
# ===========================================================================


def test_halton_racional() -> None:
    assert van_der_corput(2, 2) == Fraction(1, 4)
    assert halton_point(1, 2) == (Fraction(1, 2), Fraction(1, 3))


def test_amostras_no_interior() -> None:
    cone = RationalCone.from_generators([(1, 0), (1, 3)])
    for z in sample_interior_rays(cone, 10, seed=7):
        assert membership(cone, z, "interior")


# ===========================================================================
# PLFunction
# ===========================================================================


def test_minimo_de_funcionais(minimo: PLFunction) -> None:
    assert len(minimo.fan) == 2
    assert minimo.rational_value((2, 3)) == (2,)
    assert minimo.scalar((5, 1)) == 1
    assert list(minimo.walls.edges()) == [(0, 1)]


def test_plfunction_from_json_consistente() -> None:
    f = plfunction_from_json(
        {"fan": [{"rays": [[1, 0], [1, 1]]}, {"rays": [[1, 1], [0, 1]]}], "pieces": [[0, 1], [1, 0]]}
    )
    assert f.rational_value((3, 1)) == (1,)
    assert f.to_json()["value_dim"] == 1


def test_pecas_discordantes_recusadas() -> None:
    with pytest.raises(ValueError, match="discordam"):
        plfunction_from_json(
            {"fan": [{"rays": [[1, 0], [1, 1]]}, {"rays": [[1, 1], [0, 1]]}], "pieces": [[0, 1], [2, 0]]}
        )


def test_cones_sobrepostos_recusados() -> None:
    with pytest.raises(ValueError, match="sobrepõem"):
        PLFunction.build(
            [RationalCone.orthant(2), RationalCone.from_generators([(1, 0), (1, 1)])],
            [[(1, 0)], [(1, 0)]],
        )


def test_faceta_nao_compartilhada_recusada() -> None:
    with pytest.raises(ValueError, match="compartilhada"):
        PLFunction.build(
            [RationalCone.from_generators([(1, 0), (1, 1)])],
            [[(0, 1)]],
            support=RationalCone.orthant(2),
        )


def test_ponto_fora_do_suporte(minimo: PLFunction) -> None:
    with pytest.raises(ValueError, match="fora do suporte"):
        minimo.rational_value((-1, 0))


# ===========================================================================
# Concavidade
# ===========================================================================


def test_minimo_e_concavo(minimo: PLFunction) -> None:
    assert check_concave(minimo).concave


def test_maximo_nao_e_concavo() -> None:
    maximo = PLFunction.from_max_of_functionals([(1, 0), (0, 1)], RationalCone.orthant(2))
    rel = check_concave(maximo)
    assert not rel.concave
    assert rel.wall == (0, 1)
    assert rel.to_json()["concave"] is False


def test_superlinearidade_amostrada() -> None:
    pontos = [(1, 0), (0, 1), (1, 1), (2, 1)]
    minimo = PLFunction.from_min_of_functionals([(1, 0), (0, 1)], RationalCone.orthant(2))
    maximo = PLFunction.from_max_of_functionals([(1, 0), (0, 1)], RationalCone.orthant(2))
    assert superlinearity_violations(minimo.rational_value, pontos, pairs=50) == []
    assert superlinearity_violations(maximo.rational_value, pontos, pairs=50)


# ===========================================================================
# Aditividade e truncamento
# ===========================================================================


def test_aditividade_linear_passa() -> None:
    f = SuperadditiveOracle(AffineMonoid.free(2), lambda s: s[0] + 2 * s[1])
    veredito = additivity_certificate(f, (1, 1), box=6)
    assert veredito.status == Verdict.PASS
    assert veredito.checked == 28


def test_aditividade_hipotese_nao_satisfeita() -> None:
    """f(a, b) = a + b + min(a, b) em s₀ = (1, 1): f(s₀) = 3 ≠ f(e₁) + f(e₂) = 2."""
    f = SuperadditiveOracle(AffineMonoid.free(2), lambda s: s[0] + s[1] + min(s))
    veredito = additivity_certificate(f, (1, 1))
    assert veredito.status == Verdict.HYPOTHESIS_UNMET
    assert veredito.to_json()["status"] == "HYPOTHESIS-UNMET"


def test_aditividade_contraexemplo_na_caixa() -> None:
    f = SuperadditiveOracle(
        AffineMonoid.free(2), lambda s: 0 if s == (2, 0) else s[0] + s[1]
    )
    veredito = additivity_certificate(f, (1, 1), box=4)
    assert veredito.status == Verdict.FAIL
    # coeficientes sobre os geradores ordenados ((0,1), (1,0)): o ponto é (2, 0)
    assert veredito.witness == (0, 2)


def test_aditividade_s0_invalido() -> None:
    f = SuperadditiveOracle(AffineMonoid.free(2), lambda s: s[0])
    with pytest.raises(ValueError):
        additivity_certificate(f, (1, 0))


def test_certificado_de_truncamento() -> None:
    metade = SuperadditiveOracle(AffineMonoid.free(1), lambda s: s[0] // 2, lambda s: 2)
    assert metade.certify_truncation((1,)) == 2
    errado = SuperadditiveOracle(AffineMonoid.free(1), lambda s: s[0] // 2, lambda s: 1)
    with pytest.raises(ValueError, match="falhou"):
        errado.certify_truncation((1,))
    with pytest.raises(ValueError, match="ray_truncation"):
        SuperadditiveOracle(AffineMonoid.free(1), lambda s: 0).certify_truncation((1,))


def test_f_sharp_do_piso() -> None:
    """f(s) = ⌊s/2⌋ tem f♯(s) = s/2."""
    metade = SuperadditiveOracle(AffineMonoid.free(1), lambda s: s[0] // 2, lambda s: 2)
    sharp = Straightening(metade)
    assert sharp.value((1,)) == (Fraction(1, 2),)
    assert sharp.value((3,)) == (Fraction(3, 2),)
    assert sharp.value((0,)) == (Fraction(0),)


def test_endireitamento_sobre_leque_dado() -> None:
    f = SuperadditiveOracle(AffineMonoid.free(2), lambda s: min(s), lambda s: 1)
    res = straighten(f, fan=_leque_diagonal())
    assert all(r.consistent for r in res.reports)
    assert all(r.linear for r in res.reports)
    assert all(r.additivity.status == Verdict.PASS for r in res.reports)
    assert res.function.rational_value((4, 7)) == (4,)
    assert len(res.to_json()["reports"]) == 2


# ===========================================================================
# Detecção
# ===========================================================================


def test_deteccao_do_minimo(minimo: PLFunction) -> None:
    res = detect_pl_2plane(minimo.rational_value, RationalCone.orthant(2), 200, seed=0)
    assert res.complete
    assert res.function.functionals() == minimo.functionals()
    for p in [(1, 0), (3, 5), (5, 3), (2, 2)]:
        assert res.function.rational_value(p) == minimo.rational_value(p)


def test_deteccao_recusa_nao_concava() -> None:
    maximo = PLFunction.from_max_of_functionals([(1, 0), (0, 1)], RationalCone.orthant(2))
    with pytest.raises(PLDetectionError):
        detect_pl_2plane(maximo.rational_value, RationalCone.orthant(2), 200, seed=0)


def test_deteccao_exige_cone_cheio() -> None:
    cone = RationalCone.from_generators([(1, 0, 1), (0, 1, 1)])
    with pytest.raises(ValueError, match="cheia"):
        detect_pl_2plane(lambda x: x[0], cone)


# ===========================================================================
# Lipschitz
# ===========================================================================


def test_lipschitz_do_minimo(minimo: PLFunction) -> None:
    cota = lipschitz_bound(minimo, (1, 1))
    assert cota.delta == Fraction(1, 4)
    assert cota.L == 1
    assert cota.L_exact == 1
    assert cota.M == Fraction(1, 2)
    assert cota.L_ball == 4
    assert cota.to_json()["L"] == "1/1"


def test_lipschitz_fora_do_interior(minimo: PLFunction) -> None:
    with pytest.raises(ValueError, match="interior"):
        lipschitz_bound(minimo, (0, 1))
    with pytest.raises(ValueError):
        lipschitz_bound(minimo, (1, 1), delta=1)


def test_lipschitz_bola_dupla_nao_toca_o_bordo(minimo: PLFunction) -> None:
    """Em x = (1, 1) o bordo está a distância 1: δ = 1/2 faria B(x, 2δ) tocá-lo."""
    with pytest.raises(ValueError, match="δ deve estar"):
        lipschitz_bound(minimo, (1, 1), delta=Fraction(1, 2))
    assert lipschitz_bound(minimo, (1, 1), delta=Fraction(49, 100)).delta == Fraction(49, 100)


# ===========================================================================
# Operações sobre funções PL
# ===========================================================================


def test_negacao_troca_concavidade(minimo: PLFunction) -> None:
    negada = minimo.negate()
    assert negada.rational_value((2, 3)) == (-2,)
    assert not check_concave(negada).concave


def test_refinamento_comum(minimo: PLFunction) -> None:
    soma = PLFunction.from_min_of_functionals([(1, 1)], RationalCone.orthant(2))
    ref = common_refinement([minimo, soma])
    assert ref.value_dim == 2
    assert len(ref.fan) == 2
    assert ref.rational_value((2, 3)) == (2, 5)
    assert ref.component(1).rational_value((2, 3)) == (5,)


def test_pares_nao_superaditivos() -> None:
    paridade = SuperadditiveOracle(AffineMonoid.free(1), lambda s: s[0] % 2)
    assert paridade.check_superadditive([((1,), (1,)), ((2,), (1,))]) == [((1,), (1,))]
