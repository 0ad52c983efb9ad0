"""
Testes para polycone.toric.

Cobre:
- Validação de leques: completude, primitividade, lisura
- Seções: P² com 2·D₃ (6 seções), P¹ com 3·D₊ (4 seções)
- Parte fixa e ordem assintótica na explosão do plano (Fix = 2E, Mob = 0)
- Período de truncamento, grau de curvas e contagens de Ehrhart
- Famílias μ : 𝒮 → divisores, fronteira adjunta e cone efetivo
- Semigrupo adjunto: base de Hilbert e regeneração das peças graduadas
- Decomposição PL de ord_E e endireitamento de Mob
"""

from fractions import Fraction

import pytest

from polycone.monoids import AffineMonoid
from polycone.toric import (
    DivisorFamily,
    ToricModel,
    TorusDivisor,
    adjoint_boundary,
    adjoint_semigroup,
    asymptotic_ord,
    canonical_divisor,
    check_straightening,
    curve_degree,
    divisor_from_json,
    effective_cone,
    ehrhart_counts,
    family_from_json,
    fix_ratio_sequence,
    fixed_part,
    graded_piece,
    is_adjoint_shaped,
    is_eventually_polynomial,
    mob_oracle,
    model_from_json,
    nsigma,
    ord_pl_decomposition,
    ord_positive_rays,
    sections,
    straightened_value,
    truncated_grading,
    truncation_period,
    verify_generation,
)


@pytest.fixture
def explosao() -> ToricModel:
    return ToricModel.blowup_plane()


def _familia_reta() -> DivisorFamily:
    """μ(e₁) = 2 pontos, μ(e₂) = 3 pontos em P¹."""
    return DivisorFamily.of([[2, 0], [3, 0]])


def _familia_explosao() -> DivisorFamily:
    """μ(s) = s₁·D₁ + s₂·E na explosão."""
    return DivisorFamily.of([[1, 0, 0, 0], [0, 0, 0, 1]])


# ===========================================================================
# Modelos
# ===========================================================================


def test_modelos_padrao_sao_lisos() -> None:
    for X in (
        ToricModel.projective_line(),
        ToricModel.projective_plane(),
        ToricModel.blowup_plane(),
        ToricModel.hirzebruch(2),
    ):
        assert X.is_smooth
    assert ToricModel.hirzebruch(1).dim == 2


def test_leque_singular_e_aceito() -> None:
    X = ToricModel.of([[1, 0], [0, 1], [-1, -2]], [[0, 1], [1, 2], [2, 0]])
    assert not X.is_smooth
    assert len(X.cones) == 3


def test_leque_incompleto_recusado() -> None:
    with pytest.raises(ValueError, match="incompleto"):
        ToricModel.of([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2]])


def test_raio_nao_primitivo_recusado() -> None:
    with pytest.raises(ValueError, match="primitivo"):
        ToricModel.of([[2, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [2, 0]])


def test_modelo_json() -> None:
    X = model_from_json({"rays": [[1], [-1]], "max_cones": [[0], [1]]})
    assert X.to_json()["rays"] == [[1], [-1]]
    with pytest.raises(ValueError):
        model_from_json({"rays": [[1], [-1]]})


def test_grafo_de_facetas_do_plano() -> None:
    g = ToricModel.projective_plane().facet_graph
    assert g.number_of_nodes() == 3
    assert g.number_of_edges() == 3


# ===========================================================================
# Divisores e seções
# ===========================================================================


def test_aritmetica_de_divisores() -> None:
    D = TorusDivisor.of([1, "1/2", 0])
    E = TorusDivisor.prime(3, 2, 2)
    assert (D + E).coefficients == (1, Fraction(1, 2), 2)
    assert (D * 2).is_integral()
    assert not D.is_integral()
    assert TorusDivisor.zero(3) <= D
    assert (D - D).is_zero()
    assert D.to_json() == ["1/1", "1/2", "0/1"]


def test_divisor_json_confere_numero_de_raios() -> None:
    X = ToricModel.projective_plane()
    assert divisor_from_json({"coefficients": [0, 0, 2]}, X) == TorusDivisor.of([0, 0, 2])
    with pytest.raises(ValueError, match="coeficientes"):
        divisor_from_json([1, 2], X)


def test_divisor_canonico() -> None:
    assert canonical_divisor(ToricModel.projective_plane()).coefficients == (-1, -1, -1)


def test_secoes_do_plano() -> None:
    """2·D₃ em P² tem 6 seções (cônicas)."""
    X = ToricModel.projective_plane()
    assert len(sections(X, TorusDivisor.of([0, 0, 2]))) == 6


def test_secoes_da_reta() -> None:
    X = ToricModel.projective_line()
    D = TorusDivisor.of([3, 0])
    assert sorted(sections(X, D)) == [(-3,), (-2,), (-1,), (0,)]
    assert curve_degree(X, D) == 3


def test_grau_exige_curva() -> None:
    with pytest.raises(ValueError, match="curvas"):
        curve_degree(ToricModel.projective_plane(), TorusDivisor.of([0, 0, 1]))


# ===========================================================================
# Parte fixa e ordem assintótica
# ===========================================================================


def test_parte_fixa_de_2E(explosao: ToricModel) -> None:
    D = TorusDivisor.prime(4, 3, 2)
    fp = fixed_part(explosao, D)
    assert fp.fix == D
    assert fp.mob.is_zero()
    assert fp.to_json()["fix"] == ["0/1", "0/1", "0/1", "2/1"]


def test_ordem_assintotica_de_2E(explosao: ToricModel) -> None:
    D = TorusDivisor.prime(4, 3, 2)
    assert asymptotic_ord(explosao, D, 3) == 2
    assert nsigma(explosao, D).coefficients == (0, 0, 0, 2)
    assert ord_positive_rays(explosao, D) == [3]
    assert fix_ratio_sequence(explosao, D, 3, kmax=3) == [(1, 2), (2, 2), (3, 2)]


def test_parte_fixa_nula_no_plano() -> None:
    X = ToricModel.projective_plane()
    D = TorusDivisor.of([0, 0, 2])
    fp = fixed_part(X, D)
    assert fp.fix.is_zero()
    assert fp.mob == D
    assert truncation_period(X, D) == 1


def test_parte_fixa_erros() -> None:
    X = ToricModel.projective_line()
    with pytest.raises(ValueError, match="inteiro"):
        fixed_part(X, TorusDivisor.of(["1/2", 0]))
    with pytest.raises(ValueError, match="sem seções"):
        fixed_part(X, TorusDivisor.of([-1, 0]))


def test_ordem_assintotica_erros(explosao: ToricModel) -> None:
    with pytest.raises(ValueError, match="inexistente"):
        asymptotic_ord(explosao, TorusDivisor.zero(4), 9)
    with pytest.raises(ValueError, match="vazio"):
        nsigma(explosao, TorusDivisor.of([-1, 0, 0, 0]))


# ===========================================================================
# Ehrhart
# ===========================================================================


def test_ehrhart_do_plano() -> None:
    X = ToricModel.projective_plane()
    contagens = ehrhart_counts(X, TorusDivisor.of([0, 0, 1]), kmax=5)
    assert contagens == [1, 3, 6, 10, 15, 21]
    assert is_eventually_polynomial(contagens, 2)
    assert not is_eventually_polynomial([1, 2, 4, 8, 16, 32], 2)


def test_ehrhart_com_divisor_fracionario() -> None:
    """P_D = [−1/2, 0]: passo mmc(2, 2) = 2 torna o politopo escalado inteiro."""
    X = ToricModel.projective_line()
    assert ehrhart_counts(X, TorusDivisor.of(["1/2", 0]), kmax=2) == [1, 2, 3]


def test_ehrhart_passo_e_mmc_e_nao_produto() -> None:
    """D = (1/2, 1/3): vértices −1/2 e 1/3, passo 6 e não 36."""
    X = ToricModel.projective_line()
    assert ehrhart_counts(X, TorusDivisor.of(["1/2", "1/3"]), kmax=1) == [1, 6]


# ===========================================================================
# Famílias
# ===========================================================================


def test_familia_json() -> None:
    X = ToricModel.projective_line()
    F = family_from_json({"grading_gens": 2, "matrix": [[2, 0], [3, 0]]}, X)
    assert F.length == 2
    assert F.mu((1, 1)).coefficients == (5, 0)
    assert F.column(0) == (2, 3)
    assert F.to_json()["grading"] == [[0, 1], [1, 0]]


def test_familia_json_invalida() -> None:
    X = ToricModel.projective_line()
    with pytest.raises(ValueError, match="matrix"):
        family_from_json({"grading_gens": 1}, X)
    with pytest.raises(ValueError, match="grading_gens"):
        family_from_json({"grading_gens": 3, "matrix": [[1, 0]]}, X)
    with pytest.raises(ValueError, match="raio"):
        family_from_json({"matrix": [[1, 0, 0]]}, X)


def test_fronteira_adjunta() -> None:
    """D = 2(K + Δ + A) com Δ = D₁/2 e A = D₃."""
    X = ToricModel.projective_plane()
    A = TorusDivisor.prime(3, 2)
    D = TorusDivisor.of([-1, -2, 0])
    assert adjoint_boundary(X, D, 2, A).coefficients == (Fraction(1, 2), 0, 0)
    F = DivisorFamily.of([[-1, -2, 0]])
    assert is_adjoint_shaped(X, F, A, [2])
    assert not is_adjoint_shaped(X, F, A, [1])


def test_cone_efetivo_da_explosao(explosao: ToricModel) -> None:
    F = _familia_explosao()
    assert effective_cone(explosao, F).same_set(F.grading.cone)


def test_truncamento_da_graduacao() -> None:
    assert truncated_grading(_familia_reta(), 2).generators == ((0, 2), (2, 0))


# ===========================================================================
# Semigrupo adjunto
# ===========================================================================


def test_semigrupo_adjunto_da_reta() -> None:
    """Peças de grau 1: 3 pontos sobre e₁ e 4 sobre e₂."""
    X = ToricModel.projective_line()
    F = _familia_reta()
    res = adjoint_semigroup(X, F, kappa=2)
    assert len(res.basis) == 7
    assert (1, 0, -2) in res.basis
    assert (0, 1, -3) in res.basis
    assert res.integral_extension
    assert res.to_json()["size"] == 7
    assert verify_generation(X, F, res, bound=4) == []


def test_peca_graduada() -> None:
    X = ToricModel.projective_line()
    assert sorted(graded_piece(X, _familia_reta(), (1, 0))) == [(1, 0, -2), (1, 0, -1), (1, 0, 0)]


def test_semigrupo_adjunto_erros() -> None:
    X = ToricModel.projective_line()
    with pytest.raises(ValueError, match="κ"):
        adjoint_semigroup(X, _familia_reta(), kappa=0)
    nao_saturada = DivisorFamily.of([[2, 0], [3, 0]], AffineMonoid.of([(2, 0), (1, 1), (0, 2)]))
    with pytest.raises(ValueError, match="saturada"):
        adjoint_semigroup(X, nao_saturada)
    with pytest.raises(ValueError, match="sem seções"):
        adjoint_semigroup(X, DivisorFamily.of([[-1, 0]]))


# ===========================================================================
# Decomposição PL e endireitamento
# ===========================================================================


def test_ord_pl_na_explosao(explosao: ToricModel) -> None:
    """ord_E(s) = max(0, s₂ − s₁) e f♯_E(s) = min(s₁, s₂)."""
    res = ord_pl_decomposition(explosao, _familia_explosao(), 3, samples=4, seed=0)
    assert res.ord_function.rational_value((1, 3)) == (2,)
    assert res.ord_function.rational_value((3, 1)) == (0,)
    assert res.sharp_function.rational_value((2, 5)) == (2,)
    assert len(res.dual_vertices) == 2
    assert all(c.passed for c in res.checks)
    assert not res.partially_ineffective
    assert res.to_json()["rho"] == 3


def test_ord_pl_raio_invalido(explosao: ToricModel) -> None:
    with pytest.raises(ValueError, match="inexistente"):
        ord_pl_decomposition(explosao, _familia_explosao(), 7)


def test_valor_endireitado(explosao: ToricModel) -> None:
    assert straightened_value(explosao, _familia_explosao(), (1, 3)) == (1, 0, 0, 1)


def test_endireitamento_de_mob(explosao: ToricModel) -> None:
    checks = check_straightening(explosao, _familia_explosao(), box=2)
    assert [c.passed for c in checks] == [True, True]


def test_oraculo_de_mob_exige_familia_inteira(explosao: ToricModel) -> None:
    with pytest.raises(ValueError, match="inteira"):
        mob_oracle(explosao, DivisorFamily.of([["1/2", 0, 0, 0]]))
