"""
Testes para polycone.dioph.

Cobre:
- Menor subespaço afim racional
- Convergentes exatos de √2
- Varredura no toro (inclusive q sem candidato numa coordenada) e simetria
- Aproximação uniforme: √2 com k = 1, ε = 1/4 → {3/2, 7/5}; ponto racional;
  caso 2D dentro de uma reta racional; k ∈ {2, 3} em dimensão 2 e 3;
  orçamento esgotado
- Preservação de ordem com coordenadas iguais
- Extensão com dois denominadores
- Perturbação racional de divisores com suporte preservado
"""

from fractions import Fraction

import pytest

from polycone.dioph import (
    ApproximationTuple,
    check_order_preservation,
    check_symmetry,
    convergents,
    extend_approximation,
    nearest_rational_in_subspace,
    perturb_divisor,
    smallest_rational_affine,
    torus_scan,
    uniform_approximate,
    verify_extension,
    verify_tuple,
)
from polycone.erros import BudgetExhaustedError
from polycone.scalars import AffineSubspace, ExactScalar, ExactVector, QuadraticField, sup_distance

R2 = ExactScalar.sqrt(2)


# ===========================================================================
# Subespaço racional mínimo
# ===========================================================================


def test_subespaco_de_ponto_racional_e_o_proprio_ponto() -> None:
    W = smallest_rational_affine([Fraction(1, 3), 2])
    assert W.dimension == 0
    assert W.contains([Fraction(1, 3), 2])


def test_subespaco_de_ponto_com_uma_raiz() -> None:
    x = ExactVector.of([R2, 1])
    W = smallest_rational_affine(x)
    assert W.dimension == 1
    assert W.contains(x)
    assert W.is_rational()
    assert W.contains([5, 1])
    assert not W.contains([5, 2])


def test_subespaco_com_duas_raizes_independentes() -> None:
    K = QuadraticField.for_radicands([2, 3])
    x = ExactVector.of([K.sqrt(2), K.sqrt(3)])
    assert smallest_rational_affine(x).dimension == 2


# ===========================================================================
# Frações contínuas e varreduras
# ===========================================================================


def test_convergentes_de_raiz_de_dois() -> None:
    assert convergents(R2, 12) == [(1, 1), (3, 2), (7, 5), (17, 12)]


def test_varredura_no_toro() -> None:
    q, w = torus_scan([R2], [0], Fraction(1, 4), budget=10)
    assert (q, w) == (2, (3,))


def test_varredura_esgota_orcamento() -> None:
    with pytest.raises(BudgetExhaustedError, match="Nenhum q"):
        torus_scan([R2], [0], Fraction(1, 1000), budget=5)


def test_varredura_pula_q_sem_candidato_em_alguma_coordenada() -> None:
    """Em q = 2 só a primeira coordenada tem inteiro próximo; a varredura segue até q = 3."""
    K = QuadraticField.for_radicands([2, 3])
    q, w = torus_scan(ExactVector.of([K.sqrt(2), K.sqrt(3)]), [0, 0], Fraction(1, 4), budget=10)
    assert (q, w) == (3, (4, 5))


def test_simetria() -> None:
    rel = check_symmetry([R2], Fraction(1, 4), multiples=(1,), budget=20)
    assert rel[0].to_json() == {"m": 1, "k_neg": 1, "k_pos": 3}


# ===========================================================================
# Aproximação uniforme
# ===========================================================================


def test_aproximacao_de_raiz_de_dois() -> None:
    """k = 1, ε = 1/4: os pontos são 3/2 e 7/5."""
    tup = uniform_approximate([R2], 1, Fraction(1, 4), budget=100)
    assert set(tup.points) == {(Fraction(3, 2),), (Fraction(7, 5),)}
    assert tup.denominators == (2, 5)
    assert all(c.passed for c in verify_tuple([R2], tup, Fraction(1, 4)))
    assert tup.to_json()["denominators"] == [2, 5]


def test_aproximacao_de_ponto_racional() -> None:
    x = [Fraction(1, 3), Fraction(1, 2)]
    tup = uniform_approximate(x, 1, Fraction(1, 10))
    assert tup.points == ((Fraction(1, 3), Fraction(1, 2)),)
    assert tup.denominators == (6,)
    assert tup.weights[0] == 1


def test_aproximacao_em_reta_racional() -> None:
    """x = (√2, 1) vive na reta y = 1; os pontos ficam nela."""
    x = ExactVector.of([R2, 1])
    eps = Fraction(1, 4)
    tup = uniform_approximate(x, 1, eps, budget=50)
    assert tup.points == ((Fraction(3, 2), Fraction(1)), (Fraction(4, 3), Fraction(1)))
    assert all(c.passed for c in verify_tuple(x, tup, eps))
    assert check_order_preservation(x, tup, eps).passed
    assert len(tup.rows()) == 2


@pytest.mark.parametrize("k", [2, 3])
def test_aproximacao_com_k_maior_que_um_em_duas_dimensoes(k: int) -> None:
    K = QuadraticField.for_radicands([2, 3])
    x = ExactVector.of([K.sqrt(2), K.sqrt(3)])
    eps = Fraction(1, 4)
    tup = uniform_approximate(x, k, eps, budget=50_000)
    assert len(tup.points) == 3
    assert tup.k == k
    assert all(c.passed for c in verify_tuple(x, tup, eps))


def test_aproximacao_com_k_maior_que_um_em_tres_dimensoes() -> None:
    """(√2, 1 + √2, √3) vive num plano racional de ℚ³."""
    K = QuadraticField.for_radicands([2, 3])
    x = ExactVector.of([K.sqrt(2), K.sqrt(2) + 1, K.sqrt(3)])
    eps = Fraction(1)
    tup = uniform_approximate(x, 2, eps, budget=50_000)
    assert len(tup.points) == 3
    assert all(p[1] - p[0] == 1 for p in tup.points)
    assert all(c.passed for c in verify_tuple(x, tup, eps))


def test_ordem_exige_coordenadas_iguais_para_qualquer_k() -> None:
    """Com ε grande, pontos que separam coordenadas iguais de x ainda reprovam."""
    x = ExactVector.of([R2, R2])
    tup = ApproximationTuple(
        ((Fraction(3, 2), Fraction(1)), (Fraction(1), Fraction(2))),
        1,
        (2, 1),
        (ExactScalar.of(Fraction(1, 2)), ExactScalar.of(Fraction(1, 2))),
    )
    chk = check_order_preservation(x, tup, Fraction(4))
    assert not chk.passed
    assert chk.witness == (0, 0, 1)


def test_ordem_preservada_com_coordenadas_iguais() -> None:
    x = ExactVector.of([R2, R2])
    tup = uniform_approximate(x, 2, Fraction(1), budget=1_000)
    assert all(p[0] == p[1] for p in tup.points)
    assert check_order_preservation(x, tup, Fraction(1)).passed


def test_aproximacao_orcamento_esgotado() -> None:
    with pytest.raises(BudgetExhaustedError) as info:
        uniform_approximate([R2], 1, Fraction(1, 100), budget=5)
    assert info.value.tightest is not None


def test_aproximacao_parametros_invalidos() -> None:
    with pytest.raises(ValueError):
        uniform_approximate([R2], 0, Fraction(1, 4))
    with pytest.raises(ValueError):
        uniform_approximate([R2], 1, 0)


# ===========================================================================
# Extensão
# ===========================================================================


def test_extensao_com_dois_denominadores() -> None:
    eps = eta = Fraction(1, 4)
    res = extend_approximation([R2], 1, eps, eta, [Fraction(3, 2)], 2, budget=50)
    assert res.k2 == 3
    assert res.x2 == (Fraction(4, 3),)
    assert res.approximation.points[:2] == ((Fraction(3, 2),), (Fraction(4, 3),))
    assert all(c.passed for c in verify_extension([R2], eps, eta, res, 2))


def test_extensao_hipotese_violada() -> None:
    with pytest.raises(ValueError, match="Hipótese"):
        extend_approximation([R2], 1, Fraction(1, 4), Fraction(1, 4), [1], 1)


# ===========================================================================
# Perturbação
# ===========================================================================


def test_perturbacao_sem_zeros() -> None:
    eps = Fraction(1, 10)
    res = perturb_divisor([0, 1], [[1, 0]], [R2], eps)
    assert res.divisor[1] == 1
    assert sup_distance(res.real_divisor, res.divisor) < eps


def test_perturbacao_preserva_zeros() -> None:
    """D' = (2√2, 0): a componente nula continua nula em D''."""
    eps = Fraction(1, 10)
    res = perturb_divisor([0, 0], [[1, 1], [1, -1]], [R2, R2], eps)
    assert res.divisor[1] == 0
    assert res.divisor[0] > 0
    assert res.coefficients[0] == res.coefficients[1]
    assert sup_distance(res.real_divisor, res.divisor) < eps


def test_perturbacao_de_divisor_nao_efetivo() -> None:
    with pytest.raises(ValueError, match="efetivo"):
        perturb_divisor([0], [[1]], [-R2], Fraction(1, 10))


def test_racional_mais_proximo_no_subespaco() -> None:
    K = AffineSubspace.build([0, 0], [[1, 1]])
    s = nearest_rational_in_subspace(K, ExactVector.of([R2, R2]), Fraction(1, 100))
    assert s[0] == s[1]
    assert sup_distance(ExactVector.of([R2, R2]), s) < Fraction(1, 100)
    with pytest.raises(ValueError):
        nearest_rational_in_subspace(K, ExactVector.of([R2, 0]), Fraction(1, 100))
