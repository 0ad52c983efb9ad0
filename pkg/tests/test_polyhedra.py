"""
Testes para polycone.polyhedra.

Cobre:
- Dupla descrição: geradores → facetas → raios para cones cheios e não cheios
- Recusa de cones com reta
- Pertinência nos modos closure, relint e interior
- Escape de raio: testemunha de não extremalidade e caso extremo
- Politopos: vértices, pontos do reticulado, LP exata, ilimitados recusados
"""

from fractions import Fraction

import pytest

from polycone.oracles import escape_oracle, is_extreme_by_rank
from polycone.polyhedra import (
    RationalCone,
    RationalPolytope,
    cone_from_json,
    cone_over,
    dual_description,
    extremal_rays,
    membership,
    minkowski_sum,
    ray_escape,
    segment_hyperplane,
)
from polycone.scalars import ExactScalar, ExactVector


# ===========================================================================
# Cones
# ===========================================================================


def test_cone_plano_facetas_e_raios() -> None:
    cone = RationalCone.from_generators([(1, 0), (1, 3), (1, 1)])
    assert cone.dimension == 2
    assert extremal_rays(cone) == [(1, 0), (1, 3)]
    assert dual_description(cone) == [(0, 1), (3, -1)]


def test_geradores_nao_primitivos_sao_normalizados() -> None:
    cone = RationalCone.from_generators([(2, 0), (0, 3)])
    assert cone.generators == ((0, 1), (1, 0))


def test_desigualdades_regeneram_o_cone() -> None:
    por_raios = RationalCone.from_generators([(1, 0, 0), (0, 1, 0), (1, 1, 1)])
    por_desig = RationalCone.from_inequalities(dual_description(por_raios), 3)
    assert por_raios.same_set(por_desig)
    assert set(por_desig.rays) == {(1, 0, 0), (0, 1, 0), (1, 1, 1)}
    assert all(is_extreme_by_rank(por_raios, r) for r in por_raios.rays)


def test_cone_nao_cheio_tem_equacoes() -> None:
    cone = RationalCone.from_generators([(1, 0, 1), (0, 1, 1)])
    assert cone.dimension == 2
    assert len(cone.equations) == 1
    assert cone.equations[0] in {(1, 1, -1), (-1, -1, 1)}
    assert membership(cone, (1, 1, 2))
    assert not membership(cone, (1, 1, 1))


def test_cone_com_reta_recusado() -> None:
    with pytest.raises(ValueError, match="reta"):
        RationalCone.from_generators([(1, 0), (-1, 0), (0, 1)])


def test_from_both_diverge() -> None:
    with pytest.raises(ValueError, match="divergem"):
        RationalCone.from_both([(1, 0), (0, 1)], [(1, 0), (-1, 1)], 2)


def test_cone_from_json_formatos() -> None:
    a = cone_from_json({"rays": [[1, 0], [0, 1]]})
    b = cone_from_json({"ineqs": [[1, 0], [0, 1]], "dim": 2})
    assert a.same_set(b)
    assert a.to_json()["dimension"] == 2
    with pytest.raises(ValueError):
        cone_from_json({"geradores": []})


# ===========================================================================
# Pertinência
# ===========================================================================


def test_membership_modos() -> None:
    orth = RationalCone.orthant(2)
    assert membership(orth, (0, 1))
    assert not membership(orth, (0, 1), "interior")
    assert membership(orth, (1, 1), "interior")
    assert membership(orth, (0, 0), "relint")
    assert not membership(orth, (-1, 1))
    with pytest.raises(ValueError):
        membership(orth, (1, 1), "fronteira")


def test_membership_com_ponto_irracional() -> None:
    """(1, √2) está no cone gerado por (1,0),(1,3) pois √2 < 3."""
    cone = RationalCone.from_generators([(1, 0), (1, 3)])
    r2 = ExactScalar.sqrt(2)
    assert membership(cone, ExactVector.of([1, r2]), "interior")
    assert not membership(cone, ExactVector.of([1, r2 * 3]))


# ===========================================================================
# Escape de raio
# ===========================================================================


def test_escape_testemunha_de_nao_extremalidade() -> None:
    orth = RationalCone.orthant(2)
    base, through = ExactVector.of([2, 0]), ExactVector.of([1, 1])
    res = ray_escape(orth, base, through)
    assert res.t_sup == 2
    assert res.t_star == Fraction(3, 2)
    assert res.witness == ExactVector.of([Fraction(1, 2), Fraction(3, 2)])
    combinacao = base * (1 - res.weight) + res.witness * res.weight
    assert combinacao == through
    assert escape_oracle(orth, base, through) == res.t_sup


def test_escape_sobre_raio_extremo_sem_testemunha() -> None:
    orth = RationalCone.orthant(2)
    res = ray_escape(orth, (1, 1), (0, 1))
    assert res.t_sup == 1
    assert res.witness is None
    assert res.to_json()["witness"] is None


def test_escape_ilimitado() -> None:
    orth = RationalCone.orthant(2)
    res = ray_escape(orth, (1, 0), (1, 1))
    assert res.t_sup is None
    assert res.to_json()["t_sup"] == "inf"
    assert res.t_star == 2
    assert escape_oracle(orth, (1, 0), (1, 1)) is None


def test_escape_base_fora_do_cone() -> None:
    with pytest.raises(ValueError):
        ray_escape(RationalCone.orthant(2), (-1, 0), (1, 1))


# ===========================================================================
# Politopos
# ===========================================================================


def test_politopo_triangulo_pontos_do_reticulado() -> None:
    """{u ≥ 0, u₁ + u₂ ≤ 2} tem 6 pontos inteiros."""
    P = RationalPolytope.from_inequalities([[1, 0], [0, 1], [-1, -1]], [0, 0, 2])
    assert P.vertices == ((0, 0), (0, 2), (2, 0))
    assert len(P.lattice_points()) == 6
    assert P.dimension == 2
    assert P.vertex_denominator() == 1


def test_politopo_com_vertices_fracionarios() -> None:
    P = RationalPolytope.from_inequalities([[1], [-2]], [0, 1])
    assert P.vertices == ((Fraction(0),), (Fraction(1, 2),))
    assert P.vertex_denominator() == 2
    assert P.lattice_points() == [(0,)]


def test_politopo_ilimitado_recusado() -> None:
    with pytest.raises(ValueError, match="ilimitado"):
        RationalPolytope.from_inequalities([[1, 0], [0, 1]], [0, 0])


def test_minimize_exato() -> None:
    P = RationalPolytope.hull([(0, 0), (2, 0), (0, 2)])
    valor, ponto = P.minimize([1, -1], 3)
    assert valor == 1
    assert ponto == (0, 2)


def test_minkowski_e_segmento() -> None:
    S = RationalPolytope.hull([(0, 0), (1, 0)])
    T = RationalPolytope.hull([(0, 0), (0, 1)])
    Q = minkowski_sum(S, T)
    assert len(Q.vertices) == 4
    t = segment_hyperplane((0, 0), (2, 2), [1, 1], 2)
    assert t == Fraction(1, 2)
    assert segment_hyperplane((0, 0), (1, 0), [0, 1], 1) is None


def test_escala_e_pertinencia_no_politopo() -> None:
    P = RationalPolytope.hull([(0, 0), (1, 0), (0, 1)])
    Q = P.scale(Fraction(1, 2))
    assert Q.vertices == ((0, 0), (0, Fraction(1, 2)), (Fraction(1, 2), 0))
    assert Q.vertex_denominator() == 2
    assert P.contains((Fraction(1, 3), Fraction(1, 3)))
    assert not Q.contains((1, 0))
    with pytest.raises(ValueError):
        P.scale(0)


def test_cone_sobre_politopo() -> None:
    C = cone_over(RationalPolytope.hull([(1, -1), (1, 1)]))
    assert set(C.rays) == {(1, -1), (1, 1)}
    assert membership(C, (2, 1))
    assert not membership(C, (1, 2))
    with pytest.raises(ValueError):
        cone_over(RationalPolytope.hull([(0, 0), (1, 0), (-1, 0)]))


def test_cone_sobre_a_origem_e_o_cone_nulo() -> None:
    C = cone_over(RationalPolytope.hull([(0, 0)]))
    assert C.rays == ()
    assert C.dimension == 0
    assert membership(C, (0, 0))
    assert not membership(C, (0, 1))
