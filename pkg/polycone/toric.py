"""
Modelos tóricos: seções como pontos do reticulado.

Num leque completo com raios v_ρ, um divisor invariante D = Σ a_ρD_ρ tem
H⁰(X, D) indexado pelos pontos inteiros de P_D = {u : ⟨u, v_ρ⟩ + a_ρ ≥ 0}.
Sobre essa tradução este módulo calcula:

- partes fixa e móvel (:func:`fixed_part`) por mínimos no reticulado;
- ordem assintótica de anulamento (:func:`asymptotic_ord`) por LP exata;
- o semigrupo total de uma família μ : 𝒮 → divisores e sua base de Hilbert
  (:func:`adjoint_semigroup`);
- a decomposição linear por partes de s ↦ ord_ρ‖μ(s)‖ por enumeração de
  bases do LP dual (:func:`ord_pl_decomposition`).

Lisura do leque é apenas sinalizada; leques singulares são aceitos como
"melhor esforço".

Uso standalone::

    python -m polycone.toric --modelo plano --d 2
"""

import argparse
import itertools
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import networkx as nx

from polycone.config import (
    DEFAULT_SEED,
    TORIC_MAX_GRADING,
    TORIC_MAX_RAYS,
    TRUNCATION_IMAX,
    TRUNCATION_PMAX,
)
from polycone.monoids import AffineMonoid, decompose, hilbert_basis, truncate
from polycone.oracles import Check
from polycone.plfun import (
    PLFunction,
    Straightening,
    SuperadditiveOracle,
    check_concave,
    halton_point,
    sample_interior_rays,
)
from polycone.polyhedra import RationalCone, RationalPolytope, membership
from polycone.scalars import (
    as_fraction,
    as_rational_vector,
    determinant,
    fraction_to_str,
    rank,
    solve_rational,
)

log = logging.getLogger(__name__)

IntVector = tuple[int, ...]
RationalPoint = tuple[Fraction, ...]


def _dot(a: Sequence, x: Sequence):
    return sum(ai * xi for ai, xi in zip(a, x))


# ===========================================================================
# ToricModel
# ===========================================================================


@dataclass(frozen=True)
class ToricModel:
    """Leque completo: raios primitivos e cones maximais (índices de raios)."""

    rays: tuple[IntVector, ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rays:
            raise ValueError("Modelo sem raios")
        if len(self.rays) > TORIC_MAX_RAYS:
            raise ValueError(f"Modelo com mais de {TORIC_MAX_RAYS} raios")
        n = len(self.rays[0])
        for r in self.rays:
            if len(r) != n or not any(r):
                raise ValueError(f"Raio inválido: {r}")
            if math.gcd(*r) != 1:
                raise ValueError(f"Raio não primitivo: {r}")
        for c in self.max_cones:
            if not c or any(i < 0 or i >= len(self.rays) for i in c):
                raise ValueError(f"Cone maximal com índices inválidos: {c}")
        self._validar_completude()
        if not self.is_smooth:
            log.warning("[TORIC] leque não liso: resultados em regime de melhor esforço")

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @cached_property
    def cones(self) -> tuple[RationalCone, ...]:
        return tuple(
            RationalCone.from_generators([self.rays[i] for i in c], self.dim)
            for c in self.max_cones
        )

    @cached_property
    def facet_graph(self) -> nx.Graph:
        """Cones maximais ligados quando compartilham uma faceta."""
        g = nx.Graph()
        g.add_nodes_from(range(len(self.max_cones)))
        faces: dict[frozenset, list[int]] = {}
        for idx, (cone, indices) in enumerate(zip(self.cones, self.max_cones)):
            for a in cone.facets:
                face = frozenset(i for i in indices if _dot(a, self.rays[i]) == 0)
                faces.setdefault(face, []).append(idx)
        for face, donos in faces.items():
            for i, j in itertools.combinations(donos, 2):
                g.add_edge(i, j, face=tuple(sorted(face)))
        g.graph["faces"] = faces
        return g

    def _validar_completude(self, amostras: int = 24) -> None:
        n = self.dim
        for idx, cone in enumerate(self.cones):
            if cone.dimension != n:
                raise ValueError(f"Cone maximal {idx} não tem dimensão {n}")
        for face, donos in self.facet_graph.graph["faces"].items():
            if len(donos) != 2:
                raise ValueError(
                    f"Faceta {sorted(face)} aparece em {len(donos)} cones; leque incompleto"
                )
        for i, j in itertools.combinations(range(len(self.cones)), 2):
            inter = RationalCone.from_inequalities(
                list(self.cones[i].facets) + list(self.cones[j].facets), n
            )
            if inter.dimension == n:
                raise ValueError(f"Cones {i} e {j} se sobrepõem")
        for k in range(1, amostras + 1):
            ponto = tuple(2 * c - 1 for c in halton_point(k, n))
            if not any(membership(c, ponto) for c in self.cones):
                raise ValueError(f"Direção {ponto} não coberta pelo leque")

    @cached_property
    def is_smooth(self) -> bool:
        return all(
            len(c) == self.dim and abs(determinant([self.rays[i] for i in c])) == 1
            for c in self.max_cones
        )

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "smooth": self.is_smooth,
        }

    # ------------------------------------------------------------------ modelos

    @classmethod
    def of(cls, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]) -> "ToricModel":
        return cls(tuple(tuple(int(c) for c in r) for r in rays), tuple(tuple(c) for c in max_cones))

    @classmethod
    def projective_line(cls) -> "ToricModel":
        """Raio 0 = D₊ (v = +1), raio 1 = D₋ (v = −1)."""
        return cls.of([[1], [-1]], [[0], [1]])

    @classmethod
    def projective_plane(cls) -> "ToricModel":
        return cls.of([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [2, 0]])

    @classmethod
    def blowup_plane(cls) -> "ToricModel":
        """Explosão do plano num ponto fixo; o raio 3, (1, 1), é o divisor excepcional."""
        return cls.of([[1, 0], [0, 1], [-1, -1], [1, 1]], [[0, 3], [3, 1], [1, 2], [2, 0]])

    @classmethod
    def hirzebruch(cls, a: int) -> "ToricModel":
        return cls.of([[1, 0], [0, 1], [-1, a], [0, -1]], [[0, 1], [1, 2], [2, 3], [3, 0]])


def model_from_json(obj: dict) -> ToricModel:
    """Decodifica {"rays": [[…]], "max_cones": [[…]]}.

    Raises:
        ValueError: Campos ausentes ou leque inválido.
    """
    if not isinstance(obj, dict) or "rays" not in obj or "max_cones" not in obj:
        raise ValueError("Modelo JSON precisa de 'rays' e 'max_cones'")
    return ToricModel.of(obj["rays"], obj["max_cones"])


# ===========================================================================
# Divisores
# ===========================================================================


@dataclass(frozen=True)
class TorusDivisor:
    """D = Σ a_ρ D_ρ com coeficientes racionais na ordem dos raios."""

    coefficients: tuple[Fraction, ...]

    @classmethod
    def of(cls, coefs: Sequence[int | Fraction | str]) -> "TorusDivisor":
        return cls(as_rational_vector(coefs))

    @classmethod
    def zero(cls, r: int) -> "TorusDivisor":
        return cls(tuple(Fraction(0) for _ in range(r)))

    @classmethod
    def prime(cls, r: int, i: int, mult: int | Fraction = 1) -> "TorusDivisor":
        return cls(tuple(as_fraction(mult) if j == i else Fraction(0) for j in range(r)))

    def __add__(self, outro: "TorusDivisor") -> "TorusDivisor":
        return TorusDivisor(tuple(a + b for a, b in zip(self.coefficients, outro.coefficients)))

    def __sub__(self, outro: "TorusDivisor") -> "TorusDivisor":
        return TorusDivisor(tuple(a - b for a, b in zip(self.coefficients, outro.coefficients)))

    def __mul__(self, k: int | Fraction) -> "TorusDivisor":
        return TorusDivisor(tuple(a * k for a in self.coefficients))

    __rmul__ = __mul__

    def __le__(self, outro: "TorusDivisor") -> bool:
        return all(a <= b for a, b in zip(self.coefficients, outro.coefficients))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coefficients)

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_json(self) -> list[str]:
        return [fraction_to_str(a) for a in self.coefficients]


def divisor_from_json(obj: object, X: ToricModel) -> TorusDivisor:
    """Aceita lista de coeficientes ou {"coefficients": [...]}."""
    coefs = obj.get("coefficients") if isinstance(obj, dict) else obj
    if not isinstance(coefs, list):
        raise ValueError("Divisor JSON deve ser lista ou ter 'coefficients'")
    if len(coefs) != len(X.rays):
        raise ValueError(f"Divisor com {len(coefs)} coeficientes; modelo tem {len(X.rays)} raios")
    return TorusDivisor.of(coefs)


def canonical_divisor(X: ToricModel) -> TorusDivisor:
    """K_X = −Σ D_ρ."""
    return TorusDivisor(tuple(Fraction(-1) for _ in X.rays))


def _checar(X: ToricModel, D: TorusDivisor) -> None:
    if len(D.coefficients) != len(X.rays):
        raise ValueError("Divisor incompatível com o número de raios")


# ===========================================================================
# Seções, Fix/Mob, ordem assintótica
# ===========================================================================


def section_polytope(X: ToricModel, D: TorusDivisor) -> RationalPolytope:
    """P_D = {u : ⟨u, v_ρ⟩ + a_ρ ≥ 0}; pode ser vazio."""
    _checar(X, D)
    return RationalPolytope.from_inequalities([list(v) for v in X.rays], D.coefficients)


def sections(X: ToricModel, D: TorusDivisor) -> list[IntVector]:
    """Pontos do reticulado de P_D (base de H⁰(X, D))."""
    return section_polytope(X, D).lattice_points()


@dataclass(frozen=True)
class FixedPart:
    fix: TorusDivisor
    mob: TorusDivisor

    def to_json(self) -> dict:
        return {"fix": self.fix.to_json(), "mob": self.mob.to_json()}


def _fix(X: ToricModel, D: TorusDivisor, pontos: Sequence[IntVector]) -> TorusDivisor:
    return TorusDivisor(
        tuple(
            min(_dot(u, v) + a for u in pontos)
            for v, a in zip(X.rays, D.coefficients)
        )
    )


def fixed_part(X: ToricModel, D: TorusDivisor) -> FixedPart:
    """Fix_ρ = min_{u ∈ P_D ∩ ℤⁿ} (⟨u, v_ρ⟩ + a_ρ) e Mob = D − Fix.

    Raises:
        ValueError: D não inteiro ou sem seções.
        RuntimeError: Pós-condição (Fix(Mob) = 0, mesmas seções) violada.
    """
    _checar(X, D)
    if not D.is_integral():
        raise ValueError("Parte fixa exige divisor inteiro")
    pontos = sections(X, D)
    if not pontos:
        raise ValueError("Divisor sem seções")
    fix = _fix(X, D, pontos)
    mob = D - fix
    pontos_mob = sections(X, mob)
    if sorted(pontos_mob) != sorted(pontos) or not _fix(X, mob, pontos_mob).is_zero():
        raise RuntimeError("Pós-condição de Fix/Mob violada")
    return FixedPart(fix, mob)


def asymptotic_ord(X: ToricModel, D: TorusDivisor, rho: int) -> Fraction:
    """ord_ρ‖D‖ = min sobre o politopo real P_D de ⟨u, v_ρ⟩ + a_ρ.

    Raises:
        ValueError: P_D vazio ou índice de raio inválido.
    """
    if not 0 <= rho < len(X.rays):
        raise ValueError(f"Raio {rho} inexistente")
    P = section_polytope(X, D)
    if P.is_empty():
        raise ValueError("Politopo de seções vazio")
    valor, _ = P.minimize(X.rays[rho], D.coefficients[rho])
    return valor


def nsigma(X: ToricModel, D: TorusDivisor) -> TorusDivisor:
    """N_σ‖D‖ = Σ_ρ ord_ρ‖D‖·D_ρ."""
    P = section_polytope(X, D)
    if P.is_empty():
        raise ValueError("Politopo de seções vazio")
    return TorusDivisor(
        tuple(P.minimize(v, a)[0] for v, a in zip(X.rays, D.coefficients))
    )


def ord_positive_rays(X: ToricModel, D: TorusDivisor) -> list[int]:
    """Raios com ord_ρ‖D‖ > 0."""
    return [i for i, c in enumerate(nsigma(X, D).coefficients) if c > 0]


def fix_ratio_sequence(X: ToricModel, D: TorusDivisor, rho: int, kmax: int = 20) -> list[tuple[int, Fraction]]:
    """(k, Fix(kD)_ρ/k) para k ≤ kmax com kD inteiro e com seções."""
    saida = []
    for k in range(1, kmax + 1):
        kD = D * k
        if not kD.is_integral() or not sections(X, kD):
            continue
        saida.append((k, fixed_part(X, kD).fix.coefficients[rho] / k))
    return saida


def truncation_period(X: ToricModel, D: TorusDivisor, imax: int = TRUNCATION_IMAX) -> int:
    """Menor p ≤ 24 com Mob(ipD) = i·Mob(pD) para i ≤ imax.

    Raises:
        ValueError: Nenhum p ≤ 24 satisfaz.
    """
    for p in range(1, TRUNCATION_PMAX + 1):
        base = fixed_part(X, D * p).mob
        if all(fixed_part(X, D * (i * p)).mob == base * i for i in range(2, imax + 1)):
            return p
    raise ValueError(f"Nenhum período ≤ {TRUNCATION_PMAX} para {D.to_json()}")


def curve_degree(X: ToricModel, D: TorusDivisor) -> Fraction:
    """Grau de D num modelo de dimensão 1.

    Raises:
        ValueError: Modelo de dimensão > 1.
    """
    if X.dim != 1:
        raise ValueError("Grau definido apenas para curvas")
    return sum(D.coefficients, Fraction(0))


# ===========================================================================
# Ehrhart
# ===========================================================================


def ehrhart_counts(X: ToricModel, D: TorusDivisor, kmax: int = 12, step: int | None = None) -> list[int]:
    """#(P_{k·step·D} ∩ ℤⁿ) para k = 0..kmax.

    ``step`` padrão é o mmc dos denominadores dos vértices, que torna o
    politopo escalado de reticulado.
    """
    P = section_polytope(X, D)
    if step is None:
        step = math.lcm(P.vertex_denominator(), *(a.denominator for a in D.coefficients))
    return [len(sections(X, D * (k * step))) for k in range(kmax + 1)]


def is_eventually_polynomial(counts: Sequence[int], degree: int) -> bool:
    """Diferenças finitas de ordem degree + 1 nulas na cauda da sequência."""
    difs = list(counts)
    for _ in range(degree + 1):
        difs = [b - a for a, b in zip(difs, difs[1:])]
    return bool(difs) and all(d == 0 for d in difs[len(difs) // 2:])


# ===========================================================================
# Famílias de divisores
# ===========================================================================


@dataclass(frozen=True)
class DivisorFamily:
    """μ : 𝒮 → divisores, aditiva; ``matrix[i]`` são os coeficientes de μ(eᵢ)."""

    grading: AffineMonoid
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.matrix:
            raise ValueError("Família vazia")
        if len(self.matrix) != self.grading.ambient_dim:
            raise ValueError("Linhas da matriz devem corresponder às coordenadas de 𝒮")
        if len(self.matrix) > TORIC_MAX_GRADING:
            raise ValueError(f"Graduação com mais de {TORIC_MAX_GRADING} geradores")
        if len({len(r) for r in self.matrix}) != 1:
            raise ValueError("Linhas da matriz com tamanhos distintos")

    @classmethod
    def of(
        cls, matrix: Sequence[Sequence[int | Fraction | str]], grading: AffineMonoid | None = None
    ) -> "DivisorFamily":
        linhas = tuple(as_rational_vector(r) for r in matrix)
        return cls(grading or AffineMonoid.free(len(linhas)), linhas)

    @property
    def length(self) -> int:
        return len(self.matrix)

    def mu(self, s: Sequence[int | Fraction]) -> TorusDivisor:
        r = len(self.matrix[0])
        return TorusDivisor(
            tuple(sum(si * row[j] for si, row in zip(s, self.matrix)) for j in range(r))
        )

    def column(self, rho: int) -> RationalPoint:
        return tuple(row[rho] for row in self.matrix)

    def to_json(self) -> dict:
        return {
            "grading_gens": self.length,
            "grading": [list(g) for g in self.grading.generators],
            "matrix": [[fraction_to_str(c) for c in row] for row in self.matrix],
        }


def family_from_json(obj: dict, X: ToricModel) -> DivisorFamily:
    """Decodifica {"grading_gens": ℓ, "matrix": [[…]]} (geradores opcionais em "grading").

    Raises:
        ValueError: Campos ausentes ou dimensões incompatíveis.
    """
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ValueError("Família JSON precisa de 'matrix'")
    matriz = obj["matrix"]
    ell = int(obj.get("grading_gens", len(matriz)))
    if len(matriz) != ell:
        raise ValueError("grading_gens diverge do número de linhas de 'matrix'")
    if any(len(r) != len(X.rays) for r in matriz):
        raise ValueError("Linhas de 'matrix' devem ter um coeficiente por raio")
    grading = AffineMonoid.of(obj["grading"], "N", ell) if "grading" in obj else None
    return DivisorFamily.of(matriz, grading)


def adjoint_boundary(X: ToricModel, D: TorusDivisor, k: int, ample: TorusDivisor) -> TorusDivisor:
    """Δ com D = k(K + Δ + A)."""
    return D * Fraction(1, k) - canonical_divisor(X) - ample


def is_adjoint_shaped(X: ToricModel, F: DivisorFamily, ample: TorusDivisor, ks: Sequence[int]) -> bool:
    """Cada μ(eᵢ) é kᵢ(K + Δᵢ + A) com Δᵢ de coeficientes em [0, 1]."""
    for i, k in enumerate(ks):
        delta = adjoint_boundary(X, F.mu([1 if j == i else 0 for j in range(F.length)]), k, ample)
        if not all(0 <= c <= 1 for c in delta.coefficients):
            return False
    return True


def _linhas_totais(X: ToricModel, F: DivisorFamily, escala: int = 1) -> list[tuple[Fraction, ...]]:
    """Desigualdades do cone total {(s, u) : s ∈ cone(𝒮), u ∈ P_{μ(s)}}."""
    ell, n = F.length, X.dim
    linhas = []
    for rho, v in enumerate(X.rays):
        linhas.append(tuple(escala * c for c in F.column(rho)) + tuple(Fraction(x) for x in v))
    for a in F.grading.cone.facets:
        linhas.append(tuple(Fraction(c) for c in a) + (Fraction(0),) * n)
    for e in (F.grading.cone.equations if F.grading.cone.dimension < ell else ()):
        linhas.append(tuple(Fraction(c) for c in e) + (Fraction(0),) * n)
        linhas.append(tuple(Fraction(-c) for c in e) + (Fraction(0),) * n)
    return linhas


def total_cone(X: ToricModel, F: DivisorFamily) -> RationalCone:
    return RationalCone.from_inequalities(_linhas_totais(X, F), F.length + X.dim)


def effective_cone(X: ToricModel, F: DivisorFamily) -> RationalCone:
    """Projeção do cone total nas coordenadas s: onde P_{μ(s)} ≠ ∅."""
    ell = F.length
    return RationalCone.from_generators([r[:ell] for r in total_cone(X, F).rays], ell)


# ===========================================================================
# Semigrupo adjunto
# ===========================================================================


@dataclass(frozen=True)
class AdjointSemigroup:
    cone: RationalCone
    basis: tuple[IntVector, ...]
    kappa: int
    truncated_basis: tuple[IntVector, ...]
    integral_extension: bool
    grading_length: int

    def to_json(self) -> dict:
        return {
            "basis": [list(b) for b in self.basis],
            "size": len(self.basis),
            "kappa": self.kappa,
            "truncated_basis": [list(b) for b in self.truncated_basis],
            "integral_extension": self.integral_extension,
            "cone": {"rays": [list(r) for r in self.cone.rays]},
        }


def adjoint_semigroup(X: ToricModel, F: DivisorFamily, kappa: int = 2) -> AdjointSemigroup:
    """Base de Hilbert do semigrupo total {(s, u) : s ∈ 𝒮, u ∈ P_{μ(s)} ∩ ℤⁿ}.

    Também calcula a base do truncamento uniforme 𝒮^{(κ)} e confere que κ·t
    se decompõe nela para todo t da base (extensão integral).

    Raises:
        ValueError: Família vazia, graduação não saturada ou μ(eᵢ) sem seções.
    """
    if F.length == 0:
        raise ValueError("Família vazia")
    if kappa <= 0:
        raise ValueError("κ deve ser positivo")
    if not F.grading.is_saturated():
        raise ValueError("Graduação 𝒮 deve ser saturada")
    for g in F.grading.generators:
        if section_polytope(X, F.mu(g)).is_empty():
            raise ValueError(f"μ({list(g)}) sem seções")
    ell, n = F.length, X.dim
    cone = total_cone(X, F)
    base = tuple(hilbert_basis(cone))
    log.info("[TORIC] semigrupo total: %d geradores", len(base))

    truncado_cone = RationalCone.from_inequalities(_linhas_totais(X, F, kappa), ell + n)
    truncada = tuple(
        sorted(tuple(kappa * c for c in b[:ell]) + tuple(b[ell:]) for b in hilbert_basis(truncado_cone))
    )
    monoide_trunc = AffineMonoid.of(truncada, "Z", ell + n)
    extensao = all(
        decompose(monoide_trunc, tuple(kappa * c for c in t)) is not None for t in base
    )
    return AdjointSemigroup(cone, base, kappa, truncada, extensao, ell)


def graded_piece(X: ToricModel, F: DivisorFamily, s: Sequence[int]) -> list[IntVector]:
    """Pontos (s, u) com u ∈ P_{μ(s)} ∩ ℤⁿ."""
    return [tuple(s) + u for u in sections(X, F.mu(s))]


def verify_generation(X: ToricModel, F: DivisorFamily, result: AdjointSemigroup, bound: int = 20) -> list[IntVector]:
    """Pontos de peças graduadas com Σsᵢ ≤ bound que a base NÃO regenera.

    Programação dinâmica em s: os u atingíveis em s são a união de
    (atingíveis em s − s_g) + u_g sobre os geradores g.
    """
    ell = F.length
    atingiveis: dict[IntVector, set[IntVector]] = {tuple([0] * ell): {tuple([0] * X.dim)}}
    faltando = []
    graus = sorted(
        (s for s in itertools.product(range(bound + 1), repeat=ell) if sum(s) <= bound),
        key=lambda s: (sum(s), s),
    )
    for s in graus:
        if not any(s):
            continue
        conj: set[IntVector] = set()
        for g in result.basis:
            sg, ug = g[:ell], g[ell:]
            anterior = tuple(a - b for a, b in zip(s, sg))
            if any(c < 0 for c in anterior) or anterior not in atingiveis:
                continue
            conj.update(tuple(x + y for x, y in zip(u, ug)) for u in atingiveis[anterior])
        atingiveis[s] = conj
        if not F.grading.contains(s):
            continue
        for p in sections(X, F.mu(s)):
            if p not in conj:
                faltando.append(tuple(s) + p)
    return faltando


# ===========================================================================
# Decomposição PL da ordem assintótica
# ===========================================================================


def _vertices_duais(X: ToricModel, rho: int) -> list[RationalPoint]:
    """Vértices de Y = {y ≥ 0 : Σ y_τ v_τ = v_ρ} por enumeração de bases."""
    n, r = X.dim, len(X.rays)
    alvo = X.rays[rho]
    vertices = set()
    for base in itertools.combinations(range(r), n):
        cols = [X.rays[t] for t in base]
        if rank(cols) < n:
            continue
        matriz = [[cols[j][i] for j in range(n)] for i in range(n)]
        y_b = solve_rational(matriz, alvo, n)
        if y_b is None or any(c < 0 for c in y_b):
            continue
        y = [Fraction(0)] * r
        for t, c in zip(base, y_b):
            y[t] = c
        vertices.add(tuple(y))
    return sorted(vertices)


@dataclass(frozen=True)
class OrdDecomposition:
    rho: int
    ord_function: PLFunction
    sharp_function: PLFunction
    dual_vertices: tuple[RationalPoint, ...]
    effective: RationalCone
    grading_cone: RationalCone
    checks: tuple[Check, ...]

    @property
    def partially_ineffective(self) -> bool:
        return not self.effective.same_set(self.grading_cone)

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "ord": self.ord_function.to_json(),
            "sharp": self.sharp_function.to_json(),
            "dual_vertices": [[fraction_to_str(c) for c in y] for y in self.dual_vertices],
            "effective_cone": {"rays": [list(r) for r in self.effective.rays]},
            "partially_ineffective": self.partially_ineffective,
        }


def ord_pl_decomposition(
    X: ToricModel, F: DivisorFamily, rho: int, samples: int = 10, seed: int = DEFAULT_SEED
) -> OrdDecomposition:
    """s ↦ ord_ρ‖μ(s)‖ como função PL exata no cone efetivo.

    Pela dualidade do LP, ord_ρ(s) = max_k (μ_ρ(s) − ⟨y_k, μ(s)⟩) sobre os
    vértices y_k de Y; a parte endireitada μ_ρ(s) − ord_ρ(s) = min_k ⟨y_k, μ(s)⟩
    é côncava. Valida linearidade por célula (raios e amostras interiores
    contra o LP pontual) e concavidade da parte endireitada.

    Raises:
        ValueError: Raio inválido ou cone efetivo reduzido à origem.
    """
    if not 0 <= rho < len(X.rays):
        raise ValueError(f"Raio {rho} inexistente")
    ys = _vertices_duais(X, rho)
    ell = F.length
    mu_rho = F.column(rho)
    psi = [
        tuple(sum(y[t] * F.matrix[i][t] for t in range(len(X.rays))) for i in range(ell))
        for y in ys
    ]
    phi = [tuple(m - p for m, p in zip(mu_rho, ps)) for ps in psi]
    eff = effective_cone(X, F)
    if eff.dimension == 0:
        raise ValueError("Cone efetivo trivial: μ(s) sem seções fora da origem")
    ord_f = PLFunction.from_max_of_functionals(phi, eff)
    sharp = PLFunction.from_min_of_functionals(psi, eff)

    checks = []
    ruins = []
    for cone, peca in zip(ord_f.fan, ord_f.pieces):
        pontos = [tuple(Fraction(c) for c in r) for r in cone.rays]
        pontos += sample_interior_rays(cone, samples, seed)
        for s in pontos:
            if _dot(peca[0], s) != asymptotic_ord(X, F.mu(s), rho):
                ruins.append(s)
    checks.append(
        Check("ord linear por célula (LP pontual)", not ruins,
              [fraction_to_str(c) for c in ruins[0]] if ruins else None)
    )
    conc = check_concave(sharp)
    checks.append(Check("f♯ côncava", conc.concave, conc.wall))
    log.info("[TORIC] ord_%d: %d peças, %d vértices duais", rho, len(ord_f.fan), len(ys))
    grading_cone = F.grading.cone
    return OrdDecomposition(rho, ord_f, sharp, tuple(ys), eff, grading_cone, tuple(checks))


# ===========================================================================
# Oráculo de Mob e endireitamento
# ===========================================================================


def mob_oracle(X: ToricModel, F: DivisorFamily) -> SuperadditiveOracle:
    """s ↦ Mob(μ(s)) com λₛ = mmc dos denominadores dos vértices de P_{μ(s)}.

    Raises:
        ValueError: Matriz não inteira ou μ(eᵢ) sem seções.
    """
    if any(c.denominator != 1 for row in F.matrix for c in row):
        raise ValueError("Oráculo de Mob exige família inteira")
    for g in F.grading.generators:
        if section_polytope(X, F.mu(g)).is_empty():
            raise ValueError(f"μ({list(g)}) sem seções")

    def avaliar(s: tuple[int, ...]) -> tuple[Fraction, ...]:
        return fixed_part(X, F.mu(s)).mob.coefficients

    def truncamento(s: tuple[int, ...]) -> int:
        return section_polytope(X, F.mu(s)).vertex_denominator()

    return SuperadditiveOracle(F.grading, avaliar, truncamento)


def straightened_value(X: ToricModel, F: DivisorFamily, s: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """μ(s) − Σ_ρ ord_ρ‖μ(s)‖·D_ρ (coeficiente a coeficiente)."""
    D = F.mu(s)
    return (D - nsigma(X, D)).coefficients


def check_straightening(X: ToricModel, F: DivisorFamily, box: int = 3) -> list[Check]:
    """f♯ de Mob comparado a μ(s) − N_σ‖μ(s)‖ nos pontos de 𝒮 com Σsᵢ ≤ box.

    A avaliação de f♯ já certifica o período de truncamento p ≤ 24 de Mob;
    pontos sem certificado aparecem na segunda verificação.
    """
    sharp = Straightening(mob_oracle(X, F))
    pontos = [
        s
        for s in itertools.product(range(box + 1), repeat=F.length)
        if any(s) and sum(s) <= box and F.grading.contains(s)
    ]
    discordantes, sem_periodo = [], []
    for s in pontos:
        try:
            valor = sharp.value(s)
        except ValueError:
            sem_periodo.append(s)
            continue
        if valor != straightened_value(X, F, s):
            discordantes.append(s)
    log.info("[TORIC] endireitamento conferido em %d pontos", len(pontos))
    return [
        Check("f♯(s) = μ(s) − Σ ord_ρ‖μ(s)‖ρ", not discordantes,
              list(discordantes[0]) if discordantes else None),
        Check("Mob(ips) = i·Mob(ps), p ≤ 24", not sem_periodo,
              list(sem_periodo[0]) if sem_periodo else None),
    ]


def truncated_grading(F: DivisorFamily, kappa: int) -> AffineMonoid:
    """𝒮^{(κ)} uniforme."""
    return truncate(F.grading, kappa)


# ===========================================================================
# CLI standalone
# ===========================================================================


_MODELOS = {
    "reta": ToricModel.projective_line,
    "plano": ToricModel.projective_plane,
    "explosao": ToricModel.blowup_plane,
}


def _build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description="Seções de d·D no último raio de um modelo tórico.")
    p.add_argument("--modelo", choices=sorted(_MODELOS), default="plano")
    p.add_argument("--d", type=int, default=2)
    return p


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    args = _build_arg_parser().parse_args()
    X = _MODELOS[args.modelo]()
    D = TorusDivisor.prime(len(X.rays), len(X.rays) - 1, args.d)
    print(json.dumps({"sections": sections(X, D), "nsigma": nsigma(X, D).to_json()}, indent=2))
