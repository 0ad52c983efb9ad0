"""
Monoides afins finitamente gerados.

Base de Hilbert por paralelepípedos fundamentais das subfaces simpliciais
dos raios extremos, seguida de redução por grau; interseção com cones por
fatiamento sucessivo em semiespaços (um funcional por vez, como na prova do
lema de Gordan); saturação; truncamentos; pré-imagens por mapas aditivos;
decomposição lexicograficamente mínima.

Uso standalone::

    python -m polycone.monoids --rays "1,0" "1,3"
"""

import argparse
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Literal, Sequence

from polycone.config import HILBERT_MAX_DIM
from polycone.polyhedra import RationalCone, dual_description
from polycone.scalars import (
    as_fraction,
    determinant,
    integer_kernel_basis,
    inverse,
    solve_rational,
)

log = logging.getLogger(__name__)

IntVector = tuple[int, ...]
LatticeConstraint = Literal["orthant", "full"]

#: |det| máximo de uma subface simplicial enumerada
MAX_PARALLELEPIPED: int = 200_000

#: Dimensão máxima das fatias internas do fatiamento de Gordan
MAX_SLICE_DIM: int = 12


def _dot(a: Sequence[int], x: Sequence[int]) -> int:
    return sum(ai * xi for ai, xi in zip(a, x))


# ===========================================================================
# Base de Hilbert
# ===========================================================================


def _pontos_paralelepipedo(R: list[IntVector], d: int) -> list[IntVector]:
    """Pontos inteiros não nulos de {Σ λᵢ rᵢ : λ ∈ [0,1)^d}."""
    colunas = [[R[j][i] for j in range(d)] for i in range(d)]
    det = determinant(colunas)
    if abs(det) > MAX_PARALLELEPIPED:
        raise ValueError(f"Subcone simplicial com |det|={abs(det)} acima do limite")
    inv = inverse(colunas)
    geradores = [tuple(inv[i][j] % 1 for i in range(d)) for j in range(d)]
    zero = tuple(Fraction(0) for _ in range(d))
    vistos = {zero}
    fronteira = [zero]
    while fronteira:
        novos = []
        for lam in fronteira:
            for g in geradores:
                soma = tuple((a + b) % 1 for a, b in zip(lam, g))
                if soma not in vistos:
                    vistos.add(soma)
                    novos.append(soma)
        fronteira = novos
    pontos = []
    for lam in vistos:
        if lam == zero:
            continue
        p = tuple(sum(lam[j] * R[j][i] for j in range(d)) for i in range(d))
        pontos.append(tuple(int(c) for c in p))
    return pontos


def hilbert_basis(
    cone: RationalCone,
    lattice_constraint: LatticeConstraint = "full",
    max_dim: int = HILBERT_MAX_DIM,
) -> list[IntVector]:
    """Conjunto gerador mínimo de 𝒞 ∩ ℤⁿ (``full``) ou 𝒞 ∩ ℕⁿ (``orthant``).

    Trabalha nas coordenadas do reticulado span(𝒞) ∩ ℤⁿ. Todo elemento
    irredutível é um raio extremo ou um ponto do paralelepípedo semiaberto
    de algum subcone simplicial; os candidatos são reduzidos em ordem
    crescente de grau.

    Raises:
        ValueError: Modo desconhecido, cone acima da escala suportada.
    """
    n = cone.ambient_dim
    if lattice_constraint == "orthant":
        ortante = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        cone = RationalCone.from_inequalities(dual_description(cone) + ortante, n)
    elif lattice_constraint != "full":
        raise ValueError(f"Restrição de reticulado desconhecida: {lattice_constraint}")
    d = cone.dimension
    if d == 0:
        return []
    if d > max_dim:
        raise ValueError(f"Dimensão {d} acima do limite {max_dim} para bases de Hilbert")

    base = integer_kernel_basis(cone.equations if d < n else [], n)
    transposta = [[base[j][i] for j in range(d)] for i in range(n)]
    R = []
    for r in cone.rays:
        y = solve_rational(transposta, r, d)
        R.append(tuple(int(c) for c in y))
    local = RationalCone.from_generators(R, d)
    facetas = local.facets
    grau_vec = tuple(sum(a[i] for a in facetas) for i in range(d))

    candidatos: set[IntVector] = set(R)
    for sigma in itertools.combinations(range(len(R)), d):
        sub = [R[i] for i in sigma]
        if determinant(sub) == 0:
            continue
        candidatos.update(_pontos_paralelepipedo(sub, d))

    ordenados = sorted(candidatos, key=lambda x: (_dot(grau_vec, x), x))
    mantidos: list[tuple[int, IntVector]] = []
    for x in ordenados:
        gx = _dot(grau_vec, x)
        redutivel = any(
            gb < gx and all(_dot(a, [xi - bi for xi, bi in zip(x, b)]) >= 0 for a in facetas)
            for gb, b in mantidos
        )
        if not redutivel:
            mantidos.append((gx, x))

    resultado = sorted(
        tuple(sum(x[j] * base[j][i] for j in range(d)) for i in range(n)) for _, x in mantidos
    )
    log.debug(
        "[HILBERT] dim=%d, %d candidatos → %d elementos", d, len(candidatos), len(resultado)
    )
    return resultado


# ===========================================================================
# AffineMonoid
# ===========================================================================


@dataclass(frozen=True)
class AffineMonoid:
    """Submonoide de ℤⁿ gerado por ``generators`` (ordem canônica).

    ``lattice`` "N" exige geradores em ℕⁿ; "Z" aceita qualquer sinal desde
    que o cone gerado seja pontudo. A tupla vazia representa o monoide {0}.
    """

    generators: tuple[IntVector, ...]
    ambient_dim: int
    lattice: Literal["N", "Z"] = "N"
    saturated_flag: bool | None = None

    def __post_init__(self) -> None:
        if self.lattice not in ("N", "Z"):
            raise ValueError(f"Reticulado deve ser 'N' ou 'Z': {self.lattice!r}")
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise ValueError(f"Gerador {g} incompatível com dimensão {self.ambient_dim}")
            if self.lattice == "N" and any(c < 0 for c in g):
                raise ValueError(f"Gerador {g} fora de ℕⁿ")
        _ = self.cone

    @classmethod
    def of(
        cls,
        generators: Iterable[Sequence[int]],
        lattice: Literal["N", "Z"] = "N",
        n: int | None = None,
        saturated_flag: bool | None = None,
    ) -> "AffineMonoid":
        """Normaliza: remove zeros e duplicatas e ordena.

        Raises:
            ValueError: Lista vazia sem dimensão, coordenadas não inteiras.
        """
        lista = []
        for g in generators:
            fr = [as_fraction(c) for c in g]
            if any(c.denominator != 1 for c in fr):
                raise ValueError(f"Gerador não inteiro: {g}")
            lista.append(tuple(int(c) for c in fr))
        if n is None:
            if not lista:
                raise ValueError("Monoide precisa de ao menos um gerador")
            n = len(lista[0])
        gens = tuple(sorted({g for g in lista if any(g)}))
        return cls(gens, n, lattice, saturated_flag)

    @classmethod
    def free(cls, n: int) -> "AffineMonoid":
        """ℕⁿ com a base canônica."""
        return cls.of(
            [[1 if i == j else 0 for i in range(n)] for j in range(n)], "N", n, True
        )

    @cached_property
    def cone(self) -> RationalCone:
        return RationalCone.from_generators(self.generators, self.ambient_dim)

    @cached_property
    def grading(self) -> IntVector:
        """Funcional inteiro estritamente positivo em cone(S) \\ {0}."""
        facetas = self.cone.facets
        return tuple(sum(a[i] for a in facetas) for i in range(self.ambient_dim))

    def degree(self, x: Sequence[int]) -> int:
        return _dot(self.grading, x)

    def contains(self, x: Sequence[int]) -> bool:
        return decompose(self, x) is not None

    def minimal(self) -> "AffineMonoid":
        """Mesmo monoide apresentado pelos seus irredutíveis."""
        return AffineMonoid(
            minimal_generators(self.generators, self.ambient_dim),
            self.ambient_dim,
            self.lattice,
            self.saturated_flag,
        )

    def is_saturated(self) -> bool:
        """Teste exato: todo elemento da base de Hilbert de cone(S) ∩ ℤⁿ pertence a S."""
        if self.saturated_flag is not None:
            return self.saturated_flag
        return all(self.contains(h) for h in hilbert_basis(self.cone, "full"))

    def to_json(self) -> dict:
        return {
            "gens": [list(g) for g in self.generators],
            "lattice": self.lattice,
            "saturated": self.saturated_flag,
        }


def monoid_from_json(obj: dict) -> AffineMonoid:
    """Decodifica {"gens": [[…]], "lattice": "N"|"Z"}.

    Raises:
        ValueError: Formato inválido.
    """
    if not isinstance(obj, dict) or "gens" not in obj:
        raise ValueError("Monoide JSON precisa de 'gens'")
    gens = obj["gens"]
    n = obj.get("dim")
    return AffineMonoid.of(gens, obj.get("lattice", "N"), int(n) if n is not None else None)


# ===========================================================================
# Decomposição e geradores mínimos
# ===========================================================================


def _decompor(
    gens: Sequence[IntVector], x: IntVector, cone: RationalCone, grading: IntVector
) -> tuple[int, ...] | None:
    k = len(gens)
    graus = [_dot(grading, g) for g in gens]
    facetas = cone.facets
    eqs = cone.equations if cone.dimension < cone.ambient_dim else ()
    memo: dict[tuple[int, IntVector], tuple[int, ...] | None] = {}

    def no_cone(y: IntVector) -> bool:
        return all(_dot(a, y) >= 0 for a in facetas) and all(_dot(e, y) == 0 for e in eqs)

    def resolver(i: int, y: IntVector) -> tuple[int, ...] | None:
        if not any(y):
            return (0,) * (k - i)
        if i == k or not no_cone(y):
            return None
        chave = (i, y)
        if chave in memo:
            return memo[chave]
        resposta = None
        limite = _dot(grading, y) // graus[i]
        for c in range(limite + 1):
            resto = tuple(yj - c * gj for yj, gj in zip(y, gens[i]))
            sub = resolver(i + 1, resto)
            if sub is not None:
                resposta = (c,) + sub
                break
        memo[chave] = resposta
        return resposta

    return resolver(0, x)


def decompose(S: AffineMonoid, x: Sequence[int]) -> tuple[int, ...] | None:
    """Coeficientes ℕ lexicograficamente mínimos sobre os geradores de S, ou None.

    Raises:
        ValueError: Dimensão incompatível.
    """
    xv = tuple(int(as_fraction(c)) for c in x)
    if len(xv) != S.ambient_dim:
        raise ValueError("Vetor com dimensão incompatível com o monoide")
    if not S.generators:
        return () if not any(xv) else None
    return _decompor(S.generators, xv, S.cone, S.grading)


def minimal_generators(gens: Iterable[Sequence[int]], n: int) -> tuple[IntVector, ...]:
    """Irredutíveis do monoide pontudo gerado por ``gens`` (ordem lexicográfica)."""
    lista = sorted({tuple(int(c) for c in g) for g in gens if any(g)})
    if not lista:
        return ()
    cone = RationalCone.from_generators(lista, n)
    grading = tuple(sum(a[i] for a in cone.facets) for i in range(n))
    mantidos: list[IntVector] = []
    for g in sorted(lista, key=lambda v: (_dot(grading, v), v)):
        if mantidos and _decompor(mantidos, g, cone, grading) is not None:
            continue
        mantidos.append(g)
    return tuple(sorted(mantidos))


# ===========================================================================
# Operações
# ===========================================================================


def intersect_with_cone(S: AffineMonoid, C: RationalCone) -> AffineMonoid:
    """S ∩ 𝒞 por fatiamento: Sᵢ = Sᵢ₋₁ ∩ {ℓᵢ ≥ 0} para cada ℓᵢ da descrição dual.

    Cada fatia é a imagem por G (geradores atuais) da base de Hilbert de
    {c ∈ ℕᵏ : ℓᵢ(Gc) ≥ 0}; o resultado é reduzido aos irredutíveis, logo
    não depende da ordem dos ℓᵢ.

    Raises:
        ValueError: Dimensões incompatíveis.
    """
    if S.ambient_dim != C.ambient_dim:
        raise ValueError("Monoide e cone com dimensões distintas")
    n = S.ambient_dim
    gens = list(minimal_generators(S.generators, n))
    for ell in dual_description(C):
        if not gens:
            break
        w = [_dot(ell, g) for g in gens]
        if all(c >= 0 for c in w):
            continue
        k = len(gens)
        ortante = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
        fatia = RationalCone.from_inequalities([w] + ortante, k)
        coefs = hilbert_basis(fatia, "full", max_dim=MAX_SLICE_DIM)
        imagens = [
            tuple(sum(c[j] * gens[j][i] for j in range(k)) for i in range(n)) for c in coefs
        ]
        gens = list(minimal_generators(imagens, n))
        log.debug("[GORDAN] fatia %s → %d geradores", ell, len(gens))
    return AffineMonoid(
        tuple(gens), n, S.lattice, True if S.saturated_flag else None
    )


def saturate(S: AffineMonoid) -> AffineMonoid:
    """Saturação S_ℝ ∩ ℤⁿ (base de Hilbert de cone(S))."""
    base = hilbert_basis(S.cone, "full")
    return AffineMonoid(tuple(base), S.ambient_dim, S.lattice, True)


def truncate(S: AffineMonoid, kappas: int | Sequence[int]) -> AffineMonoid:
    """Truncamento de S.

    Com κ inteiro (uniforme) devolve S^{(κ)} = κ·S, gerado por κ vezes os
    irredutíveis de S e portanto independente da apresentação. Com lista,
    devolve Σ ℕκᵢeᵢ sobre ``S.generators`` na ordem armazenada.

    Raises:
        ValueError: κ ≤ 0 ou lista de tamanho incompatível.
    """
    n = S.ambient_dim
    if isinstance(kappas, int):
        if kappas <= 0:
            raise ValueError(f"κ deve ser positivo (recebido {kappas})")
        gens = [tuple(kappas * c for c in g) for g in minimal_generators(S.generators, n)]
        return AffineMonoid(tuple(sorted(gens)), n, S.lattice)
    ks = [int(k) for k in kappas]
    if len(ks) != len(S.generators):
        raise ValueError(
            f"{len(ks)} valores de κ para {len(S.generators)} geradores"
        )
    if any(k <= 0 for k in ks):
        raise ValueError("Todos os κᵢ devem ser positivos")
    return AffineMonoid.of(
        [tuple(k * c for c in g) for k, g in zip(ks, S.generators)], S.lattice, n
    )


@dataclass(frozen=True)
class AdditiveMap:
    """Mapa aditivo ℤᵏ → ℤᵐ dado por matriz inteira (linhas = coordenadas alvo)."""

    matrix: tuple[IntVector, ...]

    def __post_init__(self) -> None:
        if not self.matrix or len({len(r) for r in self.matrix}) != 1:
            raise ValueError("Matriz do mapa aditivo deve ser retangular e não vazia")

    @classmethod
    def of(cls, rows: Iterable[Sequence[int]]) -> "AdditiveMap":
        return cls(tuple(tuple(int(c) for c in r) for r in rows))

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def apply(self, x: Sequence[int]) -> IntVector:
        if len(x) != self.source_dim:
            raise ValueError("Vetor com dimensão incompatível com o mapa")
        return tuple(_dot(r, x) for r in self.matrix)

    def pullback(self, funcional: Sequence[int]) -> IntVector:
        """ℓ ∘ λ como funcional na origem."""
        return tuple(
            sum(funcional[i] * self.matrix[i][j] for i in range(self.target_dim))
            for j in range(self.source_dim)
        )


def preimage(lam: AdditiveMap, T: AffineMonoid, source: AffineMonoid) -> AffineMonoid:
    """λ⁻¹(T) ∩ source = source ∩ λ⁻¹(cone(T)), saturado.

    Raises:
        ValueError: T ou source não saturados, dimensões incompatíveis, ou λ
            não sobrejetora sobre T.
    """
    if lam.source_dim != source.ambient_dim or lam.target_dim != T.ambient_dim:
        raise ValueError("Dimensões do mapa incompatíveis com os monoides")
    if not T.is_saturated():
        raise ValueError("T deve ser saturado")
    if not source.is_saturated():
        raise ValueError("source deve ser saturado")
    k = source.ambient_dim
    linhas = list(dual_description(source.cone))
    linhas += [lam.pullback(a) for a in dual_description(T.cone)]
    cone = RationalCone.from_inequalities(linhas, k)
    base = hilbert_basis(cone, "full")
    resultado = AffineMonoid(tuple(base), k, source.lattice, True)

    imagens = [lam.apply(b) for b in base if any(lam.apply(b))]
    if T.generators:
        if not imagens:
            raise ValueError("λ não é sobrejetora sobre T (imagem trivial)")
        imagem = AffineMonoid.of(imagens, "Z", T.ambient_dim)
        faltando = [t for t in T.generators if not imagem.contains(t)]
        if faltando:
            raise ValueError(f"λ não é sobrejetora sobre T: faltam {faltando}")
    return resultado


# ===========================================================================
# CLI standalone
# ===========================================================================


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Base de Hilbert de um cone racional.")
    parser.add_argument("--rays", nargs="+", required=True, metavar="V", help="ex.: 1,0 1,3")
    parser.add_argument("--orthant", action="store_true")
    return parser


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s: %(message)s")
    args = _build_arg_parser().parse_args()
    raios = [[int(c) for c in r.split(",")] for r in args.rays]
    cone_cli = RationalCone.from_generators(raios)
    for h in hilbert_basis(cone_cli, "orthant" if args.orthant else "full"):
        print(h)
