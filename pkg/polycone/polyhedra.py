"""
Cones e politopos poliedrais racionais com descrição dupla.

A conversão geradores ↔ desigualdades usa o método da dupla descrição
incremental (Motzkin) em aritmética inteira exata, com teste combinatório
de adjacência. Cones com reta são recusados na construção.

- :class:`RationalCone` — geradores + facetas/equações em cache
- :class:`RationalPolytope` — vértices irredundantes, via cone homogeneizado
- :func:`membership` — fecho, interior relativo (origem aceita) ou interior
- :func:`ray_escape` — testemunha de não-extremalidade ao longo de um raio
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Literal, Sequence

from polycone.scalars import (
    ExactScalar,
    ExactVector,
    VectorLike,
    as_fraction,
    as_rational_vector,
    as_vector,
    fraction_to_str,
    inverse,
    nullspace,
    primitive,
    rank,
    rref_rows,
)

log = logging.getLogger(__name__)

IntVector = tuple[int, ...]
MembershipMode = Literal["closure", "relint", "interior"]


# ===========================================================================
# Dupla descrição
# ===========================================================================


def _dot(a: Sequence[int | Fraction], x: Sequence[int | Fraction]) -> int | Fraction:
    return sum(ai * xi for ai, xi in zip(a, x))


def double_description(rows: Sequence[Sequence[int]], n: int) -> list[IntVector]:
    """Raios extremos do cone pontudo {x ∈ ℝⁿ : Ax ≥ 0}.

    Args:
        rows: Linhas inteiras de A.
        n: Dimensão ambiente.

    Returns:
        Raios extremos primitivos em ordem lexicográfica (lista vazia se o
        cone for {0}).

    Raises:
        ValueError: Se A não tiver posto n (o cone conteria uma reta).
    """
    linhas = [tuple(int(c) for c in r) for r in rows if any(r)]
    if rank(linhas) < n:
        raise ValueError("Sistema de desigualdades define cone com reta (posto < n)")

    # base inicial: n linhas independentes
    escolhidas: list[int] = []
    for i, r in enumerate(linhas):
        if rank([linhas[j] for j in escolhidas] + [r]) > len(escolhidas):
            escolhidas.append(i)
        if len(escolhidas) == n:
            break
    B = [linhas[i] for i in escolhidas]
    Binv = inverse(B)
    raios = [primitive([Binv[i][j] for i in range(n)]) for j in range(n)]
    processadas = list(escolhidas)
    zeros = [
        frozenset(escolhidas[k] for k in range(n) if k != j) for j in range(n)
    ]

    for idx, a in enumerate(linhas):
        if idx in escolhidas:
            continue
        valores = [_dot(a, r) for r in raios]
        pos = [i for i, v in enumerate(valores) if v > 0]
        neg = [i for i, v in enumerate(valores) if v < 0]
        zer = [i for i, v in enumerate(valores) if v == 0]
        novos = [raios[i] for i in pos + zer]
        novos_z = [zeros[i] | ({idx} if valores[i] == 0 else frozenset()) for i in pos + zer]
        for p in pos:
            for q in neg:
                comum = zeros[p] & zeros[q]
                if len(comum) < n - 2:
                    continue
                if any(
                    k not in (p, q) and comum <= zeros[k] for k in range(len(raios))
                ):
                    continue
                vp, vq = valores[p], valores[q]
                combinado = tuple(vp * cq - vq * cp for cp, cq in zip(raios[p], raios[q]))
                novos.append(primitive(combinado))
                novos_z.append(comum | {idx})
        raios, zeros = novos, novos_z
        processadas.append(idx)
        if not raios:
            break

    unicos = sorted(set(raios))
    log.debug("[DD] %d linhas, n=%d → %d raios extremos", len(linhas), n, len(unicos))
    return unicos


# ===========================================================================
# RationalCone
# ===========================================================================


@dataclass(frozen=True)
class RationalCone:
    """Cone poliedral racional pontudo.

    ``generators`` guarda representantes primitivos distintos dos geradores
    fornecidos; ``inequalities`` é uma descrição dual opcional já validada.
    Facetas, equações e raios extremos são calculados sob demanda.
    """

    generators: tuple[IntVector, ...]
    ambient_dim: int
    inequalities: tuple[IntVector, ...] | None = None

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise ValueError(
                    f"Gerador {g} incompatível com dimensão {self.ambient_dim}"
                )
        # força a verificação de ausência de retas
        _ = self._dual

    # ------------------------------------------------------------------ construção

    @classmethod
    def from_generators(
        cls, generators: Iterable[Sequence[int | Fraction]], n: int | None = None
    ) -> "RationalCone":
        """Cone gerado; vetores nulos são ignorados.

        Raises:
            ValueError: Se o cone contiver uma reta ou as dimensões divergirem.
        """
        lista = [as_rational_vector(g) for g in generators]
        if n is None:
            if not lista:
                raise ValueError("Dimensão ambiente indeterminada sem geradores")
            n = len(lista[0])
        prims = sorted({primitive(g) for g in lista if any(c != 0 for c in g)})
        return cls(tuple(prims), n)

    @classmethod
    def from_inequalities(
        cls,
        inequalities: Iterable[Sequence[int | Fraction]],
        n: int,
        equations: Iterable[Sequence[int | Fraction]] = (),
    ) -> "RationalCone":
        """Cone {x : ℓᵢ(x) ≥ 0, eⱼ(x) = 0}.

        Raises:
            ValueError: Se o sistema definir um cone com reta.
        """
        ineqs = [primitive(r) for r in inequalities if any(as_fraction(c) != 0 for c in r)]
        eqs = [primitive(r) for r in equations if any(as_fraction(c) != 0 for c in r)]
        linhas = ineqs + eqs + [tuple(-c for c in e) for e in eqs]
        raios = double_description(linhas, n)
        return cls(tuple(raios), n, tuple(sorted(set(linhas))))

    @classmethod
    def orthant(cls, n: int) -> "RationalCone":
        return cls.from_generators(
            [[1 if i == j else 0 for i in range(n)] for j in range(n)], n
        )

    @classmethod
    def from_both(
        cls,
        generators: Iterable[Sequence[int | Fraction]],
        inequalities: Iterable[Sequence[int | Fraction]],
        n: int,
    ) -> "RationalCone":
        """Cone com as duas descrições, validadas uma contra a outra.

        Raises:
            ValueError: Se as descrições definirem conjuntos distintos.
        """
        por_geradores = cls.from_generators(generators, n)
        por_desig = cls.from_inequalities(inequalities, n)
        if not por_geradores.same_set(por_desig):
            raise ValueError("Descrições por geradores e por desigualdades divergem")
        return cls(por_geradores.generators, n, por_desig.inequalities)

    # ------------------------------------------------------------------ estrutura

    @cached_property
    def _span(self) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
        return rref_rows(self.generators, self.ambient_dim)

    @property
    def dimension(self) -> int:
        return len(self._span[0])

    @cached_property
    def equations(self) -> tuple[IntVector, ...]:
        """Normais inteiras primitivas do complemento ortogonal do span."""
        base, _ = self._span
        return tuple(sorted(nullspace(base, self.ambient_dim))) if base else tuple(
            tuple(1 if i == j else 0 for i in range(self.ambient_dim))
            for j in range(self.ambient_dim)
        )

    @cached_property
    def _dual(self) -> tuple[IntVector, ...]:
        base, pivots = self._span
        d = len(base)
        if d == 0:
            return ()
        # coordenadas no span: x ↦ x[pivôs]
        coords = [tuple(g[p] for p in pivots) for g in self.generators]
        raios_duais = double_description(coords, d)
        if rank(raios_duais) < d:
            raise ValueError("Cone contém uma reta")
        facetas = []
        for a in raios_duais:
            amb = [0] * self.ambient_dim
            for p, c in zip(pivots, a):
                amb[p] = c
            facetas.append(tuple(amb))
        return tuple(sorted(facetas))

    @property
    def facets(self) -> tuple[IntVector, ...]:
        """Normais de facetas (relativas ao span), inteiras e reduzidas."""
        return self._dual

    @cached_property
    def rays(self) -> tuple[IntVector, ...]:
        """Raios extremos primitivos, em ordem lexicográfica."""
        n = self.ambient_dim
        extremos = []
        for g in self.generators:
            ativos = [a for a in self.facets if _dot(a, g) == 0]
            if rank(list(self.equations) + ativos) == n - 1:
                extremos.append(g)
        return tuple(sorted(set(extremos)))

    def contains(self, x: VectorLike, mode: MembershipMode = "closure") -> bool:
        return membership(self, x, mode)

    def same_set(self, outro: "RationalCone") -> bool:
        """Igualdade de conjuntos por contenção mútua dos raios extremos."""
        if self.ambient_dim != outro.ambient_dim:
            return False
        return all(outro.contains(r) for r in self.rays) and all(
            self.contains(r) for r in outro.rays
        )

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "ineqs": [list(a) for a in dual_description(self)],
            "dimension": self.dimension,
        }


def cone_from_json(obj: dict) -> RationalCone:
    """Decodifica {"rays": [[…]]} ou {"ineqs": [[…]], "dim": n}.

    Raises:
        ValueError: Formato inválido.
    """
    if not isinstance(obj, dict):
        raise ValueError("Cone JSON deve ser um objeto")
    if "rays" in obj:
        raios = [as_rational_vector(r) for r in obj["rays"]]
        n = int(obj.get("dim", len(raios[0]) if raios else 0))
        return RationalCone.from_generators(raios, n)
    if "ineqs" in obj:
        ineqs = [as_rational_vector(r) for r in obj["ineqs"]]
        n = int(obj.get("dim", len(ineqs[0]) if ineqs else 0))
        eqs = [as_rational_vector(r) for r in obj.get("eqs", [])]
        return RationalCone.from_inequalities(ineqs, n, eqs)
    raise ValueError("Cone JSON precisa de 'rays' ou 'ineqs'")


# ===========================================================================
# Operações sobre cones
# ===========================================================================


def dual_description(cone: RationalCone) -> list[IntVector]:
    """Sistema mínimo inteiro com cone = ∩{ℓᵢ ≥ 0}.

    Para cones não cheios as equações entram como pares ±e.
    """
    linhas = list(cone.facets)
    if cone.dimension < cone.ambient_dim:
        for e in cone.equations:
            linhas.append(tuple(e))
            linhas.append(tuple(-c for c in e))
    return sorted(set(linhas))


def extremal_rays(cone: RationalCone) -> list[IntVector]:
    """Raios extremos primitivos; regeneram o cone."""
    return list(cone.rays)


def membership(cone: RationalCone, x: VectorLike, mode: MembershipMode = "closure") -> bool:
    """Pertinência exata.

    ``closure`` testa todas as desigualdades; ``interior`` exige cone cheio e
    facetas estritas; ``relint`` exige estrito só nas facetas do span e aceita
    a origem.

    Raises:
        ValueError: Modo desconhecido ou dimensão incompatível.
    """
    if mode not in ("closure", "relint", "interior"):
        raise ValueError(f"Modo de pertinência desconhecido: {mode}")
    v = as_vector(x)
    if v.dimension != cone.ambient_dim:
        raise ValueError("Ponto com dimensão incompatível com o cone")
    if any(not v.dot(e).is_zero() for e in cone.equations) and cone.dimension < cone.ambient_dim:
        return False
    valores = [v.dot(a).sign() for a in cone.facets]
    if mode == "closure":
        return all(s >= 0 for s in valores)
    if mode == "interior":
        return cone.dimension == cone.ambient_dim and all(s > 0 for s in valores)
    if all(c.is_zero() for c in v):
        return True
    return all(s > 0 for s in valores)


@dataclass(frozen=True)
class EscapeResult:
    """Resultado de :func:`ray_escape`.

    ``t_sup`` None significa +∞. Quando há testemunha, vale
    ``through = (1 − weight)·base + weight·witness`` com ``weight = 1/t*``.
    """

    t_sup: ExactScalar | None
    witness: ExactVector | None
    t_star: ExactScalar | None
    weight: ExactScalar | None

    def to_json(self) -> dict:
        return {
            "t_sup": "inf" if self.t_sup is None else _escalar_json(self.t_sup),
            "witness": None if self.witness is None else self.witness.to_json(),
            "t_star": None if self.t_star is None else _escalar_json(self.t_star),
            "weight": None if self.weight is None else _escalar_json(self.weight),
        }


def _escalar_json(x: ExactScalar) -> object:
    return fraction_to_str(x.rational_part) if x.is_rational() else x.to_json()


def ray_escape(cone: RationalCone, base: VectorLike, through: VectorLike) -> EscapeResult:
    """sup{t ≥ 1 : base + t(through − base) ∈ cone} e testemunha além de through.

    Raises:
        ValueError: Se base ou through estiverem fora do cone ou coincidirem.
    """
    b = as_vector(base)
    p = as_vector(through)
    if not membership(cone, b) or not membership(cone, p):
        raise ValueError("base e through devem pertencer ao cone")
    d = p - b
    if all(c.is_zero() for c in d):
        raise ValueError("base e through coincidem")
    t_sup: ExactScalar | None = None
    for a in cone.facets:
        ad = d.dot(a)
        if ad.sign() >= 0:
            continue
        limite = b.dot(a) / (-ad)
        if t_sup is None or limite < t_sup:
            t_sup = limite
    if t_sup is not None and not t_sup > 1:
        return EscapeResult(t_sup, None, None, None)
    t_star = ExactScalar.of(2) if t_sup is None else (t_sup + 1) / 2
    witness = b + d * t_star
    return EscapeResult(t_sup, witness, t_star, 1 / t_star)


# ===========================================================================
# RationalPolytope
# ===========================================================================


@dataclass(frozen=True)
class RationalPolytope:
    """Politopo racional pelos vértices irredundantes (vazio se não houver)."""

    vertices: tuple[tuple[Fraction, ...], ...]
    ambient_dim: int

    @classmethod
    def empty(cls, n: int) -> "RationalPolytope":
        return cls((), n)

    @classmethod
    def hull(cls, points: Iterable[Sequence[int | Fraction]], n: int | None = None) -> "RationalPolytope":
        """Envoltória convexa exata de pontos racionais."""
        pts = [as_rational_vector(p) for p in points]
        if not pts:
            if n is None:
                raise ValueError("Dimensão indeterminada para politopo vazio")
            return cls.empty(n)
        n = len(pts[0]) if n is None else n
        if any(len(p) != n for p in pts):
            raise ValueError("Pontos com dimensões distintas")
        cone = RationalCone.from_generators([p + (Fraction(1),) for p in pts], n + 1)
        verts = sorted(tuple(Fraction(c, r[-1]) for c in r[:-1]) for r in cone.rays)
        return cls(tuple(verts), n)

    @classmethod
    def from_inequalities(
        cls, A: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction]
    ) -> "RationalPolytope":
        """Politopo {u : Au + b ≥ 0}.

        Raises:
            ValueError: Se o poliedro for ilimitado (ou contiver reta).
        """
        linhas = [as_rational_vector(r) for r in A]
        if not linhas:
            raise ValueError("Sistema vazio define poliedro ilimitado")
        n = len(linhas[0])
        hom = [r + (as_fraction(c),) for r, c in zip(linhas, b)]
        hom.append(tuple(Fraction(0) for _ in range(n)) + (Fraction(1),))
        try:
            cone = RationalCone.from_inequalities(hom, n + 1)
        except ValueError as exc:
            raise ValueError("Poliedro ilimitado ou degenerado") from exc
        verts = []
        for r in cone.rays:
            if r[-1] == 0:
                raise ValueError("Poliedro ilimitado (direção de recessão não nula)")
            verts.append(tuple(Fraction(c, r[-1]) for c in r[:-1]))
        return cls(tuple(sorted(verts)), n)

    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def dimension(self) -> int:
        """Dimensão da envoltória afim (−1 se vazio)."""
        if self.is_empty():
            return -1
        v0 = self.vertices[0]
        difs = [tuple(a - b for a, b in zip(v, v0)) for v in self.vertices[1:]]
        return rank(difs) if difs else 0

    @cached_property
    def _cone(self) -> RationalCone:
        return RationalCone.from_generators(
            [v + (Fraction(1),) for v in self.vertices], self.ambient_dim + 1
        )

    def inequalities(self) -> list[tuple[IntVector, int]]:
        """Pares (a, c) com P = {u : ⟨a,u⟩ + c ≥ 0} (equações como pares ±)."""
        if self.is_empty():
            raise ValueError("Politopo vazio")
        return [(tuple(r[:-1]), r[-1]) for r in dual_description(self._cone)]

    def contains(self, u: VectorLike) -> bool:
        if self.is_empty():
            return False
        v = as_vector(u)
        return membership(self._cone, ExactVector.of(list(v.coords) + [1]))

    def lattice_points(self) -> list[IntVector]:
        """Pontos inteiros em ordem lexicográfica (enumeração na caixa envolvente)."""
        if self.is_empty():
            return []
        faixas = []
        for j in range(self.ambient_dim):
            lo = math.ceil(min(v[j] for v in self.vertices))
            hi = math.floor(max(v[j] for v in self.vertices))
            if lo > hi:
                return []
            faixas.append(range(lo, hi + 1))
        ineqs = self.inequalities()
        pontos = [
            p
            for p in itertools.product(*faixas)
            if all(_dot(a, p) + c >= 0 for a, c in ineqs)
        ]
        return pontos

    def minimize(
        self, c: Sequence[int | Fraction], const: int | Fraction = 0
    ) -> tuple[Fraction, tuple[Fraction, ...]]:
        """min ⟨c,u⟩ + const sobre o politopo (LP exata por vértices).

        Raises:
            ValueError: Politopo vazio.
        """
        if self.is_empty():
            raise ValueError("LP sobre politopo vazio")
        cf = as_rational_vector(c)
        melhor = min(self.vertices, key=lambda v: (_dot(cf, v), v))
        return _dot(cf, melhor) + as_fraction(const), melhor

    def scale(self, k: int | Fraction) -> "RationalPolytope":
        k = as_fraction(k)
        if k <= 0:
            raise ValueError("Fator de escala deve ser positivo")
        return RationalPolytope(
            tuple(sorted(tuple(c * k for c in v) for v in self.vertices)), self.ambient_dim
        )

    def vertex_denominator(self) -> int:
        """mmc dos denominadores dos vértices (1 para politopo de reticulado)."""
        return math.lcm(1, *(c.denominator for v in self.vertices for c in v))

    def to_json(self) -> dict:
        return {
            "vertices": [[fraction_to_str(c) for c in v] for v in self.vertices],
            "dimension": self.dimension,
        }


def minkowski_sum(P: RationalPolytope, Q: RationalPolytope) -> RationalPolytope:
    """conv{p + q} sobre pares de vértices.

    Raises:
        ValueError: Dimensões ambientes distintas.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("Soma de Minkowski com dimensões distintas")
    if P.is_empty() or Q.is_empty():
        return RationalPolytope.empty(P.ambient_dim)
    somas = [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    return RationalPolytope.hull(somas, P.ambient_dim)


def cone_over(B: RationalPolytope) -> RationalCone:
    """ℝ₊·B gerado pelos vértices.

    Vértices nulos não geram raio; para B = {0} o resultado é o cone {0}
    (dimensão 0, sem raios). Não há homogeneização: B não é elevado a B × {1}.

    Raises:
        ValueError: B vazio ou cone resultante com reta.
    """
    if B.is_empty():
        raise ValueError("Cone sobre politopo vazio")
    return RationalCone.from_generators(B.vertices, B.ambient_dim)


def segment_hyperplane(
    p: VectorLike, q: VectorLike, a: Sequence[int | Fraction], c: int | Fraction = 0
) -> ExactScalar | None:
    """Parâmetro t ∈ [0,1] com ⟨a, p + t(q−p)⟩ = c, ou None sem cruzamento.

    Segmentos contidos no hiperplano devolvem t = 0.
    """
    pv, qv = as_vector(p), as_vector(q)
    ap = pv.dot(a) - as_fraction(c)
    aq = qv.dot(a) - as_fraction(c)
    if ap.is_zero():
        return ExactScalar.of(0, ap.field)
    if (aq - ap).is_zero():
        return None
    t = ap / (ap - aq)
    if t.sign() < 0 or t > 1:
        return None
    return t
