"""
Funções lineares por partes sobre cones racionais.

- :class:`PLFunction` — leque de cones maximais com um funcional por cone,
  validado quanto à consistência nas faces comuns e à cobertura do suporte
- :func:`check_concave` — teste exato por paredes (grafo networkx)
- :class:`SuperadditiveOracle` e :func:`additivity_certificate` — aditividade
  a partir de um único ponto interior
- :func:`straighten` — f♯(s) = f(λₛs)/λₛ e relatório por cone do leque
- :func:`detect_pl_2plane` — busca certificada de domínios de linearidade
- :func:`lipschitz_bound` — constante exata e a cota 2M/δ

Amostras de raios vêm de uma sequência de Halton racional deslocada pela
semente, portanto reprodutível.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence, Union

import networkx as nx
from tqdm import tqdm

from polycone.config import (
    ADDITIVITY_BOX,
    ADDITIVITY_KAPPA,
    DEFAULT_SEED,
    PL_MAX_DIM,
    TRUNCATION_IMAX,
    TRUNCATION_PMAX,
)
from polycone.erros import BudgetExhaustedError, PLDetectionError
from polycone.monoids import AffineMonoid, decompose, intersect_with_cone, truncate
from polycone.polyhedra import (
    RationalCone,
    RationalPolytope,
    cone_from_json,
    dual_description,
    membership,
)
from polycone.scalars import (
    ExactScalar,
    ExactVector,
    VectorLike,
    as_fraction,
    as_rational_vector,
    as_vector,
    fraction_to_str,
    primitive,
    rank,
    solve_rational,
)

log = logging.getLogger(__name__)

Functional = tuple[Fraction, ...]
Piece = tuple[Functional, ...]
RationalPoint = tuple[Fraction, ...]
Value = Union[Fraction, tuple[Fraction, ...]]

_PRIMOS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def _dot(a: Sequence, x: Sequence):
    return sum(ai * xi for ai, xi in zip(a, x))


# ===========================================================================
# Amostragem
# ===========================================================================


def van_der_corput(i: int, base: int) -> Fraction:
    """i-ésimo termo (i ≥ 1) da sequência de van der Corput, em (0, 1)."""
    q, denom, k = Fraction(0), 1, i
    while k:
        k, resto = divmod(k, base)
        denom *= base
        q += Fraction(resto, denom)
    return q


def halton_point(i: int, dim: int) -> tuple[Fraction, ...]:
    """Ponto de Halton racional em (0,1)^dim."""
    if dim > len(_PRIMOS):
        raise ValueError(f"Halton suportado até dimensão {len(_PRIMOS)}")
    return tuple(van_der_corput(i, _PRIMOS[j]) for j in range(dim))


def sample_interior_rays(cone: RationalCone, count: int, seed: int = DEFAULT_SEED) -> list[RationalPoint]:
    """Pontos racionais no interior relativo: combinações positivas dos raios."""
    raios = cone.rays
    if not raios:
        return []
    pontos = []
    for i in range(seed + 1, seed + count + 1):
        pesos = halton_point(i, len(raios))
        pontos.append(
            tuple(
                sum(w * r[j] for w, r in zip(pesos, raios)) for j in range(cone.ambient_dim)
            )
        )
    return pontos


# ===========================================================================
# PLFunction
# ===========================================================================


@dataclass(frozen=True)
class PLFunction:
    """Função linear por partes: ``pieces[i]`` vale em ``fan[i]``.

    Cada peça é uma tupla de ``value_dim`` funcionais racionais.
    """

    fan: tuple[RationalCone, ...]
    pieces: tuple[Piece, ...]
    support: RationalCone
    value_dim: int = 1

    def __post_init__(self) -> None:
        if len(self.fan) != len(self.pieces):
            raise ValueError("Número de cones e de peças diverge")
        n = self.support.ambient_dim
        for c, p in zip(self.fan, self.pieces):
            if c.ambient_dim != n:
                raise ValueError("Cone do leque com dimensão ambiente incompatível")
            if len(p) != self.value_dim or any(len(ell) != n for ell in p):
                raise ValueError("Peça com formato incompatível")

    # ------------------------------------------------------------------ construção

    @classmethod
    def build(
        cls,
        fan: Sequence[RationalCone],
        pieces: Sequence[Sequence[Sequence[int | Fraction]]],
        support: RationalCone | None = None,
        validate: bool = True,
    ) -> "PLFunction":
        """Constrói e, com ``validate``, confere consistência e cobertura.

        Raises:
            ValueError: Peças discordantes numa face comum ou leque que não
                cobre o suporte.
        """
        if not fan:
            raise ValueError("Leque vazio")
        pcs = tuple(tuple(as_rational_vector(ell) for ell in p) for p in pieces)
        dim = len(pcs[0])
        if support is None:
            support = RationalCone.from_generators(
                [r for c in fan for r in c.rays], fan[0].ambient_dim
            )
        f = cls(tuple(fan), pcs, support, dim)
        if validate:
            f.validate()
        return f

    @classmethod
    def linear(cls, functional: Sequence[int | Fraction], support: RationalCone) -> "PLFunction":
        return cls((support,), ((as_rational_vector(functional),),), support, 1)

    @classmethod
    def from_min_of_functionals(
        cls, functionals: Iterable[Sequence[int | Fraction]], support: RationalCone
    ) -> "PLFunction":
        """min ℓₖ sobre o suporte; mantém só funcionais com região de dimensão cheia."""
        return cls._de_extremo(functionals, support, minimo=True)

    @classmethod
    def from_max_of_functionals(
        cls, functionals: Iterable[Sequence[int | Fraction]], support: RationalCone
    ) -> "PLFunction":
        """max ℓₖ sobre o suporte."""
        return cls._de_extremo(functionals, support, minimo=False)

    @classmethod
    def _de_extremo(
        cls, functionals: Iterable[Sequence[int | Fraction]], support: RationalCone, minimo: bool
    ) -> "PLFunction":
        fs = []
        vistos = set()
        # funcionais iguais sobre o span do suporte são a mesma peça
        for ell in sorted({as_rational_vector(ell) for ell in functionals}):
            chave = tuple(_dot(ell, r) for r in support.rays)
            if chave not in vistos:
                vistos.add(chave)
                fs.append(ell)
        if not fs:
            raise ValueError("Lista de funcionais vazia")
        n = support.ambient_dim
        base = dual_description(support)
        fan, pieces = [], []
        for k, ell in enumerate(fs):
            linhas = list(base)
            for j, outro in enumerate(fs):
                if j == k:
                    continue
                dif = tuple(a - b for a, b in zip(outro, ell))
                linhas.append(dif if minimo else tuple(-c for c in dif))
            regiao = RationalCone.from_inequalities(linhas, n)
            if regiao.dimension == support.dimension:
                fan.append(regiao)
                pieces.append((ell,))
        return cls(tuple(fan), tuple(pieces), support, 1)

    # ------------------------------------------------------------------ consultas

    def _cell_of(self, x: ExactVector) -> int:
        for i, c in enumerate(self.fan):
            if membership(c, x):
                return i
        raise ValueError(f"Ponto {x} fora do suporte do leque")

    def evaluate(self, x: VectorLike) -> tuple[ExactScalar, ...]:
        """Valor exato (vetor de ``value_dim`` coordenadas).

        Raises:
            ValueError: Ponto fora do suporte.
        """
        v = as_vector(x)
        return tuple(v.dot(ell) for ell in self.pieces[self._cell_of(v)])

    def scalar(self, x: VectorLike) -> ExactScalar:
        if self.value_dim != 1:
            raise ValueError("scalar() exige função escalar")
        return self.evaluate(x)[0]

    def rational_value(self, x: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """Valor em ponto racional, sem passar por ExactScalar."""
        xf = as_rational_vector(x)
        for c, p in zip(self.fan, self.pieces):
            if all(_dot(a, xf) >= 0 for a in dual_description(c)):
                return tuple(_dot(ell, xf) for ell in p)
        raise ValueError(f"Ponto {x} fora do suporte do leque")

    def negate(self) -> "PLFunction":
        return PLFunction(
            self.fan,
            tuple(tuple(tuple(-c for c in ell) for ell in p) for p in self.pieces),
            self.support,
            self.value_dim,
        )

    def component(self, i: int) -> "PLFunction":
        return PLFunction(self.fan, tuple((p[i],) for p in self.pieces), self.support, 1)

    def functionals(self) -> set[Piece]:
        return set(self.pieces)

    @cached_property
    def walls(self) -> nx.Graph:
        """Grafo de adjacência: aresta (i, j) quando fan[i] ∩ fan[j] tem codimensão 1."""
        g = nx.Graph()
        g.add_nodes_from(range(len(self.fan)))
        d = self.support.dimension
        for i, j in itertools.combinations(range(len(self.fan)), 2):
            inter = _intersecao(self.fan[i], self.fan[j])
            if inter.dimension == d - 1:
                g.add_edge(i, j, rays=inter.rays)
        return g

    # ------------------------------------------------------------------ validação

    def validate(self, samples: int = 16) -> None:
        """Consistência nas faces comuns e cobertura do suporte.

        Raises:
            ValueError: Primeira violação encontrada.
        """
        d = self.support.dimension
        for i, c in enumerate(self.fan):
            if c.dimension != d:
                raise ValueError(f"Cone {i} não é maximal (dimensão {c.dimension} ≠ {d})")
            if not all(membership(self.support, r) for r in c.rays):
                raise ValueError(f"Cone {i} sai do suporte")
        for i, j in itertools.combinations(range(len(self.fan)), 2):
            inter = _intersecao(self.fan[i], self.fan[j])
            if inter.dimension == d:
                raise ValueError(f"Cones {i} e {j} se sobrepõem")
            for r in inter.rays:
                vi = tuple(_dot(ell, r) for ell in self.pieces[i])
                vj = tuple(_dot(ell, r) for ell in self.pieces[j])
                if vi != vj:
                    raise ValueError(f"Peças {i} e {j} discordam no raio {r}")
        # contabilidade de facetas: toda faceta interior ao suporte é compartilhada
        for i, c in enumerate(self.fan):
            for a in c.facets:
                face = [r for r in c.rays if _dot(a, r) == 0]
                centro = tuple(sum(r[k] for r in face) for k in range(c.ambient_dim))
                if any(_dot(b, centro) == 0 for b in self.support.facets):
                    continue
                if not any(
                    j != i and membership(o, centro) for j, o in enumerate(self.fan)
                ):
                    raise ValueError(f"Faceta {a} do cone {i} não é compartilhada")
        for z in sample_interior_rays(self.support, samples):
            if not any(membership(c, z) for c in self.fan):
                raise ValueError(f"Amostra {z} não coberta pelo leque")

    # ------------------------------------------------------------------ JSON

    def to_json(self) -> dict:
        def _peca(p: Piece) -> list:
            linhas = [[fraction_to_str(c) for c in ell] for ell in p]
            return linhas[0] if self.value_dim == 1 else linhas

        return {
            "fan": [{"rays": [list(r) for r in c.rays]} for c in self.fan],
            "pieces": [_peca(p) for p in self.pieces],
            "support": {"rays": [list(r) for r in self.support.rays]},
            "value_dim": self.value_dim,
        }


def _intersecao(a: RationalCone, b: RationalCone) -> RationalCone:
    return RationalCone.from_inequalities(
        dual_description(a) + dual_description(b), a.ambient_dim
    )


def plfunction_from_json(obj: dict, validate: bool = True) -> PLFunction:
    """Decodifica {"fan":[cone…], "pieces":[[…]…]} (peças vetoriais como listas de listas).

    Com ``validate=False`` só o formato é conferido; ``PLFunction.validate``
    fica a cargo de quem chama.

    Raises:
        ValueError: Formato inválido ou função inconsistente.
    """
    if not isinstance(obj, dict) or "fan" not in obj or "pieces" not in obj:
        raise ValueError("PLFunction JSON precisa de 'fan' e 'pieces'")
    fan = [cone_from_json(c) for c in obj["fan"]]
    pieces = []
    for p in obj["pieces"]:
        if p and isinstance(p[0], list):
            pieces.append([as_rational_vector(ell) for ell in p])
        else:
            pieces.append([as_rational_vector(p)])
    support = cone_from_json(obj["support"]) if "support" in obj else None
    return PLFunction.build(fan, pieces, support, validate)


def common_refinement(functions: Sequence[PLFunction]) -> PLFunction:
    """Leque comum (interseções de dimensão cheia) com peças empilhadas."""
    if not functions:
        raise ValueError("Lista de funções vazia")
    suporte = functions[0].support
    d = suporte.dimension
    celulas: list[tuple[RationalCone, Piece]] = [
        (c, p) for c, p in zip(functions[0].fan, functions[0].pieces)
    ]
    for f in functions[1:]:
        novas = []
        for c, p in celulas:
            for c2, p2 in zip(f.fan, f.pieces):
                inter = _intersecao(c, c2)
                if inter.dimension == d:
                    novas.append((inter, p + p2))
        celulas = novas
    dim = sum(f.value_dim for f in functions)
    return PLFunction(
        tuple(c for c, _ in celulas), tuple(p for _, p in celulas), suporte, dim
    )


# ===========================================================================
# Concavidade
# ===========================================================================


@dataclass(frozen=True)
class ConcavityReport:
    concave: bool
    wall: tuple[int, int] | None = None
    witness: tuple[int, ...] | None = None
    component: int | None = None

    def __bool__(self) -> bool:
        return self.concave

    def to_json(self) -> dict:
        return {
            "concave": self.concave,
            "wall": list(self.wall) if self.wall else None,
            "witness": list(self.witness) if self.witness else None,
            "component": self.component,
        }


def check_concave(f: PLFunction) -> ConcavityReport:
    """Concavidade exata: em cada parede (i, j), ℓᵢ ≥ ℓⱼ nos geradores de 𝒞ⱼ e vice-versa.

    Para funções vetoriais o teste é por componente.
    """
    for i, j in sorted(f.walls.edges()):
        for a, b in ((i, j), (j, i)):
            for r in f.fan[b].rays:
                for comp, (la, lb) in enumerate(zip(f.pieces[a], f.pieces[b])):
                    if _dot(la, r) < _dot(lb, r):
                        log.debug("[PL] parede (%d,%d) viola concavidade em %s", i, j, r)
                        return ConcavityReport(False, (min(i, j), max(i, j)), r, comp)
    return ConcavityReport(True)


# ===========================================================================
# Oráculos superaditivos
# ===========================================================================


def _como_tupla(v: object) -> tuple[Fraction, ...]:
    if isinstance(v, (tuple, list)):
        return tuple(as_fraction(c) for c in v)
    return (as_fraction(v),)


@dataclass(frozen=True)
class SuperadditiveOracle:
    """Mapa superaditivo f : domain → ℤᵐ (ordem por componente).

    ``ray_truncation(s)`` devolve λₛ > 0 com f aditiva em ℕλₛs.
    """

    domain: AffineMonoid
    evaluate: Callable[[tuple[int, ...]], object]
    ray_truncation: Callable[[tuple[int, ...]], int] | None = None

    def value(self, s: Sequence[int]) -> tuple[Fraction, ...]:
        return _como_tupla(self.evaluate(tuple(int(c) for c in s)))

    def check_superadditive(
        self, pairs: Iterable[tuple[Sequence[int], Sequence[int]]]
    ) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Pares (a, b) que violam f(a) + f(b) ≤ f(a + b)."""
        violacoes = []
        for a, b in pairs:
            a, b = tuple(a), tuple(b)
            soma = tuple(x + y for x, y in zip(a, b))
            fa, fb, fab = self.value(a), self.value(b), self.value(soma)
            if any(x + y > z for x, y, z in zip(fa, fb, fab)):
                violacoes.append((a, b))
        return violacoes

    def certify_truncation(self, s: Sequence[int], imax: int = TRUNCATION_IMAX) -> int:
        """λₛ certificado por f(iλₛs) = i·f(λₛs), i ≤ imax.

        Raises:
            ValueError: Sem ``ray_truncation`` ou certificado reprovado.
        """
        if self.ray_truncation is None:
            raise ValueError("Oráculo sem ray_truncation")
        s = tuple(int(c) for c in s)
        lam = int(self.ray_truncation(s))
        if lam <= 0:
            raise ValueError(f"λₛ deve ser positivo (recebido {lam} em {s})")
        base = self.value(tuple(lam * c for c in s))
        for i in range(2, imax + 1):
            vi = self.value(tuple(i * lam * c for c in s))
            if vi != tuple(i * c for c in base):
                raise ValueError(
                    f"Certificado de truncamento falhou em s={s}, λ={lam}, i={i}"
                )
        return lam


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    HYPOTHESIS_UNMET = "HYPOTHESIS-UNMET"


@dataclass(frozen=True)
class AdditivityVerdict:
    status: Verdict
    witness: tuple[int, ...] | None = None
    checked: int = 0
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "checked": self.checked,
            "detail": self.detail,
        }


def additivity_certificate(
    f: SuperadditiveOracle,
    s0: Sequence[int],
    box: int = ADDITIVITY_BOX,
    kappa_budget: int = ADDITIVITY_KAPPA,
) -> AdditivityVerdict:
    """Certificado de aditividade a partir de s₀ = Σ sᵢeᵢ com todos sᵢ > 0.

    Verifica as hipóteses f(s₀) = Σ sᵢf(eᵢ) e f(κs₀) = κf(s₀) para κ até
    ``kappa_budget``; depois testa f(p) = Σ pᵢf(eᵢ) em toda a caixa Σpᵢ ≤ box.

    Raises:
        ValueError: s₀ com coordenada não positiva ou tamanho incompatível.
    """
    gens = f.domain.generators
    coefs = tuple(int(c) for c in s0)
    if len(coefs) != len(gens):
        raise ValueError(f"s₀ tem {len(coefs)} coordenadas; domínio tem {len(gens)} geradores")
    if any(c <= 0 for c in coefs):
        raise ValueError("s₀ deve ser estritamente positivo em todos os geradores")
    n = f.domain.ambient_dim
    valores_e = [f.value(g) for g in gens]

    def ponto(c: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(ci * g[j] for ci, g in zip(c, gens)) for j in range(n))

    def linear(c: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(sum(ci * v[m] for ci, v in zip(c, valores_e)) for m in range(len(valores_e[0])))

    p0 = ponto(coefs)
    f0 = f.value(p0)
    if f0 != linear(coefs):
        return AdditivityVerdict(Verdict.HYPOTHESIS_UNMET, coefs, 1, "f(s₀) ≠ Σ sᵢ f(eᵢ)")
    for kappa in range(2, kappa_budget + 1):
        if f.value(tuple(kappa * c for c in p0)) != tuple(kappa * v for v in f0):
            return AdditivityVerdict(
                Verdict.HYPOTHESIS_UNMET, coefs, kappa, f"f({kappa}s₀) ≠ {kappa}f(s₀)"
            )
    k = len(gens)
    verificados = 0
    for c in itertools.product(range(box + 1), repeat=k):
        if sum(c) > box:
            continue
        verificados += 1
        if f.value(ponto(c)) != linear(c):
            return AdditivityVerdict(Verdict.FAIL, c, verificados, "contraexemplo na caixa")
    return AdditivityVerdict(Verdict.PASS, None, verificados)


# ===========================================================================
# Endireitamento f♯
# ===========================================================================


@dataclass
class Straightening:
    """Avaliador de f♯(s) = f(λs)/λ com cache por raio primitivo."""

    oracle: SuperadditiveOracle
    imax: int = TRUNCATION_IMAX
    _cache: dict = field(default_factory=dict)

    def _multiplo_no_dominio(self, r: tuple[int, ...]) -> int:
        for m in range(1, TRUNCATION_PMAX + 1):
            if decompose(self.oracle.domain, tuple(m * c for c in r)) is not None:
                return m
        raise ValueError(f"Nenhum múltiplo ≤ {TRUNCATION_PMAX} de {r} pertence ao domínio")

    def value(self, s: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """f♯(s) exato para s racional no cone do domínio.

        Raises:
            ValueError: Certificado de truncamento reprovado.
        """
        sf = as_rational_vector(s)
        if not any(sf):
            dim = len(self.oracle.value(self.oracle.domain.generators[0]))
            return tuple(Fraction(0) for _ in range(dim))
        r = primitive(sf)
        escala = next(a / b for a, b in zip(sf, r) if b != 0)
        if r not in self._cache:
            m = self._multiplo_no_dominio(r)
            ponto = tuple(m * c for c in r)
            lam = self.oracle.certify_truncation(ponto, self.imax)
            valor = self.oracle.value(tuple(lam * c for c in ponto))
            self._cache[r] = tuple(v / (lam * m) for v in valor)
        return tuple(v * escala for v in self._cache[r])


@dataclass(frozen=True)
class PieceReport:
    cone_index: int
    linear: bool
    truncation: int
    additivity: AdditivityVerdict

    @property
    def consistent(self) -> bool:
        """Linearidade de f♯ no cone ⇔ aditividade após truncamento."""
        return self.linear == (self.additivity.status == Verdict.PASS)

    def to_json(self) -> dict:
        return {
            "cone": self.cone_index,
            "linear": self.linear,
            "truncation": self.truncation,
            "additivity": self.additivity.to_json(),
            "consistent": self.consistent,
        }


@dataclass(frozen=True)
class StraightenResult:
    function: PLFunction
    reports: tuple[PieceReport, ...]
    sharp: Straightening

    def to_json(self) -> dict:
        return {
            "function": self.function.to_json(),
            "reports": [r.to_json() for r in self.reports],
        }


def _ajustar_peca(
    cone: RationalCone, valores: dict[tuple[int, ...], tuple[Fraction, ...]], dim_valor: int
) -> tuple[Piece, bool]:
    """Funcional por componente que interpola os raios; indica se é linear no cone."""
    raios = list(cone.rays)
    n = cone.ambient_dim
    centro = tuple(sum(r[j] for r in raios) for j in range(n))
    peca = []
    linear = True
    for m in range(dim_valor):
        ell = solve_rational(raios, [valores[r][m] for r in raios], n)
        if ell is None:
            linear = False
            indep = []
            for r in raios:
                if rank(indep + [r]) > len(indep):
                    indep.append(r)
            ell = solve_rational(indep, [valores[r][m] for r in indep], n)
        peca.append(ell)
        if _dot(ell, centro) != valores[centro][m]:
            linear = False
    return tuple(peca), linear


def straighten(
    f: SuperadditiveOracle,
    fan: Sequence[RationalCone] | None = None,
    seed: int = DEFAULT_SEED,
    sample_budget: int = 200,
    box: int = 8,
) -> StraightenResult:
    """f♯ candidato sobre um leque dado ou detectado, com relatório por cone.

    Para cada cone 𝒞 do leque, ajusta f♯ nos raios extremos (linearidade
    conferida também no centro) e testa a aditividade de f no truncamento
    (𝒞 ∩ S)^{(μ)}, com μ múltiplo dos truncamentos dos geradores.

    Raises:
        ValueError: Certificado de truncamento reprovado num raio amostrado.
    """
    sharp = Straightening(f)
    suporte = f.domain.cone
    if fan is None:
        deteccao = detect_pl_2plane(sharp.value, suporte, sample_budget, seed)
        fan = deteccao.function.fan
    fan = tuple(fan)
    dim_valor = len(f.value(f.domain.generators[0]))

    pecas, relatorios = [], []
    for idx, cone in enumerate(fan):
        raios = list(cone.rays)
        centro = tuple(sum(r[j] for r in raios) for j in range(cone.ambient_dim))
        valores = {r: sharp.value(r) for r in raios + [centro]}
        peca, linear = _ajustar_peca(cone, valores, dim_valor)
        pecas.append(peca)

        fatia = intersect_with_cone(f.domain, cone)
        mu = 1
        for g in fatia.generators:
            mu = math.lcm(mu, f.certify_truncation(g))
        soma = tuple(sum(g[j] for g in fatia.generators) for j in range(cone.ambient_dim))
        mu = math.lcm(mu, f.certify_truncation(soma))
        truncado = truncate(fatia, mu)
        oraculo = SuperadditiveOracle(truncado, f.evaluate, f.ray_truncation)
        veredito = additivity_certificate(
            oraculo, [1] * len(truncado.generators), box=box, kappa_budget=4
        )
        relatorios.append(PieceReport(idx, linear, mu, veredito))
        log.info(
            "[PL] cone %d: linear=%s, μ=%d, aditividade=%s",
            idx, linear, mu, veredito.status.value,
        )
    funcao = PLFunction(fan, tuple(pecas), suporte, dim_valor)
    return StraightenResult(funcao, tuple(relatorios), sharp)


# ===========================================================================
# Detecção de linearidade por partes
# ===========================================================================


@dataclass(frozen=True)
class DetectionResult:
    function: PLFunction
    complete: bool
    fits: int
    samples: int

    def to_json(self) -> dict:
        return {
            "function": self.function.to_json(),
            "complete": self.complete,
            "fits": self.fits,
            "samples": self.samples,
        }


def _valor_escalar(f: Callable, x: RationalPoint) -> Fraction:
    v = f(x)
    if isinstance(v, (tuple, list)):
        if len(v) != 1:
            raise ValueError("Oráculo vetorial passado a detecção escalar")
        v = v[0]
    return as_fraction(v)


def _ajuste_local(
    f: Callable, z: RationalPoint, cone: RationalCone
) -> Functional | None:
    """Funcional ℓ com f = ℓ em z e em z ± δeⱼ; None se z estiver perto de uma parede.

    Sob concavidade, igualdade nos vértices do politopo cruzado e no centro
    força f = ℓ numa vizinhança aberta, logo ℓ é uma peça genuína.
    """
    n = len(z)
    folga = min(
        Fraction(_dot(a, z)) / sum(abs(c) for c in a) for a in cone.facets
    )
    if folga <= 0:
        return None
    delta = min(Fraction(1, 16), folga / 2)
    fz = _valor_escalar(f, z)
    for _ in range(3):
        grad = []
        for j in range(n):
            zp = tuple(c + (delta if k == j else 0) for k, c in enumerate(z))
            grad.append((_valor_escalar(f, zp) - fz) / delta)
        ell = tuple(grad)
        ok = _dot(ell, z) == fz and all(
            _valor_escalar(f, tuple(c - (delta if k == j else 0) for k, c in enumerate(z)))
            == _dot(ell, z) - delta * ell[j]
            for j in range(n)
        )
        if ok:
            return ell
        delta /= 4
    return None


def _detectar_escalar(
    f: Callable, C: RationalCone, sample_budget: int, seed: int
) -> DetectionResult:
    n = C.ambient_dim
    pecas: set[Functional] = set()
    amostras = sample_interior_rays(C, min(8, sample_budget), seed)
    ajustes = 0
    for z in tqdm(amostras, desc="[PL] amostras", leave=False):
        ajustes += 1
        ell = _ajuste_local(f, z, C)
        if ell is not None:
            pecas.add(ell)
    proxima_amostra = len(amostras)
    while not pecas and ajustes < sample_budget:
        z = sample_interior_rays(C, 1, seed + proxima_amostra)[0]
        amostras.append(z)
        proxima_amostra += 1
        ajustes += 1
        ell = _ajuste_local(f, z, C)
        if ell is not None:
            pecas.add(ell)
    if not pecas:
        raise BudgetExhaustedError(
            "Nenhum ajuste local bem-sucedido dentro do orçamento", tightest=0
        )

    while True:
        candidato = PLFunction.from_min_of_functionals(pecas, C)
        discrepancia: tuple[RationalPoint, RationalPoint] | None = None
        pontos = []
        for cone, peca in zip(candidato.fan, candidato.pieces):
            raios = [tuple(Fraction(c) for c in r) for r in cone.rays]
            centro = _centroide(raios)
            pontos.extend((r, centro, peca[0]) for r in raios)
            pontos.append((centro, raios[0], peca[0]))
        for z in amostras:
            cone = candidato.fan[candidato._cell_of(as_vector(z))]
            pontos.append((z, _centroide([tuple(Fraction(c) for c in r) for r in cone.rays]), None))
        for x, alvo, ell in pontos:
            fx = _valor_escalar(f, x)
            fh = candidato.rational_value(x)[0] if ell is None else _dot(ell, x)
            if fx > fh:
                raise PLDetectionError(
                    f"f({list(map(str, x))}) = {fx} excede o mínimo das peças ({fh}); "
                    "f não é côncava"
                )
            if fx < fh:
                discrepancia = (x, alvo)
                break
        if discrepancia is None:
            relatorio = check_concave(candidato)
            if not relatorio:
                raise PLDetectionError(f"Candidato não côncavo na parede {relatorio.wall}")
            log.info("[PL] detecção completa: %d peças, %d ajustes", len(pecas), ajustes)
            return DetectionResult(candidato, True, ajustes, len(amostras))

        # f < ℓ numa vizinhança de x dentro da célula: qualquer ajuste ali é peça nova
        x, alvo = discrepancia
        novo = None
        pontos_teste = [x] if membership(C, x, "interior") else []
        t = Fraction(1, 2)
        while novo is None and ajustes < sample_budget:
            p = pontos_teste.pop() if pontos_teste else tuple(
                xi + t * (ai - xi) for xi, ai in zip(x, alvo)
            )
            ajustes += 1
            ell = _ajuste_local(f, p, C)
            if ell is not None and ell not in pecas:
                novo = ell
            t /= 2
        if novo is None:
            log.warning("[PL] orçamento esgotado com %d peças; cobertura incompleta", len(pecas))
            return DetectionResult(candidato, False, ajustes, len(amostras))
        pecas.add(novo)


def _centroide(pontos: Sequence[RationalPoint]) -> RationalPoint:
    return tuple(sum(p[j] for p in pontos) / len(pontos) for j in range(len(pontos[0])))


def detect_pl_2plane(
    f: Callable[[RationalPoint], Value],
    C: RationalCone,
    sample_budget: int = 200,
    seed: int = DEFAULT_SEED,
) -> DetectionResult:
    """Leque candidato de f (côncava e PL em fatias 2-planas) validado exatamente.

    Ajusta funcionais em vizinhanças simpliciais de amostras interiores,
    monta o mínimo das peças encontradas e confere f nas arestas e centros
    de cada célula; discrepâncias geram novos ajustes até o orçamento.
    Funções vetoriais são tratadas por componente e refinadas num leque comum.

    Raises:
        ValueError: Cone não cheio ou acima da dimensão suportada.
        PLDetectionError: f excede o candidato em algum ponto (não côncava).
        BudgetExhaustedError: Nenhum ajuste local possível no orçamento.
    """
    if C.dimension != C.ambient_dim:
        raise ValueError("Detecção exige cone de dimensão cheia")
    if C.ambient_dim > PL_MAX_DIM:
        raise ValueError(f"Detecção suportada até dimensão {PL_MAX_DIM}")
    primeira = f(sample_interior_rays(C, 1, seed)[0])
    if not isinstance(primeira, (tuple, list)) or len(primeira) == 1:
        return _detectar_escalar(f, C, sample_budget, seed)
    resultados = [
        _detectar_escalar(lambda x, m=m: f(x)[m], C, sample_budget, seed)
        for m in range(len(primeira))
    ]
    funcao = common_refinement([r.function for r in resultados])
    return DetectionResult(
        funcao,
        all(r.complete for r in resultados),
        sum(r.fits for r in resultados),
        sum(r.samples for r in resultados),
    )


# ===========================================================================
# Lipschitz
# ===========================================================================


@dataclass(frozen=True)
class LipschitzBound:
    delta: Fraction
    L: Fraction
    L_exact: Fraction
    L_ball: Fraction
    M: Fraction

    def to_json(self) -> dict:
        return {k: fraction_to_str(getattr(self, k)) for k in ("delta", "L", "L_exact", "L_ball", "M")}


def _caixa(x: RationalPoint, raio: Fraction) -> tuple[list, list]:
    n = len(x)
    A, b = [], []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        A.append(e)
        b.append(-(x[i] - raio))
        A.append([-c for c in e])
        b.append(x[i] + raio)
    return A, b


def lipschitz_bound(
    f: PLFunction, x: Sequence[int | Fraction], delta: int | Fraction | None = None
) -> LipschitzBound:
    """(δ, L) com |f(u) − f(v)| ≤ L‖u − v‖∞ em B(x, δ), B(x, 2δ) no interior do suporte.

    δ precisa ficar estritamente abaixo de metade da distância (‖·‖∞) de x ao
    bordo; o padrão é a metade desse limite.

    L exato: maior ‖∇ℓ‖₁ entre as peças cujo cone encontra B(x, δ) em
    dimensão cheia. Cota de bola: 2M/δ com M = max |f − f(x)| em B(x, 2δ).
    Devolve o menor dos dois, reportando ambos.

    Raises:
        ValueError: f vetorial, x fora do interior ou δ fora de (0, limite).
    """
    if f.value_dim != 1:
        raise ValueError("Cota de Lipschitz exige função escalar")
    xf = as_rational_vector(x)
    n = len(xf)
    if not membership(f.support, xf, "interior"):
        raise ValueError("x deve estar no interior do suporte")
    limites = [Fraction(_dot(a, xf)) / (2 * sum(abs(c) for c in a)) for a in f.support.facets]
    limite = min(limites) if limites else Fraction(2)
    if delta is None:
        delta = limite / 2
    delta = as_fraction(delta)
    if delta <= 0 or delta >= limite:
        raise ValueError(f"δ deve estar em (0, {limite})")
    fx = f.rational_value(xf)[0]

    L_exact = Fraction(0)
    M = Fraction(0)
    for cone, peca in zip(f.fan, f.pieces):
        ell = peca[0]
        base_A = [list(a) for a in dual_description(cone)]
        A1, b1 = _caixa(xf, delta)
        P1 = RationalPolytope.from_inequalities(base_A + A1, [0] * len(base_A) + b1)
        if P1.dimension == n:
            L_exact = max(L_exact, sum(abs(c) for c in ell))
        A2, b2 = _caixa(xf, 2 * delta)
        P2 = RationalPolytope.from_inequalities(base_A + A2, [0] * len(base_A) + b2)
        for v in P2.vertices:
            M = max(M, abs(_dot(ell, v) - fx))
    L_ball = 2 * M / delta
    return LipschitzBound(delta, min(L_exact, L_ball), L_exact, L_ball, M)
