"""
Aproximação diofantina simultânea exata.

Pontos irracionais vivem num corpo multiquadrático (:class:`QuadraticField`);
toda condição de aproximação é conferida na aritmética do corpo, sem
tolerância. As buscas por denominadores são varreduras limitadas por um
orçamento (``POLYCONE_BUDGET``); esgotado o orçamento, levanta-se
:class:`~polycone.erros.BudgetExhaustedError` com a melhor cota obtida.

Uso standalone::

    python -m polycone.dioph --sqrt 2 --k 1 --eps 1/4
"""

import argparse
import itertools
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from tqdm import tqdm

from polycone.config import budget_padrao
from polycone.erros import BudgetExhaustedError
from polycone.oracles import Check
from polycone.scalars import (
    AffineSubspace,
    ExactScalar,
    ExactVector,
    VectorLike,
    as_fraction,
    as_rational_vector,
    as_vector,
    fraction_to_str,
    inverse,
    solve_affine,
    sup_distance,
)

log = logging.getLogger(__name__)

RationalPoint = tuple[Fraction, ...]

#: Bits extras de precisão nos envelopes usados pelas varreduras.
_BITS_EXTRA = 64

#: Máximo de pontos recentes combinados na busca de símplex envolvente.
_POOL_MAX = 12


# ===========================================================================
# Tipos
# ===========================================================================


@dataclass(frozen=True)
class ApproximationTuple:
    """(xᵢ, k, kᵢ, rᵢ) que aproximam x uniformemente."""

    points: tuple[RationalPoint, ...]
    k: int
    denominators: tuple[int, ...]
    weights: tuple[ExactScalar, ...]

    def to_json(self) -> dict:
        return {
            "points": [[fraction_to_str(c) for c in p] for p in self.points],
            "k": self.k,
            "denominators": list(self.denominators),
            "weights": [
                fraction_to_str(w.rational_part) if w.is_rational() else w.to_json()
                for w in self.weights
            ],
        }

    def rows(self) -> list[dict]:
        """Uma linha por ponto (para emissão tabular)."""
        return [
            {
                "i": i + 1,
                "ponto": " ".join(fraction_to_str(c) for c in p),
                "k_i": ki,
                "peso": str(w),
            }
            for i, (p, ki, w) in enumerate(zip(self.points, self.denominators, self.weights))
        ]


@dataclass(frozen=True)
class ExtensionResult:
    """Resultado de :func:`extend_approximation`."""

    approximation: ApproximationTuple
    x2: RationalPoint
    k2: int
    xi: ExactVector
    auxiliary: ExactVector

    def to_json(self) -> dict:
        return {
            "approximation": self.approximation.to_json(),
            "x2": [fraction_to_str(c) for c in self.x2],
            "k2": self.k2,
            "xi": self.xi.to_json(),
            "auxiliary": self.auxiliary.to_json(),
        }


# ===========================================================================
# Subespaço racional mínimo
# ===========================================================================


def smallest_rational_affine(x: VectorLike) -> AffineSubspace:
    """W = a₀ + span{a₁,…,a_m} para x = a₀ + Σ aⱼ√dⱼ.

    As raízes √dⱼ (produtos de primos distintos) são linearmente
    independentes sobre ℚ, logo todo subespaço racional que contém x contém
    seus conjugados e portanto W.
    """
    v = as_vector(x)
    campo = v.field
    a0 = v.component(0)
    direcoes = [
        v.component(m) for m in range(1, campo.degree) if any(c != 0 for c in v.component(m))
    ]
    return AffineSubspace.build(a0, direcoes)


def _equacoes_racionais(W: AffineSubspace) -> list[tuple[tuple[int, ...], Fraction]]:
    return [(n, c.rational_part) for n, c in W.equations()]


def _em_W(eqs: list[tuple[tuple[int, ...], Fraction]], z: Sequence[int], q: int) -> bool:
    """z/q ∈ W para W dado por equações racionais."""
    return all(sum(a * zi for a, zi in zip(n, z)) == q * c for n, c in eqs)


# ===========================================================================
# Frações contínuas
# ===========================================================================


def convergents(y: ExactScalar | Fraction | int, max_denominator: int) -> list[tuple[int, int]]:
    """Convergentes p/q de y com q ≤ ``max_denominator`` (exatos)."""
    y = ExactScalar.of(y) if not isinstance(y, ExactScalar) else y
    p_ant, q_ant = 1, 0
    p, q = y.floor(), 1
    saida = [(p, q)]
    resto = y - p
    while not resto.is_zero():
        y = resto.inverse()
        a = y.floor()
        p, p_ant = a * p + p_ant, p
        q, q_ant = a * q + q_ant, q
        if q > max_denominator:
            break
        saida.append((p, q))
        resto = y - a
    return saida


# ===========================================================================
# Verificação
# ===========================================================================


def _inteiro(q: Fraction) -> bool:
    return q.denominator == 1


def verify_tuple(x: VectorLike, tup: ApproximationTuple, eps: int | Fraction) -> list[Check]:
    """Reverifica as três condições de aproximação uniforme na aritmética exata."""
    xv = as_vector(x)
    eps = as_fraction(eps)
    campo = xv.field
    checks = []

    ruins = [
        i for i, (p, ki) in enumerate(zip(tup.points, tup.denominators))
        if not all(_inteiro(ki * c / tup.k) for c in p)
    ]
    checks.append(Check("integralidade kᵢxᵢ/k", not ruins, ruins[0] if ruins else None))

    longe = [
        i for i, (p, ki) in enumerate(zip(tup.points, tup.denominators))
        if not sup_distance(xv, ExactVector.of(p, campo)) < Fraction(eps, 1) / ki
    ]
    checks.append(Check("‖x − xᵢ‖ < ε/kᵢ", not longe, longe[0] if longe else None))

    positivos = [i for i, w in enumerate(tup.weights) if w.sign() <= 0]
    checks.append(Check("rᵢ > 0", not positivos, positivos[0] if positivos else None))

    soma = campo.zero()
    for w in tup.weights:
        soma = soma + w
    checks.append(Check("Σ rᵢ = 1", soma == 1, str(soma) if soma != 1 else None))

    comb = ExactVector.of([0] * xv.dimension, campo)
    for w, p in zip(tup.weights, tup.points):
        comb = comb + ExactVector.of(p, campo) * w
    checks.append(Check("Σ rᵢxᵢ = x", comb == xv, str(comb) if comb != xv else None))
    return checks


def check_order_preservation(x: VectorLike, tup: ApproximationTuple, eps: int | Fraction) -> Check:
    """Ordem das coordenadas de x preservada nos pontos com 2ε/kᵢ abaixo da menor lacuna.

    Coordenadas iguais em x exigem coordenadas iguais em todo xᵢ, qualquer que
    seja kᵢ: os pontos vivem no menor subespaço racional de x, que está contido
    em {u_p = u_q}.
    """
    xv = as_vector(x)
    eps = as_fraction(eps)
    n = xv.dimension
    lacuna = None
    for p, q in itertools.combinations(range(n), 2):
        d = abs(xv[p] - xv[q])
        if not d.is_zero() and (lacuna is None or d < lacuna):
            lacuna = d
    for i, (y, ki) in enumerate(zip(tup.points, tup.denominators)):
        limiar = 2 * eps / ki
        for p, q in itertools.permutations(range(n), 2):
            dif = xv[p] - xv[q]
            if dif.is_zero():
                if y[p] != y[q]:
                    return Check("ordem das coordenadas", False, (i, p, q))
            elif dif.sign() > 0 and lacuna is not None and lacuna > limiar and not y[p] > y[q]:
                return Check("ordem das coordenadas", False, (i, p, q))
    return Check("ordem das coordenadas", True)


# ===========================================================================
# Varreduras
# ===========================================================================


@dataclass(frozen=True)
class _Envelope:
    """Envelope inteiro de x escalado por 2^bits, coordenada a coordenada."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]
    bits: int

    @classmethod
    def of(cls, x: ExactVector, budget: int) -> "_Envelope":
        bits = _BITS_EXTRA + budget.bit_length()
        escala = 1 << bits
        lo, hi = [], []
        for c in x:
            a, b = c.enclosure(bits)
            lo.append(math.floor(a * escala))
            hi.append(math.ceil(b * escala))
        return cls(tuple(lo), tuple(hi), bits)

    def candidatos(self, q: int, raio: Fraction, alvo: RationalPoint) -> list[range]:
        """Inteiros que podem estar a distância < raio de q·x − alvo, por coordenada."""
        escala = 1 << self.bits
        faixas = []
        for lo, hi, t in zip(self.lo, self.hi, alvo):
            a = Fraction(q * lo, escala) - t
            b = Fraction(q * hi, escala) - t
            faixa = [
                z for z in range(math.floor(a - raio), math.ceil(b + raio) + 1)
                if b - z > -raio and a - z < raio
            ]
            if not faixa:
                return []
            faixas.append(faixa)
        return faixas


def _dist_inteiros(xv: ExactVector, q: int, alvo: ExactVector, z: Sequence[int]) -> ExactScalar:
    return (xv * q - alvo - ExactVector.of(list(z), xv.field)).sup_norm()


def torus_scan(
    x: VectorLike,
    target: VectorLike,
    delta: int | Fraction,
    budget: int | None = None,
    start: int = 1,
    accept: Callable[[int, tuple[int, ...]], bool] | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Menor q ≥ start com ‖q·x − target − w‖ < δ para algum w ∈ ℤⁿ.

    Args:
        accept: Filtro opcional sobre (q, w).

    Returns:
        (q, w) com a cota conferida exatamente.

    Raises:
        BudgetExhaustedError: Nenhum q até ``start + budget − 1``; ``tightest``
            é a menor distância (cota superior racional) vista.
    """
    xv = as_vector(x)
    alvo = as_vector(target, xv.field) if not isinstance(target, ExactVector) else target
    delta = as_fraction(delta)
    budget = budget_padrao() if budget is None else budget
    fim = start + budget
    env = _Envelope.of(xv, fim)
    alvo_lo = tuple(c.enclosure(env.bits)[0] for c in alvo)
    melhor = None
    for q in tqdm(range(start, fim), desc="[DIOPH] varredura", leave=False):
        faixas = env.candidatos(q, delta, alvo_lo)
        if not faixas:
            continue
        for w in itertools.product(*faixas):
            d = _dist_inteiros(xv, q, alvo, w)
            if melhor is None or d < melhor:
                melhor = d
            if d < delta and (accept is None or accept(q, w)):
                log.debug("[DIOPH] q=%d atinge distância %s", q, d)
                return q, tuple(w)
    teto = melhor.enclosure(32)[1] if melhor is not None else None
    raise BudgetExhaustedError(
        f"Nenhum q em [{start}, {fim}) aproxima o alvo com δ={delta}", tightest=teto
    )


@dataclass(frozen=True)
class SymmetryReport:
    m: int
    towards_negative: int
    towards_positive: int

    def to_json(self) -> dict:
        return {"m": self.m, "k_neg": self.towards_negative, "k_pos": self.towards_positive}


def check_symmetry(
    x: VectorLike, delta: int | Fraction, multiples: Sequence[int] = (1, 2, 3), budget: int | None = None
) -> list[SymmetryReport]:
    """Consequência finita da simetria do fecho de ℕx + ℤⁿ.

    Para cada m, encontra q com q·x ≈ −m·x e q' > m com q'·x ≈ m·x (mod ℤⁿ),
    ambos dentro de δ.

    Raises:
        BudgetExhaustedError: Alguma das varreduras estourou o orçamento.
    """
    xv = as_vector(x)
    saida = []
    for m in multiples:
        q_neg, _ = torus_scan(xv, -(xv * m), delta, budget)
        q_pos, _ = torus_scan(xv, xv * m, delta, budget, start=m + 1)
        saida.append(SymmetryReport(m, q_neg, q_pos))
    return saida


# ===========================================================================
# Aproximação uniforme
# ===========================================================================


def _pesos_baricentricos(
    W: AffineSubspace, pontos: Sequence[RationalPoint], alvo: ExactVector
) -> tuple[ExactScalar, ...] | None:
    """Pesos positivos com Σ = 1 e Σ pesoᵢ·pontoᵢ = alvo, ou None."""
    m = W.dimension
    if len(pontos) != m + 1:
        return None
    campo = alvo.field
    params = [tuple(c.rational_part for c in W.parametrize(p)) for p in pontos]
    matriz = [[params[i][j] for i in range(m + 1)] for j in range(m)]
    matriz.append([1] * (m + 1))
    try:
        inv = inverse(matriz)
    except ValueError:
        return None
    b = list(W.parametrize(alvo)) + [campo.one()]
    pesos = []
    for linha in inv:
        total = campo.zero()
        for c, bj in zip(linha, b):
            if c:
                total = total + bj * c
        if total.sign() <= 0:
            return None
        pesos.append(total)
    return tuple(pesos)


def _approx_racional(x: ExactVector, k: int) -> ApproximationTuple:
    xr = x.to_rational()
    k1 = k * math.lcm(1, *(c.denominator for c in xr))
    return ApproximationTuple((xr,), k, (k1,), (ExactScalar.of(1, x.field),))


def _approx_convergentes(x: ExactVector, k: int, eps: Fraction, budget: int) -> ApproximationTuple:
    y = x[0] / k
    conv = convergents(y, budget)
    melhor = None
    qualificados = []
    for p, q in conv:
        d = abs(y * q - p)
        if melhor is None or d < melhor:
            melhor = d
        if d < eps / k:
            qualificados.append((p, q))
            if len(qualificados) == 2:
                break
    if len(qualificados) < 2:
        raise BudgetExhaustedError(
            f"Convergentes com denominador ≤ {budget} não bastam para ε={eps}",
            tightest=(melhor * k).enclosure(32)[1] if melhor is not None else None,
        )
    (p1, q1), (p2, q2) = qualificados
    x1, x2 = Fraction(k * p1, q1), Fraction(k * p2, q2)
    r1 = (x[0] - x2) / (x1 - x2)
    r2 = 1 - r1
    return ApproximationTuple(((x1,), (x2,)), k, (q1, q2), (r1, r2))


def uniform_approximate(
    x: VectorLike, k: int, eps: int | Fraction, budget: int | None = None
) -> ApproximationTuple:
    """Pontos racionais de W = smallest_rational_affine(x) que envolvem x.

    Em dimensão 1 usa convergentes da fração contínua de x/k; em geral varre
    q = 1, 2, … com kᵢ = k·q e xᵢ = k·z/q, z ∈ ℤⁿ, guardando os pontos de W
    e testando símplices com pesos baricêntricos positivos.

    Raises:
        ValueError: k ≤ 0 ou ε ≤ 0.
        BudgetExhaustedError: Nenhum símplex envolvente com q ≤ ``budget``.
    """
    xv = as_vector(x)
    eps = as_fraction(eps)
    if k <= 0 or eps <= 0:
        raise ValueError("k e ε devem ser positivos")
    budget = budget_padrao() if budget is None else budget
    if xv.is_rational():
        return _approx_racional(xv, k)
    if xv.dimension == 1:
        return _approx_convergentes(xv, k, eps, budget)

    W = smallest_rational_affine(xv)
    eqs = _equacoes_racionais(W)
    y = xv / k
    # ‖x − kz/q‖ < ε/(kq)  ⇔  ‖q·y − z‖ < ε/k²
    raio = eps / (k * k)
    env = _Envelope.of(y, budget)
    zero = tuple(Fraction(0) for _ in range(xv.dimension))
    alvo_zero = ExactVector.of([0] * xv.dimension, xv.field)
    pool: list[tuple[RationalPoint, int]] = []
    melhor = None
    for q in tqdm(range(1, budget + 1), desc="[DIOPH] denominadores", leave=False):
        faixas = env.candidatos(q, raio, zero)
        if not faixas:
            continue
        for z in itertools.product(*faixas):
            if not _em_W(eqs, [k * zi for zi in z], q):
                continue
            d = _dist_inteiros(y, q, alvo_zero, z)
            if melhor is None or d < melhor:
                melhor = d
            if not d < raio:
                continue
            ponto = tuple(Fraction(k * zi, q) for zi in z)
            if any(p == ponto for p, _ in pool):
                continue
            pool.append((ponto, k * q))
            pool = pool[-_POOL_MAX:]
            for outros in itertools.combinations(pool[:-1], W.dimension):
                escolha = list(outros) + [pool[-1]]
                pesos = _pesos_baricentricos(W, [p for p, _ in escolha], xv)
                if pesos is not None:
                    log.info("[DIOPH] símplex envolvente com q ≤ %d", q)
                    return ApproximationTuple(
                        tuple(p for p, _ in escolha), k, tuple(kq for _, kq in escolha), pesos
                    )
    raise BudgetExhaustedError(
        f"Nenhum símplex envolvente com denominador ≤ {budget}",
        tightest=(melhor * k * k).enclosure(32)[1] if melhor is not None else None,
        partial={"points": [[fraction_to_str(c) for c in p] for p, _ in pool]},
    )


def extend_approximation(
    x: VectorLike,
    k: int,
    eps: int | Fraction,
    eta: int | Fraction,
    x1: Sequence[int | Fraction],
    k1: int,
    budget: int | None = None,
) -> ExtensionResult:
    """Completa (x₁, k₁) a uma aproximação uniforme com resto ξ pequeno.

    Após reescalar por k, procura k₂ com ‖(k₁+k₂)x − w‖ < min(η, ε − k₁‖x − x₁‖)
    e w/(k₁+k₂) ∈ W; então x₂ = (w − k₁x₁)/k₂, u = w/(k₁+k₂) está no segmento
    (x₁, x₂) e ξ = x − u. Os demais pontos envolvem, dentro de W, um ponto
    v = x + tξ; os pesos vêm de x = βu + (1−β)v.

    Raises:
        ValueError: Hipóteses ‖x − x₁‖ < ε/k₁ ou k₁x₁/k inteiro violadas.
        BudgetExhaustedError: Varredura de k₂ (ou da aproximação em W) estourou.
    """
    xv = as_vector(x)
    campo = xv.field
    eps, eta = as_fraction(eps), as_fraction(eta)
    x1 = as_rational_vector(x1)
    if k <= 0 or k1 <= 0 or eps <= 0 or eta <= 0:
        raise ValueError("k, k₁, ε e η devem ser positivos")
    dist1 = sup_distance(xv, ExactVector.of(x1, campo))
    if not dist1 < eps / k1:
        raise ValueError("Hipótese ‖x − x₁‖ < ε/k₁ violada")
    if not all(_inteiro(k1 * c / k) for c in x1):
        raise ValueError("Hipótese k₁x₁/k inteiro violada")
    budget = budget_padrao() if budget is None else budget

    # reescala: k = 1
    xs = xv / k
    x1s = tuple(c / k for c in x1)
    eps_s, eta_s = eps / k, eta / k
    W = smallest_rational_affine(xs)
    eqs = _equacoes_racionais(W)
    folga = eps_s - dist1 / k * k1
    raio = folga if folga < eta_s else ExactScalar.of(eta_s, campo)
    if raio.is_rational():
        raio_q = raio.rational_part
    else:
        raio_q = raio.enclosure(64)[0]
    if raio_q <= 0:
        raise ValueError("Sem folga para k₂: ε − k₁‖x − x₁‖ ≤ 0")

    k2, w = torus_scan(
        xs,
        -(xs * k1),
        raio_q,
        budget,
        accept=lambda q, w: _em_W(eqs, w, k1 + q),
    )
    soma = k1 + k2
    x2s = tuple((wi - k1 * c) / k2 for wi, c in zip(w, x1s))
    u = ExactVector.of([Fraction(wi, soma) for wi in w], campo)
    xi_s = xs - u
    auxiliar = (ExactVector.of(list(w), campo) - xs * k1) / k2
    alfa = Fraction(k1, soma)
    log.info("[DIOPH] k₂=%d encontrado (w=%s)", k2, w)

    pontos = [tuple(c * k for c in x1s), tuple(c * k for c in x2s)]
    dens = [k1, k2]
    if all(c.is_zero() for c in xi_s):
        pesos = [ExactScalar.of(alfa, campo), ExactScalar.of(1 - alfa, campo)]
    else:
        envolvente = uniform_approximate(xs, 1, eps_s, budget)
        t = Fraction(1)
        q = None
        for _ in range(64):
            v = xs + xi_s * t
            q = _pesos_baricentricos(W, envolvente.points, v) if W.contains(v) else None
            if q is not None:
                break
            t /= 2
        if q is None:
            raise BudgetExhaustedError(
                "Ponto v = x + tξ não ficou no interior do símplex envolvente",
                tightest=None,
            )
        beta = t / (1 + t)
        pesos = [
            ExactScalar.of(alfa * beta, campo),
            ExactScalar.of((1 - alfa) * beta, campo),
        ] + [qi * (1 - beta) for qi in q]
        pontos += [tuple(c * k for c in p) for p in envolvente.points]
        dens += list(envolvente.denominators)

    tup = ApproximationTuple(tuple(pontos), k, tuple(dens), tuple(pesos))
    return ExtensionResult(
        tup,
        tuple(c * k for c in x2s),
        k2,
        xi_s * k,
        auxiliar * k,
    )


def verify_extension(
    x: VectorLike, eps: int | Fraction, eta: int | Fraction, res: ExtensionResult, k1: int
) -> list[Check]:
    """Condições de aproximação, cota de ξ, pontos xᵢ (i ≥ 3) e y/k₂ em W."""
    xv = as_vector(x)
    tup = res.approximation
    checks = verify_tuple(xv, tup, eps)
    eta = as_fraction(eta)
    norma = res.xi.sup_norm()
    checks.append(
        Check("‖ξ‖ < η/(k₁+k₂)", norma < eta / (k1 + res.k2), str(norma))
    )
    W = smallest_rational_affine(xv)
    fora = [i for i, p in enumerate(tup.points[2:], start=2) if not W.contains(p)]
    checks.append(Check("xᵢ ∈ W (i ≥ 3)", not fora, fora[0] if fora else None))
    checks.append(Check("y/k₂ ∈ W", W.contains(res.auxiliary)))
    return checks


# ===========================================================================
# Perturbação racional
# ===========================================================================


def _digitos(eps: Fraction) -> int:
    d = 0
    while Fraction(1, 10**d) > eps:
        d += 1
    return d


def _truncar(c: ExactScalar, casas: int) -> Fraction:
    escala = 10**casas
    sinal = c.sign()
    return sinal * Fraction((abs(c) * escala).floor(), escala)


def nearest_rational_in_subspace(
    K: AffineSubspace,
    r: VectorLike,
    eps: int | Fraction,
    preserve_support: Sequence[Sequence[int | Fraction]] | None = None,
) -> RationalPoint:
    """Ponto racional s ∈ K com ‖s − r‖ < ε.

    Trunca as coordenadas pivô de r em casas decimais (começando uma além da
    ordem de ε) e recompõe o ponto em K; aumenta as casas até a cota valer e,
    quando pedido, até todo funcional positivo em r continuar positivo em s.

    Raises:
        ValueError: r ∉ K ou K sem pontos racionais.
    """
    eps = as_fraction(eps)
    rv = as_vector(r)
    if eps <= 0:
        raise ValueError("ε deve ser positivo")
    if not K.contains(rv):
        raise ValueError("r não pertence a K")
    if not K.is_rational():
        raise ValueError("K não possui pontos racionais")
    if rv.is_rational():
        return rv.to_rational()
    Kq = AffineSubspace.build(K.rational_point(), K.directions)
    if Kq.dimension == 0:
        return Kq.rational_point()
    funcionais = [as_rational_vector(a) for a in (preserve_support or [])]
    ativos = [a for a in funcionais if rv.dot(a).sign() > 0]
    base = Kq.base_point.to_rational()
    casas = _digitos(eps) + 1
    while True:
        t = [_truncar(rv[p], casas) - base[p] for p in Kq.pivots]
        s = Kq.point_at(t).to_rational()
        if sup_distance(rv, s) < eps and all(
            sum(a_i * s_i for a_i, s_i in zip(a, s)) > 0 for a in ativos
        ):
            return s
        casas += 1


@dataclass(frozen=True)
class PerturbationResult:
    coefficients: RationalPoint
    divisor: RationalPoint
    real_divisor: ExactVector

    def to_json(self) -> dict:
        return {
            "s": [fraction_to_str(c) for c in self.coefficients],
            "divisor": [fraction_to_str(c) for c in self.divisor],
            "real_divisor": self.real_divisor.to_json(),
        }


def perturb_divisor(
    delta: Sequence[int | Fraction],
    phi: Sequence[Sequence[int | Fraction]],
    r: VectorLike,
    eps: int | Fraction,
) -> PerturbationResult:
    """D'' = D + Σ sᵢ(fᵢ) racional próximo de D' = D + Σ rᵢ(fᵢ), com mesmo suporte.

    Args:
        delta: Coeficientes δⱼ de D nas componentes Fⱼ.
        phi: Matriz p×N com (fᵢ) = Σ φᵢⱼFⱼ.
        r: Coeficientes reais rᵢ (D' efetivo).
        eps: Cota ‖D' − D''‖ < ε.

    Raises:
        ValueError: D' não efetivo ou dimensões incompatíveis.
    """
    d = as_rational_vector(delta)
    linhas = [as_rational_vector(row) for row in phi]
    rv = as_vector(r)
    eps = as_fraction(eps)
    if len(linhas) != rv.dimension or any(len(row) != len(d) for row in linhas):
        raise ValueError("Dimensões de δ, φ e r incompatíveis")
    N = len(d)
    campo = rv.field
    colunas = [[row[j] for row in linhas] for j in range(N)]
    real = ExactVector.of([rv.dot(col) + d[j] for j, col in enumerate(colunas)], campo)
    if any(c.sign() < 0 for c in real):
        raise ValueError("D' deve ser efetivo")
    nulos = [j for j, c in enumerate(real) if c.is_zero()]
    p = rv.dimension
    if nulos:
        K = solve_affine([colunas[j] for j in nulos], [-d[j] for j in nulos], p)
    else:
        K = AffineSubspace.build([0] * p, [[1 if i == j else 0 for i in range(p)] for j in range(p)])
    positivos = [c.enclosure(32)[0] for c in real if not c.is_zero()]
    cota = min([eps] + [c for c in positivos if c > 0])
    norma_phi = max((sum(abs(c) for c in col) for col in colunas), default=1) or 1
    s = nearest_rational_in_subspace(K, rv, cota / (norma_phi + 1))
    divisor = tuple(
        d[j] + sum(si * c for si, c in zip(s, col)) for j, col in enumerate(colunas)
    )
    return PerturbationResult(s, divisor, real)


# ===========================================================================
# CLI standalone
# ===========================================================================


def _build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description="Aproximação uniforme de √d (exata).")
    p.add_argument("--sqrt", type=int, required=True, metavar="D")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--eps", default="1/4")
    p.add_argument("--budget", type=int, default=None)
    return p


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    args = _build_arg_parser().parse_args()
    x = ExactVector.of([ExactScalar.sqrt(args.sqrt)])
    tup = uniform_approximate(x, args.k, Fraction(args.eps), args.budget)
    print(json.dumps(tup.to_json(), ensure_ascii=False, indent=2))
