"""
Oráculos de força bruta e o registro de verificações.

Implementações independentes, lentas e diretas, usadas para conferir os
algoritmos principais: enumeração de pontos do reticulado, eliminação
gaussiana sem frações (Bareiss), LP de uma variável e amostragem de
superlinearidade. Os testes, o ``selftest`` e a reverificação do CLI
dependem destes oráculos.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from polycone.monoids import AffineMonoid, decompose
from polycone.polyhedra import RationalCone, dual_description
from polycone.scalars import ExactScalar, VectorLike, as_vector

log = logging.getLogger(__name__)

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class Check:
    """Veredito de um invariante: nome, aprovado e testemunha opcional."""

    name: str
    passed: bool
    witness: Any = None

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        elif w is not None and not isinstance(w, (int, str, list, dict, bool)):
            w = str(w)
        return {"invariant": self.name, "status": "PASS" if self.passed else "FAIL", "witness": w}


# ===========================================================================
# Reticulado
# ===========================================================================


def _no_cone(linhas: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    return all(sum(a * c for a, c in zip(r, x)) >= 0 for r in linhas)


def lattice_points_in_cone(cone: RationalCone, coord_sum: int) -> list[IntVector]:
    """Pontos inteiros não nulos do cone com Σ|xᵢ| ≤ coord_sum."""
    linhas = dual_description(cone)
    n = cone.ambient_dim
    pontos = []
    for x in itertools.product(range(-coord_sum, coord_sum + 1), repeat=n):
        if any(x) and sum(abs(c) for c in x) <= coord_sum and _no_cone(linhas, x):
            pontos.append(x)
    return pontos


def brute_force_hilbert_basis(cone: RationalCone, coord_sum: int) -> list[IntVector]:
    """Irredutíveis de C ∩ ℤⁿ entre os pontos com Σ|xᵢ| ≤ coord_sum.

    Processa por grau (soma das facetas) crescente: x é redutível se x − h
    estiver no cone para algum irredutível h já encontrado.
    """
    linhas = dual_description(cone)
    grau = [sum(col) for col in zip(*cone.facets)] if cone.facets else [0] * cone.ambient_dim
    pontos = sorted(
        lattice_points_in_cone(cone, coord_sum),
        key=lambda x: (sum(g * c for g, c in zip(grau, x)), x),
    )
    irredutiveis: list[IntVector] = []
    for x in pontos:
        redutivel = any(
            h != x and _no_cone(linhas, tuple(a - b for a, b in zip(x, h)))
            for h in irredutiveis
        )
        if not redutivel:
            irredutiveis.append(x)
    return sorted(irredutiveis)


def brute_minimal_generators(points: Iterable[Sequence[int]]) -> list[IntVector]:
    """Elementos que não são soma de dois outros elementos não nulos da lista."""
    conj = {tuple(p) for p in points if any(p)}
    minimos = []
    for x in conj:
        if not any(
            tuple(a - b for a, b in zip(x, y)) in conj for y in conj if y != x
        ):
            minimos.append(x)
    return sorted(minimos)


def generated_by(generators: Sequence[Sequence[int]], targets: Iterable[Sequence[int]]) -> list[IntVector]:
    """Alvos que NÃO são combinação ℕ-linear dos geradores."""
    gens = [tuple(g) for g in generators if any(g)]
    if not gens:
        return [tuple(t) for t in targets if any(t)]
    S = AffineMonoid.of(gens, "Z", len(gens[0]))
    return [tuple(t) for t in targets if decompose(S, t) is None]


# ===========================================================================
# Álgebra linear sem frações
# ===========================================================================


def bareiss_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Posto por eliminação de Bareiss (entradas racionais são escalonadas a inteiros)."""
    if not rows:
        return 0
    M = []
    for r in rows:
        fr = [Fraction(c) for c in r]
        den = math.lcm(1, *(c.denominator for c in fr))
        M.append([int(c * den) for c in fr])
    m, n = len(M), len(M[0])
    posto, anterior = 0, 1
    for col in range(n):
        piv = next((i for i in range(posto, m) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[posto], M[piv] = M[piv], M[posto]
        for i in range(posto + 1, m):
            for j in range(col + 1, n):
                M[i][j] = (M[i][j] * M[posto][col] - M[i][col] * M[posto][j]) // anterior
            M[i][col] = 0
        anterior = M[posto][col]
        posto += 1
        if posto == m:
            break
    return posto


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinante inteiro exato por Bareiss."""
    M = [list(map(int, r)) for r in rows]
    n = len(M)
    sinal, anterior = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            troca = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if troca is None:
                return 0
            M[k], M[troca] = M[troca], M[k]
            sinal = -sinal
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // anterior
        anterior = M[k][k]
    return sinal * M[n - 1][n - 1] if n else 1


def is_extreme_by_rank(cone: RationalCone, ray: Sequence[int]) -> bool:
    """r é extremo se as facetas ativas mais as equações têm posto n − 1."""
    ativos = [a for a in cone.facets if sum(x * y for x, y in zip(a, ray)) == 0]
    return bareiss_rank(list(cone.equations) + ativos) == cone.ambient_dim - 1


# ===========================================================================
# LP de uma variável
# ===========================================================================


def escape_oracle(cone: RationalCone, base: VectorLike, through: VectorLike) -> ExactScalar | None:
    """max{t ≥ 0 : base + t·(through − base) ∈ C}; None quando ilimitado.

    Raises:
        ValueError: base fora do cone.
    """
    b, p = as_vector(base), as_vector(through)
    d = p - b
    sup = None
    for a in dual_description(cone):
        ab = b.dot(a)
        if ab.sign() < 0:
            raise ValueError("Base fora do cone")
        ad = d.dot(a)
        if ad.sign() < 0:
            t = ab / (-ad)
            if sup is None or t < sup:
                sup = t
    return sup


# ===========================================================================
# Superlinearidade
# ===========================================================================


def superlinearity_violations(
    f: Callable[[tuple[int, ...]], Sequence[Fraction]],
    points: Sequence[Sequence[int]],
    pairs: int,
    seed: int = 0,
    scalars: Sequence[int] = (2, 3),
) -> list[tuple[IntVector, IntVector]]:
    """Pares amostrados que violam f(a) + f(b) ≤ f(a + b) ou f(λa) = λf(a)."""
    rng = random.Random(seed)
    pts = [tuple(p) for p in points]
    ruins = []
    for _ in range(pairs):
        a, b = rng.choice(pts), rng.choice(pts)
        fa, fb = f(a), f(b)
        fab = f(tuple(x + y for x, y in zip(a, b)))
        if any(x + y > z for x, y, z in zip(fa, fb, fab)):
            ruins.append((a, b))
            continue
        lam = rng.choice(list(scalars))
        if tuple(f(tuple(lam * c for c in a))) != tuple(lam * v for v in fa):
            ruins.append((a, tuple(lam * c for c in a)))
    return ruins
