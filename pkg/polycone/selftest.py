"""
Suíte de propriedades do polycone, em escala de mesa.

Cada propriedade gera instâncias a partir de um ``random.Random(seed)``,
compara o algoritmo principal com um oráculo independente e devolve um
:class:`~polycone.oracles.Check`. O resumo sai como tabela pandas e o
relatório completo é gravado em JSON.

Uso standalone::

    python -m polycone.selftest --quick
    python -m polycone.selftest --seed 3 --output relatorios/selftest.json
"""

import argparse
import json
import logging
import random
from fractions import Fraction
from pathlib import Path
from typing import Callable

import pandas as pd
from tqdm import tqdm

from polycone.config import DEFAULT_SEED, SELFTEST_JSON
from polycone.dioph import uniform_approximate, verify_tuple
from polycone.erros import BudgetExhaustedError, PLDetectionError
from polycone.monoids import AffineMonoid, hilbert_basis, intersect_with_cone, saturate, truncate
from polycone.oracles import Check, brute_force_hilbert_basis, escape_oracle
from polycone.plfun import (
    PLFunction,
    SuperadditiveOracle,
    Verdict,
    additivity_certificate,
    detect_pl_2plane,
    halton_point,
    lipschitz_bound,
)
from polycone.polyhedra import RationalCone, membership, ray_escape
from polycone.scalars import ExactScalar, ExactVector, QuadraticField
from polycone.toric import (
    DivisorFamily,
    ToricModel,
    TorusDivisor,
    adjoint_semigroup,
    check_straightening,
    ord_pl_decomposition,
    sections,
    verify_generation,
)

log = logging.getLogger(__name__)

Propriedade = Callable[[random.Random, bool], Check]


# ===========================================================================
# Geradores de instâncias
# ===========================================================================


def _cone_no_ortante(rng: random.Random, dim: int, raios: int, coord: int) -> RationalCone:
    """Cone de dimensão cheia com raios em ℕⁿ (Σ|x| coincide com o grau)."""
    while True:
        gens = [[rng.randint(0, coord) for _ in range(dim)] for _ in range(raios)]
        gens = [g for g in gens if any(g)]
        if len(gens) < dim:
            continue
        cone = RationalCone.from_generators(gens, dim)
        if cone.dimension == dim:
            return cone


def _ponto_no_cone(rng: random.Random, cone: RationalCone) -> tuple[int, ...]:
    n = cone.ambient_dim
    pesos = [rng.randint(1, 3) for _ in cone.rays]
    return tuple(sum(w * r[j] for w, r in zip(pesos, cone.rays)) for j in range(n))


def _funcionais(rng: random.Random, k: int, dim: int, lo: int = 0, hi: int = 4) -> list[list[int]]:
    return [[rng.randint(lo, hi) for _ in range(dim)] for _ in range(k)]


# ===========================================================================
# Propriedades
# ===========================================================================


def prop_hilbert(rng: random.Random, quick: bool) -> Check:
    """Base de Hilbert = irredutíveis por enumeração bruta."""
    for _ in range(5 if quick else 40):
        dim = rng.choice([2, 3])
        cone = _cone_no_ortante(rng, dim, dim + rng.randint(0, 1), 4 if dim == 3 else 8)
        base = hilbert_basis(cone)
        cota = max(sum(b) for b in base)
        if brute_force_hilbert_basis(cone, cota) != base:
            return Check("base de Hilbert = oráculo", False, [list(r) for r in cone.rays])
    return Check("base de Hilbert = oráculo", True)


def prop_gordan(rng: random.Random, quick: bool) -> Check:
    """Interseção S ∩ 𝒞 não depende da ordem das desigualdades."""
    for _ in range(3 if quick else 20):
        S = AffineMonoid.of(_funcionais(rng, 3, 3, 0, 3) + [[1, 1, 1]], "N", 3)
        cone = _cone_no_ortante(rng, 3, 4, 4)
        base = intersect_with_cone(S, cone)
        linhas = list(cone.facets)
        for _ in range(3 if quick else 10):
            rng.shuffle(linhas)
            outro = intersect_with_cone(S, RationalCone.from_inequalities(linhas, 3))
            if outro.generators != base.generators:
                return Check("fatiamento independe da ordem", False, linhas)
    return Check("fatiamento independe da ordem", True)


def prop_truncamento(rng: random.Random, quick: bool) -> Check:
    """S^{(κ)} uniforme igual em apresentações distintas do mesmo monoide saturado."""
    for _ in range(3 if quick else 20):
        S = saturate(AffineMonoid.of(_funcionais(rng, 3, 2, 0, 5) + [[1, 1]], "N", 2))
        kappa = rng.randint(2, 4)
        alvo = truncate(S, kappa).generators
        for _ in range(5):
            extras = [
                tuple(a + b for a, b in zip(rng.choice(S.generators), rng.choice(S.generators)))
                for _ in range(2)
            ]
            apres = list(S.generators) + extras
            rng.shuffle(apres)
            if truncate(AffineMonoid.of(apres, "N", 2), kappa).generators != alvo:
                return Check("truncamento independe da apresentação", False, apres)
    return Check("truncamento independe da apresentação", True)


def prop_aditividade(rng: random.Random, quick: bool) -> Check:
    """Mapas aditivos passam; mapas estritamente superaditivos não passam."""
    dominio = AffineMonoid.free(2)
    for _ in range(3 if quick else 25):
        A = _funcionais(rng, 2, 2, -3, 3)
        linear = SuperadditiveOracle(dominio, lambda s, A=A: tuple(sum(a * x for a, x in zip(r, s)) for r in A))
        if additivity_certificate(linear, (1, 1), box=6).status != Verdict.PASS:
            return Check("certificado de aditividade", False, A)
        c = rng.randint(1, 3)
        torto = SuperadditiveOracle(dominio, lambda s, c=c: s[0] + s[1] + c * min(s))
        if additivity_certificate(torto, (1, 1), box=6).status == Verdict.PASS:
            return Check("certificado de aditividade", False, c)
    return Check("certificado de aditividade", True)


def prop_deteccao(rng: random.Random, quick: bool) -> Check:
    """Mínimo de funcionais recuperado exatamente pela detecção PL."""
    for _ in range(2 if quick else 15):
        cone = _cone_no_ortante(rng, 3, 3, 3)
        verdade = PLFunction.from_min_of_functionals(
            _funcionais(rng, rng.randint(1, 3), 3), cone
        )
        try:
            res = detect_pl_2plane(verdade.rational_value, cone, sample_budget=60, seed=rng.randint(0, 99))
        except (PLDetectionError, BudgetExhaustedError) as exc:
            return Check("detecção PL recupera as peças", False, str(exc))
        if not res.complete or res.function.functionals() != verdade.functionals():
            return Check("detecção PL recupera as peças", False, [list(r) for r in cone.rays])
    return Check("detecção PL recupera as peças", True)


def _familia_aleatoria(rng: random.Random) -> tuple[ToricModel, DivisorFamily]:
    X = rng.choice([ToricModel.projective_plane(), ToricModel.blowup_plane()])
    r = len(X.rays)
    while True:
        matriz = [[rng.randint(0, 2) for _ in range(r)] for _ in range(2)]
        if all(any(row) for row in matriz):
            return X, DivisorFamily.of(matriz)


def prop_endireitamento(rng: random.Random, quick: bool) -> Check:
    """f♯ de Mob coincide com μ(s) − N_σ‖μ(s)‖."""
    for _ in range(2 if quick else 10):
        X, F = _familia_aleatoria(rng)
        for check in check_straightening(X, F, box=2):
            if not check.passed:
                return Check("endireitamento = LP", False, check.witness)
    return Check("endireitamento = LP", True)


def prop_ord_pl(rng: random.Random, quick: bool) -> Check:
    """ord_ρ‖μ(s)‖ linear por célula e parte endireitada côncava."""
    for _ in range(2 if quick else 10):
        X, F = _familia_aleatoria(rng)
        rho = rng.randrange(len(X.rays))
        for check in ord_pl_decomposition(X, F, rho, samples=4 if quick else 10).checks:
            if not check.passed:
                return Check("decomposição PL de ord", False, check.witness)
    return Check("decomposição PL de ord", True)


def prop_diofantina(rng: random.Random, quick: bool) -> Check:
    """Tuplas de aproximação uniforme passam a verificação exata, para k ∈ {1, 2, 3}."""
    for _ in range(3 if quick else 15):
        k = rng.choice([1, 2, 3])
        dim = rng.choice([1, 2, 3])
        radicandos = rng.sample([2, 3, 5], rng.choice([1, 2]))
        K = QuadraticField.for_radicands(radicandos)
        coords = [
            ExactScalar.of(rng.randint(-2, 2), K) + K.sqrt(rng.choice(radicandos)) * rng.choice([1, -1, 2])
            for _ in range(dim)
        ]
        x = ExactVector.of(coords, K)
        eps = Fraction(1, 4) if k == 1 else Fraction(1)
        try:
            tup = uniform_approximate(x, k, eps, budget=100_000)
        except BudgetExhaustedError as exc:
            return Check("aproximação uniforme verificada", False, str(exc))
        ruins = [c.name for c in verify_tuple(x, tup, eps) if not c.passed]
        if ruins:
            testemunha = {"k": k, "x": [str(c) for c in x], "falhas": ruins}
            return Check("aproximação uniforme verificada", False, testemunha)
    return Check("aproximação uniforme verificada", True)


def prop_lipschitz(rng: random.Random, quick: bool) -> Check:
    """|f(u) − f(v)| ≤ L‖u − v‖ na bola e 2M/δ domina o L exato."""
    suporte = RationalCone.orthant(2)
    for _ in range(3 if quick else 20):
        f = PLFunction.from_min_of_functionals(_funcionais(rng, 3, 2, 1, 5), suporte)
        x = (Fraction(rng.randint(1, 6)), Fraction(rng.randint(1, 6)))
        cota = lipschitz_bound(f, x)
        if cota.L_ball < cota.L_exact:
            return Check("cota de Lipschitz", False, [str(c) for c in x])
        pontos = [
            tuple(xi + cota.delta * (2 * h - 1) for xi, h in zip(x, halton_point(i, 2)))
            for i in range(1, 12 if quick else 40)
        ]
        for u in pontos:
            for v in pontos:
                dist = max(abs(a - b) for a, b in zip(u, v))
                if abs(f.rational_value(u)[0] - f.rational_value(v)[0]) > cota.L * dist:
                    return Check("cota de Lipschitz", False, [str(c) for c in u + v])
    return Check("cota de Lipschitz", True)


def prop_adjunto(rng: random.Random, quick: bool) -> Check:
    """Semigrupo adjunto regenera as peças graduadas; contagens de 𝒪(d) no plano."""
    reta = ToricModel.projective_line()
    F = DivisorFamily.of([[2, 0], [3, 0]])
    res = adjoint_semigroup(reta, F)
    if len(res.basis) != 7:
        return Check("semigrupo adjunto gera", False, len(res.basis))
    faltando = verify_generation(reta, F, res, bound=8 if quick else 20)
    if faltando:
        return Check("semigrupo adjunto gera", False, list(faltando[0]))
    plano = ToricModel.projective_plane()
    for d in range(1, 5 if quick else 11):
        n = len(sections(plano, TorusDivisor.prime(3, 2, d)))
        if n != (d + 1) * (d + 2) // 2:
            return Check("semigrupo adjunto gera", False, d)
    return Check("semigrupo adjunto gera", True)


def prop_escape(rng: random.Random, quick: bool) -> Check:
    """ray_escape concorda com o LP de uma variável; testemunha reconfirmada."""
    for _ in range(10 if quick else 100):
        cone = _cone_no_ortante(rng, rng.choice([2, 3]), 3, 5)
        base, through = _ponto_no_cone(rng, cone), _ponto_no_cone(rng, cone)
        if base == through:
            continue
        res = ray_escape(cone, base, through)
        oraculo = escape_oracle(cone, base, through)
        if (res.t_sup is None) != (oraculo is None) or (
            oraculo is not None and res.t_sup != oraculo
        ):
            return Check("escape = LP de uma variável", False, [list(base), list(through)])
        if res.witness is not None:
            b, w = ExactVector.of(base), res.witness
            combinacao = b * (1 - res.weight) + w * res.weight
            if not membership(cone, w) or combinacao != ExactVector.of(through):
                return Check("escape = LP de uma variável", False, [list(base), list(through)])
    return Check("escape = LP de uma variável", True)


_PROPRIEDADES: list[tuple[str, Propriedade]] = [
    ("hilbert", prop_hilbert),
    ("gordan", prop_gordan),
    ("truncamento", prop_truncamento),
    ("aditividade", prop_aditividade),
    ("deteccao", prop_deteccao),
    ("endireitamento", prop_endireitamento),
    ("ord_pl", prop_ord_pl),
    ("diofantina", prop_diofantina),
    ("lipschitz", prop_lipschitz),
    ("adjunto", prop_adjunto),
    ("escape", prop_escape),
]


# ===========================================================================
# Execução
# ===========================================================================


def executar_selftest(
    seed: int = DEFAULT_SEED,
    quick: bool = False,
    output_json: Path | None = SELFTEST_JSON,
    somente: list[str] | None = None,
) -> tuple[list[Check], pd.DataFrame]:
    """Roda as propriedades e grava o relatório.

    Args:
        seed:        Semente do ``random.Random`` de cada propriedade.
        quick:       Reduz o número de instâncias.
        output_json: Caminho do relatório (None para não gravar).
        somente:     Nomes de propriedades a executar (padrão: todas).

    Returns:
        Tupla ``(checks, resumo)``.
    """
    escolhidas = [(n, p) for n, p in _PROPRIEDADES if somente is None or n in somente]
    checks, linhas = [], []
    for nome, prop in tqdm(escolhidas, desc="Propriedades", unit="prop"):
        rng = random.Random(f"{seed}:{nome}")
        try:
            check = prop(rng, quick)
        except (ValueError, RuntimeError) as exc:
            log.warning("[SELFTEST] %s interrompida: %s", nome, exc)
            check = Check(nome, False, str(exc))
        checks.append(check)
        linhas.append(
            {"propriedade": nome, "invariante": check.name, "status": check.to_json()["status"]}
        )
        log.info("[SELFTEST] %-15s %s", nome, check.to_json()["status"])

    resumo = pd.DataFrame(linhas, columns=["propriedade", "invariante", "status"])
    if output_json is not None:
        output_json.parent.mkdir(parents=True, exist_ok=True)
        output_json.write_text(
            json.dumps(
                {"seed": seed, "quick": quick, "checks": [c.to_json() for c in checks]},
                ensure_ascii=False,
                indent=2,
            ),
            encoding="utf-8",
        )
        log.info("  Relatório salvo: %s", output_json)
    return checks, resumo


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m polycone.selftest",
        description="[SELFTEST] Suíte de propriedades com oráculos de força bruta.",
    )
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--quick", action="store_true", help="Menos instâncias por propriedade")
    parser.add_argument(
        "--output",
        type=Path,
        default=SELFTEST_JSON,
        metavar="JSON",
        help=f"Caminho do relatório (padrão: {SELFTEST_JSON})",
    )
    return parser


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s: %(message)s")
    args = _build_arg_parser().parse_args()
    _, resumo = executar_selftest(args.seed, args.quick, args.output)
    print(resumo.to_string(index=False))
