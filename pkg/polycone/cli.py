"""
CLI JSON-in/JSON-out do polycone.

Subcomandos disponíveis::

    polycone hilbert        --input cone.json
    polycone saturate       --input monoide.json
    polycone truncate       --input {"monoid", "kappa"}
    polycone intersect      --input {"monoid", "cone"}
    polycone dual           --input {"rays"}
    polycone rays           --input {"ineqs"}
    polycone escape         --input {"cone", "base", "through"}
    polycone plcheck        --input {"function"}
    polycone straighten     --input {"domain", "functionals"} | {"model", "family"}
    polycone pldetect       --input {"cone", "functionals"}
    polycone lipschitz      --input {"function", "x", "delta"?}
    polycone affine         --input {"x"}
    polycone approx         --x x.json --k 1 --eps 1/4 [--budget N]
    polycone extend         --input {"x", "k", "eps", "eta", "x1", "k1"}
    polycone perturb        --input {"delta", "phi", "r", "eps"}
    polycone toric-sections --model m.json --divisor d.json
    polycone toric-fix      --model m.json --divisor d.json
    polycone toric-ord      --model m.json --divisor d.json --ray K
    polycone toric-nsigma   --model m.json --divisor d.json
    polycone toric-adjoint  --model m.json --family f.json [--kappa K] [--bound B]
    polycone toric-ordpl    --model m.json --family f.json --ray K
    polycone selftest       [--quick]

Todo comando de cálculo emite um relatório (comando, versão, digest das
entradas, saídas, verificações, semente, tempo) e sai com 0 (PASS),
2 (FAIL), 3 (orçamento esgotado, parcial embutido) ou 4 (esquema inválido,
mensagem só no stderr).
"""

import argparse
import hashlib
import json
import logging
import math
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterator

from polycone import __version__
from polycone.config import (
    DEFAULT_SEED,
    EXIT_BUDGET,
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_SCHEMA,
    SELFTEST_JSON,
    budget_padrao,
)
from polycone.erros import BudgetExhaustedError, SchemaError
from polycone.oracles import Check

log = logging.getLogger(__name__)

#: Resultado de um cálculo: (saídas JSON, verificações, linhas para CSV)
Resultado = tuple[dict, list[Check], list[dict] | None]


# ===========================================================================
# Logging
# ===========================================================================


def _setup_logging(verbose: bool = False) -> None:
    """Configura logging no stderr (o relatório vai para o stdout)."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s: %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


# ===========================================================================
# Relatório
# ===========================================================================


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    outputs: dict
    verification: list[Check]
    seed: int
    elapsed_ms: int = 0
    version: str = __version__
    exit_code: int = field(default=EXIT_PASS, repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.verification)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "inputs_digest": self.inputs_digest,
            "outputs": self.outputs,
            "verification": [c.to_json() for c in self.verification],
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }


def _carregar_json(caminho: str | None, nome: str) -> Any:
    """Lê um arquivo JSON de entrada.

    Raises:
        SchemaError: Arquivo ausente, ilegível ou com JSON malformado.
    """
    if caminho is None:
        raise SchemaError(f"Entrada obrigatória ausente: --{nome}")
    try:
        return json.loads(Path(caminho).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise SchemaError(f"Arquivo não encontrado: '{caminho}'") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"JSON malformado em '{caminho}': {exc}") from exc


def _campo(dados: Any, nome: str) -> Any:
    if not isinstance(dados, dict) or nome not in dados:
        raise SchemaError(f"Campo obrigatório ausente: '{nome}'")
    return dados[nome]


@contextmanager
def _esquema(descricao: str) -> Iterator[None]:
    """Converte falhas de decodificação de ``descricao`` em SchemaError.

    Só a leitura das entradas fica dentro deste bloco; um ValueError levantado
    pelo cálculo em si não é erro de esquema.
    """
    try:
        yield
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError, IndexError, ZeroDivisionError) as exc:
        raise SchemaError(f"{descricao} inválido: {exc}") from exc


def _digest(command: str, entradas: dict, params: dict) -> str:
    bruto = json.dumps(
        {"command": command, "inputs": entradas, "params": params},
        sort_keys=True,
        ensure_ascii=False,
        default=str,
    )
    return "sha256:" + hashlib.sha256(bruto.encode("utf-8")).hexdigest()


def _emitir(relatorio: RunReport, args: argparse.Namespace, tabela: list[dict] | None) -> None:
    texto = json.dumps(relatorio.to_json(), ensure_ascii=False, indent=2)
    if getattr(args, "output", None):
        Path(args.output).write_text(texto + "\n", encoding="utf-8")
        log.info("Relatório salvo: %s", args.output)
    else:
        print(texto)
    if getattr(args, "csv", None) and tabela:
        import pandas as pd

        pd.DataFrame(tabela).to_csv(args.csv, index=False, encoding="utf-8-sig")
        log.info("CSV salvo: %s", args.csv)


#: Arquivos de entrada por atributo do Namespace
_ARQUIVOS = ("input", "x", "model", "divisor", "family")

#: Parâmetros escalares que entram no digest
_PARAMS = ("k", "eps", "budget", "ray", "kappa", "bound", "quick")


def _executar(args: argparse.Namespace, calcular: Callable[[dict, argparse.Namespace], Resultado]) -> int:
    """Carrega entradas, calcula, embute verificações e emite o relatório."""
    inicio = time.perf_counter()
    try:
        entradas = {
            nome: _carregar_json(getattr(args, nome), nome)
            for nome in _ARQUIVOS
            if getattr(args, nome, None) is not None
        }
    except SchemaError as exc:
        print(f"Erro de esquema: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    params = {p: getattr(args, p) for p in _PARAMS if getattr(args, p, None) is not None}
    seed = getattr(args, "seed", DEFAULT_SEED)

    codigo = EXIT_PASS
    tabela = None
    try:
        saidas, checks, tabela = calcular(entradas, args)
    except BudgetExhaustedError as exc:
        log.warning("Orçamento esgotado: %s", exc)
        saidas = {
            "partial": exc.partial,
            "tightest": None if exc.tightest is None else str(exc.tightest),
        }
        checks = [Check("orçamento suficiente", False, str(exc))]
        codigo = EXIT_BUDGET
    except SchemaError as exc:
        print(f"Erro de esquema: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except RuntimeError as exc:
        log.error("Pós-condição violada: %s", exc)
        saidas, checks = {}, [Check("pós-condição", False, str(exc))]
    except ValueError as exc:
        # entrada bem formada que viola uma hipótese do cálculo
        log.error("Pré-condição violada: %s", exc)
        saidas, checks = {}, [Check("pré-condição", False, str(exc))]

    elapsed = int((time.perf_counter() - inicio) * 1000) if getattr(args, "timing", False) else 0
    relatorio = RunReport(
        command=args.comando,
        inputs_digest=_digest(args.comando, entradas, params),
        outputs=saidas,
        verification=checks,
        seed=seed,
        elapsed_ms=elapsed,
    )
    if codigo == EXIT_PASS and not relatorio.passed:
        codigo = EXIT_FAIL
    _emitir(relatorio, args, tabela)
    return codigo


def _lista(vs) -> list:
    return [list(v) for v in vs]


def _texto(q: Fraction) -> str:
    from polycone.scalars import fraction_to_str

    return fraction_to_str(Fraction(q))


# ===========================================================================
# Subcomandos: cones e monoides
# ===========================================================================


def _cone_da_entrada(dados: Any):
    from polycone.polyhedra import cone_from_json

    with _esquema("Cone"):
        return cone_from_json(dados.get("cone", dados) if isinstance(dados, dict) else dados)


def _calc_hilbert(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.monoids import hilbert_basis
    from polycone.oracles import brute_force_hilbert_basis, brute_minimal_generators
    from polycone.polyhedra import membership

    dados = _campo(entradas, "input")
    cone = _cone_da_entrada(dados)
    modo = dados.get("lattice_constraint", "full") if isinstance(dados, dict) else "full"
    if modo not in ("full", "orthant"):
        raise SchemaError(f"lattice_constraint desconhecido: {modo!r}")
    base = hilbert_basis(cone, modo)
    checks = [
        Check("base ⊂ 𝒞", all(membership(cone, b) for b in base)),
        Check("base irredutível", brute_minimal_generators(base) == sorted(base)),
    ]
    if modo == "full" and cone.ambient_dim <= 3 and base:
        cota = 2 * max(sum(abs(c) for c in b) for b in base)
        checks.append(Check("base = oráculo de força bruta", brute_force_hilbert_basis(cone, cota) == base))
    return {"basis": _lista(base), "size": len(base)}, checks, [
        {"elemento": " ".join(map(str, b))} for b in base
    ]


def cmd_hilbert(args: argparse.Namespace) -> int:
    """Base de Hilbert de 𝒞 ∩ ℤⁿ."""
    return _executar(args, _calc_hilbert)


def _calc_saturate(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.monoids import monoid_from_json, saturate
    from polycone.oracles import generated_by

    with _esquema("Monoide"):
        S = monoid_from_json(_campo(entradas, "input"))
    sat = saturate(S)
    checks = [
        Check("S ⊂ S_sat", not generated_by(sat.generators, S.generators)),
        Check("S_sat saturado", sat.is_saturated()),
    ]
    return {"monoid": sat.to_json(), "was_saturated": not generated_by(S.generators, sat.generators)}, checks, None


def cmd_saturate(args: argparse.Namespace) -> int:
    """Saturação S_ℝ ∩ ℤⁿ."""
    return _executar(args, _calc_saturate)


def _calc_truncate(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.monoids import decompose, monoid_from_json, truncate

    dados = _campo(entradas, "input")
    with _esquema("Monoide"):
        S = monoid_from_json(_campo(dados, "monoid"))
    kappa = _campo(dados, "kappa")
    if not isinstance(kappa, (int, list)) or isinstance(kappa, bool):
        raise SchemaError("'kappa' deve ser inteiro ou lista de inteiros")
    T = truncate(S, kappa)
    checks = [Check("S^{(κ)} ⊂ S", all(decompose(S, g) is not None for g in T.generators))]
    if isinstance(kappa, int):
        faltando = [g for g in S.generators if decompose(T, tuple(kappa * c for c in g)) is None]
        checks.append(Check("κ·s ∈ S^{(κ)} (extensão integral)", not faltando, faltando[0] if faltando else None))
    return {"monoid": T.to_json()}, checks, None


def cmd_truncate(args: argparse.Namespace) -> int:
    """Truncamento uniforme (κ inteiro) ou por gerador (lista)."""
    return _executar(args, _calc_truncate)


def _calc_intersect(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.monoids import decompose, intersect_with_cone, monoid_from_json
    from polycone.oracles import brute_minimal_generators
    from polycone.polyhedra import membership

    dados = _campo(entradas, "input")
    with _esquema("Monoide"):
        S = monoid_from_json(_campo(dados, "monoid"))
    C = _cone_da_entrada(_campo(dados, "cone"))
    R = intersect_with_cone(S, C)
    checks = [
        Check("geradores em S", all(decompose(S, g) is not None for g in R.generators)),
        Check("geradores em 𝒞", all(membership(C, g) for g in R.generators)),
        Check("geradores irredutíveis", brute_minimal_generators(R.generators) == sorted(R.generators)),
    ]
    return {"monoid": R.to_json()}, checks, None


def cmd_intersect(args: argparse.Namespace) -> int:
    """S ∩ 𝒞 por fatiamento."""
    return _executar(args, _calc_intersect)


def _calc_dual(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.oracles import bareiss_rank
    from polycone.polyhedra import dual_description

    cone = _cone_da_entrada(_campo(entradas, "input"))
    ineqs = dual_description(cone)
    d = cone.dimension
    checks = [
        Check("raios satisfazem as desigualdades",
              all(sum(a * r for a, r in zip(ell, v)) >= 0 for ell in ineqs for v in cone.rays)),
        Check("cada faceta suporta d − 1 raios independentes", all(
            bareiss_rank([v for v in cone.rays if sum(a * r for a, r in zip(ell, v)) == 0]) == d - 1
            for ell in cone.facets
        )),
    ]
    return {"ineqs": _lista(ineqs), "facets": _lista(cone.facets), "dimension": d}, checks, None


def cmd_dual(args: argparse.Namespace) -> int:
    """Descrição por desigualdades de um cone dado por raios."""
    return _executar(args, _calc_dual)


def _calc_rays(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.oracles import is_extreme_by_rank
    from polycone.polyhedra import extremal_rays

    cone = _cone_da_entrada(_campo(entradas, "input"))
    raios = extremal_rays(cone)
    checks = [Check("raios extremos por posto", all(is_extreme_by_rank(cone, r) for r in raios))]
    return {"rays": _lista(raios), "dimension": cone.dimension}, checks, [
        {"raio": " ".join(map(str, r))} for r in raios
    ]


def cmd_rays(args: argparse.Namespace) -> int:
    """Raios extremos de um cone dado por desigualdades."""
    return _executar(args, _calc_rays)


def _calc_escape(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.oracles import escape_oracle
    from polycone.polyhedra import membership, ray_escape
    from polycone.scalars import vector_from_json

    dados = _campo(entradas, "input")
    cone = _cone_da_entrada(_campo(dados, "cone"))
    with _esquema("Escape"):
        base = vector_from_json(_campo(dados, "base"))
        through = vector_from_json(_campo(dados, "through"))
    res = ray_escape(cone, base, through)
    oraculo = escape_oracle(cone, base, through)
    concorda = (res.t_sup is None and oraculo is None) or (
        res.t_sup is not None and oraculo is not None and res.t_sup == oraculo
    )
    checks = [Check("t_sup = LP de uma variável", concorda)]
    if res.witness is not None:
        combinacao = base * (1 - res.weight) + res.witness * res.weight
        checks.append(Check("testemunha no cone", membership(cone, res.witness)))
        checks.append(Check("through = (1 − w)·base + w·testemunha", combinacao == through))
    return {**res.to_json(), "extremal_escape": res.witness is None}, checks, None


def cmd_escape(args: argparse.Namespace) -> int:
    """Escape de raio e testemunha de não extremalidade."""
    return _executar(args, _calc_escape)


# ===========================================================================
# Subcomandos: funções PL
# ===========================================================================


def _pontos_inteiros(cone) -> list[tuple[int, ...]]:
    raios = list(cone.rays)
    somas = [tuple(a + b for a, b in zip(r, s)) for i, r in enumerate(raios) for s in raios[i:]]
    return raios + somas


def _calc_plcheck(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.oracles import superlinearity_violations
    from polycone.plfun import check_concave, plfunction_from_json

    with _esquema("Função PL"):
        f = plfunction_from_json(_campo(_campo(entradas, "input"), "function"), validate=False)
    try:
        f.validate()
    except ValueError as exc:
        return {"concavity": None, "pieces": len(f.fan)}, [
            Check("leque consistente e cobre o suporte", False, str(exc))
        ], None
    rel = check_concave(f)
    violacoes = superlinearity_violations(
        f.rational_value, _pontos_inteiros(f.support), pairs=200, seed=args.seed
    )
    checks = [
        Check("leque consistente e cobre o suporte", True),
        Check("côncava ⇒ superlinear nas amostras", not rel.concave or not violacoes,
              _lista(violacoes[0]) if violacoes else None),
    ]
    return {"concavity": rel.to_json(), "pieces": len(f.fan)}, checks, None


def cmd_plcheck(args: argparse.Namespace) -> int:
    """Concavidade exata de uma função PL."""
    return _executar(args, _calc_plcheck)


def _oraculo_piso(dados: dict):
    """f(s) = ⌊min ℓₖ(s)⌋ sobre um monoide; λₛ = mmc dos denominadores."""
    from polycone.monoids import monoid_from_json
    from polycone.plfun import SuperadditiveOracle
    from polycone.scalars import as_rational_vector

    with _esquema("Oráculo piso"):
        dominio = monoid_from_json(_campo(dados, "domain"))
        funcionais = [as_rational_vector(ell) for ell in _campo(dados, "functionals")]
    if not funcionais:
        raise SchemaError("Lista 'functionals' vazia")
    lam = math.lcm(1, *(c.denominator for ell in funcionais for c in ell))

    def avaliar(s: tuple[int, ...]) -> int:
        return math.floor(min(sum(a * x for a, x in zip(ell, s)) for ell in funcionais))

    return SuperadditiveOracle(dominio, avaliar, lambda s: lam)


def _calc_straighten(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.plfun import straighten

    dados = _campo(entradas, "input")
    if isinstance(dados, dict) and "model" in dados:
        from polycone.toric import check_straightening, family_from_json, mob_oracle, model_from_json

        with _esquema("Família tórica"):
            X = model_from_json(dados["model"])
            F = family_from_json(_campo(dados, "family"), X)
        res = straighten(mob_oracle(X, F), seed=args.seed)
        extras = check_straightening(X, F)
    else:
        res = straighten(_oraculo_piso(dados), seed=args.seed)
        extras = []
    checks = [
        Check(f"cone {r.cone_index}: linear ⇔ aditiva após truncamento", r.consistent)
        for r in res.reports
    ] + extras
    linhas = [r.to_json() | {"additivity": r.additivity.status.value} for r in res.reports]
    return res.to_json(), checks, linhas


def cmd_straighten(args: argparse.Namespace) -> int:
    """Endireitamento f♯ com relatório de aditividade por cone."""
    return _executar(args, _calc_straighten)


def _calc_pldetect(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.erros import PLDetectionError
    from polycone.plfun import PLFunction, check_concave, detect_pl_2plane, plfunction_from_json

    dados = _campo(entradas, "input")
    if isinstance(dados, dict) and "function" in dados:
        with _esquema("Função PL"):
            verdade = plfunction_from_json(dados["function"])
        cone = verdade.support
    else:
        cone = _cone_da_entrada(_campo(dados, "cone"))
        with _esquema("Funcionais"):
            verdade = PLFunction.from_min_of_functionals(_campo(dados, "functionals"), cone)
    with _esquema("sample_budget"):
        orcamento = int(dados.get("sample_budget", 200))
    try:
        res = detect_pl_2plane(verdade.rational_value, cone, orcamento, args.seed)
    except PLDetectionError as exc:
        return {"detected": None}, [Check("hipótese de concavidade", False, str(exc))], None
    amostras = _pontos_inteiros(cone)
    concorda = all(res.function.rational_value(p) == verdade.rational_value(p) for p in amostras)
    checks = [
        Check("candidato côncavo", check_concave(res.function).concave),
        Check("candidato = f nas amostras", concorda),
        Check("cobertura completa no orçamento", res.complete),
    ]
    return res.to_json(), checks, None


def cmd_pldetect(args: argparse.Namespace) -> int:
    """Detecção de leque PL para f côncava dada por oráculo."""
    return _executar(args, _calc_pldetect)


def _calc_lipschitz(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.plfun import halton_point, lipschitz_bound, plfunction_from_json
    from polycone.scalars import as_fraction, as_rational_vector

    dados = _campo(entradas, "input")
    with _esquema("Entrada de Lipschitz"):
        f = plfunction_from_json(_campo(dados, "function"))
        x = as_rational_vector(_campo(dados, "x"))
        delta = as_fraction(dados["delta"]) if dados.get("delta") is not None else None
    cota = lipschitz_bound(f, x, delta)
    n = len(x)
    pontos = [
        tuple(xi + cota.delta * (2 * h - 1) for xi, h in zip(x, halton_point(i, n)))
        for i in range(args.seed + 1, args.seed + 33)
    ]
    ruins = [
        (u, v) for u in pontos for v in pontos
        if abs(f.rational_value(u)[0] - f.rational_value(v)[0])
        > cota.L * max(abs(a - b) for a, b in zip(u, v))
    ]
    checks = [
        Check("2M/δ ≥ L exato", cota.L_ball >= cota.L_exact),
        Check("|f(u) − f(v)| ≤ L‖u − v‖ nas amostras", not ruins),
    ]
    return cota.to_json(), checks, None


def cmd_lipschitz(args: argparse.Namespace) -> int:
    """Cota de Lipschitz local de f côncava."""
    return _executar(args, _calc_lipschitz)


# ===========================================================================
# Subcomandos: aproximação diofantina
# ===========================================================================


def _vetor_x(dados: Any):
    from polycone.scalars import vector_from_json

    with _esquema("Vetor x"):
        return vector_from_json(dados.get("x") if isinstance(dados, dict) else dados)


def _calc_affine(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.dioph import smallest_rational_affine

    x = _vetor_x(_campo(entradas, "input"))
    W = smallest_rational_affine(x)
    checks = [Check("x ∈ W", W.contains(x)), Check("W racional", W.is_rational())]
    return {"subspace": W.to_json()}, checks, None


def cmd_affine(args: argparse.Namespace) -> int:
    """Menor subespaço afim racional contendo x."""
    return _executar(args, _calc_affine)


def _calc_approx(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.dioph import check_order_preservation, uniform_approximate, verify_tuple
    from polycone.scalars import as_fraction

    dados = entradas.get("x", entradas.get("input"))
    if dados is None:
        raise SchemaError("Informe --x ou --input")
    x = _vetor_x(dados)
    extra = dados if isinstance(dados, dict) else {}
    with _esquema("Parâmetros de aproximação"):
        k = args.k if args.k is not None else int(extra.get("k", 1))
        eps = as_fraction(args.eps if args.eps is not None else extra.get("eps", "1/4"))
        budget = int(args.budget or extra.get("budget") or budget_padrao())
    tup = uniform_approximate(x, k, eps, budget)
    checks = verify_tuple(x, tup, eps) + [check_order_preservation(x, tup, eps)]
    return tup.to_json(), checks, tup.rows()


def cmd_approx(args: argparse.Namespace) -> int:
    """Tupla de aproximação uniforme com verificação exata."""
    return _executar(args, _calc_approx)


def _calc_extend(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.dioph import extend_approximation, verify_extension
    from polycone.scalars import as_fraction, as_rational_vector

    dados = _campo(entradas, "input")
    x = _vetor_x(dados)
    with _esquema("Parâmetros de extensão"):
        eps, eta = as_fraction(_campo(dados, "eps")), as_fraction(_campo(dados, "eta"))
        k, k1 = int(_campo(dados, "k")), int(_campo(dados, "k1"))
        x1 = as_rational_vector(_campo(dados, "x1"))
        budget = int(args.budget or dados.get("budget") or budget_padrao())
    res = extend_approximation(x, k, eps, eta, x1, k1, budget)
    return res.to_json(), verify_extension(x, eps, eta, res, k1), res.approximation.rows()


def cmd_extend(args: argparse.Namespace) -> int:
    """Extensão com dois denominadores e resto ξ."""
    return _executar(args, _calc_extend)


def _calc_perturb(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.dioph import perturb_divisor
    from polycone.scalars import as_fraction, as_rational_vector, sup_distance

    dados = _campo(entradas, "input")
    with _esquema("Parâmetros de perturbação"):
        eps = as_fraction(_campo(dados, "eps"))
        delta = as_rational_vector(_campo(dados, "delta"))
        phi = [as_rational_vector(linha) for linha in _campo(dados, "phi")]
    res = perturb_divisor(delta, phi, _vetor_x({"x": _campo(dados, "r")}), eps)
    suporte_real = [not c.is_zero() for c in res.real_divisor]
    suporte_rac = [c != 0 for c in res.divisor]
    checks = [
        Check("‖D' − D''‖ < ε", sup_distance(res.real_divisor, res.divisor) < eps),
        Check("Supp D' = Supp D''", suporte_real == suporte_rac),
        Check("D'' efetivo", all(c >= 0 for c in res.divisor)),
    ]
    return res.to_json(), checks, None


def cmd_perturb(args: argparse.Namespace) -> int:
    """Perturbação racional de um divisor real com mesmo suporte."""
    return _executar(args, _calc_perturb)


# ===========================================================================
# Subcomandos: modelos tóricos
# ===========================================================================


def _modelo_divisor(entradas: dict):
    from polycone.toric import divisor_from_json, model_from_json

    with _esquema("Modelo tórico"):
        X = model_from_json(_campo(entradas, "model"))
    with _esquema("Divisor"):
        return X, divisor_from_json(_campo(entradas, "divisor"), X)


def _modelo_familia(entradas: dict):
    from polycone.toric import family_from_json, model_from_json

    with _esquema("Modelo tórico"):
        X = model_from_json(_campo(entradas, "model"))
    with _esquema("Família"):
        return X, family_from_json(_campo(entradas, "family"), X)


def _raio(args: argparse.Namespace) -> int:
    if args.ray is None:
        raise SchemaError("Informe --ray")
    return args.ray


def _calc_toric_sections(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.toric import section_polytope

    X, D = _modelo_divisor(entradas)
    P = section_polytope(X, D)
    pontos = P.lattice_points()
    checks = [Check("⟨u, v_ρ⟩ + a_ρ ≥ 0 em todo ponto", all(
        sum(a * b for a, b in zip(u, v)) + c >= 0
        for u in pontos for v, c in zip(X.rays, D.coefficients)
    ))]
    return {"polytope": P.to_json(), "sections": _lista(pontos), "count": len(pontos)}, checks, [
        {"u": " ".join(map(str, u))} for u in pontos
    ]


def cmd_toric_sections(args: argparse.Namespace) -> int:
    """Politopo de seções e seus pontos do reticulado."""
    return _executar(args, _calc_toric_sections)


def _calc_toric_fix(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.toric import fixed_part, nsigma, sections

    X, D = _modelo_divisor(entradas)
    fp = fixed_part(X, D)
    N = nsigma(X, D)
    checks = [
        Check("Fix efetivo", fp.fix.is_effective()),
        Check("Fix(Mob) = 0", fixed_part(X, fp.mob).fix.is_zero()),
        Check("H⁰(D) = H⁰(Mob)", len(sections(X, fp.mob)) == len(sections(X, D))),
        Check("Fix ≥ N_σ (mínimo inteiro ≥ mínimo real)", N <= fp.fix),
    ]
    return fp.to_json() | {"nsigma": N.to_json()}, checks, None


def cmd_toric_fix(args: argparse.Namespace) -> int:
    """Partes fixa e móvel de um divisor inteiro."""
    return _executar(args, _calc_toric_fix)


def _calc_toric_ord(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.toric import asymptotic_ord, fix_ratio_sequence

    X, D = _modelo_divisor(entradas)
    rho = _raio(args)
    valor = asymptotic_ord(X, D, rho)
    razoes = fix_ratio_sequence(X, D, rho)
    checks = [
        Check("ord ≥ 0", valor >= 0),
        Check("Fix(kD)_ρ/k ≥ ord para k ≤ 20", all(r >= valor for _, r in razoes)),
    ]
    return {
        "rho": rho,
        "ord": _texto(valor),
        "fix_ratios": [{"k": k, "ratio": _texto(r)} for k, r in razoes],
    }, checks, [{"k": k, "razao": _texto(r)} for k, r in razoes]


def cmd_toric_ord(args: argparse.Namespace) -> int:
    """Ordem assintótica de anulamento ao longo de um raio."""
    return _executar(args, _calc_toric_ord)


def _calc_toric_nsigma(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.toric import nsigma, ord_positive_rays

    X, D = _modelo_divisor(entradas)
    N = nsigma(X, D)
    homogeneo = all(nsigma(X, D * k) == N * k for k in range(2, 11))
    return {"nsigma": N.to_json(), "ord_positive_rays": ord_positive_rays(X, D)}, [
        Check("N_σ‖kD‖ = k·N_σ‖D‖, k ≤ 10", homogeneo)
    ], None


def cmd_toric_nsigma(args: argparse.Namespace) -> int:
    """N_σ‖D‖ = Σ ord_ρ‖D‖·D_ρ."""
    return _executar(args, _calc_toric_nsigma)


def _calc_toric_adjoint(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.toric import adjoint_semigroup, verify_generation

    X, F = _modelo_familia(entradas)
    res = adjoint_semigroup(X, F, args.kappa)
    faltando = verify_generation(X, F, res, args.bound)
    checks = [
        Check(f"base regenera peças com Σs ≤ {args.bound}", not faltando,
              list(faltando[0]) if faltando else None),
        Check("κ·t ∈ S^{(κ)} (extensão integral)", res.integral_extension),
    ]
    return res.to_json(), checks, [{"gerador": " ".join(map(str, b))} for b in res.basis]


def cmd_toric_adjoint(args: argparse.Namespace) -> int:
    """Base de Hilbert do semigrupo total de seções."""
    return _executar(args, _calc_toric_adjoint)


def _calc_toric_ordpl(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.toric import ord_pl_decomposition

    X, F = _modelo_familia(entradas)
    res = ord_pl_decomposition(X, F, _raio(args), seed=args.seed)
    checks = list(res.checks)
    if res.partially_ineffective:
        log.warning("[TORIC] cone efetivo menor que o cone da graduação")
    return res.to_json(), checks, None


def cmd_toric_ordpl(args: argparse.Namespace) -> int:
    """s ↦ ord_ρ‖μ(s)‖ como função PL exata."""
    return _executar(args, _calc_toric_ordpl)


# ===========================================================================
# Subcomando: selftest
# ===========================================================================


def _calc_selftest(entradas: dict, args: argparse.Namespace) -> Resultado:
    from polycone.selftest import executar_selftest

    checks, resumo = executar_selftest(args.seed, args.quick, Path(args.report))
    print(resumo.to_string(index=False), file=sys.stderr)
    return {"properties": len(checks), "report": str(args.report)}, checks, resumo.to_dict("records")


def cmd_selftest(args: argparse.Namespace) -> int:
    """Suíte de propriedades com oráculos de força bruta."""
    return _executar(args, _calc_selftest)


# ===========================================================================
# Parser argparse
# ===========================================================================


def _build_parser() -> argparse.ArgumentParser:
    """Constrói o parser principal com todos os subcomandos."""
    parser = argparse.ArgumentParser(
        prog="polycone",
        description="Geometria convexa exata, monoides afins e aproximação diofantina",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""\
Exemplos:
  polycone hilbert --input cone.json                     Base de Hilbert
  polycone approx --x sqrt2.json --k 1 --eps 1/4         Tupla {3/2, 7/5} para √2
  polycone toric-fix --model plano.json --divisor d.json Partes fixa e móvel
  polycone toric-adjoint --model reta.json --family f.json --bound 20
  polycone selftest --quick                              Suíte reduzida
""",
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Exibe logs de depuração (DEBUG)"
    )

    comuns = argparse.ArgumentParser(add_help=False)
    comuns.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Semente de toda amostragem")
    comuns.add_argument("--output", default=None, metavar="PATH", help="Grava o relatório em arquivo")
    comuns.add_argument("--csv", default=None, metavar="PATH", help="Emite a tabela de saída em CSV")
    comuns.add_argument(
        "--timing", action="store_true", help="Preenche elapsed_ms (quebra a reprodutibilidade byte a byte)"
    )

    com_input = argparse.ArgumentParser(add_help=False, parents=[comuns])
    com_input.add_argument("--input", default=None, metavar="JSON", help="Arquivo JSON de entrada")
    com_input.add_argument("--budget", type=int, default=None, metavar="N", help="Orçamento de varredura")

    toricos = argparse.ArgumentParser(add_help=False, parents=[comuns])
    toricos.add_argument("--model", default=None, metavar="JSON", help="Modelo {rays, max_cones}")

    sub = parser.add_subparsers(dest="comando", required=True, metavar="COMANDO")

    # --------------------------------------------------- cones e monoides
    for nome, ajuda in [
        ("hilbert", "Base de Hilbert de um cone"),
        ("saturate", "Saturação de um monoide"),
        ("truncate", "Truncamento S^{(κ)}"),
        ("intersect", "Interseção S ∩ 𝒞"),
        ("dual", "Desigualdades de um cone"),
        ("rays", "Raios extremos de um cone"),
        ("escape", "Escape de raio e não extremalidade"),
        ("plcheck", "Concavidade de uma função PL"),
        ("straighten", "Endireitamento f♯"),
        ("pldetect", "Detecção de leque PL"),
        ("lipschitz", "Cota de Lipschitz local"),
        ("affine", "Menor subespaço afim racional"),
        ("extend", "Extensão com dois denominadores"),
        ("perturb", "Perturbação racional de divisor"),
    ]:
        sub.add_parser(nome, help=ajuda, parents=[com_input])

    # ------------------------------------------------------------ approx
    p_apx = sub.add_parser("approx", help="Aproximação uniforme de x", parents=[com_input])
    p_apx.add_argument("--x", default=None, metavar="JSON", help="Vetor x (lista ou {\"x\": [...]})")
    p_apx.add_argument("--k", type=int, default=None, help="Denominador comum k (padrão: 1)")
    p_apx.add_argument("--eps", default=None, help="Erro ε racional (padrão: 1/4)")

    # ----------------------------------------------------------- tóricos
    for nome, ajuda in [
        ("toric-sections", "Pontos do politopo de seções"),
        ("toric-fix", "Partes fixa e móvel"),
        ("toric-ord", "Ordem assintótica ao longo de um raio"),
        ("toric-nsigma", "N_σ‖D‖"),
    ]:
        p = sub.add_parser(nome, help=ajuda, parents=[toricos])
        p.add_argument("--divisor", default=None, metavar="JSON", help="Coeficientes por raio")
        p.add_argument("--ray", type=int, default=None, metavar="K", help="Índice do raio")

    p_adj = sub.add_parser("toric-adjoint", help="Semigrupo total de uma família", parents=[toricos])
    p_adj.add_argument("--family", default=None, metavar="JSON", help="{grading_gens, matrix}")
    p_adj.add_argument("--kappa", type=int, default=2, help="κ do truncamento uniforme (padrão: 2)")
    p_adj.add_argument("--bound", type=int, default=20, help="Cota Σsᵢ da regeneração (padrão: 20)")

    p_opl = sub.add_parser("toric-ordpl", help="ord_ρ‖μ(s)‖ como função PL", parents=[toricos])
    p_opl.add_argument("--family", default=None, metavar="JSON", help="{grading_gens, matrix}")
    p_opl.add_argument("--ray", type=int, default=None, metavar="K", help="Índice do raio")

    # ---------------------------------------------------------- selftest
    p_st = sub.add_parser("selftest", help="Suíte de propriedades", parents=[comuns])
    p_st.add_argument("--quick", action="store_true", help="Menos instâncias por propriedade")
    p_st.add_argument(
        "--report",
        default=str(SELFTEST_JSON),
        metavar="JSON",
        help=f"Relatório detalhado (padrão: {SELFTEST_JSON})",
    )

    return parser


# ===========================================================================
# Dispatch e entry point
# ===========================================================================

_HANDLER_MAP: dict[str, Callable[[argparse.Namespace], int]] = {
    "hilbert": cmd_hilbert,
    "saturate": cmd_saturate,
    "truncate": cmd_truncate,
    "intersect": cmd_intersect,
    "dual": cmd_dual,
    "rays": cmd_rays,
    "escape": cmd_escape,
    "plcheck": cmd_plcheck,
    "straighten": cmd_straighten,
    "pldetect": cmd_pldetect,
    "lipschitz": cmd_lipschitz,
    "affine": cmd_affine,
    "approx": cmd_approx,
    "extend": cmd_extend,
    "perturb": cmd_perturb,
    "toric-sections": cmd_toric_sections,
    "toric-fix": cmd_toric_fix,
    "toric-ord": cmd_toric_ord,
    "toric-nsigma": cmd_toric_nsigma,
    "toric-adjoint": cmd_toric_adjoint,
    "toric-ordpl": cmd_toric_ordpl,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> None:
    """Entry point público — chamado por ``python -m polycone`` e pelo script ``polycone``."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    _setup_logging(verbose=args.verbose)

    handler = _HANDLER_MAP.get(args.comando)
    if handler is None:
        parser.print_help()
        sys.exit(1)

    sys.exit(handler(args))
