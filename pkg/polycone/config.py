"""
Constantes centralizadas do pacote polycone.

Todos os módulos devem importar daqui — nunca definir limites, orçamentos
ou códigos de saída localmente para evitar divergências entre a biblioteca,
o CLI e a suíte de propriedades.
"""

import os
from pathlib import Path

# ===========================================================================
# Orçamentos e sementes
# ===========================================================================

#: Passos máximos de varredura (denominadores, k₂, amostras) por operação
DEFAULT_BUDGET: int = 1_000_000

#: Variável de ambiente que sobrescreve DEFAULT_BUDGET
BUDGET_ENV: str = "POLYCONE_BUDGET"

#: Semente padrão de toda aleatoriedade (amostragem de raios, selftest)
DEFAULT_SEED: int = 0

# ===========================================================================
# Limites de escala (desk scale)
# ===========================================================================

#: Dimensão máxima aceita no cálculo de bases de Hilbert
HILBERT_MAX_DIM: int = 6

#: Dimensão máxima aceita na detecção de funções PL
PL_MAX_DIM: int = 6

#: Número máximo de raios em um modelo tórico
TORIC_MAX_RAYS: int = 12

#: Número máximo de geradores da graduação de uma família de divisores
TORIC_MAX_GRADING: int = 3

# ===========================================================================
# Certificados
# ===========================================================================

#: Período máximo p testado na aditividade de Mob por raio
TRUNCATION_PMAX: int = 24

#: Múltiplos i testados em f(i·p·s) = i·f(p·s)
TRUNCATION_IMAX: int = 5

#: Cota da soma de coordenadas na caixa do certificado de aditividade
ADDITIVITY_BOX: int = 15

#: Maior κ testado em f(κ·s₀) = κ·f(s₀)
ADDITIVITY_KAPPA: int = 8

#: Bits iniciais do refinamento intervalar de √d na decisão de sinal
SIGN_START_BITS: int = 32

# ===========================================================================
# Saídas do CLI
# ===========================================================================

EXIT_PASS: int = 0
EXIT_FAIL: int = 2
EXIT_BUDGET: int = 3
EXIT_SCHEMA: int = 4

#: Relatório padrão do selftest
SELFTEST_JSON: Path = Path("relatorios") / "selftest.json"


def budget_padrao() -> int:
    """Orçamento efetivo: POLYCONE_BUDGET quando definido, senão DEFAULT_BUDGET.

    Raises:
        ValueError: Se a variável de ambiente não for um inteiro positivo.
    """
    bruto = os.environ.get(BUDGET_ENV, "").strip()
    if not bruto:
        return DEFAULT_BUDGET
    try:
        valor = int(bruto)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV} inválido: {bruto!r}") from exc
    if valor <= 0:
        raise ValueError(f"{BUDGET_ENV} deve ser positivo (recebido {valor})")
    return valor
