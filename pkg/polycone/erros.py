"""Exceções do pacote polycone."""

from typing import Any


class FieldMismatchError(ValueError):
    """Operação entre escalares de corpos quadráticos incompatíveis."""


class SchemaError(ValueError):
    """Entrada JSON malformada ou sem campos obrigatórios."""


class PLDetectionError(ValueError):
    """Leque candidato reprovado na validação exata."""


class BudgetExhaustedError(RuntimeError):
    """Busca limitada esgotou o orçamento.

    Attributes:
        tightest: Melhor cota atingida antes do esgotamento (exata).
        partial: Resultado parcial serializável em JSON, quando houver.
    """

    def __init__(self, mensagem: str, tightest: Any = None, partial: Any = None) -> None:
        super().__init__(mensagem)
        self.tightest = tightest
        self.partial = partial
