# Exceções do toolkit de códigos LCD
from typing import Optional


class LCDToolkitError(ValueError):
    """
    Erro de domínio do toolkit (matriz inválida, precondição violada, orçamento
    de busca excedido). Herda de ValueError para que quem já captura ValueError
    continue funcionando.
    """


class DimensionMismatchError(LCDToolkitError):
    """Dimensões incompatíveis, matriz não quadrada ou índice fora do intervalo."""


class MatrixFormatError(LCDToolkitError):
    """
    Violação do formato texto de matrizes.

    Args:
        message: descrição do problema
        line: número da linha (1-based) onde o problema foi encontrado
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"linha {line}: {message}"
        super().__init__(message)


class TrivialCodeError(LCDToolkitError):
    """Código trivial (posto zero) ou dual nulo."""


class DistanceBudgetError(LCDToolkitError):
    """Dimensão acima do limite da enumeração exaustiva de palavras-código."""


class PreconditionError(LCDToolkitError):
    """Precondição de uma operação violada."""


class SearchBudgetError(LCDToolkitError):
    """
    Número projetado de candidatos acima do orçamento configurado.

    Args:
        estimate: número projetado de candidatos
        budget: orçamento vigente
    """

    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"busca projetada em {estimate:,} candidatos excede o orçamento de "
            f"{budget:,}; use --force para executar mesmo assim"
        )


class CacheConflictError(LCDToolkitError):
    """Escrita no cache discorda do valor já fixado para a célula."""
