# covariantes/errors.py
from typing import Optional


class CovariantesError(Exception):
    """Erro base do pacote. `detail` segue o mesmo papel do detail de uma resposta HTTP."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidInput(CovariantesError):
    """Argumento fora do domínio (n < 2, característica não prima, l inválido...)."""


class RingMismatch(CovariantesError):
    pass


class NotDivisible(CovariantesError):
    pass


class NoSolution(CovariantesError):
    """O polinômio não está na imagem de Ψ."""


class ConditionFailed(CovariantesError):
    """Congruência p | (m₀ − l + 1) não satisfeita."""

    def __init__(self, detail: str, order: Optional[int] = None, l: Optional[int] = None):
        super().__init__(detail)
        self.order = order
        self.l = l


class NotLinear(CovariantesError):
    pass


class Inhomogeneous(CovariantesError):
    pass


class NotIsobaric(CovariantesError):
    pass


class FixtureMismatch(CovariantesError):
    pass


class OperatorInternalError(CovariantesError):
    """Divisão por z^l falhou mesmo com a congruência satisfeita: bug."""
