class ZnFalException(Exception):
    pass


class InvalidModulusError(ZnFalException, ValueError):
    pass


class InvalidDivisorError(ZnFalException, ValueError):
    pass


class DimensionMismatchError(ZnFalException, ValueError):
    pass


class EmptySetError(ZnFalException, ValueError):
    pass


class DuplicatePointError(ZnFalException, ValueError):
    pass


class InvalidParameterError(ZnFalException, ValueError):
    pass


class HypothesisNotMetError(ZnFalException, ValueError):
    """Operação restrita a módulos livres de quadrados recebeu outro n."""


class PointSetFormatError(ZnFalException, ValueError):
    pass


class BudgetExceededError(ZnFalException):
    pass


class InvariantViolationError(ZnFalException):
    """Uma identidade exata falhou. Nunca deve ser silenciada."""
