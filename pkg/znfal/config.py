"""Configuration management for zn-falconer

Não há arquivo de configuração: as opções vêm das flags da CLI e de
duas variáveis de ambiente (ZNFAL_BUDGET_MS e ZNFAL_HISTORY_DB).
"""
import os
import sys
import time
from fractions import Fraction

from znfal.exceptions import BudgetExceededError

BUDGET_ENV_VAR = 'ZNFAL_BUDGET_MS'
HISTORY_ENV_VAR = 'ZNFAL_HISTORY_DB'

# teto fixo de n nos laços de pares: histograma denso de n entradas em int64
MODULUS_CEILING = 10**7

DEFAULT_THRESHOLDS = {
    'K': Fraction(2),
    'C': Fraction(1, 10),
    'alpha_min': Fraction(1, 2),
    'affine_threshold': Fraction(9, 10),
    'require_isotropy': True,
}

DEFAULT_BUDGETS = {
    'max_points': 5000,
    'oracle_max_points': 40,
    'max_modulus': 10**6,
    'monomial_budget': 5000,
    'affine_budget': 10**8,
    'exhaustive_limit': 10**6,
    'budget_ms': None,
}

DEFAULT_RUN = {
    'threads': 1,
    'seed': None,
    'report': None,
    'history_db': None,
}

_FRACTION_FIELDS = ('K', 'C', 'alpha_min', 'affine_threshold')
_POSITIVE_BUDGETS = (
    'max_points', 'oracle_max_points', 'max_modulus',
    'monomial_budget', 'affine_budget', 'exhaustive_limit',
)


def parse_fraction(value):
    """
    Converte "a/b", inteiros ou Fraction em Fraction exata

    Args:
        value: Valor vindo de flag ou de código

    Returns:
        Fraction: Valor exato
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Valor racional inválido: {value!r} (use 'a/b')")
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Valor racional inválido: {value!r}") from e


def load_config(options, logger):
    """
    Monta e valida a configuração a partir das flags da CLI

    Args:
        options: Dicionário com seções 'thresholds', 'budgets' e 'run';
                 valores None são substituídos pelos padrões
        logger: Logger configurado

    Returns:
        dict: Configuração validada
    """
    try:
        config = {
            section: {k: v for k, v in (options or {}).get(section, {}).items() if v is not None}
            for section in ('thresholds', 'budgets', 'run')
        }

        for key, value in DEFAULT_THRESHOLDS.items():
            config['thresholds'].setdefault(key, value)
        for key, value in DEFAULT_BUDGETS.items():
            config['budgets'].setdefault(key, value)
        for key, value in DEFAULT_RUN.items():
            config['run'].setdefault(key, value)

        if config['budgets']['budget_ms'] is None and os.environ.get(BUDGET_ENV_VAR):
            config['budgets']['budget_ms'] = int(os.environ[BUDGET_ENV_VAR])
        if config['run']['history_db'] is None and os.environ.get(HISTORY_ENV_VAR):
            config['run']['history_db'] = os.environ[HISTORY_ENV_VAR]

        thresholds = config['thresholds']
        for field in _FRACTION_FIELDS:
            thresholds[field] = parse_fraction(thresholds[field])
        if thresholds['K'] < 1:
            raise ValueError("Campo 'thresholds.K' deve ser >= 1")
        for field in ('C', 'alpha_min', 'affine_threshold'):
            if not 0 < thresholds[field] <= 1:
                raise ValueError(f"Campo 'thresholds.{field}' deve estar em (0, 1]")

        budgets = config['budgets']
        for field in _POSITIVE_BUDGETS:
            budgets[field] = int(budgets[field])
            if budgets[field] < 1:
                raise ValueError(f"Campo 'budgets.{field}' deve ser positivo")
        if budgets['max_modulus'] > MODULUS_CEILING:
            raise ValueError(f"Campo 'budgets.max_modulus' deve ser <= {MODULUS_CEILING}")
        if budgets['budget_ms'] is not None:
            budgets['budget_ms'] = int(budgets['budget_ms'])
            if budgets['budget_ms'] < 1:
                raise ValueError(f"{BUDGET_ENV_VAR} deve ser positivo")

        if int(config['run']['threads']) < 1:
            raise ValueError("Campo 'run.threads' deve ser >= 1")
        config['run']['threads'] = int(config['run']['threads'])

        return config

    except (ValueError, TypeError) as e:
        logger.error(f"Configuração inválida: {e}")
        sys.exit(2)


def check_budget(name, value, limit):
    """
    Levanta BudgetExceededError quando value passa de limit

    Args:
        name: Nome do orçamento (aparece na mensagem)
        value: Tamanho pedido
        limit: Limite configurado
    """
    if value > limit:
        raise BudgetExceededError(f"Orçamento '{name}' excedido: {value} > {limit}")


class Deadline:
    """
    Orçamento de tempo suave (ZNFAL_BUDGET_MS).

    Sem orçamento, expired() é sempre False. Quem chama decide como
    marcar o resultado parcial.
    """

    def __init__(self, budget_ms=None, clock=time.monotonic_ns):
        self.budget_ms = budget_ms
        self._clock = clock
        self._start = clock()

    def elapsed_ms(self):
        return (self._clock() - self._start) // 1_000_000

    def expired(self):
        return self.budget_ms is not None and self.elapsed_ms() > self.budget_ms

    def check(self, stage):
        """Levanta BudgetExceededError se o prazo já passou."""
        if self.expired():
            raise BudgetExceededError(
                f"Orçamento de tempo de {self.budget_ms} ms esgotado em '{stage}'"
            )
