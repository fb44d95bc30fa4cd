"""Ensaios aleatórios com seed fixa para as identidades verificáveis

Cada runner devolve um VerificationResult com o contraexemplo
de cada falha; nenhuma violação é descartada.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np

from znfal.config import DEFAULT_THRESHOLDS, Deadline, parse_fraction
from znfal.constructions import (
    appendix_b_set,
    canonical_lift,
    example_2_3,
    random_product_set,
    random_set,
    submodule_coset,
)
from znfal.crt_lifting import local_energy_ratios, pigeonhole_check, verify_product_energy
from znfal.energy import (
    cauchy_schwarz_check,
    energy_shells,
    incidence_energy,
    mixed_cross_terms,
    quadruple_energy,
)
from znfal.pointset import PointSet
from znfal.reports import dump_pointset
from znfal.rigidity import psi_vanishing_check
from znfal.ring import factorize

logger = logging.getLogger(__name__)

ORACLE_MODULI = (6, 9, 15, 30)
SQUAREFREE_MODULI = (6, 15, 30)


@dataclass
class VerificationResult:
    lemma: str
    trials: int = 0
    passed: int = 0
    skipped: int = 0
    partial: bool = False
    failures: List[Dict[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, **details):
        self.trials += 1
        if passed:
            self.passed += 1
        else:
            self.failures.append(details)


def random_corpus(trials: int, seed: int, moduli=ORACLE_MODULI, dims=(1, 2),
                  max_size: int = 12) -> Iterator[PointSet]:
    """Conjuntos aleatórios: n, d e |E| <= max_size sorteados a partir de seed."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.choice(moduli))
        d = int(rng.choice(dims))
        size = int(rng.integers(1, min(max_size, n ** d) + 1))
        yield random_set(n, d, size, int(rng.integers(0, 2 ** 62)))


def constructed_corpus() -> List[PointSet]:
    """Todos os conjuntos nomeados, nos parâmetros pequenos usados nos testes."""
    return [
        example_2_3(),
        appendix_b_set(3, 2),
        appendix_b_set(3, 3),
        appendix_b_set(5, 2),
        canonical_lift(3, 2),
        submodule_coset(6, 2, 2, (0, 0)),
        submodule_coset(30, 2, 5, (1, 2)),
        submodule_coset(9, 1, 3, (1,)),
    ]


def _product_trial(rng, moduli, dims, max_component):
    n = int(rng.choice(moduli))
    d = int(rng.choice(dims))
    m = factorize(n)
    sizes = [int(rng.integers(1, min(max_component, q ** d) + 1)) for q in m.prime_powers]
    return random_product_set(m, d, sizes, int(rng.integers(0, 2 ** 62)))


def _run(lemma: str, deadline: Optional[Deadline], cases, check) -> VerificationResult:
    result = VerificationResult(lemma=lemma)
    for case in cases:
        if deadline is not None and deadline.expired():
            logger.warning(f"Prazo esgotado em '{lemma}' após {result.trials} ensaios")
            result.partial = True
            break
        check(result, case)
    logger.info(f"{lemma}: {result.passed}/{result.trials} ensaios aprovados")
    return result


def run_product_energy(trials: int, seed: int, deadline: Optional[Deadline] = None,
                       max_component: int = 6, **_) -> VerificationResult:
    rng = np.random.default_rng(seed)

    def check(result, _):
        E, locals_ = _product_trial(rng, SQUAREFREE_MODULI, (1, 2), max_component)
        outcome = verify_product_energy(locals_)
        result.record(outcome['equal'], input=dump_pointset(E), **outcome)

    return _run('product-energy', deadline, range(trials), check)


def run_pigeonhole(trials: int, seed: int, deadline: Optional[Deadline] = None,
                   K=None, n: int = 30, max_component: int = 6, **_) -> VerificationResult:
    """Em conjuntos produto com rho >= K, (max rho_q)^k >= K; os demais contam como pulados."""
    K = parse_fraction(K) if K is not None else DEFAULT_THRESHOLDS['K']
    rng = np.random.default_rng(seed)

    def check(result, _):
        E, _locals = _product_trial(rng, (n,), (1, 2), max_component)
        outcome = pigeonhole_check(local_energy_ratios(E), K)
        if not outcome['applicable']:
            result.skipped += 1
            return
        result.record(outcome['holds'], input=dump_pointset(E), **outcome)

    return _run('pigeonhole', deadline, range(trials), check)


def run_cs_bound(trials: int, seed: int, deadline: Optional[Deadline] = None, **_) -> VerificationResult:
    def check(result, E):
        outcome = cauchy_schwarz_check(E)
        result.record(outcome['holds'], input=dump_pointset(E), **outcome)

    cases = constructed_corpus() + list(random_corpus(trials, seed))
    return _run('cs-bound', deadline, cases, check)


def run_shell_sum(trials: int, seed: int, deadline: Optional[Deadline] = None, **_) -> VerificationResult:
    def check(result, E):
        decomposition = energy_shells(E)
        holds = (
            decomposition.total == decomposition.shell_sum + decomposition.mixed
            and decomposition.mixed == mixed_cross_terms(decomposition)
            and decomposition.total == incidence_energy(E)
        )
        result.record(holds, input=dump_pointset(E), total=decomposition.total,
                      shell_sum=decomposition.shell_sum, mixed=decomposition.mixed)

    cases = constructed_corpus() + list(random_corpus(trials, seed))
    return _run('shell-sum', deadline, cases, check)


def run_energy_oracle(trials: int, seed: int, deadline: Optional[Deadline] = None, **_) -> VerificationResult:
    def check(result, E):
        fast, oracle = incidence_energy(E), quadruple_energy(E)
        result.record(fast == oracle, input=dump_pointset(E), energy=fast, oracle=oracle)

    return _run('energy-oracle', deadline, random_corpus(trials, seed), check)


def run_psi_check(trials: int, seed: int, deadline: Optional[Deadline] = None, **_) -> VerificationResult:
    def check(result, E):
        result.record(psi_vanishing_check(E), input=dump_pointset(E))

    return _run('psi-check', deadline, random_corpus(trials, seed), check)


LEMMAS: Dict[str, Callable[..., VerificationResult]] = {
    'product-energy': run_product_energy,
    'pigeonhole': run_pigeonhole,
    'cs-bound': run_cs_bound,
    'shell-sum': run_shell_sum,
    'energy-oracle': run_energy_oracle,
    'psi-check': run_psi_check,
}
