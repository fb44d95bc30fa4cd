"""Classificação estrutural: cosets de Ann(K), isotropia e concentração afim local

classify varre os divisores próprios K de n, mede a concentração de E no
coset mais populoso de Ann(K)^d e emite um StructureCertificate que pode
ser reconferido sem confiar no código que o produziu.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from znfal.config import DEFAULT_BUDGETS, DEFAULT_THRESHOLDS, parse_fraction
from znfal.crt_lifting import LocalSet, projections
from znfal.energy import distance_profile
from znfal.exceptions import (
    EmptySetError,
    HypothesisNotMetError,
    InvalidDivisorError,
    InvalidParameterError,
    InvariantViolationError,
)
from znfal.linalg import as_matrix, reduce_rows, rref_mod_p, solve_mod_p
from znfal.pointset import PointSet
from znfal.ring import Vector, proper_divisors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineSummary:
    """
    Melhor subespaço afim de F_p^d encontrado para pi_q(E) reduzido mod p.

    offset é o representante canônico (reduzido contra a base em RREF).
    truncated=True quando o orçamento de avaliações acabou antes do fim.
    """
    q: int
    p: int
    subspace_dim: int
    count: int
    size: int
    offset: Vector
    basis: Tuple[Vector, ...]
    truncated: bool = False
    evaluations: int = 0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, self.size)


@dataclass(frozen=True)
class StructureCertificate:
    """
    Testemunha (K, v, alpha, k): E concentra alpha de seus pontos em
    v + Ann(K)^d, e esse subconjunto é isotrópico módulo k.
    """
    n: int
    d: int
    K: int
    v: Vector
    alpha: Fraction
    support_size: int
    isotropy_divisor: Optional[int] = None
    local_summaries: Dict[int, AffineSummary] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 < self.K <= self.n or self.n % self.K:
            raise InvalidDivisorError(f"K={self.K} não é divisor não trivial de n={self.n}")
        if len(self.v) != self.d or any(not 0 <= c < self.m for c in self.v):
            raise InvalidParameterError(f"v={self.v} não está reduzido mod m={self.m}")
        if not 0 < self.alpha <= 1:
            raise InvalidParameterError(f"alpha={self.alpha} fora de (0, 1]")
        if self.isotropy_divisor is not None and not (
            1 < self.isotropy_divisor < self.n and self.n % self.isotropy_divisor == 0
        ):
            raise InvalidDivisorError(f"Divisor de isotropia inválido: {self.isotropy_divisor}")

    @property
    def m(self) -> int:
        return self.n // self.K

    def contains(self, point) -> bool:
        return tuple(c % self.m for c in point) == self.v

    def coset_points(self) -> List[Vector]:
        """Todos os K^d pontos de v + Ann(K)^d."""
        steps = range(0, self.n, self.m)
        grids = np.meshgrid(*[np.array(steps) + c for c in self.v], indexing='ij')
        return sorted(tuple(int(x) for x in row) for row in np.stack(grids, -1).reshape(-1, self.d))

    def validate(self, E: PointSet) -> bool:
        """
        Recalcula alpha a partir de (K, v) e reexecuta o teste de isotropia

        Raises:
            InvariantViolationError: o certificado não confere com E
        """
        support = E.subset(self.contains)
        alpha = Fraction(support.size, E.size)
        if alpha != self.alpha or support.size != self.support_size:
            raise InvariantViolationError(
                f"alpha declarado {self.alpha} difere do recalculado {alpha}"
            )
        if self.isotropy_divisor is not None and not isotropy_check(support, self.isotropy_divisor):
            raise InvariantViolationError(
                f"Subconjunto certificado não é isotrópico mod {self.isotropy_divisor}"
            )
        return True


@dataclass(frozen=True)
class NilpotentLayer:
    """
    Para n = p^2, x = a + p b com a, b em {0..p-1}. Quando b = A a mod p
    para uma matriz A, a camada p Z_{p^2} é função linear do resíduo.
    """
    p: int
    residue_count: int
    bijective: bool
    linear: bool
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None
    skew: Optional[bool] = None


def _require_nonempty(E: PointSet):
    if E.size == 0:
        raise EmptySetError("Conjunto de pontos vazio")


def coset_concentration(E: PointSet, K: int) -> Tuple[Vector, Fraction]:
    """
    Coset mais populoso de Ann(K)^d e sua fração exata

    Args:
        E: Conjunto não vazio
        K: Divisor de n com 1 < K <= n

    Returns:
        Tuple: (v reduzido mod m = n/K, alpha); empate pelo menor v
    """
    n = E.n
    if isinstance(K, bool) or not isinstance(K, int) or not 1 < K <= n or n % K:
        raise InvalidDivisorError(f"K={K} deve dividir n={n} com 1 < K <= n")
    _require_nonempty(E)
    m = n // K
    classes: Dict[Vector, int] = {}
    for point in E.points:
        key = tuple(c % m for c in point)
        classes[key] = classes.get(key, 0) + 1
    v, count = min(classes.items(), key=lambda item: (-item[1], item[0]))
    return v, Fraction(count, E.size)


def isotropy_check(S: PointSet, k: int) -> bool:
    """True sse todo par ordenado de S tem ||x - y||^2 = 0 mod k (1 < k < n, k | n)."""
    n = S.n
    if isinstance(k, bool) or not isinstance(k, int) or not 1 < k < n or n % k:
        raise InvalidDivisorError(f"k={k} não é divisor não trivial de n={n}")
    if S.size <= 1:
        return True
    return all(t % k == 0 for t in distance_profile(S).support)


def isotropy_divisor(S: PointSet) -> Optional[int]:
    """Maior divisor 1 < k < n com isotropy_check(S, k), ou None."""
    if S.size <= 1:
        candidates = proper_divisors(S.modulus)
        return candidates[-1] if candidates else None
    support = distance_profile(S).support
    for k in reversed(proper_divisors(S.modulus)):
        if all(t % k == 0 for t in support):
            return k
    return None


def affine_concentration(L: LocalSet, max_dim: Optional[int] = None, threshold=None,
                         budget: int = DEFAULT_BUDGETS['affine_budget']) -> AffineSummary:
    """
    Busca exaustiva do subespaço afim de F_p^d com mais pontos de L mod p

    Para cada dimensão r = 0..max_dim enumera os (r+1)-subconjuntos
    afimmente independentes e conta os pontos no subespaço gerado.
    Devolve a menor dimensão cuja fração atinge threshold; senão o melhor
    global (empates ficam com a menor dimensão).

    Args:
        L: Projeção local (q = p^a é reduzida mod p)
        max_dim: Dimensão máxima (padrão d - 1)
        threshold: Fração alvo (padrão 9/10)
        budget: Limite cumulativo de avaliações ponto x subespaço

    Returns:
        AffineSummary: com truncated=True se o orçamento acabou
    """
    p, d = L.p, L.d
    threshold = parse_fraction(threshold) if threshold is not None else DEFAULT_THRESHOLDS['affine_threshold']
    max_dim = d - 1 if max_dim is None else max_dim
    if not 0 <= max_dim <= d:
        raise InvalidParameterError(f"max_dim={max_dim} fora de [0, {d}]")
    if L.size == 0:
        raise EmptySetError("Conjunto local vazio")

    reduced = sorted({tuple(c % p for c in point) for point in L.points})
    P = as_matrix(reduced, d, p)
    size = len(reduced)

    best = None
    evaluations = 0
    truncated = False
    for r in range(max_dim + 1):
        if r >= size:
            break
        for subset in combinations(range(size), r + 1):
            if evaluations + size > budget:
                truncated = True
                break
            evaluations += size
            x0 = P[subset[0]]
            R, pivots = rref_mod_p((P[list(subset[1:])] - x0) % p if r else np.zeros((0, d), dtype=P.dtype), p)
            if len(pivots) != r:
                continue
            remainders = reduce_rows(R, pivots, (P - x0) % p, p)
            count = int(np.count_nonzero(~remainders.any(axis=1)))
            if best is None or count > best[0]:
                offset = reduce_rows(R, pivots, x0.reshape(1, d), p)[0]
                best = (count, r, tuple(int(c) for c in offset),
                        tuple(tuple(int(c) for c in row) for row in R))
        if truncated or Fraction(best[0], size) >= threshold:
            break

    if truncated:
        logger.warning(f"Busca afim truncada em q={L.prime_power}: {evaluations} avaliações")
    if best is None:
        best = (0, 0, (0,) * d, ())
    count, dim, offset, basis = best
    return AffineSummary(
        q=L.prime_power, p=p, subspace_dim=dim, count=count, size=size,
        offset=offset, basis=basis, truncated=truncated, evaluations=evaluations,
    )


def local_structure(E: PointSet, max_dim: Optional[int] = None, threshold=None,
                    budget: int = DEFAULT_BUDGETS['affine_budget']) -> Dict[int, AffineSummary]:
    """Resumo afim de cada projeção pi_q(E)."""
    _require_nonempty(E)
    return {
        q: affine_concentration(local, max_dim=max_dim, threshold=threshold, budget=budget)
        for q, local in projections(E).items()
    }


def _candidate(E: PointSet, K: int, alpha_min: Fraction, require_isotropy: bool):
    v, alpha = coset_concentration(E, K)
    if alpha < alpha_min:
        return None
    m = E.n // K
    support = E.subset(lambda point: tuple(c % m for c in point) == v)
    k = isotropy_divisor(support)
    if require_isotropy and k is None:
        logger.debug(f"K={K}: coset {v} sem divisor de isotropia, descartado")
        return None
    return (-alpha, K, v, support.size, k)


def classify(E: PointSet, alpha_min=None, require_isotropy: Optional[bool] = None,
             local: bool = True, max_dim: Optional[int] = None, affine_threshold=None,
             affine_budget: int = DEFAULT_BUDGETS['affine_budget'],
             threads: int = 1) -> Optional[StructureCertificate]:
    """
    Classificador de ponta a ponta

    Varre 1 < K < n; entre os candidatos com alpha >= alpha_min escolhe o
    de maior alpha (empates: menor K, depois menor v).

    Args:
        E: Conjunto não vazio
        alpha_min: Concentração mínima (padrão 1/2)
        require_isotropy: Descarta cosets sem divisor de isotropia (padrão True)
        local: Anexa os resumos afins por componente
        threads: Avalia os divisores em paralelo; a ordem final não depende disso

    Returns:
        StructureCertificate ou None quando E não é estruturado
    """
    _require_nonempty(E)
    alpha_min = parse_fraction(alpha_min) if alpha_min is not None else DEFAULT_THRESHOLDS['alpha_min']
    if require_isotropy is None:
        require_isotropy = DEFAULT_THRESHOLDS['require_isotropy']

    scan = proper_divisors(E.modulus)
    logger.debug(f"Classificação: n={E.n}, {len(scan)} divisores próprios")

    def evaluate(K):
        return _candidate(E, K, alpha_min, require_isotropy)

    if threads > 1 and len(scan) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(scan))) as pool:
            results = list(pool.map(evaluate, scan))
    else:
        results = [evaluate(K) for K in scan]

    candidates = sorted(c for c in results if c is not None)
    if not candidates:
        return None
    neg_alpha, K, v, support_size, k = candidates[0]
    summaries = local_structure(E, max_dim, affine_threshold, affine_budget) if local else {}
    return StructureCertificate(
        n=E.n, d=E.d, K=K, v=v, alpha=-neg_alpha, support_size=support_size,
        isotropy_divisor=k, local_summaries=summaries,
    )


def peel(E: PointSet, alpha_min=None, require_isotropy: Optional[bool] = None,
         max_rounds: Optional[int] = None, **kwargs) -> Tuple[List[StructureCertificate], PointSet]:
    """
    União gulosa de certificados: extrai o melhor coset e repete no resto

    Cada alpha é relativo ao conjunto restante naquela rodada.

    Returns:
        Tuple: (certificados em ordem de extração, pontos não cobertos)
    """
    certificates = []
    rest = E
    while rest.size and (max_rounds is None or len(certificates) < max_rounds):
        certificate = classify(rest, alpha_min, require_isotropy, **kwargs)
        if certificate is None:
            break
        certificates.append(certificate)
        rest = rest.subset(lambda point, c=certificate: not c.contains(point))
    return certificates, rest


def nilpotent_layer(E: PointSet) -> NilpotentLayer:
    """
    Estrutura p-ádica para n = p^2: resolve b = A a mod p

    Raises:
        HypothesisNotMetError: n não é quadrado de primo
    """
    factorization = E.modulus.factorization
    if len(factorization) != 1 or factorization[0][1] != 2:
        raise HypothesisNotMetError(f"Camada nilpotente exige n = p^2; n={E.n}")
    _require_nonempty(E)
    p = factorization[0][0]
    d = E.d
    residues = [tuple(c % p for c in point) for point in E.points]
    layers = [tuple(c // p for c in point) for point in E.points]
    residue_count = len(set(residues))

    a = as_matrix(residues, d, p)
    b = as_matrix(layers, d, p)
    rows = []
    for j in range(d):
        solution = solve_mod_p(a, b[:, j], p)
        if solution is None:
            return NilpotentLayer(p=p, residue_count=residue_count,
                                  bijective=residue_count == E.size, linear=False)
        rows.append(tuple(int(x) for x in solution))
    A = np.array(rows, dtype=np.int64)
    return NilpotentLayer(
        p=p,
        residue_count=residue_count,
        bijective=residue_count == E.size,
        linear=True,
        matrix=tuple(rows),
        skew=bool(((A.T + A) % p == 0).all()),
    )
