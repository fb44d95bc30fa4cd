"""Distâncias quadráticas, perfil de multiplicidades e energia de incidência

O perfil nu_E é obtido pelo laço O(|E|^2) sobre pares ordenados; a energia
sai da identidade L^2, sum_t nu_E(t)^2. O laço O(|E|^4) da definição existe
só como oráculo (quadruple_energy).

O laço de pares pode ser particionado por linhas entre threads; cada
thread acumula o próprio histograma e a soma final não depende da partição.
"""
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Tuple

import numpy as np
import sympy

from znfal.config import DEFAULT_THRESHOLDS, MODULUS_CEILING, check_budget, parse_fraction
from znfal.exceptions import DimensionMismatchError, EmptySetError, InvariantViolationError
from znfal.pointset import PointSet
from znfal.ring import Modulus, divisors

logger = logging.getLogger(__name__)

# limite de entradas (linhas x |E|) materializadas por bloco
BLOCK_PAIRS = 1 << 20


@dataclass(frozen=True)
class DistanceProfile:
    """nu[t] = número de pares ordenados (x, y) com ||x - y||^2 = t mod n."""
    n: int
    size: int
    nu: Tuple[int, ...]

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(t for t, c in enumerate(self.nu) if c)

    @property
    def distance_count(self) -> int:
        return sum(1 for c in self.nu if c)


@dataclass(frozen=True)
class EnergyDecomposition:
    """
    Energia total, cascas por divisor e termo misto.

    scale_profiles[k][t] conta os pares ordenados de escala exatamente k
    com distância t.
    """
    total: int
    shells: Dict[int, int]
    mixed: int
    scale_profiles: Dict[int, Dict[int, int]] = field(default_factory=dict)

    @property
    def shell_sum(self) -> int:
        return sum(self.shells.values())


@dataclass(frozen=True)
class NearExtremalityReport:
    energy: int
    size: int
    n: int
    d: int
    distance_count: int
    energy_ratio: Fraction
    distance_density: Fraction
    size_regime_ratio: Fraction
    size_exponent: sympy.Expr
    K: Fraction
    C: Fraction

    @property
    def energy_extremal(self) -> bool:
        return self.energy_ratio >= self.K

    @property
    def distance_collapsed(self) -> bool:
        return self.distance_density <= self.C

    @property
    def near_extremal(self) -> bool:
        return self.energy_extremal and self.distance_collapsed

    def size_exponent_decimal(self, digits=12) -> str:
        return str(sympy.N(self.size_exponent, digits))


def _check_same_shape(x, y):
    if len(x) != len(y):
        raise DimensionMismatchError(f"Vetores de dimensões diferentes: {len(x)} != {len(y)}")


def squared_distance(x, y, m: Modulus) -> int:
    """||x - y||^2 mod n."""
    _check_same_shape(x, y)
    return sum((a - b) * (a - b) for a, b in zip(x, y)) % m.n


def pair_scale(x, y, m: Modulus) -> int:
    """
    Escala k(x, y): o maior k | n com x = y coordenada a coordenada mod k

    É exatamente gcd(n, x_1 - y_1, ..., x_d - y_d); vale n se e só se x = y.
    """
    _check_same_shape(x, y)
    return math.gcd(m.n, *(a - b for a, b in zip(x, y)))


def _require_points(E: PointSet):
    if E.size == 0:
        raise EmptySetError("Conjunto de pontos vazio")


def _require_pair_modulus(E: PointSet):
    _require_points(E)
    check_budget('max_modulus', E.n, MODULUS_CEILING)


def _row_partitions(size, threads):
    parts = max(1, min(int(threads), size))
    return [chunk for chunk in np.array_split(np.arange(size), parts) if len(chunk)]


def _row_blocks(rows, size):
    step = max(1, BLOCK_PAIRS // max(1, size))
    for start in range(0, len(rows), step):
        yield rows[start:start + step]


def _pair_block(pts, rows, n):
    """Diferenças e distâncias de todos os pares (i, j) com i em rows."""
    diff = pts[rows][:, None, :] - pts[None, :, :]
    # cada quadrado reduzido mod n antes da soma: d parcelas < n cabem em int64
    dist = np.mod(np.mod(diff * diff, n).sum(axis=2), n)
    return diff, dist


def pair_distance_blocks(E: PointSet):
    """Gera, bloco a bloco de linhas, a matriz de distâncias ||x_i - x_j||^2 mod n."""
    _require_pair_modulus(E)
    pts = E.as_array()
    for block in _row_blocks(np.arange(E.size), E.size):
        yield _pair_block(pts, block, E.n)[1]


def _run_partitioned(E: PointSet, threads, worker):
    partitions = _row_partitions(E.size, threads)
    logger.debug(f"Laço de pares: |E|={E.size}, {len(partitions)} partição(ões)")
    if len(partitions) == 1:
        return [worker(partitions[0])]
    with ThreadPoolExecutor(max_workers=len(partitions)) as pool:
        return list(pool.map(worker, partitions))


def distance_profile(E: PointSet, threads: int = 1) -> DistanceProfile:
    """
    Perfil nu_E pelo laço de pares ordenados

    Args:
        E: Conjunto não vazio
        threads: Número de partições do laço (resultado idêntico para qualquer valor)

    Returns:
        DistanceProfile: histograma com soma |E|^2

    Raises:
        BudgetExceededError: n acima de MODULUS_CEILING
    """
    _require_pair_modulus(E)
    pts = E.as_array()
    n = E.n

    def worker(rows):
        hist = np.zeros(n, dtype=np.int64)
        for block in _row_blocks(rows, E.size):
            _, dist = _pair_block(pts, block, n)
            hist += np.bincount(dist.ravel(), minlength=n)
        return hist

    total = np.zeros(n, dtype=np.int64)
    for hist in _run_partitioned(E, threads, worker):
        total += hist
    nu = tuple(int(c) for c in total)
    if sum(nu) != E.size ** 2:
        raise InvariantViolationError("Soma de nu_E diferente de |E|^2")
    return DistanceProfile(n=n, size=E.size, nu=nu)


def distance_set(E: PointSet, threads: int = 1):
    """Delta(E): suporte do perfil; sempre contém 0."""
    return set(distance_profile(E, threads).support)


def incidence_energy(E: PointSet, threads: int = 1, profile: DistanceProfile = None) -> int:
    """E_n(E) = sum_t nu_E(t)^2, em inteiros de precisão arbitrária."""
    profile = profile or distance_profile(E, threads)
    return sum(c * c for c in profile.nu if c)


def nontrivial_energy(E: PointSet, threads: int = 1) -> int:
    """Energia sem a contribuição diagonal |E|^2."""
    return incidence_energy(E, threads) - E.size ** 2


def quadruple_energy(E: PointSet, max_points: int = 40) -> int:
    """
    Oráculo: conta diretamente as quádruplas (x, y, z, w) em E^4 com
    ||x - y||^2 = ||z - w||^2 mod n. Só para conferência em conjuntos pequenos.
    """
    _require_points(E)
    check_budget('oracle_max_points', E.size, max_points)
    m = E.modulus
    count = 0
    for x, y, z, w in product(E.points, repeat=4):
        if squared_distance(x, y, m) == squared_distance(z, w, m):
            count += 1
    return count


def cauchy_schwarz_check(E: PointSet, threads: int = 1):
    """
    Cauchy-Schwarz exato: E_n(E) * |Delta(E)| >= |E|^4

    Returns:
        dict: lhs, rhs e holds
    """
    profile = distance_profile(E, threads)
    lhs = incidence_energy(E, profile=profile) * profile.distance_count
    rhs = E.size ** 4
    return {'lhs': lhs, 'rhs': rhs, 'holds': lhs >= rhs}


def energy_shells(E: PointSet, threads: int = 1) -> EnergyDecomposition:
    """
    Decomposição da energia em cascas por escala divisora

    shells[k] = sum_t nu^(k)(t)^2 para todo k | n; mixed = total - sum(shells).
    """
    _require_pair_modulus(E)
    pts = E.as_array()
    n = E.n

    def worker(rows):
        counts = Counter()
        for block in _row_blocks(rows, E.size):
            diff, dist = _pair_block(pts, block, n)
            scale = np.gcd(np.gcd.reduce(diff, axis=2), n)
            keys, hits = np.unique(scale * n + dist, return_counts=True)
            for key, hit in zip(keys.tolist(), hits.tolist()):
                counts[key] += hit
        return counts

    merged = Counter()
    for counts in _run_partitioned(E, threads, worker):
        merged.update(counts)

    scale_profiles = {k: {} for k in divisors(E.modulus)}
    by_distance = Counter()
    for key in sorted(merged):
        k, t = divmod(key, n)
        scale_profiles[k][t] = merged[key]
        by_distance[t] += merged[key]

    total = sum(c * c for c in by_distance.values())
    shells = {k: sum(c * c for c in prof.values()) for k, prof in scale_profiles.items()}
    mixed = total - sum(shells.values())
    if mixed < 0:
        raise InvariantViolationError("Termo misto negativo")
    return EnergyDecomposition(total=total, shells=shells, mixed=mixed,
                               scale_profiles=scale_profiles)


def mixed_cross_terms(decomposition: EnergyDecomposition) -> int:
    """sum_t sum_{k != k'} nu^(k)(t) nu^(k')(t), pela fórmula explícita."""
    total = 0
    scales = sorted(decomposition.scale_profiles)
    for k in scales:
        for k2 in scales:
            if k == k2:
                continue
            prof, prof2 = decomposition.scale_profiles[k], decomposition.scale_profiles[k2]
            total += sum(c * prof2.get(t, 0) for t, c in prof.items())
    return total


def near_extremality_report(E: PointSet, K=None, C=None, threads: int = 1) -> NearExtremalityReport:
    """
    Razão de energia rho = E_n(E) n / |E|^4, densidade |Delta(E)|/n e regime de tamanho

    Args:
        E: Conjunto não vazio
        K: Limiar de energia (padrão 2)
        C: Limiar de densidade de distâncias (padrão 1/10)
        threads: Partições do laço de pares

    Returns:
        NearExtremalityReport: valores exatos (Fraction / expressão sympy)
    """
    K = parse_fraction(K) if K is not None else DEFAULT_THRESHOLDS['K']
    C = parse_fraction(C) if C is not None else DEFAULT_THRESHOLDS['C']
    profile = distance_profile(E, threads)
    energy = incidence_energy(E, profile=profile)
    size, n, d = E.size, E.n, E.d
    return NearExtremalityReport(
        energy=energy,
        size=size,
        n=n,
        d=d,
        distance_count=profile.distance_count,
        energy_ratio=Fraction(energy * n, size ** 4),
        distance_density=Fraction(profile.distance_count, n),
        size_regime_ratio=Fraction(size ** 2, n ** (d + 1)),
        size_exponent=sympy.log(sympy.Integer(size), sympy.Integer(n)),
        K=K,
        C=C,
    )
