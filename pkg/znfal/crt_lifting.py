"""Projeções CRT, fibras, razões locais e levantamento de pacotes

Para cada componente primária q = p^a || n, pi_q reduz coordenadas mod q.
As projeções são conjuntos (sem multiplicidade); a multiplicidade das
fibras fica em FiberStats.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from znfal.config import DEFAULT_BUDGETS, DEFAULT_THRESHOLDS, check_budget, parse_fraction
from znfal.energy import distance_profile, incidence_energy
from znfal.exceptions import (
    DimensionMismatchError,
    EmptySetError,
    HypothesisNotMetError,
    InvalidDivisorError,
    InvalidParameterError,
)
from znfal.pointset import PointSet
from znfal.ring import Modulus, Vector, combine_with_basis, factorize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalSet:
    """pi_q(E) contido em Z_q^d, q = p^a."""
    prime_power: int
    p: int
    d: int
    points: Tuple[Vector, ...]

    def __post_init__(self):
        for point in self.points:
            if len(point) != self.d:
                raise DimensionMismatchError(f"Ponto {point} não tem dimensão {self.d}")
            if any(not 0 <= c < self.prime_power for c in point):
                raise DimensionMismatchError(f"Ponto {point} não está reduzido mod {self.prime_power}")
        if len(set(self.points)) != len(self.points):
            raise InvalidParameterError("LocalSet não aceita pontos repetidos")

    @classmethod
    def from_points(cls, q: int, d: int, points) -> "LocalSet":
        m = factorize(q)
        if not m.is_prime_power:
            raise InvalidDivisorError(f"{q} não é potência de primo")
        reduced = sorted({tuple(int(c) % q for c in point) for point in points})
        return cls(prime_power=q, p=m.primes[0], d=d, points=tuple(reduced))

    @property
    def size(self) -> int:
        return len(self.points)

    def as_pointset(self) -> PointSet:
        return PointSet(factorize(self.prime_power), self.d, self.points)


@dataclass(frozen=True)
class ConsistencyPacket:
    """
    Restrições locais V_p contidas em F_p^d, uma por primo de n.

    degree_hint guarda o grau delta da variedade, quando conhecido; não
    entra em nenhuma conta.
    """
    constraints: Dict[int, Tuple[Vector, ...]]
    degree_hint: Optional[int] = None


@dataclass(frozen=True)
class FiberStats:
    q: int
    M: int
    histogram: Dict[int, int]
    uniform_core_fraction: Fraction


@dataclass(frozen=True)
class LocalRatios:
    ratios: Dict[int, Fraction]
    global_ratio: Fraction

    @property
    def max_ratio(self) -> Fraction:
        return max(self.ratios.values())


@dataclass(frozen=True)
class LocalDiagnostics:
    """
    |Delta(E_q)| por componente e a comparação global.

    bound_ratio = |Delta(E)|^2 / prod_{q pesado} |Delta(E_q)|; a estimativa
    |Delta(E)| >~ prod |Delta(E_q)|^(1/2) é só exibida, nunca verificada.
    """
    components: Dict[int, Dict[str, object]]
    distance_count: int
    heavy_product: int
    bound_ratio: Fraction = field(default=Fraction(0))


def _check_component(E: PointSet, q: int):
    if q not in E.modulus.prime_powers:
        raise InvalidDivisorError(
            f"q={q} não é componente primária exata de n={E.n} "
            f"(componentes: {list(E.modulus.prime_powers)})"
        )


def project(E: PointSet, q: int) -> LocalSet:
    """
    pi_q(E): redução coordenada a coordenada mod q, sem repetições

    Raises:
        InvalidDivisorError: q não satisfaz q || n
    """
    _check_component(E, q)
    return LocalSet.from_points(q, E.d, E.points)


def projections(E: PointSet) -> Dict[int, LocalSet]:
    return {q: project(E, q) for q in E.modulus.prime_powers}


def _uniform_core(sizes: List[int]) -> int:
    """Maior número de pontos em fibras cujos tamanhos diferem por no máximo fator 2."""
    sizes = sorted(sizes)
    best = 0
    for i, smallest in enumerate(sizes):
        best = max(best, sum(s for s in sizes[i:] if s <= 2 * smallest))
    return best


def fiber_stats(E: PointSet, q: int) -> FiberStats:
    """
    Histograma exato das fibras de pi_q restrita a E

    Returns:
        FiberStats: M = maior fibra; histogram[tamanho] = número de fibras
    """
    _check_component(E, q)
    if E.size == 0:
        raise EmptySetError("Conjunto de pontos vazio")
    fibers: Dict[Vector, int] = {}
    for point in E.points:
        key = tuple(c % q for c in point)
        fibers[key] = fibers.get(key, 0) + 1
    sizes = list(fibers.values())
    histogram: Dict[int, int] = {}
    for s in sizes:
        histogram[s] = histogram.get(s, 0) + 1
    if sum(sizes) != E.size:
        raise InvalidParameterError("Fibras não cobrem E")
    return FiberStats(
        q=q,
        M=max(sizes),
        histogram=dict(sorted(histogram.items())),
        uniform_core_fraction=Fraction(_uniform_core(sizes), E.size),
    )


def _ratio(energy: int, modulus: int, size: int) -> Fraction:
    return Fraction(energy * modulus, size ** 4)


def local_energy_ratios(E: PointSet, threads: int = 1) -> LocalRatios:
    """
    rho_q = E_q(E_q) q / |E_q|^4 por componente, e a razão global
    """
    if E.size == 0:
        raise EmptySetError("Conjunto de pontos vazio")
    ratios = {}
    for q, local in projections(E).items():
        energy = incidence_energy(local.as_pointset(), threads)
        ratios[q] = _ratio(energy, q, local.size)
        logger.debug(f"Componente q={q}: |E_q|={local.size}, E_q={energy}")
    global_ratio = _ratio(incidence_energy(E, threads), E.n, E.size)
    return LocalRatios(ratios=ratios, global_ratio=global_ratio)


def pigeonhole_check(local: LocalRatios, K=None):
    """
    Se rho >= K então (max rho_q)^k >= K, k = número de componentes

    A implicação vale para conjuntos produto (onde prod rho_q = rho);
    'applicable' indica se a hipótese rho >= K foi satisfeita.
    """
    K = parse_fraction(K) if K is not None else DEFAULT_THRESHOLDS['K']
    k = len(local.ratios)
    best = local.max_ratio
    return {
        'K': K,
        'k': k,
        'max_ratio': best,
        'applicable': local.global_ratio >= K,
        'holds': best ** k >= K,
    }


def _modulus_for(locals_: List[LocalSet]) -> Tuple[Modulus, int]:
    if not locals_:
        raise InvalidParameterError("Nenhuma componente local informada")
    dims = {local.d for local in locals_}
    if len(dims) != 1:
        raise DimensionMismatchError(f"Componentes com dimensões diferentes: {sorted(dims)}")
    qs = sorted(local.prime_power for local in locals_)
    n = 1
    for q in qs:
        n *= q
    m = factorize(n)
    if tuple(qs) != m.prime_powers:
        raise InvalidParameterError(
            f"Componentes {qs} não formam a decomposição primária de n={n}"
        )
    return m, dims.pop()


def product_set(locals_: List[LocalSet], max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """
    E = A_1 x ... x A_r via CRT coordenada a coordenada

    Args:
        locals_: Uma LocalSet por componente primária de n = prod q
        max_points: Limite para |E| = prod |A_i|

    Returns:
        PointSet: sobre Z_n^d
    """
    m, d = _modulus_for(locals_)
    ordered = sorted(locals_, key=lambda local: local.prime_power)
    if any(local.size == 0 for local in ordered):
        raise EmptySetError("Componente local vazia")
    size = 1
    for local in ordered:
        size *= local.size
    check_budget('max_points', size, max_points)
    points = [
        tuple(combine_with_basis(tuple(c[i] for c in choice), m) for i in range(d))
        for choice in product(*(local.points for local in ordered))
    ]
    return PointSet.build(m, d, points)


def verify_product_energy(locals_: List[LocalSet], threads: int = 1):
    """
    E_n(A_1 x ... x A_r) = prod E_{p_i}(A_i), para n livre de quadrados

    Raises:
        HypothesisNotMetError: n não é livre de quadrados
    """
    m, _ = _modulus_for(locals_)
    if not m.squarefree:
        raise HypothesisNotMetError(
            f"A fatoração da energia exige n livre de quadrados; n={m.n}"
        )
    E = product_set(locals_)
    lhs = incidence_energy(E, threads)
    rhs = 1
    for local in locals_:
        rhs *= incidence_energy(local.as_pointset(), threads)
    return {'lhs': lhs, 'rhs': rhs, 'equal': lhs == rhs}


def lift_packet(packet: ConsistencyPacket, m: Modulus, d: int,
                max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """
    L(V): todo x em Z_n^d com pi_p(x) em V_p para todo p

    Raises:
        HypothesisNotMetError: n não é livre de quadrados
        InvalidParameterError: falta V_p para algum primo, ou V_p vazio
    """
    if not m.squarefree:
        raise HypothesisNotMetError(f"Pacotes de consistência exigem n livre de quadrados; n={m.n}")
    missing = [p for p in m.primes if p not in packet.constraints]
    extra = [p for p in packet.constraints if p not in m.primes]
    if missing or extra:
        raise InvalidParameterError(
            f"Pacote não corresponde aos primos de n={m.n}: faltando {missing}, sobrando {extra}"
        )
    locals_ = []
    for p in m.primes:
        if not packet.constraints[p]:
            raise InvalidParameterError(f"V_{p} vazio")
        locals_.append(LocalSet.from_points(p, d, packet.constraints[p]))
    return product_set(locals_, max_points=max_points)


def lifted_structure_from(E: PointSet, max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """L((pi_p(E))_p), que sempre contém E."""
    packet = ConsistencyPacket(
        constraints={local.p: local.points for local in projections(E).values()}
    )
    return lift_packet(packet, E.modulus, E.d, max_points=max_points)


def holder_check(E: PointSet, threads: int = 1):
    """
    E_n(E) <= M^4 prod_q E_q(E_q), M = maior fibra entre as componentes
    """
    locals_ = projections(E)
    M = max(fiber_stats(E, q).M for q in locals_)
    local_product = 1
    for local in locals_.values():
        local_product *= incidence_energy(local.as_pointset(), threads)
    lhs = incidence_energy(E, threads)
    rhs = M ** 4 * local_product
    return {'lhs': lhs, 'rhs': rhs, 'M': M, 'holds': lhs <= rhs}


def local_distance_diagnostics(E: PointSet, C=None, threads: int = 1) -> LocalDiagnostics:
    """
    |Delta(E_q)| e densidade |Delta(E_q)|/q por componente

    Componentes com densidade <= C são marcadas como pesadas e entram no
    produto exibido ao lado de |Delta(E)|.
    """
    C = parse_fraction(C) if C is not None else DEFAULT_THRESHOLDS['C']
    if E.size == 0:
        raise EmptySetError("Conjunto de pontos vazio")
    components = {}
    heavy_product = 1
    for q, local in projections(E).items():
        count = distance_profile(local.as_pointset(), threads).distance_count
        density = Fraction(count, q)
        heavy = density <= C
        if heavy:
            heavy_product *= count
        components[q] = {'distance_count': count, 'density': density, 'heavy': heavy}
    distance_count = distance_profile(E, threads).distance_count
    return LocalDiagnostics(
        components=components,
        distance_count=distance_count,
        heavy_product=heavy_product,
        bound_ratio=Fraction(distance_count ** 2, heavy_product),
    )
