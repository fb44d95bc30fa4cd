"""Geradores determinísticos de conjuntos de pontos

Inclui o exemplo de seis pontos em Z_6^2, a construção skew
E = {x + pAx} sobre Z_{p^2}, cosets de Ann(K)^d e linhas de base aleatórias.
Representantes canônicos de F_p dentro de Z_{p^2} são sempre {0, ..., p-1}.
"""
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from znfal.config import DEFAULT_BUDGETS, check_budget
from znfal.crt_lifting import LocalSet, product_set
from znfal.exceptions import (
    DimensionMismatchError,
    EmptySetError,
    InvalidDivisorError,
    InvalidParameterError,
)
from znfal.pointset import PointSet
from znfal.ring import Modulus, annihilator_submodule, factorize


@dataclass(frozen=True)
class SkewMatrix:
    """A em M_d(F_p) com A^T = -A mod p; a matriz nula é aceita como caso degenerado."""
    p: int
    d: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _check_odd_prime(self.p)
        rows = tuple(tuple(int(c) % self.p for c in row) for row in self.entries)
        if len(rows) != self.d or any(len(row) != self.d for row in rows):
            raise DimensionMismatchError(f"Matriz deve ser {self.d}x{self.d}")
        for i in range(self.d):
            for j in range(self.d):
                if (rows[i][j] + rows[j][i]) % self.p:
                    raise InvalidParameterError(
                        f"Matriz não é antissimétrica mod {self.p} na posição ({i}, {j})"
                    )
        object.__setattr__(self, 'entries', rows)

    @property
    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.d, self.d)


def _check_odd_prime(p):
    if isinstance(p, bool) or not isinstance(p, int) or p == 2 or not isprime(p):
        raise InvalidParameterError(f"p={p} deve ser primo ímpar")


def example_2_3() -> PointSet:
    """E = {(0,0), (2,0), (3,0), (0,2)} em Z_6^2."""
    return PointSet.build(6, 2, [(0, 0), (2, 0), (3, 0), (0, 2)])


def default_skew_matrix(p: int, d: int) -> SkewMatrix:
    """[[0, 1], [p-1, 0]] no canto superior esquerdo, zero no resto."""
    if d < 2:
        raise InvalidParameterError("Matriz antissimétrica não nula exige d >= 2")
    entries = [[0] * d for _ in range(d)]
    entries[0][1] = 1
    entries[1][0] = p - 1
    return SkewMatrix(p, d, tuple(tuple(row) for row in entries))


def appendix_b_set(p: int, d: int, A: Optional[SkewMatrix] = None,
                   max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """
    E = {x + pAx : x em {0..p-1}^d} contido em Z_{p^2}^d

    Args:
        p: Primo ímpar
        d: Dimensão
        A: Matriz antissimétrica mod p (padrão: default_skew_matrix)

    Returns:
        PointSet: p^d pontos; a redução mod p é bijeção sobre F_p^d
    """
    _check_odd_prime(p)
    if A is None:
        A = default_skew_matrix(p, d)
    elif not isinstance(A, SkewMatrix):
        A = SkewMatrix(p, d, tuple(tuple(row) for row in A))
    if A.p != p or A.d != d:
        raise DimensionMismatchError(f"Matriz definida para (p={A.p}, d={A.d}), esperado ({p}, {d})")
    check_budget('max_points', p ** d, max_points)

    grid = np.indices((p,) * d).reshape(d, -1).T
    points = (grid + p * ((grid @ A.as_array().T) % p)) % (p * p)
    return PointSet.build(p * p, d, points.tolist())


def canonical_lift(p: int, d: int, max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """{0..p-1}^d dentro de Z_{p^2}^d (construção skew com A = 0)."""
    zero = SkewMatrix(p, d, tuple((0,) * d for _ in range(d)))
    return appendix_b_set(p, d, zero, max_points=max_points)


def submodule_coset(m, d: int, K: int, v: Sequence[int],
                    max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """
    Coset completo v + Ann(K)^d, com K^d pontos

    Raises:
        InvalidDivisorError: K não divide n ou K = 1
    """
    m = m if isinstance(m, Modulus) else factorize(m)
    if K == 1:
        raise InvalidDivisorError("K = 1 dá o coset trivial {v}")
    ann = annihilator_submodule(K, m)
    v = tuple(v)
    if len(v) != d:
        raise DimensionMismatchError(f"v={v} não tem dimensão {d}")
    check_budget('max_points', ann.size ** d, max_points)
    elements = ann.elements()
    return PointSet.build(m, d, (
        tuple(c + s for c, s in zip(v, shift)) for shift in product(elements, repeat=d)
    ))


def random_set(m, d: int, size: int, seed: int,
               max_points: int = DEFAULT_BUDGETS['max_points']) -> PointSet:
    """
    Amostra uniforme sem repetição, determinada pela seed

    Algoritmo fixo: numpy.random.default_rng(seed); sorteia um vetor por
    vez com rng.integers(0, n, size=d) e descarta os já vistos, até ter
    size pontos.

    Raises:
        EmptySetError: size < 1
        InvalidParameterError: size > n^d
    """
    m = m if isinstance(m, Modulus) else factorize(m)
    if size < 1:
        raise EmptySetError("Conjuntos vazios não são gerados")
    if size > m.n ** d:
        raise InvalidParameterError(f"size={size} maior que n^d={m.n ** d}")
    check_budget('max_points', size, max_points)
    rng = np.random.default_rng(seed)
    seen = set()
    while len(seen) < size:
        seen.add(tuple(int(c) for c in rng.integers(0, m.n, size=d)))
    return PointSet.build(m, d, seen)


def random_skew_matrix(p: int, d: int, seed: int) -> SkewMatrix:
    """
    Triângulo superior uniforme em F_p, refletido com sinal trocado;
    sorteia de novo enquanto sair a matriz nula.
    """
    _check_odd_prime(p)
    if d < 2:
        raise InvalidParameterError("Matriz antissimétrica não nula exige d >= 2")
    rng = np.random.default_rng(seed)
    upper = np.triu_indices(d, k=1)
    while True:
        entries = np.zeros((d, d), dtype=np.int64)
        entries[upper] = rng.integers(0, p, size=len(upper[0]))
        if entries.any():
            break
    entries = (entries - entries.T) % p
    return SkewMatrix(p, d, tuple(tuple(int(c) for c in row) for row in entries))


def random_local_set(q: int, d: int, size: int, seed: int) -> LocalSet:
    E = random_set(q, d, size, seed)
    return LocalSet.from_points(q, d, E.points)


def random_product_set(m, d: int, sizes, seed: int) -> Tuple[PointSet, List[LocalSet]]:
    """
    A_1 x ... x A_r com A_i aleatório de tamanho sizes[i] em Z_{q_i}^d

    Args:
        sizes: Lista alinhada a m.prime_powers ou dict q -> tamanho
        seed: A componente i usa seed + i
    """
    m = m if isinstance(m, Modulus) else factorize(m)
    if isinstance(sizes, dict):
        sizes = [sizes[q] for q in m.prime_powers]
    if len(sizes) != len(m.prime_powers):
        raise InvalidParameterError(f"Esperados {len(m.prime_powers)} tamanhos, recebidos {len(sizes)}")
    locals_ = [
        random_local_set(q, d, size, seed + i)
        for i, (q, size) in enumerate(zip(m.prime_powers, sizes))
    ]
    return product_set(locals_), locals_
