"""Aritmética exata em Z_n: fatoração, divisores, CRT e anuladores

Todos os resíduos ficam reduzidos em [0, n). Nenhuma conta usa ponto
flutuante.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from sympy import divisors as sympy_divisors
from sympy import factorint
from sympy.ntheory.modular import crt

from znfal.exceptions import InvalidDivisorError, InvalidModulusError

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class Modulus:
    """
    Módulo n >= 2 com sua fatoração (p, a) em primos crescentes.

    Cada componente primária é mantida como Z_{p^a}, sem dividir mais,
    para que o caso p^2 continue representável.
    """
    n: int
    factorization: Tuple[Tuple[int, int], ...]
    squarefree: bool

    def __post_init__(self):
        product = 1
        for p, a in self.factorization:
            product *= p ** a
        if product != self.n:
            raise InvalidModulusError(f"Fatoração não reproduz n={self.n}")
        primes = [p for p, _ in self.factorization]
        if primes != sorted(set(primes)):
            raise InvalidModulusError("Primos da fatoração devem ser estritamente crescentes")
        if self.squarefree != all(a == 1 for _, a in self.factorization):
            raise InvalidModulusError("Flag squarefree inconsistente com a fatoração")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def prime_powers(self) -> Tuple[int, ...]:
        """Componentes q = p^a com p^a || n, na ordem dos primos."""
        return tuple(p ** a for p, a in self.factorization)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    def reduce(self, x: int) -> int:
        return x % self.n

    def reduce_vector(self, coords) -> Vector:
        return tuple(int(c) % self.n for c in coords)


@dataclass(frozen=True)
class SubmoduleSpec:
    """
    Ann(K) = {x em Z_n : K x = 0} = m Z_n, com m = n / K, por coordenada.
    """
    n: int
    K: int
    generator: int

    @property
    def size(self) -> int:
        """Número de elementos de Ann(K) em Z_n (igual a K)."""
        return self.n // self.generator

    def contains(self, x: int) -> bool:
        return x % self.n % self.generator == 0

    def contains_vector(self, vector) -> bool:
        return all(self.contains(c) for c in vector)

    def elements(self) -> Tuple[int, ...]:
        return tuple(range(0, self.n, self.generator))

    @property
    def description(self) -> str:
        return f"Ann({self.K}) = {self.generator}·Z_{self.n}"


def factorize(n) -> Modulus:
    """
    Fatora n e devolve o Modulus correspondente

    Args:
        n: Inteiro >= 2

    Returns:
        Modulus: n com fatoração ordenada e flag squarefree

    Raises:
        InvalidModulusError: n não é inteiro ou é menor que 2
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidModulusError(f"Módulo deve ser inteiro, recebido {n!r}")
    if n < 2:
        raise InvalidModulusError(f"Módulo deve ser >= 2, recebido {n}")
    return _factorize(n)


@lru_cache(maxsize=256)
def _factorize(n: int) -> Modulus:
    factors = tuple(sorted((int(p), int(a)) for p, a in factorint(n).items()))
    return Modulus(n=n, factorization=factors, squarefree=all(a == 1 for _, a in factors))


def divisors(m: Modulus):
    """D(n): todos os divisores de n em ordem crescente, incluindo 1 e n."""
    return [int(k) for k in sympy_divisors(m.n)]


def proper_divisors(m: Modulus):
    """Divisores k com 1 < k < n."""
    return [k for k in divisors(m) if 1 < k < m.n]


def crt_split(x: int, m: Modulus) -> Tuple[int, ...]:
    """Componentes de x módulo cada p^a || n."""
    x = x % m.n
    return tuple(x % q for q in m.prime_powers)


def crt_combine(residues, m: Modulus) -> int:
    """
    Inverso de crt_split: o único x em [0, n) com os resíduos dados

    Args:
        residues: Um resíduo por componente, na ordem de m.prime_powers
        m: Modulus

    Returns:
        int: x em [0, n)
    """
    residues = tuple(residues)
    if len(residues) != len(m.prime_powers):
        raise InvalidDivisorError(
            f"Esperados {len(m.prime_powers)} resíduos para n={m.n}, recebidos {len(residues)}"
        )
    if len(residues) == 1:
        return residues[0] % m.n
    result = crt(list(m.prime_powers), [int(r) for r in residues])
    return int(result[0]) % m.n


@lru_cache(maxsize=256)
def crt_basis(m: Modulus) -> Tuple[int, ...]:
    """
    Idempotentes e_i do CRT: e_i = 1 mod q_i e 0 nas demais componentes.

    x = sum(r_i * e_i) mod n combina resíduos sem chamar crt por ponto.
    """
    count = len(m.prime_powers)
    return tuple(
        crt_combine(tuple(1 if j == i else 0 for j in range(count)), m)
        for i in range(count)
    )


def combine_with_basis(residues, m: Modulus) -> int:
    basis = crt_basis(m)
    return sum(r * e for r, e in zip(residues, basis)) % m.n


def annihilator_submodule(K: int, m: Modulus) -> SubmoduleSpec:
    """
    Ann(K) como submódulo m' Z_n, m' = n / K

    Raises:
        InvalidDivisorError: K não divide n
    """
    if isinstance(K, bool) or not isinstance(K, int) or K < 1 or m.n % K:
        raise InvalidDivisorError(f"K={K} não divide n={m.n}")
    return SubmoduleSpec(n=m.n, K=K, generator=m.n // K)
