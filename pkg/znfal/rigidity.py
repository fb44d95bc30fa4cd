"""Polinômios anuladores, espaço de anulamento e identidades da construção skew

Polinômios têm coeficientes reduzidos mod n. Monômios seguem a ordem
lexicográfica graduada (grau total, depois expoentes), fixa em todo o
pacote. "Grau" é sempre grau total.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import isprime

from znfal.config import DEFAULT_BUDGETS, Deadline, check_budget
from znfal.energy import distance_set, pair_distance_blocks
from znfal.exceptions import (
    DimensionMismatchError,
    EmptySetError,
    InvalidParameterError,
    InvariantViolationError,
)
from znfal.linalg import dtype_for, howell_form, in_module, kernel_mod_prime_power
from znfal.pointset import PointSet
from znfal.ring import Modulus, crt_basis, factorize

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def _modulus(n) -> Modulus:
    return n if isinstance(n, Modulus) else factorize(n)


@dataclass(frozen=True)
class UnivariatePoly:
    """Coeficientes mod n em grau crescente; () é o polinômio nulo."""
    n: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = [c % self.n for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, 'coefficients', tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def __call__(self, t: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = (value * t + c) % self.n
        return value

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        """Horner vetorizado mod n."""
        values = np.asarray(values, dtype=dtype_for(self.n)) % self.n
        result = np.zeros_like(values)
        for c in reversed(self.coefficients):
            result = (result * values + c) % self.n
        return result


@dataclass(frozen=True)
class MultivariatePoly:
    """Mapa expoente -> coeficiente mod n, sem coeficientes nulos."""
    n: int
    arity: int
    terms: Dict[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        terms = {}
        for exponent, coefficient in self.terms.items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != self.arity or any(e < 0 for e in exponent):
                raise DimensionMismatchError(f"Expoente {exponent} incompatível com aridade {self.arity}")
            coefficient = int(coefficient) % self.n
            if coefficient:
                terms[exponent] = coefficient
        object.__setattr__(self, 'terms', terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def to_pairs(self) -> List[Tuple[Exponent, int]]:
        """Serialização em ordem grlex."""
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def __call__(self, point) -> int:
        if len(point) != self.arity:
            raise DimensionMismatchError(f"Ponto {point} tem aridade diferente de {self.arity}")
        total = 0
        for exponent, coefficient in self.terms.items():
            term = coefficient
            for x, e in zip(point, exponent):
                term = term * pow(int(x), e, self.n) % self.n
            total += term
        return total % self.n

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Avalia em cada linha de points (N x arity), mod n."""
        points = np.asarray(points, dtype=dtype_for(self.n)).reshape(-1, self.arity) % self.n
        result = np.zeros(len(points), dtype=points.dtype)
        for exponent, coefficient in self.terms.items():
            term = np.full(len(points), coefficient, dtype=points.dtype)
            for i, e in enumerate(exponent):
                for _ in range(e):
                    term = (term * points[:, i]) % self.n
            result = (result + term) % self.n
        return result


@dataclass(frozen=True)
class ComponentEchelon:
    q: int
    p: int
    a: int
    rows: np.ndarray
    pivots: Tuple[int, ...]


@dataclass(frozen=True)
class VanishingBasis:
    """
    Polinômios de grau total <= D que se anulam mod n em todo ponto de E.

    size_flag indica |E| > D^d; local_flags[p] indica |E_p|^2 > D p. São
    exibidos, não impostos.
    """
    n: int
    d: int
    D: int
    monomials: Tuple[Exponent, ...]
    polynomials: Tuple[MultivariatePoly, ...]
    complete: bool
    warnings: Tuple[str, ...] = ()
    size_flag: bool = False
    local_flags: Dict[int, bool] = field(default_factory=dict)
    components: Tuple[ComponentEchelon, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.polynomials

    def contains(self, F: MultivariatePoly) -> bool:
        """Pertinência de F ao módulo gerado, por redução em cada componente primária."""
        if F.n != self.n or F.arity != self.d:
            raise DimensionMismatchError("Polinômio incompatível com a base")
        index = {mono: i for i, mono in enumerate(self.monomials)}
        if any(mono not in index for mono in F.terms):
            return False
        vector = [0] * len(self.monomials)
        for mono, c in F.terms.items():
            vector[index[mono]] = c
        return all(
            in_module(comp.rows, list(comp.pivots), [c % comp.q for c in vector], comp.p, comp.a)
            for comp in self.components
        )


@dataclass(frozen=True)
class SchwartzZippelReport:
    degree: int
    p: int
    sample_size: int
    bound: Fraction
    observed: Fraction
    exact: Optional[Fraction]
    zero_polynomial: bool

    @property
    def within_slack(self) -> bool:
        """observed <= bound + 3 desvios padrão, comparado sem raízes: (obs - b)^2 <= 9 b (1 - b) / N."""
        if self.zero_polynomial or self.observed <= self.bound:
            return True
        b = min(self.bound, Fraction(1))
        excess = self.observed - b
        return excess * excess * self.sample_size <= 9 * b * (1 - b)


def _grlex_key(exponent: Exponent):
    return (sum(exponent), exponent)


def monomials(d: int, D: int, budget: int = DEFAULT_BUDGETS['monomial_budget']) -> List[Exponent]:
    """
    Expoentes de grau total <= D em d variáveis, em ordem grlex crescente

    Raises:
        BudgetExceededError: C(D + d, d) acima do orçamento
    """
    if D < 0 or d < 1:
        raise InvalidParameterError(f"Grau D={D} e dimensão d={d} inválidos")
    check_budget('monomial_budget', comb(D + d, d), budget)

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    result = [e for degree in range(D + 1) for e in compositions(degree, d)]
    return sorted(result, key=_grlex_key)


def annihilator_poly(S, n) -> UnivariatePoly:
    """
    Q(T) = prod_{s em S} (T - s) mod n

    Raises:
        EmptySetError: S vazio
    """
    m = _modulus(n)
    residues = sorted({int(s) % m.n for s in S})
    if not residues:
        raise EmptySetError("Conjunto de resíduos vazio")
    root = [1]
    for s in residues:
        root.insert(0, 0)
        for j in range(len(root) - 1):
            root[j] = (root[j] - root[j + 1] * s) % m.n
    return UnivariatePoly(m.n, tuple(root))


def distance_form(n, d: int) -> MultivariatePoly:
    """P(x, y) = ||x - y||^2 em 2d variáveis (x_1..x_d, y_1..y_d)."""
    m = _modulus(n)
    terms: Dict[Exponent, int] = {}

    def unit(i, power=1):
        e = [0] * (2 * d)
        e[i] = power
        return tuple(e)

    for i in range(d):
        terms[unit(i, 2)] = terms.get(unit(i, 2), 0) + 1
        terms[unit(d + i, 2)] = terms.get(unit(d + i, 2), 0) + 1
        cross = [0] * (2 * d)
        cross[i] = cross[d + i] = 1
        terms[tuple(cross)] = terms.get(tuple(cross), 0) - 2
    return MultivariatePoly(m.n, 2 * d, terms)


def psi_vanishing_check(E: PointSet, threads: int = 1) -> bool:
    """
    Psi(x, y) = Q(||x - y||^2) = 0 mod n para todo par ordenado de E

    Q é o anulador de Delta(E); Psi é avaliado ponto a ponto, nunca expandido.
    """
    Q = annihilator_poly(distance_set(E, threads), E.modulus)
    for block in pair_distance_blocks(E):
        if Q.evaluate_array(block).any():
            return False
    return True


def _evaluation_matrix(E: PointSet, monos: List[Exponent], modulus: int) -> np.ndarray:
    """V[i, j] = z_i^{e_j} mod modulus."""
    dtype = dtype_for(modulus)
    pts = np.array(E.points, dtype=dtype).reshape(E.size, E.d) % modulus
    top = max((max(e) for e in monos), default=0)
    powers = [np.ones_like(pts)]
    for _ in range(top):
        powers.append((powers[-1] * pts) % modulus)
    V = np.ones((E.size, len(monos)), dtype=dtype)
    for j, exponent in enumerate(monos):
        for i, e in enumerate(exponent):
            if e:
                V[:, j] = (V[:, j] * powers[e][:, i]) % modulus
    return V


def vanishing_space(E: PointSet, D: int, budget: int = DEFAULT_BUDGETS['monomial_budget'],
                    deadline: Optional[Deadline] = None) -> VanishingBasis:
    """
    Todos os polinômios de grau total <= D que se anulam em E mod n

    Em cada componente q = p^a: núcleo da matriz de avaliação por descida
    p-ádica e forma de Howell; componentes são recombinadas por CRT com
    zeros nas demais.

    Args:
        E: Conjunto não vazio
        D: Grau total máximo
        budget: Limite de monômios
        deadline: Prazo suave; se expirar entre componentes, complete=False

    Returns:
        VanishingBasis
    """
    if E.size == 0:
        raise EmptySetError("Conjunto de pontos vazio")
    monos = monomials(E.d, D, budget)
    m = E.modulus
    idempotents = crt_basis(m)

    warnings = []
    local_flags = {}
    for p, a in m.factorization:
        if D >= p:
            warnings.append(
                f"D={D} >= p={p}: polinômios identicamente nulos em F_{p}^{E.d} entram na base"
            )
        local_size = len({tuple(c % p for c in point) for point in E.points})
        local_flags[p] = local_size ** 2 > D * p
    for message in warnings:
        logger.warning(message)

    polynomials = []
    components = []
    complete = True
    for (p, a), q, e in zip(m.factorization, m.prime_powers, idempotents):
        if deadline is not None and deadline.expired():
            logger.warning(f"Prazo esgotado antes da componente q={q}; base parcial")
            complete = False
            break
        V = _evaluation_matrix(E, monos, q)
        generators = kernel_mod_prime_power(V, p, a)
        rows, pivots = howell_form(generators, p, a)
        logger.debug(f"q={q}: {len(monos)} monômios, {len(rows)} geradores na forma de Howell")
        components.append(ComponentEchelon(q=q, p=p, a=a, rows=rows, pivots=tuple(pivots)))
        for row in rows:
            terms = {mono: int(c) * e for mono, c in zip(monos, row) if int(c)}
            polynomials.append(MultivariatePoly(m.n, E.d, terms))

    if polynomials:
        V = _evaluation_matrix(E, monos, m.n)
        index = {mono: i for i, mono in enumerate(monos)}
        for F in polynomials:
            coefficients = np.zeros(len(monos), dtype=V.dtype)
            for mono, c in F.terms.items():
                coefficients[index[mono]] = c
            if (((V * coefficients[None, :]) % m.n).sum(axis=1) % m.n).any():
                raise InvariantViolationError("Polinômio da base não se anula em E")

    return VanishingBasis(
        n=m.n,
        d=E.d,
        D=D,
        monomials=tuple(monos),
        polynomials=tuple(polynomials),
        complete=complete,
        warnings=tuple(warnings),
        size_flag=E.size > D ** E.d,
        local_flags=local_flags,
        components=tuple(components),
    )


def random_polynomial(p: int, arity: int, D: int, seed: int) -> MultivariatePoly:
    """Polinômio uniforme de grau total exatamente D sobre F_p (coeficiente líder não nulo)."""
    if not isprime(p):
        raise InvalidParameterError(f"p={p} não é primo")
    rng = np.random.default_rng(seed)
    monos = monomials(arity, D)
    coefficients = [int(c) for c in rng.integers(0, p, size=len(monos))]
    coefficients[-1] = int(rng.integers(1, p))
    return MultivariatePoly(p, arity, dict(zip(monos, coefficients)))


def schwartz_zippel_report(D: int, p: int, sample_size: int, seed: int = 0,
                           poly: Optional[MultivariatePoly] = None, arity: int = 2,
                           exhaustive_limit: int = DEFAULT_BUDGETS['exhaustive_limit']) -> SchwartzZippelReport:
    """
    Fração empírica de zeros de um polinômio sobre F_p ao lado da cota D/p

    Quando p^arity <= exhaustive_limit também reporta a fração exata.
    """
    if not isprime(p):
        raise InvalidParameterError(f"p={p} não é primo")
    if sample_size < 1:
        raise InvalidParameterError("sample_size deve ser positivo")
    if poly is None:
        poly = random_polynomial(p, arity, D, seed)
    elif poly.n != p:
        raise InvalidParameterError(f"Polinômio definido mod {poly.n}, esperado mod {p}")

    rng = np.random.default_rng(seed)
    sample = rng.integers(0, p, size=(sample_size, poly.arity))
    zeros = int(np.count_nonzero(poly.evaluate_array(sample) == 0))

    exact = None
    if p ** poly.arity <= exhaustive_limit:
        grid = np.indices((p,) * poly.arity).reshape(poly.arity, -1).T
        exact = Fraction(int(np.count_nonzero(poly.evaluate_array(grid) == 0)), p ** poly.arity)

    return SchwartzZippelReport(
        degree=D,
        p=p,
        sample_size=sample_size,
        bound=Fraction(D, p),
        observed=Fraction(zeros, sample_size),
        exact=exact,
        zero_polynomial=poly.is_zero,
    )


def _check_odd_prime(p):
    if isinstance(p, bool) or not isinstance(p, int) or p == 2 or not isprime(p):
        raise InvalidParameterError(f"p={p} deve ser primo ímpar")


def b_construction_identity_checks(p: int, A, exhaustive_limit: int = DEFAULT_BUDGETS['exhaustive_limit'],
                                   samples: int = 10_000, seed: int = 0):
    """
    Identidades da construção E = {x + pAx}

    Verifica (i) A^T = -A mod p; (ii) <v, Av> = 0 mod p para todo v em F_p^d;
    (iii) ||X - Y||^2 = ||x - y||^2 mod p^2 com X = x + pAx. (ii) e (iii) são
    exaustivos dentro de exhaustive_limit, senão amostrados com seed fixa.

    Returns:
        dict: booleanos de cada verificação e se foram exaustivas
    """
    _check_odd_prime(p)
    A = np.array(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatchError(f"A deve ser quadrada, recebida com forma {A.shape}")
    A = A % p
    d = A.shape[0]
    q = p * p
    rng = np.random.default_rng(seed)

    exhaustive_form = p ** d <= exhaustive_limit
    if exhaustive_form:
        vectors = np.indices((p,) * d).reshape(d, -1).T
    else:
        vectors = rng.integers(0, p, size=(samples, d))
    form_values = (vectors * ((vectors @ A.T) % p)).sum(axis=1) % p

    exhaustive_pairs = p ** (2 * d) <= exhaustive_limit
    if exhaustive_pairs:
        grid = np.indices((p,) * d).reshape(d, -1).T
        left = np.repeat(grid, len(grid), axis=0)
        right = np.tile(grid, (len(grid), 1))
    else:
        left = rng.integers(0, p, size=(samples, d))
        right = rng.integers(0, p, size=(samples, d))

    def lift(x):
        return (x + p * ((x @ A.T) % p)) % q

    base = ((left - right) ** 2).sum(axis=1) % q
    lifted = ((lift(left) - lift(right)) ** 2).sum(axis=1) % q

    return {
        'p': p,
        'd': d,
        'skew': bool(((A + A.T) % p == 0).all()),
        'quadratic_form_zero': bool((form_values == 0).all()),
        'cross_term': bool((base == lifted).all()),
        'exhaustive_form': exhaustive_form,
        'exhaustive_pairs': exhaustive_pairs,
        'pairs_checked': int(len(left)),
    }


def ideal_identity_check(p: int):
    """
    p Q(t) = 0 mod p^2 para todo t em Z_{p^2}, Q = prod_{a em F_p} (T - a)

    Também registra um t com Q(t) != 0 mod p^2: p Q é um elemento não
    trivial do ideal anulador.
    """
    _check_odd_prime(p)
    q = p * p
    Q = annihilator_poly(range(p), q)
    values = Q.evaluate_array(np.arange(q))
    nonzero = np.nonzero(values)[0]
    return {
        'p': p,
        'degree': Q.degree,
        'holds': bool(((p * values) % q == 0).all()),
        'witness': int(nonzero[0]) if len(nonzero) else None,
    }
