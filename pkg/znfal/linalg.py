"""Álgebra linear modular: F_p e Z_{p^a}

Matrizes são np.ndarray 2D de inteiros reduzidos. Para p^a < 2^31 os
produtos intermediários cabem em int64; acima disso usamos dtype=object
(inteiros Python).
"""
from typing import List, Optional, Tuple

import numpy as np
from sympy import multiplicity


def dtype_for(modulus: int):
    return np.int64 if modulus < (1 << 31) else object


def as_matrix(rows, ncols: int, modulus: int) -> np.ndarray:
    """Converte para matriz (linhas x ncols) reduzida mod modulus."""
    matrix = np.array(rows, dtype=dtype_for(modulus)).reshape(-1, ncols)
    return matrix % modulus


def rref_mod_p(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    Forma escalonada reduzida sobre F_p

    Args:
        matrix: Matriz 2D de inteiros
        p: Primo

    Returns:
        Tuple: (linhas não nulas da RREF, colunas pivô)
    """
    A = np.array(matrix, dtype=dtype_for(p)) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nonzero = np.nonzero(A[r:, c])[0]
        if not len(nonzero):
            continue
        i = r + int(nonzero[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        factors = A[:, c].copy()
        factors[r] = 0
        A = (A - np.outer(factors, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    return len(rref_mod_p(matrix, p)[1])


def nullspace_mod_p(matrix: np.ndarray, p: int) -> np.ndarray:
    """
    Base do núcleo à direita {x : M x = 0 mod p}, uma linha por vetor.

    Vetores em ordem crescente de coluna livre; cada um tem 1 na sua
    coluna livre e 0 nas demais livres.
    """
    ncols = matrix.shape[1]
    R, pivots = rref_mod_p(matrix, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=dtype_for(p))
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-R[i, f]) % p
    return basis


def solve_mod_p(matrix: np.ndarray, rhs, p: int) -> Optional[np.ndarray]:
    """Uma solução de M x = b mod p (livres = 0), ou None se inconsistente."""
    ncols = matrix.shape[1]
    rhs = np.array(rhs, dtype=dtype_for(p)).reshape(-1, 1)
    R, pivots = rref_mod_p(np.hstack([np.array(matrix, dtype=dtype_for(p)), rhs]), p)
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=dtype_for(p))
    for i, c in enumerate(pivots):
        x[c] = R[i, ncols]
    return x


def reduce_rows(R: np.ndarray, pivots: List[int], vectors: np.ndarray, p: int) -> np.ndarray:
    """Resto de cada linha de vectors contra a RREF (R, pivots); zero sse está no espaço."""
    V = np.array(vectors, dtype=dtype_for(p)) % p
    for i, c in enumerate(pivots):
        V = (V - np.outer(V[:, c], R[i])) % p
    return V


def kernel_mod_prime_power(matrix: np.ndarray, p: int, a: int) -> np.ndarray:
    """
    Geradores de {c : M c = 0 mod p^a} por descida p-ádica

    Se B gera o núcleo mod p, toda solução é c = B lam + p y; escrevendo
    M B = p W, a condição restante é [W | M] (lam; y) = 0 mod p^(a-1).
    O módulo resultante é gerado por B lam + p y e por p^(a-1) B.
    """
    ncols = matrix.shape[1]
    q = p ** a
    B = nullspace_mod_p(matrix, p)
    if a == 1:
        return B
    if not len(B):
        # núcleo mod p trivial: c = p y, com M y = 0 mod p^(a-1)
        inner = kernel_mod_prime_power(matrix % (q // p), p, a - 1)
        return as_matrix(inner.astype(object) * p, ncols, q)

    big = np.array(matrix, dtype=object)
    Bo = B.astype(object)
    W = (big.dot(Bo.T) // p) % (q // p)
    inner = kernel_mod_prime_power(np.hstack([W, big % (q // p)]).astype(dtype_for(q)), p, a - 1)
    k = len(B)
    gens = []
    for row in inner.astype(object):
        lam, y = row[:k], row[k:]
        gens.append((lam.dot(Bo) + p * y) % q)
    for b in Bo:
        gens.append((b * p ** (a - 1)) % q)
    return as_matrix(gens, ncols, q)


def howell_form(generators: np.ndarray, p: int, a: int) -> Tuple[np.ndarray, List[int]]:
    """
    Forma escalonada tipo Howell de um submódulo de (Z_{p^a})^N

    Cada linha tem pivô p^v na sua coluna, zeros antes, e as linhas
    acima têm entradas < p^v naquela coluna. Redução por essa forma
    decide pertinência ao submódulo.

    Returns:
        Tuple: (linhas, colunas pivô)
    """
    q = p ** a
    ncols = generators.shape[1]
    pool = np.array(generators, dtype=dtype_for(q)) % q
    rows, pivots = [], []
    for c in range(ncols):
        pool = pool[np.any(pool != 0, axis=1)]
        if not len(pool):
            break
        nonzero = np.nonzero(pool[:, c])[0]
        if not len(nonzero):
            continue
        valuations = [multiplicity(p, int(pool[i, c])) for i in nonzero]
        v = min(valuations)
        best = int(nonzero[valuations.index(v)])
        pv = p ** v
        unit = int(pool[best, c]) // pv
        row = (pool[best] * pow(unit, -1, q)) % q
        pool = np.delete(pool, best, axis=0)
        pool = (pool - np.outer(pool[:, c] // pv, row)) % q
        annihilated = (row * p ** (a - v)) % q
        if annihilated.any():
            pool = np.vstack([pool, annihilated.reshape(1, ncols)])
        rows.append(row)
        pivots.append(c)

    for j, c in enumerate(pivots):
        pv = rows[j][c]
        for i in range(j):
            rows[i] = (rows[i] - (rows[i][c] // pv) * rows[j]) % q
    return as_matrix(rows, ncols, q), pivots


def howell_remainder(rows: np.ndarray, pivots: List[int], vector, p: int, a: int):
    """
    Reduz vector contra a forma de Howell

    Returns:
        np.ndarray ou None: o resto, ou None quando uma entrada pivô não é
        múltipla do pivô (vector fora do submódulo)
    """
    q = p ** a
    v = np.array(vector, dtype=dtype_for(q)) % q
    for row, c in zip(rows, pivots):
        pv = row[c]
        if v[c] % pv:
            return None
        v = (v - (v[c] // pv) * row) % q
    return v


def in_module(rows: np.ndarray, pivots: List[int], vector, p: int, a: int) -> bool:
    remainder = howell_remainder(rows, pivots, vector, p, a)
    return remainder is not None and not remainder.any()
