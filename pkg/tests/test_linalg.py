"""
Testes para o módulo znfal.linalg
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from znfal.linalg import (
    as_matrix,
    dtype_for,
    howell_form,
    in_module,
    kernel_mod_prime_power,
    nullspace_mod_p,
    rank_mod_p,
    rref_mod_p,
    solve_mod_p,
)


class TestModP:
    """Testes para RREF, núcleo e sistemas sobre F_p"""

    def test_rref_dependent_rows(self):
        """Testa linha dependente descartada"""
        R, pivots = rref_mod_p(np.array([[1, 2], [2, 4]]), 5)

        assert R.tolist() == [[1, 2]]
        assert pivots == [0]
        assert rank_mod_p(np.array([[1, 2], [2, 4]]), 5) == 1

    def test_nullspace(self):
        """Testa núcleo de [1 2] mod 5: (3, 1)"""
        basis = nullspace_mod_p(np.array([[1, 2]]), 5)

        assert basis.tolist() == [[3, 1]]

    def test_solve(self):
        """Testa x + y = 3, x + 2y = 5 mod 7"""
        x = solve_mod_p(np.array([[1, 1], [1, 2]]), [3, 5], 7)

        assert x.tolist() == [1, 2]

    def test_solve_inconsistent(self):
        """Testa sistema sem solução"""
        assert solve_mod_p(np.array([[1, 1], [1, 1]]), [1, 2], 3) is None

    @settings(max_examples=50, deadline=None)
    @given(
        p=st.sampled_from([2, 3, 5, 7]),
        shape=st.tuples(st.integers(1, 5), st.integers(1, 5)),
        data=st.data(),
    )
    def test_nullspace_is_kernel(self, p, shape, data):
        """Propriedade: M b = 0 e dim núcleo = colunas - posto"""
        values = data.draw(st.lists(st.integers(0, p - 1), min_size=shape[0] * shape[1],
                                    max_size=shape[0] * shape[1]))
        M = np.array(values, dtype=np.int64).reshape(shape)
        basis = nullspace_mod_p(M, p)

        assert len(basis) == shape[1] - rank_mod_p(M, p)
        if len(basis):
            assert not ((M @ basis.T) % p).any()

    def test_large_modulus_uses_object_dtype(self):
        """Testa dtype object acima de 2^31"""
        assert dtype_for(7) is np.int64
        assert dtype_for((1 << 31) + 11) is object
        assert as_matrix([[1 << 40]], 1, (1 << 31) + 11).dtype == object


class TestPrimePower:
    """Testes para kernel_mod_prime_power e howell_form"""

    def test_kernel_of_p_mod_p_squared(self):
        """Testa {c : 3c = 0 mod 9} = 3 Z_9"""
        generators = kernel_mod_prime_power(np.array([[3]]), 3, 2)
        rows, pivots = howell_form(generators, 3, 2)

        assert rows.tolist() == [[3]]
        assert pivots == [0]
        assert in_module(rows, pivots, [6], 3, 2)
        assert not in_module(rows, pivots, [1], 3, 2)

    def test_howell_adds_annihilated_rows(self):
        """Testa <(2, 1)> em Z_4^2: 2 (2, 1) = (0, 2) precisa de linha própria"""
        rows, pivots = howell_form(np.array([[2, 1]]), 2, 2)

        assert rows.tolist() == [[2, 1], [0, 2]]
        assert pivots == [0, 1]
        assert in_module(rows, pivots, [0, 2], 2, 2)
        assert in_module(rows, pivots, [2, 3], 2, 2)
        assert not in_module(rows, pivots, [0, 1], 2, 2)
        assert not in_module(rows, pivots, [1, 0], 2, 2)

    @settings(max_examples=40, deadline=None)
    @given(
        pa=st.sampled_from([(2, 2), (2, 3), (3, 2)]),
        shape=st.tuples(st.integers(1, 4), st.integers(1, 3)),
        data=st.data(),
    )
    def test_kernel_is_complete(self, pa, shape, data):
        """Propriedade: todo c com M c = 0 mod p^a está no módulo gerado, e só esses"""
        p, a = pa
        q = p ** a
        values = data.draw(st.lists(st.integers(0, q - 1), min_size=shape[0] * shape[1],
                                    max_size=shape[0] * shape[1]))
        M = np.array(values, dtype=np.int64).reshape(shape)
        rows, pivots = howell_form(kernel_mod_prime_power(M, p, a), p, a)

        grid = np.indices((q,) * shape[1]).reshape(shape[1], -1).T
        for c in grid:
            in_kernel = not ((M @ c) % q).any()
            assert in_module(rows, pivots, c, p, a) == in_kernel
