"""
Testes para o módulo znfal.classify
"""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from znfal.classify import (
    StructureCertificate,
    affine_concentration,
    classify,
    coset_concentration,
    isotropy_check,
    isotropy_divisor,
    local_structure,
    nilpotent_layer,
    peel,
)
from znfal.constructions import appendix_b_set, submodule_coset
from znfal.crt_lifting import LocalSet
from znfal.exceptions import (
    HypothesisNotMetError,
    InvalidDivisorError,
    InvalidParameterError,
    InvariantViolationError,
)
from znfal.pointset import PointSet
from znfal.ring import factorize, proper_divisors

PLANTED_CASES = [
    (n, d, K) for n in (6, 30) for d in (1, 2) for K in proper_divisors(factorize(n))
]


@st.composite
def point_sets(draw, moduli=(12, 30, 36), max_size=8):
    n = draw(st.sampled_from(moduli))
    d = draw(st.integers(min_value=1, max_value=2))
    coords = st.tuples(*[st.integers(min_value=0, max_value=n - 1)] * d)
    points = draw(st.lists(coords, min_size=1, max_size=max_size, unique=True))
    return PointSet.build(n, d, points)


class TestCosetConcentration:
    """Testes para coset_concentration"""

    def test_six_points(self, six_point_set):
        """Testa alpha(K=2) = 1/2 e alpha(K=3) = 3/4"""
        assert coset_concentration(six_point_set, 2) == ((0, 0), Fraction(1, 2))
        assert coset_concentration(six_point_set, 3) == ((0, 0), Fraction(3, 4))

    def test_k_equal_n_is_whole_space(self, six_point_set):
        """Testa K = n: Ann(n) = Z_n, alpha = 1"""
        assert coset_concentration(six_point_set, 6) == ((0, 0), Fraction(1))

    @pytest.mark.parametrize("K", [1, 4, 0])
    def test_invalid_k(self, six_point_set, K):
        """Testa K = 1 e K que não divide n"""
        with pytest.raises(InvalidDivisorError):
            coset_concentration(six_point_set, K)

    def test_tie_breaks_on_smallest_v(self):
        """Testa empate: menor representante"""
        E = PointSet.build(6, 1, [(1,), (2,)])

        assert coset_concentration(E, 2) == ((1,), Fraction(1, 2))


class TestIsotropy:
    """Testes para isotropy_check e isotropy_divisor"""

    def test_coset_is_isotropic_mod_3(self, coset_set):
        """Testa Delta = {0, 3}: isotrópico mod 3, não mod 2"""
        assert isotropy_check(coset_set, 3) is True
        assert isotropy_check(coset_set, 2) is False
        assert isotropy_divisor(coset_set) == 3

    def test_singleton_is_vacuously_isotropic(self):
        """Testa |S| = 1"""
        S = PointSet.build(12, 2, [(1, 1)])

        assert isotropy_check(S, 2) is True
        assert isotropy_divisor(S) == 6

    def test_invalid_k(self, coset_set):
        """Testa k = n"""
        with pytest.raises(InvalidDivisorError):
            isotropy_check(coset_set, 6)

    @settings(max_examples=60, deadline=None)
    @given(S=point_sets())
    def test_isotropy_passes_to_divisors(self, S):
        """Propriedade: isotrópico mod k implica isotrópico mod todo k' | k com k' > 1"""
        proper = proper_divisors(S.modulus)
        holds = {k for k in proper if isotropy_check(S, k)}

        for k in holds:
            assert all(k2 in holds for k2 in proper if k % k2 == 0)
        assert isotropy_divisor(S) == (max(holds) if holds else None)


class TestAffineConcentration:
    """Testes para affine_concentration"""

    @pytest.fixture
    def diagonal(self):
        """Três pontos na diagonal de F_3^2 e um fora"""
        return LocalSet.from_points(3, 2, [(0, 0), (1, 1), (2, 2), (0, 1)])

    def test_best_line(self, diagonal):
        """Testa reta {x = y} com 3 dos 4 pontos"""
        summary = affine_concentration(diagonal)

        assert summary.count == 3
        assert summary.subspace_dim == 1
        assert summary.basis == ((1, 1),)
        assert summary.offset == (0, 0)
        assert summary.fraction == Fraction(3, 4)
        assert summary.truncated is False
        assert summary.evaluations == 40

    def test_budget_truncates(self, diagonal):
        """Testa orçamento cumulativo: devolve o melhor até ali"""
        summary = affine_concentration(diagonal, budget=10)

        assert summary.truncated is True
        assert summary.subspace_dim == 0
        assert summary.count == 1
        assert summary.evaluations == 8

    def test_invalid_max_dim(self, diagonal):
        """Testa max_dim > d"""
        with pytest.raises(InvalidParameterError):
            affine_concentration(diagonal, max_dim=3)

    def test_local_structure_keys(self, six_point_set):
        """Testa um resumo por componente primária"""
        assert set(local_structure(six_point_set)) == {2, 3}


class TestClassify:
    """Testes para classify e peel"""

    def test_six_points(self, six_point_set):
        """Testa certificado K = 3, v = (0, 0), alpha = 3/4, isotrópico mod 2"""
        certificate = classify(six_point_set)

        assert certificate.K == 3
        assert certificate.m == 2
        assert certificate.v == (0, 0)
        assert certificate.alpha == Fraction(3, 4)
        assert certificate.support_size == 3
        assert certificate.isotropy_divisor == 2
        assert set(certificate.local_summaries) == {2, 3}
        assert certificate.validate(six_point_set) is True

    def test_planted_coset_recovered(self, coset_set):
        """Testa coset completo: K = 2, alpha = 1"""
        certificate = classify(coset_set, local=False)

        assert (certificate.K, certificate.v, certificate.alpha) == (2, (0, 0), Fraction(1))
        assert certificate.isotropy_divisor == 3
        assert certificate.local_summaries == {}
        assert certificate.coset_points() == list(coset_set.points)

    def test_planted_coset_with_noise(self):
        """Testa coset de Ann(5)^2 em Z_30^2 mais dois pontos fora"""
        coset = submodule_coset(30, 2, 5, (1, 2))
        E = PointSet.build(30, 2, list(coset.points) + [(0, 0), (4, 4)])

        certificate = classify(E, local=False)

        assert certificate.K == 5
        assert certificate.v == (1, 2)
        assert certificate.alpha == Fraction(25, 27)

    @pytest.mark.parametrize("n, d, K", PLANTED_CASES)
    def test_planted_coset_recovered_for_every_divisor(self, n, d, K):
        """Testa coset completo v + Ann(K)^d para todo 1 < K < n com cinco v sorteados"""
        for seed in range(5):
            rng = np.random.default_rng(seed)
            v = tuple(int(c) for c in rng.integers(0, n, size=d))
            E = submodule_coset(n, d, K, v)

            certificate = classify(E, local=False)

            assert certificate.K == K
            assert certificate.alpha == 1
            assert certificate.coset_points() == list(E.points)
            assert certificate.isotropy_divisor is not None
            assert certificate.validate(E) is True

    def test_translated_planted_coset(self):
        """Testa E + w: mesmo K e alpha, v transladado mod m e coset transladado"""
        coset = submodule_coset(30, 2, 5, (1, 2))
        E = PointSet.build(30, 2, list(coset.points) + [(0, 0), (4, 4)])
        w = (7, 11)

        certificate = classify(E.translate(w), local=False)

        assert certificate.K == 5
        assert certificate.v == (2, 1)
        assert certificate.alpha == Fraction(25, 27)
        assert certificate.coset_points() == list(coset.translate(w).points)

    @settings(max_examples=40, deadline=None)
    @given(E=point_sets(), data=st.data())
    def test_translation_equivariance(self, E, data):
        """Propriedade: E e E + w têm mesmo K e alpha; o coset transladado é um maximizador"""
        w = data.draw(st.tuples(*[st.integers(min_value=0, max_value=E.n - 1)] * E.d))
        moved = E.translate(w)

        c1 = classify(E, require_isotropy=False, local=False)
        c2 = classify(moved, require_isotropy=False, local=False)

        assert (c1 is None) == (c2 is None)
        if c1 is None:
            return
        assert (c1.K, c1.alpha) == (c2.K, c2.alpha)
        shifted = tuple((c + s) % c1.m for c, s in zip(c1.v, w))
        in_shifted = moved.subset(lambda point: tuple(c % c1.m for c in point) == shifted)
        assert in_shifted.size == c2.support_size

    def test_skew_set_is_unstructured(self, skew_set, lift_set):
        """Testa que a construção skew e o levantamento canônico não concentram em cosets"""
        assert classify(skew_set) is None
        assert classify(lift_set) is None

    def test_alpha_min(self, six_point_set):
        """Testa alpha_min acima de 3/4"""
        assert classify(six_point_set, alpha_min='4/5') is None

    def test_threads(self, six_point_set):
        """Testa mesma escolha com avaliação paralela"""
        assert classify(six_point_set, threads=4) == classify(six_point_set)

    def test_peel(self, six_point_set):
        """Testa extração gulosa: K = 3 e depois o ponto (3, 0)"""
        certificates, rest = peel(six_point_set, local=False)

        assert [c.K for c in certificates] == [3, 2]
        assert certificates[1].support_size == 1
        assert certificates[1].alpha == Fraction(1)
        assert rest.size == 0

    def test_peel_max_rounds(self, six_point_set):
        """Testa limite de rodadas"""
        certificates, rest = peel(six_point_set, max_rounds=1, local=False)

        assert len(certificates) == 1
        assert rest.points == ((3, 0),)


class TestCertificate:
    """Testes para StructureCertificate"""

    def test_validate_detects_wrong_alpha(self, six_point_set):
        """Testa certificado adulterado"""
        certificate = StructureCertificate(
            n=6, d=2, K=3, v=(0, 0), alpha=Fraction(1, 2), support_size=3, isotropy_divisor=2
        )

        with pytest.raises(InvariantViolationError):
            certificate.validate(six_point_set)

    def test_validate_detects_wrong_isotropy(self, six_point_set):
        """Testa divisor de isotropia falso"""
        certificate = StructureCertificate(
            n=6, d=2, K=3, v=(0, 0), alpha=Fraction(3, 4), support_size=3, isotropy_divisor=3
        )

        with pytest.raises(InvariantViolationError):
            certificate.validate(six_point_set)

    def test_invalid_fields(self):
        """Testa K inválido e v não reduzido"""
        with pytest.raises(InvalidDivisorError):
            StructureCertificate(n=6, d=1, K=4, v=(0,), alpha=Fraction(1), support_size=1)
        with pytest.raises(InvalidParameterError):
            StructureCertificate(n=6, d=1, K=3, v=(2,), alpha=Fraction(1), support_size=1)


class TestNilpotentLayer:
    """Testes para nilpotent_layer"""

    def test_recovers_skew_matrix(self, skew_set):
        """Testa que a camada p Z_9 é A x com A = [[0, 1], [2, 0]]"""
        layer = nilpotent_layer(skew_set)

        assert layer.p == 3
        assert layer.residue_count == 9
        assert layer.bijective is True
        assert layer.linear is True
        assert layer.matrix == ((0, 1), (2, 0))
        assert layer.skew is True

    def test_canonical_lift_has_zero_layer(self, lift_set):
        """Testa A = 0 no levantamento canônico"""
        layer = nilpotent_layer(lift_set)

        assert layer.matrix == ((0, 0), (0, 0))

    def test_random_skew_matrix_recovered(self):
        """Testa matriz 3x3 mod 5"""
        A = ((0, 2, 1), (3, 0, 4), (4, 1, 0))

        assert nilpotent_layer(appendix_b_set(5, 3, A)).matrix == A

    def test_non_linear_layer(self):
        """Testa camada que não é linear no resíduo"""
        E = PointSet.build(9, 1, [(0,), (1,), (5,)])

        layer = nilpotent_layer(E)

        assert layer.linear is False
        assert layer.matrix is None

    def test_requires_p_squared(self, six_point_set):
        """Testa n = 6"""
        with pytest.raises(HypothesisNotMetError):
            nilpotent_layer(six_point_set)
