"""
Configuração de fixtures e setup para testes do zn-falconer
"""
import json
import pytest
from unittest.mock import Mock

from znfal.constructions import appendix_b_set, canonical_lift, example_2_3, submodule_coset
from znfal.reports import dump_pointset


@pytest.fixture
def mock_logger():
    """Mock do logger para testes"""
    logger = Mock()
    logger.info = Mock()
    logger.debug = Mock()
    logger.warning = Mock()
    logger.error = Mock()
    return logger


@pytest.fixture
def six_point_set():
    """E = {(0,0), (2,0), (3,0), (0,2)} em Z_6^2"""
    return example_2_3()


@pytest.fixture
def skew_set():
    """Construção skew com p = 3, d = 2 e A = [[0, 1], [2, 0]]"""
    return appendix_b_set(3, 2)


@pytest.fixture
def lift_set():
    """{0, 1, 2}^2 dentro de Z_9^2"""
    return canonical_lift(3, 2)


@pytest.fixture
def coset_set():
    """Coset completo (0,0) + Ann(2)^2 em Z_6^2"""
    return submodule_coset(6, 2, 2, (0, 0))


@pytest.fixture
def pointset_file(tmp_path):
    """Grava um PointSet em arquivo temporário e devolve o caminho"""
    def write(E, name='points.json'):
        path = tmp_path / name
        path.write_text(dump_pointset(E), encoding='utf-8')
        return str(path)
    return write


@pytest.fixture
def raw_pointset_file(tmp_path):
    """Grava um payload arbitrário (possivelmente inválido)"""
    def write(payload, name='raw.json'):
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload)
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write
