"""
Testes para o módulo znfal.reports
"""
import json
from fractions import Fraction

import numpy as np
import pytest

from znfal.classify import classify
from znfal.exceptions import DuplicatePointError, PointSetFormatError
from znfal.pointset import PointSet
from znfal.reports import (
    REPORT_SCHEMA,
    certificate_from_dict,
    certificate_to_dict,
    dump_pointset,
    dumps,
    input_digest,
    load_pointset,
    parse_pointset,
    parse_report,
    render,
    report_payload,
    vanishing_to_dict,
)
from znfal.rigidity import vanishing_space


class TestRender:
    """Testes para render e dumps"""

    def test_exact_values(self):
        """Testa int -> str, Fraction -> 'a/b', bool e None preservados"""
        rendered = render({1: Fraction(1, 2), 'a': [True, None, 3, np.int64(5)], 'b': Fraction(4)})

        assert rendered == {'1': '1/2', 'a': [True, None, '3', '5'], 'b': '4/1'}

    def test_big_integers_survive(self):
        """Testa inteiro acima de 2^53"""
        assert render(2 ** 80 + 1) == str(2 ** 80 + 1)

    def test_float_rejected(self):
        """Testa que floats não entram em relatórios"""
        with pytest.raises(TypeError):
            render({'x': 0.5})

    def test_dumps_is_canonical(self):
        """Testa sort_keys, indent fixo e newline final"""
        text = dumps({'b': 1, 'a': 2})

        assert text == '{\n  "a": "2",\n  "b": "1"\n}\n'


class TestPointSetFile:
    """Testes para parse_pointset, load_pointset e input_digest"""

    def test_parse_with_string_coordinates(self):
        """Testa coordenadas como strings decimais"""
        E = parse_pointset('{"version": "1", "n": "6", "d": 2, "points": [["0", 7], [3, "0"]]}')

        assert E.n == 6
        assert E.points == ((0, 1), (3, 0))

    def test_dump_then_load(self, six_point_set, pointset_file):
        """Testa arquivo gravado e lido de volta"""
        assert load_pointset(pointset_file(six_point_set)) == six_point_set

    @pytest.mark.parametrize("text", [
        '{ invalid json }',
        '[1, 2]',
        '{"version": "1", "n": 6, "d": 2}',
        '{"version": "2", "n": 6, "d": 2, "points": []}',
        '{"version": "1", "n": 6, "d": 2, "points": [[0.5, 1]]}',
        '{"version": "1", "n": 6, "d": 2, "points": [[true, 1]]}',
        '{"version": "1", "n": 6, "d": 2, "points": {"x": 1}}',
        '{"version": "1", "n": 6, "d": 2, "points": [5]}',
    ])
    def test_invalid_files(self, text):
        """Testa JSON inválido, campos ausentes, versão e coordenadas não inteiras"""
        with pytest.raises(PointSetFormatError):
            parse_pointset(text)

    def test_duplicate_points(self):
        """Testa repetição após redução"""
        with pytest.raises(DuplicatePointError):
            parse_pointset('{"version": "1", "n": 6, "d": 1, "points": [[1], [7]]}')

    def test_missing_file(self, tmp_path):
        """Testa arquivo inexistente"""
        with pytest.raises(PointSetFormatError, match='não encontrado'):
            load_pointset(tmp_path / 'nada.json')

    def test_digest_is_canonical(self):
        """Testa digest independente da ordem e da representação de entrada"""
        a = PointSet.build(6, 1, [(1,), (8,)])
        b = PointSet.build(6, 1, [(2,), (1,)])

        assert input_digest(a) == input_digest(b)
        assert len(input_digest(a)) == 64
        assert input_digest(a) != input_digest(PointSet.build(6, 1, [(1,)]))

    def test_dump_uses_plain_integers(self, six_point_set):
        """Testa PointSetFile com inteiros JSON"""
        data = json.loads(dump_pointset(six_point_set))

        assert data == {'version': '1', 'n': 6, 'd': 2, 'points': [[0, 0], [0, 2], [2, 0], [3, 0]]}


class TestCertificates:
    """Testes para certificate_to_dict e certificate_from_dict"""

    def test_certificate_through_json(self, six_point_set):
        """Testa que o certificado lido de um relatório ainda valida contra E"""
        certificate = classify(six_point_set)
        data = json.loads(dumps(certificate_to_dict(certificate)))

        assert data['K'] == '3'
        assert data['m'] == '2'
        assert data['alpha'] == '3/4'
        restored = certificate_from_dict(data)
        assert restored == certificate
        assert restored.validate(six_point_set)

    def test_inconsistent_m(self, six_point_set):
        """Testa m != n / K"""
        data = json.loads(dumps(certificate_to_dict(classify(six_point_set, local=False))))
        data['m'] = '3'

        with pytest.raises(PointSetFormatError):
            certificate_from_dict(data)


class TestReportPayload:
    """Testes para report_payload, vanishing_to_dict e parse_report"""

    def test_envelope(self, six_point_set):
        """Testa schema, flags sem threads/report e resumo da entrada"""
        payload = report_payload('analyze', {'threads': 8, 'report': 'x.json', 'shells': True},
                                 six_point_set, energy={'total': 56})

        assert payload['schema'] == REPORT_SCHEMA
        assert payload['flags'] == {'shells': True}
        assert payload['input']['digest'] == input_digest(six_point_set)
        assert payload['input']['size'] == 4
        assert payload['partial'] is False
        assert parse_report(dumps(payload))['energy'] == {'total': '56'}

    def test_vanishing_section(self, six_point_set):
        """Testa serialização da base: 3y em grlex"""
        section = render(vanishing_to_dict(vanishing_space(six_point_set, 1)))

        assert section['count'] == '1'
        assert section['polynomials'] == [[[['0', '1'], '3']]]
        assert section['complete'] is True

    def test_parse_report_requires_schema(self):
        """Testa relatório sem schema"""
        with pytest.raises(PointSetFormatError):
            parse_report('{"command": "analyze"}')
