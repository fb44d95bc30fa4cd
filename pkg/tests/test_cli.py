"""
Testes para o módulo znfal.cli
"""
import json
import logging

import pytest
from click.testing import CliRunner

from znfal import __version__, history
from znfal.cli import cli
from znfal.reports import input_digest, load_pointset, parse_report
from znfal.system_checks import SystemCheckError
from znfal.verification import LEMMAS, VerificationResult


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def reset_logger():
    """Remove o handler ligado ao stderr do CliRunner depois de cada teste"""
    yield
    logging.getLogger('znfal').handlers = []


def run_report(runner, tmp_path, args, name='report.json'):
    path = tmp_path / name
    result = runner.invoke(cli, args + ['--report', str(path)])
    data = parse_report(path.read_text(encoding='utf-8')) if path.exists() else None
    return result, data


class TestConstruct:
    """Testes para o comando construct"""

    def test_six_points(self, runner, tmp_path, six_point_set):
        """Testa construct example-2-3 --out"""
        out = tmp_path / 'e.json'

        result = runner.invoke(cli, ['construct', 'example-2-3', '--out', str(out)])

        assert result.exit_code == 0
        assert load_pointset(out) == six_point_set

    def test_skew(self, runner, tmp_path, skew_set):
        """Testa construct appendix-b com a matriz padrão"""
        out = tmp_path / 'b.json'

        result = runner.invoke(cli, ['construct', 'appendix-b', '--p', '3', '--d', '2', '--out', str(out)])

        assert result.exit_code == 0
        assert load_pointset(out) == skew_set

    def test_skew_with_explicit_matrix(self, runner, tmp_path):
        """Testa --matrix"""
        out = tmp_path / 'b.json'

        result = runner.invoke(cli, ['construct', 'appendix-b', '--p', '5', '--d', '2',
                                     '--matrix', '0,2;3,0', '--out', str(out)])

        assert result.exit_code == 0
        assert load_pointset(out).size == 25

    def test_non_skew_matrix(self, runner):
        """Testa matriz não antissimétrica: código 2"""
        result = runner.invoke(cli, ['construct', 'appendix-b', '--p', '5', '--d', '2', '--matrix', '0,1;1,0'])

        assert result.exit_code == 2

    def test_coset(self, runner, tmp_path, coset_set):
        """Testa construct coset --n 6 --d 2 --K 2 --v 0,0"""
        out = tmp_path / 'c.json'

        result = runner.invoke(cli, ['construct', 'coset', '--n', '6', '--d', '2', '--K', '2',
                                     '--v', '0,0', '--out', str(out)])

        assert result.exit_code == 0
        assert load_pointset(out) == coset_set

    def test_coset_trivial_k(self, runner):
        """Testa K = 1: entrada inválida"""
        result = runner.invoke(cli, ['construct', 'coset', '--n', '6', '--d', '2', '--K', '1'])

        assert result.exit_code == 2

    def test_random_requires_size(self, runner):
        """Testa parâmetro obrigatório ausente"""
        result = runner.invoke(cli, ['construct', 'random', '--n', '6', '--d', '2'])

        assert result.exit_code == 2
        assert '--size' in result.output

    def test_product(self, runner, tmp_path):
        """Testa construct product --sizes"""
        out = tmp_path / 'p.json'

        result = runner.invoke(cli, ['construct', 'product', '--n', '30', '--d', '1',
                                     '--sizes', '2,2,3', '--out', str(out)])

        assert result.exit_code == 0
        assert load_pointset(out).size == 12


class TestAnalyze:
    """Testes para o comando analyze"""

    def test_six_point_report(self, runner, tmp_path, six_point_set, pointset_file):
        """Testa seções distance, energy, shells e local"""
        path = pointset_file(six_point_set)

        result, report = run_report(runner, tmp_path, ['analyze', path, '--shells', '--local'])

        assert result.exit_code == 0
        assert report['partial'] is False
        assert report['input']['digest'] == input_digest(six_point_set)
        assert report['distance'] == {
            'count': '5',
            'set': ['0', '1', '2', '3', '4'],
            'profile': {'0': '4', '1': '4', '2': '2', '3': '2', '4': '4'},
        }
        assert report['energy']['total'] == '56'
        assert report['energy']['nontrivial'] == '40'
        assert report['energy']['ratio'] == '21/16'
        assert report['energy']['near_extremal'] is False
        assert report['energy']['cauchy_schwarz'] == {'lhs': '280', 'rhs': '256', 'holds': True}
        assert report['shells'] == {
            'by_divisor': {'1': '16', '2': '20', '3': '4', '6': '16'},
            'mixed': '0',
            'total': '56',
        }
        local = report['local']
        assert local['components']['2']['fiber_M'] == '3'
        assert local['components']['3']['ratio'] == '29/27'
        assert local['global_ratio'] == '21/16'
        assert local['holder']['holds'] is True
        assert local['pigeonhole']['applicable'] is False

    @pytest.mark.slow
    def test_report_bytes_independent_of_threads(self, runner, tmp_path, skew_set, pointset_file):
        """Testa relatório byte a byte idêntico com 1, 2 e 8 threads"""
        path = pointset_file(skew_set)
        outputs = []
        for threads in ('1', '2', '8'):
            target = tmp_path / f'r{threads}.json'
            result = runner.invoke(cli, ['analyze', path, '--shells', '--local', '--classify',
                                         '--vanish-degree', '3', '--threads', threads,
                                         '--report', str(target)])
            assert result.exit_code == 0
            outputs.append(target.read_bytes())

        assert outputs[0] == outputs[1] == outputs[2]

    def test_classification_of_skew_set(self, runner, tmp_path, skew_set, pointset_file):
        """Testa skew: sem coset concentrado, camada nilpotente recupera A"""
        result, report = run_report(runner, tmp_path, ['analyze', pointset_file(skew_set), '--classify'])

        assert result.exit_code == 0
        classification = report['classification']
        assert classification['result'] == 'unstructured'
        assert set(classification['local_summaries']) == {'9'}
        assert classification['nilpotent_layer']['matrix'] == [['0', '1'], ['2', '0']]
        assert classification['nilpotent_layer']['skew'] is True

    def test_vanishing_section(self, runner, tmp_path, six_point_set, pointset_file):
        """Testa --vanish-degree 1"""
        result, report = run_report(runner, tmp_path, ['analyze', pointset_file(six_point_set),
                                                        '--vanish-degree', '1'])

        assert result.exit_code == 0
        assert report['vanishing']['count'] == '1'

    def test_invalid_json(self, runner, raw_pointset_file):
        """Testa arquivo inválido: código 2"""
        result = runner.invoke(cli, ['analyze', raw_pointset_file('{ invalid json }')])

        assert result.exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        """Testa arquivo inexistente"""
        result = runner.invoke(cli, ['analyze', str(tmp_path / 'nada.json')])

        assert result.exit_code == 2

    def test_point_budget(self, runner, six_point_set, pointset_file):
        """Testa --max-points abaixo de |E|: código 3"""
        result = runner.invoke(cli, ['analyze', pointset_file(six_point_set), '--max-points', '2'])

        assert result.exit_code == 3

    def test_invalid_threshold(self, runner, six_point_set, pointset_file):
        """Testa K < 1: código 2"""
        result = runner.invoke(cli, ['analyze', pointset_file(six_point_set), '--K', '1/2'])

        assert result.exit_code == 2

    def test_expired_deadline_gives_partial_report(self, runner, tmp_path, six_point_set,
                                                   pointset_file, monkeypatch):
        """Testa prazo esgotado: relatório parcial e código 3"""
        class ExpiredDeadline:
            budget_ms = 1

            def __init__(self, *args, **kwargs):
                pass

            def expired(self):
                return True

            def elapsed_ms(self):
                return 2

        monkeypatch.setattr('znfal.cli.Deadline', ExpiredDeadline)

        result, report = run_report(runner, tmp_path, ['analyze', pointset_file(six_point_set), '--shells'])

        assert result.exit_code == 3
        assert report['partial'] is True
        assert 'distance' in report
        assert 'energy' not in report
        assert 'shells' not in report


class TestClassifyCommand:
    """Testes para o comando classify"""

    def test_coset(self, runner, tmp_path, coset_set, pointset_file):
        """Testa certificado K = 2, alpha = 1"""
        result, report = run_report(runner, tmp_path, ['classify', pointset_file(coset_set)])

        assert result.exit_code == 0
        classification = report['classification']
        assert classification['result'] == 'structured'
        certificate = classification['certificates'][0]
        assert certificate['K'] == '2'
        assert certificate['alpha'] == '1/1'
        assert certificate['isotropy_k'] == '3'

    def test_peel(self, runner, tmp_path, six_point_set, pointset_file):
        """Testa --peel: dois certificados e nada restante"""
        result, report = run_report(runner, tmp_path, ['classify', pointset_file(six_point_set), '--peel'])

        assert result.exit_code == 0
        assert [c['K'] for c in report['classification']['certificates']] == ['3', '2']
        assert report['classification']['residual_size'] == '0'

    def test_unstructured_with_local(self, runner, tmp_path, skew_set, pointset_file):
        """Testa 'unstructured' com resumos locais"""
        result, report = run_report(runner, tmp_path, ['classify', pointset_file(skew_set), '--local'])

        assert result.exit_code == 0
        assert report['classification']['result'] == 'unstructured'
        assert report['classification']['certificates'] == []
        assert '9' in report['classification']['local_summaries']


class TestPit:
    """Testes para o grupo pit"""

    def test_psi_check(self, runner, tmp_path, six_point_set, pointset_file):
        """Testa psi-check em E"""
        result, report = run_report(runner, tmp_path, ['pit', 'psi-check', pointset_file(six_point_set)])

        assert result.exit_code == 0
        assert report['psi'] == {'holds': True, 'degree': '5', 'distance_count': '5'}

    def test_vanish(self, runner, tmp_path, skew_set, pointset_file):
        """Testa vanish --degree 3 na construção skew"""
        result, report = run_report(runner, tmp_path, ['pit', 'vanish', pointset_file(skew_set),
                                                       '--degree', '3'])

        assert result.exit_code == 0
        assert int(report['vanishing']['count']) > 0
        assert report['vanishing']['warnings']

    def test_vanish_budget(self, runner, skew_set, pointset_file):
        """Testa orçamento de monômios: código 3"""
        result = runner.invoke(cli, ['pit', 'vanish', pointset_file(skew_set), '--degree', '3',
                                     '--monomial-budget', '5'])

        assert result.exit_code == 3

    def test_b_checks(self, runner):
        """Testa identidades da construção skew"""
        result = runner.invoke(cli, ['pit', 'b-checks', '--p', '3', '--d', '2'])

        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data['skew'] is True
        assert data['cross_term'] is True
        assert data['pairs_checked'] == '81'

    def test_b_checks_non_skew(self, runner):
        """Testa matriz não antissimétrica: resultado negativo, código 0"""
        result = runner.invoke(cli, ['pit', 'b-checks', '--p', '5', '--d', '2', '--matrix', '1,0;0,0'])

        assert result.exit_code == 0
        assert json.loads(result.output)['skew'] is False

    def test_b4_identity(self, runner):
        """Testa p Q(t) = 0 mod p^2"""
        result = runner.invoke(cli, ['pit', 'b4-identity', '--p', '5'])

        assert result.exit_code == 0
        assert json.loads(result.output) == {'p': '5', 'degree': '5', 'holds': True, 'witness': '5'}

    def test_b4_identity_requires_odd_prime(self, runner):
        """Testa p = 4"""
        result = runner.invoke(cli, ['pit', 'b4-identity', '--p', '4'])

        assert result.exit_code == 2

    def test_schwartz_zippel(self, runner):
        """Testa cota D/p exata"""
        result = runner.invoke(cli, ['pit', 'schwartz-zippel', '--degree', '2', '--p', '5'])

        assert result.exit_code == 0
        assert json.loads(result.output)['bound'] == '2/5'


class TestVerify:
    """Testes para o comando verify"""

    def test_shell_sum(self, runner):
        """Testa verify shell-sum"""
        result = runner.invoke(cli, ['verify', 'shell-sum', '--trials', '3', '--seed', '1'])

        assert result.exit_code == 0
        assert '"lemma": "shell-sum"' in result.output

    def test_unknown_lemma(self, runner):
        """Testa nome desconhecido"""
        result = runner.invoke(cli, ['verify', 'nao-existe'])

        assert result.exit_code == 2

    def test_violation_exits_with_code_4(self, runner, monkeypatch):
        """Testa contraexemplo: código 4 e contraexemplo impresso"""
        def failing(trials, seed, **_):
            result = VerificationResult(lemma='shell-sum')
            result.record(False, input='{"n": 6}')
            return result

        monkeypatch.setitem(LEMMAS, 'shell-sum', failing)

        result = runner.invoke(cli, ['verify', 'shell-sum', '--trials', '1'])

        assert result.exit_code == 4
        assert 'failures' in result.output


class TestHistoryAndMisc:
    """Testes para history, check e version"""

    def test_runs_are_recorded(self, runner, tmp_path, six_point_set):
        """Testa registro no histórico com digest da entrada"""
        db = str(tmp_path / 'runs.db')
        out = tmp_path / 'e.json'

        runner.invoke(cli, ['--history-db', db, 'construct', 'example-2-3', '--out', str(out)])
        runner.invoke(cli, ['--history-db', db, 'construct', 'coset', '--n', '6', '--d', '2', '--K', '1'])

        failed, ok = history.list_runs(10, db_path=db)
        assert ok['command'] == 'construct'
        assert ok['status'] == 'ok'
        assert ok['exit_code'] == 0
        assert ok['input_digest'] == input_digest(six_point_set)
        assert failed['status'] == 'input_error'
        assert failed['exit_code'] == 2

        result = runner.invoke(cli, ['--history-db', db, 'history', '--limit', '5'])
        assert result.exit_code == 0
        assert 'construct' in result.output

    def test_history_env_var(self, runner, tmp_path, monkeypatch):
        """Testa ZNFAL_HISTORY_DB"""
        db = str(tmp_path / 'env.db')
        monkeypatch.setenv('ZNFAL_HISTORY_DB', db)

        runner.invoke(cli, ['pit', 'b4-identity', '--p', '3'])

        assert history.list_runs(1, db_path=db)[0]['command'] == 'pit b4-identity'

    def test_check_ok(self, runner, mocker):
        """Testa check com requisitos atendidos"""
        verify = mocker.patch('znfal.cli.verify_system_requirements', return_value=True)

        result = runner.invoke(cli, ['check'])

        assert result.exit_code == 0
        verify.assert_called_once_with(verbose=True)

    def test_check_failure(self, runner, mocker):
        """Testa check com pacote faltando"""
        mocker.patch('znfal.cli.verify_system_requirements', side_effect=SystemCheckError("numpy"))

        result = runner.invoke(cli, ['check'])

        assert result.exit_code == 1

    def test_version(self, runner):
        """Testa comando version e --version"""
        assert f"znfal version {__version__}" in runner.invoke(cli, ['version']).output
        assert __version__ in runner.invoke(cli, ['--version']).output
