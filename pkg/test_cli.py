import json

import pytest

import cli
from cli import main, EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR


@pytest.fixture(autouse=True)
def quiet_logging(monkeypatch):
    monkeypatch.setattr(cli, 'setup_logging', lambda *args, **kwargs: None)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_ray_as_text(self, capsys):
        code, out, _ = run(capsys, 'build', '--alpha', '1', '--radius', '3', '--format', 'text')
        assert code == EXIT_OK
        assert out.strip() == '(((())))'

    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, 'build', '--alpha', '2', '--radius', '2', '--format', 'dot')
        assert code == EXIT_OK
        assert out.count('[label=') == 6

    def test_json_output_to_file(self, capsys, tmp_path):
        target = tmp_path / 'ball.json'
        code, _, _ = run(capsys, 'build', '--alpha', 'w', '--radius', '3', '--format', 'json', '--out', str(target))
        assert code == EXIT_OK
        data = json.loads(target.read_text())
        assert data['parent'][0] == -1
        assert data['labels'][0] == '1'

    @pytest.mark.parametrize('argv', [
        ('build', '--alpha', '0', '--radius', '3'),
        ('build', '--alpha', 'w+', '--radius', '3'),
        ('build', '--alpha', '2', '--radius', '-1'),
        ('build', '--alpha', '2'),
    ])
    def test_bad_input_exits_with_two(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == EXIT_ERROR


class TestEmbed:
    def test_cherry_against_path(self, capsys, tree_file):
        code, _, _ = run(capsys, 'embed', tree_file('cherry.txt', '(()())'), tree_file('path.txt', '((()))'))
        assert code == EXIT_NEGATIVE

    def test_free_mode(self, capsys, tree_file):
        code, _, _ = run(capsys, 'embed', tree_file('cherry.txt', '(()())'), tree_file('path.txt', '((()))'),
                         '--mode', 'free')
        assert code == EXIT_OK

    def test_path_into_family_ball(self, capsys, tree_file, tmp_path):
        host = tmp_path / 'host.json'
        run(capsys, 'build', '--alpha', '2', '--radius', '4', '--format', 'json', '--out', str(host))
        code, _, _ = run(capsys, 'embed', tree_file('path.txt', '((()))'), str(host))
        assert code == EXIT_OK

    def test_same_file_twice_with_witness(self, capsys, tree_file):
        path = tree_file('t.txt', '((())())')
        code, out, _ = run(capsys, 'embed', path, path, '--witness')
        assert code == EXIT_OK
        pairs = json.loads(out)
        assert sorted(guest for guest, _ in pairs) == [0, 1, 2, 3]

    def test_unreadable_tree(self, capsys, tree_file):
        code, _, _ = run(capsys, 'embed', tree_file('bad.txt', '(()'), tree_file('ok.txt', '()'))
        assert code == EXIT_ERROR
        code, _, _ = run(capsys, 'embed', '/no/such/file.txt', tree_file('ok2.txt', '()'))
        assert code == EXIT_ERROR


class TestFamilyAndCertify:
    @pytest.mark.parametrize('alpha,beta,addr,expected', [('1', '2', '5', '1,5'), ('2', 'w', '3', '2,3')])
    def test_family_embed(self, capsys, alpha, beta, addr, expected):
        code, out, _ = run(capsys, 'family-embed', '--alpha', alpha, '--beta', beta, '--addr', addr)
        assert code == EXIT_OK
        assert out.strip() == expected

    def test_family_embed_rejects_smaller_host(self, capsys):
        code, _, _ = run(capsys, 'family-embed', '--alpha', 'w', '--beta', '2', '--addr', '1')
        assert code == EXIT_ERROR

    def test_certify_base(self, capsys):
        code, out, _ = run(capsys, 'certify', '--alpha', '1', '--beta', '2')
        assert code == EXIT_OK
        assert json.loads(out)['rule'] == 'base'

    def test_certify_limit_with_expansion(self, capsys):
        code, out, _ = run(capsys, 'certify', '--alpha', '3', '--beta', 'w', '--expand', '2')
        assert code == EXIT_OK
        data = json.loads(out)
        assert data['rule'] == 'limit'
        assert data['param'] == 4

    def test_certify_expands_schematic_nodes(self, capsys):
        code, out, _ = run(capsys, 'certify', '--alpha', 'w', '--beta', 'w+1', '--expand', '2')
        assert code == EXIT_OK
        inner = json.loads(out)['children'][0]
        assert inner['schematic'] is True
        assert inner['instances'] == [1, 2]
        assert [child['pair'] for child in inner['children']] == [['w', '1'], ['w', '2']]

    def test_certify_long_finite_chain(self, capsys):
        code, out, _ = run(capsys, 'certify', '--alpha', '1000', '--beta', '1001')
        assert code == EXIT_OK
        assert out.startswith('{')
        assert out.count('"rule": "pigeonhole"') == 999

    def test_certify_rejects_equal_pair(self, capsys):
        code, _, _ = run(capsys, 'certify', '--alpha', '2', '--beta', '2')
        assert code == EXIT_ERROR


class TestUtilities:
    def test_ordinal_commands(self, capsys):
        assert run(capsys, 'ordinal', 'parse', 'w^2*3+w+5')[1].strip() == 'w^2*3+w+5'
        assert run(capsys, 'ordinal', 'compare', 'w', 'w+1')[1].strip() == 'LESS'
        assert run(capsys, 'ordinal', 'fundseq', 'w^w', '3')[1].strip() == 'w^3'
        assert run(capsys, 'ordinal', 'classify', 'w*2')[1].strip() == 'limit'

    def test_ordinal_command_errors(self, capsys):
        assert run(capsys, 'ordinal', 'fundseq', 'w+1', '2')[0] == EXIT_ERROR
        assert run(capsys, 'ordinal', 'compare', 'w')[0] == EXIT_ERROR

    def test_ball_size(self, capsys):
        code, out, _ = run(capsys, 'ball-size', '--alpha', '3', '--radius', '8')
        assert code == EXIT_OK
        assert out.strip() == '129'

    def test_horizon(self, capsys, tree_file):
        cherry = tree_file('cherry.txt', '(()())')
        assert run(capsys, 'horizon', cherry, '--alpha', '1', '--horizon', '8')[0] == EXIT_NEGATIVE
        code, out, _ = run(capsys, 'horizon', cherry, '--alpha', '2', '--horizon', '8', '--witness')
        assert code == EXIT_OK
        assert len(json.loads(out)) == 3

    def test_unknown_command(self, capsys):
        assert run(capsys, 'frobnicate')[0] == EXIT_ERROR


class TestVerify:
    def test_small_sweep_writes_report(self, capsys, tmp_path):
        out = tmp_path / 'report.json'
        code, _, err = run(capsys, 'verify', '--corpus', '1,2', '-d', '2', '-D', '10', '--out', str(out))
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert len(report['records']) == 1
        record = report['records'][0]
        assert record['positive'] == {'min_host_radius': 2}
        assert record['negative']['refutation_radius'] == 1
        assert '(1, 2)' in err

    def test_successor_over_limit_sweep(self, capsys, tmp_path):
        out = tmp_path / 'report.json'
        code, _, err = run(capsys, 'verify', '--corpus', 'w,w+1', '-d', '3', '-D', '12', '--out', str(out))
        assert code == EXIT_OK
        record, = json.loads(out.read_text())['records']
        assert record['negative'] == {'no_finite_refutation_up_to': 3, 'host_radius': 12}
        assert record['certificate']['status'] == 'ok'
        assert 'no finite refutation <= 3' in err

    def test_deep_certificate_does_not_fail_the_sweep(self, capsys, tmp_path, monkeypatch):
        monkeypatch.delenv('CERT_MAX_DEPTH', raising=False)
        out = tmp_path / 'report.json'
        code, _, _ = run(capsys, 'verify', '--corpus', '100,101', '-d', '1', '-D', '2', '--out', str(out))
        assert code == EXIT_OK
        certificate = json.loads(out.read_text())['records'][0]['certificate']
        assert certificate['depth_exceeded'] is True
        assert certificate['status'] == 'ok'

    def test_bad_radii(self, capsys, tmp_path):
        code, _, _ = run(capsys, 'verify', '--corpus', '1,2', '-d', '5', '-D', '2',
                         '--out', str(tmp_path / 'r.json'))
        assert code == EXIT_ERROR
