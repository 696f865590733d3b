import json

import pytest

import src.cli as cli
from src.algebra.word_problem import EqualityVerdict, Verdict
from src.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, peek_config_path, run_command
from src.config_loader import merge_defaults

G = "[a1^b1 a2] * [a2^b2 a1]"


@pytest.fixture
def settings():
    return merge_defaults({})


def run(argv, settings):
    return run_command(argv, settings)


def test_normalize(poset_files, settings, capsys):
    assert run(['normalize', '--poset', poset_files['diamond'], 'u(c,a) * d(a,c)'], settings) == EXIT_OK
    assert capsys.readouterr().out.strip() == 'i(c)'


def test_mul_and_inv(poset_files, settings, capsys):
    assert run(['mul', '--poset', poset_files['chain'], 'u(2,1)', 'u(1,0)'], settings) == EXIT_OK
    assert capsys.readouterr().out.strip() == 'u(2,0)'

    assert run(['inv', '--poset', poset_files['diamond'], 'u(c,a)', '--json'], settings) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {'path': 'd(a,c)'}


def test_eq_distinct_with_named_loop(poset_files, settings, capsys):
    argv = ['eq', '--poset', poset_files['circle'], '--let', f'g={G}', 'g', 'i(a1)']

    assert run(argv, settings) == EXIT_FAILED
    out = capsys.readouterr().out
    assert 'Distinct' in out
    assert 'homology 1 ≠ 0' in out


def test_eq_equal(poset_files, settings, capsys):
    left = f"{G} * ({G})^-1"

    assert run(['eq', '--poset', poset_files['circle'], left, 'i(a1)', '--json'], settings) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['verdict'] == 'Equal'


def test_eq_unknown(poset_files, settings, monkeypatch, capsys):
    monkeypatch.setattr(cli, 'equal_paths', lambda *args, **kwargs: EqualityVerdict(Verdict.UNKNOWN))

    assert run(['eq', '--poset', poset_files['diamond'], 'i(a)', 'i(a)'], settings) == EXIT_UNKNOWN
    assert 'Unknown' in capsys.readouterr().out


def test_h1(poset_files, settings, capsys):
    assert run(['h1', '--poset', poset_files['circle']], settings) == EXIT_OK
    assert 'H1 = Z^1' in capsys.readouterr().out

    assert run(['h1', '--poset', poset_files['circle'], G, '--json'], settings) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['rank'] == 1
    assert payload['class'] == [1]


def test_loops(poset_files, settings, capsys):
    assert run(['loops', '--poset', poset_files['chain'], '--base', '0', '--json'], settings) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload['generators']) == 1
    assert payload['trivial'] is True


def test_check_poset(poset_files, settings, tmp_path, capsys):
    assert run(['check-poset', poset_files['diamond'], '--json'], settings) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['upward_directed'] is True
    assert payload['edges'] == 2

    cyclic = tmp_path / "cyclic.json"
    cyclic.write_text(json.dumps({'elements': ['a', 'b'], 'le': [['a', 'b'], ['b', 'a']]}), encoding='utf-8')
    assert run(['check-poset', str(cyclic)], settings) == EXIT_INPUT
    assert 'error' in capsys.readouterr().err


def test_bad_expression(poset_files, settings, capsys):
    assert run(['normalize', '--poset', poset_files['diamond'], 'i(a'], settings) == EXIT_INPUT
    assert 'position 3' in capsys.readouterr().err


def test_argument_errors(settings):
    assert run(['frobnicate'], settings) == EXIT_INPUT
    assert run(['--version'], settings) == EXIT_OK


def test_rep_and_net(poset_files, settings, capsys):
    assert run(['rep', 'build', '--poset', poset_files['diamond'], '--json'], settings) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['size'] == 9

    assert run(['rep', 'verify', '--poset', poset_files['diamond']], settings) == EXIT_OK
    assert run(['net', 'verify', '--poset', poset_files['chain']], settings) == EXIT_OK


def test_verify_axioms(poset_files, settings):
    assert run(['verify', 'axioms', '--poset', poset_files['diamond'], '--max-simplices', '2'], settings) == EXIT_OK


def test_cuntz(settings, capsys):
    argv = ['cuntz', '--n', '2', '--window', '16', '--samples', '10', '--json']

    assert run(argv, settings) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['N'] == 16
    assert all(r['holds'] for r in payload['generator_relations']['relations'])
    assert payload['quotient_isomorphism'] == 'NOT CHECKED'


def test_export(poset_files, settings, tmp_path):
    out = tmp_path / "op.json"

    assert run(['export', 'op', '--poset', poset_files['diamond'], 'd(b,c)', '--out', str(out)], settings) == EXIT_OK
    payload = json.loads(out.read_text())
    assert len(payload['basis']) == 9
    assert payload['map'] == [[6, 3], [7, 4], [8, 5]]


def test_replay(poset_files, settings, tmp_path):
    move = {'side': 'p', 'kind': 'split', 'position': 0, 'operands': [['a', 'c', 'b']], 'support': ['c', 'c', 'c']}
    good = tmp_path / "good.json"
    good.write_text(json.dumps([move]), encoding='utf-8')
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{**move, 'operands': [['b', 'c', 'a']]}]), encoding='utf-8')
    argv = ['replay', '--poset', poset_files['diamond'], '[a^c b]', '[a^c b]']

    assert run(argv + [str(good)], settings) == EXIT_OK
    assert run(argv + [str(bad)], settings) == EXIT_FAILED
    assert run(argv + [str(tmp_path / "missing.json")], settings) == EXIT_INPUT


def test_peek_config_path():
    assert peek_config_path(['--config', 'x.yaml', 'h1']) == 'x.yaml'
    assert peek_config_path(['h1']) == cli.DEFAULT_CONFIG_PATH
