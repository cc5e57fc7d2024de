import json
import logging
import os

import pytest

from dwarith import cli
from dwarith.core.errors import MODEL_VIOLATION, SCHEMA_ERROR
from dwarith.models import shipped_model_paths

logging.disable(logging.WARNING)


def _path(name):
    return [p for p in shipped_model_paths() if os.path.basename(p) == name + '.json'][0]


def _run(capsys, *argv):
    status = cli.main(list(argv))
    return status, capsys.readouterr().out


def test_validate_ok(capsys):
    status, out = _run(capsys, 'validate', '--config', _path('tame_z4'))
    assert status == 0
    document = json.loads(out)
    assert document['command'] == 'validate'
    assert document['model'] == 'tame_z4'
    assert document['ok'] is True


def test_validate_violation(capsys):
    status, out = _run(capsys, 'validate', '--config', _path('klein_unpaired'))
    assert status == MODEL_VIOLATION
    assert json.loads(out)['ok'] is False


def test_cs_raises_model_error(capsys):
    status, out = _run(capsys, 'cs', '--config', _path('klein_unpaired'))
    assert status == MODEL_VIOLATION
    assert json.loads(out)['error']['code'] == 'reciprocity_violation'


def test_schema_error(capsys, tmpdir):
    broken = tmpdir.join('broken.json')
    broken.write(json.dumps({'modulus': 1, 'gauge_group': 'cyclic(2)'}))
    status, out = _run(capsys, 'validate', '--config', str(broken))
    assert status == SCHEMA_ERROR
    error = json.loads(out)['error']
    assert error['code'] == 'schema_error'
    assert error['details']['errors'] == [['$.modulus', 'must be at least 2']]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit):
        cli.main(['cs'])
    with pytest.raises(SystemExit):
        cli.main(['cs', '--config', _path('tame_z4'), '--config', _path('klein_paired')])
    with pytest.raises(SystemExit):
        cli.main(['frobnicate', '--config', _path('tame_z4')])
    capsys.readouterr()


def test_cs_values(capsys):
    status, out = _run(capsys, 'cs', '--config', _path('tame_z4'))
    assert status == 0
    result = json.loads(out)['result']
    assert result['global']['S'] == [{'rho': [0], 'cs': 0}, {'rho': [1], 'cs': 1}]


def test_homs(capsys):
    status, out = _run(capsys, 'homs', '--config', _path('classical_counts'))
    assert status == 0
    counts = {k: v['count'] for k, v in json.loads(out)['result']['globals'].items()}
    assert counts == {'Z3': 1, 'Z2': 2, 'V4': 4}


def test_hdim_and_partition(capsys):
    status, out = _run(capsys, 'hdim', '--config', _path('klein_paired'))
    assert status == 0
    assert json.loads(out)['result']['S']['dimension'] == 16
    status, out = _run(capsys, 'partition', '--config', _path('classical_s3'))
    assert status == 0
    entries = json.loads(out)['result']['global']['V4']['entries']
    assert entries == [{'rho_S': [], 'value': {'coeffs': [5, 0], 'den': 3}}]


@pytest.mark.parametrize('command, model', [
    ('glue', 'gluing_tube'),
    ('glue', 'closed_gluing'),
    ('transport', 'tame_z4'),
    ('lambda', 'tame_z4'),
    ('glue', 'nonabelian_s3'),
    ('transport', 'nonabelian_s3'),
    ('lambda', 'nonabelian_s3'),
    ('lambda', 'forced_vanishing_z4'),
])
def test_checked_commands(capsys, command, model):
    status, out = _run(capsys, command, '--config', _path(model))
    assert status == 0
    assert json.loads(out)['ok'] is True


def test_hdim_forced_vanishing(capsys):
    status, out = _run(capsys, 'hdim', '--config', _path('forced_vanishing_z4'))
    assert status == 0
    result = json.loads(out)['result']['S']
    assert result['dimension'] == 2
    assert [o['admissible'] for o in result['orbits']] == [True, False, False, True]


def test_suite_nonabelian(capsys):
    status, out = _run(capsys, 'suite', '--config', _path('nonabelian_s3'))
    assert status == 0
    assert json.loads(out)['ok'] is True


def test_out_and_determinism(capsys, tmpdir):
    first, second = tmpdir.join('first.json'), tmpdir.join('second.json')
    for target in (first, second):
        assert cli.main(['partition', '--config', _path('gluing_tube'), '--out', str(target)]) == 0
    assert capsys.readouterr().out == ''
    assert first.read() == second.read()
    assert json.loads(first.read())['command'] == 'partition'


def test_text_format(capsys):
    status, out = _run(capsys, 'validate', '--config', _path('tame_z4'), '--format', 'text')
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == 'command: validate'
    assert 'ok: true' in lines


def test_render_text():
    text = cli.render_text({'b': [1, 2], 'a': {'c': None, 'd': False}, 'e': []})
    assert text == 'a:\n  c: null\n  d: false\nb:\n  [1, 2]\ne: []'


def test_suite(capsys):
    status, out = _run(capsys, 'suite', '--config', _path('classical_counts'), '--config', _path('klein_unpaired'))
    assert status == 0
    document = json.loads(out)
    assert document['ok'] is True
    assert [r['name'] for r in document['reports']] == ['homotopy', 'classical_counts', 'klein_unpaired']


def test_run_unknown_command(shipped):
    with pytest.raises(ValueError):
        cli.run('suite', shipped['tame_z4'])


if __name__ == '__main__':
    pytest.main([__file__])
