import json

import pytest

from superlab import cli
from superlab.classification import expand, sample_valid
from superlab.derivations import BER, KK, StructureConstants


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_verify_preset():
    code, text = cli.run(['verify', '--preset', 'kk', '--json'])
    assert code == cli.EXIT_OK
    report = json.loads(text)
    assert report['is_representation'] and report['is_definite']
    assert report['kernel_dim'] == 1
    assert all(entry['passed'] for entry in report['brackets'].values())


def test_verify_text_output():
    code, text = cli.run(['verify', '--preset', 'ber'])
    assert code == cli.EXIT_OK
    assert text.startswith('Structural conditions')
    assert 'definite: True' in text


def test_verify_zero_constants(tmp_path):
    path = _write(tmp_path, 'zeros.json', StructureConstants.zeros().to_json())
    code, text = cli.run(['verify', '--in', path, '--format', 'json'])
    assert code == cli.EXIT_INVALID
    report = json.loads(text)
    assert report['failing'] == ['xix', 'xx']
    assert report['kernel_dim'] is None


def test_malformed_json(tmp_path):
    path = _write(tmp_path, 'broken.json', '{"c_Cz": "1",\n')
    code, text = cli.run(['verify', '--in', path])
    assert code == cli.EXIT_INPUT
    assert 'line' in text


def test_missing_key(tmp_path):
    values = KK.to_json()
    del values['d1_D']
    path = _write(tmp_path, 'partial.json', values)
    code, text = cli.run(['verify', '--in', path, '--json'])
    assert code == cli.EXIT_INPUT
    assert 'd1_D' in json.loads(text)['error']


def test_source_is_required():
    assert cli.run(['verify'])[0] == cli.EXIT_INPUT
    assert cli.run(['verify', '--preset', 'nope'])[0] == cli.EXIT_INPUT


def test_isomorphic_presets_are_infeasible():
    code, text = cli.run(['isomorphic', '--preset', 'kk', '--preset2', 'ber', '--json'])
    assert code == cli.EXIT_INFEASIBLE
    report = json.loads(text)
    assert report['verdict'] == 'infeasible'
    assert list(report['conflicts']) == ['plus', 'minus']


def test_isomorphic_files(tmp_path):
    k = expand(sample_valid(2))
    src = _write(tmp_path, 'src.json', k.to_json())
    dst = _write(tmp_path, 'dst.json', k.to_json())
    code, text = cli.run(['isomorphic', src, dst, '--json'])
    assert code == cli.EXIT_OK
    assert json.loads(text)['verdict'] == 'isomorphic'
    assert cli.run(['isomorphic', src])[0] == cli.EXIT_INPUT


@pytest.mark.parametrize('model, expected', [('kostant', KK), ('berezin', BER)])
def test_derive(model, expected):
    code, text = cli.run(['derive', model, '--json'])
    assert code == cli.EXIT_OK
    report = json.loads(text)
    assert report['constants'] == expected.to_json()
    assert len(report['actions']) == 8


def test_transform_identity():
    code, text = cli.run(['transform', '--preset', 'ber', '--x', '1', '--y', '1', '--u', '1', '--v', '0',
                          '--json'])
    assert code == cli.EXIT_OK
    assert json.loads(text)['constants'] == BER.to_json()


def test_transform_rejects_bad_parameters():
    # x*y must equal u+v
    code, _ = cli.run(['transform', '--preset', 'ber', '--x', '1', '--y', '2', '--u', '1', '--v', '0'])
    assert code == cli.EXIT_INPUT
    code, _ = cli.run(['transform', '--preset', 'ber', '--x', 'abc', '--y', '1', '--u', '1', '--v', '0'])
    assert code == cli.EXIT_INPUT


def test_classify_sample_is_deterministic():
    first = cli.run(['classify', 'sample', '--seed', '3', '--json'])
    assert first == cli.run(['classify', 'sample', '--seed', '3', '--json'])
    assert first[0] == cli.EXIT_OK
    assert json.loads(first[1])['params'] == sample_valid(3).to_json()


def test_classify_reduce():
    code, text = cli.run(['classify', 'reduce', '--preset', 'ber', '--json'])
    assert code == cli.EXIT_OK
    assert json.loads(text)['params']['cz'] == '1'


def test_classify_rank():
    code, text = cli.run(['classify', 'rank', '--preset', 'kk', '--json'])
    assert code == cli.EXIT_OK
    assert json.loads(text)['dimension'] == 6


def test_rank_reports_orbit():
    code, text = cli.run(['rank', '--preset', 'ber', '--json'])
    assert code == cli.EXIT_OK
    report = json.loads(text)
    assert report['orbit'] == {'mode': 'real', 'rank': 2, 'quotient_dimension': 4}
    assert report['variety']['rank'] == 8
    code, text = cli.run(['rank', '--preset', 'ber', '--mode', 'complex', '--json'])
    assert json.loads(text)['orbit']['rank'] == 0
    assert json.loads(text)['orbit']['quotient_dimension'] == 6


@pytest.mark.parametrize('mode, quotient', [('real', 3), ('complex', 5)])
def test_rank_quotient_at_generic_point(mode, quotient):
    code, text = cli.run(['rank', '--seed', '0', '--mode', mode, '--json'])
    assert code == cli.EXIT_OK
    assert json.loads(text)['orbit']['quotient_dimension'] == quotient
    code, text = cli.run(['rank', '--seed', '0', '--mode', mode])
    assert 'variety dimension modulo the orbit: %d' % quotient in text


def test_bad_invocations():
    assert cli.run([])[0] == cli.EXIT_INPUT
    assert cli.run(['frobnicate'])[0] == cli.EXIT_INPUT
    code, text = cli.run(['verify', '--preset', 'kk', '--mode', 'quaternion', '--json'])
    assert code == cli.EXIT_INPUT
    assert 'quaternion' in json.loads(text)['error']


@pytest.mark.parametrize('window', ['0', '-3', 'two'])
def test_window_is_validated(window):
    code, text = cli.run(['verify', '--preset', 'kk', '--window', window, '--json'])
    assert code == cli.EXIT_INPUT
    assert 'window' in json.loads(text)['error']


@pytest.mark.parametrize('grid', [',', ' , ', '0,1+1i', '1/2,-1i'])
def test_scan_grid_is_validated(grid):
    code, text = cli.run(['classify', 'scan', '--grid', grid, '--json'])
    assert code == cli.EXIT_INPUT
    assert 'grid' in json.loads(text)['error']


def test_scan_workers():
    single = cli.run(['classify', 'scan', '--grid=-1,0,1', '--json'])
    assert single[0] == cli.EXIT_OK
    assert cli.run(['classify', 'scan', '--grid=-1,0,1', '--workers', '2', '--json']) == single
    assert cli.run(['classify', 'scan', '--grid=-1,0,1', '--workers', '0'])[0] == cli.EXIT_INPUT


@pytest.mark.parametrize('argv', [
    ['verify', '--preset', 'kk', '--json'],
    ['derive', 'berezin', '--json'],
    ['derive', 'kostant', '--json'],
    ['isomorphic', '--preset', 'kk', '--preset2', 'ber', '--json'],
])
def test_json_output_is_byte_identical(argv):
    assert cli.run(argv) == cli.run(argv)


@pytest.mark.parametrize('model, preset, expected', [('kostant', 'kk', KK), ('berezin', 'ber', BER)])
def test_derived_constants_reload(tmp_path, model, preset, expected):
    code, text = cli.run(['derive', model, '--json'])
    path = _write(tmp_path, '%s.json' % model, json.loads(text)['constants'])
    code, text = cli.run(['verify', '--in', path, '--json'])
    assert code == cli.EXIT_OK
    assert text == cli.run(['verify', '--preset', preset, '--json'])[1]
    assert cli.load_constants(path) == expected


def test_transformed_constants_reload(tmp_path):
    code, text = cli.run(['transform', '--preset', 'ber', '--x', '2', '--y', '1', '--u', '3', '--v', '-1',
                          '--json'])
    assert code == cli.EXIT_OK
    path = _write(tmp_path, 'image.json', json.loads(text)['constants'])
    code, text = cli.run(['isomorphic', '--json', _write(tmp_path, 'ber.json', BER.to_json()), path])
    assert code == cli.EXIT_OK
    assert json.loads(text)['verdict'] == 'isomorphic'
