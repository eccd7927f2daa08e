import os
import json
import sys
import subprocess
import numpy as np
import pytest

from source.utils import read_csv_file


REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_cli(*args, cwd=REPO_ROOT):
    return subprocess.run([sys.executable, os.path.join(REPO_ROOT, 'finite_memory.py'), *args],
                          cwd=cwd, capture_output=True, text=True, timeout=600)


def parse_stdout(stdout: str):
    lines = [line for line in stdout.splitlines() if line]
    data = [line for line in lines if not line.startswith('#')]
    header = data[0].split(',')
    rows = [[float(field) for field in line.split(',')] for line in data[1:]]
    comments = [line[1:].strip() for line in lines if line.startswith('#')]
    return header, rows, comments


def test_decay_tegmark(tmp_path):
    result = run_cli('decay', '--method', 'tegmark', '--t-max', '3', '--dt', '0.01', cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    header, rows, comments = parse_stdout(result.stdout)
    assert header == ['t', 'tegmark_re', 'tegmark_im', 'tegmark_abs']
    assert len(rows) == 301
    assert rows[100][0] == pytest.approx(1.0)
    assert rows[100][3] == pytest.approx(0.367879, abs=1e-6)
    assert comments == []


def test_decay_damped_oscillator_starts_at_one(tmp_path):
    result = run_cli('decay', '--method', 'eq16', '--tau-c', '1', '--t-max', '5', '--dt', '0.001', cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    _, rows, _ = parse_stdout(result.stdout)
    assert rows[0] == pytest.approx([0.0, 1.0, 0.0, 1.0])


def test_decay_two_methods_report_divergence(tmp_path):
    out = str(tmp_path / 'runs' / 'decay.csv')
    result = run_cli('decay', '--method', 'eq16', '--method', 'pseudomode', '--tau-c', '1', '--out', out)
    assert result.returncode == 0, result.stderr
    assert 'Wrote 501 rows' in result.stdout
    header, rows, comments = read_csv_file(out)
    assert header == ['t'] + [f'{method}_{part}' for method in ('eq16', 'pseudomode') for part in ('re', 'im', 'abs')]
    assert all(len(row) == len(header) for row in rows)
    assert comments[0].startswith('max_abs_divergence eq16 vs pseudomode: ')
    columns = np.array(rows)
    eq16 = columns[:, 1] + 1j * columns[:, 2]
    pseudomode = columns[:, 4] + 1j * columns[:, 5]
    assert float(comments[0].split(': ')[1]) == pytest.approx(np.max(np.abs(eq16 - pseudomode)), abs=1e-12)
    assert columns[0, 3] == columns[0, 6] == pytest.approx(1.0)
    assert os.path.exists(f'{out}.conf')


def test_sweep_formula(tmp_path):
    out = str(tmp_path / 'sweep.csv')
    result = run_cli('sweep', '--method', 'formula', '--tau-c-min', '1', '--tau-c-max', '64', '--points', '4', '--jobs', '1', '--out', out)
    assert result.returncode == 0, result.stderr
    assert result.stdout.startswith('formula exponent=0.500000')
    header, rows, comments = read_csv_file(out)
    assert header == ['tau_c', 'formula_tau_dec']
    np.testing.assert_allclose(rows, [[1.0, 1.0], [4.0, 2.0], [16.0, 4.0], [64.0, 8.0]])
    assert comments[0].startswith('method=formula exponent=')
    with open(f'{out}.json') as file:
        summary = json.load(file)
    assert summary['methods'] == ['formula']
    assert summary['fits']['formula']['exponent'] == pytest.approx(0.5)
    assert [row['times']['formula']['value'] for row in summary['rows']] == pytest.approx([1.0, 2.0, 4.0, 8.0])


def test_sweep_output_is_byte_identical(tmp_path):
    outputs = []
    for name in ['first.csv', 'second.csv']:
        out = str(tmp_path / name)
        result = run_cli('sweep', '--method', 'eq16', '--method', 'nmqsd', '--tau-c-min', '1', '--tau-c-max', '8',
                         '--points', '4', '--jobs', '2', '--out', out)
        assert result.returncode == 0, result.stderr
        with open(out, 'rb') as file:
            outputs.append(file.read())
    assert outputs[0] == outputs[1]


def test_config_file_and_saved_config_reproduce_run(tmp_path):
    config_path = tmp_path / 'run.conf'
    config_path.write_text('methods = oracle\ntau_c = 0.5\nt_max = 2\ndt = 0.01\n')
    first = str(tmp_path / 'first.csv')
    assert run_cli('decay', '--config', str(config_path), '--out', first).returncode == 0
    second = str(tmp_path / 'second.csv')
    assert run_cli('decay', '--config', f'{first}.conf', '--out', second).returncode == 0
    with open(first, 'rb') as a, open(second, 'rb') as b:
        assert a.read() == b.read()


def test_limit(tmp_path):
    result = run_cli('limit', cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    header, rows, comments = parse_stdout(result.stdout)
    assert header == ['tau_c', 'tau_dec', 'tau_T', 'ratio']
    assert len(rows) == 5
    assert all(row[2] == 1.0 for row in rows)
    assert comments[-1].startswith('converged_ratio=0.50')
    assert 'converged=true' in comments[-1]


def test_presets(tmp_path):
    result = run_cli('presets', 'water', '--tau-t', '1e-13', cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    assert result.stdout.startswith('water: tau_c in [1e-14, 1e-13] s')
    assert '0.3162' in result.stdout
    out = str(tmp_path / 'microtubule.csv')
    result = run_cli('presets', 'microtubule', '--tau-t', '1e-13', '--out', out)
    assert result.returncode == 0, result.stderr
    assert 'assumed' in result.stdout
    header, rows, comments = read_csv_file(out)
    assert header == ['tau_c', 'tau_T', 'tau_dec', 'enhancement']
    assert rows[0][3] == pytest.approx(np.sqrt(100.0))
    assert comments == ['preset=microtubule assumption=true']


def test_verbose_writes_log_file(tmp_path):
    out = str(tmp_path / 'decay.csv')
    result = run_cli('decay', '--method', 'tegmark', '--t-max', '1', '--out', out, '-v')
    assert result.returncode == 0, result.stderr
    with open(f'{out}.log') as file:
        assert 'Finished decay' in file.read()


@pytest.mark.parametrize('args', [
    ['decay', '--method', 'formula'],
    ['decay', '--method', 'bogus'],
    ['sweep', '--points', '0'],
    ['sweep', '--points', '2'],
    ['sweep', '--tau-c-min', '10', '--tau-c-max', '1'],
    ['limit', '--decades', '1'],
    ['presets', 'custom'],
    ['presets', 'sea'],
    ['decay', '--dt', 'abc'],
    ['decay', '--D', '-1'],
    ['frobnicate'],
])
def test_argument_errors_exit_2(tmp_path, args):
    result = run_cli(*args, cwd=tmp_path)
    assert result.returncode == 2
    assert result.stderr


def test_bad_config_key_exits_2(tmp_path):
    config_path = tmp_path / 'bad.conf'
    config_path.write_text('gamma = 1\n')
    assert run_cli('decay', '--config', str(config_path), cwd=tmp_path).returncode == 2


def test_numerical_failure_exits_3(tmp_path):
    result = run_cli('decay', '--method', 'nmqsd', '--dt', '0.5', cwd=tmp_path)
    assert result.returncode == 3
    assert 'stability guard' in result.stderr
    result = run_cli('decay', '--method', 'pseudomode', '--t-max', '5', '--dt', '0.02', '--fock-cap', '8', cwd=tmp_path)
    assert result.returncode == 3


def test_quadratic_rate_from_tabulated_spectrum(tmp_path):
    spectrum_path = os.path.join(REPO_ROOT, 'data', 'spectra', 'ohmic_exponential_cutoff.txt')
    args = ('decay', '--method', 'quadratic', '--spectrum', spectrum_path, '--t-max', '1', '--dt', '0.5')
    result = run_cli(*args, cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    header, rows, _ = parse_stdout(result.stdout)
    assert header == ['t', 'quadratic_re', 'quadratic_im', 'quadratic_abs']
    # int 0.1 omega exp(-omega) d omega = 0.1, so C(1) = 1 - 0.1
    assert rows[-1][3] == pytest.approx(0.9, abs=2e-3)
    thermal = run_cli(*args, '--beta', '1', cwd=tmp_path)
    assert thermal.returncode == 0, thermal.stderr
    _, thermal_rows, _ = parse_stdout(thermal.stdout)
    assert thermal_rows[-1][3] < rows[-1][3] - 0.01


def test_flat_spectrum_with_beta_exits_3(tmp_path):
    spectrum_path = tmp_path / 'flat.txt'
    spectrum_path.write_text('# omega J\n1e-4 1.0\n1.0 1.0\n')
    result = run_cli('decay', '--method', 'quadratic', '--spectrum', str(spectrum_path), '--beta', '1', '--t-max', '1', cwd=tmp_path)
    assert result.returncode == 3
    assert 'Infrared-divergent' in result.stderr
    assert run_cli('decay', '--method', 'quadratic', '--spectrum', str(tmp_path / 'missing.txt'), cwd=tmp_path).returncode == 2


def test_config_file_in_working_directory(tmp_path):
    (tmp_path / 'config.conf').write_text('methods = oracle\nt_max = 1\ndt = 0.5\n')
    result = run_cli('decay', cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    header, rows, _ = parse_stdout(result.stdout)
    assert header == ['t', 'oracle_re', 'oracle_im', 'oracle_abs']
    assert len(rows) == 3
    other_path = tmp_path / 'other.conf'
    other_path.write_text('methods = tegmark\nt_max = 1\ndt = 0.5\n')
    header, _, _ = parse_stdout(run_cli('decay', '--config', str(other_path), cwd=tmp_path).stdout)
    assert header == ['t', 'tegmark_re', 'tegmark_im', 'tegmark_abs']
