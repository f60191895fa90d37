import numpy as np
import pytest

from main import main
from utils import read_columns


@pytest.fixture
def short_config(short_cfg, write_config):
    return write_config(short_cfg)


def run(*argv):
    return main([str(a) for a in argv])


def read_report(path):
    pairs = (line.split('=', 1) for line in path.read_text().splitlines())
    return {key: value for key, value in pairs}


class TestDigitalCommands:
    def test_emit_lut(self, short_config, tmp_path):
        assert run('emit-lut', '--config', short_config, '--out', tmp_path) == 0
        cols = read_columns(tmp_path / 'lut.csv', dtype=np.int64)
        assert (tmp_path / 'lut.csv').read_text().startswith('index,code\n')
        assert cols['index'].tolist() == list(range(128))
        assert cols['code'][32] == 255
        assert cols['code'][96] == -255

    def test_modulate(self, short_config, tmp_path):
        assert run('modulate', '--config', short_config, '--out', tmp_path) == 0
        cols = read_columns(tmp_path / 'codes.csv', dtype=np.int64)
        assert cols['cycle'].size == 16 * 128
        for name in ('p_code', 'n_code'):
            assert cols[name].min() >= -3
            assert cols[name].max() <= 4

    def test_modulate_from_emitted_table(self, short_config, tmp_path):
        assert run('emit-lut', '--config', short_config, '--out', tmp_path / 'lut') == 0
        assert run('modulate', '--config', short_config, '--out', tmp_path / 'a') == 0
        assert run('modulate', '--config', short_config, '--out', tmp_path / 'b',
                   '--lut', tmp_path / 'lut' / 'lut.csv') == 0
        assert (tmp_path / 'a' / 'codes.csv').read_bytes() == (tmp_path / 'b' / 'codes.csv').read_bytes()

    def test_modulate_is_deterministic(self, short_config, tmp_path):
        run('modulate', '--config', short_config, '--out', tmp_path / 'a')
        run('modulate', '--config', short_config, '--out', tmp_path / 'b')
        assert (tmp_path / 'a' / 'codes.csv').read_bytes() == (tmp_path / 'b' / 'codes.csv').read_bytes()


class TestBadInput:
    def test_missing_key(self, short_cfg, write_config, tmp_path):
        path = write_config(short_cfg, drop=('clock_hz',))
        assert run('simulate', '--config', path, '--out', tmp_path) == 2
        assert not (tmp_path / 'metrics.txt').exists()

    def test_invalid_value(self, short_cfg, write_config, tmp_path):
        path = write_config(short_cfg, extra={'reset_mode': 'SOMETIMES'})
        assert run('emit-lut', '--config', path, '--out', tmp_path) == 2

    def test_missing_config_file(self, tmp_path):
        assert run('emit-lut', '--config', tmp_path / 'none.env', '--out', tmp_path) == 2

    def test_unknown_command(self):
        assert run('oscillate') == 2

    @pytest.mark.parametrize('loads', ['0,abc', '100,50', '-10,0'])
    def test_bad_loads(self, short_config, tmp_path, loads):
        assert run('sweep-load', '--config', short_config, '--out', tmp_path, '--loads', loads) == 2


class TestChainCommands:
    def test_simulate_artifacts(self, short_config, tmp_path):
        assert run('simulate', '--config', short_config, '--out', tmp_path) == 0
        for name in ('dac_out.csv', 'cg_out.csv', 'spectrum.csv', 'spectrum_dac.csv', 'metrics.txt'):
            assert (tmp_path / name).is_file(), name

        dac = read_columns(tmp_path / 'dac_out.csv')
        assert set(dac) == {'time_s', 'value_v'}
        assert dac['time_s'].size == 128 * 64
        assert np.all(np.diff(dac['time_s']) > 0)
        assert 'value_a' in read_columns(tmp_path / 'cg_out.csv')
        assert (tmp_path / 'spectrum.csv').read_text().startswith('freq_hz,dbc\n')

        report = read_report(tmp_path / 'metrics.txt')
        for key in ('thd_pct', 'sfdr_dbc', 'worst_spur_dbc', 'inband_noise_dbc', 'sndr_db',
                    'dac_inband_noise_dbc', 'driving_error_pct', 'reset_mode'):
            assert key in report
        assert report['reset_mode'] == 'HALF_PERIOD'
        assert float(report['thd_pct']) < 1.0

    def test_simulate_is_deterministic(self, short_config, tmp_path):
        run('simulate', '--config', short_config, '--out', tmp_path / 'a')
        run('simulate', '--config', short_config, '--out', tmp_path / 'b')
        for name in ('metrics.txt', 'spectrum.csv', 'cg_out.csv'):
            assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes()

    def test_thd_independent_of_record_length(self, short_cfg, write_config, tmp_path):
        thd = []
        for periods in (64, 128):
            cfg = short_cfg.with_overrides(periods=periods, temperature_k=0.0)
            path = write_config(cfg, name=f'run_{periods}.env')
            assert run('simulate', '--config', path, '--out', tmp_path / str(periods)) == 0
            thd.append(float(read_report(tmp_path / str(periods) / 'metrics.txt')['thd_pct']))
        assert abs(thd[0] - thd[1]) < 0.002

    def test_seed_override_changes_noise(self, short_config, tmp_path):
        run('simulate', '--config', short_config, '--out', tmp_path / 'a', '--seed', 1)
        run('simulate', '--config', short_config, '--out', tmp_path / 'b', '--seed', 2)
        a = read_report(tmp_path / 'a' / 'metrics.txt')
        b = read_report(tmp_path / 'b' / 'metrics.txt')
        assert a['dac_inband_noise_dbc'] != b['dac_inband_noise_dbc']

    def test_compare_reset(self, short_config, tmp_path):
        assert run('compare-reset', '--config', short_config, '--out', tmp_path) == 0
        assert (tmp_path / 'spectrum_full_period.csv').is_file()
        assert (tmp_path / 'spectrum_half_period.csv').is_file()
        report = read_report(tmp_path / 'compare_reset.txt')
        delta = float(report['noise_floor_delta_db'])
        assert np.isfinite(delta)
        assert delta > 0.0
        assert delta == pytest.approx(
            float(report['full_period_cg_noise_dbc']) - float(report['half_period_cg_noise_dbc']), abs=0.5
        )

    def test_sweep_load(self, short_config, tmp_path):
        assert run('sweep-load', '--config', short_config, '--out', tmp_path, '--loads', '0,1000,5000') == 0
        cols = read_columns(tmp_path / 'load_sweep.csv')
        assert cols['load_ohm'].tolist() == [0.0, 1000.0, 5000.0]
        assert cols['driving_error_pct'] == pytest.approx([0.0, 100e3 / 201e3, 500e3 / 205e3], abs=1e-6)
        assert np.all(np.diff(cols['amplitude_a']) < 0)
