import csv
import io
import json
import math

import numpy as np
import pytest

from recipsum.models.asymptotics import FitReport, FittedConstant
from recipsum.utils.compensated import CompensatedSum, two_sum
from recipsum.utils.csv_output import CsvWriter, format_value
from recipsum.utils.errors import DomainError, NumericalError
from recipsum.utils.grid import parse_grid, parse_integer
from recipsum.utils.quadrature import adaptive_quad, gauss_kronrod_panels
from recipsum.utils.settings import SettingsManager
from recipsum.utils.storage import ReportStore


# Grid specs

def test_parse_grid_decades():
    assert parse_grid("1e4:1e8:x10") == [10 ** 4, 10 ** 5, 10 ** 6, 10 ** 7, 10 ** 8]
    assert parse_grid("1000:5000:x2") == [1000, 2000, 4000]
    assert parse_grid(" 3 : 3 : x10 ") == [3]


@pytest.mark.parametrize("spec", ["", "1e4:1e8", "1e4:1e8:10", "1e4:1e8:x1", "1e8:1e4:x10", "1:10:x10", "1.5e0:10:x2"])
def test_parse_grid_rejects(spec):
    with pytest.raises(DomainError):
        parse_grid(spec)


def test_parse_integer():
    assert parse_integer("1e6") == 10 ** 6
    assert parse_integer("1E+04") == 10 ** 4
    assert parse_integer("123") == 123
    with pytest.raises(DomainError):
        parse_integer("abc")
    with pytest.raises(DomainError):
        parse_integer("2.5")


# Quadrature

def test_gauss_kronrod_is_exact_for_polynomials():
    value, err, _ = gauss_kronrod_panels(lambda t: t ** 5, np.array([0.0]), np.array([1.0]))
    assert value[0] == pytest.approx(1.0 / 6.0, rel=1e-15)
    assert err[0] < 1e-14


def test_adaptive_quad_smooth_and_singular():
    assert adaptive_quad(np.sin, 0.0, math.pi).value == pytest.approx(2.0, rel=1e-13)
    result = adaptive_quad(np.sqrt, 0.0, 1.0, rel_tol=1e-12)
    assert result.value == pytest.approx(2.0 / 3.0, rel=1e-11)
    assert result.panels > 1


def test_adaptive_quad_breakpoints_handle_jumps():
    result = adaptive_quad(np.floor, 0.0, 3.0, breakpoints=[1.0, 2.0])
    assert result.value == pytest.approx(3.0, abs=1e-14)
    assert result.panels == 3


def test_adaptive_quad_panel_cap():
    with pytest.raises(NumericalError) as info:
        adaptive_quad(lambda t: np.sin(50.0 * t), 0.0, 100.0, rel_tol=1e-13, max_panels=16)
    assert info.value.diagnostics["panels"] == 16


def test_adaptive_quad_non_finite_integrand():
    with pytest.raises(NumericalError):
        with np.errstate(divide="ignore"):
            adaptive_quad(lambda t: 1.0 / t, -1.0, 1.0)


def test_adaptive_quad_rejects_reversed_interval():
    with pytest.raises(DomainError):
        adaptive_quad(np.sin, 1.0, 0.0)


# Compensated summation

def test_two_sum_is_error_free():
    s, t = two_sum(1e16, 1.0)
    assert s == 1e16
    assert t == 1.0


def test_compensated_sum_survives_cancellation():
    acc = CompensatedSum()
    for value in (1.0, 1e100, 1.0, -1e100):
        acc.add(value)
    assert acc.value == math.fsum([1.0, 1e100, 1.0, -1e100]) == 2.0
    assert acc.error_bound > 0


def test_compensated_blocks_and_copy():
    acc = CompensatedSum()
    acc.add_block(np.full(1000, 0.1))
    snapshot = acc.copy()
    acc.add_block(np.array([1.0, 2.0]))
    assert snapshot.value == pytest.approx(100.0, rel=1e-15)
    assert acc.value == pytest.approx(103.0, rel=1e-15)
    assert abs(acc.value - 103.0) <= acc.error_bound + 1e-13
    acc.add_block(np.array([]))
    assert acc.value == pytest.approx(103.0, rel=1e-15)


# CSV output

def test_csv_rows_round_trip():
    stream = io.StringIO()
    writer = CsvWriter(stream)
    writer.header(["x", "value", "k"])
    values = [10 ** 6, 0.1 + 0.2, 273343 * 10 ** 30]
    writer.row(values)
    text = stream.getvalue()
    assert "\r" not in text
    assert text.splitlines()[0] == "x,value,k"
    parsed = list(csv.reader(io.StringIO(text)))[1]
    assert int(parsed[0]) == values[0]
    assert float(parsed[1]) == values[1]
    assert int(parsed[2]) == values[2]


def test_format_value():
    assert format_value(2.0) == "2.0"
    assert format_value(True) == "true"
    assert format_value(3) == "3"


# Settings

def _write_defaults(tmp_path, data):
    config_dir = tmp_path / "config"
    config_dir.mkdir()
    (config_dir / "defaults.json").write_text(json.dumps(data), encoding="utf-8")


def test_settings_from_file_and_environment(tmp_path):
    _write_defaults(tmp_path, {"threads": 2, "c_env": 0.5})
    manager = SettingsManager(base_dir=tmp_path, environ={"RECIPSUM_THREADS": "4", "RECIPSUM_OUT": "a.csv"})
    settings = manager.load()
    assert settings.threads == 4
    assert settings.c_env == 0.5
    assert settings.segment_size == 1 << 20
    assert manager.env("out") == "a.csv"
    assert manager.env("missing") is None


def test_settings_fallback_when_file_missing(tmp_path):
    settings = SettingsManager(base_dir=tmp_path, environ={}).load()
    assert settings.default_grid == "1e4:1e8:x10"
    assert settings.tolerance is None


def test_settings_reject_invalid_override(tmp_path):
    manager = SettingsManager(base_dir=tmp_path, environ={"RECIPSUM_THREADS": "0"})
    with pytest.raises(DomainError) as info:
        manager.load()
    assert info.value.argument == "threads"


def test_repository_defaults_load():
    settings = SettingsManager(environ={}).load()
    assert settings.large_grid == "1e4:1e9:x10"
    assert settings.direct_sum_cutoff == 10 ** 8


# Report storage

async def test_report_store_saves_and_loads(tmp_path):
    store = ReportStore(tmp_path / "results")
    await store.initialize()
    report = FitReport(constant_name=FittedConstant.C, m=3, samples=[(10, 1.0), (100, 1.5), (1000, 1.25)],
                       retained=3, central_value=1.25, spread=0.5, tolerance=1.0, stabilized=True)
    path = await store.save_fit(report)
    assert path.name == "C_m3_x1000.json"
    assert await store.list_fits() == ["C_m3_x1000"]
    assert await store.load_fit("C_m3_x1000") == report
    assert await store.load_fit("missing") is None

    run_path = await store.save_run("verify", {"grid": [10, 100], "checks": {"C stabilized": True}})
    record = json.loads(run_path.read_text(encoding="utf-8"))
    assert record["command"] == "verify"
    assert record["grid"] == [10, 100]
