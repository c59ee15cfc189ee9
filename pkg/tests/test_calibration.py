import numpy as np
import pytest

import config
from calibration import (
    CalibrationError,
    CalibrationTable,
    DeviceConstraints,
    interp,
    load_calibration,
    load_device_profile,
    load_vendor_schedule,
    resolve_calibration,
    save_calibration,
    synthetic_linear,
)


def test_synthetic_interp_at_quarter():
    table = synthetic_linear()
    a, b = interp(table, 0.25)
    assert a == pytest.approx(1.5, abs=1e-12)
    assert b == pytest.approx(0.5, abs=1e-12)


def test_interp_endpoints_exact():
    table = load_calibration(config.settings.calibration_path("synthetic_linear"))
    assert interp(table, 0.0) == (2.0, 0.0)
    assert interp(table, 1.0) == (0.0, 2.0)
    a, b = interp(table, np.array([0.1, 0.9]))
    np.testing.assert_allclose(a, [1.8, 0.2], atol=1e-12)
    np.testing.assert_allclose(b, [0.2, 1.8], atol=1e-12)


def test_interp_out_of_range():
    with pytest.raises(CalibrationError):
        interp(synthetic_linear(), 1.5)
    with pytest.raises(CalibrationError):
        interp(synthetic_linear(), -0.01)


def test_two_point_table_is_linear():
    table = CalibrationTable(s=[0.0, 1.0], a_ghz=[4.0, 0.0], b_ghz=[0.0, 6.0])
    assert interp(table, 0.5) == pytest.approx((2.0, 3.0))


def test_save_load_bit_identical(tmp_path):
    s = np.sort(np.concatenate([[0.0, 1.0], np.random.default_rng(1).uniform(0, 1, 50)]))
    table = CalibrationTable(s=s, a_ghz=np.exp(-3 * s) - np.exp(-3.0), b_ghz=np.sqrt(s) * 7.1, device_id="odd")
    back = load_calibration(save_calibration(table, tmp_path / "odd.csv"))
    assert np.array_equal(back.s, table.s)
    assert np.array_equal(back.a_ghz, table.a_ghz)
    assert np.array_equal(back.b_ghz, table.b_ghz)


def test_load_sorts_and_skips_comments(tmp_path):
    path = tmp_path / "cal.csv"
    path.write_text("# hand-made\ns,A_GHz,B_GHz\n1,0,2\n0,2,0\n0.5,1,1\n", encoding="utf-8")
    table = load_calibration(path)
    assert list(table.s) == [0.0, 0.5, 1.0]
    assert table.device_id == "cal"


@pytest.mark.parametrize(
    "body",
    [
        "s,A_GHz,B_GHz\n0,2,0\n0.5,1,1\n0.5,1,1\n1,0,2\n",   # duplicate s
        "s,A_GHz,B_GHz\n0,2,0\n0.5,2.5,1\n1,0,2\n",          # A increases
        "s,A_GHz,B_GHz\n0,2,0\n0.5,1,1\n1,0,0.5\n",          # B decreases
        "s,A_GHz,B_GHz\n0.1,2,0\n1,0,2\n",                   # grid does not start at 0
        "s,A_GHz,B_GHz\n0,2,0\n0.5,x,1\n1,0,2\n",            # non-numeric
        "s,A,B\n0,2,0\n1,0,2\n",                             # wrong header
        "s,A_GHz,B_GHz\n0,4,0\n1,3,2\n",                     # A(1) far from 0
    ],
)
def test_malformed_tables_rejected(tmp_path, body):
    path = tmp_path / "bad.csv"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(CalibrationError):
        load_calibration(path)


def test_plateau_jitter_tolerated():
    s = [0.0, 0.5, 0.75, 1.0]
    flat = CalibrationTable(s=s, a_ghz=[2.0, 0.0, 5e-10, 0.0], b_ghz=[0.0, 1.0, 1.0 - 5e-10, 2.0])
    assert flat.a_ghz[2] == 5e-10
    with pytest.raises(CalibrationError):
        CalibrationTable(s=s, a_ghz=[2.0, 0.0, 1e-6, 0.0], b_ghz=[0.0, 1.0, 1.0, 2.0])
    with pytest.raises(CalibrationError):
        CalibrationTable(s=s, a_ghz=[2.0, 1.0, 1.0, 1.0], b_ghz=[0.0, 1.0, 1.0, 2.0])


def test_native_csv_behind_long_comment_header(tmp_path):
    path = tmp_path / "annotated.csv"
    comments = "".join(f"# note {i}\n" for i in range(20))
    path.write_text(comments + "s,A_GHz,B_GHz\n0,2,0\n1,0,2\n", encoding="utf-8")
    table = resolve_calibration(str(path))
    assert table.device_id == "annotated"
    assert list(table.b_ghz) == [0.0, 2.0]


def test_vendor_schedule(tmp_path):
    path = tmp_path / "vendor.csv"
    path.write_text(
        "s,A(s) (GHz),B(s) (GHz),C (normalized)\n0,6.0,0.1,0\n0.5,1.0,3.0,0.5\n1,0.0001,9.0,1\n",
        encoding="utf-8",
    )
    table = load_vendor_schedule(path, device_id="vendor")
    assert table.device_id == "vendor"
    assert interp(table, 0.5) == (1.0, 3.0)
    assert resolve_calibration(str(path)).a_ghz[0] == 6.0


def test_device_profiles():
    dc4 = load_device_profile("advantage_system4_1")
    dc6 = load_device_profile("advantage_system6_2")
    assert dc4.h_gain_min == -3.0
    assert dc6.h_gain_min == -4.0
    assert dc6.anneal_time_resolution_us == 0.01
    assert dc6.max_slope == pytest.approx(2.0)


def test_device_validation():
    with pytest.raises(ValueError):
        DeviceConstraints(min_anneal_us=5.0, max_anneal_us=1.0)
    with pytest.raises(CalibrationError):
        load_device_profile("no_such_device")


def test_calibration_dir_override(monkeypatch, tmp_path):
    save_calibration(synthetic_linear(11), tmp_path / "lab_device.csv")
    monkeypatch.setattr(config.settings, "CALIBRATION_DIR", tmp_path)
    table = resolve_calibration("lab_device")
    assert len(table) == 11
