"""Smoke tests for the python bindings (numerics are covered by the C++ suite)."""

import json
import math

import pytest

import darksim as ds


def test_wigner3j_known_value():
    # (1 1 0; 1 -1 0) = 1/sqrt(3)
    assert ds.wigner3j(1, 1, 0, 1, -1, 0) == pytest.approx(1 / math.sqrt(3), rel=1e-14)


def test_spherical_components_unitary():
    f = ds.spherical_components(0.3 + 0.1j, -0.2j, 0.9)
    assert f.norm() == pytest.approx(
        math.sqrt(abs(0.3 + 0.1j) ** 2 + abs(-0.2j) ** 2 + 0.81), rel=1e-14
    )


def test_rabi_matrix_rms_norm():
    f = ds.linear_polarization_at_angle(0.7, 1.0)
    m = ds.rabi_matrix(1.0, 0.0, f, 0.25)
    total = sum(abs(v) ** 2 for row in m for v in row)
    assert math.sqrt(total) == pytest.approx(0.25, rel=1e-12)


def test_dark_space_dimensions():
    f = ds.linear_polarization_at_angle(0.9, 1.0)
    assert ds.dark_space(1.0, 0.0, f).shape == (3, 2)
    assert ds.dark_state_count(1.0, 0.0, f) == 2
    assert ds.dark_state_count(0.5, 1.5, f) == 0


def test_solve_point_two_level():
    ex = ds.make_preset("TwoLevelGeneric")
    ds.apply_parameter(ex, "omega", 1.0)
    res = ds.solve_point(ex)
    assert res["error"] == ""
    assert res["pf"] == pytest.approx(ds.two_level_population(1.0, 0.0), abs=1e-10)


def test_solve_point_j10_reference():
    ex = ds.make_preset("J10")
    got = ds.solve_point(ex)["pf"]
    want = ds.j10_population(
        math.sqrt(3) / 5, math.sqrt(3) / 20, math.acos(1 / math.sqrt(3)), 0.0
    )
    assert got == pytest.approx(want, rel=1e-8)
    assert got == pytest.approx(1 / 29, rel=1e-10)


def test_run_scan_roundtrip():
    config = {
        "preset": "J10",
        "axes": [{"name": "detuning", "min": -0.5, "max": 0.5, "count": 5}],
    }
    out = ds.run_scan(json.dumps(config))
    assert out["shape"] == [5]
    assert len(out["records"]) == 5
    mid = out["records"][2]
    assert mid["params"][0] == pytest.approx(0.0, abs=1e-15)
    assert mid["pf"] == pytest.approx(1 / 29, rel=1e-8)
