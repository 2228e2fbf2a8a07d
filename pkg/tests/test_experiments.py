import math

import numpy as np
import pytest

from isowiener import experiments as exp
from isowiener.constants import c_app, c_int
from isowiener.streams import RngStream


def test_error_table_app_d1():
    rows = exp.error_table("app", 1, [1, 4, 16])
    np.testing.assert_allclose([r.analytic_error for r in rows], [0.5, 0.25, 0.125], atol=1e-14)


def test_rate_study_int_d1_analytic_column():
    rows = exp.rate_study("int", 1, [1, 2, 4, 8], replicates=200, rng=RngStream(1))
    expected = math.sqrt(1 / 6) * np.array([1, 1 / 2, 1 / 4, 1 / 8])
    np.testing.assert_allclose([r.analytic_error for r in rows], expected, rtol=1e-13)
    for row in rows:
        assert row.n == row.p and row.stderr >= 0 and row.replicates == 200
        assert row.deviation() < 4, row


def test_rate_study_app_d1_agreement():
    rows = exp.rate_study("app", 1, [1, 4, 16], replicates=200, rng=RngStream(2), grid_m=64)
    np.testing.assert_allclose([r.analytic_error for r in rows], [0.5, 0.25, 0.125], atol=1e-14)
    for row in rows:
        assert row.deviation(allowance=0.02) < 4, row


def test_rate_study_is_deterministic():
    a = exp.rate_study("int", 2, [1, 2], replicates=40, rng=RngStream(9))
    b = exp.rate_study("int", 2, [1, 2], replicates=40, rng=RngStream(9))
    assert a == b


def test_rate_study_validation():
    with pytest.raises(ValueError):
        exp.rate_study("int", 1, [], replicates=40)
    with pytest.raises(ValueError):
        exp.rate_study("int", 1, [4, 2], replicates=40)
    with pytest.raises(ValueError):
        exp.rate_study("sum", 1, [1, 2], replicates=40)


@pytest.mark.parametrize("problem, d, slope", [("int", 1, -1.0), ("app", 2, -0.25),
                                               ("int", 3, -2 / 3)])
def test_fit_loglog_slope_on_analytic_rows(problem, d, slope):
    rows = exp.error_table(problem, d, range(1, 9))
    fitted, _, resid = exp.rows_slope(rows)
    assert abs(fitted - slope) < 1e-10
    assert resid < 1e-10


def test_fit_loglog_slope_recovers_line():
    x = np.array([1.0, 2.0, 5.0, 10.0])
    slope, intercept, resid = exp.fit_loglog_slope(x, 3.0 * x**-1.5)
    assert slope == pytest.approx(-1.5, abs=1e-12)
    assert intercept == pytest.approx(math.log(3.0), abs=1e-12)


def test_fit_loglog_slope_degenerate():
    with pytest.raises(ValueError):
        exp.fit_loglog_slope([1, 2], [1, 2])
    with pytest.raises(ValueError):
        exp.fit_loglog_slope([2, 2, 2], [1, 2, 3])


def test_complexity_curve_int_d1():
    eps = 0.05 / 2.0 ** np.arange(8)
    curve = exp.complexity_curve("int", 1, eps)
    assert abs(curve.slope() + 1.0) < 0.05
    assert all(r.achieved_error <= r.epsilon * (1 + 1e-10) for r in curve.rows)


def test_complexity_curve_app_d2():
    curve = exp.complexity_curve("app", 2, np.geomspace(0.3, 0.05, 20))
    assert abs(curve.slope() + 4.0) < 0.1
    assert curve.expected_slope() == -4.0


def test_complexity_curve_monotone_and_sorted():
    curve = exp.complexity_curve("int", 2, [0.01, 0.1, 0.03])
    eps = [r.epsilon for r in curve.rows]
    assert eps == sorted(eps, reverse=True)
    ns = [r.n for r in curve.rows]
    assert ns == sorted(ns)


@pytest.mark.parametrize("eps", [[0.0], [-0.1], [0.6]])
def test_complexity_curve_rejects_bad_eps(eps):
    with pytest.raises(ValueError):
        exp.complexity_curve("app", 1, eps)


@pytest.mark.parametrize("d, p, ratio", [(1, 4, 2.0), (2, 3, math.sqrt(3)), (3, 2, math.sqrt(2))])
def test_mc_comparison(d, p, ratio):
    rep = exp.mc_comparison(d, p)
    assert abs(rep.ratio - ratio) < 1e-10
    assert abs(rep.expected_ratio - ratio) < 1e-12


def test_midpoint_vs_haber():
    rep = exp.midpoint_vs_haber(1, 1)
    assert rep.midpoint_error == pytest.approx(math.sqrt(1 / 12), abs=1e-10)
    assert rep.haber_error == pytest.approx(math.sqrt(1 / 6), abs=1e-12)
    rep = exp.midpoint_vs_haber(1, 2)
    assert 0 < rep.midpoint_error and 0 < rep.haber_error
    assert 0.5 <= rep.ratio <= 2
    assert rep.ratio == pytest.approx(rep.midpoint_error / rep.haber_error)


def test_write_csv_header_and_round_trip(tmp_path):
    rows = exp.rate_study("int", 1, [1, 2], replicates=30, rng=RngStream(0))
    path = tmp_path / "rate.csv"
    exp.write_csv(rows, path)
    text = path.read_bytes().decode()
    assert text.startswith("problem,d,p,n,analytic_error,empirical_error,stderr,replicates\r\n")
    back = exp.read_csv(path)
    for row, parsed in zip(rows, back):
        for name in ("analytic_error", "empirical_error", "stderr"):
            assert float(parsed[name]) == pytest.approx(getattr(row, name), rel=1e-11)
        assert int(parsed["p"]) == row.p


def test_write_csv_empty(tmp_path):
    path = tmp_path / "empty.csv"
    exp.write_csv([], path, row_type=exp.RateStudyRow)
    assert path.read_text().strip() == "problem,d,p,n,analytic_error,empirical_error,stderr,replicates"
    with pytest.raises(ValueError):
        exp.write_csv([], path)


def test_write_csv_io_error_names_path(tmp_path):
    bad = tmp_path / "missing" / "out.csv"
    with pytest.raises(OSError, match="missing"):
        exp.write_csv(exp.error_table("app", 1, [1]), bad)


def test_constants_table_values():
    rows = exp.constants_table([1, 2])
    assert rows[0].c_int == pytest.approx(1 / 6, abs=1e-14)
    assert rows[1].c_app == pytest.approx(c_app(2))
    assert rows[1].c_int == pytest.approx(c_int(2))


def test_load_config(tmp_path):
    good = tmp_path / "cfg.json"
    good.write_text('{"problem": "int", "d": 2, "p_list": [1, 2], "master_seed": 3}')
    assert exp.load_config(good)["p_list"] == [1, 2]
    bad = tmp_path / "bad.json"
    bad.write_text('{"dimension": 2}')
    with pytest.raises(ValueError):
        exp.load_config(bad)
