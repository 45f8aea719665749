import numpy as np
import pytest
from hypothesis import given, strategies as st

from citegrowth.estimation import (
    NoSolutionError,
    calibrate_p_ff,
    estimate_p,
    estimate_p_ff,
    expected_burned,
    expected_degree,
    ff_expected_degree,
    fit_cit,
    read_fraction,
)


def burned_series(p, terms=2000):
    # partial sum of the geometric series in p/(1-p)
    r = p / (1 - p)
    return sum(r ** x for x in range(terms))


def test_expected_burned_values():
    assert expected_burned(0.0) == 1.0
    assert expected_burned(0.3) == pytest.approx(1.75)
    assert expected_burned(0.369) == pytest.approx(0.631 / 0.262)
    assert expected_burned(0.369) == pytest.approx(2.408, abs=1e-3)


@pytest.mark.parametrize("p", [0.0, 0.1, 0.25, 0.4, 0.45])
def test_expected_burned_is_geometric_series(p):
    assert expected_burned(p) == pytest.approx(burned_series(p), rel=1e-9)


def test_expected_burned_domain():
    with pytest.raises(ValueError):
        expected_burned(0.5)
    with pytest.raises(ValueError):
        expected_burned(-0.1)


def test_expected_burned_monotone_divergent():
    ps = np.linspace(0, 0.4999, 200)
    vals = [expected_burned(p) for p in ps]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert expected_burned(0.5 - 1e-9) > 1e8


def test_expected_degree_values():
    assert expected_degree(0.0, 0.5) == pytest.approx(4.0)
    assert expected_degree(0.369, 0.593) == pytest.approx(7.93, abs=0.005)
    assert expected_degree(0.3, 0.75) == pytest.approx(2 * 0.75 * 1.75 / (0.25 - 0.25 ** 2.75))
    assert expected_degree(0.3, 0.75) == pytest.approx(11.5, abs=0.05)
    with pytest.raises(ValueError):
        expected_degree(0.3, 0.0)


def test_expected_degree_monotone_grid():
    ps = np.linspace(0.0, 0.45, 20)
    qs = np.linspace(0.05, 0.95, 20)
    grid = np.array([[expected_degree(p, q) for q in qs] for p in ps])
    assert np.all(np.diff(grid, axis=0) > 0)
    assert np.all(np.diff(grid, axis=1) > 0)


def test_estimate_p_roundtrip():
    assert estimate_p(expected_degree(0.3, 0.75), 0.75) == pytest.approx(0.3, abs=1e-6)


def test_estimate_p_cora_degree():
    # inverting the bound at the observed degree gives 0.3619, a little under the tabulated 0.369
    assert estimate_p(7.697, 0.593) == pytest.approx(0.369, abs=0.01)
    assert expected_degree(estimate_p(7.697, 0.593), 0.593) == pytest.approx(7.697, abs=1e-9)


def test_estimate_p_infeasible():
    with pytest.raises(NoSolutionError, match=r"\[4"):
        estimate_p(0.1, 0.5)


@given(st.floats(0.0, 0.47), st.floats(0.02, 0.98))
def test_estimate_p_inverts_expected_degree(p, q):
    assert estimate_p(expected_degree(p, q), q) == pytest.approx(p, abs=1e-6)


def test_read_fraction():
    assert read_fraction(0.0, 2.0) == 1.0
    assert read_fraction(0.3, 7.0) == pytest.approx(0.5)
    assert read_fraction(0.369, 7.697) == pytest.approx(0.626, abs=1e-3)


def test_fit_cit_bundle():
    fit = fit_cit(7.697, 0.593)
    assert 0 <= fit.p_hat < 0.5
    assert fit.k_pred == pytest.approx(7.697)
    assert fit.v_bar == pytest.approx(expected_burned(fit.p_hat))
    assert fit.read_fraction == pytest.approx(2 * fit.v_bar / 7.697)
    assert set(fit.as_dict()) == {"p_hat", "q_fixed", "v_bar", "k_pred", "read_fraction"}


def test_ff_closed_form():
    p = estimate_p_ff(7.697)
    assert ff_expected_degree(p) == pytest.approx(7.697)
    assert p == pytest.approx(0.4253, abs=1e-4)
    with pytest.raises(NoSolutionError):
        estimate_p_ff(1.5)


def test_ff_calibration_exceeds_closed_form():
    # neighborhoods saturate, so the realized degree needs a larger p than the bound suggests
    p_cal = calibrate_p_ff(6.0, 1500, realizations=2, seed=1, tol=0.1)
    assert p_cal > estimate_p_ff(6.0)
