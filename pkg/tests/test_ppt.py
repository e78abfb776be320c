import numpy as np
import pytest

from tristate.family import eta_b, rho2_b, sigma_b
from tristate.hilbert import CUTS, Cut, maximally_mixed, partial_transpose
from tristate.ppt import ppt_report, ppt_threshold, pt_min_eigenvalue
from tristate.upb import rho3_8


def crossing_by_lapack(family, party, lo, hi, tol=1e-13, psd_tol=1e-12):
    """Boundary of ``lmin(PT) >= -psd_tol`` by bisection with numpy's eigvalsh."""
    f = lambda b: np.linalg.eigvalsh(partial_transpose(family(b), party).matrix)[0] >= -psd_tol
    flo = f(lo)
    assert flo != f(hi)
    while hi - lo > tol:
        m = 0.5 * (lo + hi)
        if f(m) == flo:
            lo = m
        else:
            hi = m
    return 0.5 * (lo + hi)


def test_report_on_maximally_mixed():
    rep = ppt_report(maximally_mixed((2, 3, 2)))
    assert set(rep) == set(CUTS)
    for c in CUTS:
        assert rep[c].ppt and rep[c].pt_rank == 12 and rep[c].pt_equals_state
        assert rep[c].lmin == pytest.approx(1 / 12)


def test_report_flags_npt():
    rep = ppt_report(sigma_b(0.5))
    assert rep[Cut.A_BC].ppt
    assert not rep[Cut.B_CA].ppt and not rep[Cut.C_AB].ppt
    assert not rep[Cut.B_CA].pt_equals_state


def test_report_on_upb_state():
    rep = ppt_report(rho3_8())
    for c in CUTS:
        assert rep[c].ppt and rep[c].pt_rank == 8 and rep[c].pt_equals_state


def test_threshold_regression_baseline():
    # measured on this implementation; bracket width 1e-10
    rb = ppt_threshold(rho2_b, "B")
    rc = ppt_threshold(rho2_b, "C")
    assert rb.root == pytest.approx(0.8173408559337261, abs=1e-9)
    assert abs(rb.root - rc.root) <= 1e-12
    assert rb.bracket == pytest.approx((0.81, 0.82))


def test_threshold_matches_independent_crossing():
    ref = crossing_by_lapack(rho2_b, "B", 0.81, 0.82)
    root = ppt_threshold(rho2_b, "B").root
    # the PSD tolerance shifts the verdict by at most tol / slope
    assert abs(root - ref) < 1e-8


def test_threshold_lambda_changes_sign():
    root = ppt_threshold(rho2_b, "B").root
    assert pt_min_eigenvalue(rho2_b(root - 1e-6), "B") < 0
    assert pt_min_eigenvalue(rho2_b(root + 1e-6), "B") > 0


def test_threshold_pt_a_measured():
    r = ppt_threshold(rho2_b, "A")
    assert r.root == pytest.approx(0.3597351668402553, abs=1e-9)
    assert abs(r.root - crossing_by_lapack(rho2_b, "A", 0.35, 0.36)) < 1e-8


def test_threshold_eta():
    for p in "ABC":
        assert ppt_threshold(eta_b, p).root == pytest.approx(0.5117108963802457, abs=1e-9)


def test_threshold_no_sign_change():
    r = ppt_threshold(sigma_b, "A")
    assert r.root is None and r.bracket is None
    assert "no sign change" in r.note and "PPT" in r.note


def test_threshold_bad_interval():
    with pytest.raises(ValueError):
        ppt_threshold(sigma_b, "A", (0.5, 0.5))


def test_pt_b_minimum_is_increasing_on_upper_half():
    bs = np.linspace(0.5, 1.0, 51)
    lm = np.array([pt_min_eigenvalue(rho2_b(b), "B") for b in bs])
    assert np.all(np.diff(lm) > 0)
