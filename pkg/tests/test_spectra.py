import math

import numpy as np
import pytest
from scipy import special as sp_special

from billiard_weyl import geometry as g
from billiard_weyl import spectra as spc
from billiard_weyl import weyl as w
from billiard_weyl.errors import DomainError


def test_rectangle_first_eigenvalue():
    s = spc.rectangle_spectrum(1.0, 1.0, 100.0)
    assert s.eigenvalues[0] == pytest.approx(2 * math.pi**2, rel=1e-14)


def test_rectangle_exhaustive_enumeration():
    a, b, emax = 1.0, 2.0, 30.0
    s = spc.rectangle_spectrum(a, b, emax)
    brute = sorted(
        math.pi**2 * (m**2 / a**2 + n**2 / b**2)
        for m in range(1, 40)
        for n in range(1, 40)
        if math.pi**2 * (m**2 / a**2 + n**2 / b**2) <= emax
    )
    assert np.allclose(s.eigenvalues, brute, rtol=1e-14)


def test_rectangle_symmetric_in_sides():
    s1 = spc.rectangle_spectrum(1.0, 2.0, 200.0)
    s2 = spc.rectangle_spectrum(2.0, 1.0, 200.0)
    assert np.allclose(s1.eigenvalues, s2.eigenvalues, rtol=1e-14)


def test_rectangle_count_tracks_smooth_counting():
    a, b, emax = 1.0, 2.0 ** (1.0 / 3.0), 3000.0
    s = spc.rectangle_spectrum(a, b, emax)
    e = w.weyl_expansion(g.measures(g.rectangle(a, b)))
    expect = w.smooth_counting(e, emax)
    assert abs(len(s) - expect) < 6.0 * emax**0.25


def test_rectangle_empty_spectrum_error():
    with pytest.raises(spc.EmptySpectrumError):
        spc.rectangle_spectrum(1.0, 1.0, 10.0)


def test_bessel_zeros_match_scipy_oracle():
    for order in (0, 1, 5, 17):
        mine = spc.bessel_zeros_bracketed(order, 60.0)
        oracle = sp_special.jn_zeros(order, len(mine))
        assert np.allclose(mine, oracle, rtol=1e-12, atol=1e-10)


def test_disk_first_eigenvalue_and_degeneracy():
    s = spc.disk_spectrum(1.0, 60.0)
    assert s.eigenvalues[0] == pytest.approx(2.404825557695773**2, rel=1e-12)
    # first order-one zero appears twice
    j11 = sp_special.jn_zeros(1, 1)[0]
    idx = np.searchsorted(s.eigenvalues, j11**2 - 1e-9)
    assert s.eigenvalues[idx] == pytest.approx(j11**2, rel=1e-12)
    assert s.eigenvalues[idx + 1] == pytest.approx(j11**2, rel=1e-12)


def test_disk_radius_scaling():
    s1 = spc.disk_spectrum(1.0, 100.0)
    s2 = spc.disk_spectrum(2.0, 25.0)
    assert np.allclose(s2.eigenvalues, s1.eigenvalues / 4.0, rtol=1e-12)


def test_disk_count_tracks_smooth_counting():
    s = spc.disk_spectrum(1.0, 1500.0)
    e = w.weyl_expansion(g.measures(g.disk()))
    expect = w.smooth_counting(e, 1500.0)
    assert abs(len(s) - expect) < 6.0 * 1500.0**0.25


def test_counting_function_right_continuous_step():
    s = spc.rectangle_spectrum(1.0, 1.0, 300.0)
    ev = s.eigenvalues
    grid = np.concatenate([ev - 1e-9, ev + 1e-9])
    n = spc.counting_function(s, grid)
    k = len(ev)
    assert np.all(n[k:] >= n[:k])
    assert spc.counting_function(s, np.array([s.emax]))[0] == len(ev)
    # value at an eigenvalue includes it
    assert spc.counting_function(s, ev[:1])[0] >= 1.0


def test_staircase_residual_square_quarter():
    s = spc.rectangle_spectrum(1.0, 1.0, 5000.0)
    e = w.weyl_expansion(g.measures(g.square()))
    r = spc.staircase_residual(s, e, (500.0, 5000.0))
    assert r["mean"] == pytest.approx(0.25, abs=0.03)


def test_staircase_residual_zero_expansion_gives_mean_count():
    s = spc.rectangle_spectrum(1.0, 1.0, 3000.0)
    zero = w.SpectralExpansion(0.0, 0.0, 0.0, 0.0, 0.0)
    r = spc.staircase_residual(s, zero, (100.0, 3000.0), grid_points=4001)
    grid = np.linspace(100.0, 3000.0, 4001)
    assert r["mean"] == pytest.approx(float(np.mean(spc.counting_function(s, grid))),
                                      rel=1e-12)


def test_staircase_residual_window_stability():
    a, b = 1.0, 2.0 ** (1.0 / 3.0)
    s = spc.rectangle_spectrum(a, b, 6000.0)
    e = w.weyl_expansion(g.measures(g.rectangle(a, b)))
    r1 = spc.staircase_residual(s, e, (1000.0, 3500.0))
    r2 = spc.staircase_residual(s, e, (1000.0, 6000.0))
    assert abs(r2["mean"] - r1["mean"]) < 3.0 * (r1["stderr"] + r2["stderr"]) + 0.02


def test_staircase_residual_insufficient_data():
    s = spc.rectangle_spectrum(1.0, 1.0, 400.0)
    e = w.weyl_expansion(g.measures(g.square()))
    with pytest.raises(spc.InsufficientDataError):
        spc.staircase_residual(s, e, (390.0, 400.0))


def test_staircase_residual_window_validation():
    s = spc.rectangle_spectrum(1.0, 1.0, 400.0)
    e = w.weyl_expansion(g.measures(g.square()))
    with pytest.raises(DomainError):
        spc.staircase_residual(s, e, (100.0, 500.0))
