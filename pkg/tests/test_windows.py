import math
import warnings

import numpy as np
import pytest
from hypothesis import example, given
from hypothesis import strategies as st

from oracles import PHI_MOMENT_ZERO, phi_primitive_closed_form
from rdf_lab import (
    BumpWindow,
    FreqInterval,
    GridSpec,
    IntervalFamily,
    InvalidArgument,
    NumericalInconsistency,
    OutOfBandError,
    is_nondegenerate,
    kernel_l1_norm,
    make_base_window,
    make_dyadic_unity,
    phi_moment_zero,
    phi_primitive,
    scale_to_interval,
    vanishing_scan,
)
from rdf_lab.quadrature import adaptive_simpson, gauss_legendre_nodes, romberg_uniform
from rdf_lab.windows import smooth_step, standard_bump, _moment_frequency_route, _moment_time_route


class ZeroWindow:
    """Stand-in that bypasses the window invariants: identically zero profile."""

    delta = 0.125

    def profile(self, xi):
        return np.zeros_like(np.asarray(xi, dtype=float))


class TestQuadrature:
    def test_simpson_polynomial(self):
        assert adaptive_simpson(lambda x: x**3 - 2 * x, 0.0, 2.0) == pytest.approx(0.0, abs=1e-12)

    def test_simpson_complex(self):
        val = adaptive_simpson(lambda x: np.exp(1j * x), 0.0, np.pi, tol=1e-12)
        assert val == pytest.approx(2j, abs=1e-10)

    def test_simpson_bump_mass(self):
        z, w = gauss_legendre_nodes(-1, 1, 200)
        ref = w @ standard_bump(z)
        assert adaptive_simpson(standard_bump, -1.0, 1.0, tol=1e-12) == pytest.approx(ref, rel=1e-9)

    def test_romberg_exponential(self):
        x = np.linspace(0, 1, 2**8 + 1)
        assert romberg_uniform(np.exp(x), x[1] - x[0]) == pytest.approx(math.e - 1, rel=1e-14)

    def test_romberg_needs_power_of_two_panels(self):
        with pytest.raises(ValueError):
            romberg_uniform(np.ones(10), 0.1)


class TestBaseWindow:
    def test_support_edges(self):
        w = make_base_window(1 / 8)
        assert w.profile(1 / 8) == 0.0
        assert w.profile(7 / 8) == 0.0

    def test_peak(self):
        assert make_base_window(1 / 8).profile(0.5) == 1.0

    def test_symmetry(self):
        w = make_base_window(1 / 8)
        assert w.profile(0.25) == w.profile(0.75)

    @pytest.mark.parametrize("delta", [0.0, 0.5, -0.1, 0.7])
    def test_invalid_delta(self, delta):
        with pytest.raises(InvalidArgument):
            make_base_window(delta)

    @given(st.floats(0.01, 0.49), st.floats(-2.0, 3.0))
    def test_invariants(self, delta, xi):
        w = BumpWindow(delta)
        v = float(w.profile(xi))
        assert 0.0 <= v <= 1.0
        if xi <= delta or xi >= 1 - delta:
            assert v == 0.0
        assert float(w.profile(1.0 - xi)) == pytest.approx(v, abs=1e-15)


class TestIntervals:
    def test_interval_validation(self):
        with pytest.raises(InvalidArgument):
            FreqInterval(1.0, 1.0)
        with pytest.raises(InvalidArgument):
            FreqInterval(-1.0, 1.0)
        assert FreqInterval(-2.0, 0.0).length == 2.0

    def test_family_overlap_rejected(self):
        with pytest.raises(InvalidArgument):
            IntervalFamily.from_pairs([(0, 2), (1, 3)])
        fam = IntervalFamily.from_pairs([(0, 1), (1, 2), (-3, -1)])
        assert len(fam) == 3


class TestScaleToInterval:
    grid = GridSpec(1024, 64.0)

    def test_unit_interval_is_identity(self):
        w = BumpWindow(1 / 8)
        m = scale_to_interval(w, FreqInterval(0, 1), self.grid)
        np.testing.assert_array_equal(m, w.profile(self.grid.freqs))

    def test_affine_reparametrisation(self):
        w = BumpWindow(1 / 8)
        m = scale_to_interval(w, FreqInterval(2, 4), self.grid)
        assert m[self.grid.bin_of(3.0)] == 1.0
        assert m[self.grid.bin_of(2.0)] == 0.0

    def test_negative_interval_support(self):
        d = 1 / 8
        w = BumpWindow(d)
        m = scale_to_interval(w, FreqInterval(-4, -2), self.grid)
        xi = self.grid.freqs
        outside = (xi <= -4 + 2 * d) | (xi >= -2 - 2 * d)
        assert np.all(m[outside] == 0.0)
        assert np.all(m[~outside] > 0.0)

    def test_out_of_band(self):
        with pytest.raises(OutOfBandError):
            scale_to_interval(BumpWindow(), FreqInterval(4, 9), self.grid)

    def test_unresolved_warns(self):
        with pytest.warns(UserWarning):
            scale_to_interval(BumpWindow(), FreqInterval(1, 1 + 4 / 64), self.grid)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            scale_to_interval(BumpWindow(), FreqInterval(1, 2), self.grid)


class TestDyadicUnity:
    grid = GridSpec(4096, 64.0)

    def test_plateau_three_halves(self):
        u = make_dyadic_unity(self.grid, 1.5)
        assert u.level(0, 1.25) == 1.0
        xi = self.grid.freqs
        flat = (np.abs(xi) >= 1) & (np.abs(xi) <= 1.5)
        assert np.all(u.multiplier(0)[flat] == 1.0)

    @pytest.mark.parametrize("plateau", [1.0, 1.5])
    def test_partition_of_unity_on_annulus(self, plateau):
        u = make_dyadic_unity(self.grid, plateau)
        lo, hi = u.covered_band
        r = np.abs(self.grid.freqs)
        inside = (r >= lo) & (r <= hi)
        total = np.zeros_like(r)
        for j in u.levels:  # telescoping oracle: evaluate each level independently
            total += u.base(self.grid.freqs * 2.0**-j) - u.base(self.grid.freqs * 2.0 ** (1 - j))
        assert np.max(np.abs(total[inside] - 1)) <= 1e-12
        assert np.max(np.abs(u.multipliers.sum(axis=0)[inside] - 1)) <= 1e-12

    @pytest.mark.parametrize("plateau", [1.0, 1.5])
    def test_support_containment(self, plateau):
        u = make_dyadic_unity(self.grid, plateau)
        r = np.abs(self.grid.freqs)
        for j, row in zip(u.levels, u.multipliers):
            outside = (r < 2.0 ** (j - 1)) | (r > 2.0 ** (j + 1))
            assert np.all(row[outside] == 0.0)

    @pytest.mark.parametrize("plateau", [1.0, 1.5])
    def test_overlap_bound(self, plateau):
        u = make_dyadic_unity(self.grid, plateau)
        lo, hi = u.covered_band
        r = np.abs(self.grid.freqs)
        inside = (r >= lo) & (r <= hi)
        assert np.max(np.count_nonzero(u.multipliers, axis=0)) <= 2
        sq = np.sum(u.multipliers**2, axis=0)[inside]
        assert sq.min() >= 0.5 - 1e-12 and sq.max() <= 1 + 1e-12

    def test_level_range(self):
        u = make_dyadic_unity(self.grid, 1.0)
        assert (u.j_min, u.j_max) == (-6, 4)
        assert u.covered_band == (1 / 64, 8.0)

    def test_bad_plateau_and_tiny_grid(self):
        with pytest.raises(InvalidArgument):
            make_dyadic_unity(self.grid, 1.25)
        with pytest.raises(InvalidArgument):
            make_dyadic_unity(GridSpec(8, 1.0), 1.0)

    @given(st.floats(-0.5, 1.5))
    @example(0.5)
    def test_smooth_step_antisymmetry(self, t):
        a, b = smooth_step(t), smooth_step(1 - t)
        assert 0 <= a <= 1
        assert a + b == pytest.approx(1.0, abs=2e-16)


class TestMoment:
    @pytest.mark.parametrize("delta", [1 / 16, 1 / 8, 1 / 4])
    def test_against_reference(self, delta):
        val = phi_moment_zero(BumpWindow(delta))
        ref = PHI_MOMENT_ZERO[delta]
        assert abs(val - ref) <= 1e-8 * abs(ref)

    @pytest.mark.parametrize("delta", [1 / 16, 1 / 8, 1 / 4])
    def test_routes_agree(self, delta):
        w = BumpWindow(delta)
        f, t = _moment_frequency_route(w), _moment_time_route(w)
        assert abs(f - t) <= 1e-6 * abs(f)

    def test_zero_window(self):
        assert phi_moment_zero(ZeroWindow()) == 0
        assert not is_nondegenerate(ZeroWindow())

    def test_nondegenerate_default(self):
        w = BumpWindow()
        assert abs(phi_moment_zero(w)) > 0
        assert is_nondegenerate(w, 1e-8)
        assert not is_nondegenerate(w, 1.0)
        with pytest.raises(InvalidArgument):
            is_nondegenerate(w, 0.0)

    def test_inconsistency_detected(self, monkeypatch):
        import rdf_lab.windows as win

        true_time = win._moment_time_route
        monkeypatch.setattr(win, "_moment_time_route", lambda w: true_time(w) * (1 + 1e-4))
        with pytest.raises(NumericalInconsistency):
            win._phi_moment(BumpWindow(0.2))

    def test_primitive_against_brute_force(self):
        w = BumpWindow(1 / 8)
        y = np.array([-8.0, -1.0, 0.0, 0.5, 4.0, 16.0])
        np.testing.assert_allclose(
            phi_primitive(w, y), phi_primitive_closed_form(1 / 8, y), atol=1e-9
        )
        assert phi_primitive(w, 0.0) == pytest.approx(phi_moment_zero(w), abs=1e-10)

    def test_kernel_l1_norm(self):
        # |Phi(y)| <= ||phi||_1 for all y
        w = BumpWindow(1 / 8)
        l1 = kernel_l1_norm(w)
        assert l1 == pytest.approx(1.2286257, rel=1e-6)
        assert np.max(np.abs(phi_primitive(w, np.linspace(-20, 20, 401)))) <= l1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_vanishing_scan_finite(k):
    v = vanishing_scan(BumpWindow(1 / 8), k)
    assert np.isfinite(v) and v > 0
