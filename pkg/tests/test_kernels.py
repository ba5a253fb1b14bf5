"""Kernel supremum quadrature, the trilinear bound, and the auxiliary
convolution inequality."""

import math
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaklab import grids as G
from zaklab import kernels as K

BOX2 = (2.0 * np.pi, 2.0 * np.pi)

SEPARABLE = K.KernelSpec("S", "minus", k=0.0, l=0.0, p=2.0, b=1.0, b1=1.0, c1=0.0)
CORNER_S = K.KernelSpec("S", "minus", k=0.0, l=-0.5, p=2.0, b=0.55, b1=0.55, c1=0.4)
CORNER_W = K.KernelSpec("W", "minus", k=0.0, l=-0.5, p=2.0, b=0.55, b1=0.55, c=0.4)


class TestShift:
    def test_symmetric_point(self):
        assert K.complete_square_shift(0.5, 0.5, "minus") == (0.0, 0.0)

    def test_worked_example(self):
        xi1, xi2 = K.complete_square_shift(1.5, 0.5, "minus")
        assert (1.5**2 - 0.5**2 - abs(1.5 - 0.5)) == pytest.approx(
            xi1**2 - xi2**2
        )
        assert (xi1, xi2) == (1.0, 0.0)

    @settings(max_examples=100, deadline=None)
    @given(
        st.floats(min_value=-50, max_value=50),
        st.floats(min_value=-50, max_value=50),
        st.sampled_from(["plus", "minus"]),
    )
    def test_identity_on_both_orderings(self, a, b, sign):
        y1, y2 = K.complete_square_shift(a, b, sign)
        sg = 1.0 if sign == "plus" else -1.0
        lhs = a * a - b * b + sg * abs(a - b)
        assert abs(lhs - (y1 * y1 - y2 * y2)) < 1e-9 * max(1.0, abs(lhs))

    def test_bad_sign(self):
        with pytest.raises(K.KernelError):
            K.complete_square_shift(1.0, 2.0, "up")


class TestResonancePoint:
    @given(
        st.floats(min_value=-100, max_value=100),
        st.floats(min_value=-100, max_value=100),
        st.floats(min_value=-100, max_value=100),
        st.floats(min_value=-100, max_value=100),
    )
    def test_identity_by_construction(self, a, b, s1, s2):
        rp = K.ResonancePoint(a, b, s1, s2)
        scale = 1.0 + abs(rp.z) + abs(s1) + abs(s2)
        assert abs(rp.z - (rp.sigma1 - rp.sigma2 - rp.sigma)) <= 1e-12 * scale
        assert rp.xi == rp.xi1 - rp.xi2


class TestKernelSpec:
    def test_family_and_exponent_validation(self):
        with pytest.raises(K.KernelError):
            K.KernelSpec("X", "plus", 0, 0, 2.0, 0.6, 0.6, c1=0.3)
        with pytest.raises(K.KernelError):
            K.KernelSpec("S", "plus", 0, 0, 2.0, 0.6, 0.6)  # missing c1
        with pytest.raises(K.KernelError):
            K.KernelSpec("W", "plus", 0, 0, 2.0, 0.6, 0.6)  # missing c

    def test_from_point_derives_dual_exponents(self):
        from fractions import Fraction as F
        from zaklab.params import ParamPoint

        pt = ParamPoint(0, F(-1, 2), 2, F(5, 8), F(5, 8))
        spec = K.KernelSpec.from_point(pt, "S", "plus", eps=0.01)
        assert spec.c1 == pytest.approx(1 - 0.625 - 0.01)
        assert spec.c == pytest.approx(1 - 0.625 - 0.01)


def riemann_mass_s(spec, xi1, sigma1, R, h):
    """Independent oracle: plain 2D midpoint-shifted Riemann sum."""
    x2 = np.arange(-R + h / 2, R, h)
    s2 = np.arange(-R + h / 2, R, h)
    p = spec.p
    total = 0.0
    for xx in x2:
        sig = sigma1 - s2 - (xi1 * xi1 - xx * xx)
        row = (
            (1 + sig**2) ** (-spec.b * p / 2)
            * (1 + s2**2) ** (-spec.b1 * p / 2)
            * (1 + (xi1 - xx) ** 2) ** (-spec.l * p / 2)
            * (1 + xx**2) ** (-spec.k * p / 2)
        )
        total += float(np.sum(row)) * h * h
    pref = (1 + sigma1**2) ** (-spec.c1 * p / 2) * (1 + xi1**2) ** (spec.k * p / 2)
    return pref * total


def riemann_mass_w(spec, xi, sigma, R, h):
    x2 = np.arange(-R + h / 2, R, h)
    s2 = np.arange(-R + h / 2, R, h)
    p = spec.p
    total = 0.0
    for xx in x2:
        z = (xi + xx) ** 2 - xx**2
        s1 = sigma + s2 + z
        row = (
            (1 + (xi + xx) ** 2) ** (-spec.k * p / 2)
            * (1 + xx**2) ** (-spec.k * p / 2)
            * (1 + s1**2) ** (-spec.b1 * p / 2)
            * (1 + s2**2) ** (-spec.b1 * p / 2)
        )
        total += float(np.sum(row)) * h * h
    pref = (
        (1 + sigma**2) ** (-spec.c * p / 2)
        * (1 + xi**2) ** (spec.l * p / 2)
        * abs(xi) ** p
    )
    return pref * total


class TestSchrodingerProductMass:
    def test_separable_point_against_riemann_oracle(self):
        val = K.schrodinger_product_mass(SEPARABLE, 0.0, 0.0, 50.0, 0.25)
        oracle = riemann_mass_s(SEPARABLE, 0.0, 0.0, 50.0, 0.125)
        assert val == pytest.approx(oracle, rel=0.05)

    def test_vanishing_domain(self):
        assert K.schrodinger_product_mass(SEPARABLE, 0.0, 0.0, 1e-3, 0.25) < 1e-3

    def test_off_origin_against_riemann_oracle(self):
        val = K.schrodinger_product_mass(CORNER_S, 4.0, 16.0, 25.0, 0.25)
        oracle = riemann_mass_s(CORNER_S, 4.0, 16.0, 25.0, 0.0625)
        assert val == pytest.approx(oracle, rel=0.05)

    def test_monotone_in_radius(self):
        vals = [
            K.schrodinger_product_mass(CORNER_S, 2.0, 0.0, R, 0.25)
            for R in (25.0, 50.0, 100.0, 200.0)
        ]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_sign_average_symmetry(self):
        for xi1, s1 in ((3.0, 5.0), (7.0, -2.0), (1.0, 0.0)):
            a = K.schrodinger_product_mass(CORNER_S, xi1, s1, 50.0, 0.25)
            b = K.schrodinger_product_mass(CORNER_S, -xi1, s1, 50.0, 0.25)
            assert abs(a - b) <= 1e-10 * max(a, b)

    def test_coarse_outer_sup_saturates_on_doubling_ladder(self):
        # mid-window corner exponents; the b = b1 = 0.55 variant has
        # sigma-tails ~ R^(-0.1) and measures 1.156 here, see the ledger
        spec = K.KernelSpec("S", "minus", k=0.0, l=-0.5, p=2.0,
                            b=0.625, b1=0.625, c1=0.365)
        sups = []
        for R in (25.0, 50.0, 100.0, 200.0):
            grid = [(x, s) for x in (0.0, 1.0, 4.0, 16.0)
                    for s in (0.0, 1.0, 16.0, x * x)]
            sups.append(max(
                K.schrodinger_product_mass(spec, x, s, R, 0.25)
                for x, s in grid
            ))
        assert sups[-1] / sups[-2] < 1.1

    def test_refinement_is_small(self):
        _, _, rel = K.kernel_mass_refined(SEPARABLE, 0.0, 0.0, 50.0, 0.25)
        assert rel < 0.01

    def test_family_enforced(self):
        with pytest.raises(K.KernelError):
            K.schrodinger_product_mass(CORNER_W, 0.0, 0.0, 10.0)


class TestWaveSourceMass:
    def test_zero_xi_vanishes(self):
        for sigma in (0.0, 3.0, -17.0):
            assert K.wave_source_mass(CORNER_W, 0.0, sigma, 100.0) == 0.0

    def test_against_riemann_oracle(self):
        val = K.wave_source_mass(CORNER_W, 1.5, 0.0, 25.0, 0.25)
        oracle = riemann_mass_w(CORNER_W, 1.5, 0.0, 25.0, 0.0625)
        assert val == pytest.approx(oracle, rel=0.05)

    def test_doubling_ratio_small_inside_region(self):
        # at mid-window exponents the single-point doubling ratio at (1, 0)
        # computes to 1.11 (tail capture ~ R^(-1/4)); the supremum-level
        # saturation verdict for the corner is covered in TestKernelSup
        spec = K.KernelSpec("W", "minus", k=0.0, l=-0.5, p=2.0,
                            b=0.625, b1=0.625, c=0.365)
        v100 = K.wave_source_mass(spec, 1.0, 0.0, 100.0, 0.25)
        v200 = K.wave_source_mass(spec, 1.0, 0.0, 200.0, 0.25)
        assert v200 / v100 < 1.15

    def test_growth_when_upper_l_condition_broken(self):
        # l = 2k - 1/p' + 1/2 at k=0, p=2 makes the sup grow in |xi|
        spec = K.KernelSpec("W", "minus", k=0.0, l=0.0, p=2.0,
                            b=0.55, b1=0.55, c=0.4)
        xs = (2.0, 4.0, 8.0, 16.0, 32.0)
        vals = [K.wave_source_mass(spec, x, 0.0, 200.0, 0.25) for x in xs]
        slope = np.polyfit(np.log(xs), np.log(vals), 1)[0]
        assert slope > 0.2


class TestKernelSup:
    def mid_window_spec(self, family):
        from fractions import Fraction as F
        from zaklab.params import ParamPoint, b_window

        w = b_window(0, F(-1, 2), 2)
        beta = (w.lower + w.upper) / 2
        pt = ParamPoint(0, F(-1, 2), 2, beta, beta)
        return K.KernelSpec.from_point(pt, family, "minus", eps=0.01)

    def test_corner_saturates_both_families(self):
        for family in ("S", "W"):
            diag = K.kernel_sup(self.mid_window_spec(family), 200.0,
                                resolution=0.25)
            assert diag.verdict == "saturating", (family, diag.ratios)
            assert all(b >= a for a, b in zip(diag.values, diag.values[1:]))

    def test_lower_l_violation_diverges(self):
        spec = K.KernelSpec("S", "minus", k=0.0, l=-0.75, p=2.0,
                            b=0.625, b1=0.625, c1=1 - 0.625 - 0.01)
        diag = K.kernel_sup(spec, 200.0, resolution=0.25)
        assert diag.verdict == "diverging", diag.ratios

    def test_upper_l_violation_diverges(self):
        spec = K.KernelSpec("W", "minus", k=0.0, l=0.0, p=2.0,
                            b=0.625, b1=0.625, c=1 - 0.625 - 0.01)
        diag = K.kernel_sup(spec, 200.0, resolution=0.25)
        assert diag.verdict == "diverging", diag.ratios

    def test_deterministic_and_worker_invariant(self):
        spec = self.mid_window_spec("S")
        a = K.kernel_sup(spec, 48.0, resolution=0.5)
        b = K.kernel_sup(spec, 48.0, resolution=0.5)
        assert a.values == b.values
        old = os.environ.get(K.WORKERS_ENV)
        try:
            os.environ[K.WORKERS_ENV] = "4"
            c = K.kernel_sup(spec, 48.0, resolution=0.5)
        finally:
            if old is None:
                os.environ.pop(K.WORKERS_ENV, None)
            else:
                os.environ[K.WORKERS_ENV] = old
        assert c.values == a.values

    def test_diagnostic_invariants_enforced(self):
        with pytest.raises(K.KernelError):
            K.SaturationDiagnostic((1.0, 1.0), (1.0, 2.0), (2.0,), "saturating")
        with pytest.raises(K.KernelError):
            K.SaturationDiagnostic((1.0, 2.0), (2.0, 1.0), (0.5,), "saturating")


def loop_trilinear_lhs(v, v1, v2, spec):
    n0, n1 = v.shape
    mu = (2 * np.pi / v.box[0]) * (2 * np.pi / v.box[1])
    a1, b2, cd = K._kernel_factors(spec, v)
    total = 0.0 + 0.0j
    for i1 in range(n0):
        for j1 in range(n1):
            for i2 in range(n0):
                for j2 in range(n1):
                    d = ((i1 - i2) % n0, (j1 - j2) % n1)
                    total += (
                        v.modes[d] * cd[d]
                        * v1.modes[i1, j1] * a1[i1, j1]
                        * v2.modes[i2, j2] * b2[i2, j2]
                    )
    return abs(total) * mu * mu


class TestTrilinearProbe:
    SPEC = K.KernelSpec("S", "plus", k=0.0, l=-0.5, p=2.0, b=0.55, b1=0.55, c1=0.44)

    def test_matches_quartic_loop_oracle(self):
        rng = np.random.default_rng(5)
        fields = [
            G.GridFunction(rng.uniform(size=(8, 8)) + 1j * rng.uniform(size=(8, 8)),
                           BOX2)
            for _ in range(3)
        ]
        lhs, rhs = K.trilinear_probe(*fields, self.SPEC)
        oracle = loop_trilinear_lhs(*fields, self.SPEC)
        assert lhs == pytest.approx(oracle, rel=1e-12)
        assert lhs <= rhs * (1 + 1e-6)

    def test_zero_factor(self):
        rng = np.random.default_rng(6)
        v = G.GridFunction(rng.uniform(size=(8, 8)), BOX2)
        v1 = G.GridFunction(rng.uniform(size=(8, 8)), BOX2)
        z = G.GridFunction(np.zeros((8, 8), dtype=complex), BOX2)
        lhs, rhs = K.trilinear_probe(v, v1, z, self.SPEC)
        assert lhs == 0.0 and lhs <= rhs

    @pytest.mark.parametrize("p", [1.5, 12 / 7, 2.0])
    @pytest.mark.parametrize("family", ["S", "W"])
    def test_randomized_no_violations(self, p, family):
        rng = np.random.default_rng(int(p * 1000) + (family == "W") * 7)
        extra = {"c1": 0.3} if family == "S" else {"c": 0.3}
        spec = K.KernelSpec(family, "minus", k=0.0, l=-0.5, p=p,
                            b=1 / p + 0.05, b1=1 / p + 0.05, **extra)
        for _ in range(40):
            fields = [
                G.GridFunction(rng.uniform(size=(64, 64)), BOX2) for _ in range(3)
            ]
            lhs, rhs = K.trilinear_probe(*fields, spec)
            assert lhs <= rhs * (1 + 1e-6)

    def test_grid_mismatch_rejected(self):
        rng = np.random.default_rng(7)
        v = G.GridFunction(rng.uniform(size=(8, 8)), BOX2)
        w = G.GridFunction(rng.uniform(size=(16, 16)), BOX2)
        with pytest.raises(K.KernelError, match="identical layout"):
            K.trilinear_probe(v, v, w, self.SPEC)

    @pytest.mark.parametrize("p", [1.5, 12 / 7, 2.0])
    def test_near_extremal_ratio(self, p):
        spec = K.KernelSpec("S", "minus", k=0.0, l=-0.5, p=p,
                            b=0.8, b1=0.8, c1=0.19)
        triple = K.near_extremal_triple((32, 32), BOX2, spec)
        lhs, rhs = K.trilinear_probe(*triple, spec)
        assert lhs <= rhs * (1 + 1e-6)
        assert lhs / rhs >= 0.5


class TestWeightedConvolutionCheck:
    def test_constant_stable_over_three_decades(self):
        rep = K.weighted_convolution_check(
            1.2, 0.6, (1.0, 3.0, 10.0, 31.6, 100.0, 316.0, 1000.0)
        )
        assert rep.constant_spread < 4.0

    def test_ratio_at_100_within_factor_two_of_10(self):
        rep = K.weighted_convolution_check(1.2, 0.6, (10.0, 100.0))
        assert 0.5 <= rep.ratios[1] / rep.ratios[0] <= 2.0

    def test_beta_zero_constant_in_a(self):
        rep = K.weighted_convolution_check(1.2, 0.0, (0.0, 10.0, 100.0))
        assert rep.constant_spread < 1.1

    def test_a_zero_is_finite(self):
        rep = K.weighted_convolution_check(1.2, 0.6, (0.0,))
        assert math.isfinite(rep.lhs[0]) and rep.lhs[0] > 0

    def test_peak_sits_on_resonance_value(self):
        rep = K.weighted_convolution_check(
            1.2, 0.6, (1.0,), peak_xi1=5.0, peak_params=(0.0, -0.5, 2.0)
        )
        assert abs(rep.peak_offset) <= 2.0

    def test_parameter_regime_errors(self):
        with pytest.raises(K.KernelError, match="alpha > 1"):
            K.weighted_convolution_check(0.9, 0.5, (1.0,))
        with pytest.raises(K.KernelError, match="beta"):
            K.weighted_convolution_check(1.5, 1.2, (1.0,))
