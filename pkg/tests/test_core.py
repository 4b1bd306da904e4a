import math
import random

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oadlc import (Assembly, DomainError, LayerSpec, Material, PlateMatrices,
                   assembly_bending, assembly_inplane, build_report,
                   circular_layer, folded_dimensions, identical_assembly,
                   layer_bending, layer_flat_area, layer_inplane, layer_mass,
                   mass, moduli_from_plate_matrices, pipeline_D, pipeline_K,
                   square_layer, triangular_moduli)
from conftest import FILM, layers

REL = 1e-12


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b))


# ---------------------------------------------------------------------------
# type validation


class TestTypes:
    def test_material_rejects_bad_fields(self):
        with pytest.raises(DomainError):
            Material(E=-1.0, nu=0.3, t=1e-4)
        with pytest.raises(DomainError):
            Material(E=1e9, nu=0.5, t=1e-4)
        with pytest.raises(DomainError):
            Material(E=1e9, nu=-0.01, t=1e-4)
        with pytest.raises(DomainError):
            Material(E=1e9, nu=0.3, t=0.0)
        with pytest.raises(DomainError):
            Material(E=1e9, nu=0.3, t=1e-4, rho=-2.0)
        with pytest.raises(DomainError):
            Material(E=math.inf, nu=0.3, t=1e-4)

    def test_layer_rejects_bad_geometry(self, film):
        with pytest.raises(DomainError):
            LayerSpec(film, W=-1e-3, alpha=1.0, n=1, L=(0.05,))
        with pytest.raises(DomainError):
            LayerSpec(film, W=1e-2, alpha=0.0, n=1, L=(0.05,))
        with pytest.raises(DomainError):
            LayerSpec(film, W=1e-2, alpha=math.pi + 1e-6, n=1, L=(0.05,))
        with pytest.raises(DomainError):
            LayerSpec(film, W=1e-2, alpha=1.0, n=2, L=(0.05,))  # length mismatch
        with pytest.raises(DomainError):
            LayerSpec(film, W=1e-2, alpha=1.0, n=1, L=(0.0,))
        with pytest.raises(DomainError):
            LayerSpec(film, W=1e-2, alpha=1.0, n=0, L=())
        with pytest.raises(DomainError):
            LayerSpec(film, W=1e-2, alpha=1.0, n=1, L=(0.05,),
                      panel_heights=(0.05,))  # needs n+1 heights

    def test_tiny_alpha_clamped(self, film):
        layer = LayerSpec(film, W=1e-2, alpha=1e-15, n=1, L=(0.05,))
        assert layer.alpha == 1e-9

    def test_panels_extend_crease_lengths(self, film):
        layer = LayerSpec(film, W=1e-2, alpha=1.2, n=3, L=(0.04, 0.05, 0.06))
        assert layer.panels() == (0.04, 0.05, 0.06, 0.06)
        explicit = LayerSpec(film, W=1e-2, alpha=1.2, n=1, L=(0.05,),
                             panel_heights=(0.04, 0.06))
        assert explicit.panels() == (0.04, 0.06)


# ---------------------------------------------------------------------------
# plate-matrix conversion


class TestPlateConversion:
    def test_decoupled_symmetric_inplane(self):
        p = PlateMatrices(A11=7.5, A12=0.0, A22=7.5, A66=1.0,
                          D11=1.0, D12=0.0, D22=1.0, D66=1.0)
        m = moduli_from_plate_matrices(p, t=1.0)
        assert m.E_cx == pytest.approx(7.5, rel=REL)
        assert m.E_cy == pytest.approx(7.5, rel=REL)

    def test_decoupled_symmetric_bending(self):
        p = PlateMatrices(A11=1.0, A12=0.0, A22=1.0, A66=1.0,
                          D11=0.25, D12=0.0, D22=0.25, D66=1.0)
        m = moduli_from_plate_matrices(p, t=1.0)
        assert m.E_bx == pytest.approx(3.0, rel=REL)
        assert m.E_by == pytest.approx(3.0, rel=REL)

    def test_random_matrices_match_extended_precision(self):
        rng = random.Random(8841)
        with mp.workdps(40):
            for _ in range(200):
                a11 = rng.uniform(0.5, 50.0)
                a22 = rng.uniform(0.5, 50.0)
                a12 = rng.uniform(-1.0, 1.0) * 0.9 * math.sqrt(a11 * a22)
                d11 = rng.uniform(0.01, 5.0)
                d22 = rng.uniform(0.01, 5.0)
                d12 = rng.uniform(-1.0, 1.0) * 0.9 * math.sqrt(d11 * d22)
                t = 0.5
                p = PlateMatrices(a11, a12, a22, 1.0, d11, d12, d22, 1.0)
                m = moduli_from_plate_matrices(p, t)
                det_a = mp.mpf(a11) * mp.mpf(a22) - mp.mpf(a12) ** 2
                det_d = mp.mpf(d11) * mp.mpf(d22) - mp.mpf(d12) ** 2
                assert rel_err(m.E_cx, float(det_a / (t * mp.mpf(a22)))) < REL
                assert rel_err(m.E_cy, float(det_a / (t * mp.mpf(a11)))) < REL
                assert rel_err(m.E_bx, float(12 * det_d / (mp.mpf(t) ** 3 * d22))) < REL
                assert rel_err(m.E_by, float(12 * det_d / (mp.mpf(t) ** 3 * d11))) < REL

    def test_rejects_non_positive_definite(self):
        with pytest.raises(DomainError):
            PlateMatrices(A11=1.0, A12=2.0, A22=1.0, A66=1.0,
                          D11=1.0, D12=0.0, D22=1.0, D66=1.0)
        with pytest.raises(DomainError):
            PlateMatrices(A11=1.0, A12=0.0, A22=1.0, A66=1.0,
                          D11=-1.0, D12=0.0, D22=1.0, D66=1.0)

    def test_rejects_bad_thickness(self):
        p = PlateMatrices(A11=1.0, A12=0.0, A22=1.0, A66=1.0,
                          D11=1.0, D12=0.0, D22=1.0, D66=1.0)
        with pytest.raises(DomainError):
            moduli_from_plate_matrices(p, t=0.0)
        with pytest.raises(DomainError):
            moduli_from_plate_matrices(p, t=-1e-3)


# ---------------------------------------------------------------------------
# closed-form triangular-cell moduli


class TestTriangularModuli:
    def test_flat_limit_collapse(self):
        # nu = 0, alpha = 180 deg: the four formulas reduce to
        # E/3, 3E/4, E/2, E regardless of W and t.
        mat = Material(E=4.0, nu=0.0, t=1.3e-4)
        layer = LayerSpec(mat, W=1.7e-2, alpha=math.pi, n=2, L=(0.05, 0.06))
        m = triangular_moduli(layer)
        assert rel_err(m.E_cx, 4.0 / 3.0) < REL
        assert rel_err(m.E_cy, 3.0) < REL
        assert rel_err(m.E_bx, 2.0) < REL
        assert m.E_by == 4.0

    def test_linear_in_youngs_modulus(self, film):
        layer = square_layer(film, 1e-2, math.radians(75.0), 5)
        doubled = square_layer(
            Material(E=2 * film.E, nu=film.nu, t=film.t, rho=film.rho),
            1e-2, math.radians(75.0), 5)
        m1 = triangular_moduli(layer)
        m2 = triangular_moduli(doubled)
        for name in ("E_cx", "E_cy", "E_bx", "E_by"):
            assert getattr(m2, name) == pytest.approx(2 * getattr(m1, name), rel=REL)

    def test_validation_fixture_values(self, film):
        # frozen from a 50-digit independent evaluation of the closed forms
        layer = square_layer(film, 10e-3, math.radians(90.0), 11)
        m = triangular_moduli(layer)
        assert m.E_cx == pytest.approx(235881.41586100665, rel=REL)
        assert m.E_cy == pytest.approx(4304047328.64338, rel=REL)
        assert m.E_bx == pytest.approx(2342119928.143424, rel=REL)
        assert m.E_by == pytest.approx(14992468848355.262, rel=REL)

    @settings(max_examples=150)
    @given(layers())
    def test_moduli_always_positive(self, layer):
        m = triangular_moduli(layer)
        assert m.E_cx > 0 and m.E_cy > 0 and m.E_bx > 0 and m.E_by > 0


# ---------------------------------------------------------------------------
# layer spring composition


class TestLayerStiffness:
    def test_single_unit_closed_form(self, film):
        layer = LayerSpec(film, W=9e-3, alpha=math.radians(70.0), n=1, L=(0.05,))
        m = triangular_moduli(layer)
        ws = layer.W * math.sin(layer.alpha / 2)
        K_C, K_S = layer_inplane(layer)
        assert K_C == pytest.approx(m.E_cx * 0.05 * film.t / ws, rel=1e-14)
        assert K_S == pytest.approx(m.E_cy * film.t * ws / 0.05, rel=1e-14)
        D_C, D_S = layer_bending(layer)
        assert D_C == pytest.approx(m.E_bx * film.t ** 3 * 0.05 / (12 * ws), rel=1e-14)
        assert D_S == pytest.approx(m.E_by * film.t ** 3 * ws / (12 * 0.05), rel=1e-14)

    @pytest.mark.parametrize("n", [2, 5, 11])
    def test_identical_units_series_parallel_scaling(self, film, n):
        one = LayerSpec(film, W=8e-3, alpha=math.radians(100.0), n=1, L=(0.04,))
        many = LayerSpec(film, W=8e-3, alpha=math.radians(100.0), n=n, L=(0.04,) * n)
        kc1, ks1 = layer_inplane(one)
        kcn, ksn = layer_inplane(many)
        assert kcn == pytest.approx(kc1 / n, rel=1e-13)
        assert ksn == pytest.approx(ks1 * n, rel=1e-13)
        dc1, ds1 = layer_bending(one)
        dcn, dsn = layer_bending(many)
        assert dcn == pytest.approx(dc1 / n, rel=1e-13)
        assert dsn == pytest.approx(ds1 * n, rel=1e-13)

    def test_non_uniform_lengths_frozen_values(self, film):
        # frozen from the spring-network reduction oracle
        layer = LayerSpec(film, 10e-3, math.radians(90.0), 3,
                          (40e-3, 50e-3, 60e-3))
        K_C, K_S = layer_inplane(layer)
        D_C, D_S = layer_bending(layer)
        assert K_C == pytest.approx(67.61892515318993, rel=REL)
        assert K_S == pytest.approx(234597.0394736842, rel=REL)
        assert D_C == pytest.approx(0.0008742234393699139, rel=REL)
        assert D_S == pytest.approx(1.064038700107972, rel=REL)

    def test_length_doubling_homogeneity(self, film):
        layer = LayerSpec(film, 10e-3, math.radians(90.0), 3,
                          (40e-3, 50e-3, 60e-3))
        doubled = LayerSpec(film, 10e-3, math.radians(90.0), 3,
                            (80e-3, 100e-3, 120e-3))
        dc, ds = layer_bending(layer)
        dc2, ds2 = layer_bending(doubled)
        assert dc2 == pytest.approx(2 * dc, rel=1e-13)
        assert ds2 == pytest.approx(ds / 2, rel=1e-13)
        kc, ks = layer_inplane(layer)
        kc2, ks2 = layer_inplane(doubled)
        assert kc2 == pytest.approx(2 * kc, rel=1e-13)
        assert ks2 == pytest.approx(ks / 2, rel=1e-13)

    def test_unit_count_switch(self, film):
        # "n+1" counts one spring per panel instead of per crease
        n = 7
        layer = square_layer(film, 9e-3, math.radians(85.0), n)
        kc_n, ks_n = layer_inplane(layer, unit_count="n")
        kc_p, ks_p = layer_inplane(layer, unit_count="n+1")
        assert kc_p == pytest.approx(kc_n * n / (n + 1), rel=1e-12)
        assert ks_p == pytest.approx(ks_n * (n + 1) / n, rel=1e-12)
        with pytest.raises(DomainError):
            layer_inplane(layer, unit_count="bogus")

    @settings(max_examples=150)
    @given(layers())
    def test_series_bound_and_parallel_sum(self, layer):
        m = triangular_moduli(layer)
        ws = layer.W * math.sin(layer.alpha / 2)
        units_c = [m.E_cx * L * layer.material.t / ws for L in layer.L]
        units_s = [m.E_cy * layer.material.t * ws / L for L in layer.L]
        K_C, K_S = layer_inplane(layer)
        assert K_C <= min(units_c) * (1 + 1e-12)
        assert K_S == pytest.approx(math.fsum(units_s), rel=REL)


# ---------------------------------------------------------------------------
# assembly composition and pipelines


class TestAssembly:
    @pytest.fixture
    def two_layers(self, film):
        layer1 = square_layer(film, 8e-3, math.radians(84.0), 8)
        layer2 = square_layer(film, 10e-3, math.radians(90.0), 11)
        return Assembly(layer1, layer2)

    def test_axis_collapse(self, two_layers):
        kc1, ks1 = layer_inplane(two_layers.layer1)
        kc2, ks2 = layer_inplane(two_layers.layer2)
        assert assembly_inplane(two_layers, 0.0) == ks1 + kc2
        assert assembly_inplane(two_layers, math.radians(90.0)) == \
            pytest.approx(ks2 + kc1, rel=REL)
        dc1, ds1 = layer_bending(two_layers.layer1)
        dc2, ds2 = layer_bending(two_layers.layer2)
        assert assembly_bending(two_layers, 0.0) == ds1 + dc2
        assert assembly_bending(two_layers, math.radians(90.0)) == \
            pytest.approx(ds2 + dc1, rel=REL)

    def test_identical_layers_isotropic(self, film):
        a = identical_assembly(square_layer(film, 8e-3, math.radians(84.0), 8))
        k0 = pipeline_K(a, 0.0)
        d0 = pipeline_D(a, 0.0)
        for eta in (0.1, 0.7, 1.1, 2.5, 3.0):
            assert pipeline_K(a, eta) == pytest.approx(k0, rel=REL)
            assert pipeline_D(a, eta) == pytest.approx(d0, rel=REL)

    def test_thirty_degrees_frozen_value(self, two_layers):
        # frozen from the high-precision reference evaluation
        assert pipeline_K(two_layers, math.radians(30.0)) == \
            pytest.approx(502355.5959491971, rel=REL)
        assert pipeline_D(two_layers, math.radians(30.0)) == \
            pytest.approx(1.774901610277817, rel=REL)

    @given(st.floats(min_value=-7.0, max_value=7.0))
    def test_quarter_turn_sum_invariant(self, eta):
        a = Assembly(square_layer(FILM, 8e-3, math.radians(84.0), 8),
                     square_layer(FILM, 10e-3, math.radians(90.0), 11))
        kc1, ks1 = layer_inplane(a.layer1)
        kc2, ks2 = layer_inplane(a.layer2)
        total = ks1 + kc1 + ks2 + kc2
        s = pipeline_K(a, eta) + pipeline_K(a, eta + math.pi / 2)
        assert s == pytest.approx(total, rel=REL)
        dc1, ds1 = layer_bending(a.layer1)
        dc2, ds2 = layer_bending(a.layer2)
        d_total = ds1 + dc1 + ds2 + dc2
        d_s = pipeline_D(a, eta) + pipeline_D(a, eta + math.pi / 2)
        assert d_s == pytest.approx(d_total, rel=REL)

    def test_pipeline_matches_staged_calls_bitwise(self, two_layers):
        for eta in (0.0, 0.3, 1.2):
            assert pipeline_K(two_layers, eta) == assembly_inplane(two_layers, eta)
            assert pipeline_D(two_layers, eta) == assembly_bending(two_layers, eta)
            kc1, ks1 = layer_inplane(two_layers.layer1)
            kc2, ks2 = layer_inplane(two_layers.layer2)
            c, s = math.cos(eta), math.sin(eta)
            staged = (ks1 + kc2) * c * c + (ks2 + kc1) * s * s
            assert pipeline_K(two_layers, eta) == staged

    def test_pipeline_repeatable_bitwise(self, two_layers):
        first = [pipeline_K(two_layers, 0.4), pipeline_D(two_layers, 0.4)]
        for _ in range(3):
            assert pipeline_K(two_layers, 0.4) == first[0]
            assert pipeline_D(two_layers, 0.4) == first[1]

    @pytest.mark.parametrize("scale", [0.5, 3.0, 7.25])
    def test_linear_in_youngs_modulus(self, film, scale):
        def scaled(mat, c):
            return Material(E=c * mat.E, nu=mat.nu, t=mat.t, rho=mat.rho)

        a = Assembly(square_layer(film, 8e-3, math.radians(84.0), 8),
                     square_layer(film, 10e-3, math.radians(90.0), 11))
        b = Assembly(square_layer(scaled(film, scale), 8e-3, math.radians(84.0), 8),
                     square_layer(scaled(film, scale), 10e-3, math.radians(90.0), 11))
        for eta in (0.0, 0.6):
            assert pipeline_K(b, eta) == pytest.approx(scale * pipeline_K(a, eta), rel=REL)
            assert pipeline_D(b, eta) == pytest.approx(scale * pipeline_D(a, eta), rel=REL)


# ---------------------------------------------------------------------------
# geometry and mass


class TestFoldedDimensions:
    def test_case_study_dimensions(self, film):
        # published folded footprint 48.18 mm x 48.18 mm, stack 11.89 mm
        layer = square_layer(film, 8e-3, math.radians(84.0), 8)
        length, thickness = folded_dimensions(layer)
        assert abs(length * 1e3 - 48.18) <= 0.01
        assert abs(thickness * 1e3 - 11.89) <= 0.01

    def test_flat_limit_is_exact(self, film):
        layer = LayerSpec(film, W=8e-3, alpha=math.pi, n=8, L=(0.072,) * 8)
        length, thickness = folded_dimensions(layer)
        assert thickness == 0.0
        assert length == pytest.approx(9 * 8e-3, rel=REL)

    def test_hand_arithmetic_case(self, film):
        layer = square_layer(film, 10e-3, math.radians(90.0), 11)
        length, thickness = folded_dimensions(layer)
        assert length == pytest.approx(12 * 10e-3 * math.sqrt(0.5), rel=1e-14)
        assert thickness == pytest.approx(20e-3 * math.sqrt(0.5), rel=1e-14)


class TestMass:
    def test_zero_density(self):
        mat = Material(E=1e9, nu=0.3, t=1e-4, rho=0.0)
        a = identical_assembly(square_layer(mat, 8e-3, math.radians(84.0), 8))
        assert mass(a) == 0.0

    def test_flat_sheet_area_times_density(self, film):
        # two explicit panels: mass is density * thickness * developed area
        layer = LayerSpec(film, W=1e-2, alpha=math.radians(120.0), n=1,
                          L=(0.05,), panel_heights=(0.04, 0.06))
        assert layer_flat_area(layer) == pytest.approx(1e-2 * 0.10, rel=REL)
        assert layer_mass(layer) == pytest.approx(
            film.rho * film.t * 1e-2 * 0.10, rel=REL)

    def test_case_study_mass(self, film):
        # model mass of the published optimum; the quoted 1.85 g includes
        # edge connectors that the sheet-area model excludes
        layer = square_layer(film, 8e-3, math.radians(84.0), 8)
        a = identical_assembly(layer)
        L = 9 * 8e-3 * math.sin(math.radians(42.0))
        expected = 2 * film.rho * film.t * (9 * 8e-3) * L
        assert mass(a) == pytest.approx(expected, rel=REL)
        assert mass(a) == pytest.approx(1.2053986395191019e-3, rel=REL)

    def test_connector_allowance(self, film):
        a = identical_assembly(square_layer(film, 8e-3, math.radians(84.0), 8))
        assert mass(a, 0.5) == pytest.approx(1.5 * mass(a), rel=REL)
        with pytest.raises(DomainError):
            mass(a, -0.1)

    def test_bending_increases_with_panel_width(self, film):
        # model trend for the validation fixture (n = 11, alpha = 90 deg)
        values = []
        for W in (8e-3, 10e-3, 12e-3, 14e-3):
            a = identical_assembly(square_layer(film, W, math.radians(90.0), 11))
            values.append(pipeline_D(a, 0.0))
        assert values == sorted(values)
        assert values[0] < values[1] < values[2] < values[3]


class TestCircularLayer:
    def test_chords_symmetric_and_clipped(self, film):
        layer = circular_layer(film, 8e-3, math.radians(90.0), 8, R=40e-3)
        panels = layer.panels()
        assert len(panels) == 9
        for a, b in zip(panels, reversed(panels)):
            assert a == pytest.approx(b, rel=REL)
        assert max(panels) <= 2 * 40e-3 + 1e-15
        # center panel of an odd count sits on the diameter
        assert panels[4] == pytest.approx(2 * 40e-3, rel=REL)

    def test_chord_formula(self, film):
        R = 40e-3
        layer = circular_layer(film, 8e-3, math.radians(90.0), 8, R=R)
        pitch = 8e-3 * math.sin(math.radians(45.0))
        span = 9 * pitch
        for j, Lc in enumerate(layer.L, start=1):
            x = j * pitch - span / 2
            assert Lc == pytest.approx(2 * math.sqrt(R * R - x * x), rel=REL)

    def test_does_not_fit_raises(self, film):
        with pytest.raises(DomainError):
            circular_layer(film, 8e-3, math.radians(90.0), 30, R=40e-3)


class TestReport:
    def test_report_consistent_with_pipelines(self, film):
        a = Assembly(square_layer(film, 8e-3, math.radians(84.0), 8),
                     square_layer(film, 10e-3, math.radians(90.0), 11))
        rep = build_report(a, eta=0.3, connector_allowance=0.1)
        assert rep.K_eta == pipeline_K(a, 0.3)
        assert rep.D_eta == pipeline_D(a, 0.3)
        assert rep.mass == mass(a, 0.1)
        assert rep.K_C == (layer_inplane(a.layer1)[0], layer_inplane(a.layer2)[0])
        assert rep.folded_length == folded_dimensions(a.layer1)[0]
        # stack thickness adds each layer's fold depth
        t1 = folded_dimensions(a.layer1)[1]
        t2 = folded_dimensions(a.layer2)[1]
        assert rep.folded_thickness == pytest.approx(0.5 * (t1 + t2), rel=REL)
