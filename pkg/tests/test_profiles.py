import math

import numpy as np
import pytest

import npspectra as nps
from npspectra.profiles import NormTable


ALPHA34 = 0.75
LOG43 = abs(math.log(ALPHA34))


class TestEvaluation:
    def test_cone_profile_is_affine(self):
        prof = nps.cone_profile(7 / 8, 3.5)
        xs = np.array([0.01, 0.3, 1.0, 7.2])
        np.testing.assert_allclose(prof.f(xs), 3.5 * xs, rtol=1e-14)
        np.testing.assert_allclose(prof.f1(xs), 3.5, rtol=1e-14)
        np.testing.assert_allclose(prof.f2(xs), 0.0, atol=1e-14)

    def test_sin2_vanishes_at_powers_of_alpha(self):
        prof = nps.sin2_profile(ALPHA34)
        assert prof.f(ALPHA34) == pytest.approx(0.0, abs=1e-14)
        assert prof.f(ALPHA34**3) == pytest.approx(0.0, abs=1e-13)

    def test_sin2_slope_bound(self):
        # grid scan of f' on [alpha, 1]; the aggregate F0 must dominate it and
        # the scan must reach the known exact maximum ~= 11.43
        prof = nps.sin2_profile(ALPHA34)
        xs = np.linspace(ALPHA34, 1.0, 20001)
        scan = np.abs(prof.f1(xs)).max()
        f0 = nps.aggregate_norms(prof, 0.0).F0
        assert f0 == pytest.approx(1 + math.pi / LOG43, rel=1e-12)
        assert scan <= f0
        theta = math.atan(2 * math.pi / LOG43)
        exact_max = math.cos(theta / 2) ** 2 + math.pi * math.sin(theta) / LOG43
        assert exact_max == pytest.approx(11.433, abs=5e-3)
        assert scan == pytest.approx(exact_max, rel=1e-6)

    def test_domain_errors(self):
        prof = nps.sin2_profile(ALPHA34)
        for fn in (prof.f, prof.f1, prof.f2):
            with pytest.raises(ValueError):
                fn(0.0)
            with pytest.raises(ValueError):
                fn(-1.0)

    def test_pow_forms_match_direct_evaluation(self):
        prof = nps.sin2_profile(ALPHA34)
        s = np.linspace(-3.0, 3.0, 17)
        x = ALPHA34**s
        np.testing.assert_allclose(prof.f_pow(s), prof.f(x), rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(prof.f1_pow(s), prof.f1(x), rtol=1e-12, atol=1e-11)
        np.testing.assert_allclose(prof.f2_pow(s), prof.f2(x), rtol=1e-9, atol=1e-8)


class TestStripNorms:
    @pytest.mark.parametrize("c", [0.013, 0.019])
    def test_sin2_generic_bounds_equal_closed_forms(self, c):
        # single-harmonic series: the generic Fourier bound is exact
        generic = nps.strip_norms(nps.sin2_profile(ALPHA34), c)
        assert generic.norm_g == pytest.approx(math.cosh(math.pi * c) ** 2, rel=1e-12)
        assert generic.norm_g1 == pytest.approx(math.pi * math.cosh(2 * math.pi * c), rel=1e-12)
        assert generic.norm_g2 == pytest.approx(2 * math.pi**2 * math.cosh(2 * math.pi * c), rel=1e-12)
        assert generic.im_g == pytest.approx(math.sinh(2 * math.pi * c) / 2, rel=1e-12)
        assert generic.im_g1 == pytest.approx(math.pi * math.sinh(2 * math.pi * c), rel=1e-12)

    def test_cone_norms(self):
        table = nps.strip_norms(nps.cone_profile(7 / 8, -10.0), 0.3)
        assert table.norm_g == 10.0
        assert table.norm_g1 == table.norm_g2 == table.im_g == table.im_g1 == 0.0

    def test_exact_table_is_preferred(self):
        prof = nps.sin2_profile(ALPHA34, exact_at=(0.013,))
        assert nps.strip_norms(prof, 0.013).exact
        assert not nps.strip_norms(prof, 0.017).exact

    @pytest.mark.parametrize(
        "profile",
        [
            nps.sin2_profile(ALPHA34),
            nps.cone_profile(7 / 8, 10.0),
            nps.flat_profile(2 / 3),
            nps.PeriodicProfile(0.6, ((0.2, 0.0), (-0.3, 0.1), (0.05, -0.2))),
        ],
    )
    def test_real_line_bounds_dominate_grid_scan(self, profile):
        table = nps.strip_norms(profile, 0.0)
        xs = np.linspace(0.0, 1.0, 4001)
        assert table.norm_g >= np.abs(profile.g(xs)).max() - 1e-12
        assert table.norm_g1 >= np.abs(profile.g1(xs)).max() - 1e-12
        assert table.norm_g2 >= np.abs(profile.g2(xs)).max() - 1e-12
        assert table.im_g == 0.0 and table.im_g1 == 0.0

    def test_negative_width_rejected(self):
        with pytest.raises(ValueError):
            nps.strip_norms(nps.flat_profile(0.5), -0.1)


class TestAggregates:
    def test_cone_aggregates(self):
        alpha = 7 / 8
        prof = nps.cone_profile(alpha, 10.0)
        agg = nps.aggregate_norms(prof, 0.57)
        assert agg.F0 == agg.Fc == 10.0
        assert agg.G0 == agg.Gc == agg.Ic == 0.0
        k_plus, k_minus = nps.pair_kappa(prof, prof, 0.57)
        assert k_plus == k_minus == pytest.approx(abs(math.log(alpha)) * 10.0 / alpha, rel=1e-14)

    def test_flat_aggregates_vanish(self):
        agg = nps.aggregate_norms(nps.flat_profile(0.5), 0.4)
        assert (agg.F0, agg.Fc, agg.G0, agg.Gc, agg.Ic) == (0, 0, 0, 0, 0)

    @pytest.mark.parametrize("c1,c2", [(0.0, 0.01), (0.01, 0.02), (0.013, 0.1)])
    def test_monotone_in_width(self, c1, c2):
        prof = nps.PeriodicProfile(0.7, ((0.1, 0.0), (0.2, -0.1), (0.0, 0.05)))
        lo, hi = nps.aggregate_norms(prof, c1), nps.aggregate_norms(prof, c2)
        assert hi.Fc >= lo.Fc and hi.Gc >= lo.Gc and hi.Ic >= lo.Ic
        assert hi.F0 == lo.F0 and hi.G0 == lo.G0


class TestValidateStrip:
    def test_reference_widths_are_admissible(self, sin2_34_graph, cone_graph):
        assert nps.validate_strip(sin2_34_graph, 0.013) == []
        assert nps.validate_strip(cone_graph(10.0), 0.57) == []

    def test_sin2_wide_strip_violates_imag_bound(self, sin2_34_graph):
        violations = nps.validate_strip(sin2_34_graph, 1.0)
        assert any("I_c" in v.condition for v in violations)
        # threshold for alpha = 3/4 sits just below 0.0139
        thresh = math.asinh(2 * LOG43 / (2 * math.pi + LOG43)) / (2 * math.pi)
        assert thresh == pytest.approx(0.0139, abs=2e-4)
        assert nps.validate_strip(sin2_34_graph, thresh - 1e-4) == []
        assert nps.validate_strip(sin2_34_graph, thresh + 1e-4) != []

    def test_two_sided_coupling_bound(self, cone_graph):
        # mu*c < alpha^2/|log alpha| is the binding condition for cones
        alpha = 7 / 8
        limit = alpha**2 / abs(math.log(alpha)) / 10.0
        assert nps.validate_strip(cone_graph(10.0), limit - 1e-4) == []
        bad = nps.validate_strip(cone_graph(10.0), limit + 1e-3)
        assert any("alpha^2" in v.condition for v in bad)

    @pytest.mark.parametrize("factor", [0.1, 0.35, 0.7, 1.0])
    def test_admissibility_is_downward_closed(self, example3_graph, factor):
        c_ok = 0.019
        assert nps.validate_strip(example3_graph, c_ok) == []
        assert nps.validate_strip(example3_graph, factor * c_ok) == []

    def test_nonpositive_width_rejected(self, sin2_34_graph):
        with pytest.raises(ValueError):
            nps.validate_strip(sin2_34_graph, 0.0)

    def test_bisection_finds_threshold(self, sin2_34_graph, cone_graph):
        thresh = math.asinh(2 * LOG43 / (2 * math.pi + LOG43)) / (2 * math.pi)
        found = nps.max_admissible_width(sin2_34_graph, tol=1e-9)
        assert found == pytest.approx(thresh, abs=1e-8)
        assert nps.validate_strip(sin2_34_graph, found) == []
        # cone: binding condition is mu*c < alpha^2/|log alpha|
        alpha = 7 / 8
        found = nps.max_admissible_width(cone_graph(10.0), tol=1e-9)
        assert found == pytest.approx(alpha**2 / abs(math.log(alpha)) / 10.0, abs=1e-8)


class TestConstruction:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, 1.5])
    def test_alpha_range(self, alpha):
        with pytest.raises(ValueError):
            nps.PeriodicProfile(alpha, ((0.0, 0.0),))

    def test_two_sided_alpha_mismatch(self):
        with pytest.raises(ValueError):
            nps.DilationGraph.two_sided(nps.flat_profile(0.5), nps.flat_profile(0.6))

    def test_one_sided_rejects_second_profile(self):
        with pytest.raises(ValueError):
            nps.DilationGraph(nps.Side.ONE_SIDED, nps.flat_profile(0.5), nps.flat_profile(0.5))

    def test_norm_table_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            NormTable(c=0.1, norm_g=-1.0, norm_g1=0, norm_g2=0, im_g=0, im_g1=0)

    def test_digests_distinguish_graphs(self, sin2_34_graph, flat_graph):
        assert sin2_34_graph.digest() != flat_graph.digest()
        assert sin2_34_graph.digest() == nps.DilationGraph.one_sided(nps.sin2_profile(0.75)).digest()


class TestProfileFiles:
    def test_round_trip(self):
        prof = nps.PeriodicProfile(
            0.75,
            ((0.5, 0.0), (-0.5, 0.25)),
            exact_norms=(NormTable(0.013, 1.0, 3.1, 19.7, 0.02, 0.13, exact=True),),
        )
        again = nps.parse_profile(nps.format_profile(prof))
        assert again.alpha == prof.alpha
        assert again.fourier == prof.fourier
        assert again.exact_norms[0].norm_g == prof.exact_norms[0].norm_g

    def test_parse_with_comments_and_gaps(self):
        text = """
        # oscillatory generator
        alpha 0.75
        fourier 0 0.5 0
        fourier 2 0.125 0   # skipped k=1 filled with zeros
        """
        prof = nps.parse_profile(text)
        assert prof.fourier == ((0.5, 0.0), (0.0, 0.0), (0.125, 0.0))

    @pytest.mark.parametrize(
        "text",
        [
            "fourier 0 1 0",  # missing alpha
            "alpha 0.75",  # missing coefficients
            "alpha 1.25\nfourier 0 1 0",  # alpha out of range
            "alpha 0.75\nfourier 0 one 0",  # bad number
            "alpha 0.75\nfourier 0 1 0\nwidget 3",  # unknown key
        ],
    )
    def test_malformed_files_rejected(self, text):
        with pytest.raises(nps.ProfileFormatError):
            nps.parse_profile(text)
