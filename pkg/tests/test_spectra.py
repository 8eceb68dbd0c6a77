import io
import math

import numpy as np
import pytest

import npspectra as nps


class TestConeOracle:
    def test_zero_slope(self):
        assert nps.cone_exact_radius(0.0) == 0.0
        pts = nps.cone_exact_spectrum(0.0, np.linspace(-5, 5, 11))
        assert np.abs(pts).max() == pytest.approx(0.0, abs=1e-14)

    def test_radius_mu_10(self):
        assert nps.cone_exact_radius(10.0) == pytest.approx(5 / math.sqrt(101), rel=1e-14)
        assert nps.cone_exact_radius(10.0) == pytest.approx(0.49752, abs=1e-5)

    def test_y_zero_attains_radius(self):
        for mu in (1.0, 2.0, 10.0):
            pts = nps.cone_exact_spectrum(mu, [0.0])
            assert np.abs(pts).max() == pytest.approx(nps.cone_exact_radius(mu), rel=1e-13)
            assert pts[1] == pytest.approx(mu / (2 * math.sqrt(1 + mu**2)), rel=1e-13)


class TestSpectrumApprox:
    def test_flat_cloud_is_origin(self, flat_graph):
        cloud = nps.spectrum_approx(flat_graph, 8, 10, 2)
        assert np.abs(cloud.points).max() == 0.0
        assert nps.radius(cloud) == 0.0

    def test_cone_cloud_near_lemniscate(self, cone_graph):
        cloud = nps.spectrum_approx(cone_graph(1.0), 16, 400, 200)
        assert nps.radius(cloud) == pytest.approx(nps.cone_exact_radius(1.0), abs=5e-3)
        exact = nps.cone_exact_spectrum(1.0, np.linspace(-40, 40, 20001))
        pts = np.column_stack([cloud.points.real, cloud.points.imag])
        from scipy.spatial import cKDTree

        delta = cKDTree(np.column_stack([exact.real, exact.imag])).query(pts)[0].max()
        assert delta <= 1e-2

    def test_cloud_radius_never_exceeds_exact_plus_margin(self, cone_graph):
        for mu in (1.0, 5.0):
            cloud = nps.spectrum_approx(cone_graph(mu), 16, 200, 200)
            assert nps.radius(cloud) <= nps.cone_exact_radius(mu) + 1e-3

    def test_conjugation_closure(self, example4_graph):
        cloud = nps.spectrum_approx(example4_graph, 8, 7, 20)
        pts = cloud.points
        conj_sorted = np.sort_complex(np.conj(pts))
        np.testing.assert_allclose(np.sort_complex(pts), conj_sorted, atol=1e-15)

    def test_radius_below_c3(self, example3_graph):
        cloud = nps.spectrum_approx(example3_graph, 12, 9, 30)
        assert nps.radius(cloud) <= nps.c3_constant(example3_graph)

    def test_contains_zero_and_meta(self, sin2_34_graph):
        cloud = nps.spectrum_approx(sin2_34_graph, 6, 5, 12)
        assert cloud.contains_zero and 0.0 in cloud.points
        assert cloud.meta["N"] == 6 and cloud.meta["m"] == 5 and cloud.meta["M"] == 12
        assert cloud.meta["graph"] == sin2_34_graph.digest()

    def test_deterministic_ordering(self, example3_graph):
        a = nps.spectrum_approx(example3_graph, 8, 6, 15)
        b = nps.spectrum_approx(example3_graph, 8, 6, 15, workers=2)
        np.testing.assert_array_equal(a.points, b.points)

    def test_k_stride_subsamples_grid(self, sin2_34_graph):
        full = nps.spectrum_approx(sin2_34_graph, 6, 8, 12)
        half = nps.spectrum_approx(sin2_34_graph, 6, 8, 12, k_stride=2)
        assert len(half.points) == (len(full.points) - 1) // 2 + 1
        assert set(np.round(half.points, 12)) <= set(np.round(full.points, 12))


class TestSynthesize:
    def test_single_corner_equals_spectrum(self, cone_graph):
        graph = cone_graph(2.0)
        direct = nps.spectrum_approx(graph, 8, 11, 40)
        synth = nps.synthesize([graph], 8, 11, 40)
        assert set(synth.points) == set(direct.points)

    def test_union_is_idempotent(self, cone_graph):
        graph = cone_graph(2.0)
        once = nps.synthesize([graph], 8, 11, 40)
        twice = nps.synthesize([graph, graph], 8, 11, 40)
        np.testing.assert_array_equal(once.points, twice.points)

    def test_two_cone_corners_radius(self, cone_graph):
        cloud = nps.synthesize([cone_graph(1.0), cone_graph(2.0)], 16, 400, 200)
        expected = max(nps.cone_exact_radius(1.0), nps.cone_exact_radius(2.0))
        assert expected == pytest.approx(1 / math.sqrt(5), rel=1e-14)
        assert nps.radius(cloud) == pytest.approx(expected, abs=1e-3)

    def test_zero_kept_once(self, cone_graph):
        flat78 = nps.DilationGraph.two_sided(nps.flat_profile(7 / 8), nps.flat_profile(7 / 8))
        cloud = nps.synthesize([flat78, cone_graph(1.0)], 8, 5, 10)
        assert np.count_nonzero(cloud.points == 0.0) == 1

    def test_empty_corner_list_rejected(self):
        with pytest.raises(ValueError):
            nps.synthesize([], 8, 5, 10)


class TestEmpiricalSymmetry:
    """The point symmetry z -> -z of two-sided spectra is observed, not proved;
    these record the measured defect rather than asserting an invariant."""

    def test_cone_block_structure_gives_exact_symmetry(self, cone_graph):
        cloud = nps.spectrum_approx(cone_graph(2.0), 16, 100, 200)
        assert nps.hausdorff(cloud.points, -cloud.points) <= 1e-12

    def test_oscillatory_two_sided_close_to_symmetric(self, example4_graph):
        cloud = nps.spectrum_approx(example4_graph, 48, 200, 50)
        assert nps.hausdorff(cloud.points, -cloud.points) <= 1e-3  # observed ~1e-5


class TestHausdorff:
    def test_identical_sets(self):
        pts = np.array([0.1 + 0.2j, -0.3j, 1.0])
        assert nps.hausdorff(pts, pts) == 0.0

    def test_two_singletons(self):
        assert nps.hausdorff(np.array([0.0j]), np.array([1.0 + 0.0j])) == 1.0

    def test_asymmetric_cover(self):
        assert nps.hausdorff(np.array([0.0j, 2.0 + 0.0j]), np.array([1.0 + 0.0j])) == 1.0

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            nps.hausdorff(np.array([]), np.array([1.0 + 0.0j]))

    def test_accepts_clouds(self, flat_graph):
        cloud = nps.spectrum_approx(flat_graph, 4, 3, 2)
        assert nps.hausdorff(cloud, cloud) == 0.0


class TestEmission:
    def test_csv_round_trip(self, cone_graph):
        cloud = nps.spectrum_approx(cone_graph(1.0), 4, 3, 10)
        buf = io.StringIO()
        nps.cloud_to_csv(cloud, buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "re,im"
        data = np.array([complex(float(a), float(b)) for a, b in
                         (ln.split(",") for ln in lines[1:])])
        np.testing.assert_array_equal(data, cloud.points)

    def test_json_dict(self, flat_graph):
        cloud = nps.spectrum_approx(flat_graph, 4, 3, 2)
        d = cloud.to_json_dict()
        assert d["points"][0] == [0.0, 0.0]
        assert d["meta"]["kind"] == "spectrum"
