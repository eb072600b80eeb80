"""Geometry, layouts, candidate grids, and spacing exclusion windows."""

import numpy as np
import pytest

from pass_robust import (PinchingLayout, RadioConstants, build_geometry,
                         candidate_set, candidate_sets, dbm_to_watt,
                         excluded_indices, exclusion_mask,
                         random_initial_layout, random_user, validate_layout)


def test_dbm_to_watt():
    assert dbm_to_watt(0.0) == pytest.approx(1e-3, rel=1e-15)
    assert dbm_to_watt(-90.0) == pytest.approx(1e-12, rel=1e-14)
    assert dbm_to_watt(10.0) == pytest.approx(1e-2, rel=1e-15)
    np.testing.assert_allclose(dbm_to_watt([0.0, 30.0]), [1e-3, 1.0], rtol=1e-14)


def test_radio_constants_28ghz():
    rc = RadioConstants(28e9, 1.4, 0.08)
    assert rc.wavelength == pytest.approx(0.010714285714285714, rel=1e-15)
    assert rc.guided_wavelength == pytest.approx(0.007653061224489797, rel=1e-15)
    assert rc.guided_wavenumber == pytest.approx(821.0028801381326, rel=1e-14)
    assert not rc.lossless
    assert RadioConstants(28e9).lossless


def test_radio_constants_validation():
    with pytest.raises(ValueError):
        RadioConstants(0.0)
    with pytest.raises(ValueError):
        RadioConstants(28e9, refractive_index=0.9)
    with pytest.raises(ValueError):
        RadioConstants(28e9, attenuation_db_per_m=-0.1)


def test_default_waveguide_placement():
    geo = build_geometry(4, 4, 50.0, 6.0, 5.0)
    np.testing.assert_allclose(geo.waveguide_y, [-3.0, -1.0, 1.0, 3.0])
    np.testing.assert_array_equal(geo.feed_points, np.zeros(4))
    np.testing.assert_array_equal(geo.waveguide_lengths, np.full(4, 50.0))


def test_single_waveguide_sits_at_area_edge():
    geo = build_geometry(1, 4, 50.0, 6.0, 5.0)
    np.testing.assert_allclose(geo.waveguide_y, [-3.0])


def test_geometry_overrides_and_errors():
    geo = build_geometry(2, 3, 50.0, 6.0, 5.0, waveguide_spacing=2.0,
                         feed_points=[1.0, 2.0], waveguide_lengths=[10.0, 20.0])
    np.testing.assert_allclose(geo.waveguide_y, [-3.0, -1.0])
    np.testing.assert_allclose(geo.feed_points, [1.0, 2.0])
    with pytest.raises(ValueError):
        build_geometry(0, 4, 50.0, 6.0, 5.0)
    with pytest.raises(ValueError):
        build_geometry(4, 4, -1.0, 6.0, 5.0)
    with pytest.raises(ValueError):
        build_geometry(2, 2, 50.0, 6.0, 5.0, feed_points=[0.0])
    with pytest.raises(ValueError):
        build_geometry(2, 2, 50.0, 6.0, 5.0, waveguide_lengths=[10.0, 0.0])


def test_pa_positions_3d():
    geo = build_geometry(2, 2, 50.0, 6.0, 5.0)
    lay = PinchingLayout(np.array([[1.0, 2.0], [3.0, 4.0]]))
    pts = geo.pa_positions_3d(lay)
    assert pts.shape == (2, 2, 3)
    np.testing.assert_allclose(pts[0, 1], [2.0, -3.0, 5.0])
    np.testing.assert_allclose(pts[1, 0], [3.0, 3.0, 5.0])


def test_layout_replace_is_a_copy():
    lay = PinchingLayout(np.zeros((1, 2)))
    moved = lay.replace(0, 1, 7.0)
    assert moved.positions[0, 1] == 7.0
    assert lay.positions[0, 1] == 0.0
    with pytest.raises(ValueError):
        PinchingLayout(np.zeros(3))


def test_validate_layout_inclusive_bounds():
    geo = build_geometry(1, 2, 10.0, 2.0, 5.0)
    # endpoints are legal
    assert validate_layout(PinchingLayout(np.array([[0.0, 10.0]])), geo, 1.0) == []
    bad = validate_layout(PinchingLayout(np.array([[-1e-9, 10.0 + 1e-9]])), geo, 1.0)
    assert [v.kind for v in bad] == ["range", "range"]


def test_validate_layout_spacing_pairs():
    geo = build_geometry(1, 3, 10.0, 2.0, 5.0)
    vio = validate_layout(PinchingLayout(np.array([[0.0, 0.5, 5.0]])), geo, 1.0)
    assert len(vio) == 1
    assert (vio[0].kind, vio[0].waveguide, vio[0].pa, vio[0].other_pa) == ("spacing", 0, 0, 1)
    # spacing is per waveguide only
    geo2 = build_geometry(2, 1, 10.0, 2.0, 5.0)
    assert validate_layout(PinchingLayout(np.array([[3.0], [3.0]])), geo2, 1.0) == []


def test_validate_layout_shape_mismatch():
    geo = build_geometry(2, 2, 10.0, 2.0, 5.0)
    with pytest.raises(ValueError):
        validate_layout(PinchingLayout(np.zeros((1, 2))), geo, 1.0)


def test_candidate_grid_spacing():
    geo = build_geometry(1, 4, 50.0, 6.0, 5.0)
    cand = candidate_set(geo, 0, 100)
    assert cand.count == 100
    assert cand.spacing == pytest.approx(0.5050505050505051, rel=1e-15)
    assert cand.offsets[0] == 0.0 and cand.offsets[-1] == 50.0
    fine = candidate_set(geo, 0, 10_000)
    assert fine.spacing == pytest.approx(0.005000500050005001, rel=1e-15)
    with pytest.raises(ValueError):
        candidate_set(geo, 0, 1)


def test_candidate_sets_follow_feeds():
    geo = build_geometry(2, 2, 50.0, 6.0, 5.0, feed_points=[0.0, 5.0],
                         waveguide_lengths=[50.0, 20.0])
    cands = candidate_sets(geo, 11)
    assert cands[1].offsets[0] == 5.0 and cands[1].offsets[-1] == 25.0
    assert cands[0].spacing == 5.0 and cands[1].spacing == 2.0


def test_exclusion_window_examples():
    # unit grid 0..10, minimum spacing 1.5: the window around a PA at 5
    # covers indices 3..7, the window around a PA at 0 covers 0..2
    geo = build_geometry(1, 2, 10.0, 2.0, 5.0)
    cand = candidate_set(geo, 0, 11)
    lay = PinchingLayout(np.array([[5.0, 0.0]]))
    np.testing.assert_array_equal(excluded_indices(lay, 0, 1, cand, 1.5), [3, 4, 5, 6, 7])
    np.testing.assert_array_equal(excluded_indices(lay, 0, 0, cand, 1.5), [0, 1, 2])


def test_exclusion_before_mode():
    geo = build_geometry(1, 2, 10.0, 2.0, 5.0)
    cand = candidate_set(geo, 0, 11)
    lay = PinchingLayout(np.array([[5.0, 0.0]]))
    # first PA has no earlier neighbors; second sees only the first
    assert excluded_indices(lay, 0, 0, cand, 1.5, placed="before").size == 0
    np.testing.assert_array_equal(
        excluded_indices(lay, 0, 1, cand, 1.5, placed="before"), [3, 4, 5, 6, 7])
    with pytest.raises(ValueError):
        exclusion_mask(lay, 0, 0, cand, 1.5, placed="after")


def test_exclusion_never_admits_a_violation():
    rng = np.random.default_rng(42)
    for _ in range(50):
        n = int(rng.integers(2, 5))
        geo = build_geometry(1, n, float(rng.uniform(5, 40)), 2.0, 5.0)
        dmin = float(rng.uniform(0.05, geo.waveguide_lengths[0] / (2 * n)))
        lay = random_initial_layout(geo, dmin, rng)
        cand = candidate_set(geo, 0, int(rng.integers(5, 120)))
        for pa in range(n):
            mask = exclusion_mask(lay, 0, pa, cand, dmin)
            others = np.delete(lay.positions[0], pa)
            gap = np.min(np.abs(cand.offsets[:, None] - others[None, :]), axis=1)
            assert mask[gap < dmin].all()


def test_random_initial_layout_feasible():
    rng = np.random.default_rng(3)
    geo = build_geometry(4, 4, 50.0, 6.0, 5.0)
    for _ in range(200):
        lay = random_initial_layout(geo, 0.5, rng)
        assert validate_layout(lay, geo, 0.5) == []
        assert (np.diff(lay.positions, axis=1) >= 0.5).all()


def test_random_initial_layout_too_tight():
    geo = build_geometry(1, 4, 2.0, 2.0, 5.0)
    with pytest.raises(ValueError):
        random_initial_layout(geo, 1.0, np.random.default_rng(0))


def test_random_user_on_ground_plane():
    rng = np.random.default_rng(9)
    geo = build_geometry(4, 4, 50.0, 6.0, 5.0)
    pts = np.array([random_user(geo, rng) for _ in range(500)])
    assert (pts[:, 2] == 0.0).all()
    assert pts[:, 0].min() >= 0.0 and pts[:, 0].max() <= 50.0
    assert pts[:, 1].min() >= -3.0 and pts[:, 1].max() <= 3.0
    # draws actually cover the area
    assert pts[:, 0].max() - pts[:, 0].min() > 40.0
    assert pts[:, 1].max() - pts[:, 1].min() > 5.0
