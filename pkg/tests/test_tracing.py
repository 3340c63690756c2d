"""Streamline tracer: straight lines, helices, stopping causes."""

import math

import numpy as np
import pytest
from scipy.special import jn_zeros, jnp_zeros

import photonflow as pf
from photonflow.errors import ParameterError, SeedError

from conftest import make_tir


def box2(x=5.0, z=(0.0, 10.0)):
    return ((-x, x), z)


# ------------------------------------------------------------ straight lines


def test_axial_plane_wave_paraxial_trace_is_straight():
    spec = pf.PlaneWaveSpec(wave=pf.WaveParameters(1.0), direction=(0.0, 1.0))
    cfg = pf.TraceConfig(
        seeds=((0.7, 0.0), (-1.2, 0.0)),
        parameterization="paraxial-z",
        step=0.25,
        max_steps=100,
        domain=box2(),
    )
    trajs = pf.trace_streamline(spec, cfg, "re")
    assert len(trajs) == 2
    for traj, x0 in zip(trajs, (0.7, -1.2)):
        assert traj.termination == "left-domain"
        assert traj.params[-1] == 10.0  # lands on the boundary exactly
        assert np.all(traj.points[:, 0] == x0)  # zero transverse velocity
        assert np.all(traj.points[:, 1] == traj.params)


def test_tilted_plane_wave_trace_has_constant_slope(plane_wave):
    # direction (0.6, 0.8): dx/dz = 0.75
    cfg = pf.TraceConfig(
        seeds=((0.0, 0.0),),
        parameterization="paraxial-z",
        step=0.5,
        max_steps=100,
        domain=((-20.0, 20.0), (0.0, 10.0)),
    )
    traj = pf.trace_streamline(plane_wave, cfg, "re")[0]
    expected = 0.75 * traj.params
    assert np.abs(traj.points[:, 0] - expected).max() < 1e-12


def test_arc_length_parameterization_tracks_distance(plane_wave):
    cfg = pf.TraceConfig(
        seeds=((0.0, 0.0),),
        parameterization="arc-length",
        step=0.05,
        max_steps=150,
        domain=((-100.0, 100.0), (-100.0, 100.0)),
    )
    traj = pf.trace_streamline(plane_wave, cfg, "re")[0]
    assert traj.termination == "max-steps"
    dist = np.linalg.norm(traj.points - traj.points[0], axis=1)
    assert np.abs(dist - traj.params).max() < 1e-10
    # unit-speed: each increment advances by one step
    gaps = np.linalg.norm(np.diff(traj.points, axis=0), axis=1)
    assert np.abs(gaps - 0.05).max() < 1e-12


def test_gaussian_pair_axial_seed_stays_on_axis(gaussian_pair):
    cfg = pf.TraceConfig(
        seeds=((0.0, 0.0),),
        parameterization="paraxial-z",
        step=1.0,
        max_steps=400,
        domain=((-10.0, 10.0), (0.0, 300.0)),
    )
    traj = pf.trace_streamline(gaussian_pair, cfg, "re")[0]
    # the mirror symmetry of the pair holds bitwise, so the axis is invariant
    assert np.all(traj.points[:, 0] == 0.0)
    assert traj.termination == "left-domain"


def test_bessel_ell0_trace_is_axial():
    spec = pf.BesselSpec(wave=pf.WaveParameters(1.0), ell=0, k_perp=0.5)
    cfg = pf.TraceConfig(
        seeds=((0.5, 0.2, 0.0),),
        parameterization="paraxial-z",
        step=0.05,
        max_steps=300,
        domain=((-2.0, 2.0), (-2.0, 2.0), (0.0, 10.0)),
    )
    traj = pf.trace_streamline(spec, cfg, "re")[0]
    assert np.all(traj.points[:, 0] == 0.5)
    assert np.all(traj.points[:, 1] == 0.2)
    assert traj.params[-1] == 10.0


# ------------------------------------------------------------------- helices


def test_bessel_helix_matches_closed_form(helix_bessel):
    spec = helix_bessel
    r0, phi0, z_end = 0.5, 0.3, 10.0
    traj = pf.trace_bessel_helix(spec, r0=r0, phi0=phi0, z_end=z_end)
    assert traj.termination == "left-domain"
    assert traj.params[-1] == z_end
    r = np.hypot(traj.points[:, 0], traj.points[:, 1])
    assert np.abs(r - r0).max() < 1e-8  # radius conserved
    phi = np.unwrap(np.arctan2(traj.points[:, 1], traj.points[:, 0]))
    expected = phi0 + 2.0 * traj.params / (spec.k_z * r0 * r0)
    assert np.abs(phi - expected).max() < 1e-6
    # the advance is genuinely helical: many radians over 10 mm
    assert expected[-1] - phi0 > 10.0


def test_helix_from_negative_ell_winds_backwards():
    spec = pf.BesselSpec(wave=pf.WaveParameters(1.0), ell=-2, k_perp=0.8863766617893787)
    traj = pf.trace_bessel_helix(spec, r0=0.5, phi0=0.0, z_end=1.0)
    phi = np.unwrap(np.arctan2(traj.points[:, 1], traj.points[:, 0]))
    assert phi[-1] < -1.0


def test_rk4_convergence_is_fourth_order():
    # endpoint drift between consecutive halvings must shrink ~16x;
    # the field is curved enough here that truncation dominates roundoff
    spec = pf.GaussianPairSpec(wave=pf.WaveParameters(0.5), w0_mm=1.0, a_mm=1.5)

    def endpoint(h):
        cfg = pf.TraceConfig(
            seeds=((0.7, 0.0),),
            parameterization="paraxial-z",
            step=h,
            max_steps=int(round(40.0 / h)) + 10,
            domain=((-60.0, 60.0), (0.0, 40.0)),
        )
        traj = pf.trace_streamline(spec, cfg, "re")[0]
        assert traj.termination == "left-domain" and traj.params[-1] == 40.0
        return traj.points[-1, 0]

    e1, e2, e4 = endpoint(1.0), endpoint(0.5), endpoint(0.25)
    order = math.log2(abs(e1 - e2) / abs(e2 - e4))
    assert order >= 3.5


# --------------------------------------------------------- osmotic (im) flow


def test_im_trace_of_bessel_is_radial_and_finds_bright_ring(bessel_ell2):
    ring = jnp_zeros(2, 1)[0] / bessel_ell2.k_perp  # first intensity maximum
    cfg = pf.TraceConfig(
        seeds=((5.0, 0.0, 0.0), (3.0, 4.0, 0.0)),
        parameterization="arc-length",
        step=0.01,
        max_steps=3000,
        domain=((-12.0, 12.0), (-12.0, 12.0), (-1.0, 1.0)),
    )
    trajs = pf.trace_streamline(bessel_ell2, cfg, "im")
    for traj in trajs:
        # purely radial: azimuth and z never move
        ang = np.arctan2(traj.points[:, 1], traj.points[:, 0])
        assert np.abs(ang - ang[0]).max() < 1e-12
        assert np.abs(traj.points[:, 2]).max() < 1e-12
        # walks up the intensity gradient and parks on the ring
        r_final = np.hypot(traj.points[-1, 0], traj.points[-1, 1])
        assert abs(r_final - ring) < 0.05
        assert traj.termination == "max-steps"


def test_im_trace_descends_from_outside_the_ring(bessel_ell2):
    ring = jnp_zeros(2, 1)[0] / bessel_ell2.k_perp
    cfg = pf.TraceConfig(
        seeds=((11.0, 0.0, 0.0),),
        parameterization="arc-length",
        step=0.01,
        max_steps=3000,
        domain=((-12.0, 12.0), (-12.0, 12.0), (-1.0, 1.0)),
    )
    traj = pf.trace_streamline(bessel_ell2, cfg, "im")[0]
    r = np.hypot(traj.points[:, 0], traj.points[:, 1])
    assert r[0] > r[-1]  # pulled inward toward the maximum
    assert abs(r[-1] - ring) < 0.05


# ----------------------------------------------------------- stopping causes


def test_max_steps_bounds_the_point_count(plane_wave):
    cfg = pf.TraceConfig(
        seeds=((0.0, 0.0),),
        parameterization="paraxial-z",
        step=0.1,
        max_steps=3,
        domain=((-50.0, 50.0), (0.0, 1000.0)),
    )
    traj = pf.trace_streamline(plane_wave, cfg, "re")[0]
    assert traj.termination == "max-steps"
    assert len(traj.params) == 4  # seed plus three steps


def test_near_axis_vortex_stops_paraxial_trace(bessel_ell2):
    # azimuthal velocity ~ ell/(r k_z) blows past the displacement cap, so
    # halving exhausts and the stop is attributed to the vortex
    cfg = pf.TraceConfig(
        seeds=((1e-4, 0.0, 0.0),),
        parameterization="paraxial-z",
        step=0.01,
        max_steps=100,
        domain=((-1.0, 1.0), (-1.0, 1.0), (0.0, 5.0)),
    )
    traj = pf.trace_streamline(bessel_ell2, cfg, "re")[0]
    assert traj.termination == "vortex-proximity"
    assert len(traj.params) == 1


def test_tir_trace_funnels_into_glass_vortex(tir_field):
    cfg = pf.TraceConfig(
        seeds=((-1.7, 0.0),),
        parameterization="paraxial-z",
        step=0.002,
        max_steps=3000,
        domain=((-2.5, 0.5), (0.0, 2.0)),
    )
    traj = pf.trace_streamline(tir_field, cfg, "re")[0]
    assert traj.termination == "vortex-proximity"
    assert 100 < len(traj.params) < 2000  # travels, then stalls at the core
    assert traj.points[-1, 0] < 0.0  # still in the glass


def test_consecutive_points_stay_within_twice_the_step(tir_field):
    cfg = pf.TraceConfig(
        seeds=((-1.0, 0.05),),
        parameterization="arc-length",
        step=0.02,
        max_steps=2000,
        domain=((-2.5, 0.0), (0.0, 12.0)),
    )
    traj = pf.trace_streamline(tir_field, cfg, "re")[0]
    assert traj.termination == "left-domain"
    gaps = np.linalg.norm(np.diff(traj.points, axis=0), axis=1)
    assert gaps.max() <= 2.0 * cfg.step + 1e-12


# ------------------------------------------------------------- non-crossing


def test_gaussian_bundle_preserves_seed_order(gaussian_pair):
    xs = (-3.0, -1.5, 0.0, 1.5, 3.0)
    cfg = pf.TraceConfig(
        seeds=tuple((x, 0.0) for x in xs),
        parameterization="paraxial-z",
        step=1.0,
        max_steps=4000,
        domain=((-40.0, 40.0), (0.0, 3000.0)),
    )
    trajs = pf.trace_streamline(gaussian_pair, cfg, "re")
    n = min(len(t.params) for t in trajs)
    for t in trajs:
        assert np.all(t.params[:n] == trajs[0].params[:n])  # shared z ladder
    bundle = np.stack([t.points[:n, 0] for t in trajs], axis=1)
    assert np.all(np.diff(bundle, axis=1) > 0.0)  # order never inverts


# --------------------------------------------------------------- structure


def test_trajectory_records_momenta_alongside_points(evanescent):
    cfg = pf.TraceConfig(
        seeds=((0.5, 0.0),),
        parameterization="arc-length",
        step=0.1,
        max_steps=10,
        domain=((-5.0, 5.0), (-5.0, 5.0)),
    )
    traj = pf.trace_streamline(evanescent, cfg, "re")[0]
    assert traj.which == "re"
    assert traj.parameterization == "arc-length"
    assert traj.momenta.shape == traj.points.shape
    assert traj.momenta.dtype == complex
    # evanescent momenta are position-independent: (i kappa, k_z) everywhere
    assert np.allclose(traj.momenta[:, 0], 0.75j, rtol=0, atol=1e-12)
    assert np.allclose(traj.momenta[:, 1], 1.25, rtol=0, atol=1e-12)


# --------------------------------------------------------------- validation


def test_trace_config_validation():
    dom = ((-1.0, 1.0), (0.0, 1.0))
    good = dict(seeds=((0.0, 0.5),), parameterization="paraxial-z",
                step=0.1, max_steps=10, domain=dom)
    pf.TraceConfig(**good)
    with pytest.raises(ParameterError):
        pf.TraceConfig(**{**good, "parameterization": "euler"})
    with pytest.raises(ParameterError):
        pf.TraceConfig(**{**good, "step": 0.0})
    with pytest.raises(ParameterError):
        pf.TraceConfig(**{**good, "max_steps": 0})
    with pytest.raises(ParameterError):
        pf.TraceConfig(**{**good, "seeds": ()})
    with pytest.raises(ParameterError):
        pf.TraceConfig(**{**good, "vortex_guard": 0.5})
    with pytest.raises(ParameterError):
        pf.TraceConfig(**{**good, "seeds": ((0.0, 0.5, 0.0),)})


def test_trace_rejects_bad_which_and_bad_seed(plane_wave, bessel_ell2):
    cfg = pf.TraceConfig(
        seeds=((0.0, 0.5),), parameterization="arc-length",
        step=0.1, max_steps=10, domain=((-1.0, 1.0), (0.0, 1.0)),
    )
    with pytest.raises(ParameterError):
        pf.trace_streamline(plane_wave, cfg, "abs")
    outside = pf.TraceConfig(
        seeds=((5.0, 0.5),), parameterization="arc-length",
        step=0.1, max_steps=10, domain=((-1.0, 1.0), (0.0, 1.0)),
    )
    with pytest.raises(SeedError):
        pf.trace_streamline(plane_wave, outside, "re")
    on_axis = pf.TraceConfig(
        seeds=((0.0, 0.0, 0.0),), parameterization="paraxial-z",
        step=0.1, max_steps=10,
        domain=((-1.0, 1.0), (-1.0, 1.0), (0.0, 1.0)),
    )
    with pytest.raises(SeedError):  # zero amplitude at the vortex core
        pf.trace_streamline(bessel_ell2, on_axis, "re")


def test_helix_validation(helix_bessel, gaussian_pair):
    with pytest.raises(ParameterError):
        pf.trace_bessel_helix(gaussian_pair, r0=0.5, phi0=0.0, z_end=1.0)
    with pytest.raises(ParameterError):
        pf.trace_bessel_helix(helix_bessel, r0=-0.5, phi0=0.0, z_end=1.0)
    with pytest.raises(ParameterError):
        pf.trace_bessel_helix(helix_bessel, r0=0.5, phi0=0.0, z_end=0.0)
    # seeding exactly on a radial null of J_2 cannot start a streamline
    null_r = jn_zeros(2, 1)[0] / helix_bessel.k_perp
    with pytest.raises(SeedError):
        pf.trace_bessel_helix(helix_bessel, r0=null_r, phi0=0.0, z_end=1.0)
