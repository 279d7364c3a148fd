import math

import numpy as np
import pytest

from conftest import hausdorff, random_body
from isoptope import bodies
from isoptope.errors import NotIsotropic
from isoptope.extremality import (
    HingeSpec,
    dvol_dt,
    facet_second_moment,
    foc_residuals,
    foc_threshold,
    hinge_derivative,
    hinge_derivative_fd,
    hinge_l2d,
    hinge_margin,
    hinge_polytope,
    _gram_sums,
)
from isoptope.hull import facet_enumeration
from isoptope.isotropy import isotropic_position, regular_simplex_isotropic
from isoptope.polytope import PolytopeV, moments


def pick_hinge(iso, md=None, min_margin=0.02):
    """Largest-|derivative| hinge among those with enough angular clearance
    for finite differencing (the face lattice must not change inside the
    step window)."""
    if md is None:
        md = moments(iso)
    best = None
    for fi in range(len(iso.facets)):
        for k in range(iso.dim):
            spec = HingeSpec(fi, k)
            if hinge_margin(iso, spec) < min_margin:
                continue
            der = hinge_derivative(iso, spec, md).dL2d_dt
            if best is None or abs(der) > abs(best[0]):
                best = (der, spec)
    return best


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_foc_zero_on_regular_simplex(d):
    s = regular_simplex_isotropic(d)
    focs = foc_residuals(s)
    assert len(focs) == d + 1
    assert max(f.max_abs for f in focs) < 1e-7


def test_foc_hand_value_d3():
    s = regular_simplex_isotropic(3)
    sums = _gram_sums(s.vertices[list(s.facets[0])])
    assert foc_threshold(3) == 50.0
    assert np.abs(sums - 50.0).max() < 1e-7


def test_foc_detects_perturbation():
    s = regular_simplex_isotropic(3)
    verts = s.vertices.copy()
    verts[0] += np.array([1e-2, 0.0, 0.0])
    p = PolytopeV(3, verts, s.facets)
    # nearly isotropic; loosen the gate to probe it
    focs = foc_residuals(p, centroid_tol=1e-1, cov_tol=1e-1)
    assert max(f.max_abs for f in focs) > 1e-3
    with pytest.raises(NotIsotropic):
        foc_residuals(p)


def test_facet_second_moment_simplex_and_point_mass():
    s = regular_simplex_isotropic(3)
    fv = s.vertices[list(s.facets[0])]
    for k in range(3):
        assert facet_second_moment(fv, k) == pytest.approx(5.0, abs=1e-9)
    p = np.array([1.0, -2.0, 0.5])
    degenerate = np.tile(p, (3, 1))
    assert facet_second_moment(degenerate, 1) == pytest.approx(p @ p, rel=1e-12)


def test_foc_and_second_moment_same_zero_set(rng):
    # r_k = ((d+1)(d+2)/2) * (fsm_k - (d+2)) as an algebraic identity
    for _ in range(100):
        d = int(rng.integers(2, 7))
        fv = rng.standard_normal((d, d)) * rng.uniform(0.3, 3.0)
        sums = _gram_sums(fv)
        for k in range(d):
            r = sums[k] - foc_threshold(d)
            fsm = facet_second_moment(fv, k)
            assert r == pytest.approx(
                (d + 1) * (d + 2) / 2.0 * (fsm - (d + 2)), rel=1e-9, abs=1e-9
            )


def test_hinge_zero_angle_is_identity():
    for d in (2, 3):
        iso = isotropic_position(random_body(d, 61)).body
        k0 = hinge_polytope(iso, HingeSpec(0, 0, 0.0))
        assert k0.n_vertices == iso.n_vertices
        assert hausdorff(k0.vertices, iso.vertices) < 1e-9 * iso.scale()


def test_hinge_volume_monotone_in_angle():
    iso = isotropic_position(random_body(3, 62)).body
    md = moments(iso)
    _, spec = pick_hinge(iso, md)
    vp = moments(hinge_polytope(iso, HingeSpec(spec.facet_index, spec.apex_index, 0.01))).volume
    vm = moments(hinge_polytope(iso, HingeSpec(spec.facet_index, spec.apex_index, -0.01))).volume
    assert vp > md.volume > vm


def test_square_edge_hinge_matches_planar_oracle():
    sq = bodies.cube(2)
    # hinge the edge x = 1 about its endpoint (1, -1); apex (1, 1)
    fi = next(
        i
        for i, f in enumerate(sq.facets)
        if np.abs(sq.vertices[list(f)][:, 0] - 1.0).max() < 1e-12
    )
    f = sq.facets[fi]
    apex_pos = int(np.argmax(sq.vertices[list(f)][:, 1]))
    axis_pt = sq.vertices[[v for j, v in enumerate(f) if j != apex_pos][0]]
    assert np.allclose(axis_pt, [1.0, -1.0])

    spec = HingeSpec(fi, apex_pos, 0.05)
    kt = hinge_polytope(sq, spec)
    vol = moments(kt).volume

    # planar oracle: rotate the line about (1,-1) so the apex side moves
    # outward, intersect with y = +-1, area by the shoelace formula
    t = 0.05
    direction = np.array([math.sin(t), math.cos(t)])  # rotated edge direction
    top = axis_pt + direction * ((1.0 - axis_pt[1]) / direction[1])
    poly = np.array([[-1.0, -1.0], [1.0, -1.0], top, [-1.0, 1.0]])
    x, y = poly[:, 0], poly[:, 1]
    oracle = 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    assert vol == pytest.approx(oracle, rel=1e-10)
    # first-order prediction (1/2) rho_apex^2 t with rho_apex = 2
    assert vol - 4.0 == pytest.approx(2.0 * t, rel=0.05)


def test_dvol_segment_facet():
    tri = facet_enumeration(np.array([[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]))
    fi = next(
        i
        for i, f in enumerate(tri.facets)
        if np.abs(tri.vertices[list(f)][:, 1]).max() < 1e-12
    )
    f = tri.facets[fi]
    apex_pos = int(np.argmax(tri.vertices[list(f)][:, 0]))
    assert dvol_dt(tri, HingeSpec(fi, apex_pos)) == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_dvol_matches_finite_difference(d):
    iso = isotropic_position(random_body(d, 63)).body
    md = moments(iso)
    _, spec = pick_hinge(iso, md)
    dv = dvol_dt(iso, spec)
    t = 1e-4
    vp = moments(hinge_polytope(iso, HingeSpec(spec.facet_index, spec.apex_index, t))).volume
    vm = moments(hinge_polytope(iso, HingeSpec(spec.facet_index, spec.apex_index, -t))).volume
    assert (vp - vm) / (2 * t) == pytest.approx(dv, rel=1e-3)


def test_hinge_derivative_zero_on_simplex():
    for d in (2, 3, 4):
        s = regular_simplex_isotropic(d)
        for fi in range(d + 1):
            for k in range(d):
                rep = hinge_derivative(s, HingeSpec(fi, k))
                assert abs(rep.dL2d_dt) < 1e-7
                assert rep.facet_second_moment == pytest.approx(d + 2, abs=1e-9)


@pytest.mark.parametrize("d", [2, 3])
def test_hinge_derivative_matches_fd(d):
    for seed in (64, 65, 66):
        iso = isotropic_position(random_body(d, seed)).body
        md = moments(iso)
        got = pick_hinge(iso, md)
        if got is None:
            continue
        der, spec = got
        fd = hinge_derivative_fd(iso, spec, t=1e-4)
        assert abs(fd - der) / max(abs(fd), abs(der)) <= 1e-3


@pytest.mark.parametrize("d", [2, 3, 4])
def test_hinge_derivative_richardson(d):
    # the larger step pair needs a wider smooth window: margin >= 0.1
    iso = isotropic_position(random_body(d, 67)).body
    md = moments(iso)
    got = pick_hinge(iso, md, min_margin=0.1)
    if got is None:
        pytest.skip("no hinge with enough angular clearance")
    der, spec = got
    fd = hinge_derivative_fd(iso, spec, t=1e-3, richardson=True)
    assert abs(fd - der) / max(abs(fd), abs(der)) <= 1e-5


def test_hinge_sign_locally_increases_l2d():
    # facet with second moment above d+2: outward hinge raises L^(2d)
    for seed in (70, 71, 72, 73):
        iso = isotropic_position(random_body(3, seed)).body
        md = moments(iso)
        found = None
        for fi in range(len(iso.facets)):
            for k in range(3):
                spec = HingeSpec(fi, k)
                if hinge_margin(iso, spec) < 0.05:
                    continue
                rep = hinge_derivative(iso, spec, md)
                if rep.facet_second_moment > 5.0 + 1e-3:
                    found = spec
                    break
            if found:
                break
        if found is None:
            continue
        l0 = hinge_l2d(iso, found, 0.0)
        l1 = hinge_l2d(iso, found, 1e-3)
        assert l1 > l0
        return
    pytest.fail("no fixture facet with second moment above d+2")


def test_inverse_hinge_restores_body():
    for d, seed in ((2, 80), (3, 81)):
        iso = isotropic_position(random_body(d, seed)).body
        got = pick_hinge(iso, min_margin=0.15)
        if got is None:
            continue
        _, spec = got
        t = 0.05
        kt = hinge_polytope(iso, HingeSpec(spec.facet_index, spec.apex_index, t))

        # locate the rotated facet in the new body: it keeps the axis
        # vertices, and its apex is a vertex the original body did not have
        f = iso.facets[spec.facet_index]
        axis_pts = iso.vertices[[v for j, v in enumerate(f) if j != spec.apex_index]]
        back_spec = None
        for fi2, f2 in enumerate(kt.facets):
            fv2 = kt.vertices[list(f2)]
            hits = [
                j
                for j in range(d)
                if np.linalg.norm(fv2[j][None, :] - axis_pts, axis=1).min() < 1e-7
            ]
            apex2 = [j for j in range(d) if j not in hits]
            if len(hits) == d - 1 and len(apex2) == 1:
                apex_is_new = (
                    np.linalg.norm(
                        iso.vertices - fv2[apex2[0]][None, :], axis=1
                    ).min()
                    > 1e-7
                )
                if apex_is_new:
                    back_spec = HingeSpec(fi2, apex2[0], -t)
                    break
        assert back_spec is not None
        restored = hinge_polytope(kt, back_spec)
        assert hausdorff(restored.vertices, iso.vertices) < 1e-6 * iso.scale()
