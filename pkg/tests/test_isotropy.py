import math

import numpy as np
import pytest

from conftest import random_body
from isoptope import bodies
from isoptope.hull import facet_enumeration
from isoptope.isotropy import (
    isotropic_constant,
    isotropic_constant_pow2d,
    isotropic_position,
    m2_identity_lhs,
    regular_simplex_isotropic,
)
from isoptope.polytope import PolytopeV, moments, orient_facets


def simplex_L_closed_form(d):
    """Independent oracle: with covariance I the volume of the regular
    isotropic simplex is (d+1)^((d+1)/2) (d+2)^(d/2) / d!, so
    L^(2d) = d!^2 / ((d+1)^(d+1) (d+2)^d)."""
    l2d = math.factorial(d) ** 2 / ((d + 1) ** (d + 1) * (d + 2) ** d)
    return l2d ** (1.0 / (2 * d))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_cube_constant(d):
    assert isotropic_constant(bodies.cube(d)) == pytest.approx(12**-0.5, abs=1e-9)


def test_triangle_constant(rng):
    for _ in range(10):
        pts = rng.standard_normal((3, 2)) * rng.uniform(0.2, 4.0)
        tri = facet_enumeration(pts)
        if tri.n_vertices < 3:
            continue
        assert isotropic_constant(tri) == pytest.approx(108**-0.25, abs=1e-9)


def test_affine_invariance(rng):
    for d in (2, 3, 4, 5):
        p = random_body(d, 71)
        l0 = isotropic_constant(p)
        for _ in range(20):
            t = rng.standard_normal((d, d)) + (d + 1) * np.eye(d)
            shift = rng.standard_normal(d)
            verts = p.vertices @ t.T + shift
            q = PolytopeV(d, verts, orient_facets(verts, p.facets))
            assert abs(isotropic_constant(q) - l0) / l0 <= 1e-8


def test_isotropic_position_cube():
    rep = isotropic_position(bodies.cube(3))
    assert np.abs(rep.transform_linear - math.sqrt(3.0) * np.eye(3)).max() < 1e-12
    assert rep.centroid_residual <= 1e-8
    assert rep.covariance_residual <= 1e-7
    vol_img = moments(rep.body).volume
    det_s = np.linalg.det(rep.transform_linear)
    assert vol_img == pytest.approx(8.0 * det_s, rel=1e-12)


def test_isotropic_position_idempotent():
    for d in (2, 3):
        p = random_body(d, 13)
        rep1 = isotropic_position(p)
        rep2 = isotropic_position(rep1.body)
        s2 = rep2.transform_linear
        assert np.abs(s2 @ s2.T - np.eye(d)).max() <= 1e-7
        assert np.abs(rep2.transform_shift).max() <= 1e-7


@pytest.mark.parametrize("d", [1, 2, 3, 6, 12])
def test_regular_simplex_gram_and_moments(d):
    s = regular_simplex_isotropic(d)
    g = s.vertices @ s.vertices.T
    want = -(d + 2.0) * np.ones((d + 1, d + 1)) + (d + 2.0) * (d + 1) * np.eye(d + 1)
    assert np.abs(g - want).max() < 1e-9
    md = moments(s)
    assert np.abs(md.centroid).max() < 1e-9
    assert np.abs(md.covariance - np.eye(d)).max() < 1e-9
    if d == 1:
        assert np.abs(np.sort(s.vertices[:, 0]) - [-math.sqrt(3), math.sqrt(3)]).max() < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_simplex_beats_cube(d):
    ls = isotropic_constant(regular_simplex_isotropic(d))
    lc = isotropic_constant(bodies.cube(d))
    assert ls == pytest.approx(simplex_L_closed_form(d), abs=1e-9)
    assert ls > lc


def test_m2_identity_lhs_values():
    tri = facet_enumeration(np.array([[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]))
    assert m2_identity_lhs(tri) == pytest.approx(1 / 72, rel=1e-12)
    assert m2_identity_lhs(bodies.cube(2)) == pytest.approx(1 / 96, rel=1e-12)


def test_m2_identity_lhs_affine_invariant(rng):
    p = random_body(3, 9)
    t = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    verts = p.vertices @ t.T + rng.standard_normal(3)
    q = PolytopeV(3, verts, orient_facets(verts, p.facets))
    assert m2_identity_lhs(q) == pytest.approx(m2_identity_lhs(p), rel=1e-9)


def test_l_and_l2d_consistent():
    p = random_body(3, 40)
    assert isotropic_constant(p) ** 6 == pytest.approx(
        isotropic_constant_pow2d(p), rel=1e-12
    )
