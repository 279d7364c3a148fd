"""Fixture bodies: cubes, regular simplices, and random simplicial polytopes."""

import itertools

import numpy as np

from . import hull
from .errors import InvalidInput
from .polytope import PolytopeV, orient_facets
from .sample import _as_seed


def cube(d):
    """The cube [-1, 1]^d with each face triangulated by vertex-orderings.

    Face triangulations restrict consistently to shared sub-faces, so every
    (d-2)-face of the output is shared by exactly two facets.
    """
    if d < 1:
        raise InvalidInput("dimension must be >= 1")
    corners = np.array(list(itertools.product([-1.0, 1.0], repeat=d)))
    index = {tuple(c): i for i, c in enumerate(corners)}
    if d == 1:
        return PolytopeV(dim=1, vertices=corners, facets=[(0,), (1,)])

    facets = []
    for axis in range(d):
        rest = [j for j in range(d) if j != axis]
        for sign in (-1.0, 1.0):
            # walk from the all -1 corner, flipping one free axis per step
            for perm in itertools.permutations(rest):
                point = [-1.0] * d
                point[axis] = sign
                chain = [index[tuple(point)]]
                for j in perm:
                    point[j] = 1.0
                    chain.append(index[tuple(point)])
                facets.append(tuple(chain))
    facets = sorted(set(tuple(sorted(f)) for f in facets))
    return PolytopeV(dim=d, vertices=corners, facets=orient_facets(corners, facets))


def random_simplicial(d, n_points, seed):
    """Convex hull of random unit-sphere points; simplicial for generic draws."""
    if n_points < d + 1:
        raise InvalidInput("need at least d+1 points")
    rng = _as_seed(seed).rng()
    pts = rng.standard_normal((n_points, d))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return hull.facet_enumeration(pts)
