"""Seeded Monte Carlo oracles.

Every exact quantity in the package has a statistical cross-check here:
uniform sampling by volume-weighted simplex choice, the barycentric facet
density, the random-simplex second moment, and per-chord shaken-body
mapping.  All draws come from a numpy Generator seeded by (seed, stream),
so identical seeds give bitwise-identical batches.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSimplex, InvalidInput
from .polytope import moments, to_halfspaces, triangulate


@dataclass(frozen=True)
class RngSeed:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if self.seed < 0 or self.stream < 0:
            raise InvalidInput("seed and stream must be non-negative")

    def rng(self):
        return np.random.default_rng([self.seed, self.stream])


def _as_seed(seed):
    if isinstance(seed, RngSeed):
        return seed
    return RngSeed(int(seed))


@dataclass
class Estimate:
    mean: float
    std_error: float
    n: int

    def z(self, exact):
        return (self.mean - exact) / self.std_error


def sample_uniform(p, n, seed):
    """n i.i.d. uniform points in the body.

    A simplex of the fan triangulation is chosen with probability
    proportional to its volume, then a Dirichlet(1,...,1) weight vector
    places the point inside it.
    """
    rng = _as_seed(seed).rng()
    sims = triangulate(p)
    svols = np.empty(len(sims))
    sverts = np.empty((len(sims), p.dim + 1, p.dim))
    for i, s in enumerate(sims):
        e = s.vertices[1:] - s.vertices[0]
        svols[i] = abs(np.linalg.det(e))
        sverts[i] = s.vertices
    idx = rng.choice(len(sims), size=n, p=svols / svols.sum())
    w = rng.dirichlet(np.ones(p.dim + 1), size=n)
    return np.einsum("nk,nkd->nd", w, sverts[idx])


def sample_facet_density(facet_vertices, k, n, seed):
    """Samples on a facet simplex with density proportional to barycentric
    coordinate k, i.e. Dirichlet weights (1,...,2 at k,...,1)."""
    v = np.asarray(facet_vertices, dtype=float)
    d = v.shape[0]
    if not 0 <= k < d:
        raise InvalidInput(f"apex position {k} out of range")
    if d >= 2:
        s = np.linalg.svd(v[1:] - v[0], compute_uv=False)
        if s[-1] <= 1e-12 * max(1.0, s[0]):
            raise DegenerateSimplex("facet vertices affinely dependent")
    rng = _as_seed(seed).rng()
    alpha = np.ones(d)
    alpha[k] = 2.0
    w = rng.dirichlet(alpha, size=n)
    return w @ v


def m2_estimate(p, n, seed, chunk=65536):
    """Normalized second moment of the volume of a random simplex.

    Draws d+1 uniform points per trial; the statistic is
    (vol of their simplex / vol of the body)^2.
    """
    md = moments(p)
    d = p.dim
    fact = math.factorial(d)
    rng = _as_seed(seed).rng()

    sims = triangulate(p)
    svols = np.empty(len(sims))
    sverts = np.empty((len(sims), d + 1, d))
    for i, s in enumerate(sims):
        svols[i] = abs(np.linalg.det(s.vertices[1:] - s.vertices[0]))
        sverts[i] = s.vertices
    probs = svols / svols.sum()

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        idx = rng.choice(len(sims), size=m * (d + 1), p=probs)
        w = rng.dirichlet(np.ones(d + 1), size=m * (d + 1))
        pts = np.einsum("nk,nkd->nd", w, sverts[idx]).reshape(m, d + 1, d)
        edges = pts[:, 1:, :] - pts[:, :1, :]
        vols = np.abs(np.linalg.det(edges)) / fact
        vals = (vols / md.volume) ** 2
        total += float(vals.sum())
        total_sq += float((vals**2).sum())
        done += m
    mean = total / n
    var = max(total_sq / n - mean**2, 0.0)
    return Estimate(mean=mean, std_error=math.sqrt(var / n), n=n)


def shaken_map_sample(p, axis, n, seed):
    """Uniform samples in the shaken body via the per-chord map
    (x, y) -> (x, y - lower_envelope(x)) in the axis frame."""
    from .linalg import rotation_to_last_axis

    u = np.asarray(axis, dtype=float)
    rot = rotation_to_last_axis(u)
    h = to_halfspaces(p)
    a = h.normals @ rot.T  # rotated normals
    b = h.offsets
    ay = a[:, -1]
    lower = ay < -1e-12
    if not lower.any():
        raise InvalidInput("no lower envelope along the axis")
    al = a[lower, :-1] / ay[lower, None]
    bl = b[lower] / ay[lower]

    pts = sample_uniform(p, n, seed) @ rot.T
    f = (bl[None, :] - pts[:, :-1] @ al.T).max(axis=1)
    pts[:, -1] -= f
    return pts @ rot
