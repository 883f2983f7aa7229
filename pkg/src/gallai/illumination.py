"""Illumination of spiky balls and cap bodies.

A spiky ball is the union of the convex hulls of the unit ball with
each of finitely many outside vertices; it is a cap body exactly when
the open spherical caps its spikes cut on the unit sphere are pairwise
disjoint. The illumination certificate used throughout is the standard
sufficient condition: the direction set positively spans the whole
space, and every vertex's open illumination cap contains a direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .bounds import solve_alpha
from .errors import VerificationError
from .geometry import DEFAULT_TOL, SphericalCap, as_vector
from .sphere_cover import CoverParams, greedy_cover

# A vertex must clear the unit sphere by at least this much.
VERTEX_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpikyBall:
    """Vertex list of a spiky ball; every vertex strictly outside the
    unit ball."""

    dimension: int
    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != self.dimension or v.shape[0] == 0:
            raise ValueError(f"vertices must have shape (m, {self.dimension}), m >= 1")
        norms = np.linalg.norm(v, axis=1)
        if np.any(norms < 1.0 + VERTEX_TOL):
            bad = int(np.argmin(norms))
            raise ValueError(
                f"vertex {bad} has norm {norms[bad]!r}; must exceed 1"
            )
        object.__setattr__(self, "vertices", v)

    def __len__(self):
        return self.vertices.shape[0]


@dataclass(frozen=True, eq=False)
class CapBody:
    """Spiky ball whose associated open caps are pairwise disjoint."""

    spiky: SpikyBall

    def __post_init__(self):
        ok, pair = is_cap_body(self.spiky)
        if not ok:
            raise ValueError(
                f"not a cap body: caps of vertices {pair[0]} and {pair[1]} overlap"
            )

    @classmethod
    def from_vertices(cls, dimension: int, vertices) -> "CapBody":
        return cls(SpikyBall(dimension, vertices))

    @property
    def dimension(self) -> int:
        return self.spiky.dimension

    @property
    def vertices(self) -> np.ndarray:
        return self.spiky.vertices

    def __len__(self):
        return len(self.spiky)


@dataclass(frozen=True, eq=False)
class DirectionSet:
    """Unit directions with optional per-direction provenance tags."""

    dimension: int
    directions: np.ndarray
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        d = np.asarray(self.directions, dtype=float)
        if d.ndim != 2 or d.shape[1] != self.dimension:
            raise ValueError(f"directions must have shape (k, {self.dimension})")
        norms = np.linalg.norm(d, axis=1)
        if d.shape[0] and np.any(np.abs(norms - 1.0) > 1e-9):
            raise ValueError("directions must be unit vectors")
        if self.provenance and len(self.provenance) != d.shape[0]:
            raise ValueError("one provenance tag per direction required")
        object.__setattr__(self, "directions", d)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def __len__(self):
        return self.directions.shape[0]


def _vertices_of(body) -> np.ndarray:
    return body.vertices if hasattr(body, "vertices") else np.asarray(body, dtype=float)


def base_cap(x) -> SphericalCap:
    """Closed cap the spike at ``x`` cuts on the unit sphere.

    Axis x/|x|, angular radius arccos(1/|x|). Requires |x| > 1.
    """
    x = as_vector(x)
    norm = float(np.linalg.norm(x))
    if norm <= 1.0:
        raise ValueError(f"vertex norm must exceed 1, got {norm!r}")
    return SphericalCap(x / norm, math.acos(1.0 / norm), closed=True)


def illumination_cap(x) -> SphericalCap:
    """Open cap of directions that illuminate the vertex ``x``.

    Axis -x/|x|, angular radius pi/2 - arccos(1/|x|); widens toward
    pi/2 as the vertex approaches the sphere. Requires |x| > 1.
    """
    x = as_vector(x)
    norm = float(np.linalg.norm(x))
    if norm <= 1.0:
        raise ValueError(f"vertex norm must exceed 1, got {norm!r}")
    return SphericalCap(
        -x / norm, math.pi / 2 - math.acos(1.0 / norm), closed=False
    )


def is_cap_body(s, tol: float = DEFAULT_TOL) -> tuple[bool, tuple[int, int] | None]:
    """Pairwise disjointness check for the associated open caps.

    Tangency is allowed: axes must be at least the sum of the two cap
    radii apart, minus ``tol``. Returns (True, None) or (False, (i, j))
    with the first violating pair in row-major order.
    """
    v = _vertices_of(s)
    m = v.shape[0]
    if m < 2:
        return True, None
    norms = np.linalg.norm(v, axis=1)
    axes = v / norms[:, None]
    radii = np.arccos(np.clip(1.0 / norms, -1.0, 1.0))
    angles = np.arccos(np.clip(axes @ axes.T, -1.0, 1.0))
    required = radii[:, None] + radii[None, :]
    bad = np.triu(angles < required - tol, k=1)
    if not bad.any():
        return True, None
    i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return False, (int(i), int(j))


def positive_hull_full(directions, tol: float = 1e-9) -> bool:
    """True iff the strictly positive combinations of the directions
    fill the whole space.

    Equivalent to the dual cone {u : y_j . u <= 0 for all j} being {0}.
    Decided by rank plus one feasibility solve: maximize sum(s) subject
    to Y u + s <= 0, 0 <= s <= 1. A full positive hull forces optimum 0
    and full rank; any nonzero dual vector either gives a positive
    optimum or a rank defect.
    """
    y = directions.directions if isinstance(directions, DirectionSet) else np.asarray(
        directions, dtype=float
    )
    if y.ndim != 2:
        raise ValueError("directions must be a (k, n) array")
    k, n = y.shape
    if k < n + 1:
        return False
    if np.linalg.matrix_rank(y) < n:
        return False
    c = np.concatenate([np.zeros(n), -np.ones(k)])
    a_ub = np.hstack([y, np.eye(k)])
    bounds = [(None, None)] * n + [(0.0, 1.0)] * k
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(k), bounds=bounds, method="highs")
    if not res.success:
        raise RuntimeError(f"feasibility solve failed: {res.message}")
    return -res.fun <= tol


def verifies_illumination(
    s, d: DirectionSet, tol: float = DEFAULT_TOL
) -> tuple[bool, int | None]:
    """Illumination certificate: full positive hull plus one direction
    strictly inside every vertex's open illumination cap.

    Returns (True, None) on success; (False, i) with the first vertex
    whose cap contains no direction; (False, None) when the positive
    hull already fails.
    """
    v = _vertices_of(s)
    if d.dimension != v.shape[1]:
        raise ValueError(f"dimension mismatch: {d.dimension} vs {v.shape[1]}")
    if len(d) == 0 or not positive_hull_full(d):
        return False, None
    norms = np.linalg.norm(v, axis=1)
    axes = v / norms[:, None]
    # Open-cap membership: dot with -axis must exceed cos(radius) + tol.
    thresholds = np.cos(math.pi / 2 - np.arccos(np.clip(1.0 / norms, -1.0, 1.0)))
    best = (-axes @ d.directions.T).max(axis=1)
    failing = np.flatnonzero(best <= thresholds + tol)
    if failing.size:
        return False, int(failing[0])
    return True, None


def illuminate_cap_body(
    body: CapBody,
    alpha: float | None = None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    params: CoverParams | None = None,
) -> DirectionSet:
    """Constructive illumination of a cap body.

    Far vertices (norm >= 1/cos(alpha)) each get their own antipodal
    axis direction; the rest are handled by the centers of a certified
    sphere cover of angular radius pi/2 - alpha, whose caps land inside
    every near vertex's illumination cap. The cover block is omitted
    when there are no near vertices and the axis directions already
    positively span. Alpha defaults to the exponent balance point.

    Raises:
        VerificationError: If the certificate fails on the output.
    """
    if alpha is None:
        alpha = solve_alpha(1e-9)
    if not 0.0 < alpha < math.pi / 2:
        raise ValueError(f"alpha must lie in (0, pi/2), got {alpha}")
    v = body.vertices
    n = body.dimension
    norms = np.linalg.norm(v, axis=1)
    far = norms >= 1.0 / math.cos(alpha) - 1e-12
    u1 = -v[far] / norms[far][:, None]
    tags = [f"U1:{i}" for i in np.flatnonzero(far)]

    need_cover = bool((~far).any()) or not positive_hull_full(u1)
    if need_cover:
        cover = greedy_cover(n, math.pi / 2 - alpha, seed, params)
        u2 = cover.centers
        tags.extend(f"U2:{j}" for j in range(u2.shape[0]))
        directions = np.concatenate([u1, u2]) if u1.size else u2
    else:
        directions = u1

    out = DirectionSet(n, directions, tuple(tags))
    ok, witness = verifies_illumination(body, out, tol)
    if not ok:
        raise VerificationError(
            "illumination certificate failed"
            + (f" at vertex {witness}" if witness is not None else " (positive hull)"),
            witness=witness,
            result=out,
        )
    return out


def u1_separation_check(body, alpha: float, tol: float = DEFAULT_TOL) -> bool:
    """Far-vertex axis directions are pairwise at least 2 alpha apart.

    A consequence of cap disjointness: far vertices have cap radius at
    least alpha each. Exposed as an independent check; accepts a
    CapBody or a raw SpikyBall.
    """
    v = _vertices_of(body)
    norms = np.linalg.norm(v, axis=1)
    far = norms >= 1.0 / math.cos(alpha) - 1e-12
    axes = v[far] / norms[far][:, None]
    if axes.shape[0] < 2:
        return True
    angles = np.arccos(np.clip(axes @ axes.T, -1.0, 1.0))
    np.fill_diagonal(angles, math.pi)
    return bool(angles.min() >= 2.0 * alpha - tol)


def sweep_alpha(
    body: CapBody,
    alphas,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    params: CoverParams | None = None,
) -> tuple[float, DirectionSet]:
    """Pick the alpha from a grid minimizing the witnessed output size.

    Ties go to the smaller alpha; alphas whose construction fails to
    certify are skipped. Raises VerificationError if none succeed.
    """
    best: tuple[float, DirectionSet] | None = None
    for alpha in alphas:
        try:
            d = illuminate_cap_body(body, alpha, seed, tol, params)
        except VerificationError:
            continue
        if best is None or len(d) < len(best[1]):
            best = (float(alpha), d)
    if best is None:
        raise VerificationError("no alpha in the grid produced a certified direction set")
    return best


def monte_carlo_hull_margin(directions, samples: int = 10_000, seed: int = 0) -> float:
    """Monte-Carlo margin for the positive-hull decision.

    Samples uniform unit vectors u and returns min over u of
    max_j y_j . u: positive means every sampled u is seen by some
    direction (hull looks full), negative means a sampled witness
    halfspace avoids all directions.
    """
    from . import sampling

    y = directions.directions if isinstance(directions, DirectionSet) else np.asarray(
        directions, dtype=float
    )
    u = sampling.unit_vectors(sampling.rng_from(seed), y.shape[1], samples)
    return float((u @ y.T).max(axis=1).min())
