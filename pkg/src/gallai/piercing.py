"""Certified piercing sets for finite families of pairwise intersecting balls.

The pipeline normalizes the family so its smallest ball is the unit
ball, pierces every large ball with points on the doubled sphere (any
large ball meeting the unit ball swallows a fat cap of that sphere),
and buckets the remaining balls by radius scale: each bucket's centers
are covered greedily by balls of the bucket's top radius, which are
then refined down one scale by an axis-aligned 2n-ball cover, so each
refined center lands inside every ball of the bucket it serves. The
result is verified against the original family before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import VerificationError
from .geometry import DEFAULT_TOL, Ball, as_vector
from .sphere_cover import CoverParams, greedy_cover


@dataclass(frozen=True, eq=False)
class Similarity:
    """Positive similarity between original and normalized frames.

    normalized = (x - offset) / scale; original = offset + scale * y.
    """

    scale: float
    offset: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "offset", as_vector(self.offset))
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @classmethod
    def identity(cls, dim: int) -> "Similarity":
        return cls(1.0, np.zeros(dim))

    def to_normalized(self, points) -> np.ndarray:
        return (np.asarray(points, dtype=float) - self.offset) / self.scale

    def to_original(self, points) -> np.ndarray:
        return self.offset + self.scale * np.asarray(points, dtype=float)


@dataclass(frozen=True, eq=False)
class BallFamily:
    """Non-empty family of same-dimension, pairwise intersecting balls."""

    dimension: int
    balls: tuple[Ball, ...]

    def __post_init__(self):
        balls = tuple(self.balls)
        object.__setattr__(self, "balls", balls)
        if not balls:
            raise ValueError("ball family must be non-empty")
        for b in balls:
            if b.dimension != self.dimension:
                raise ValueError(
                    f"dimension mismatch: family is {self.dimension}, "
                    f"ball has {b.dimension}"
                )
        bad = first_non_intersecting_pair(balls)
        if bad is not None:
            raise ValueError(f"balls {bad[0]} and {bad[1]} do not intersect")

    def centers(self) -> np.ndarray:
        return np.array([b.center for b in self.balls])

    def radii(self) -> np.ndarray:
        return np.array([b.radius for b in self.balls])

    def __len__(self):
        return len(self.balls)


def first_non_intersecting_pair(balls, tol: float = DEFAULT_TOL):
    """Index pair of the first disjoint pair, or None if all intersect."""
    centers = np.array([b.center for b in balls])
    radii = np.array([b.radius for b in balls])
    sq = np.einsum("ij,ij->i", centers, centers)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * centers @ centers.T, 0.0)
    allowed = (radii[:, None] + radii[None, :] + tol) ** 2
    bad = np.triu(d2 > allowed, k=1)
    if not bad.any():
        return None
    i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return int(i), int(j)


@dataclass(frozen=True)
class PiercingConfig:
    """Pipeline knobs; None means the dimension-dependent default."""

    lam: float | None = None  # scale ratio, default (1 - 1/n)^(-1/2)
    large_threshold: float | None = None  # default n; must be >= 2
    seed: int = 0
    tol: float = DEFAULT_TOL
    cover_params: CoverParams | None = None


@dataclass(frozen=True)
class PiercingAccounting:
    """Witnessed counts behind the output cardinality."""

    large_count: int
    scale_cover_counts: tuple[tuple[int, int], ...]  # (k, cover balls for bucket k)
    t: int
    lam: float

    def total(self, dimension: int) -> int:
        return self.large_count + sum(
            2 * dimension * c for _, c in self.scale_cover_counts
        )


@dataclass(frozen=True, eq=False)
class PiercingSet:
    """Verified piercing set with per-point provenance.

    Provenance tags are "large" for doubled-sphere points, "scale:k"
    for refined centers of bucket k, and "center" for the single-ball
    shortcut.
    """

    dimension: int
    points: np.ndarray
    provenance: tuple[str, ...]
    transform: Similarity
    accounting: PiercingAccounting

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 2 or p.shape[1] != self.dimension:
            raise ValueError(f"points must have shape (m, {self.dimension})")
        if len(self.provenance) != p.shape[0]:
            raise ValueError("one provenance tag per point required")
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.shape[0]


def normalize_family(family: BallFamily) -> tuple[BallFamily, Similarity]:
    """Translate and scale so the smallest ball is the unit ball at 0.

    Ties on the smallest radius go to the lowest index. Returns the
    normalized family and the similarity mapping results back.
    """
    radii = family.radii()
    idx = int(np.argmin(radii))
    tr = Similarity(float(radii[idx]), family.balls[idx].center.copy())
    balls = tuple(
        Ball(tr.to_normalized(b.center), b.radius / tr.scale) for b in family.balls
    )
    return BallFamily(family.dimension, balls), tr


def cap_overlap_radius(r: float, n: int) -> float:
    """Angular radius of the doubled-sphere cap inside any intersecting ball.

    A ball of radius r >= 2 that meets the unit ball cuts the sphere of
    radius 2 in a cap at least this wide: arccos((2r + 5) / (4 (r + 1))).
    Increasing in r with limit pi/3.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if r < 2.0:
        raise ValueError(f"radius must be at least 2, got {r}")
    return math.acos((2.0 * r + 5.0) / (4.0 * (r + 1.0)))


def pierce_large(n: int, config: PiercingConfig | None = None) -> np.ndarray:
    """Points on the doubled sphere piercing every large intersecting ball.

    Scales a certified cover of the unit sphere (angular radius matched
    to the large-ball cap width) by 2. Any ball of radius at least the
    large threshold that meets the unit ball contains one of these
    points.
    """
    cfg = config or PiercingConfig()
    if n < 2:
        raise ValueError("dimension must be at least 2")
    threshold = cfg.large_threshold if cfg.large_threshold is not None else float(n)
    theta = cap_overlap_radius(threshold, n)
    cover = greedy_cover(n, theta, cfg.seed, cfg.cover_params)
    return 2.0 * cover.centers


def cover_points_by_balls(points, radius: float, seed: int = 0) -> np.ndarray:
    """Greedy center cover: every input point ends within ``radius`` of
    some returned center.

    Candidates are the points themselves plus their pairwise midpoints.
    Repeatedly serve the uncovered point farthest from the chosen
    centers (ties by index) with the candidate covering the most
    uncovered points (ties by index). Deterministic; the seed is
    accepted for interface uniformity but the greedy never draws.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("points must be a non-empty (m, n) array")
    if not radius > 0:
        raise ValueError("radius must be positive")
    m = pts.shape[0]
    if m == 1:
        return pts.copy()
    if m <= 600:
        iu, ju = np.triu_indices(m, k=1)
        candidates = np.concatenate([pts, 0.5 * (pts[iu] + pts[ju])])
    else:
        # Midpoints grow quadratically; past this size the points alone
        # still yield a valid cover.
        candidates = pts
    # Distance matrix candidates x points.
    diff = candidates[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.einsum("kij,kij->ki", diff, diff))
    covered = np.zeros(m, dtype=bool)
    nearest = np.full(m, np.inf)
    centers = []
    while not covered.all():
        open_idx = np.flatnonzero(~covered)
        target = open_idx[int(np.argmax(nearest[open_idx]))]
        able = np.flatnonzero(dist[:, target] <= radius)
        gains = (dist[able][:, ~covered] <= radius).sum(axis=1)
        pick = able[int(np.argmax(gains))]
        centers.append(candidates[pick])
        covered |= dist[pick] <= radius
        np.minimum(nearest, dist[pick], out=nearest)
    return np.array(centers)


def refine_ball_cover(center, r2: float) -> np.ndarray:
    """The 2n axis-offset centers covering ball(center, r2) one scale down.

    Returns center +- (r2 / sqrt(n)) e_i, in the order +e_1..+e_n then
    -e_1..-e_n. Balls of radius r2 * sqrt(1 - 1/n) at these centers
    cover the input ball, and that radius is tight along the diagonals.
    """
    c = as_vector(center)
    if not r2 > 0:
        raise ValueError("radius must be positive")
    n = c.size
    offset = (r2 / math.sqrt(n)) * np.eye(n)
    return np.concatenate([c + offset, c - offset])


def _bucket_index(r: float, lam: float) -> int:
    """Unique k >= 1 with lam^(k-1) <= r < lam^k, robust at boundaries."""
    if r <= 1.0:
        return 1
    k = max(1, int(math.floor(math.log(r) / math.log(lam))) + 1)
    while lam ** (k - 1) > r:
        k -= 1
    while r >= lam**k:
        k += 1
    return max(1, k)


def pierce(family: BallFamily, config: PiercingConfig | None = None) -> PiercingSet:
    """Construct a verified piercing set for a pairwise intersecting family.

    Raises:
        ValueError: On invalid configuration.
        VerificationError: If the final exact check finds an unpierced
            ball (the constructed set rides on the exception).
    """
    cfg = config or PiercingConfig()
    n = family.dimension

    lam_cap = (1.0 - 1.0 / n) ** -0.5
    lam = cfg.lam if cfg.lam is not None else lam_cap
    if not 1.0 < lam <= lam_cap + 1e-12:
        raise ValueError(
            f"lambda must lie in (1, {lam_cap}] so refined balls fit their bucket"
        )
    threshold = cfg.large_threshold if cfg.large_threshold is not None else float(n)
    if threshold < 2.0:
        raise ValueError("large threshold must be at least 2")

    # Smallest t with lam^t strictly above the threshold; the relative
    # guard keeps exact powers (e.g. lam^2 = 2 at n = 2) below it.
    t = 1
    while lam**t <= threshold * (1.0 + 1e-12):
        t += 1

    if len(family) == 1:
        only = family.balls[0]
        return _verified(
            family,
            cfg,
            PiercingSet(
                n,
                only.center[None, :].copy(),
                ("center",),
                Similarity.identity(n),
                PiercingAccounting(0, (), t, lam),
            ),
        )

    normalized, transform = normalize_family(family)
    radii = normalized.radii()
    centers = normalized.centers()

    points: list[np.ndarray] = []
    provenance: list[str] = []

    large = radii >= threshold
    large_count = 0
    if large.any():
        c0 = pierce_large(n, cfg)
        large_count = c0.shape[0]
        points.append(c0)
        provenance.extend(["large"] * large_count)

    buckets: dict[int, list[int]] = {}
    for i in np.flatnonzero(~large):
        buckets.setdefault(_bucket_index(float(radii[i]), lam), []).append(int(i))

    scale_counts = []
    for k in sorted(buckets):
        xk = centers[buckets[k]]
        ball_centers = cover_points_by_balls(xk, lam**k, cfg.seed)
        scale_counts.append((k, ball_centers.shape[0]))
        for z in ball_centers:
            points.append(refine_ball_cover(z, lam**k))
            provenance.extend([f"scale:{k}"] * (2 * n))

    raw = np.concatenate(points) if points else np.empty((0, n))
    result = PiercingSet(
        n,
        transform.to_original(raw),
        tuple(provenance),
        transform,
        PiercingAccounting(large_count, tuple(scale_counts), t, lam),
    )
    return _verified(family, cfg, result)


def _verified(family, cfg, result: PiercingSet) -> PiercingSet:
    ok, witness = verify_piercing(family, result, cfg.tol)
    if not ok:
        raise VerificationError(
            f"piercing verification failed at ball index {witness}",
            witness=witness,
            result=result,
        )
    return result


def verify_piercing(
    family: BallFamily, piercing, tol: float = DEFAULT_TOL
) -> tuple[bool, int | None]:
    """Exact check that every ball contains at least one point.

    Accepts a PiercingSet or a raw (m, n) array. Returns (True, None)
    or (False, index of the first unpierced ball).
    """
    pts = piercing.points if isinstance(piercing, PiercingSet) else np.asarray(
        piercing, dtype=float
    )
    if pts.ndim != 2 or pts.shape[1] != family.dimension:
        raise ValueError(f"points must have shape (m, {family.dimension})")
    if pts.shape[0] == 0:
        return False, 0
    for i, b in enumerate(family.balls):
        gaps = np.linalg.norm(pts - b.center, axis=1)
        if not (gaps <= b.radius + tol).any():
            return False, i
    return True, None
