"""Smallest enclosing ball in R^d, Welzl's algorithm with move-to-front.

The ball-intersection predicate for Cech faces reduces to this: closed
balls of radius r about a point set share a point iff the smallest
enclosing ball of the set has radius <= r.
"""

from __future__ import annotations

import math

import numpy as np

# Relative slack on radius comparisons; ties have probability zero for
# continuous densities, the slack only guards float round-off.
RADIUS_RTOL = 1e-10


def _ball_from_boundary(boundary: list[np.ndarray]) -> tuple[np.ndarray, float] | None:
    """Smallest ball with all of `boundary` on its surface, or None if degenerate.

    The center lies in the affine hull of the boundary points; solving the
    equidistance conditions there gives a (len-1) x (len-1) Gram system.
    """
    m = len(boundary)
    if m == 0:
        return None
    base = boundary[0]
    if m == 1:
        return base.copy(), 0.0
    V = np.array([q - base for q in boundary[1:]])
    gram = 2.0 * (V @ V.T)
    rhs = np.einsum("ij,ij->i", V, V)
    try:
        lam = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        return None
    offset = V.T @ lam
    center = base + offset
    return center, float(np.linalg.norm(offset))


def _contains(ball: tuple[np.ndarray, float] | None, p: np.ndarray) -> bool:
    if ball is None:
        return False
    center, radius = ball
    return float(np.linalg.norm(p - center)) <= radius * (1.0 + RADIUS_RTOL) + 1e-300


def _welzl(pts: list[np.ndarray], limit: int, boundary: list[np.ndarray], dim: int):
    ball = _ball_from_boundary(boundary)
    if len(boundary) == dim + 1:
        return ball
    i = 0
    while i < limit:
        p = pts[i]
        if not _contains(ball, p):
            ball = _welzl(pts, i, boundary + [p], dim)
            # move-to-front: offending points surface early in later passes
            pts.insert(0, pts.pop(i))
        i += 1
    return ball


def min_enclosing_ball(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Center and radius of the smallest ball enclosing `points` (shape (m, d))."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("need at least one point of shape (m, d)")
    m, d = pts.shape
    if m == 1:
        return pts[0].copy(), 0.0
    if m == 2:
        center = 0.5 * (pts[0] + pts[1])
        return center, float(np.linalg.norm(pts[0] - center))
    work = [pts[i] for i in range(m)]
    ball = _welzl(work, m, [], d)
    if ball is None:  # all points coincide up to round-off
        return pts[0].copy(), 0.0
    return ball


def min_enclosing_radius(points: np.ndarray) -> float:
    """Radius only; closed forms for up to three points avoid the recursion."""
    pts = np.asarray(points, dtype=np.float64)
    m = pts.shape[0]
    if m == 1:
        return 0.0
    if m == 2:
        d = pts[0] - pts[1]
        return 0.5 * math.sqrt(float(d @ d))
    if m == 3:
        d01 = pts[0] - pts[1]
        d12 = pts[1] - pts[2]
        d20 = pts[2] - pts[0]
        x = float(d01 @ d01)
        y = float(d12 @ d12)
        z = float(d20 @ d20)
        big = max(x, y, z)
        if big >= x + y + z - big:  # a >= 90 degree angle: diameter ball
            return 0.5 * math.sqrt(big)
        area16 = 2.0 * (x * y + y * z + z * x) - (x * x + y * y + z * z)
        return math.sqrt(x * y * z / area16)
    return min_enclosing_ball(pts)[1]


def three_point_radius(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Vectorized smallest-enclosing-ball radius for point triples.

    Inputs are broadcastable (..., d) arrays. If the triangle has an angle
    >= 90 degrees the ball is the diameter ball of the longest side,
    otherwise it is the circumscribed ball with radius abc / (4 * area).
    """
    ab = np.linalg.norm(a - b, axis=-1)
    bc = np.linalg.norm(b - c, axis=-1)
    ca = np.linalg.norm(c - a, axis=-1)
    sides = np.stack([ab, bc, ca], axis=-1)
    sides_sorted = np.sort(sides, axis=-1)
    s0, s1, s2 = sides_sorted[..., 0], sides_sorted[..., 1], sides_sorted[..., 2]
    obtuse = s2 * s2 >= s0 * s0 + s1 * s1
    # Heron in the numerically stable sorted form (Kahan)
    area_sq = (
        (s2 + (s1 + s0)) * (s0 - (s2 - s1)) * (s0 + (s2 - s1)) * (s2 + (s1 - s0))
    ) / 16.0
    area = np.sqrt(np.maximum(area_sq, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        circum = np.where(area > 0, s0 * s1 * s2 / (4.0 * area), np.inf)
    return np.where(obtuse, 0.5 * s2, np.minimum(circum, np.inf))
