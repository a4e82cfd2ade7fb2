"""Independent brute-force oracles used to check the package implementations.

Everything here is intentionally naive: direct subset enumeration,
permutation-based isomorphism, exhaustive boundary-subset balls. The
oracles must stay independent of the code paths they verify.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np


# ---------------------------------------------------------------------------
# Smallest enclosing ball by exhaustive support-subset search
# ---------------------------------------------------------------------------


def _circumball(points: np.ndarray):
    """Smallest ball with all given points on its boundary, via least squares."""
    base = points[0]
    if len(points) == 1:
        return base, 0.0
    V = points[1:] - base
    gram = 2.0 * (V @ V.T)
    rhs = np.einsum("ij,ij->i", V, V)
    try:
        lam, residuals, rank, _ = np.linalg.lstsq(gram, rhs, rcond=1e-9)
    except np.linalg.LinAlgError:
        return None
    if rank < len(points) - 1:
        return None
    offset = V.T @ lam
    center = base + offset
    # reject if the solve did not actually equalize distances
    dists = np.linalg.norm(points - center, axis=1)
    if dists.max() - dists.min() > 1e-7 * (1.0 + dists.max()):
        return None
    return center, float(dists.max())


def meb_radius_exhaustive(points: np.ndarray) -> float:
    """Min enclosing ball radius: try every boundary subset of size <= d+1."""
    pts = np.asarray(points, dtype=np.float64)
    m, d = pts.shape
    best = math.inf
    for size in range(1, min(m, d + 1) + 1):
        for subset in combinations(range(m), size):
            ball = _circumball(pts[list(subset)])
            if ball is None:
                continue
            center, radius = ball
            if radius >= best:
                continue
            if np.all(np.linalg.norm(pts - center, axis=1) <= radius * (1 + 1e-9) + 1e-12):
                best = radius
    return best


def ball_intersection_by_projection(points: np.ndarray, r: float, iters: int = 4000):
    """Alternating-projection feasibility check for the ball intersection.

    Returns True when the iterates land inside every ball, False when the
    residual stalls clearly above r, and None when undecided.
    """
    pts = np.asarray(points, dtype=np.float64)
    x = pts.mean(axis=0)
    for _ in range(iters):
        moved = False
        for c in pts:
            delta = x - c
            dist = np.linalg.norm(delta)
            if dist > r:
                x = c + delta * (r / dist)
                moved = True
        if not moved:
            return True
    worst = max(np.linalg.norm(x - c) for c in pts)
    if worst <= r * (1 + 1e-9):
        return True
    if worst > r * (1 + 1e-6):
        return False
    return None


# ---------------------------------------------------------------------------
# Graph brute force
# ---------------------------------------------------------------------------


def brute_components(n: int, edges) -> list[set[int]]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ra, rb = find(u), find(v)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())


def brute_cliques(adj_sets, size: int) -> list[tuple[int, ...]]:
    n = len(adj_sets)
    return [
        S
        for S in combinations(range(n), size)
        if all(v in adj_sets[u] for u, v in combinations(S, 2))
    ]


def brute_y_count(adj_sets, k: int) -> int:
    total = 0
    for base in brute_cliques(adj_sets, k - 1):
        bset = set(base)
        for u, v in combinations(base, 2):
            for a in adj_sets[u] - bset:
                for b in adj_sets[v] - bset:
                    if a != b:
                        total += 1
    return total


def brute_z_count(adj_sets, k: int) -> int:
    total = 0
    for base in brute_cliques(adj_sets, k - 1):
        bset = set(base)
        for u in base:
            for a in adj_sets[u] - bset:
                for b in adj_sets[a] - bset:
                    if b != a:
                        total += 1
    return total


def is_isomorphic(n: int, edges_a, edges_b) -> bool:
    ea = {frozenset(e) for e in edges_a}
    eb = {frozenset(e) for e in edges_b}
    if len(ea) != len(eb):
        return False

    def degseq(es):
        degs = [0] * n
        for e in es:
            for v in e:
                degs[v] += 1
        return sorted(degs)

    if degseq(ea) != degseq(eb):
        return False
    for perm in permutations(range(n)):
        if {frozenset((perm[u], perm[v])) for u, v in ea} == eb:
            return True
    return False


def cross_polytope_edges(k: int) -> list[tuple[int, int]]:
    n = 2 * k + 2
    return [
        (u, v)
        for u, v in combinations(range(n), 2)
        if not (u % 2 == 0 and v == u + 1)
    ]


def brute_cross_counts(n: int, adj_sets, k: int) -> tuple[int, int]:
    """(o_k, o~_k) via permutation isomorphism against the explicit pattern."""
    size = 2 * k + 2
    pattern = cross_polytope_edges(k)
    o = 0
    for S in combinations(range(n), size):
        sset = set(S)
        pos = {v: i for i, v in enumerate(S)}
        induced = [
            (pos[u], pos[v]) for u, v in combinations(S, 2) if v in adj_sets[u]
        ]
        if is_isomorphic(size, induced, pattern):
            o += 1
    comp = brute_components(n, [(u, v) for u in range(n) for v in adj_sets[u] if u < v])
    o_comp = 0
    for group in comp:
        if len(group) != size:
            continue
        S = sorted(group)
        pos = {v: i for i, v in enumerate(S)}
        induced = [
            (pos[u], pos[v]) for u, v in combinations(S, 2) if v in adj_sets[u]
        ]
        if is_isomorphic(size, induced, pattern):
            o_comp += 1
    return o, o_comp


def brute_subgraph_count(n: int, adj_sets, pattern_edges, v: int, induced: bool) -> int:
    """Count (induced) subgraphs isomorphic to the pattern, fully naively."""
    pedges = {frozenset(e) for e in pattern_edges}
    total = 0
    for S in combinations(range(n), v):
        if induced:
            pos = {x: i for i, x in enumerate(S)}
            edges = {
                frozenset((pos[a], pos[b]))
                for a, b in combinations(S, 2)
                if b in adj_sets[a]
            }
            if is_isomorphic(v, edges, pedges):
                total += 1
        else:
            # distinct edge sets isomorphic to the pattern with vertex set S
            seen = set()
            for perm in permutations(S):
                mapped = frozenset(
                    frozenset((perm[a], perm[b])) for a, b in pedges
                )
                if mapped in seen:
                    continue
                if all(tuple(e)[1] in adj_sets[tuple(e)[0]] for e in mapped):
                    seen.add(mapped)
            total += len(seen)
    return total


def brute_faces_on_large_components(n: int, edges, faces, i: int) -> int:
    groups = brute_components(n, edges)
    size_of = {}
    for group in groups:
        for v in group:
            size_of[v] = len(group)
    return sum(1 for face in faces if size_of[face[0]] >= i)


# ---------------------------------------------------------------------------
# Geometric brute force
# ---------------------------------------------------------------------------


def brute_empty_simplices(points: np.ndarray, r: float, k: int) -> list[tuple[int, ...]]:
    """All k-subsets forming an empty (k-1)-simplex, by exhaustive MEB tests."""
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    out = []
    for S in combinations(range(n), k):
        sub = pts[list(S)]
        if meb_radius_exhaustive(sub) <= r * (1 + 1e-9):
            continue
        if all(
            meb_radius_exhaustive(np.delete(sub, omit, axis=0)) <= r * (1 + 1e-9)
            for omit in range(k)
        ):
            out.append(S)
    return out


def brute_isolated_empty_count(points: np.ndarray, r: float, k: int) -> int:
    pts = np.asarray(points, dtype=np.float64)
    n = len(pts)
    d2 = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
    lim = (2 * r) ** 2
    count = 0
    for S in brute_empty_simplices(pts, r, k):
        sset = set(S)
        if all(d2[u, w] > lim for u in S for w in range(n) if w not in sset):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Distribution oracles
# ---------------------------------------------------------------------------


def poisson_pmf_direct(j: int, lam: float) -> float:
    val = math.exp(-lam)
    for i in range(1, j + 1):
        val *= lam / i
    return val


def tv_between_poissons(lam_a: float, lam_b: float, cutoff: int = 200) -> float:
    return 0.5 * sum(
        abs(poisson_pmf_direct(j, lam_a) - poisson_pmf_direct(j, lam_b))
        for j in range(cutoff)
    )


def mu_quadrature_k3(d: int, cells_per_axis: int) -> float:
    """Grid quadrature of the k=3 empty-simplex shape integral over (B(0,2))^2.

    Midpoint rule on the cube [-2,2]^(2d); the indicator is evaluated with
    an independent squared-distance circumradius formula.
    """
    h = 4.0 / cells_per_axis
    axis = -2.0 + h * (np.arange(cells_per_axis) + 0.5)
    grids = np.meshgrid(*([axis] * (2 * d)), indexing="ij")
    flat = np.stack([g.ravel() for g in grids], axis=-1)
    y2, y3 = flat[:, :d], flat[:, d:]
    n2 = np.einsum("ij,ij->i", y2, y2)
    n3 = np.einsum("ij,ij->i", y3, y3)
    d23 = np.einsum("ij,ij->i", y2 - y3, y2 - y3)
    pair_ok = (n2 <= 4.0) & (n3 <= 4.0) & (d23 <= 4.0)
    x, y, z = n2, d23, n3
    big = np.maximum(np.maximum(x, y), z)
    obtuse = big >= x + y + z - big
    area16 = 2.0 * (x * y + y * z + z * x) - (x * x + y * y + z * z)
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = np.where(obtuse, big / 4.0, x * y * z / np.maximum(area16, 1e-300))
    empty = r2 > 1.0
    return float(np.count_nonzero(pair_ok & empty)) * h ** (2 * d)
