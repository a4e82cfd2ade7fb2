"""Seeded random model generators: ER clique complexes, Rips, and Cech.

Every generator is a pure function of its parameters and an RngStream, so
distinct trials can run in any order or in parallel and still reproduce
bit-identical instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import Face, Graph, PointCloud, SimplicialComplex
from .miniball import RADIUS_RTOL, min_enclosing_radius

DENSITY_KINDS = ("uniform_cube", "gaussian")


@dataclass(frozen=True)
class RngStream:
    """One reproducible random stream, keyed by (master_seed, stream_index).

    Streams are derived through numpy's SeedSequence spawn keys, so the
    bytes drawn by stream i never depend on whether stream j ran first,
    on the worker count, or on the platform.
    """

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")
        if self.stream_index < 0:
            raise ValueError("stream_index must be non-negative")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.default_rng(seq)

    def block(self, j: int) -> np.random.Generator:
        """Sub-stream j of this stream, for order-independent block parallelism."""
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index, j))
        return np.random.default_rng(seq)


@dataclass(frozen=True)
class DensitySpec:
    """Sampling density: uniform on [0,1]^d or standard gaussian per coordinate."""

    kind: str
    dimension: int

    def __post_init__(self):
        if self.kind not in DENSITY_KINDS:
            raise ValueError(f"unknown density kind {self.kind!r}")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")


def gen_er_graph(n: int, p: float, rng: RngStream) -> Graph:
    """G(n, p): each of the C(n,2) edges present independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < 2 or p == 0.0:
        return Graph.from_edges(n, [])
    iu, iv = np.triu_indices(n, k=1)
    if p == 1.0:
        mask = np.ones(iu.size, dtype=bool)
    else:
        mask = rng.generator().random(iu.size) < p
    return Graph.from_edges(n, zip(iu[mask].tolist(), iv[mask].tolist()))


def _clique_faces(g: Graph, max_dim: int) -> list[list[Face]]:
    """All cliques of g grouped by dimension, by ordered expansion.

    An i-face extends only by common neighbors greater than its last vertex,
    so every clique is produced exactly once, in lexicographic order.
    """
    faces: list[list[Face]] = [[(v,) for v in range(g.vertex_count)]]
    if max_dim == 0:
        return faces
    nbrs = g.neighbor_sets
    faces.append(list(g.edges()))
    for dim in range(2, max_dim + 1):
        prev = faces[dim - 1]
        cur: list[Face] = []
        for face in prev:
            cand = nbrs[face[0]]
            for v in face[1:]:
                cand = cand & nbrs[v]
            last = face[-1]
            for w in sorted(cand):
                if w > last:
                    cur.append(face + (w,))
        faces.append(cur)
        if not cur:
            faces.extend([] for _ in range(max_dim - dim))
            break
    return faces


def clique_complex(g: Graph, max_dim: int) -> SimplicialComplex:
    """The flag complex of g up to the dimension cap: i-faces are (i+1)-cliques."""
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    faces = _clique_faces(g, max_dim)
    return SimplicialComplex(
        g.vertex_count, tuple(tuple(fs) for fs in faces), max_dim
    )


def cliques_of_order(g: Graph, m: int) -> list[Face]:
    """All cliques on exactly m vertices (m >= 1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return _clique_faces(g, m - 1)[m - 1]


def sample_points(n: int, density: DensitySpec, rng: RngStream) -> PointCloud:
    """n i.i.d. draws from the named density, deterministic given the stream."""
    if n < 0:
        raise ValueError("n must be non-negative")
    gen = rng.generator()
    if density.kind == "uniform_cube":
        pts = gen.random((n, density.dimension))
    else:
        pts = gen.standard_normal((n, density.dimension))
    return PointCloud(density.dimension, pts, density.kind)


def _cell_offsets(d: int) -> list[tuple[int, ...]]:
    """Half of the 3^d - 1 neighbor offsets: first nonzero coordinate positive."""
    offsets = []
    grid = np.indices((3,) * d).reshape(d, -1).T - 1
    for off in map(tuple, grid):
        for x in off:
            if x > 0:
                offsets.append(off)
                break
            if x < 0:
                break
    return offsets


def geometric_graph(pts: PointCloud, r: float) -> Graph:
    """Edge {i,j} iff |X_i - X_j| <= 2r (closed rule), via a spatial grid.

    Cells have width 2r, so only same-cell and adjacent-cell pairs need a
    distance test; expected work is near-linear in the sparse regime.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    P = pts.points
    n = P.shape[0]
    if n <= 1:
        return Graph.from_edges(n, [])
    width = 2.0 * r
    limit_sq = width * width
    cells = np.floor(P / width).astype(np.int64)
    buckets: dict[tuple[int, ...], list[int]] = {}
    for i, key in enumerate(map(tuple, cells.tolist())):
        buckets.setdefault(key, []).append(i)
    coords = P.tolist()
    edges: list[tuple[int, int]] = []

    def _close(u: int, v: int) -> bool:
        s = 0.0
        for a, b in zip(coords[u], coords[v]):
            s += (a - b) * (a - b)
        return s <= limit_sq

    offsets = _cell_offsets(pts.dimension)
    for key, idxs in buckets.items():
        m = len(idxs)
        for ia in range(m):
            u = idxs[ia]
            for ib in range(ia + 1, m):
                v = idxs[ib]
                if _close(u, v):
                    edges.append((u, v) if u < v else (v, u))
        for off in offsets:
            nb = buckets.get(tuple(k + o for k, o in zip(key, off)))
            if nb:
                for u in idxs:
                    for v in nb:
                        if _close(u, v):
                            edges.append((u, v) if u < v else (v, u))
    return Graph.from_edges(n, edges)


def rips_complex(pts: PointCloud, r: float, max_dim: int) -> SimplicialComplex:
    """Vietoris-Rips: the clique complex of the geometric graph at scale r."""
    return clique_complex(geometric_graph(pts, r), max_dim)


def balls_intersect(centers: np.ndarray, r: float) -> bool:
    """Do closed balls of radius r about all centers share a point?

    Equivalent to the smallest-enclosing-ball radius being <= r; compared
    with relative tolerance RADIUS_RTOL.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    return min_enclosing_radius(centers) <= r * (1.0 + RADIUS_RTOL)


def cech_complex(
    pts: PointCloud, r: float, max_dim: int, graph: Graph | None = None
) -> SimplicialComplex:
    """Nerve of radius-r balls about the points, up to the dimension cap.

    The 1-skeleton equals the geometric graph at scale r (two r-balls meet
    iff centers are <= 2r apart); higher faces are cliques of that graph
    whose full ball intersection is nonempty. Monotonicity of intersection
    makes the ordered clique expansion exhaustive. Pass `graph` to reuse a
    geometric graph already built at the same scale.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    g = geometric_graph(pts, r) if graph is None else graph
    P = pts.points
    faces: list[list[Face]] = [[(v,) for v in range(g.vertex_count)]]
    if max_dim >= 1:
        faces.append(list(g.edges()))
    nbrs = g.neighbor_sets
    for dim in range(2, max_dim + 1):
        prev = faces[dim - 1]
        cur: list[Face] = []
        for face in prev:
            cand = nbrs[face[0]]
            for v in face[1:]:
                cand = cand & nbrs[v]
            last = face[-1]
            for w in sorted(cand):
                if w > last and balls_intersect(P[list(face + (w,))], r):
                    cur.append(face + (w,))
        faces.append(cur)
        if not cur:
            faces.extend([] for _ in range(max_dim - dim))
            break
    return SimplicialComplex(
        g.vertex_count, tuple(tuple(fs) for fs in faces), max_dim
    )
