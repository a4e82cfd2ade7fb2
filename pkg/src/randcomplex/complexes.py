"""Core representations: graphs, point clouds, simplicial complexes, components.

All types are immutable after construction and safe to share across worker
processes. Vertex indices are 0-based everywhere, faces are strictly
increasing tuples, and face lists are kept in lexicographic order so that
every downstream count is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

Face = tuple[int, ...]


class Graph:
    """Undirected simple graph on vertices 0..n-1 with sorted adjacency."""

    __slots__ = ("vertex_count", "adjacency", "_neighbor_sets")

    def __init__(self, vertex_count: int, adjacency: tuple[tuple[int, ...], ...]):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        if len(adjacency) != vertex_count:
            raise ValueError("adjacency length must equal vertex_count")
        self.vertex_count = vertex_count
        self.adjacency = adjacency
        self._neighbor_sets: tuple[frozenset[int], ...] | None = None

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> Graph:
        """Build a graph from an iterable of (u, v) pairs; duplicates collapse."""
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        if self._neighbor_sets is None:
            self._neighbor_sets = tuple(frozenset(a) for a in self.adjacency)
        return self._neighbor_sets

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self):
        """Yield edges (u, v) with u < v in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if v > u:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def validate(self) -> None:
        """Check symmetry, no self-loops, and index bounds; raise on violation."""
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if not 0 <= v < self.vertex_count:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if v <= prev:
                    raise ValueError(f"adjacency of {u} not strictly sorted")
                prev = v
                if u not in self.adjacency[v]:
                    raise ValueError(f"asymmetric edge ({u},{v})")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.vertex_count, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, edges={self.edge_count})"


class PointCloud:
    """n points in R^d plus the identity of the sampling density."""

    __slots__ = ("dimension", "points", "density_id")

    def __init__(self, dimension: int, points: np.ndarray, density_id: str = ""):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        pts = np.asarray(points, dtype=np.float64)
        if pts.size == 0:
            pts = pts.reshape(0, dimension)
        if pts.ndim != 2 or pts.shape[1] != dimension:
            raise ValueError(f"points must have shape (n, {dimension})")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        pts = pts.copy()
        pts.flags.writeable = False
        self.dimension = dimension
        self.points = pts
        self.density_id = density_id

    def __len__(self) -> int:
        return self.points.shape[0]

    def __repr__(self) -> str:
        return f"PointCloud(n={len(self)}, d={self.dimension}, density={self.density_id!r})"


class SimplicialComplex:
    """Faces grouped by dimension 0..max_dim, each a strictly increasing tuple.

    `faces[i]` is the lexicographically sorted tuple of all i-faces. The
    dimension cap `max_dim` is fixed at construction: homology in degree k
    needs faces up to k+1, and callers are expected to request no more than
    they need.
    """

    __slots__ = ("vertex_count", "faces", "max_dim")

    def __init__(
        self,
        vertex_count: int,
        faces: tuple[tuple[Face, ...], ...],
        max_dim: int,
    ):
        if max_dim < 0:
            raise ValueError("max_dim must be non-negative")
        if len(faces) != max_dim + 1:
            raise ValueError("faces must list every dimension 0..max_dim")
        self.vertex_count = vertex_count
        self.faces = faces
        self.max_dim = max_dim

    @classmethod
    def from_face_lists(
        cls, vertex_count: int, faces_by_dim, max_dim: int | None = None
    ) -> SimplicialComplex:
        """Normalize, sort, pad with empty dimensions, and validate."""
        groups = [sorted({tuple(f) for f in dim_faces}) for dim_faces in faces_by_dim]
        if max_dim is None:
            max_dim = max(len(groups) - 1, 0)
        while len(groups) <= max_dim:
            groups.append([])
        c = cls(vertex_count, tuple(tuple(g) for g in groups), max_dim)
        c.validate()
        return c

    def validate(self) -> None:
        """Check sortedness, downward closure, and the vertex set; raise on violation."""
        if tuple((v,) for v in range(self.vertex_count)) != self.faces[0]:
            raise ValueError("dimension-0 faces must be exactly the vertices")
        for dim in range(1, self.max_dim + 1):
            below = set(self.faces[dim - 1])
            prev: Face | None = None
            for face in self.faces[dim]:
                if len(face) != dim + 1:
                    raise ValueError(f"face {face} has wrong length for dim {dim}")
                if any(face[i] >= face[i + 1] for i in range(dim)):
                    raise ValueError(f"face {face} not strictly increasing")
                if prev is not None and face <= prev:
                    raise ValueError(f"faces of dim {dim} not sorted/unique")
                prev = face
                for i in range(dim + 1):
                    sub = face[:i] + face[i + 1 :]
                    if sub not in below:
                        raise ValueError(f"missing subface {sub} of {face}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self.max_dim == other.max_dim
            and self.faces == other.faces
        )

    def __hash__(self):
        return hash((self.vertex_count, self.max_dim, self.faces))

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={f_vector(self)}, max_dim={self.max_dim})"


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components: per-vertex label and per-label size.

    The label of a component is the smallest vertex index it contains, so
    the decomposition is deterministic and permutation-covariant.
    """

    component_id: tuple[int, ...]
    component_sizes: dict[int, int]

    @property
    def count(self) -> int:
        return len(self.component_sizes)

    def size_of(self, v: int) -> int:
        return self.component_sizes[self.component_id[v]]


def components(g: Graph) -> ComponentDecomposition:
    """Decompose `g` into connected components via BFS.

    Two vertices share a label iff they are joined by a path; the label is
    the smallest vertex index in the component.
    """
    n = g.vertex_count
    label = [-1] * n
    sizes: dict[int, int] = {}
    for start in range(n):
        if label[start] >= 0:
            continue
        queue = deque([start])
        label[start] = start
        size = 0
        while queue:
            u = queue.popleft()
            size += 1
            for v in g.adjacency[u]:
                if label[v] < 0:
                    label[v] = start
                    queue.append(v)
        sizes[start] = size
    return ComponentDecomposition(tuple(label), sizes)


def f_vector(c: SimplicialComplex) -> tuple[int, ...]:
    """Number of i-faces for i = 0..max_dim (trailing zeros included)."""
    return tuple(len(c.faces[i]) for i in range(c.max_dim + 1))


def skeleton_graph(c: SimplicialComplex) -> Graph:
    """The 1-skeleton of a complex as a Graph."""
    edges = c.faces[1] if c.max_dim >= 1 else ()
    return Graph.from_edges(c.vertex_count, edges)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def complex_to_text(c: SimplicialComplex) -> str:
    """Line-oriented text format: header then one face per line, grouped by dimension."""
    top = 0
    for i in range(c.max_dim, -1, -1):
        if c.faces[i]:
            top = i
            break
    lines = [f"dim={top} vertices={c.vertex_count} max_dim={c.max_dim}"]
    for dim in range(c.max_dim + 1):
        for face in c.faces[dim]:
            lines.append(" ".join(str(v) for v in face))
    return "\n".join(lines) + "\n"


def complex_from_text(text: str) -> SimplicialComplex:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty complex text")
    header = dict(part.split("=") for part in lines[0].split())
    n = int(header["vertices"])
    max_dim = int(header["max_dim"])
    groups: list[list[Face]] = [[] for _ in range(max_dim + 1)]
    for ln in lines[1:]:
        face = tuple(int(tok) for tok in ln.split())
        groups[len(face) - 1].append(face)
    return SimplicialComplex.from_face_lists(n, groups, max_dim)


def graph_to_text(g: Graph) -> str:
    """Edge-list format: `n=<count>` header then `u v` per line."""
    lines = [f"n={g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("missing n= header")
    n = int(lines[0][2:])
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return Graph.from_edges(n, edges)


def point_cloud_to_csv(pc: PointCloud) -> str:
    """One point per row, d columns, 17-significant-digit decimals."""
    rows = [",".join(f"{x:.17g}" for x in p) for p in pc.points]
    return "\n".join(rows) + ("\n" if rows else "")


def point_cloud_from_csv(text: str, dimension: int, density_id: str = "") -> PointCloud:
    rows = [ln for ln in text.splitlines() if ln.strip()]
    pts = np.array([[float(x) for x in ln.split(",")] for ln in rows], dtype=np.float64)
    if pts.size == 0:
        pts = pts.reshape(0, dimension)
    return PointCloud(dimension, pts, density_id)
