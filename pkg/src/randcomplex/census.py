"""Count statistics behind the sandwich bounds, plus exact ER moments.

Conventions recorded here because the counts are only defined up to them:

* An empty (k-1)-simplex is a k-set of points whose (k-1)-subsets all have
  a common ball intersection at radius r while the full k-set does not.
* Y counts (base clique on k-1 vertices, unordered pair {u, v} of base
  vertices, pendant edges u-a and v-b) with a, b outside the base and
  a != b. Z counts (base clique, base vertex u, path u-a-b) with a, b
  outside the base. Both read "simplex on k-1 vertices" as a clique of the
  1-skeleton, matching how the underlying argument counts via the
  geometric graph; both deliberately over-count, which is all the upper
  bound needs.
* Cross-polytope skeletons are detected by the exact characterization
  "complement within the vertex set is a perfect matching".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

import numpy as np

from .complexes import Graph, PointCloud, SimplicialComplex, components
from .generators import RngStream, cliques_of_order, geometric_graph
from .miniball import RADIUS_RTOL, min_enclosing_radius, three_point_radius

# ---------------------------------------------------------------------------
# Canonical forms for small graphs
# ---------------------------------------------------------------------------

MAX_CANONICAL_VERTICES = 9


@dataclass(frozen=True)
class CanonicalGraph:
    """A small graph in canonical form: lexicographically minimal edge set.

    Isomorphic graphs have identical canonical forms; the form is exact
    (all tie-breaking orderings of the color refinement are tried).
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency_sets(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def _refined_colors(n: int, adj: list[set[int]]) -> list[int]:
    """Iterated degree refinement (1-WL); colors are isomorphism-invariant ints."""
    colors = [len(adj[v]) for v in range(n)]
    for _ in range(n):
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def canonical_form(vertex_count: int, edges) -> CanonicalGraph:
    """Canonical form by color refinement plus exhaustive tie-breaking.

    Vertices are grouped by refined color; every ordering that lists the
    color classes in increasing color order is tried, and the minimal
    relabeled edge set wins. Exhaustive over ties, hence exact; intended
    for graphs of at most MAX_CANONICAL_VERTICES vertices.
    """
    if vertex_count > MAX_CANONICAL_VERTICES:
        raise ValueError(f"canonical_form supports at most {MAX_CANONICAL_VERTICES} vertices")
    edge_set = {tuple(sorted(e)) for e in edges}
    adj: list[set[int]] = [set() for _ in range(vertex_count)]
    for u, v in edge_set:
        if u == v or not 0 <= u < vertex_count or not 0 <= v < vertex_count:
            raise ValueError(f"bad edge ({u},{v})")
        adj[u].add(v)
        adj[v].add(u)
    if not edge_set:
        return CanonicalGraph(vertex_count, ())
    colors = _refined_colors(vertex_count, adj)
    cells: dict[int, list[int]] = {}
    for v in range(vertex_count):
        cells.setdefault(colors[v], []).append(v)
    groups = [cells[c] for c in sorted(cells)]
    best: tuple[tuple[int, int], ...] | None = None
    for perm_parts in product(*(permutations(grp) for grp in groups)):
        ordering = [v for part in perm_parts for v in part]
        pos = {v: i for i, v in enumerate(ordering)}
        relabeled = tuple(
            sorted(tuple(sorted((pos[u], pos[v]))) for u, v in edge_set)
        )
        if best is None or relabeled < best:
            best = relabeled
    return CanonicalGraph(vertex_count, best if best is not None else ())


def canonical_from_graph(g: Graph) -> CanonicalGraph:
    return canonical_form(g.vertex_count, g.edges())


def complete_graph_edges(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def cross_polytope_skeleton(k: int) -> CanonicalGraph:
    """1-skeleton of the k-dimensional cross-polytope boundary: K_{2,..,2}."""
    n = 2 * k + 2
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if v != u + (1 if u % 2 == 0 else -1)  # pairs (2i, 2i+1) stay non-adjacent
    ]
    return canonical_form(n, edges)


def tree_patterns_order5() -> tuple[CanonicalGraph, CanonicalGraph, CanonicalGraph]:
    """The three isomorphism types of trees on five vertices."""
    path = canonical_form(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    star = canonical_form(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    spider = canonical_form(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    return path, star, spider


# ---------------------------------------------------------------------------
# Geometric census: empty simplices
# ---------------------------------------------------------------------------


def _intersects(points: np.ndarray, r: float) -> bool:
    return min_enclosing_radius(points) <= r * (1.0 + RADIUS_RTOL)


def forms_empty_simplex(pts: PointCloud, vertices, r: float) -> bool:
    """Do these k points form an empty (k-1)-simplex at radius r?"""
    S = list(vertices)
    k = len(S)
    if k < 2:
        return False
    P = pts.points[S]
    if _intersects(P, r):
        return False
    for omit in range(k):
        sub = np.delete(P, omit, axis=0)
        if k - 1 >= 2 and not _intersects(sub, r):
            return False
    return True


def empty_simplex_count(
    pts: PointCloud, r: float, k: int, g: Graph | None = None
) -> int:
    """Number of empty (k-1)-simplices among the points at radius r.

    For k = 2 these are simply the non-adjacent vertex pairs. For k >= 3
    every candidate must be a clique of the geometric graph (all pairwise
    ball intersections are pair subsets), so enumeration is restricted to
    k-cliques.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if g is None:
        g = geometric_graph(pts, r)
    n = len(pts)
    if k == 2:
        return n * (n - 1) // 2 - g.edge_count
    count = 0
    for S in cliques_of_order(g, k):
        if _is_empty_clique(pts.points, S, r, k):
            count += 1
    return count


def _is_empty_clique(P: np.ndarray, S, r: float, k: int) -> bool:
    """Emptiness test for a k-set already known to be a clique of the 2r-graph."""
    pts = P[list(S)]
    if _intersects(pts, r):
        return False
    if k - 1 >= 3:
        for omit in range(k):
            if not _intersects(np.delete(pts, omit, axis=0), r):
                return False
    return True


def isolated_empty_simplex_count(
    pts: PointCloud, r: float, k: int, g: Graph | None = None
) -> int:
    """Empty (k-1)-simplices whose k vertices have no edges to the rest."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if g is None:
        g = geometric_graph(pts, r)
    nbrs = g.neighbor_sets
    count = 0
    if k == 2:
        # non-adjacent pairs of isolated vertices
        lonely = [v for v in range(g.vertex_count) if not nbrs[v]]
        return len(lonely) * (len(lonely) - 1) // 2
    for S in cliques_of_order(g, k):
        sset = set(S)
        if any(not nbrs[v] <= sset for v in S):
            continue
        if _is_empty_clique(pts.points, S, r, k):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Attachment counts Y and Z
# ---------------------------------------------------------------------------


def y_count(g: Graph, k: int) -> int:
    """Cliques on k-1 vertices with pendant edges at two distinct vertices.

    Counted once per (base clique, unordered base pair {u, v}, pendant
    assignment a to u and b to v) with a, b outside the base and a != b.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    nbrs = g.neighbor_sets
    total = 0
    for base in cliques_of_order(g, k - 1):
        bset = set(base)
        outside = [nbrs[u] - bset for u in base]
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                a, b = outside[i], outside[j]
                total += len(a) * len(b) - len(a & b)
    return total


def z_count(g: Graph, k: int) -> int:
    """Cliques on k-1 vertices with a path of length two attached.

    Counted once per (base clique, base vertex u, path u-a-b) with a and b
    outside the base.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    nbrs = g.neighbor_sets
    total = 0
    for base in cliques_of_order(g, k - 1):
        bset = set(base)
        for u in base:
            for a in nbrs[u] - bset:
                total += len(nbrs[a] - bset)
    return total


# ---------------------------------------------------------------------------
# Cross-polytope skeleton counts
# ---------------------------------------------------------------------------


def _is_cross_skeleton(nbrs, subset) -> bool:
    """Induced subgraph is K_{2,..,2} iff every vertex misses exactly one other."""
    sset = set(subset)
    for u in subset:
        missing = len(sset) - 1 - len(nbrs[u] & sset)
        if missing != 1:
            return False
    return True


def _pair_completions(cand: list[int], pairs_left: int, nbrs) -> int:
    """Ways to split candidates into `pairs_left` ordered-by-minimum pairs.

    Every chosen vertex must be adjacent to all later choices except its
    own partner; `cand` already contains only vertices adjacent to all
    earlier pairs.
    """
    if pairs_left == 0:
        return 1
    total = 0
    for i, w in enumerate(cand):
        rest = cand[i + 1 :]
        if len(rest) < 2 * pairs_left - 1:
            break
        wn = nbrs[w]
        for x in rest:
            if x in wn:
                continue
            xn = nbrs[x]
            nxt = [y for y in rest if y != x and y in wn and y in xn]
            total += _pair_completions(nxt, pairs_left - 1, nbrs)
    return total


def cross_polytope_counts(g: Graph, k: int) -> tuple[int, int]:
    """(o_k, o~_k): induced copies and whole components of the O_k 1-skeleton.

    An induced K_{2,..,2} is determined by its k+1 non-adjacent pairs, so
    copies are enumerated pair by pair in order of the pair minima: the
    smallest vertex u, its unique non-neighbor partner v, then further
    pairs drawn from the common neighborhood. Work stays near-linear on
    sparse graphs because candidates never leave the 2-neighborhood of u.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    size = 2 * k + 2
    mindeg = size - 2
    nbrs = g.neighbor_sets
    o_induced = 0
    for u in range(g.vertex_count):
        un = nbrs[u]
        if len(un) < mindeg:
            continue
        partners = set()
        for w in un:
            partners.update(x for x in nbrs[w] if x > u and x not in un)
        for v in sorted(partners):
            if len(nbrs[v]) < mindeg:
                continue
            cand = sorted(
                y for y in un & nbrs[v] if y > u and len(nbrs[y]) >= mindeg
            )
            o_induced += _pair_completions(cand, k, nbrs)
    comp = components(g)
    groups: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        groups.setdefault(comp.component_id[v], []).append(v)
    o_component = sum(
        1
        for verts in groups.values()
        if len(verts) == size and _is_cross_skeleton(nbrs, verts)
    )
    return o_induced, o_component


def faces_on_large_components(
    c: SimplicialComplex, g: Graph, k: int, i: int
) -> int:
    """Number of k-faces lying on connected components with at least i vertices."""
    if not 0 <= k <= c.max_dim:
        raise ValueError(f"k={k} outside built dimensions 0..{c.max_dim}")
    comp = components(g)
    return sum(1 for face in c.faces[k] if comp.size_of(face[0]) >= i)


# ---------------------------------------------------------------------------
# Subgraph census
# ---------------------------------------------------------------------------


def connected_subsets(g: Graph, size: int):
    """Enumerate every connected vertex subset of the given size exactly once.

    ESU-style: subsets are rooted at their minimum vertex and extended only
    by exclusive neighbors larger than the root.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    nbrs = g.neighbor_sets
    if size == 1:
        for v in range(g.vertex_count):
            yield (v,)
        return

    def extend(sub: tuple[int, ...], ext: list[int], closed: frozenset[int], root: int):
        if len(sub) == size:
            yield tuple(sorted(sub))
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = [u for u in nbrs[w] if u > root and u not in closed]
            new_closed = closed | nbrs[w] | {w}
            yield from extend(sub + (w,), ext + fresh, new_closed, root)

    for root in range(g.vertex_count):
        ext0 = [u for u in nbrs[root] if u > root]
        closed0 = frozenset(nbrs[root]) | {root}
        yield from extend((root,), ext0, closed0, root)


def _is_connected_pattern(p: CanonicalGraph) -> bool:
    if p.vertex_count <= 1:
        return True
    adj = p.adjacency_sets()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == p.vertex_count


def _count_edge_preserving_bijections(pat_adj: list[set[int]], order: list[int], tgt_adj: dict[int, set[int]], subset) -> int:
    """Bijections pattern -> subset mapping pattern edges onto target edges."""
    v = len(pat_adj)
    count = 0
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(i: int):
        nonlocal count
        if i == v:
            count += 1
            return
        pv = order[i]
        earlier = [u for u in pat_adj[pv] if u in assigned]
        if earlier:
            cands = set(tgt_adj[assigned[earlier[0]]])
            for u in earlier[1:]:
                cands &= tgt_adj[assigned[u]]
            cands -= used
        else:
            cands = set(subset) - used
        for t in cands:
            assigned[pv] = t
            used.add(t)
            backtrack(i + 1)
            used.discard(t)
            del assigned[pv]

    backtrack(0)
    return count


def _bfs_order(pat_adj: list[set[int]]) -> list[int]:
    v = len(pat_adj)
    seen: list[int] = []
    seen_set: set[int] = set()
    for start in range(v):
        if start in seen_set:
            continue
        queue = [start]
        seen_set.add(start)
        while queue:
            u = queue.pop(0)
            seen.append(u)
            for w in sorted(pat_adj[u]):
                if w not in seen_set:
                    seen_set.add(w)
                    queue.append(w)
    return seen


def automorphism_count(p: CanonicalGraph) -> int:
    adj = p.adjacency_sets()
    tgt = {v: adj[v] for v in range(p.vertex_count)}
    return _count_edge_preserving_bijections(adj, _bfs_order(adj), tgt, range(p.vertex_count))


def subgraph_counts(
    g: Graph, patterns, induced: bool = True
) -> list[int]:
    """Exact (induced) subgraph counts for each pattern, in input order.

    Candidate vertex sets are enumerated connectedly when the pattern is
    connected, with a degree-sequence pre-filter; otherwise all subsets are
    scanned. Non-induced copies on a vertex set are counted as injective
    edge-preserving maps divided by the pattern's automorphisms.
    """
    for p in patterns:
        if p.vertex_count > MAX_CANONICAL_VERTICES:
            raise ValueError("pattern too large")
    # hand-built patterns may not be in canonical form yet
    patterns = [canonical_form(p.vertex_count, p.edges) for p in patterns]
    counts = [0] * len(patterns)
    nbrs = g.neighbor_sets
    by_size: dict[int, list[int]] = {}
    for idx, p in enumerate(patterns):
        by_size.setdefault(p.vertex_count, []).append(idx)
    for size, idxs in by_size.items():
        conn = [i for i in idxs if _is_connected_pattern(patterns[i])]
        free = [i for i in idxs if i not in set(conn)]
        if conn:
            _census_fixed_size(g, nbrs, patterns, conn, size, induced, counts, connected_only=True)
        if free:
            _census_fixed_size(g, nbrs, patterns, free, size, induced, counts, connected_only=False)
    return counts


def _prepare_pattern(p: CanonicalGraph):
    """BFS vertex order plus, per position, the earlier-neighbor positions."""
    adj = p.adjacency_sets()
    order = _bfs_order(adj)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [
        [pos[u] for u in adj[pv] if pos[u] < i] for i, pv in enumerate(order)
    ]
    degs_desc = tuple(sorted((len(s) for s in adj), reverse=True))
    return earlier, degs_desc


def _count_maps_bitmask(earlier, tadj_masks) -> int:
    """Injective edge-preserving maps pattern -> target, adjacency as bitmasks."""
    v = len(earlier)
    s = len(tadj_masks)
    full = (1 << s) - 1
    assign = [0] * v
    total = 0

    def bt(i: int, used: int) -> None:
        nonlocal total
        if i == v:
            total += 1
            return
        cands = full & ~used
        for j in earlier[i]:
            cands &= tadj_masks[assign[j]]
        while cands:
            bit = cands & -cands
            cands ^= bit
            assign[i] = bit.bit_length() - 1
            bt(i + 1, used | bit)

    bt(0, 0)
    return total


def _census_fixed_size(g, nbrs, patterns, idxs, size, induced, counts, connected_only):
    pat_degs = {
        i: tuple(sorted(len(s) for s in patterns[i].adjacency_sets())) for i in idxs
    }
    canon = {i: patterns[i] for i in idxs}
    prepared = {i: _prepare_pattern(patterns[i]) for i in idxs}
    auts = {i: automorphism_count(patterns[i]) for i in idxs}
    subsets = (
        connected_subsets(g, size)
        if connected_only
        else combinations(range(g.vertex_count), size)
    )
    raw = {i: 0 for i in idxs}
    for subset in subsets:
        sset = set(subset)
        tgt_adj = {v: nbrs[v] & sset for v in subset}
        degs = tuple(sorted(len(tgt_adj[v]) for v in subset))
        if induced:
            matching = [i for i in idxs if pat_degs[i] == degs]
            if not matching:
                continue
            form = canonical_form(size, _relabeled_edges(subset, tgt_adj))
            for i in matching:
                if canon[i].edges == form.edges and canon[i].vertex_count == size:
                    raw[i] += 1
        else:
            degs_desc = degs[::-1]
            masks = None
            for i in idxs:
                earlier, pat_desc = prepared[i]
                # induced degrees must dominate the pattern degree sequence
                if any(td < pd for td, pd in zip(degs_desc, pat_desc)):
                    continue
                if masks is None:
                    index = {v: b for b, v in enumerate(subset)}
                    masks = [
                        sum(1 << index[w] for w in tgt_adj[v]) for v in subset
                    ]
                raw[i] += _count_maps_bitmask(earlier, masks)
    for i in idxs:
        if induced:
            counts[i] = raw[i]
        else:
            if raw[i] % auts[i]:
                raise RuntimeError("map count not divisible by automorphism count")
            counts[i] = raw[i] // auts[i]


def _relabeled_edges(subset, tgt_adj):
    pos = {v: i for i, v in enumerate(subset)}
    return [
        (pos[u], pos[v]) for u in subset for v in tgt_adj[u] if pos[u] < pos[v]
    ]


# ---------------------------------------------------------------------------
# Extension types
# ---------------------------------------------------------------------------


def enumerate_extension_types(k: int) -> set[CanonicalGraph]:
    """Isomorphism classes reachable by the clique-extension procedure.

    Start from a (k+1)-clique and repeatedly attach a new vertex by a
    single edge to any current vertex, until the graph has 2k+3 vertices
    (hence C(k+1,2) + k + 2 edges). States are deduplicated by canonical
    form at every step, since future growth depends only on the class.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if 2 * k + 3 > MAX_CANONICAL_VERTICES:
        raise ValueError(f"k={k} exceeds the supported canonical-form size")
    frontier = {canonical_form(k + 1, complete_graph_edges(k + 1))}
    for _ in range(k + 2):
        new_frontier: set[CanonicalGraph] = set()
        for cg in frontier:
            n = cg.vertex_count
            for attach in range(n):
                new_frontier.add(canonical_form(n + 1, cg.edges + ((attach, n),)))
        frontier = new_frontier
    return frontier


# ---------------------------------------------------------------------------
# Exact Erdos-Renyi face-count moments
# ---------------------------------------------------------------------------


def _log_comb(n: int, m: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)


def er_expected_faces(n: int, k: int, p: float) -> float:
    """E[f_k] for the ER clique complex: C(n, k+1) p^C(k+1, 2)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p outside [0, 1]")
    m = k + 1
    if m > n:
        return 0.0
    exponent = math.comb(m, 2)
    if p == 0.0:
        return float(math.comb(n, m)) if exponent == 0 else 0.0
    try:
        return float(math.comb(n, m)) * p**exponent
    except OverflowError:
        return math.exp(_log_comb(n, m) + exponent * math.log(p))


def er_variance_faces(n: int, k: int, p: float) -> float:
    """Exact Var(f_k), by the pair expansion over intersection sizes r."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p outside [0, 1]")
    m = k + 1
    if m > n or p in (0.0, 1.0):
        return 0.0
    ck = math.comb(m, 2)
    terms = [
        float(math.comb(m, r)) * float(math.comb(n - m, m - r)) * p ** (2 * ck - math.comb(r, 2))
        for r in range(m + 1)
    ]
    mean = er_expected_faces(n, k, p)
    return float(math.comb(n, m)) * math.fsum(terms) - mean * mean


def er_covariance_faces(n: int, k: int, p: float) -> float:
    """Exact Cov(f_k, f_{k+1}), by the same expansion across sizes."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p outside [0, 1]")
    m = k + 1
    if m + 1 > n or p in (0.0, 1.0):
        return 0.0
    exps = math.comb(m, 2) + math.comb(m + 1, 2)
    terms = [
        float(math.comb(m, r))
        * float(math.comb(n - m, m + 1 - r))
        * p ** (exps - math.comb(r, 2))
        for r in range(m + 1)
    ]
    return float(math.comb(n, m)) * math.fsum(terms) - er_expected_faces(
        n, k, p
    ) * er_expected_faces(n, k + 1, p)


# ---------------------------------------------------------------------------
# Monte Carlo estimate of the empty-simplex integral
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MuEstimate:
    value: float
    std_error: float
    samples: int
    hits: int


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def estimate_mu(
    k: int,
    d: int,
    samples: int,
    rng: RngStream,
    *,
    full_intersection_radius: float = 1.0,
    block_size: int = 1 << 15,
) -> MuEstimate:
    """Monte Carlo estimate of the empty-simplex shape integral.

    The integrand is the indicator that (0, y_2, .., y_k) form an empty
    (k-1)-simplex at radius 1; the pairwise constraints involving the
    origin force every y_i into the ball of radius 2, so points are
    sampled uniformly there and the acceptance fraction is scaled by
    (vol B(0,2))^(k-1). Blocks use independent sub-streams and integer hit
    counts, so the result is independent of evaluation order.

    k = 2 is rejected: there the defining indicator is |y| > 2 and the
    integral diverges.

    `full_intersection_radius` widens only the full-set intersection test;
    raising it far enough forces the indicator to vanish identically,
    which is useful as a null check.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rho = full_intersection_radius
    hits = 0
    done = 0
    block = 0
    while done < samples:
        m = min(block_size, samples - done)
        gen = rng.block(block)
        dirs = gen.standard_normal((m, k - 1, d))
        dirs /= np.linalg.norm(dirs, axis=2, keepdims=True)
        radii = 2.0 * gen.random((m, k - 1)) ** (1.0 / d)
        Y = dirs * radii[:, :, None]
        if k == 3:
            hits += _hits_k3(Y, rho)
        else:
            hits += _hits_general(Y, k, rho)
        done += m
        block += 1
    vol = (unit_ball_volume(d) * 2.0**d) ** (k - 1)
    p_hat = hits / samples
    value = vol * p_hat
    se = vol * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / samples)
    return MuEstimate(value, se, samples, hits)


def _hits_k3(Y: np.ndarray, rho: float) -> int:
    y2, y3 = Y[:, 0, :], Y[:, 1, :]
    pair_ok = np.linalg.norm(y2 - y3, axis=1) <= 2.0
    radius = three_point_radius(np.zeros_like(y2), y2, y3)
    empty = radius > rho * (1.0 + RADIUS_RTOL)
    return int(np.count_nonzero(pair_ok & empty))


def _hits_general(Y: np.ndarray, k: int, rho: float) -> int:
    hits = 0
    origin = np.zeros((1, Y.shape[2]))
    for row in Y:
        pts = np.concatenate([origin, row], axis=0)
        diffs = pts[:, None, :] - pts[None, :, :]
        if np.any(np.einsum("ijk,ijk->ij", diffs, diffs) > 4.0):
            continue
        if min_enclosing_radius(pts) <= rho * (1.0 + RADIUS_RTOL):
            continue
        ok = True
        for omit in range(k):
            sub = np.delete(pts, omit, axis=0)
            if min_enclosing_radius(sub) > 1.0 + RADIUS_RTOL:
                ok = False
                break
        if ok:
            hits += 1
    return hits


# ---------------------------------------------------------------------------
# Census report
# ---------------------------------------------------------------------------


@dataclass
class CensusReport:
    """Every counter from the sandwich bounds for one complex instance.

    Maps are empty when a counter family was not requested for the model
    at hand. Keys follow the stable flat naming used in serialized output.
    """

    f: tuple[int, ...]
    betti: tuple[int, ...]
    euler: int | None = None
    s_empty: dict[int, int] = field(default_factory=dict)
    s_isolated: dict[int, int] = field(default_factory=dict)
    y_count: dict[int, int] = field(default_factory=dict)
    z_count: dict[int, int] = field(default_factory=dict)
    o_induced: dict[int, int] = field(default_factory=dict)
    o_component: dict[int, int] = field(default_factory=dict)
    f_ge: dict[tuple[int, int], int] = field(default_factory=dict)

    def validate(self) -> None:
        for k, s in self.s_isolated.items():
            if k in self.s_empty and s > self.s_empty[k]:
                raise ValueError(f"S_iso_{k}={s} exceeds S_{k}={self.s_empty[k]}")
        for k, oc in self.o_component.items():
            if k in self.o_induced and oc > self.o_induced[k]:
                raise ValueError(f"o_comp_{k}={oc} exceeds o_{k}={self.o_induced[k]}")
        by_k: dict[int, list[tuple[int, int]]] = {}
        for (k, i), v in self.f_ge.items():
            by_k.setdefault(k, []).append((i, v))
            if i == 1 and k < len(self.f) and v != self.f[k]:
                raise ValueError(f"f_{k}_ge_1={v} != f_{k}={self.f[k]}")
        for k, pairs in by_k.items():
            pairs.sort()
            for (_, a), (_, b) in zip(pairs, pairs[1:]):
                if b > a:
                    raise ValueError(f"f_{k}_ge_i increasing in i")

    def to_json_dict(self) -> dict:
        out: dict[str, int | None] = {}
        for i, v in enumerate(self.f):
            out[f"f_{i}"] = v
        for i, v in enumerate(self.betti):
            out[f"betti_{i}"] = v
        out["euler"] = self.euler
        for k in sorted(self.s_empty):
            out[f"S_{k}"] = self.s_empty[k]
        for k in sorted(self.s_isolated):
            out[f"S_iso_{k}"] = self.s_isolated[k]
        for k in sorted(self.y_count):
            out[f"Y_{k}"] = self.y_count[k]
        for k in sorted(self.z_count):
            out[f"Z_{k}"] = self.z_count[k]
        for k in sorted(self.o_induced):
            out[f"o_{k}"] = self.o_induced[k]
        for k in sorted(self.o_component):
            out[f"o_comp_{k}"] = self.o_component[k]
        for k, i in sorted(self.f_ge):
            out[f"f_{k}_ge_{i}"] = self.f_ge[(k, i)]
        return out
