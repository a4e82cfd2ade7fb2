"""Simplicial homology ranks over GF(q), plus an exact rational oracle.

Betti numbers come from rank-nullity: beta_k = f_k - rank d_k - rank d_{k+1}.
The working field is a large prime; rank over GF(q) equals the rational rank
unless q divides a torsion coefficient, which a second-prime pass detects.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import SimplicialComplex, components, f_vector, skeleton_graph

DEFAULT_PRIME = 2147483629  # large prime below 2^31; products fit in int64
_DENSE_CELL_LIMIT = 20_000  # switch to sparse column reduction above this area


@dataclass(frozen=True)
class BoundaryMatrix:
    """The boundary operator d_k as signed incidence triples.

    Rows index (k-1)-faces, columns index k-faces, both in lexicographic
    order; column j has entry (-1)^i in the row of the face obtained by
    deleting the i-th vertex. Signs are stored as +-1 and reduced mod q
    only when a rank is taken.
    """

    degree: int
    row_count: int
    col_count: int
    entries: tuple[tuple[int, int, int], ...]  # (row, col, sign)

    def dense(self, q: int | None = None) -> np.ndarray:
        mat = np.zeros((self.row_count, self.col_count), dtype=np.int64)
        for i, j, s in self.entries:
            mat[i, j] = s % q if q is not None else s
        return mat


def boundary_matrix(c: SimplicialComplex, k: int) -> BoundaryMatrix:
    """Standard simplicial boundary with alternating signs, 1 <= k <= max_dim."""
    if not 1 <= k <= c.max_dim:
        raise ValueError(f"k={k} out of range 1..{c.max_dim}")
    row_index = {face: i for i, face in enumerate(c.faces[k - 1])}
    entries = []
    for j, face in enumerate(c.faces[k]):
        for i in range(k + 1):
            sub = face[:i] + face[i + 1 :]
            entries.append((row_index[sub], j, -1 if i % 2 else 1))
    return BoundaryMatrix(k, len(c.faces[k - 1]), len(c.faces[k]), tuple(entries))


def _rank_dense_gf(mat: np.ndarray, q: int) -> int:
    """Row-echelon rank of an int64 matrix over GF(q)."""
    mat = np.mod(mat, q)
    if mat.shape[0] > mat.shape[1]:
        mat = mat.T.copy()
    rows, cols = mat.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(mat[rank:, c])[0]
        if pivots.size == 0:
            continue
        p = pivots[0] + rank
        if p != rank:
            mat[[rank, p]] = mat[[p, rank]]
        inv = pow(int(mat[rank, c]), -1, q)
        mat[rank] = (mat[rank] * inv) % q
        below = np.nonzero(mat[rank + 1 :, c])[0]
        if below.size:
            rows_below = below + rank + 1
            mat[rows_below] = (
                mat[rows_below] - np.outer(mat[rows_below, c], mat[rank])
            ) % q
        rank += 1
    return rank


def _rank_sparse_gf(bm: BoundaryMatrix, q: int) -> int:
    """Left-to-right column reduction (persistence-style) over GF(q).

    Each column is reduced against the pivot column sharing its lowest
    nonzero row until it gains a fresh pivot or vanishes; the number of
    surviving columns is the rank. Boundary columns have k+1 entries, so
    fill-in stays small in practice.
    """
    cols: list[dict[int, int]] = [dict() for _ in range(bm.col_count)]
    for i, j, s in bm.entries:
        cols[j][i] = s % q
    pivot_of_low: dict[int, dict[int, int]] = {}
    rank = 0
    for col in cols:
        while col:
            low = max(col)
            piv = pivot_of_low.get(low)
            if piv is None:
                pivot_of_low[low] = col
                rank += 1
                break
            factor = (col[low] * pow(piv[low], -1, q)) % q
            for row, val in piv.items():
                nv = (col.get(row, 0) - factor * val) % q
                if nv:
                    col[row] = nv
                else:
                    col.pop(row, None)
    return rank


def rank_gf(bm: BoundaryMatrix, q: int = DEFAULT_PRIME) -> int:
    """Rank of the boundary matrix over GF(q)."""
    if bm.row_count == 0 or bm.col_count == 0:
        return 0
    if bm.row_count * bm.col_count <= _DENSE_CELL_LIMIT:
        return _rank_dense_gf(bm.dense(q), q)
    return _rank_sparse_gf(bm, q)


def _rank_exact(bm: BoundaryMatrix) -> int:
    """Rational rank by fraction-free (Bareiss) elimination on exact integers."""
    if bm.row_count == 0 or bm.col_count == 0:
        return 0
    mat = [[0] * bm.col_count for _ in range(bm.row_count)]
    for i, j, s in bm.entries:
        mat[i][j] = s
    rows, cols = bm.row_count, bm.col_count
    if rows > cols:
        mat = [list(col) for col in zip(*mat)]
        rows, cols = cols, rows
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        p = next((r for r in range(rank, rows) if mat[r][c]), None)
        if p is None:
            continue
        if p != rank:
            mat[rank], mat[p] = mat[p], mat[rank]
        piv_row = mat[rank]
        piv = piv_row[c]
        # Bareiss update: entries stay minors of the input, division is exact
        for r in range(rank + 1, rows):
            row = mat[r]
            head = row[c]
            for x in range(c, cols):
                row[x] = (piv * row[x] - head * piv_row[x]) // prev
        prev = piv
        rank += 1
    return rank


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers beta_0..beta_{up_to} with the boundary ranks used.

    field_prime is None when the ranks were computed exactly over Q.
    ranks[k] is rank d_k (rank d_0 == 0 by convention).
    """

    field_prime: int | None
    betti: tuple[int, ...]
    ranks: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"q": self.field_prime, "betti": list(self.betti), "ranks": list(self.ranks)}


def _betti_from_ranks(c: SimplicialComplex, up_to: int, rank_of) -> tuple[tuple[int, ...], tuple[int, ...]]:
    f = f_vector(c)
    ranks = [0]
    for k in range(1, up_to + 2):
        ranks.append(rank_of(boundary_matrix(c, k)))
    betti = tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(up_to + 1))
    if any(b < 0 for b in betti):
        raise RuntimeError(f"negative Betti number from ranks {ranks}")
    return betti, tuple(ranks)


def betti_numbers(
    c: SimplicialComplex, up_to: int | None = None, q: int = DEFAULT_PRIME
) -> BettiVector:
    """Betti numbers beta_0..beta_{up_to} over GF(q) by boundary ranks.

    beta_k needs faces of dimension k+1 (the relations), so up_to must be
    at most max_dim - 1; a silently truncated complex would inflate the top
    Betti number. beta_0 is cross-checked against the component count of
    the 1-skeleton.
    """
    if up_to is None:
        up_to = c.max_dim - 1
    if up_to < 0 or up_to > c.max_dim - 1:
        raise ValueError(
            f"up_to={up_to} requires faces of dimension {up_to + 1}; complex has max_dim={c.max_dim}"
        )
    betti, ranks = _betti_from_ranks(c, up_to, lambda bm: rank_gf(bm, q))
    comp_count = components(skeleton_graph(c)).count
    if betti[0] != comp_count:
        raise RuntimeError(
            f"beta_0={betti[0]} disagrees with component count {comp_count}"
        )
    return BettiVector(q, betti, ranks)


def betti_numbers_exact(c: SimplicialComplex, up_to: int | None = None) -> BettiVector:
    """Brute-force oracle: Betti numbers over Q by fraction-free elimination."""
    if up_to is None:
        up_to = c.max_dim - 1
    if up_to < 0 or up_to > c.max_dim - 1:
        raise ValueError(f"up_to={up_to} out of range for max_dim={c.max_dim}")
    betti, ranks = _betti_from_ranks(c, up_to, _rank_exact)
    return BettiVector(None, betti, ranks)


def check_field_independence(
    c: SimplicialComplex,
    up_to: int | None = None,
    q1: int = DEFAULT_PRIME,
    q2: int = 2147483587,
) -> tuple[BettiVector, BettiVector, bool]:
    """Compute Betti numbers at two primes; disagreement flags torsion at a prime."""
    b1 = betti_numbers(c, up_to, q1)
    b2 = betti_numbers(c, up_to, q2)
    return b1, b2, b1.betti == b2.betti


def euler_characteristic(c: SimplicialComplex) -> int:
    """Alternating sum of face counts.

    Only meaningful when the complex is built to its full dimension (no
    face exists above max_dim); callers guarantee this by choosing
    max_dim >= clique number - 1.
    """
    return sum((-1) ** i * n_i for i, n_i in enumerate(f_vector(c)))
