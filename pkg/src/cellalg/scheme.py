"""Coherent configurations as colorings of V x V.

A configuration is stored as an n x n matrix of relation indices (colors).
Construction checks that the colors partition the pairs, that the diagonal
is a union of colors, and that colors are closed under transposition.
The regularity axiom (constant intersection numbers) is certified separately
by verify_regularity, which produces the intersection tensor.

Relations are canonically numbered: diagonal relations first, ordered by the
smallest point of their cell, then off-diagonal relations in row-major order
of first occurrence.  This makes serialized schemes and all downstream bases
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class SchemeError(ValueError):
    """Axiom violation; carries a human-readable witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class IntersectionTensor:
    """Structure constants c[i][j][k]: A_i A_j = sum_k c[i][j][k] A_k."""

    c: np.ndarray

    @property
    def rank(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True)
class RelationStats:
    """Per-relation size, out/in degree, and fiber (source cell, target cell)."""

    sizes: tuple[int, ...]
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    source_cells: tuple[int, ...]
    target_cells: tuple[int, ...]


@dataclass(frozen=True)
class SchemeFlags:
    homogeneous: bool
    commutative: bool
    symmetric: bool


class Scheme:
    """A validated (axioms C1-C3) configuration; immutable after construction.

    Use from_color_matrix to build one.  Accessing .tensor certifies the
    regularity axiom and raises SchemeError if it fails.
    """

    def __init__(self, colors: np.ndarray):
        colors = np.asarray(colors, dtype=np.int64)
        self.size = int(colors.shape[0])
        self.rank = int(colors.max()) + 1
        self.colors = colors
        diag = colors.diagonal()
        diag_set = sorted(set(diag.tolist()))
        self.diagonal_colors = tuple(diag_set)
        self.cells = tuple(
            tuple(np.nonzero(diag == c)[0].tolist()) for c in diag_set
        )
        point_cell = np.zeros(self.size, dtype=np.int64)
        for idx, cell in enumerate(self.cells):
            point_cell[list(cell)] = idx
        self.point_cell = point_cell
        fibers = []
        for rel in range(self.rank):
            rows, cols = np.nonzero(colors == rel)
            src = set(point_cell[rows].tolist())
            tgt = set(point_cell[cols].tolist())
            fibers.append((src.pop(), tgt.pop()) if len(src) == 1 and len(tgt) == 1 else None)
        self.fiber_of = tuple(fibers)
        colors.flags.writeable = False
        point_cell.flags.writeable = False

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Stacked 0/1 adjacency matrices, shape (rank, n, n)."""
        a = np.stack([(self.colors == rel) for rel in range(self.rank)]).astype(np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def relation_sizes(self) -> tuple[int, ...]:
        return tuple(np.bincount(self.colors.ravel(), minlength=self.rank).tolist())

    @cached_property
    def transpose_of(self) -> tuple[int, ...]:
        return transpose_map(self)

    @cached_property
    def tensor(self) -> IntersectionTensor:
        return verify_regularity(self)

    @cached_property
    def stats(self) -> RelationStats:
        return relation_stats(self)

    @cached_property
    def flags(self) -> SchemeFlags:
        return classify(self)

    def identity_element(self) -> np.ndarray:
        """Coefficients of the identity matrix: 1 on each diagonal relation."""
        e = np.zeros(self.rank, dtype=np.int64)
        e[list(self.diagonal_colors)] = 1
        return e

    def __eq__(self, other) -> bool:
        return isinstance(other, Scheme) and np.array_equal(self.colors, other.colors)

    def __hash__(self) -> int:
        return hash((self.size, self.rank, self.colors.tobytes()))

    def __repr__(self) -> str:
        return f"Scheme(n={self.size}, rank={self.rank}, cells={len(self.cells)})"


def _canonical_relabel(colors: np.ndarray) -> np.ndarray:
    """Renumber colors: diagonal ones first (by smallest cell point), then
    off-diagonal ones by first row-major occurrence."""
    n = colors.shape[0]
    nrel = int(colors.max()) + 1
    diag = colors.diagonal()
    relabel = np.full(nrel, -1, dtype=np.int64)
    nxt = 0
    seen_diag = set()
    for u in range(n):
        c = int(diag[u])
        if c not in seen_diag:
            seen_diag.add(c)
            relabel[c] = nxt
            nxt += 1
    flat = colors.ravel()
    for c in flat.tolist():
        if relabel[c] < 0:
            relabel[c] = nxt
            nxt += 1
    return relabel[colors]


def from_color_matrix(matrix) -> Scheme:
    """Build a Scheme from an n x n matrix of 0-based colors.

    Checks: matrix shape, color contiguity (every value in 0..max occurs),
    diagonal closure (no color both on and off the diagonal), and transpose
    closure (the transpose of each color class is a single color class).
    Does not certify regularity; see verify_regularity.
    """
    colors = np.asarray(matrix, dtype=np.int64)
    if colors.ndim != 2 or colors.shape[0] != colors.shape[1]:
        raise SchemeError("color matrix must be square")
    n = colors.shape[0]
    if n == 0:
        raise SchemeError("empty point set")
    if colors.min() < 0:
        raise SchemeError("colors must be non-negative (use --one-based for 1-based files)")
    nrel = int(colors.max()) + 1
    present = np.bincount(colors.ravel(), minlength=nrel)
    missing = np.nonzero(present == 0)[0]
    if missing.size:
        raise SchemeError(
            f"color {int(missing[0])} missing: colors must be contiguous 0..{nrel - 1}",
            witness=int(missing[0]),
        )

    diag_colors = set(colors.diagonal().tolist())
    off = colors[~np.eye(n, dtype=bool)] if n > 1 else np.empty(0, dtype=np.int64)
    off_colors = set(off.tolist())
    both = diag_colors & off_colors
    if both:
        c = min(both)
        u = int(np.nonzero(colors.diagonal() == c)[0][0])
        rows, cols = np.nonzero((colors == c) & ~np.eye(n, dtype=bool))
        raise SchemeError(
            f"relation {c} contains diagonal pair ({u},{u}) "
            f"and off-diagonal pair ({int(rows[0])},{int(cols[0])})",
            witness=(c, (u, u), (int(rows[0]), int(cols[0]))),
        )

    # transpose closure
    transposed = colors.T
    for c in range(nrel):
        imgs = set(transposed[colors == c].tolist())
        if len(imgs) != 1:
            raise SchemeError(
                f"transpose of relation {c} meets relations {sorted(imgs)}",
                witness=(c, sorted(imgs)),
            )

    return Scheme(_canonical_relabel(colors))


def transpose_map(scheme: Scheme) -> tuple[int, ...]:
    """rel -> relation of the transposed pairs (an involution)."""
    out = []
    for c in range(scheme.rank):
        rows, cols = np.nonzero(scheme.colors == c)
        out.append(int(scheme.colors[cols[0], rows[0]]))
    return tuple(out)


def verify_regularity(scheme: Scheme) -> IntersectionTensor:
    """Certify the regularity axiom and return the intersection tensor.

    For each pair of relations (i, j), the number of midpoints v with
    (u,v) in R_i and (v,w) in R_j must depend only on the relation of (u,w).
    Raises SchemeError with a witness triple and two differing pairs
    otherwise.
    """
    r = scheme.rank
    n = scheme.size
    adj = scheme.adjacency
    flat_colors = scheme.colors.ravel()
    class_index = [np.nonzero(flat_colors == k)[0] for k in range(r)]
    c = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        left = adj[i]
        for j in range(r):
            counts = (left @ adj[j]).ravel()
            for k in range(r):
                vals = counts[class_index[k]]
                v0 = int(vals[0])
                if not np.all(vals == v0):
                    hit = int(np.nonzero(vals != v0)[0][0])
                    p0 = divmod(int(class_index[k][0]), n)
                    p1 = divmod(int(class_index[k][hit]), n)
                    raise SchemeError(
                        f"intersection count for ({i},{j}) is not constant on "
                        f"relation {k}: pair {p0} gives {v0}, pair {p1} gives "
                        f"{int(vals[hit])}",
                        witness=(i, j, k, p0, v0, p1, int(vals[hit])),
                    )
                c[i, j, k] = v0
    c.flags.writeable = False
    return IntersectionTensor(c)


def relation_stats(scheme: Scheme) -> RelationStats:
    """Sizes, degrees and fibers.  Requires a certified scheme; the counting
    identities it asserts cannot fail after verify_regularity."""
    scheme.tensor  # certify
    sizes = scheme.relation_sizes
    out_d = []
    in_d = []
    src = []
    tgt = []
    for rel in range(scheme.rank):
        fiber = scheme.fiber_of[rel]
        assert fiber is not None
        x, y = fiber
        mat = scheme.adjacency[rel]
        row_counts = mat[list(scheme.cells[x])].sum(axis=1)
        col_counts = mat[:, list(scheme.cells[y])].sum(axis=0)
        assert np.all(row_counts == row_counts[0])
        assert np.all(col_counts == col_counts[0])
        out_d.append(int(row_counts[0]))
        in_d.append(int(col_counts[0]))
        src.append(x)
        tgt.append(y)
        # |X| d_out = |R| = |Y| d_in
        assert len(scheme.cells[x]) * out_d[-1] == sizes[rel]
        assert len(scheme.cells[y]) * in_d[-1] == sizes[rel]
    # degree sums per fiber: sum of out-degrees over X x Y equals |Y|
    for x in range(len(scheme.cells)):
        for y in range(len(scheme.cells)):
            rels = [m for m in range(scheme.rank) if scheme.fiber_of[m] == (x, y)]
            if rels:
                assert sum(out_d[m] for m in rels) == len(scheme.cells[y])
                assert sum(in_d[m] for m in rels) == len(scheme.cells[x])
    return RelationStats(
        sizes=sizes,
        out_degrees=tuple(out_d),
        in_degrees=tuple(in_d),
        source_cells=tuple(src),
        target_cells=tuple(tgt),
    )


def classify(scheme: Scheme) -> SchemeFlags:
    """Homogeneity, commutativity and symmetry flags (tensor-certified)."""
    tensor = scheme.tensor
    homogeneous = len(scheme.cells) == 1
    commutative = bool(np.array_equal(tensor.c, tensor.c.transpose(1, 0, 2)))
    symmetric = all(t == i for i, t in enumerate(transpose_map(scheme)))
    assert not symmetric or commutative
    assert not commutative or homogeneous
    return SchemeFlags(homogeneous=homogeneous, commutative=commutative, symmetric=symmetric)
