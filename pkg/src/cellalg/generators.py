"""Constructors for concrete schemes and the shared test corpus.

Schurian schemes come from permutation generators: relations are the orbits
of the generated group acting on ordered pairs, found by flooding pairs with
the generators (the group itself is never enumerated).  Thin schemes come
from a group's multiplication table.  rank2 / discrete / hamming / johnson
are classical families, and direct_sum glues two schemes with full cross
relations between cells.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

from .scheme import Scheme, SchemeError, from_color_matrix


def validate_permutation(perm, n: int) -> np.ndarray:
    img = np.asarray(perm, dtype=np.int64)
    if img.shape != (n,) or sorted(img.tolist()) != list(range(n)):
        raise SchemeError(f"not a permutation of 0..{n - 1}: {list(perm)}")
    return img


def schurian(generators, n: int) -> Scheme:
    """Orbits of the generated permutation group on ordered pairs.

    With no generators this is the discrete scheme; with a transitive,
    2-transitive group it is rank2(n).
    """
    if n < 1:
        raise SchemeError("need at least one point")
    gens = [validate_permutation(g, n) for g in generators]
    colors = np.full((n, n), -1, dtype=np.int64)
    nxt = 0
    for start in range(n * n):
        if colors.flat[start] >= 0:
            continue
        stack = [divmod(start, n)]
        colors[stack[0]] = nxt
        while stack:
            u, v = stack.pop()
            for g in gens:
                img = (int(g[u]), int(g[v]))
                if colors[img] < 0:
                    colors[img] = nxt
                    stack.append(img)
        nxt += 1
    return from_color_matrix(colors)


def check_group_table(table) -> np.ndarray:
    """Validate a multiplication table: closure, identity, inverses,
    associativity (checked directly; these tables are tiny)."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise SchemeError("group table must be square")
    n = t.shape[0]
    if n == 0 or t.min() < 0 or t.max() >= n:
        raise SchemeError("group table entries must index elements")
    ident = None
    for e in range(n):
        if all(t[e, x] == x and t[x, e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise SchemeError("group table has no identity")
    for x in range(n):
        if not any(t[x, y] == ident and t[y, x] == ident for y in range(n)):
            raise SchemeError(f"element {x} has no inverse")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    raise SchemeError(
                        f"table is not associative at ({a},{b},{c})"
                    )
    return t


def thin_group_scheme(table) -> Scheme:
    """Thin scheme of a finite group: R_g = {(x, xg)}; every relation is a
    permutation matrix and the algebra is the group algebra."""
    t = check_group_table(table)
    n = t.shape[0]
    ident = next(e for e in range(n) if all(t[e, x] == x for x in range(n)))
    inv = [next(y for y in range(n) if t[x, y] == ident) for x in range(n)]
    # color of (x, y) is the unique g with xg = y
    colors = t[inv, :]
    return from_color_matrix(colors)


def rank2(n: int) -> Scheme:
    """Diagonal plus everything else (the trivial scheme on n points)."""
    if n < 1:
        raise SchemeError("need at least one point")
    if n == 1:
        return from_color_matrix([[0]])
    return from_color_matrix(np.where(np.eye(n, dtype=bool), 0, 1))


def discrete(n: int) -> Scheme:
    """Every pair its own relation (the full matrix algebra)."""
    if n < 1:
        raise SchemeError("need at least one point")
    m = np.arange(n * n, dtype=np.int64).reshape(n, n)
    return from_color_matrix(m)


def hamming(d: int, q: int) -> Scheme:
    """Hamming scheme H(d, q): words of length d over q symbols, colored by
    Hamming distance."""
    if d < 1 or q < 2:
        raise SchemeError("need d >= 1 and q >= 2")
    if q**d > 4096:
        raise SchemeError("hamming scheme too large")
    words = np.array(list(product(range(q), repeat=d)), dtype=np.int64)
    colors = (words[:, None, :] != words[None, :, :]).sum(axis=2)
    return from_color_matrix(colors)


def johnson(v: int, k: int) -> Scheme:
    """Johnson scheme J(v, k): k-subsets of a v-set, colored by k minus the
    intersection size."""
    if not 1 <= k < v:
        raise SchemeError("need 1 <= k < v")
    subsets = list(combinations(range(v), k))
    if len(subsets) > 4096:
        raise SchemeError("johnson scheme too large")
    n = len(subsets)
    colors = np.zeros((n, n), dtype=np.int64)
    sets = [frozenset(s) for s in subsets]
    for i in range(n):
        for j in range(n):
            colors[i, j] = k - len(sets[i] & sets[j])
    return from_color_matrix(colors)


def direct_sum(a: Scheme, b: Scheme) -> Scheme:
    """Disjoint union with one cross relation per ordered pair of cells.

    The coarsest valid gluing: finer cross colorings are never needed, and a
    single color per whole cross block would break regularity as soon as a
    summand has more than one cell.
    """
    na, nb = a.size, b.size
    colors = np.zeros((na + nb, na + nb), dtype=np.int64)
    colors[:na, :na] = a.colors
    colors[na:, na:] = b.colors + a.rank
    nxt = a.rank + b.rank
    cell_a = a.point_cell
    cell_b = b.point_cell
    for x in range(len(a.cells)):
        for y in range(len(b.cells)):
            block = np.ix_(np.nonzero(cell_a == x)[0], na + np.nonzero(cell_b == y)[0])
            colors[block] = nxt
            nxt += 1
    for y in range(len(b.cells)):
        for x in range(len(a.cells)):
            block = np.ix_(na + np.nonzero(cell_b == y)[0], np.nonzero(cell_a == x)[0])
            colors[block] = nxt
            nxt += 1
    return from_color_matrix(colors)


# ---------------------------------------------------------------------------
# group multiplication tables

def cyclic_table(n: int) -> np.ndarray:
    if n < 1:
        raise SchemeError("need a positive order")
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def symmetric_table(m: int) -> np.ndarray:
    """S_m with elements sorted lexicographically; composition acts left."""
    elems = sorted(permutations(range(m)))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    t = np.zeros((n, n), dtype=np.int64)
    for i, pi in enumerate(elems):
        for j, sigma in enumerate(elems):
            t[i, j] = index[tuple(pi[s] for s in sigma)]
    return t


def dihedral_table(m: int) -> np.ndarray:
    """Dihedral group of order 2m: element k + m*s is rotation k, flip s."""
    if m < 1:
        raise SchemeError("need a positive order")
    n = 2 * m

    def mul(x, y):
        k1, s1 = x % m, x // m
        k2, s2 = y % m, y // m
        k = (k1 - k2) % m if s1 else (k1 + k2) % m
        return k + m * (s1 ^ s2)

    return np.array([[mul(x, y) for y in range(n)] for x in range(n)], dtype=np.int64)


def quaternion_table() -> np.ndarray:
    """The quaternion group {±1, ±i, ±j, ±k} as (sign, axis) pairs."""
    axes = "1ijk"
    mul_axis = {
        ("1", a): (1, a) for a in axes
    }
    mul_axis.update({(a, "1"): (1, a) for a in axes})
    for a, b, c in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
        mul_axis[(a, b)] = (1, c)
        mul_axis[(b, a)] = (-1, c)
        mul_axis[(a, a)] = (-1, "1")
    mul_axis[("k", "k")] = (-1, "1")
    elems = [(s, a) for a in axes for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    n = 8
    t = np.zeros((n, n), dtype=np.int64)
    for i, (s1, a1) in enumerate(elems):
        for j, (s2, a2) in enumerate(elems):
            s, a = mul_axis[(a1, a2)]
            t[i, j] = index[(s * s1 * s2, a)]
    return t


def product_table(a, b) -> np.ndarray:
    ta = np.asarray(a, dtype=np.int64)
    tb = np.asarray(b, dtype=np.int64)
    na, nb = ta.shape[0], tb.shape[0]
    t = np.zeros((na * nb, na * nb), dtype=np.int64)
    for x1 in range(na):
        for y1 in range(nb):
            for x2 in range(na):
                for y2 in range(nb):
                    t[x1 * nb + y1, x2 * nb + y2] = ta[x1, x2] * nb + tb[y1, y2]
    return t


# ---------------------------------------------------------------------------
# corpus

def _corpus_builders() -> dict:
    builders: dict = {}
    for n in range(2, 25):
        builders[f"rank2-{n:02d}"] = (lambda n=n: rank2(n))
    for n in range(1, 6):
        builders[f"discrete-{n}"] = (lambda n=n: discrete(n))
    for n in range(2, 13):
        builders[f"thin-z{n:02d}"] = (lambda n=n: thin_group_scheme(cyclic_table(n)))
    builders["thin-s3"] = lambda: thin_group_scheme(symmetric_table(3))
    builders["thin-d4"] = lambda: thin_group_scheme(dihedral_table(4))
    builders["thin-q8"] = lambda: thin_group_scheme(quaternion_table())
    builders["thin-z2x2"] = lambda: thin_group_scheme(
        product_table(cyclic_table(2), cyclic_table(2))
    )
    builders["thin-z2x4"] = lambda: thin_group_scheme(
        product_table(cyclic_table(2), cyclic_table(4))
    )
    builders["thin-z2x2x2"] = lambda: thin_group_scheme(
        product_table(cyclic_table(2), product_table(cyclic_table(2), cyclic_table(2)))
    )
    builders["hamming-2-2"] = lambda: hamming(2, 2)
    builders["hamming-3-2"] = lambda: hamming(3, 2)
    builders["hamming-2-3"] = lambda: hamming(2, 3)
    builders["johnson-4-2"] = lambda: johnson(4, 2)
    builders["johnson-5-2"] = lambda: johnson(5, 2)
    builders["schurian-swap-3"] = lambda: schurian([[1, 0, 2]], 3)
    builders["schurian-swap2-4"] = lambda: schurian([[1, 0, 2, 3], [0, 1, 3, 2]], 4)
    builders["schurian-cyc-5"] = lambda: schurian([[1, 2, 3, 4, 0]], 5)
    builders["schurian-dihedral-4"] = lambda: schurian([[1, 2, 3, 0], [0, 3, 2, 1]], 4)
    builders["dsum-r2-d1"] = lambda: direct_sum(rank2(2), discrete(1))
    builders["dsum-r2-r2"] = lambda: direct_sum(rank2(2), rank2(2))
    builders["dsum-r2-r3"] = lambda: direct_sum(rank2(2), rank2(3))
    builders["dsum-r3-r3"] = lambda: direct_sum(rank2(3), rank2(3))
    builders["dsum-r3-h22"] = lambda: direct_sum(rank2(3), hamming(2, 2))
    builders["dsum-d2-r4"] = lambda: direct_sum(discrete(2), rank2(4))
    builders["dsum-z3-r2"] = lambda: direct_sum(
        thin_group_scheme(cyclic_table(3)), rank2(2)
    )
    builders["dsum-r2-r2-r3"] = lambda: direct_sum(
        rank2(2), direct_sum(rank2(2), rank2(3))
    )
    return builders


def corpus_ids() -> list[str]:
    return sorted(_corpus_builders())


def build_scheme(scheme_id: str) -> Scheme:
    """Fresh instance of a corpus scheme by id."""
    builders = _corpus_builders()
    if scheme_id not in builders:
        raise KeyError(f"unknown corpus scheme {scheme_id!r}")
    return builders[scheme_id]()


@lru_cache(maxsize=1)
def corpus() -> tuple[tuple[str, Scheme], ...]:
    """The shared corpus, cached: tests and the CLI iterate the same list."""
    return tuple((sid, build_scheme(sid)) for sid in corpus_ids())
