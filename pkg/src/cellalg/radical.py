"""Jacobson radical of the adjacency algebra over a prime field.

Two independent routes:

* radical_chain: a descending chain of subspaces cut out by characteristic
  polynomial coefficients of products.  Step i keeps x with the coefficient
  of t^(n - p^i) of charpoly(x y) vanishing for all y in the current basis;
  step 0 is the trace-form kernel.  Over the prime field each step is a
  linear system because the Frobenius fixes F_p, and after floor(log_p n)+1
  steps the chain stabilizes at the radical.

* radical_oracle: enumerate every algebra element (budget permitting) and
  keep those whose two-sided ideal is nilpotent.  Exponential and only for
  cross-checking the chain on small instances.

Bases are reduced to row echelon form in relation coordinates, so the two
routes are comparable array-for-array.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import (
    charpoly_mod_p,
    in_row_space_mod_p,
    is_prime,
    kernel_mod_p,
    multiply_mod,
    rref_mod_p,
)
from .scheme import Scheme


class BudgetExceeded(ValueError):
    """Oracle enumeration would be larger than the allowed budget."""


@dataclass(frozen=True)
class RadicalResult:
    dim: int
    basis: np.ndarray  # (dim, rank) echelonized coefficient vectors
    method: str


class ModularAlgebra:
    """Adjacency algebra over F_p: basis matrices and structure constants."""

    def __init__(self, scheme: Scheme, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.scheme = scheme
        self.p = p
        self.n = scheme.size
        self.rank = scheme.rank
        self.c = scheme.tensor.c % p
        self.mats = scheme.adjacency % p

    @cached_property
    def pair_action(self) -> np.ndarray:
        """(rank^2, rank, rank) matrices of x -> b_i x b_j in coefficients."""
        p = self.p
        c = self.c
        r = self.rank
        left = np.stack([c[i].T for i in range(r)]) % p          # L_i[t,s]=c[i,s,t]
        right = np.stack([c[:, j, :].T for j in range(r)]) % p   # R_j[t,s]=c[s,j,t]
        out = np.einsum("iab,jbc->ijac", left, right) % p
        return out.reshape(r * r, r, r)

    def element_matrices(self, vecs: np.ndarray) -> np.ndarray:
        """Point-space matrices of coefficient vectors (batched)."""
        v = np.asarray(vecs, dtype=np.int64) % self.p
        return np.einsum("br,rij->bij", v, self.mats) % self.p


def modular_algebra(scheme: Scheme, p: int) -> ModularAlgebra:
    return ModularAlgebra(scheme, p)


def _ideal_is_nilpotent(alg: ModularAlgebra, vec: np.ndarray) -> bool:
    """Span-power iteration on the two-sided ideal generated by vec."""
    p = alg.p
    gens = (alg.pair_action @ (np.asarray(vec, dtype=np.int64) % p)) % p
    ideal = rref_mod_p(gens, p)[0]
    if ideal.shape[0] == 0:
        return True
    span = ideal
    while True:
        prods = np.einsum("ijk,ai,bj->abk", alg.c, span, ideal) % p
        nxt = rref_mod_p(prods.reshape(-1, alg.rank), p)[0]
        if nxt.shape[0] == 0:
            return True
        if nxt.shape[0] == span.shape[0]:
            # chain of spans is descending; equal dimension means stable
            return False
        span = nxt


def radical_chain(alg: ModularAlgebra) -> RadicalResult:
    """Radical via the characteristic-coefficient chain; validates that every
    returned basis element generates a nilpotent ideal."""
    p = alg.p
    steps = 1
    while p**steps <= alg.n:
        steps += 1
    basis = np.eye(alg.rank, dtype=np.int64)
    for i in range(steps):
        if basis.shape[0] == 0:
            break
        d = basis.shape[0]
        mats = alg.element_matrices(basis)
        prods = (mats[:, None, :, :] @ mats[None, :, :, :]).reshape(d * d, alg.n, alg.n) % p
        coeff = charpoly_mod_p(prods, p)[:, p**i].reshape(d, d)
        # row y, column x: coefficient of charpoly(x y); solve for x
        system = coeff.T
        combos = kernel_mod_p(system, p)
        basis = rref_mod_p((combos @ basis) % p, p)[0]
    for vec in basis:
        assert _ideal_is_nilpotent(alg, vec)
    return RadicalResult(dim=basis.shape[0], basis=basis, method="chain")


def radical_oracle(alg: ModularAlgebra, budget: int = 1 << 16) -> RadicalResult:
    """Exhaustive radical: all p^rank elements, keeping generators of
    nilpotent ideals.  Matrix-nilpotency prefilters (necessary conditions)
    cut the candidate set; survivors get the exact span-power test.
    Asserts the kept set is a subspace."""
    p, r, n = alg.p, alg.rank, alg.n
    count = p**r
    if count > budget:
        raise BudgetExceeded(f"{p}^{r} = {count} exceeds budget {budget}")
    idx = np.arange(count, dtype=np.int64)
    vecs = np.empty((count, r), dtype=np.int64)
    for pos in range(r):
        vecs[:, r - 1 - pos] = idx % p
        idx //= p

    def nilpotent_mask(mats: np.ndarray) -> np.ndarray:
        power = mats
        t = 1
        while t < n:
            power = (power @ power) % p
            t *= 2
        return ~power.any(axis=(1, 2))

    mats = alg.element_matrices(vecs)
    keep = (np.einsum("bii->b", mats) % p) == 0
    sel = np.nonzero(keep)[0]
    keep[sel[~nilpotent_mask(mats[sel])]] = False
    for j in range(r):
        sel = np.nonzero(keep)[0]
        sub = (mats[sel] @ alg.mats[j]) % p
        keep[sel[~nilpotent_mask(sub)]] = False
    survivors = np.nonzero(keep)[0]
    members = [v for v in vecs[survivors] if _ideal_is_nilpotent(alg, v)]
    basis = rref_mod_p(np.array(members, dtype=np.int64).reshape(-1, r), p)[0]
    assert len(members) == p ** basis.shape[0]
    return RadicalResult(dim=basis.shape[0], basis=basis, method="oracle")


def is_semisimple(scheme: Scheme, p: int) -> bool:
    return radical_chain(modular_algebra(scheme, p)).dim == 0


def central_nilpotent_witness(scheme: Scheme, p: int) -> np.ndarray | None:
    """Explicit nonzero central element squaring to zero mod p, built from
    cell-block all-ones matrices; exists whenever p divides a cell size.

    With exactly one p-divisible cell the coefficient of J_X is the product
    of the other cell sizes.  When every cell is p-divisible, J_X is scaled
    by p^(lam - a_X) / (odd part of |X|) where |X| = p^a_X * (odd part) and
    lam is the largest a_X.  The same scaling also covers the mixed case
    with two or more p-divisible cells, where the size-product coefficients
    would all vanish mod p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cell_sizes = [len(x) for x in scheme.cells]
    if all(s % p for s in cell_sizes):
        return None
    divisible = sum(1 for s in cell_sizes if s % p == 0)
    if divisible == 1:
        coeffs = []
        for i in range(len(cell_sizes)):
            prod_others = 1
            for j, s in enumerate(cell_sizes):
                if j != i:
                    prod_others = prod_others * s % p
            coeffs.append(prod_others)
    else:
        vals = []
        for s in cell_sizes:
            a = 0
            while s % p == 0:
                a += 1
                s //= p
            vals.append((a, s))
        lam = max(a for a, _ in vals)
        coeffs = [
            (p ** (lam - a) % p) * pow(unit, -1, p) % p for a, unit in vals
        ]
    vec = np.zeros(scheme.rank, dtype=np.int64)
    for rel in range(scheme.rank):
        fiber = scheme.fiber_of[rel]
        if fiber is not None and fiber[0] == fiber[1]:
            vec[rel] = coeffs[fiber[0]]
    assert vec.any()
    c = scheme.tensor.c
    for rel in range(scheme.rank):
        e = np.zeros(scheme.rank, dtype=np.int64)
        e[rel] = 1
        assert np.array_equal(
            multiply_mod(vec, e, c, p), multiply_mod(e, vec, c, p)
        )
    assert not multiply_mod(vec, vec, c, p).any()
    return vec
