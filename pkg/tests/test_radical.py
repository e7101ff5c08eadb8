"""Radical of the adjacency algebra mod p: chain method vs exhaustive oracle.

Group-algebra expectations use two classical facts: for abelian G the
radical of F_p[G] has dimension |G| minus the p-free part of |G|, and for
a p-group the algebra is local so the radical is the augmentation ideal.
"""

import numpy as np
import pytest

from cellalg.generators import (
    build_scheme,
    cyclic_table,
    dihedral_table,
    product_table,
    quaternion_table,
    rank2,
    thin_group_scheme,
)
from cellalg.linalg import in_row_space_mod_p, prime_factors
from cellalg.radical import (
    BudgetExceeded,
    central_nilpotent_witness,
    is_semisimple,
    modular_algebra,
    radical_chain,
    radical_oracle,
)


def witness_matrix(scheme, vec, p):
    return np.einsum("r,rij->ij", vec % p, scheme.adjacency) % p


def block_ones(scheme, cell_idx):
    out = np.zeros((scheme.size, scheme.size), dtype=np.int64)
    pts = list(scheme.cells[cell_idx])
    out[np.ix_(pts, pts)] = 1
    return out


@pytest.mark.parametrize("p", [1, 4, 6, 9, 15])
def test_modular_algebra_rejects_composite(p):
    with pytest.raises(ValueError):
        modular_algebra(rank2(3), p)


def test_thin_z2_radical_basis():
    alg = modular_algebra(build_scheme("thin-z02"), 2)
    res = radical_chain(alg)
    assert res.dim == 1
    assert res.basis.tolist() == [[1, 1]]
    assert res.method == "chain"


def test_rank2_3_radical():
    scheme = rank2(3)
    over3 = radical_chain(modular_algebra(scheme, 3))
    assert over3.dim == 1
    # the all-ones matrix I + A squares to 3J = 0 mod 3
    assert over3.basis.tolist() == [[1, 1]]
    assert radical_chain(modular_algebra(scheme, 2)).dim == 0


ABELIAN_TABLES = {
    "z2": cyclic_table(2),
    "z4": cyclic_table(4),
    "z6": cyclic_table(6),
    "z8": cyclic_table(8),
    "z9": cyclic_table(9),
    "z12": cyclic_table(12),
    "z2x2": product_table(cyclic_table(2), cyclic_table(2)),
    "z2x4": product_table(cyclic_table(2), cyclic_table(4)),
}


@pytest.mark.parametrize("name", sorted(ABELIAN_TABLES))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_abelian_group_algebra_radical_dim(name, p):
    table = ABELIAN_TABLES[name]
    n = len(table)
    free = n
    while free % p == 0:
        free //= p
    scheme = thin_group_scheme(table)
    assert radical_chain(modular_algebra(scheme, p)).dim == n - free


@pytest.mark.parametrize("table", [dihedral_table(4), quaternion_table()])
def test_2_group_algebra_is_local_mod_2(table):
    # rad is the augmentation ideal, codimension 1
    scheme = thin_group_scheme(table)
    assert radical_chain(modular_algebra(scheme, 2)).dim == len(table) - 1


@pytest.mark.parametrize(
    "p,expected", [(2, 1), (3, 4), (5, 0), (7, 0)]
)
def test_s3_group_algebra_radical_dim(p, expected):
    alg = modular_algebra(build_scheme("thin-s3"), p)
    assert radical_chain(alg).dim == expected


@pytest.mark.parametrize("name", ["discrete-2", "discrete-3", "discrete-4"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_full_matrix_algebra_semisimple(name, p):
    assert radical_chain(modular_algebra(build_scheme(name), p)).dim == 0


ORACLE_CASES = [
    ("thin-z02", 2), ("thin-z02", 3), ("thin-z04", 2), ("thin-z06", 2),
    ("thin-z06", 3), ("thin-z08", 2), ("thin-z12", 2), ("thin-z2x2", 2),
    ("thin-q8", 2), ("thin-s3", 2), ("thin-s3", 3), ("thin-s3", 5),
    ("rank2-03", 2), ("rank2-03", 3), ("rank2-04", 2), ("rank2-05", 5),
    ("discrete-2", 2), ("discrete-2", 3), ("discrete-2", 5),
    ("discrete-3", 2), ("discrete-3", 3), ("discrete-4", 2),
    ("hamming-2-2", 2), ("hamming-2-2", 3), ("hamming-3-2", 2),
    ("johnson-4-2", 2), ("johnson-5-2", 2),
    ("dsum-r2-r2", 2), ("dsum-r2-r3", 2), ("dsum-r2-r3", 3),
    ("dsum-r2-r2-r3", 2),
    ("schurian-swap-3", 2), ("schurian-dihedral-4", 2),
]


@pytest.mark.parametrize("scheme_id,p", ORACLE_CASES)
def test_chain_matches_oracle(scheme_id, p):
    alg = modular_algebra(build_scheme(scheme_id), p)
    chain = radical_chain(alg)
    oracle = radical_oracle(alg)
    assert oracle.method == "oracle"
    assert chain.dim == oracle.dim
    assert np.array_equal(chain.basis, oracle.basis)


def test_oracle_budget():
    alg = modular_algebra(build_scheme("discrete-4"), 3)
    with pytest.raises(BudgetExceeded):
        radical_oracle(alg)  # 3^16 candidates
    small = modular_algebra(build_scheme("discrete-2"), 2)
    with pytest.raises(BudgetExceeded):
        radical_oracle(small, budget=10)


@pytest.mark.parametrize(
    "name,p,expected_ss",
    [
        ("hamming-2-2", 2, False), ("hamming-2-2", 3, True),
        ("hamming-2-2", 5, True), ("hamming-2-2", 7, True),
        ("thin-z06", 2, False), ("thin-z06", 3, False),
        ("thin-z06", 5, True), ("thin-z06", 7, True),
    ],
)
def test_is_semisimple(name, p, expected_ss):
    assert is_semisimple(build_scheme(name), p) is expected_ss


def test_witness_absent_when_p_misses_every_cell():
    assert central_nilpotent_witness(rank2(3), 2) is None
    assert central_nilpotent_witness(rank2(5), 3) is None
    assert central_nilpotent_witness(build_scheme("discrete-3"), 2) is None
    assert central_nilpotent_witness(build_scheme("thin-s3"), 5) is None
    assert central_nilpotent_witness(build_scheme("hamming-2-2"), 3) is None


def test_witness_rejects_composite_modulus():
    with pytest.raises(ValueError):
        central_nilpotent_witness(rank2(4), 4)


def test_witness_homogeneous_is_all_ones():
    for name, p in [("thin-z04", 2), ("thin-s3", 2), ("thin-s3", 3)]:
        scheme = build_scheme(name)
        vec = central_nilpotent_witness(scheme, p)
        ones = np.ones((scheme.size, scheme.size), dtype=np.int64)
        assert np.array_equal(witness_matrix(scheme, vec, p), ones)
    scheme = rank2(3)
    vec = central_nilpotent_witness(scheme, 3)
    assert np.array_equal(
        witness_matrix(scheme, vec, 3), np.ones((3, 3), dtype=np.int64)
    )


def test_witness_single_divisible_cell():
    scheme = build_scheme("dsum-r2-r3")  # cells of sizes 2 and 3
    vec2 = central_nilpotent_witness(scheme, 2)
    assert np.array_equal(witness_matrix(scheme, vec2, 2), block_ones(scheme, 0) % 2)
    vec3 = central_nilpotent_witness(scheme, 3)
    # coefficient on the size-3 block is |X0| = 2 mod 3
    assert np.array_equal(
        witness_matrix(scheme, vec3, 3), 2 * block_ones(scheme, 1) % 3
    )


def test_witness_every_cell_divisible():
    scheme = build_scheme("dsum-r2-r2")
    vec = central_nilpotent_witness(scheme, 2)
    expected = (block_ones(scheme, 0) + block_ones(scheme, 1)) % 2
    assert np.array_equal(witness_matrix(scheme, vec, 2), expected)


def test_witness_two_of_three_cells_divisible():
    # cells of sizes 2, 2, 3 and p = 2: the size-product coefficients all
    # vanish mod 2, so the p-adically scaled form has to take over
    scheme = build_scheme("dsum-r2-r2-r3")
    vec = central_nilpotent_witness(scheme, 2)
    sizes = [len(c) for c in scheme.cells]
    assert sorted(sizes) == [2, 2, 3]
    expected = np.zeros((scheme.size, scheme.size), dtype=np.int64)
    for idx, size in enumerate(sizes):
        if size % 2 == 0:
            expected += block_ones(scheme, idx)
    assert np.array_equal(witness_matrix(scheme, vec, 2), expected % 2)


def test_witness_lies_in_radical_across_corpus():
    from cellalg.generators import corpus

    checked = 0
    for _, scheme in corpus():
        prod_cells = 1
        for cell in scheme.cells:
            prod_cells *= len(cell)
        if prod_cells % 11:
            assert central_nilpotent_witness(scheme, 11) is None
        for p in prime_factors(prod_cells):
            vec = central_nilpotent_witness(scheme, p)
            assert vec is not None
            rad = radical_chain(modular_algebra(scheme, p))
            assert rad.dim > 0
            assert in_row_space_mod_p(vec, rad.basis, p)
            checked += 1
    assert checked >= 20
