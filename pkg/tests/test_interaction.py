import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixture_complexes import FIXTURES, example_dmat, fixture_basis, full_simplex, star, zigzag
from interaction_tda import (
    InteractionCell,
    betti,
    boundary_chain,
    enumerate_cells,
    from_simplices,
    interaction_vr_basis,
    verify_chain_complex,
    vr_filtration,
)
from interaction_tda.interaction import interaction_basis


def _product_oracle(complexes, max_degree=None):
    """Every tuple of the full Cartesian product, kept iff the factors share a vertex."""
    out = {}
    for combo in itertools.product(*[list(k) for k in complexes]):
        if set.intersection(*map(set, combo)):
            deg = sum(len(s) - 1 for s in combo)
            if max_degree is None or deg <= max_degree:
                birth = max(k.birth(s) for k, s in zip(complexes, combo))
                out[combo] = (deg, birth)
    return out


def _tensor_boundary_oracle(complexes, cell):
    """Boundary in the full tensor product, then drop tuples with empty intersection."""
    out = {}
    for i in range(len(cell)):
        sign = (-1) ** sum(len(s) - 1 for s in cell[:i])
        for c, face in boundary_chain(cell[i]):
            new = cell[:i] + (face,) + cell[i + 1:]
            if set.intersection(*map(set, new)):
                out[new] = out.get(new, 0) + sign * c
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_enumeration_matches_product_oracle(name):
    complexes = FIXTURES[name][0]()
    basis = enumerate_cells(complexes)
    expected = _product_oracle(complexes)
    got = {c.factors: (c.degree, c.birth) for c in basis}
    assert got == expected


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_boundary_matches_tensor_oracle(name):
    complexes = FIXTURES[name][0]()
    basis = enumerate_cells(complexes)
    for p in range(1, basis.top_degree + 1):
        m = basis.boundary_matrix(p)
        for j, cell in enumerate(basis.cells(p)):
            col = {basis.cells(p - 1)[r].factors: int(v) for r, v in m.columns[j].items()}
            assert col == _tensor_boundary_oracle(complexes, cell.factors)


def test_counts():
    assert fixture_basis("boundary_triangle").dims() == [3, 12, 9]
    assert fixture_basis("delta2").dims() == [3, 12, 15, 6, 1]
    assert fixture_basis("zigzag").dims() == [2, 6, 3]


def test_basis_order_puts_later_factor_dimensions_first():
    cells = fixture_basis("zigzag").cells(1)
    assert [c.factors for c in cells] == [
        ((1,), (1, 2)), ((2,), (1, 2)), ((2,), (2, 3)),
        ((0, 1), (1,)), ((1, 2), (1,)), ((1, 2), (2,)),
    ]


def test_star_boundary_column():
    basis = enumerate_cells(star())
    assert basis.boundary_matrix(1).to_fractions() == [[-1, -1, -1]]
    assert basis.boundary_matrix(0).shape == (0, 1)


def test_delta1_second_differential():
    basis = enumerate_cells(full_simplex(1))
    assert [c.factors for c in basis.cells(1)] == [
        ((0,), (0, 1)), ((1,), (0, 1)), ((0, 1), (0,)), ((0, 1), (1,))]
    assert [row[0] for row in basis.boundary_matrix(2).to_fractions()] == [-1, 1, 1, -1]


def test_zigzag_differentials_match_display():
    basis = enumerate_cells(zigzag())
    d1 = [[-1, 0], [0, 1], [0, -1], [1, 0], [-1, 0], [0, 1]]
    d2 = [[1, 0, 0, 1, 0, 0], [-1, 1, 0, 0, 1, -1], [0, 0, 1, 0, 0, 1]]
    # stored column-wise: column j is the boundary of source cell j
    assert basis.boundary_matrix(1).T.to_fractions() == d1
    assert basis.boundary_matrix(2).T.to_fractions() == d2


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_chain_complex_on_fixtures(name):
    assert verify_chain_complex(fixture_basis(name))


def test_three_factors():
    k = from_simplices([[0, 1], [1, 2], [0, 2]])
    complexes = [k, k, from_simplices([[0, 1]])]
    basis = enumerate_cells(complexes)
    assert {c.factors for c in basis} == set(_product_oracle(complexes))
    assert verify_chain_complex(basis)


def test_single_factor_is_simplicial_chain_complex():
    k = from_simplices([[0, 1], [1, 2], [0, 2]])
    basis = enumerate_cells([k])
    assert basis.dims() == [3, 3]
    assert betti(basis) == (1, 1)
    with pytest.raises(ValueError):
        interaction_basis([k])


def test_disjoint_factors_give_empty_basis():
    basis = enumerate_cells([from_simplices([[0, 1]]), from_simplices([[2, 3]])])
    assert len(basis) == 0
    assert basis.top_degree == -1
    assert betti(basis) == ()


def test_degree_cap_and_scale_cap(example_basis):
    capped = interaction_vr_basis(example_dmat(), [{0, 1, 2}, {1, 2, 3}], 1, 1.0)
    assert capped.dims() == [2, 6]
    assert not capped.complete and capped.exact_degree == 0
    assert all(c.birth <= 1.0 for c in capped)
    assert example_basis.critical_values == [0.0, 1.0, math.sqrt(2)]
    trunc = example_basis.truncate(1.0)
    # at scale 1 both groups are paths and the complex is the zig-zag fixture
    assert [c.factors for c in trunc] == [c.factors for c in fixture_basis("zigzag")]
    assert trunc.count_born_by(1, 1.0) == trunc.dim(1)


def test_dump_format():
    basis = enumerate_cells(star())
    lines = basis.dump().splitlines()
    assert lines[0] == "p=0 birth=0 ([0]|[0])"
    assert lines[1] == "p=1 birth=0 ([0,1]|[0])"
    assert str(InteractionCell(((0, 1), (1,)), math.sqrt(2))) == "p=1 birth=1.41421356237 ([0,1]|[1])"


@st.composite
def vr_instance(draw):
    n = draw(st.sampled_from([2, 3]))
    seed = draw(st.integers(0, 2 ** 20))
    rng = np.random.default_rng(seed)
    total = rng.integers(3, 13)
    pts = rng.random((total, 2))
    groups = []
    for _ in range(n):
        size = int(rng.integers(1, min(10, total) + 1))
        groups.append(frozenset(rng.choice(total, size, replace=False).tolist()))
    scale = float(rng.uniform(0.2, 0.9))
    return pts, groups, scale


@settings(max_examples=40, deadline=None)
@given(vr_instance())
def test_random_vr_instances_are_chain_complexes(inst):
    pts, groups, scale = inst
    d = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    basis = interaction_vr_basis(d, groups, 3, scale)
    assert verify_chain_complex(basis)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 20))
def test_relabelling_preserves_betti(seed):
    rng = np.random.default_rng(seed)
    pts = rng.random((6, 2))
    d = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    k1 = vr_filtration(range(5), d, 2, 0.6)
    k2 = vr_filtration(range(1, 6), d, 2, 0.6)
    perm = dict(enumerate(rng.permutation(6).tolist()))
    a = enumerate_cells([k1, k2])
    b = enumerate_cells([k1.relabel(perm), k2.relabel(perm)])
    assert a.dims() == b.dims()
    assert betti(a) == betti(b)
