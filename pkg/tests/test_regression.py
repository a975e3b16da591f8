"""Frozen outputs on the vendored synthetic molecules; guards against silent drift."""

import math

import numpy as np
import pytest

from interaction_tda import distance_matrix, interaction_vr_basis, load_cloud, parse_groups, persistent_barcode, select_groups
from interaction_tda.spectral import snapshot_series
from interaction_tda.synthetic import carborane_like, chlorophyll_like


@pytest.fixture
def chlorophyll(data_dir):
    cloud = load_cloud(data_dir / "chlorophyll_a_synthetic.xyz")
    groups = select_groups(cloud, parse_groups("Mg,N;N,C"))
    return distance_matrix(cloud), groups


def test_vendored_files_match_generators(data_dir):
    for name, cloud in [("c2b13h15_synthetic.xyz", carborane_like(15)),
                        ("c2b3h5_synthetic.xyz", carborane_like(5)),
                        ("chlorophyll_a_synthetic.xyz", chlorophyll_like(0))]:
        loaded = load_cloud(data_dir / name)
        assert loaded.labels == cloud.labels
        np.testing.assert_allclose(loaded.coords, cloud.coords, atol=1e-8)


def test_carborane_group_sizes(data_dir):
    cloud = load_cloud(data_dir / "c2b13h15_synthetic.xyz")
    assert len(cloud) == 30
    assert sorted(set(cloud.labels)) == ["B", "C", "H"]
    assert [len(g) for g in select_groups(cloud, parse_groups("C,B;C,H"))] == [15, 17]


def test_chlorophyll_golden(chlorophyll):
    d, groups = chlorophyll
    assert [len(g) for g in groups] == [5, 59]
    basis = interaction_vr_basis(d, groups, 3, 3.5)
    assert basis.dims() == [4, 45, 162, 276]
    bc = persistent_barcode(basis)
    expected0 = [(0.0, 1.0658296795739508), (0.0, 1.8349683072939598), (0.0, 2.05), (0.0, 2.05)]
    np.testing.assert_allclose(bc.degree(0), expected0, atol=1e-7)
    assert bc.degree(1) == [] and bc.degree(2) == []
    grid = [1.5, 2.5, 3.0, 3.5]
    s0 = snapshot_series(basis, 0, grid)
    s1 = snapshot_series(basis, 1, grid)
    np.testing.assert_allclose(s0.gaps, [2.0, 2.0, 7.0, 9.0], atol=1e-8)
    assert [e.nullity for e in s0.entries] == [3, 0, 0, 0]
    np.testing.assert_allclose(s1.gaps, [2.0, 2.0, 1.835647125, 1.9566708408], atol=1e-8)
    assert all(math.isfinite(g) for g in s1.gaps)
