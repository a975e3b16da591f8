"""Persistent interaction homology and persistent interaction Laplacians.

Typical use::

    from interaction_tda import parse_xyz, select_groups, distance_matrix
    from interaction_tda import interaction_vr_basis, persistent_barcode, gap_curve

    cloud = parse_xyz(open("mol.xyz").read())
    groups = select_groups(cloud, [{"C", "B"}, {"C", "H"}])
    dmat = distance_matrix(cloud)
    barcode = persistent_barcode(interaction_vr_basis(dmat, groups, 2, 3.0))
"""

from .complex import FilteredComplex, Simplex, boundary_chain, from_simplices, parse_simplices, vr_filtration
from .geometry import (
    GroupingError,
    ParseError,
    PointCloud,
    distance_matrix,
    load_cloud,
    parse_csv,
    parse_groups,
    parse_xyz,
    select_groups,
    to_csv,
    to_xyz,
)
from .homology import (
    Barcode,
    UnsupportedInput,
    WuReport,
    betti,
    bottleneck_distance,
    persistent_barcode,
    persistent_betti,
    wu_characteristic,
)
from .interaction import GradedBasis, InteractionCell, boundary_matrix, enumerate_cells, verify_chain_complex
from .sparse import SparseRationalMatrix, nullspace, rank
from .spectral import (
    LaplacianMatrix,
    PersistentLaplacian,
    SpectrumSeries,
    auto_grid,
    classic_laplacian_curve,
    gap_curve,
    interaction_vr_basis,
    laplacian,
    persistent_laplacian,
    spectral_gap,
    spectrum,
)

__version__ = "0.1.0"
