"""Interaction chain complexes.

An interaction cell is an n-tuple of simplices ``(s_1, ..., s_n)``, ``s_i`` taken
from the i-th factor complex, whose vertex sets share at least one vertex.
Its degree is the sum of the factor dimensions and it is born when its last
factor is born. Tuples with empty common intersection are zero in the
quotient complex, so they never appear in a basis and boundary terms landing
on them are dropped.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .complex import FilteredComplex, Simplex, boundary_chain
from .sparse import SparseRationalMatrix


@dataclass(frozen=True, order=False)
class InteractionCell:
    factors: tuple[Simplex, ...]
    birth: float = 0.0

    @property
    def degree(self) -> int:
        return sum(len(s) for s in self.factors) - len(self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) - 1 for s in self.factors)

    @property
    def key(self):
        """Order inside one degree: birth, then factor dimensions, then vertices."""
        return (self.birth, self.dims, self.factors)

    def __str__(self) -> str:
        inner = "|".join("[" + ",".join(map(str, s)) + "]" for s in self.factors)
        return f"p={self.degree} birth={self.birth:.12g} ({inner})"


def common_vertices(factors: Sequence[Simplex]) -> set[int]:
    it = iter(factors)
    out = set(next(it))
    for s in it:
        out.intersection_update(s)
        if not out:
            break
    return out


class GradedBasis:
    """Interaction cells grouped by degree, each degree sorted by ``InteractionCell.key``.

    ``max_degree`` is the degree cap used during enumeration, or None when the
    basis holds every cell (no degree truncation). ``scale`` is the filtration
    cap (inf when untruncated).
    """

    def __init__(self, cells: dict[int, list[InteractionCell]], n_factors: int,
                 max_degree: int | None = None, scale: float = math.inf,
                 complexes: Sequence[FilteredComplex] | None = None):
        top = max((p for p, cs in cells.items() if cs), default=-1)
        self.n_factors = n_factors
        self.max_degree = max_degree
        self.scale = scale
        self.complexes = tuple(complexes) if complexes is not None else None
        self._cells = {p: sorted(cells.get(p, []), key=lambda c: c.key) for p in range(top + 1)}
        self._index = {p: {c.factors: i for i, c in enumerate(cs)} for p, cs in self._cells.items()}
        for p, cs in self._cells.items():
            if len(self._index[p]) != len(cs):
                raise ValueError(f"duplicate cells in degree {p}")
        self._matrices: dict[int, SparseRationalMatrix] = {}

    @property
    def top_degree(self) -> int:
        """Highest degree holding a cell (-1 for an empty basis)."""
        return len(self._cells) - 1

    @property
    def complete(self) -> bool:
        return self.max_degree is None or self.top_degree < self.max_degree

    @property
    def exact_degree(self) -> int:
        """Highest degree whose homology is fully determined by this basis."""
        if self.complete:
            return self.top_degree
        return self.max_degree - 1

    def cells(self, p: int) -> list[InteractionCell]:
        return self._cells.get(p, [])

    def dim(self, p: int) -> int:
        return len(self._cells.get(p, ()))

    def dims(self) -> list[int]:
        return [len(self._cells[p]) for p in range(self.top_degree + 1)]

    def index(self, p: int, factors: tuple[Simplex, ...]) -> int:
        return self._index[p][factors]

    def __contains__(self, factors) -> bool:
        k = sum(len(s) for s in factors) - len(factors)
        return factors in self._index.get(k, {})

    def __iter__(self) -> Iterator[InteractionCell]:
        for p in range(self.top_degree + 1):
            yield from self._cells[p]

    def __len__(self) -> int:
        return sum(len(cs) for cs in self._cells.values())

    def births(self, p: int) -> list[float]:
        return [c.birth for c in self._cells.get(p, [])]

    def count_born_by(self, p: int, scale: float) -> int:
        """Number of degree-p cells born at or before ``scale`` (they form a prefix)."""
        return bisect_right(self.births(p), scale)

    @cached_property
    def critical_values(self) -> list[float]:
        return sorted({c.birth for c in self})

    def truncate(self, scale: float) -> "GradedBasis":
        cells = {p: [c for c in cs if c.birth <= scale] for p, cs in self._cells.items()}
        complexes = None
        if self.complexes is not None:
            complexes = [k.truncate(scale) for k in self.complexes]
        return GradedBasis(cells, self.n_factors, self.max_degree, min(scale, self.scale), complexes)

    def boundary_matrix(self, p: int) -> SparseRationalMatrix:
        if p not in self._matrices:
            self._matrices[p] = boundary_matrix(self, p)
        return self._matrices[p]

    def dump(self) -> str:
        return "\n".join(str(c) for c in self)

    def __repr__(self) -> str:
        return f"GradedBasis(n={self.n_factors}, dims={self.dims()}, max_degree={self.max_degree})"


def _stars(k: FilteredComplex, max_dim: int, max_scale: float) -> dict[int, list[tuple[Simplex, float]]]:
    stars: dict[int, list[tuple[Simplex, float]]] = {}
    for s, b in k.births.items():
        if b > max_scale or len(s) - 1 > max_dim:
            continue
        for v in s:
            stars.setdefault(v, []).append((s, b))
    return stars


def enumerate_cells(complexes: Sequence[FilteredComplex], max_degree: int | None = None,
                    max_scale: float = math.inf) -> GradedBasis:
    """All tuples with a shared vertex, total degree <= max_degree and birth <= max_scale.

    Cells are generated per pivot vertex v from the stars of v in each factor;
    a tuple is kept only at the smallest vertex of its common intersection so
    nothing is produced twice. ``max_degree=None`` means no degree cap.
    A single complex (n = 1) yields its ordinary simplicial chain basis.
    """
    n = len(complexes)
    if n < 1:
        raise ValueError("need at least one factor complex")
    if max_degree is not None and max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    cap = math.inf if max_degree is None else max_degree
    stars = [_stars(k, int(min(cap, 1 << 30)), max_scale) for k in complexes]
    shared = set(stars[0])
    for st in stars[1:]:
        shared.intersection_update(st)

    cells: dict[int, list[InteractionCell]] = {}
    for v in sorted(shared):
        _cells_at_pivot([st[v] for st in stars], v, cap, cells)
    return GradedBasis(cells, n, max_degree, max_scale, complexes)


def _cells_at_pivot(per_factor, v: int, cap, cells: dict) -> None:
    n = len(per_factor)
    chosen: list[Simplex] = []

    def rec(i: int, degree: int, birth: float, common: frozenset | None):
        if i == n:
            # v is always shared; a smaller shared vertex means another pivot owns this tuple
            if min(common) == v:
                cells.setdefault(degree, []).append(InteractionCell(tuple(chosen), birth))
            return
        for s, b in per_factor[i]:
            d = degree + len(s) - 1
            if d > cap:
                continue
            c = frozenset(s) if common is None else common.intersection(s)
            chosen.append(s)
            rec(i + 1, d, max(birth, b), c)
            chosen.pop()

    rec(0, 0, -math.inf, None)


def boundary_matrix(basis: GradedBasis, p: int) -> SparseRationalMatrix:
    """Matrix of d_p: columns are degree-p cells, rows degree-(p-1) cells.

    Factor i's boundary enters with the Koszul sign (-1)^(dims of factors before i);
    terms whose factors no longer share a vertex vanish in the quotient.
    """
    if p <= 0:
        return SparseRationalMatrix(0, basis.dim(0))
    rows = basis.dim(p - 1)
    index = basis._index.get(p - 1, {})
    columns = []
    for cell in basis.cells(p):
        col: dict[int, int] = {}
        prefix = 0
        fs = cell.factors
        for i, s in enumerate(fs):
            sign = -1 if prefix % 2 else 1
            for c, face in boundary_chain(s):
                new = fs[:i] + (face,) + fs[i + 1:]
                if not common_vertices(new):
                    continue
                r = index.get(new)
                if r is None:
                    raise RuntimeError(f"boundary term {new} of {cell} missing from basis")
                col[r] = col.get(r, 0) + sign * c
            prefix += len(s) - 1
        columns.append({r: x for r, x in col.items() if x})
    return SparseRationalMatrix(rows, len(columns), columns)


def verify_chain_complex(basis: GradedBasis) -> bool:
    """True iff d_{p-1} d_p = 0 exactly for every degree."""
    for p in range(2, basis.top_degree + 1):
        if not (basis.boundary_matrix(p - 1) @ basis.boundary_matrix(p)).is_zero():
            return False
    return True


def interaction_basis(complexes: Sequence[FilteredComplex], max_degree: int | None = None,
                      max_scale: float = math.inf) -> GradedBasis:
    """Alias of :func:`enumerate_cells` that insists on n >= 2 factors."""
    if len(complexes) < 2:
        raise ValueError("an interaction complex needs at least two factors")
    return enumerate_cells(complexes, max_degree, max_scale)
