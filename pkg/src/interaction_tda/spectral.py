"""Interaction Laplacians, persistent interaction Laplacians and spectral-gap curves.

Boundary matrices B_p have the degree-p cells as columns, so the Laplacian
on degree p reads ``B_p^T B_p + B_{p+1} B_{p+1}^T`` in this convention.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse as sp

from .complex import vr_filtration
from .interaction import GradedBasis, enumerate_cells
from .sparse import nullspace, rank

ZERO_TOL = 1e-8
SYMMETRY_TOL = 1e-12


class AsymmetricMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class LaplacianMatrix:
    p: int
    matrix: np.ndarray

    @property
    def shape(self):
        return self.matrix.shape


@dataclass(frozen=True)
class PersistentLaplacian:
    p: int
    a: float
    b: float
    matrix: np.ndarray

    @property
    def shape(self):
        return self.matrix.shape


def laplacian(basis: GradedBasis, p: int) -> LaplacianMatrix:
    """Interaction Laplacian on degree p; 0x0 when the degree is empty.

    The up-term uses whatever degree-(p+1) cells the basis holds, so build the
    basis with ``max_degree >= p + 1`` for the true Laplacian.
    """
    n = basis.dim(p)
    if n == 0:
        return LaplacianMatrix(p, np.zeros((0, 0)))
    down = basis.boundary_matrix(p).toarray() if p > 0 else np.zeros((0, n))
    up = basis.boundary_matrix(p + 1).toarray()
    return LaplacianMatrix(p, down.T @ down + up @ up.T)


def spectrum(lap) -> np.ndarray:
    """Ascending eigenvalues of a symmetric (persistent) Laplacian."""
    m = np.asarray(getattr(lap, "matrix", lap), dtype=np.float64)
    if m.size == 0:
        return np.zeros(0)
    if not np.allclose(m, m.T, rtol=0.0, atol=SYMMETRY_TOL):
        raise AsymmetricMatrixError(f"matrix asymmetric by {np.abs(m - m.T).max():.3g}")
    return np.linalg.eigvalsh((m + m.T) / 2)


def zero_threshold(eigenvalues: np.ndarray, tol: float = ZERO_TOL) -> float:
    largest = float(np.max(eigenvalues)) if len(eigenvalues) else 0.0
    return tol * max(1.0, largest)


def nullity(eigenvalues: np.ndarray, tol: float = ZERO_TOL) -> int:
    return int(np.sum(eigenvalues <= zero_threshold(eigenvalues, tol)))


def spectral_gap(eigenvalues: np.ndarray, tol: float = ZERO_TOL) -> float:
    """Smallest eigenvalue above the zero threshold; 0.0 if there is none."""
    pos = eigenvalues[eigenvalues > zero_threshold(eigenvalues, tol)]
    return float(pos.min()) if len(pos) else 0.0


def _to_csc(m) -> sp.csc_matrix:
    rows, cols, vals = [], [], []
    for c, col in enumerate(m.columns):
        for r, v in col.items():
            rows.append(r)
            cols.append(c)
            vals.append(float(v))
    return sp.csc_matrix((vals, (rows, cols)), shape=m.shape)


def _orthonormal_columns(vectors: list[dict[int, int]], n: int) -> np.ndarray:
    if not vectors:
        return np.zeros((n, 0))
    z = np.zeros((n, len(vectors)))
    for j, v in enumerate(vectors):
        for i, x in v.items():
            z[i, j] = float(x)
    q, _ = np.linalg.qr(z)
    return q


def persistent_laplacian(basis_b: GradedBasis, a: float, b: float, p: int) -> PersistentLaplacian:
    """(a, b)-persistent interaction Laplacian on the degree-p cells born by ``a``.

    The up-part restricts d_{p+1} at scale b to chains whose boundary lies in
    the scale-a chains: the kernel of the rows for cells born after a is
    found exactly over Q, orthonormalised, and pushed through the remaining rows.
    """
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if basis_b.scale > b:
        basis_b = basis_b.truncate(b)
    na = basis_b.count_born_by(p, a)
    if na == 0:
        return PersistentLaplacian(p, a, b, np.zeros((0, 0)))
    n_prev = basis_b.count_born_by(p - 1, a) if p > 0 else 0

    if p > 0:
        down = basis_b.boundary_matrix(p).toarray()[:n_prev, :na]
        lap = down.T @ down
    else:
        lap = np.zeros((na, na))

    up = persistent_up_operator(basis_b, a, b, p)
    lap = lap + up @ up.T
    return PersistentLaplacian(p, a, b, lap)


def persistent_up_operator(basis_b: GradedBasis, a: float, b: float, p: int) -> np.ndarray:
    """Matrix of d_{p+1}^{a,b} in an orthonormal basis of its domain (rows: p-cells born by a)."""
    if basis_b.scale > b:
        basis_b = basis_b.truncate(b)
    na = basis_b.count_born_by(p, a)
    bp1 = basis_b.boundary_matrix(p + 1)
    if bp1.rows == na:
        return bp1.toarray()
    outside = bp1.submatrix(list(range(na, bp1.rows)), list(range(bp1.cols)))
    z = _orthonormal_columns(nullspace(outside), bp1.cols)
    return bp1.toarray()[:na] @ z


@dataclass(frozen=True)
class SpectrumEntry:
    degree: int
    eigenvalues: np.ndarray
    nullity: int
    gap: float
    t: float | None = None
    a: float | None = None
    b: float | None = None

    def to_json(self) -> dict:
        out: dict = {}
        if self.t is not None:
            out["t"] = self.t
        else:
            out["a"] = self.a
            out["b"] = self.b
        out.update(degree=self.degree, nullity=self.nullity, gap=self.gap,
                   eigenvalues=[float(x) for x in self.eigenvalues])
        return out


@dataclass(frozen=True)
class SpectrumSeries:
    degree: int
    entries: list[SpectrumEntry] = field(default_factory=list)
    mode: str = "snapshot"

    @property
    def gaps(self) -> list[float]:
        return [e.gap for e in self.entries]

    @property
    def params(self) -> list:
        return [e.t if e.t is not None else (e.a, e.b) for e in self.entries]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.mode == "snapshot":
            w.writerow(["t", "degree", "nullity", "gap"])
            for e in self.entries:
                w.writerow([repr(e.t), e.degree, e.nullity, repr(e.gap)])
        else:
            w.writerow(["a", "b", "degree", "nullity", "gap"])
            for e in self.entries:
                w.writerow([repr(e.a), repr(e.b), e.degree, e.nullity, repr(e.gap)])
        return buf.getvalue()


def summarize(eigs: np.ndarray, p: int, tol: float = ZERO_TOL, **param) -> SpectrumEntry:
    return SpectrumEntry(p, eigs, nullity(eigs, tol), spectral_gap(eigs, tol), **param)


def critical_values(dmat: np.ndarray, groups: Sequence) -> list[float]:
    vals = {0.0}
    for ids in groups:
        ids = sorted(ids)
        sub = np.asarray(dmat)[np.ix_(ids, ids)]
        vals.update(sub[np.triu_indices(len(ids), 1)].tolist())
    return sorted(vals)


def auto_grid(dmat: np.ndarray, groups: Sequence, max_scale: float = math.inf) -> list[float]:
    """Critical values plus the midpoints between consecutive ones."""
    crit = [v for v in critical_values(dmat, groups) if v <= max_scale]
    grid = set(crit)
    grid.update((x + y) / 2 for x, y in zip(crit, crit[1:]))
    return sorted(grid)


def snapshot_series(basis: GradedBasis, p: int, grid: Sequence[float], tol: float = ZERO_TOL) -> SpectrumSeries:
    """Laplacian spectra of the sub-basis born by each t in ``grid``.

    The basis must hold the degree-(p+1) cells up to ``max(grid)``; births are
    sorted, so each snapshot is a leading block of the full boundary matrices.
    """
    down_full = _to_csc(basis.boundary_matrix(p)) if p > 0 else None
    up_full = _to_csc(basis.boundary_matrix(p + 1))
    entries = []
    for t in grid:
        n = basis.count_born_by(p, t)
        if n == 0:
            entries.append(summarize(np.zeros(0), p, tol, t=float(t)))
            continue
        lap = np.zeros((n, n))
        if down_full is not None:
            m = basis.count_born_by(p - 1, t)
            d = down_full[:m, :n]
            lap += (d.T @ d).toarray()
        k = basis.count_born_by(p + 1, t)
        if k:
            u = up_full[:n, :k]
            lap += (u @ u.T).toarray()
        entries.append(summarize(spectrum(lap), p, tol, t=float(t)))
    return SpectrumSeries(p, entries, "snapshot")


def persistent_series(basis: GradedBasis, p: int, pairs: Sequence[tuple[float, float]],
                      tol: float = ZERO_TOL) -> SpectrumSeries:
    entries = []
    for a, b in pairs:
        lap = persistent_laplacian(basis, a, b, p)
        entries.append(summarize(spectrum(lap), p, tol, a=float(a), b=float(b)))
    return SpectrumSeries(p, entries, "persistent-pairs")


def interaction_vr_basis(dmat: np.ndarray, groups: Sequence, max_degree: int, max_scale: float) -> GradedBasis:
    """Interaction VR basis with cells up to ``max_degree`` born by ``max_scale``."""
    complexes = [vr_filtration(ids, dmat, max_degree, max_scale) for ids in groups]
    return enumerate_cells(complexes, max_degree, max_scale)


def gap_curve(dmat: np.ndarray, groups: Sequence, p: int, grid: Sequence, mode: str = "snapshot",
              tol: float = ZERO_TOL) -> SpectrumSeries:
    """Spectral-gap curve of the interaction VR filtration of ``groups``.

    ``grid`` holds scales (snapshot mode) or (a, b) pairs (persistent-pairs mode).
    """
    if mode == "snapshot":
        grid = [float(t) for t in grid]
        if any(x > y for x, y in zip(grid, grid[1:])):
            raise ValueError("grid must be sorted ascending")
        top = max(grid, default=0.0)
    elif mode == "persistent-pairs":
        grid = [(float(a), float(b)) for a, b in grid]
        if any(a > b for a, b in grid):
            raise ValueError("persistent pairs need a <= b")
        top = max((b for _, b in grid), default=0.0)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    basis = interaction_vr_basis(dmat, groups, p + 1, top)
    if mode == "snapshot":
        return snapshot_series(basis, p, grid, tol)
    return persistent_series(basis, p, grid, tol)


def classic_laplacian_curve(dmat: np.ndarray, ids, p: int, grid: Sequence[float],
                            tol: float = ZERO_TOL) -> SpectrumSeries:
    """Same curve for the ordinary VR complex on ``ids`` (one-factor case)."""
    grid = [float(t) for t in grid]
    top = max(grid, default=0.0)
    k = vr_filtration(ids, dmat, p + 1, top)
    basis = enumerate_cells([k], p + 1, top)
    return snapshot_series(basis, p, grid, tol)


def hodge_dimensions(basis: GradedBasis, p: int, field: str = "q") -> tuple[int, int, int]:
    """(dim IC_p, rank B_{p+1}, rank B_p) for the Hodge count check."""
    return basis.dim(p), rank(basis.boundary_matrix(p + 1), field), rank(basis.boundary_matrix(p), field)
