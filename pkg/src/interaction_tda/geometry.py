"""Point cloud ingestion, element grouping and distance matrices."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class ParseError(ValueError):
    """Malformed input file. ``lineno`` is 1-based, or None when not applicable."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GroupingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Labelled points; point ``i`` has id ``i``."""

    coords: np.ndarray
    labels: tuple[str, ...]
    comment: str = field(default="", compare=False)

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.float64)
        if coords.ndim == 1 and coords.size == 0:
            coords = coords.reshape(0, 1)
        if coords.ndim != 2 or coords.shape[1] < 1:
            raise ValueError("coords must be an (N, d) array with d >= 1")
        if len(self.labels) != coords.shape[0]:
            raise ValueError("one label per point required")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.coords, other.coords)

    __hash__ = None

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def ids(self) -> range:
        return range(len(self))

    def subset(self, ids) -> "PointCloud":
        ids = sorted(ids)
        return PointCloud(self.coords[ids], tuple(self.labels[i] for i in ids))


def parse_xyz(text: str) -> PointCloud:
    """Parse an XYZ file: atom count, comment line, then ``<element> x y z`` rows.

    Columns after the third coordinate are ignored.
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    try:
        n = int(lines[0].split()[0])
    except (ValueError, IndexError):
        raise ParseError(f"expected atom count, got {lines[0]!r}", 1) from None
    if n < 0:
        raise ParseError("negative atom count", 1)
    if len(lines) < n + 2:
        raise ParseError(f"truncated file: expected {n} atoms, found {max(len(lines) - 2, 0)}",
                         len(lines) + 1)
    labels = []
    coords = np.empty((n, 3))
    for k in range(n):
        lineno = k + 3
        parts = lines[k + 2].split()
        if len(parts) < 4:
            raise ParseError(f"expected '<element> x y z', got {lines[k + 2]!r}", lineno)
        labels.append(parts[0])
        try:
            coords[k] = [float(v) for v in parts[1:4]]
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {lines[k + 2]!r}", lineno) from None
    return PointCloud(coords, tuple(labels), comment=lines[1])


def to_xyz(cloud: PointCloud, comment: str | None = None, precision: int = 8) -> str:
    if cloud.dim != 3:
        raise ValueError("XYZ output needs 3-dimensional coordinates")
    comment = cloud.comment if comment is None else comment
    out = [str(len(cloud)), comment]
    for label, row in zip(cloud.labels, cloud.coords):
        out.append(f"{label} " + " ".join(f"{v:.{precision}f}" for v in row))
    return "\n".join(out) + "\n"


def parse_csv(text: str) -> PointCloud:
    """Parse ``id,label,x,y,z[,...]``; the dimension is the number of columns after label."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty file", 1) from None
    if len(header) < 3 or header[0] != "id" or header[1] != "label":
        raise ParseError("header must start with 'id,label' followed by coordinate columns", 1)
    d = len(header) - 2
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != d + 2:
            raise ParseError(f"expected {d + 2} columns, got {len(row)}", lineno)
        try:
            pid = int(row[0])
            xs = [float(v) for v in row[2:]]
        except ValueError:
            raise ParseError(f"non-numeric field in {row!r}", lineno) from None
        rows.append((pid, row[1].strip(), xs, lineno))
    rows.sort(key=lambda r: r[0])
    for expected, (pid, _, _, lineno) in enumerate(rows):
        if pid != expected:
            raise ParseError(f"ids must be unique and contiguous from 0 (got {pid})", lineno)
    coords = np.array([r[2] for r in rows], dtype=np.float64).reshape(len(rows), d)
    return PointCloud(coords, tuple(r[1] for r in rows))


def to_csv(cloud: PointCloud) -> str:
    names = ["x", "y", "z"] if cloud.dim <= 3 else [f"x{i}" for i in range(cloud.dim)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "label", *names[: cloud.dim]])
    for i, (label, row) in enumerate(zip(cloud.labels, cloud.coords)):
        w.writerow([i, label, *(repr(float(v)) for v in row)])
    return buf.getvalue()


def load_cloud(path, fmt: str | None = None) -> PointCloud:
    path = str(path)
    if fmt is None:
        fmt = "csv" if path.lower().endswith(".csv") else "xyz"
    with open(path) as fh:
        text = fh.read()
    if fmt == "xyz":
        return parse_xyz(text)
    if fmt == "csv":
        return parse_csv(text)
    raise ValueError(f"unknown point cloud format {fmt!r}")


def parse_groups(spec: str) -> list[frozenset[str]]:
    """``"C,B;C,H"`` -> ``[{C, B}, {C, H}]``."""
    groups = []
    for part in spec.split(";"):
        labels = frozenset(s.strip() for s in part.split(",") if s.strip())
        if not labels:
            raise GroupingError(f"empty group in {spec!r}")
        groups.append(labels)
    return groups


def select_groups(cloud: PointCloud, groups: Sequence[Sequence[str]]) -> list[frozenset[int]]:
    """Point ids per group; a point belongs to group i iff its label is in group i."""
    if len(groups) < 2:
        raise GroupingError("at least two groups are required")
    present = set(cloud.labels)
    out = []
    for k, group in enumerate(groups):
        labels = set(group)
        missing = labels - present
        if missing:
            raise GroupingError(f"group {k} ({','.join(sorted(labels))}): "
                                f"labels not in cloud: {','.join(sorted(missing))}")
        ids = frozenset(i for i, lab in enumerate(cloud.labels) if lab in labels)
        if not ids:
            raise GroupingError(f"group {k} ({','.join(sorted(labels))}) selects no points")
        out.append(ids)
    return out


def distance_matrix(cloud: PointCloud | np.ndarray) -> np.ndarray:
    """Euclidean distances, symmetric with an exactly zero diagonal."""
    x = cloud.coords if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=np.float64)
    diff = x[:, None, :] - x[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # (a-b)^2 == (b-a)^2 bitwise, but keep the contract explicit
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    d.setflags(write=False)
    return d
