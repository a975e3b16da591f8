"""Simplices, filtered simplicial complexes and Vietoris-Rips filtrations.

A simplex is a strictly increasing tuple of point ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .geometry import ParseError

Simplex = tuple[int, ...]


def simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(sorted(set(int(v) for v in vertices)))
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    return s


def dim(s: Simplex) -> int:
    return len(s) - 1


def boundary_chain(s: Simplex) -> list[tuple[int, Simplex]]:
    """Signed faces ``[(+-1, face), ...]``; the j-th face drops the j-th vertex.

    Vertices have empty boundary.
    """
    if len(s) <= 1:
        return []
    return [(-1 if j % 2 else 1, s[:j] + s[j + 1:]) for j in range(len(s))]


def faces(s: Simplex) -> Iterable[Simplex]:
    """All nonempty proper faces."""
    for k in range(1, len(s)):
        yield from combinations(s, k)


def _sort_key(item):
    s, b = item
    return (b, len(s), s)


@dataclass(frozen=True)
class FilteredComplex:
    """A simplicial complex with a birth value per simplex.

    ``births`` maps simplex -> filtration value. The mapping is checked to be
    closed under faces and monotone (a face is born no later than its cofaces).
    """

    births: Mapping[Simplex, float]

    def __post_init__(self):
        births = {simplex(s): float(b) for s, b in self.births.items()}
        for s, b in births.items():
            if not np.isfinite(b):
                raise ValueError(f"invalid birth {b} for {s}")
            for j in range(len(s)) if len(s) > 1 else ():
                f = s[:j] + s[j + 1:]
                if f not in births:
                    raise ValueError(f"face {f} of {s} missing")
                if births[f] > b:
                    raise ValueError(f"face {f} born after {s}")
        object.__setattr__(self, "births", dict(sorted(births.items(), key=_sort_key)))

    def __len__(self) -> int:
        return len(self.births)

    def __contains__(self, s) -> bool:
        return s in self.births

    def __iter__(self):
        return iter(self.births)

    def birth(self, s: Simplex) -> float:
        return self.births[s]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(s[0] for s in self.births if len(s) == 1)

    @property
    def max_dim(self) -> int:
        return max((len(s) - 1 for s in self.births), default=-1)

    def simplices(self, p: int | None = None) -> list[Simplex]:
        if p is None:
            return list(self.births)
        return [s for s in self.births if len(s) == p + 1]

    def truncate(self, scale: float) -> "FilteredComplex":
        return FilteredComplex({s: b for s, b in self.births.items() if b <= scale})

    def skeleton(self, p: int) -> "FilteredComplex":
        return FilteredComplex({s: b for s, b in self.births.items() if len(s) <= p + 1})

    def relabel(self, mapping: Mapping[int, int]) -> "FilteredComplex":
        return FilteredComplex({simplex(mapping[v] for v in s): b for s, b in self.births.items()})

    def with_births(self, births: Mapping[Simplex, float]) -> "FilteredComplex":
        """Same simplices, new filtration values (must cover every simplex)."""
        return FilteredComplex({s: births[s] for s in self.births})


def from_simplices(simplices: Iterable[Iterable[int]], births: Mapping | None = None) -> FilteredComplex:
    """Close a list of simplices under faces.

    Without ``births`` everything is born at 0. With ``births`` (keyed by
    simplex, missing keys count as 0) a simplex is born at the max of its own
    value and its faces' births, so the result is always monotone.
    """
    closure: set[Simplex] = set()
    for s in simplices:
        s = simplex(s)
        closure.add(s)
        closure.update(faces(s))
    if births is None:
        return FilteredComplex({s: 0.0 for s in closure})
    given = {simplex(k): float(v) for k, v in births.items()}
    out: dict[Simplex, float] = {}
    for s in sorted(closure, key=len):
        b = given.get(s, 0.0)
        for j in range(len(s)) if len(s) > 1 else ():
            b = max(b, out[s[:j] + s[j + 1:]])
        out[s] = b
    return FilteredComplex(out)


def vr_filtration(ids: Iterable[int], dmat: np.ndarray, max_dim: int, max_scale: float) -> FilteredComplex:
    """Vietoris-Rips filtration on ``ids``.

    Contains every simplex of dimension <= max_dim whose diameter is <= max_scale;
    birth = diameter (0 for vertices).
    """
    ids = sorted(set(int(i) for i in ids))
    if not ids:
        raise ValueError("vr_filtration needs at least one point")
    if max_dim < 0 or max_scale < 0:
        raise ValueError("max_dim and max_scale must be nonnegative")
    dmat = np.asarray(dmat)
    # upper neighbours only: every clique is generated once from its smallest vertex
    nbrs = {v: [u for u in ids if u > v and dmat[v, u] <= max_scale] for v in ids}
    births: dict[Simplex, float] = {}

    def expand(s: Simplex, b: float, cands: list[int]):
        births[s] = b
        if len(s) > max_dim:
            return
        for k, u in enumerate(cands):
            bu = max(b, max(float(dmat[v, u]) for v in s))
            rest = [w for w in cands[k + 1:] if dmat[u, w] <= max_scale]
            expand(s + (u,), bu, rest)

    for v in ids:
        expand((v,), 0.0, nbrs[v])
    return FilteredComplex(births)


def parse_simplices(text: str) -> FilteredComplex:
    """Explicit complex file: one simplex per line as whitespace-separated vertex ids.

    Blank lines and ``#`` comments are skipped; faces are added automatically.
    """
    simplices = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            simplices.append([int(v) for v in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"expected integer vertex ids, got {line!r}", lineno) from None
    if not simplices:
        raise ParseError("complex file lists no simplices", 1)
    return from_simplices(simplices)
