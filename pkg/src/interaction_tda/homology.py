"""Betti numbers, persistence barcodes, Wu characteristic and bottleneck distance."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .interaction import GradedBasis
from .sparse import rank, reduce_columns


def betti(basis: GradedBasis, field: str = "q") -> tuple[int, ...]:
    """Interaction Betti numbers beta_p = dim IC_p - rank B_p - rank B_{p+1}.

    Only degrees up to ``basis.exact_degree`` are returned; above that the
    basis was cut off and the numbers would be meaningless.
    """
    top = basis.exact_degree
    ranks = [rank(basis.boundary_matrix(p), field) for p in range(top + 2)]
    out = tuple(basis.dim(p) - ranks[p] - ranks[p + 1] for p in range(top + 1))
    assert all(b >= 0 for b in out), out
    return out


@dataclass(frozen=True)
class Barcode:
    """Half-open bars ``[birth, death)`` per degree; death may be ``math.inf``."""

    bars: dict[int, list[tuple[float, float]]]
    max_degree: int = -1
    field: str = "q"

    def __post_init__(self):
        clean = {}
        for p, bs in self.bars.items():
            for b, d in bs:
                if d < b:
                    raise ValueError(f"bar [{b}, {d}) has death before birth")
            clean[int(p)] = sorted((float(b), float(d)) for b, d in bs)
        top = max(clean, default=-1)
        object.__setattr__(self, "bars", clean)
        object.__setattr__(self, "max_degree", max(self.max_degree, top))

    def degree(self, p: int) -> list[tuple[float, float]]:
        return self.bars.get(p, [])

    def __len__(self) -> int:
        return sum(len(b) for b in self.bars.values())

    def endpoints(self) -> set[float]:
        return {x for bs in self.bars.values() for bar in bs for x in bar}

    def alive(self, p: int, t: float) -> int:
        return sum(1 for b, d in self.degree(p) if b <= t < d)

    def to_json(self) -> list[dict]:
        return [
            {"degree": p, "field": self.field,
             "bars": [{"birth": b, "death": "inf" if math.isinf(d) else d} for b, d in self.degree(p)]}
            for p in range(self.max_degree + 1)
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "Barcode":
        bars, fld = {}, "q"
        for entry in data:
            fld = entry.get("field", fld)
            bars[entry["degree"]] = [
                (bar["birth"], math.inf if bar["death"] == "inf" else bar["death"]) for bar in entry["bars"]
            ]
        top = max(bars, default=-1)
        return cls(bars, top, fld)

    def to_csv(self, degree: int | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "birth", "death"])
        degrees = range(self.max_degree + 1) if degree is None else [degree]
        for p in degrees:
            for b, d in self.degree(p):
                w.writerow([p, repr(b), "inf" if math.isinf(d) else repr(d)])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _global_order(basis: GradedBasis):
    cells = [(c.birth, p, c.dims, c.factors, i) for p in range(basis.top_degree + 1)
             for i, c in enumerate(basis.cells(p))]
    cells.sort()
    return [(p, i, birth) for birth, p, _, _, i in cells]


def persistent_barcode(basis: GradedBasis, field: str = "q") -> Barcode:
    """Persistence of the filtration by cell birth, via column reduction.

    Columns follow (birth, degree, factor order). Zero-length bars are paired
    internally but left out of the result. Degrees above ``basis.exact_degree``
    are dropped because their deaths are unknown.
    """
    order = _global_order(basis)
    pos = {(p, i): k for k, (p, i, _) in enumerate(order)}
    columns = []
    for p, i, _ in order:
        if p == 0:
            columns.append({})
            continue
        col = basis.boundary_matrix(p).columns[i]
        columns.append({pos[(p - 1, r)]: v for r, v in col.items()})
    lows, _ = reduce_columns(columns, field)

    top = basis.exact_degree
    bars: dict[int, list[tuple[float, float]]] = {p: [] for p in range(top + 1)}
    killed = set()
    for j, low in enumerate(lows):
        if low < 0:
            continue
        killed.add(low)
        p, _, b = order[low]
        d = order[j][2]
        if d > b and p <= top:
            bars[p].append((b, d))
    for k, (p, _, b) in enumerate(order):
        if lows[k] < 0 and k not in killed and p <= top:
            bars[p].append((b, math.inf))
    return Barcode(bars, top, field)


def persistent_betti(barcode: Barcode, a: float, b: float, p: int) -> int:
    """Bars of degree p alive on all of [a, b]: birth <= a and death > b."""
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    return sum(1 for s, d in barcode.degree(p) if s <= a and d > b)


@dataclass(frozen=True)
class WuReport:
    omega: int
    pair_counts: tuple[int, ...]
    betti_alternating_sum: int
    betti: tuple[int, ...] = field(default=())

    @property
    def consistent(self) -> bool:
        return self.omega == self.betti_alternating_sum

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "pair_counts": list(self.pair_counts),
            "betti": list(self.betti),
            "betti_alternating_sum": self.betti_alternating_sum,
            "consistent": self.consistent,
        }


class UnsupportedInput(ValueError):
    pass


def wu_characteristic(basis: GradedBasis, betti_numbers=None) -> WuReport:
    """Wu characteristic of K from the self-interaction basis of (K, K).

    Intersecting pairs (s, t) of K are exactly the cells of the basis, counted
    by total dimension.
    """
    if basis.n_factors != 2:
        raise UnsupportedInput("the Wu characteristic needs exactly two factors")
    ks = basis.complexes
    if ks is None or set(ks[0].births) != set(ks[1].births):
        raise UnsupportedInput("the Wu characteristic needs K1 == K2")
    if not basis.complete:
        raise UnsupportedInput("the Wu characteristic needs an untruncated basis")
    if betti_numbers is None:
        betti_numbers = betti(basis)
    counts = tuple(basis.dims())
    omega = sum((-1) ** k * c for k, c in enumerate(counts))
    alt = sum((-1) ** k * b for k, b in enumerate(betti_numbers))
    return WuReport(omega, counts, alt, tuple(betti_numbers))


def _finite_and_infinite(bars):
    fin = np.array([(b, d) for b, d in bars if math.isfinite(d)], dtype=float).reshape(-1, 2)
    inf = sorted(b for b, d in bars if not math.isfinite(d))
    return fin, inf


def _matchable(a: np.ndarray, b: np.ndarray, delta: float) -> bool:
    """Perfect matching of a and b (with diagonal copies) using edges of cost <= delta."""
    n, m = len(a), len(b)
    size = n + m
    if size == 0:
        return True
    pa = (a[:, 1] - a[:, 0]) / 2 if n else np.zeros(0)
    pb = (b[:, 1] - b[:, 0]) / 2 if m else np.zeros(0)
    adj = np.zeros((size, size), dtype=bool)
    # left: a points then diagonal slots for b; right: b points then diagonal slots for a
    if n and m:
        cost = np.maximum(np.abs(a[:, None, 0] - b[None, :, 0]), np.abs(a[:, None, 1] - b[None, :, 1]))
        adj[:n, :m] = cost <= delta
    adj[np.arange(n), m + np.arange(n)] = pa <= delta
    adj[n + np.arange(m), np.arange(m)] = pb <= delta
    adj[n:, m:] = True
    match = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck_distance(bc1: Barcode, bc2: Barcode, p: int) -> float:
    """Bottleneck distance between the degree-p diagrams (L-infinity ground metric).

    Infinite bars are matched only to infinite bars; unequal counts give inf.
    """
    fa, ia = _finite_and_infinite(bc1.degree(p))
    fb, ib = _finite_and_infinite(bc2.degree(p))
    if len(ia) != len(ib):
        return math.inf
    # sorted order is an optimal bottleneck matching on the line
    inf_cost = max((abs(x - y) for x, y in zip(ia, ib)), default=0.0)

    cands = {0.0}
    if len(fa):
        cands.update(((fa[:, 1] - fa[:, 0]) / 2).tolist())
    if len(fb):
        cands.update(((fb[:, 1] - fb[:, 0]) / 2).tolist())
    if len(fa) and len(fb):
        cands.update(np.abs(fa[:, None, 0] - fb[None, :, 0]).ravel().tolist())
        cands.update(np.abs(fa[:, None, 1] - fb[None, :, 1]).ravel().tolist())
    cands = sorted(cands)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _matchable(fa, fb, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(inf_cost, cands[lo])


def bottleneck_bruteforce(bc1: Barcode, bc2: Barcode, p: int) -> float:
    """Reference bottleneck distance by enumerating thresholds with an assignment solver.

    Independent of :func:`bottleneck_distance`'s matching routine; meant for tests
    on small diagrams.
    """
    fa, ia = _finite_and_infinite(bc1.degree(p))
    fb, ib = _finite_and_infinite(bc2.degree(p))
    if len(ia) != len(ib):
        return math.inf
    inf_cost = max((abs(x - y) for x, y in zip(ia, ib)), default=0.0)
    n, m = len(fa), len(fb)
    if n + m == 0:
        return inf_cost
    big = 1e18
    c = np.zeros((n + m, n + m))
    if n and m:
        c[:n, :m] = np.maximum(np.abs(fa[:, None, 0] - fb[None, :, 0]), np.abs(fa[:, None, 1] - fb[None, :, 1]))
    c[:n, m:] = big
    c[n:, :m] = big
    for i in range(n):
        c[i, m + i] = (fa[i, 1] - fa[i, 0]) / 2
    for j in range(m):
        c[n + j, j] = (fb[j, 1] - fb[j, 0]) / 2
    best = math.inf
    for t in sorted(set(c[c < big].ravel().tolist())):
        mask = np.where(c <= t, 0.0, 1.0)
        r, k = linear_sum_assignment(mask)
        if mask[r, k].sum() == 0:
            best = t
            break
    return max(inf_cost, best)
