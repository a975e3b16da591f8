"""Deterministic synthetic molecules for smoke tests and benchmarks.

These are geometric stand-ins with the right atom counts, not optimized
structures.
"""

from __future__ import annotations

import numpy as np

from .geometry import PointCloud


def _fibonacci_sphere(n: int, radius: float) -> np.ndarray:
    k = np.arange(n) + 0.5
    phi = np.arccos(1 - 2 * k / n)
    theta = np.pi * (1 + 5 ** 0.5) * k
    return radius * np.column_stack([np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)])


def carborane_like(n: int) -> PointCloud:
    """C2B(n-2)H(n) cage: n cage atoms on a sphere, one H pointing out from each.

    The two carbons sit at the poles of the point ordering (first and last).
    """
    if n < 5:
        raise ValueError("closo-carboranes start at n = 5")
    radius = 0.55 * n ** 0.5
    cage = _fibonacci_sphere(n, radius)
    hydrogens = cage * (1 + 1.19 / radius)
    labels = ["C"] + ["B"] * (n - 2) + ["C"] + ["H"] * n
    return PointCloud(np.vstack([cage, hydrogens]), tuple(labels), comment=f"synthetic C2B{n - 2}H{n}")


def chlorophyll_like(seed: int = 0) -> PointCloud:
    """C55H72O5N4Mg-sized cloud: Mg at the origin, four N around it, the rest jittered outside."""
    rng = np.random.default_rng(seed)
    mg = np.zeros((1, 3))
    n = 2.05 * np.array([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]], dtype=float)
    others = []
    counts = [("C", 55), ("O", 5), ("H", 72)]
    placed = [*mg, *n]
    for _, k in counts:
        for _ in range(k):
            while True:
                r = rng.uniform(3.0, 9.0)
                ang = rng.uniform(0, 2 * np.pi)
                p = np.array([r * np.cos(ang), r * np.sin(ang), rng.normal(0, 0.8)])
                if min(np.linalg.norm(p - q) for q in placed) > 1.0:
                    break
            placed.append(p)
            others.append(p)
    labels = ["Mg"] + ["N"] * 4 + [lab for lab, k in counts for _ in range(k)]
    coords = np.vstack([mg, n, np.array(others)])
    return PointCloud(coords, tuple(labels), comment="synthetic C55H72O5N4Mg")
