"""Dehn p-colorings: region colorings satisfying the crossing condition mod p."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .diagram import Diagram

DEFAULT_CAP = int(os.environ.get("DEHNCOLOR_CAP", 10**6))
BRUTE_FORCE_GUARD = 10**7

Coloring = tuple[int, ...]


class ColoringError(ValueError):
    pass


class CapExceeded(ColoringError):
    def __init__(self, count: int, cap: int, what: str = "colorings"):
        super().__init__(f"{count} {what} exceed the cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class CrossingEquation:
    crossing: str
    coeffs: tuple[tuple[int, int], ...]  # (region, coefficient), nonzero, sorted

    def evaluate(self, colors: Sequence[int]) -> int:
        return sum(c * colors[r] for r, c in self.coeffs)


def crossing_equation(d: Diagram, crossing_id: str, start: int = 0) -> CrossingEquation:
    """r1 - r2 + r3 - r4 with r1 the corner after dart ``start``.

    r2 shares an under-arc with r1, r3 shares the over-arc with r1 and r4 is
    the opposite corner.
    """
    x = d.node(crossing_id)
    q = d.corners(crossing_id)
    j = start % 4
    if (j + 1) % 2 == x.over:
        r2, r3 = q[(j - 1) % 4], q[(j + 1) % 4]
    else:
        r2, r3 = q[(j + 1) % 4], q[(j - 1) % 4]
    acc: dict[int, int] = {}
    for region, c in ((q[j], 1), (r2, -1), (r3, 1), (q[(j + 2) % 4], -1)):
        acc[region] = acc.get(region, 0) + c
    return CrossingEquation(x.id, tuple(sorted((r, c) for r, c in acc.items() if c)))


def build_system(d: Diagram) -> list[CrossingEquation]:
    return [crossing_equation(d, x.id) for x in d.crossings]


def system_matrix(d: Diagram) -> list[list[int]]:
    rows = []
    for eq in build_system(d):
        row = [0] * d.num_regions
        for r, c in eq.coeffs:
            row[r] = c
        rows.append(row)
    return rows


def diagonalize(matrix: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Reduce an integer matrix to diagonal form by unimodular row/column moves.

    Returns ``(diag, V)`` with ``U @ M @ V = D``, ``diag`` the
    ``min(rows, cols)`` diagonal entries of D and V the accumulated
    column transform (U is not tracked).
    """
    a = [list(r) for r in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(src, dst, k):  # col[dst] += k * col[src]
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            a[t], a[i] = a[i], a[t]
            swap_cols(t, j)
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                k = a[i][t] // p
                if k:
                    a[i] = [x - k * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                k = a[t][j] // p
                if k:
                    add_col(t, j, -k)
                if a[t][j]:
                    done = False
            if done:
                break
    diag = [a[i][i] for i in range(min(m, n))]
    return diag, v


def _solution_factors(d: Diagram, p: int):
    rows = system_matrix(d)
    n = d.num_regions
    if not rows:
        return [], [[int(i == j) for j in range(n)] for i in range(n)], n
    diag, v = diagonalize(rows)
    return diag, v, n


def count_colorings(d: Diagram, p: int) -> int:
    """Exact number of Dehn p-colorings, valid for composite p."""
    diag, _, n = _solution_factors(d, p)
    count = p ** (n - len(diag))
    for x in diag:
        count *= math.gcd(x, p)
    return count


def _solutions_array(d: Diagram, p: int, cap: int) -> np.ndarray:
    diag, v, n = _solution_factors(d, p)
    choices = []
    for i in range(n):
        if i < len(diag):
            step = p // math.gcd(diag[i], p)
            choices.append(np.arange(0, p, step, dtype=np.int64))
        else:
            choices.append(np.arange(p, dtype=np.int64))
    total = math.prod(len(c) for c in choices)
    if total > cap:
        raise CapExceeded(total, cap)
    # cartesian product, built column by column (meshgrid caps out at 32 dims)
    y = np.zeros((1, 0), dtype=np.int64)
    for c in choices:
        y = np.concatenate([np.repeat(y, len(c), axis=0),
                            np.tile(c, len(y))[:, None]], axis=1)
    if n == 0:
        return y
    vmod = np.array(v, dtype=object) % p
    x = (y @ vmod.astype(np.int64).T) % p
    order = np.lexsort(x.T[::-1])
    return x[order]


def enumerate_colorings(d: Diagram, p: int, cap: int = DEFAULT_CAP) -> Iterator[Coloring]:
    """All Dehn p-colorings in lexicographic order of region colors."""
    for row in _solutions_array(d, p, cap):
        yield tuple(int(c) for c in row)


def colorings_array(d: Diagram, p: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    return _solutions_array(d, p, cap)


def is_coloring(d: Diagram, p: int, c: Sequence[int] | Mapping[int, int]) -> bool:
    colors = []
    for r in range(d.num_regions):
        try:
            colors.append(c[r])
        except (KeyError, IndexError):
            raise ColoringError(f"coloring is missing region {r}") from None
    return all(eq.evaluate(colors) % p == 0 for eq in build_system(d))


def brute_force_count(d: Diagram, p: int, guard: int = BRUTE_FORCE_GUARD) -> int:
    """Count colorings by trying every assignment; independent of the solver."""
    n = d.num_regions
    total = p ** n
    if total > guard:
        raise CapExceeded(total, guard, "assignments")
    eqs = build_system(d)
    count = 0
    chunk = 1 << 16
    powers = p ** np.arange(n, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        colors = (idx[:, None] // powers[None, :]) % p
        ok = np.ones(len(idx), dtype=bool)
        for eq in eqs:
            s = np.zeros(len(idx), dtype=np.int64)
            for r, c in eq.coeffs:
                s += c * colors[:, r]
            ok &= (s % p) == 0
        count += int(ok.sum())
    return count
