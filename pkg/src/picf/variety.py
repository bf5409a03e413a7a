"""Integer points on the (1,l) periodic-continued-fraction varieties of sqrt(m).

A point ``(b1; a1..al)`` lies on the variety when the E-matrix of
``[b1; (a1..al)]`` fixes ``sqrt(m)`` as a Moebius map, i.e. ``E11 == E22``
and ``E12 == m * E21``. Points with some ``ai == 0`` are degenerate and are
never returned.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arith import is_square
from .cf import PCF, pcf_matrix, word_matrix
from .errors import InvalidInputError
from .families import Family, family_witnesses, m3_head

SUPPORTED_LENGTHS = (1, 2, 3)


@dataclass(frozen=True, order=True)
class VarietyPoint:
    b1: int
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))

    @classmethod
    def of(cls, *coords: int) -> VarietyPoint:
        return cls(coords[0], coords[1:])

    def __neg__(self) -> VarietyPoint:
        return VarietyPoint(-self.b1, tuple(-x for x in self.a))

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.b1, *self.a)

    @property
    def nondegenerate(self) -> bool:
        return all(self.a)

    def as_pcf(self) -> PCF:
        return PCF((self.b1,), self.a)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


def _check_length(l: int) -> None:
    if l not in SUPPORTED_LENGTHS:
        raise InvalidInputError(f"period length {l} not supported (use 1, 2 or 3)")


def _check_radicand(m: int) -> None:
    if m < 2 or is_square(m):
        raise InvalidInputError(f"m must be a non-square integer >= 2, got {m}")


def variety_residuals(m: int, pt: VarietyPoint) -> tuple[int, int]:
    """``(E11 - E22, E12 - m*E21)``; both vanish exactly on the variety."""
    _check_length(len(pt.a))
    E = pcf_matrix(pt.as_pcf())
    return E.e11 - E.e22, E.e12 - m * E.e21


def _orbit(*coords: int) -> set[VarietyPoint]:
    p = VarietyPoint.of(*coords)
    return {p, -p}


def enumerate_points(m: int, l: int) -> list[VarietyPoint]:
    """Non-degenerate integer points from the closed-form parametrizations, sorted."""
    _check_radicand(m)
    _check_length(l)
    pts: set[VarietyPoint] = set()
    if l == 1:
        for _, t in family_witnesses(m, Family.M1):
            pts |= _orbit(t, 2 * t)
    elif l == 2:
        for s, t in family_witnesses(m, Family.M2):
            pts |= _orbit(s * t, 2 * s, 2 * s * t)
        for s, t in family_witnesses(m, Family.M2P):
            pts |= _orbit(s * t, s, 2 * s * t)
    else:
        for s, t in family_witnesses(m, Family.M3):
            if s != 0:
                y = m3_head(s, t)
                pts |= _orbit(y, 2 * s, 2 * s, 2 * y)
            elif t != 0:
                pts |= _orbit(t - 2, 1, -2, 2 * t - 1)
                pts |= _orbit(t - 1, 2, -1, 2 * t + 1)
            if abs(s) == 1:
                u = s * t
                pts |= _orbit(5 * u + 2, -2, 3, 10 * u + 3)
                pts |= _orbit(5 * u + 1, 3, -2, 10 * u + 3)
    return sorted(p for p in pts if p.nondegenerate)


# --- brute-force oracle -------------------------------------------------------
#
# Every E-matrix entry is affine in the last period term a_l, so the box search
# runs over (b1, a1..a_{l-1}) and solves E11 - E22 = 0 for a_l exactly.
# The inner (a1..a_{l-1}) grid is vectorized with numpy for each b1.


def _dtype_for(m: int, l: int, bound: int):
    worst = (bound + 1) ** (l + 3) * (m + 1)
    return np.int64 if worst < 2**62 else object


def _entries(b1: int, cols: list, last, shape, dtype):
    E = word_matrix([b1, *cols, last, 0, -b1, 0])
    return [np.broadcast_to(np.asarray(x, dtype=dtype), shape) for x in (E.e11, E.e12, E.e21, E.e22)]


def _search_rows(m: int, l: int, bound: int, b1_values: list[int]) -> list[tuple[int, ...]]:
    dtype = _dtype_for(m, l, bound)
    if l > 1:
        vals = np.array([v for v in range(-bound, bound + 1) if v != 0], dtype=dtype)
        grids = np.meshgrid(*([vals] * (l - 1)), indexing="ij")
        cols = [g.ravel() for g in grids]
        shape = cols[0].shape
    else:
        cols, shape = [], (1,)
    found: list[tuple[int, ...]] = []
    for b1 in b1_values:
        f0 = _entries(b1, cols, 0, shape, dtype)
        f1 = _entries(b1, cols, 1, shape, dtype)
        c0 = f0[0] - f0[3]
        c1 = (f1[0] - f1[3]) - c0
        d0 = f0[1] - m * f0[2]
        d1 = (f1[1] - m * f1[2]) - d0

        nz = c1 != 0
        safe = np.where(nz, c1, 1)
        a_last = -c0 // safe
        ok = nz & (a_last * c1 == -c0) & (a_last != 0) & (abs(a_last) <= bound)
        ok &= d0 + a_last * d1 == 0
        for i in np.flatnonzero(ok):
            found.append((b1, *(int(c[i]) for c in cols), int(a_last[i])))

        # rows where E11 - E22 does not depend on a_l and already vanishes
        for i in np.flatnonzero(~nz & (c0 == 0)):
            prefix = (b1, *(int(c[i]) for c in cols))
            e0, e1 = int(d0[i]), int(d1[i])
            if e1 != 0:
                if e0 % e1 == 0 and 0 < abs(-e0 // e1) <= bound:
                    found.append((*prefix, -e0 // e1))
            elif e0 == 0:
                found.extend((*prefix, a) for a in range(-bound, bound + 1) if a != 0)
    return found


def brute_force_points(m: int, l: int, bound: int, workers: int = 1) -> list[VarietyPoint]:
    """All non-degenerate points with every coordinate in ``[-bound, bound]``, sorted.

    ``workers > 1`` partitions the ``b1`` range across processes; the result
    does not depend on the partition.
    """
    _check_length(l)
    if bound < 1:
        raise InvalidInputError(f"bound must be >= 1, got {bound}")
    b1_all = list(range(-bound, bound + 1))
    if workers <= 1:
        rows = _search_rows(m, l, bound, b1_all)
    else:
        chunks = [b1_all[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(_search_rows, [m] * workers, [l] * workers, [bound] * workers, chunks)
            rows = [r for part in parts for r in part]
    return sorted({VarietyPoint.of(*r) for r in rows})
