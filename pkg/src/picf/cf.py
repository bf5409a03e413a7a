"""Continued-fraction words, the D-matrix calculus and periodic continued fractions.

A word ``[c1, ..., cn]`` is encoded by ``M = D(c1) D(c2) ... D(cn)`` with
``D(a) = [[a, 1], [1, 0]]``; its first column holds the last convergent.
Matrix entries only need ``+`` and ``*``, so the same code runs over plain
integers, tower-ring elements and numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import islice
from typing import Any, Iterator, Sequence

from .arith import Surd, squarefree_decompose
from .errors import DegenerateValueError, DivergenceError, InvalidInputError


@dataclass(frozen=True)
class Mat2:
    e11: Any
    e12: Any
    e21: Any
    e22: Any

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self):
        return self.e11 + self.e22

    def rows(self) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
        return ((self.e11, self.e12), (self.e21, self.e22))


def D(a) -> Mat2:
    return Mat2(a, 1, 1, 0)


def word_matrix(terms: Sequence) -> Mat2:
    """Product ``D(c1) ... D(cn)``; the empty word gives the identity."""
    return reduce(lambda acc, c: acc @ D(c), terms, Mat2.identity())


@dataclass(frozen=True)
class PCF:
    """``[preperiod..., (period...) repeated]``. Zero and negative terms are allowed."""

    preperiod: tuple[int, ...] = field(default=())
    period: tuple[int, ...] = field(default=(1,))

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise InvalidInputError("period must be non-empty")

    def terms(self) -> Iterator:
        yield from self.preperiod
        while True:
            yield from self.period

    def __str__(self) -> str:
        per = ", ".join(map(str, self.period))
        if not self.preperiod:
            return f"[({per})]"
        pre = ", ".join(map(str, self.preperiod))
        return f"[{pre}; ({per})]"


def unroll(p: PCF, n: int) -> tuple:
    """First ``n`` terms of the infinite term stream."""
    if n < 1:
        raise InvalidInputError(f"unroll needs n >= 1, got {n}")
    return tuple(islice(p.terms(), n))


def pcf_matrix(p: PCF) -> Mat2:
    """The E-matrix: the period word conjugated by the pre-period.

    With a pre-period ``y1..yN`` this is ``M([y1..yN, x1..xl, 0, -yN..-y1, 0])``,
    i.e. ``M(pre) M(period) M(pre)**-1``.
    """
    if not p.preperiod:
        return word_matrix(p.period)
    back = tuple(-y for y in reversed(p.preperiod))
    return word_matrix(p.preperiod + p.period + (0,) + back + (0,))


def convergents(p: PCF, upto: int) -> list[tuple[int, int]]:
    """``(p_n, q_n)`` for ``n = 0..upto``, index 0 being the first emitted term."""
    if upto < 0:
        raise InvalidInputError(f"upto must be >= 0, got {upto}")
    out = []
    p1, q1, p0, q0 = 1, 0, 0, 1
    for a in islice(p.terms(), upto + 1):
        p1, q1, p0, q0 = a * p1 + p0, a * q1 + q0, p1, q1
        out.append((p1, q1))
    return out


@dataclass(frozen=True)
class ConvergenceReport:
    matrix: Mat2
    cond1: bool
    shifts: tuple[tuple[int, int], ...]  # (M21, M22) of each cyclic shift of the period
    cond2: bool
    trace_term: int  # (-1)**l * Tr(E)**2
    cond3: bool

    @property
    def converges(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    @property
    def verdict(self) -> str:
        return "converges" if self.converges else "rejected"


def convergence_check(p: PCF) -> ConvergenceReport:
    """Three-condition convergence certificate for a periodic integer continued fraction.

    Condition 3 accepts ``(-1)**l Tr(E)**2 < 0`` or ``>= 4``.
    """
    E = pcf_matrix(p)
    per = p.period
    l = len(per)
    cond1 = not (E.e12 == 0 and E.e21 == 0 and E.e11 == E.e22 and E.e11 in (1, -1))
    shifts = []
    for j in range(l):
        M = word_matrix(per[j:] + per[:j])
        shifts.append((M.e21, M.e22))
    cond2 = all(m21 != 0 or abs(m22) <= 1 for m21, m22 in shifts)
    tr = E.trace()
    term = (-1) ** l * tr * tr
    cond3 = term < 0 or term >= 4
    return ConvergenceReport(E, cond1, tuple(shifts), cond2, term, cond3)


def dominant_eigenvalue(E: Mat2) -> Surd:
    """Eigenvalue of an integer matrix with ``|lambda| >= 1`` (exact comparison).

    For the parabolic case both eigenvalues are equal and either is returned.
    """
    tr, det = E.trace(), E.det()
    disc = tr * tr - 4 * det
    if disc < 0:
        raise DivergenceError(f"elliptic matrix (discriminant {disc})")
    if disc == 0:
        return Surd(Fraction(tr, 2))
    k, core = squarefree_decompose(disc)
    lam = Surd(tr, k, core) / 2
    other = Surd(tr, -k, core) / 2
    if (lam * lam - 1).sign() >= 0:
        return lam
    return other


def pcf_eigenvalue(p: PCF) -> Surd:
    return dominant_eigenvalue(pcf_matrix(p))


def pcf_value(p: PCF) -> Surd:
    """Exact value ``(lambda_+ - E22) / E21`` of a convergent PCF."""
    report = convergence_check(p)
    if not report.converges:
        raise DivergenceError(f"{p} fails the convergence certificate")
    E = report.matrix
    if E.e21 == 0:
        raise DegenerateValueError(f"{p}: E21 = 0, eigenvalue formula does not apply")
    lam = dominant_eigenvalue(E)
    return (lam - E.e22) / E.e21
