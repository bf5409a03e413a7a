"""The four parametric radicand families and their closed-form expansions.

    M1(t)   = t^2 + 1
    M2(s,t) = s^2 t^2 + t
    M2P(s,t)= s^2 t^2 + 2t
    M3(s,t) = (4s^2+1)^2 t^2 + 2s(4s^2+3) t + s^2 + 1

``M1`` ignores ``s``; witnesses for it are reported with ``s = 0``. For M2 and
M2P only ``s, t != 0`` count as witnesses, since ``s = 0`` reduces both to a
linear polynomial in ``t`` with no expansion attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arith import is_square, isqrt
from .cf import PCF
from .errors import InvalidInputError


class Family(str, Enum):
    M1 = "M1"
    M2 = "M2"
    M2P = "M2P"
    M3 = "M3"


def family_eval(fam: Family | str, s: int, t: int) -> int:
    fam = Family(fam)
    if fam is Family.M1:
        return t * t + 1
    if fam is Family.M2:
        return s * s * t * t + t
    if fam is Family.M2P:
        return s * s * t * t + 2 * t
    u = 4 * s * s + 1
    return u * u * t * t + 2 * s * (4 * s * s + 3) * t + s * s + 1


def integer_roots(a: int, b: int, c: int) -> list[int]:
    """Integer roots of ``a x^2 + b x + c`` (``a != 0``), ascending, without repeats."""
    disc = b * b - 4 * a * c
    if disc < 0 or not is_square(disc):
        return []
    r = isqrt(disc)
    roots = set()
    for num in (-b + r, -b - r):
        if num % (2 * a) == 0:
            roots.add(num // (2 * a))
    return sorted(roots)


def m3_head(s: int, t: int) -> int:
    """Pre-period term ``s + (4s^2+1)t`` of the main period-3 expansion."""
    return s + (4 * s * s + 1) * t


def family_witnesses(m: int, fam: Family | str) -> list[tuple[int, int]]:
    """Integer ``(s, t)`` in the family's parameter domain with ``family_eval(fam, s, t) == m``, sorted."""
    fam = Family(fam)
    if m < 1:
        raise InvalidInputError(f"m must be positive, got {m}")
    out: set[tuple[int, int]] = set()
    if fam is Family.M1:
        if is_square(m - 1):
            r = isqrt(m - 1)
            out.update({(0, r), (0, -r)})
    elif fam in (Family.M2, Family.M2P):
        k = 1 if fam is Family.M2 else 2
        # |t| >= 1 forces s^2 <= (m + |t|) / t^2 <= m + 1
        bound = isqrt(m) + 1
        for s in range(1, bound + 1):
            for t in integer_roots(s * s, k, -m):
                if t != 0:
                    out.update({(s, t), (-s, t)})
    else:
        # t = 0 leaves m = s^2 + 1, unbounded in s relative to the sweep below
        if is_square(m - 1):
            r = isqrt(m - 1)
            out.update({(r, 0), (-r, 0)})
        # for t != 0 the quadratic grows like 16 s^4 t^2
        bound = isqrt(isqrt(16 * m)) + 2
        for s in range(-bound, bound + 1):
            u = 4 * s * s + 1
            for t in integer_roots(u * u, 2 * s * (4 * s * s + 3), s * s + 1 - m):
                out.add((s, t))
    return sorted(p for p in out if family_eval(fam, *p) == m)


@dataclass(frozen=True)
class FamilyExpansion:
    """A closed-form expansion whose value is ``sign * sqrt(m)``."""

    sign: int
    pcf: PCF
    form: str
    minimal: bool = True


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def check_parameters(fam: Family | str, s: int, t: int) -> int:
    """Validate parameters for :func:`family_picf` and return the family value."""
    fam = Family(fam)
    m = family_eval(fam, s, t)
    if m <= 0:
        raise InvalidInputError(f"{fam.value}({s},{t}) = {m} is not positive")
    if fam is Family.M1 and t == 0:
        raise InvalidInputError("M1 needs t != 0")
    if fam in (Family.M2, Family.M2P) and (s == 0 or t == 0):
        raise InvalidInputError(f"{fam.value} needs s, t != 0")
    if fam is Family.M3 and s == 0 and t == 0:
        raise InvalidInputError("M3 needs (s, t) != (0, 0)")
    return m


def family_picf(fam: Family | str, s: int, t: int) -> list[FamilyExpansion]:
    """Closed-form (1,l)-type expansions of ``+-sqrt(family_eval(fam, s, t))``.

    M3 returns the main form for ``s != 0`` (flagged non-minimal when ``t == 0``
    and the period collapses to ``[2s]``), the two ``s = 0`` forms when ``s == 0``,
    and additionally the two ``|s| = 1`` forms when ``|s| == 1``.
    """
    fam = Family(fam)
    check_parameters(fam, s, t)
    if fam is Family.M1:
        return [FamilyExpansion(_sgn(t), PCF((t,), (2 * t,)), "main")]
    if fam is Family.M2:
        return [FamilyExpansion(_sgn(s * t), PCF((s * t,), (2 * s, 2 * s * t)), "main")]
    if fam is Family.M2P:
        return [FamilyExpansion(_sgn(s * t), PCF((s * t,), (s, 2 * s * t)), "main")]

    out = []
    if s != 0:
        y = m3_head(s, t)
        out.append(FamilyExpansion(_sgn(y), PCF((y,), (2 * s, 2 * s, 2 * y)), "main", minimal=t != 0))
    if s == 0:
        sg = _sgn(t)
        out.append(FamilyExpansion(sg, PCF((t - 2,), (1, -2, 2 * t - 1)), "s0-a"))
        out.append(FamilyExpansion(sg, PCF((t - 1,), (2, -1, 2 * t + 1)), "s0-b"))
    if abs(s) == 1:
        # M3(-1, t) = M3(1, -t): both forms are written in the parameter of M3(1, .)
        u = s * t
        sg = 1 if u >= 0 else -1
        out.append(FamilyExpansion(sg, PCF((5 * u + 2,), (-2, 3, 10 * u + 3)), "s1-a"))
        out.append(FamilyExpansion(sg, PCF((5 * u + 1,), (3, -2, 10 * u + 3)), "s1-b"))
    return out


def family_rpcf(fam: Family | str, s: int, t: int) -> PCF:
    """Regular expansion of ``+sqrt(m)`` in the ranges not covered by the PICF itself.

    M2 and M2P need ``t < 0`` (``s`` enters only through ``|s|``); M3 needs
    ``t > 0`` and ``s < 0``.
    """
    fam = Family(fam)
    m = family_eval(fam, s, t)
    if fam is Family.M2 and t < 0 and s != 0 and m > 0:
        s = abs(s)
        if s >= 2:
            h = -s * t - 1
            return PCF((h,), (1, 2 * s - 2, 1, 2 * h))
        return PCF((-t - 1,), (2, -2 * t - 2))
    if fam is Family.M2P and t < 0 and s != 0 and m > 0:
        s = abs(s)
        if s >= 3:
            h = -s * t - 1
            return PCF((h,), (1, s - 2, 1, 2 * h))
        if s == 2:
            return PCF((-2 * t - 1,), (2, 2 * (-2 * t - 1)))
        return PCF((-t - 2,), (1, 2 * (-t - 2)))
    if fam is Family.M3 and t > 0 and s < 0:
        h = m3_head(s, t) - 1
        return PCF((h,), (1, -2 * s - 1, -2 * s - 1, 1, 2 * h))
    raise InvalidInputError(f"no regular closed form for {fam.value}({s},{t})")
