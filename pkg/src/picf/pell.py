"""Regular expansion of sqrt(m), fundamental units of Z[sqrt(m)] and convergent checks."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_square, isqrt
from .cf import PCF, convergents
from .errors import InvalidInputError, NotAUnitError
from .families import Family, check_parameters, family_picf


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    norm: int


def _check_nonsquare(m: int) -> None:
    if m < 2 or is_square(m):
        raise InvalidInputError(f"m must be a non-square integer >= 2, got {m}")


def sqrt_rcf(m: int) -> PCF:
    """Regular periodic expansion ``[a0; (a1..al)]`` of sqrt(m) with minimal period.

    Uses the complete-quotient recurrence ``(P + sqrt(m)) / Q``; the period ends
    at the first repeated ``(P, Q)`` state.
    """
    _check_nonsquare(m)
    a0 = isqrt(m)
    P, Q, a = 0, 1, a0
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while True:
        P = a * Q - P
        Q = (m - P * P) // Q
        a = (a0 + P) // Q
        if (P, Q) in seen:
            start = seen[(P, Q)]
            return PCF((a0,), tuple(terms[start:]))
        seen[(P, Q)] = len(terms)
        terms.append(a)


def fundamental_solution(m: int) -> PellSolution:
    """``(p_{l-1}, q_{l-1})`` of the regular expansion, with its norm."""
    rcf = sqrt_rcf(m)
    x, y = convergents(rcf, len(rcf.period) - 1)[-1]
    return PellSolution(x, y, x * x - m * y * y)


def _unit_norm(m: int, x: int, y: int) -> int:
    n = x * x - m * y * y
    if n not in (1, -1):
        raise NotAUnitError(f"({x}, {y}) is not a unit of Z[sqrt({m})]: norm {n}")
    return n


def is_fundamental(m: int, x: int, y: int) -> bool:
    """True iff ``x + y sqrt(m)`` is one of ``+-eps, +-eps^-1`` for the fundamental unit eps."""
    _check_nonsquare(m)
    _unit_norm(m, x, y)
    f = fundamental_solution(m)
    return (abs(x), abs(y)) == (f.x, f.y)


def unit_power(m: int, x: int, y: int) -> int:
    """The ``k >= 0`` with ``|x| + |y| sqrt(m) = eps**k``."""
    _check_nonsquare(m)
    _unit_norm(m, x, y)
    f = fundamental_solution(m)
    target = (abs(x), abs(y))
    u, v, k = 1, 0, 0
    while (u, v) != target:
        if u > target[0]:
            raise AssertionError(f"unit {target} is not a power of {f}")
        u, v = u * f.x + m * v * f.y, u * f.y + v * f.x
        k += 1
    return k


def convergent_solution(p: PCF, index: int, m: int) -> PellSolution:
    """The convergent ``(p_index, q_index)`` as a unit of ``Z[sqrt(m)]``."""
    x, y = convergents(p, index)[-1]
    return PellSolution(x, y, _unit_norm(m, x, y))


def closed_form_solution(fam: Family | str, s: int, t: int) -> PellSolution:
    """The polynomial unit attached to each family, e.g. ``(2s^2 t + 1, 2s)`` for M2."""
    fam = Family(fam)
    m = check_parameters(fam, s, t)
    if fam is Family.M1:
        x, y = t, 1
    elif fam is Family.M2:
        x, y = 2 * s * s * t + 1, 2 * s
    elif fam is Family.M2P:
        x, y = s * s * t + 1, s
    else:
        x = 16 * t * s**4 + 4 * s**3 + 8 * t * s * s + 3 * s + t
        y = 4 * s * s + 1
    return PellSolution(x, y, x * x - m * y * y)


def predicted_fundamental(fam: Family | str, s: int, t: int) -> bool:
    """Whether the (l-1)th convergent of the closed-form PICF is claimed fundamental.

    M2 is claimed to fail exactly for ``|s| >= 2, t = -1``; M3 exactly at
    ``(s, t) in {(+-1, 0), (0, 0)}``; M1 and M2P never fail.
    """
    fam = Family(fam)
    if fam is Family.M2:
        return not (abs(s) >= 2 and t == -1)
    if fam is Family.M3:
        return (s, t) not in {(1, 0), (-1, 0), (0, 0)}
    return True


@dataclass(frozen=True)
class ConvergentCheck:
    form: str
    pcf: PCF
    index: int
    solution: PellSolution
    fundamental: bool
    power: int  # solution = +-eps**(+-power)


@dataclass(frozen=True)
class FundamentalityReport:
    family: Family
    s: int
    t: int
    m: int
    minimal_period: int
    fundamental: PellSolution
    checks: tuple[ConvergentCheck, ...]
    zeroth: ConvergentCheck | None
    predicted: bool
    agrees: bool
    erratum_candidate: str | None


def _convergent_check(form: str, p: PCF, index: int, m: int) -> ConvergentCheck:
    sol = convergent_solution(p, index, m)
    return ConvergentCheck(form, p, index, sol, is_fundamental(m, sol.x, sol.y), unit_power(m, sol.x, sol.y))


def check_convergent_fundamentality(fam: Family | str, s: int, t: int) -> FundamentalityReport:
    """Test the (l-1)th convergent of every closed-form PICF for fundamentality.

    The claimed predicate is never asserted: the report states whether the
    observation agrees, and describes the disagreement otherwise. For M2 the
    0th convergent is also checked; it is expected to be fundamental wherever
    the (l-1)th is not.
    """
    fam = Family(fam)
    m = check_parameters(fam, s, t)
    _check_nonsquare(m)
    rcf = sqrt_rcf(m)
    checks = tuple(
        _convergent_check(e.form, e.pcf, len(e.pcf.period) - 1, m) for e in family_picf(fam, s, t)
    )
    zeroth = None
    if fam is Family.M2:
        zeroth = _convergent_check("main", checks[0].pcf, 0, m)
    predicted = predicted_fundamental(fam, s, t)
    agrees = all(c.fundamental == predicted for c in checks)
    if not predicted and zeroth is not None:
        agrees = agrees and zeroth.fundamental
    erratum = None
    if not agrees:
        bad = [c for c in checks if c.fundamental != predicted]
        parts = [
            f"{c.form}: convergent {c.index} gives ({c.solution.x}, {c.solution.y}) = eps^{c.power}"
            for c in bad
        ]
        erratum = (
            f"{fam.value}({s},{t}) = {m}: predicted {'fundamental' if predicted else 'not fundamental'}, "
            f"minimal period {len(rcf.period)}; " + "; ".join(parts)
        )
    return FundamentalityReport(
        fam, s, t, m, len(rcf.period), fundamental_solution(m), checks, zeroth, predicted, agrees, erratum
    )
