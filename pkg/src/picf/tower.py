"""Exact arithmetic in Z[X_n], X_n = 2cos(pi / 2^(n+1)), and the period-3 expansions of X_n.

Elements are integer coordinate vectors in the power basis ``1, X_n, ...,
X_n^(2^n - 1)``, reduced modulo the minimal polynomial ``mu_n``. The tower
relation ``X_n^2 = 2 + X_{n-1}`` gives ``mu_0(x) = x`` and
``mu_n(x) = mu_{n-1}(x^2 - 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from mpmath.ctx_mp import MPContext

from .cf import Mat2, word_matrix
from .errors import InvalidInputError, NonIntegralQuotientError, VerificationError

DEFAULT_PRECISION = 256
DEFAULT_ITERS = 200
NUMERIC_TOLERANCE = 1e-10


# --- integer polynomials, coefficient lists in ascending degree -------------


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_add(p: Sequence[int], q: Sequence[int]) -> list[int]:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_compose(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """``p(q(x))`` by Horner."""
    out = [0]
    for c in reversed(p):
        out = poly_add(poly_mul(out, q), [c])
    return out


@lru_cache(maxsize=None)
def _minimal_poly(n: int) -> tuple[int, ...]:
    if n == 0:
        return (0, 1)
    return tuple(poly_compose(_minimal_poly(n - 1), [-2, 0, 1]))


def minimal_poly(n: int) -> list[int]:
    """Monic degree-``2^n`` polynomial of ``X_n``, ascending coefficients."""
    if n < 0:
        raise InvalidInputError(f"level must be >= 0, got {n}")
    return list(_minimal_poly(n))


def cos_poly(k: int) -> list[int]:
    """``C_k`` with ``2cos(k theta) = C_k(2cos theta)``."""
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    prev, cur = [2], [0, 1]
    for _ in range(k - 1):
        prev, cur = cur, poly_add(poly_mul([0, 1], cur), [-c for c in prev])
    return cur


def _reduce(p: Sequence[int], n: int) -> tuple[int, ...]:
    mu = _minimal_poly(n)
    d = len(mu) - 1
    p = list(p)
    for i in range(len(p) - 1, d - 1, -1):
        c = p[i]
        if c:
            for j in range(d):
                p[i - d + j] -= c * mu[j]
            p[i] = 0
    p += [0] * (d - len(p))
    return tuple(p[:d])


@dataclass(frozen=True)
class TowerElem:
    level: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.level < 0:
            raise InvalidInputError(f"level must be >= 0, got {self.level}")
        object.__setattr__(self, "coords", _reduce(self.coords, self.level))

    @classmethod
    def const(cls, c: int, level: int) -> TowerElem:
        return cls(level, (c,))

    @classmethod
    def gen(cls, level: int) -> TowerElem:
        """``X_level``."""
        return cls(level, (0, 1))

    @property
    def degree(self) -> int:
        return 1 << self.level

    def _lift(self, other) -> TowerElem | None:
        if isinstance(other, TowerElem):
            if other.level != self.level:
                raise InvalidInputError(f"level mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, int):
            return TowerElem.const(other, self.level)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElem(self.level, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> TowerElem:
        return TowerElem(self.level, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElem(self.level, poly_mul(self.coords, o.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TowerElem:
        out = TowerElem.const(1, self.level)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = TowerElem.const(other, self.level)
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.level == other.level and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.level, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def embed_up(self) -> TowerElem:
        """Same element at level + 1, via ``X_{n-1} = X_n^2 - 2``."""
        return TowerElem(self.level + 1, poly_compose(self.coords, [-2, 0, 1]))

    def embed_to(self, level: int) -> TowerElem:
        x = self
        while x.level < level:
            x = x.embed_up()
        if x.level != level:
            raise InvalidInputError(f"cannot embed level {self.level} into level {level}")
        return x

    def split(self) -> tuple[TowerElem, TowerElem]:
        """``(a, b)`` at level n-1 with ``self = a + X_n b``."""
        if self.level < 1:
            raise InvalidInputError("split needs level >= 1")
        shift = [2, 1]  # X_n^2 = 2 + X_{n-1}
        a = poly_compose(self.coords[0::2] or [0], shift)
        b = poly_compose(self.coords[1::2] or [0], shift)
        return TowerElem(self.level - 1, a), TowerElem(self.level - 1, b)

    def tau(self) -> TowerElem:
        """The conjugate over level n-1: ``X_n -> -X_n``."""
        return TowerElem(self.level, tuple(-c if i % 2 else c for i, c in enumerate(self.coords)))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if i == 0 else "X" if i == 1 else f"X^{i}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def eta(n: int) -> TowerElem:
    """``1 + sum_{k=1}^{2^n - 1} 2cos(k pi / 2^(n+1))`` in Z[X_n]."""
    if n < 0:
        raise InvalidInputError(f"level must be >= 0, got {n}")
    acc = [1]
    for k in range(1, 1 << n):
        acc = poly_add(acc, cos_poly(k))
    return TowerElem(n, acc)


def relative_norm(x: TowerElem) -> TowerElem:
    """``x * tau(x) = a^2 - (2 + X_{n-1}) b^2`` at level n-1."""
    a, b = x.split()
    return a * a - (2 + TowerElem.gen(a.level)) * b * b


def unit_divide(x: TowerElem, u: TowerElem) -> TowerElem:
    """The ``y`` in Z[X_n] with ``y * u == x``; raises if the quotient is not integral."""
    if x.level != u.level:
        raise InvalidInputError(f"level mismatch: {x.level} vs {u.level}")
    if u.is_zero():
        raise ZeroDivisionError("division by zero tower element")
    d = u.degree
    n = u.level
    basis_images = [u * TowerElem(n, (0,) * i + (1,)) for i in range(d)]
    # augmented system: sum_i y_i (u X^i) = x
    rows = [[Fraction(basis_images[i].coords[r]) for i in range(d)] + [Fraction(x.coords[r])] for r in range(d)]
    for col in range(d):
        piv = next(r for r in range(col, d) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [v / pv for v in rows[col]]
        for r in range(d):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    sol = [rows[i][d] for i in range(d)]
    if any(v.denominator != 1 for v in sol):
        raise NonIntegralQuotientError(f"({x}) / ({u}) is not in Z[X_{n}]")
    return TowerElem(n, tuple(int(v) for v in sol))


@dataclass(frozen=True)
class TowerTriple:
    n: int
    x1: TowerElem
    x2: TowerElem
    x3: TowerElem

    def lifted(self) -> tuple[TowerElem, TowerElem, TowerElem]:
        """The triple embedded at level n, where the expansion of X_n lives."""
        return tuple(x.embed_to(self.n) for x in (self.x1, self.x2, self.x3))


def tower_triple(n: int) -> TowerTriple:
    """Period ``(x1, x2, x3)`` over Z[X_{n-1}] of a purely periodic expansion of ``+-X_n``.

    ``x2 = eta_{n-1}``, ``x3 = (q - 1) / eta_{n-1}`` and
    ``x1 = (X_n^2 q - 1) / eta_{n-1}`` with ``q = (eta_n - eta_{n-1}) / X_n``.
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    e_prev = eta(n - 1)
    diff = eta(n) - e_prev.embed_up()
    even, q = diff.split()
    if not even.is_zero():
        raise VerificationError(f"eta_{n} - eta_{n-1} is not divisible by X_{n}")
    x3 = unit_divide(q - 1, e_prev)
    x1 = unit_divide((2 + TowerElem.gen(n - 1)) * q - 1, e_prev)
    return TowerTriple(n, x1, e_prev, x3)


def numeric_embed(x: TowerElem, k: int, precision_bits: int = DEFAULT_PRECISION):
    """``sigma_k(x)``: the coordinate polynomial evaluated at ``2cos(k pi / 2^(n+1))``."""
    ctx = _context(precision_bits)
    return _embed(ctx, x, k)


def _context(precision_bits: int) -> MPContext:
    if precision_bits < 1:
        raise InvalidInputError(f"precision must be positive, got {precision_bits}")
    ctx = MPContext()
    ctx.prec = precision_bits
    return ctx


def _embed(ctx: MPContext, x: TowerElem, k: int):
    n = x.level
    if k < 1 or k >= 1 << (n + 1) or k % 2 == 0:
        raise InvalidInputError(f"embedding index must be odd in [1, 2^{n + 1}), got {k}")
    root = 2 * ctx.cos(k * ctx.pi / (1 << (n + 1)))
    acc = ctx.mpf(0)
    for c in reversed(x.coords):
        acc = acc * root + c
    return acc


@dataclass(frozen=True)
class EmbeddingCheck:
    k: int
    sigma_x: object
    sigma_eta: object
    limit: object
    expected_sign: int
    error: object
    ok: bool


@dataclass(frozen=True)
class TowerReport:
    n: int
    precision_bits: int
    iters: int
    triple: TowerTriple
    matrix: Mat2
    fixed_point_residual: TowerElem
    eta_norm: TowerElem
    p2: TowerElem
    q2: TowerElem
    convergent_identity: bool
    embeddings: tuple[EmbeddingCheck, ...]

    @property
    def fixed_point_ok(self) -> bool:
        return self.fixed_point_residual.is_zero()

    @property
    def norm_ok(self) -> bool:
        return self.eta_norm == -1

    @property
    def ok(self) -> bool:
        return (
            self.fixed_point_ok
            and self.norm_ok
            and self.convergent_identity
            and all(e.ok for e in self.embeddings)
        )


def verify_tower_pcf(n: int, precision_bits: int = DEFAULT_PRECISION, iters: int = DEFAULT_ITERS) -> TowerReport:
    """Exact and per-embedding numeric checks of the period-3 expansion of X_n."""
    if iters < 1:
        raise InvalidInputError(f"iters must be positive, got {iters}")
    triple = tower_triple(n)
    x1, x2, x3 = triple.lifted()
    X = TowerElem.gen(n)
    E = word_matrix([x1, x2, x3])
    residual = E.e21 * X * X + (E.e22 - E.e11) * X - E.e12
    # (p2, q2) is the first column of E
    p2, q2 = E.e11, E.e21
    eta_n = eta(n)
    identity = p2 + X * q2 == eta_n

    ctx = _context(precision_bits)
    tol = ctx.mpf(NUMERIC_TOLERANCE)
    checks = []
    for k in range(1, 1 << (n + 1), 2):
        terms = [_embed(ctx, x, k) for x in (x1, x2, x3)]
        sx, se = _embed(ctx, X, k), _embed(ctx, eta_n, k)
        p_prev, q_prev, p, q = ctx.mpf(1), ctx.mpf(0), terms[0], ctx.mpf(1)
        for i in range(1, iters):
            a = terms[i % 3]
            p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        limit = p / q if q != 0 else ctx.inf
        sign = 1 if abs(se) > 1 else -1
        err = abs(limit - sign * sx)
        checks.append(EmbeddingCheck(k, sx, se, limit, sign, err, bool(err < tol)))
    return TowerReport(
        n,
        precision_bits,
        iters,
        triple,
        E,
        residual,
        relative_norm(eta_n),
        p2,
        q2,
        identity,
        tuple(checks),
    )
