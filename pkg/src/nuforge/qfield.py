"""Exact arithmetic in Q(θ) for a quadratic Perron root θ, and tagged points.

θ is the larger root of x² − t·x + d.  Elements are stored as a + b·θ with
rational a, b; when θ is rational it is substituted, so b is always 0.
Signs are decided with rational arithmetic only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Sequence, Union

from .errors import ConsistencyError, FieldMismatch, InadmissibleInput

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class FieldDesc:
    trace: int
    det: int

    def __post_init__(self):
        disc = self.discriminant
        if disc < 0:
            raise InadmissibleInput(f"characteristic polynomial {self.polynomial()} has complex roots", "theta")
        # larger root > 1  ⇔  t > 2 or p(1) < 0
        p1 = 1 - self.trace + self.det
        if not (p1 < 0 or self.trace > 2):
            raise InadmissibleInput(f"dominant root of {self.polynomial()} is not > 1", "theta")

    @property
    def discriminant(self) -> int:
        return self.trace * self.trace - 4 * self.det

    @cached_property
    def rational_theta(self) -> Fraction | None:
        disc = self.discriminant
        r = math.isqrt(disc)
        if r * r == disc:
            return Fraction(self.trace + r, 2)
        return None

    @property
    def theta(self) -> QNum:
        return QNum(0, 1, self)

    def polynomial(self, var: str = "θ") -> str:
        t, d = self.trace, self.det
        out = f"{var}^2"
        if t:
            out += f" - {t}{var}" if t > 0 else f" + {-t}{var}"
        if d:
            out += f" + {d}" if d > 0 else f" - {-d}"
        return out

    def describe(self) -> str:
        """Minimal polynomial of θ, or θ itself when rational."""
        if self.rational_theta is not None:
            return f"θ = {_frac_str(self.rational_theta)}"
        return f"{self.polynomial()} = 0"

    def theta_decimal(self, prec: int) -> Decimal:
        if self.rational_theta is not None:
            with localcontext() as ctx:
                ctx.prec = prec
                return Decimal(self.rational_theta.numerator) / Decimal(self.rational_theta.denominator)
        with localcontext() as ctx:
            ctx.prec = prec
            return (Decimal(self.trace) + Decimal(self.discriminant).sqrt()) / 2

    def __call__(self, a: Rational = 0, b: Rational = 0) -> QNum:
        return QNum(a, b, self)


def dominant_root(mat: Sequence[Sequence[int]]) -> FieldDesc:
    """FieldDesc of the Perron root of a 2×2 non-negative integer matrix."""
    if len(mat) != 2 or any(len(row) != 2 for row in mat):
        raise ValueError("dominant_root expects a 2x2 matrix")
    trace = mat[0][0] + mat[1][1]
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    return FieldDesc(trace, det)


def _sign_sqrt_form(p: Fraction, q: Fraction, r: int) -> int:
    """Sign of p + q·√r with r ≥ 0 not necessarily a non-square."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or r == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare p² with q²r
    diff = p * p - q * q * r
    if diff == 0:
        return 0
    return sp if diff > 0 else sq


@total_ordering
class QNum:
    """Exact element a + b·θ of Q(θ)."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a: Rational, b: Rational, field: FieldDesc):
        a = Fraction(a)
        b = Fraction(b)
        rt = field.rational_theta
        if rt is not None and b:
            a, b = a + b * rt, Fraction(0)
        self.a = a
        self.b = b
        self.field = field

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> QNum:
        if isinstance(other, QNum):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return QNum(other, 0, self.field)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QNum(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QNum(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QNum(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t, d = self.field.trace, self.field.det
        bb = self.b * o.b
        return QNum(self.a * o.a - d * bb, self.a * o.b + o.a * self.b + t * bb, self.field)

    __rmul__ = __mul__

    def inverse(self) -> QNum:
        if not self:
            raise ZeroDivisionError("division by zero in Q(θ)")
        a, b = self.a, self.b
        if b == 0:
            return QNum(1 / a, 0, self.field)
        t, d = self.field.trace, self.field.det
        norm = a * a + a * b * t + b * b * d
        return QNum((a + b * t) / norm, -b / norm, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QNum(1, 0, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order --------------------------------------------------------------
    def sign(self) -> int:
        f = self.field
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        # θ = (t + √Δ)/2
        p = self.a + self.b * Fraction(f.trace, 2)
        q = self.b / 2
        return _sign_sqrt_form(p, q, f.discriminant)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (QNum, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b, self.field))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * float(self.field.theta_decimal(30))

    def to_decimal(self, prec: int = 60) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = prec + 10
            th = self.field.theta_decimal(prec + 10)
            a = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            b = Decimal(self.b.numerator) / Decimal(self.b.denominator)
            return a + b * th

    # -- rendering ------------------------------------------------------------
    def exact(self) -> str:
        """``p/q`` or ``p/q + r/s·θ``."""
        if self.b == 0:
            return _frac_str(self.a)
        bpart = "θ" if abs(self.b) == 1 else f"{_frac_str(abs(self.b))}·θ"
        if self.a == 0:
            return bpart if self.b > 0 else f"-{bpart}"
        return f"{_frac_str(self.a)} {'+' if self.b > 0 else '-'} {bpart}"

    def decimal(self, digits: int) -> str:
        """Round-half-even rendering with ``digits`` fractional digits."""
        if self.b == 0:
            scaled = round(self.a * 10**digits)
            sign = "-" if scaled < 0 else ""
            scaled = abs(scaled)
            whole, frac = divmod(scaled, 10**digits)
            return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"
        # irrational values are never exact ties
        with localcontext() as ctx:
            ctx.prec = digits + 40
            q = Decimal(1).scaleb(-digits)
            return str(self.to_decimal(digits + 30).quantize(q, rounding=ROUND_HALF_EVEN))

    def __repr__(self):
        return f"QNum({self.exact()})"

    def __str__(self):
        return self.exact()


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qnum_from_strings(a: str, b: str, field: FieldDesc) -> QNum:
    return QNum(Fraction(a), Fraction(b), field)


def compare(x: QNum, y: QNum) -> int:
    """-1, 0 or 1 according to the real value of x − y at the dominant root."""
    return (x - y).sign()


# -- tagged points -------------------------------------------------------------


class Tag(enum.IntEnum):
    MINUS = -1
    NEUTRAL = 0
    PLUS = 1

    @property
    def suffix(self) -> str:
        return {Tag.MINUS: "-", Tag.NEUTRAL: "", Tag.PLUS: "+"}[self]

    @property
    def word(self) -> str:
        return self.name.lower()


@total_ordering
@dataclass(frozen=True)
class ExtReal:
    """A point of the extended interval: a value with a side tag.

    Distinct values order by value; equal values order minus < plus.
    """

    value: QNum
    tag: Tag = Tag.NEUTRAL

    def __lt__(self, other: ExtReal) -> bool:
        c = compare(self.value, other.value)
        if c:
            return c < 0
        return self.tag < other.tag

    def render(self) -> str:
        v = self.value
        if v == 0 or v == 1 or self.tag is Tag.NEUTRAL:
            return v.exact()
        text = v.exact()
        if not v.is_rational:
            text = f"({text})"
        return text + self.tag.suffix

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class Interval:
    lo: ExtReal
    hi: ExtReal

    def __post_init__(self):
        if self.hi < self.lo:
            raise ConsistencyError(f"empty interval [{self.lo}, {self.hi}]", "intervals")

    @property
    def length(self) -> QNum:
        return self.hi.value - self.lo.value

    def contains_value(self, v: QNum) -> bool:
        return compare(self.lo.value, v) <= 0 <= compare(self.hi.value, v)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


# -- Perron eigenvector ------------------------------------------------------------


def _null_space(rows: list[list[QNum]], zero: QNum) -> list[list[QNum]]:
    """Basis of the right null space by Gauss–Jordan elimination over Q(θ)."""
    m = [row[:] for row in rows]
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv if v else v for v in m[r]]
        support = [j for j, v in enumerate(m[r]) if v]
        for i in range(n_rows):
            if i != r and m[i][c]:
                factor, row = m[i][c], m[i]
                for j in support:
                    row[j] = row[j] - factor * m[r][j]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [zero] * n_cols
        vec[fcol] = zero + 1
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fcol]
        basis.append(vec)
    return basis


def _theta_eigenvector(mat: Sequence[Sequence[int]], field: FieldDesc) -> list[QNum]:
    """A spanning θ-eigenvector; raises unless the eigenspace is a line.

    Equal columns are merged first: with M = C·G (C the distinct columns, G
    the grouping), v = C·w/θ maps θ-eigenvectors w of G·C one-to-one onto
    those of M.
    """
    theta = field.theta
    zero = field(0)
    q = len(mat)
    columns = [tuple(mat[i][j] for i in range(q)) for j in range(q)]
    distinct = sorted(set(columns))
    if len(distinct) < q:
        group = [distinct.index(col) for col in columns]
        g = len(distinct)
        reduced = [[sum(distinct[l][y] for y in range(q) if group[y] == k) for l in range(g)] for k in range(g)]
        w = _theta_eigenvector(reduced, field)
        return [sum((w[l] * distinct[l][x] for l in range(g) if distinct[l][x]), zero) / theta for x in range(q)]
    rows = [[(zero + mat[i][j]) - (theta if i == j else zero) for j in range(q)] for i in range(q)]
    basis = _null_space(rows, zero)
    if len(basis) != 1:
        raise ConsistencyError(
            f"θ-eigenspace has dimension {len(basis)} (expected 1); θ is not a simple eigenvalue", "frequencies"
        )
    return basis[0]


def solve_frequencies(mat: Sequence[Sequence[int]], field: FieldDesc) -> tuple[QNum, ...]:
    """Positive eigenvector of ``mat`` for θ, normalised to sum 1."""
    theta = field.theta
    zero = field(0)
    q = len(mat)
    vec = _theta_eigenvector(mat, field)
    total = sum(vec, zero)
    if not total:
        raise ConsistencyError("eigenvector sums to zero", "frequencies")
    vec = [v / total for v in vec]
    if any(v.sign() <= 0 for v in vec):
        raise ConsistencyError("θ-eigenvector is not strictly positive", "frequencies")
    for i in range(q):
        lhs = sum((vec[j] * mat[i][j] for j in range(q) if mat[i][j]), zero)
        if lhs != theta * vec[i]:
            raise ConsistencyError("eigenvector check M·v = θ·v failed", "frequencies")
    return tuple(vec)
