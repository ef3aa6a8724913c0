"""Rational functions in the chart coordinates and small matrices over them.

Only monomial common factors are cancelled; equality is decided by
cross-multiplication, so it is exact whether or not a fraction is reduced.
"""
from __future__ import annotations

from itertools import permutations
from typing import Callable, Mapping, Sequence

from .errors import DimensionMismatch, SingularEvaluationPoint
from .poly import AFFINE_VARS, Poly
from .scalars import ONE, ZERO, scalar


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.constant(ONE, num.vars)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.vars != den.vars:
            raise DimensionMismatch("numerator and denominator use different variables")
        num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def const(cls, c, vars=AFFINE_VARS) -> RatFunc:
        return cls(Poly.constant(c, vars))

    @classmethod
    def of(cls, x, vars=AFFINE_VARS) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x)
        return cls.const(x, vars)

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_poly(self) -> Poly | None:
        """The polynomial this function equals, or None."""
        if self.den.is_constant():
            return self.num / self.den.constant_term()
        return self.num.divexact(self.den)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.of(other, self.vars)
            except TypeError:
                return NotImplemented
        return self.num * other.den == other.num * self.den

    # equality is not structural, so no hash
    __hash__ = None

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def _o(self, other):
        if isinstance(other, RatFunc):
            return other
        return RatFunc.of(other, self.vars)

    def __add__(self, other):
        o = self._o(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._o(other))

    def __rsub__(self, other):
        return self._o(other) + (-self)

    def __mul__(self, other):
        o = self._o(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._o(other).inverse()

    def __rtruediv__(self, other):
        return self._o(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise SingularEvaluationPoint(f"denominator {self.den} vanishes at {point}")
        return self.num.evaluate(point) / d

    def diff(self, name: str) -> RatFunc:
        return RatFunc(
            self.num.diff(name) * self.den - self.num * self.den.diff(name), self.den * self.den
        )

    def compose(self, mapping: Mapping[str, "RatFunc"]) -> RatFunc:
        """Substitute rational functions for the variables."""
        return compose_poly(self.num, mapping) / compose_poly(self.den, mapping)


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return num, Poly.constant(ONE, num.vars)
    # strip the common monomial factor
    n = len(num.vars)
    low = [min(e[i] for e in list(num.terms) + list(den.terms)) for i in range(n)]
    if any(low):

        def shift(p):
            return Poly({tuple(a - b for a, b in zip(e, low)): c for e, c in p.terms.items()}, p.vars)

        num, den = shift(num), shift(den)
    _, lc = den.leading_term()
    if lc != 1:
        inv = lc.inverse()
        num, den = num * inv, den * inv
    if not den.is_constant():
        q = num.divexact(den)
        if q is not None:
            return q, Poly.constant(ONE, num.vars)
    return num, den


def compose_poly(p: Poly, mapping: Mapping[str, RatFunc]) -> RatFunc:
    """``p`` with rational functions substituted, built over one common denominator."""
    images = [mapping[v] if v in mapping else None for v in p.vars]
    new_vars = next(im.vars for im in images if im is not None)
    images = [im if im is not None else RatFunc(Poly.var(v, new_vars)) for im, v in zip(images, p.vars)]
    top = [max((e[i] for e in p.terms), default=0) for i in range(len(images))]
    powers = {}

    def pw(poly, key, k):
        if (key, k) not in powers:
            powers[(key, k)] = poly**k
        return powers[(key, k)]

    num = Poly.zero(new_vars)
    for e, c in p.terms.items():
        term = Poly.constant(c, new_vars)
        for i, (k, im) in enumerate(zip(e, images)):
            if k:
                term = term * pw(im.num, ("n", i), k)
            if top[i] - k:
                term = term * pw(im.den, ("d", i), top[i] - k)
        num = num + term
    den = Poly.constant(ONE, new_vars)
    for i, im in enumerate(images):
        if top[i]:
            den = den * pw(im.den, ("d", i), top[i])
    return RatFunc(num, den)


class RatFuncMatrix:
    """Dense matrix of :class:`RatFunc` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence], vars=AFFINE_VARS):
        conv = tuple(tuple(RatFunc.of(x, vars) for x in row) for row in rows)
        if not conv or any(len(r) != len(conv[0]) for r in conv):
            raise DimensionMismatch("ragged or empty matrix")
        object.__setattr__(self, "rows", conv)

    def __setattr__(self, name, value):
        raise AttributeError("RatFuncMatrix is immutable")

    @classmethod
    def identity(cls, n: int, vars=AFFINE_VARS) -> RatFuncMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], vars)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, vars=AFFINE_VARS) -> RatFuncMatrix:
        return cls([[ZERO] * (m or n) for _ in range(n)], vars)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    @property
    def vars(self):
        return self.rows[0][0].vars

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, f: Callable[[RatFunc], RatFunc]) -> RatFuncMatrix:
        return RatFuncMatrix([[f(x) for x in row] for row in self.rows], self.vars)

    def __eq__(self, other):
        if not isinstance(other, RatFuncMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def __add__(self, other: RatFuncMatrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return RatFuncMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.vars
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other: RatFuncMatrix):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatFuncMatrix):
            n, k = self.shape
            k2, m = other.shape
            if k != k2:
                raise DimensionMismatch(f"{self.shape} x {other.shape}")
            rows = []
            for i in range(n):
                row = []
                for j in range(m):
                    acc = RatFunc.const(ZERO, self.vars)
                    for t in range(k):
                        a, b = self.rows[i][t], other.rows[t][j]
                        if not a.is_zero() and not b.is_zero():
                            acc = acc + a * b
                    row.append(acc)
                rows.append(row)
            return RatFuncMatrix(rows, self.vars)
        f = RatFunc.of(other, self.vars)
        return self.map(lambda x: x * f)

    def __rmul__(self, other):
        f = RatFunc.of(other, self.vars)
        return self.map(lambda x: f * x)

    def apply(self, vec: Sequence) -> list:
        """Matrix times a column vector of RatFunc/Poly entries."""
        v = [RatFunc.of(x, self.vars) for x in vec]
        if len(v) != self.shape[1]:
            raise DimensionMismatch("vector length does not match")
        out = []
        for row in self.rows:
            acc = RatFunc.const(ZERO, self.vars)
            for a, b in zip(row, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> RatFuncMatrix:
        return RatFuncMatrix([list(col) for col in zip(*self.rows)], self.vars)

    def det(self) -> RatFunc:
        n, m = self.shape
        if n != m:
            raise DimensionMismatch("determinant of a non-square matrix")
        return _leibniz(self.rows, RatFunc.const(ZERO, self.vars))

    def inverse(self) -> RatFuncMatrix:
        n, _ = self.shape
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        if n == 1:
            return RatFuncMatrix([[d.inverse()]], self.vars)
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i
                ]
                sign = -1 if (i + j) % 2 else 1
                adj[j][i] = _leibniz(minor, RatFunc.const(ZERO, self.vars)) * sign
        dinv = d.inverse()
        return RatFuncMatrix([[x * dinv for x in row] for row in adj], self.vars)

    def evaluate(self, point) -> list:
        return [[x.evaluate(point) for x in row] for row in self.rows]

    def compose(self, mapping) -> RatFuncMatrix:
        rows = [[x.compose(mapping) for x in row] for row in self.rows]
        new_vars = rows[0][0].vars
        return RatFuncMatrix(rows, new_vars)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.rows) + "]"

    __repr__ = __str__


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _leibniz(rows, zero):
    n = len(rows)
    total = zero
    for p in permutations(range(n)):
        term = None
        for i in range(n):
            x = rows[i][p[i]]
            term = x if term is None else term * x
        total = total + term if _perm_sign(p) > 0 else total - term
    return total


def commutator(a: RatFuncMatrix, b: RatFuncMatrix) -> RatFuncMatrix:
    """``a*b - b*a`` exactly."""
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"commutator of {a.shape} and {b.shape}")
    return a * b - b * a


# --- plain scalar matrices ---------------------------------------------------------


def mat_mul(a, b):
    return [
        [sum((a[i][t] * b[t][j] for t in range(len(b))), ZERO) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def mat_identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_det(a):
    return _leibniz([[scalar(x) for x in row] for row in a], ZERO)


def row_reduce(a):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[scalar(x) for x in row] for row in a]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def mat_rank(a) -> int:
    if not a:
        return 0
    return len(row_reduce(a)[1])


def nullspace(a, ncols: int | None = None) -> list:
    """Basis of ``{x : a x = 0}`` over the scalar field."""
    ncols = ncols if ncols is not None else len(a[0])
    if not a:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    m, pivots = row_reduce(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(m, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis
