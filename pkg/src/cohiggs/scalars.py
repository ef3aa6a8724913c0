"""Exact scalars: Gaussian rationals and towers of quadratic extensions over them.

A scalar is either a :class:`GaussianRational` (level 0) or a :class:`QuadExt`
``x + y*sqrt(d)`` whose components live in the parent of its :class:`Tower`.
Values are always stored at the lowest level that can hold them: an extension
element whose ``y`` part vanishes is returned as its ``x`` part.  That keeps the
representation canonical, so ``==`` and ``hash`` are structural.

Square roots over Q(i) are adjoined with a canonical square-class radicand:
a positive square-free integer when the class contains one, otherwise a
square-free Gaussian integer with unit 1 or i.  Two radicands differing by a
square therefore always produce the same tower.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Optional, Union

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .errors import FieldMismatch, TowerDepthExceeded, ZeroRadicand

MAX_LEVEL = 2

Rational = Fraction
_FZERO = Fraction(0)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        g = object.__new__(cls)
        object.__setattr__(g, "re", re)
        object.__setattr__(g, "im", im)
        return g

    level = 0

    @property
    def tower(self) -> "Tower":
        return BASE

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        ims = "i" if im == 1 else "-i" if im == -1 else f"{im}i"
        if re == 0:
            return ims
        if im > 0:
            return f"{re}+{ims}"
        return f"{re}{ims}"

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, QuadExt):
            return False
        return NotImplemented

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __add__(self, other):
        o = other if type(other) is GaussianRational else coerce(other)
        if o is None:
            return NotImplemented
        if type(o) is GaussianRational:
            return GaussianRational._raw(self.re + o.re, self.im + o.im)
        return _add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = other if type(other) is GaussianRational else coerce(other)
        if o is None:
            return NotImplemented
        if type(o) is GaussianRational:
            if not self.im and not o.im:
                return GaussianRational._raw(self.re * o.re, _FZERO)
            return GaussianRational._raw(
                self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
            )
        return _mul(self, o)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        return _pow(self, n)


@dataclass(frozen=True)
class Tower:
    """Chain of radicands ``(d1, d2, ...)``; ``d_k`` lives in the tower of the first k-1."""

    radicands: tuple = ()

    @property
    def level(self) -> int:
        return len(self.radicands)

    @property
    def parent(self) -> "Tower":
        return Tower(self.radicands[:-1])

    @property
    def radicand(self):
        return self.radicands[-1]

    def extend(self, d) -> "Tower":
        if self.level >= MAX_LEVEL:
            raise TowerDepthExceeded(f"cannot adjoin sqrt({d}) above level {self.level}")
        return Tower(self.radicands + (d,))

    def is_prefix_of(self, other: "Tower") -> bool:
        return other.radicands[: self.level] == self.radicands


BASE = Tower()


class QuadExt:
    """``x + y*sqrt(d)`` with ``y != 0``; build through :func:`make`, not directly."""

    __slots__ = ("tower", "x", "y")

    def __init__(self, tower: Tower, x, y):
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @property
    def level(self) -> int:
        return self.tower.level

    @property
    def radicand(self):
        return self.tower.radicand

    def is_zero(self) -> bool:
        return False

    def __bool__(self):
        return True

    def galois_conjugate(self):
        return make(self.tower, self.x, -self.y)

    def __repr__(self):
        return f"QuadExt({self.x!r}, {self.y!r}, sqrt={self.radicand!r})"

    def __str__(self):
        return f"({self.x})+({self.y})*sqrt({self.radicand})"

    def __hash__(self):
        return hash((self.tower, self.x, self.y))

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.tower == other.tower and self.x == other.x and self.y == other.y
        if isinstance(other, (GaussianRational, int, Fraction)):
            return False
        return NotImplemented

    def __neg__(self):
        return QuadExt(self.tower, -self.x, -self.y)

    def __add__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return _add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return _add(self, -o)

    def __rsub__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return _add(o, -self)

    def __mul__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def inverse(self):
        n = self.x * self.x - self.radicand * self.y * self.y
        ninv = n.inverse()
        return make(self.tower, self.x * ninv, -self.y * ninv)

    def __truediv__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self, o.inverse())

    def __rtruediv__(self, other):
        o = coerce(other)
        if o is None:
            return NotImplemented
        return _mul(o, self.inverse())

    def __pow__(self, n: int):
        return _pow(self, n)


Scalar = Union[GaussianRational, QuadExt]
FieldScalar = Scalar

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def coerce(x) -> Optional[Scalar]:
    if isinstance(x, (GaussianRational, QuadExt)):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


def scalar(x) -> Scalar:
    """Coerce ints, Fractions, complex with integer parts, or scalars."""
    s = coerce(x)
    if s is not None:
        return s
    if isinstance(x, complex) and x.real.is_integer() and x.imag.is_integer():
        return GaussianRational(int(x.real), int(x.imag))
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def tower_of(x) -> Tower:
    return x.tower if isinstance(x, QuadExt) else BASE


def common_tower(*towers: Tower) -> Tower:
    best = BASE
    for t in towers:
        if best.is_prefix_of(t):
            best = t
        elif not t.is_prefix_of(best):
            raise FieldMismatch(f"towers {best.radicands} and {t.radicands} are incompatible")
    return best


def make(tower: Tower, x, y):
    if tower.level == 0:
        return x
    if y == 0:
        return x
    return QuadExt(tower, x, y)


def parts(e, tower: Tower):
    """Components ``(x, y)`` of ``e`` viewed in ``tower`` (level >= 1)."""
    if isinstance(e, QuadExt) and e.tower == tower:
        return e.x, e.y
    return e, ZERO


def _add(a, b):
    t = common_tower(tower_of(a), tower_of(b))
    if t.level == 0:
        return a + b
    ax, ay = parts(a, t)
    bx, by = parts(b, t)
    return make(t, ax + bx, ay + by)


def _mul(a, b):
    t = common_tower(tower_of(a), tower_of(b))
    if t.level == 0:
        return a * b
    ax, ay = parts(a, t)
    bx, by = parts(b, t)
    d = t.radicand
    return make(t, ax * bx + d * ay * by, ax * by + ay * bx)


def _pow(a, n: int):
    if n < 0:
        return _pow(a.inverse(), -n)
    result = ONE
    base = a
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def lex_positive(e) -> bool:
    """Sign rule used to pick one of ``{e, -e}``.

    Gaussian: ``re > 0``, or ``re == 0`` and ``im > 0``.  Extension element
    ``x + y*sqrt(d)``: the rule applied to ``x``, or to ``y`` when ``x == 0``.
    """
    e = scalar(e)
    if isinstance(e, GaussianRational):
        return e.re > 0 or (e.re == 0 and e.im > 0)
    if e.x != 0:
        return lex_positive(e.x)
    return lex_positive(e.y)


# --- square roots -----------------------------------------------------------


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _gauss_sqrt(c: GaussianRational) -> Optional[GaussianRational]:
    if c.is_zero():
        return ZERO
    n = _rational_sqrt(c.norm())
    if n is None:
        return None
    p = _rational_sqrt((c.re + n) / 2)
    if p is None:
        return None
    if p != 0:
        q = c.im / (2 * p)
    else:
        q = _rational_sqrt((n - c.re) / 2)
        if q is None:
            return None
    r = GaussianRational(p, q)
    return r if r * r == c else None


def _sqrt_in(c, t: Tower):
    """A square root of ``c`` inside the field of ``t``, or None."""
    if t.level == 0:
        return _gauss_sqrt(c)
    x, y = parts(c, t)
    d = t.radicand
    p_tower = t.parent
    if y == 0:
        r = _sqrt_in(x, p_tower)
        if r is not None:
            return r
        r = _sqrt_in(x / d, p_tower)
        if r is not None:
            return make(t, ZERO, r)
        return None
    n = _sqrt_in(x * x - d * y * y, p_tower)
    if n is None:
        return None
    for cand in ((x + n) / 2, (x - n) / 2):
        p = _sqrt_in(cand, p_tower)
        if p is not None and p != 0:
            r = make(t, p, y / (2 * p))
            if r * r == c:
                return r
    return None


def is_square(c, within: Optional[Tower] = None) -> bool:
    c = scalar(c)
    t = common_tower(tower_of(c), within or BASE)
    return _sqrt_in(c, t) is not None


@dataclass(frozen=True)
class Extension:
    """What :func:`exact_sqrt` did: ``adjoined`` is False when no new radical was needed."""

    adjoined: bool
    tower: Tower
    radicand: object = None

    @property
    def level(self) -> int:
        return self.tower.level


def exact_sqrt(c, within: Optional[Tower] = None, require_extension: bool = False):
    """Exact square root of ``c``.

    Returns ``(r, Extension)`` with ``r*r == c``.  The root is taken in the
    field of ``within`` (default: the tower ``c`` lives in) when it exists
    there; otherwise ``sqrt(c)`` is adjoined on top of that tower.  Perfect
    squares return the lex-positive root.
    """
    c = scalar(c)
    t = common_tower(tower_of(c), within or BASE)
    if c == 0:
        if require_extension:
            raise ZeroRadicand("zero has no proper square-root extension")
        return ZERO, Extension(False, t)
    r = _sqrt_in(c, t)
    if r is not None:
        return (r if lex_positive(r) else -r), Extension(False, t)
    if t.level >= MAX_LEVEL:
        raise TowerDepthExceeded(f"sqrt({c}) needs a third nested radical")
    if t.level == 0:
        m, d = square_class(c)
        new = t.extend(d)
        if not lex_positive(m):
            m = -m
        r = make(new, ZERO, m)
    else:
        new = t.extend(c)
        r = make(new, ZERO, ONE)
    assert r * r == c
    return r, Extension(True, new, new.radicand)


# --- square classes in Q(i) ----------------------------------------------------

_GI = tuple  # Gaussian integers as (a, b) pairs


def _gi_mul(x: _GI, y: _GI) -> _GI:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gi_divexact(x: _GI, y: _GI) -> Optional[_GI]:
    n = y[0] * y[0] + y[1] * y[1]
    a = x[0] * y[0] + x[1] * y[1]
    b = x[1] * y[0] - x[0] * y[1]
    if a % n or b % n:
        return None
    return (a // n, b // n)


def _gi_mod(x: _GI, y: _GI) -> _GI:
    n = y[0] * y[0] + y[1] * y[1]
    a = x[0] * y[0] + x[1] * y[1]
    b = x[1] * y[0] - x[0] * y[1]
    q = ((2 * a + n) // (2 * n), (2 * b + n) // (2 * n))
    qy = _gi_mul(q, y)
    return (x[0] - qy[0], x[1] - qy[1])


def _gi_gcd(x: _GI, y: _GI) -> _GI:
    while y != (0, 0):
        x, y = y, _gi_mod(x, y)
    return x


def _gi_normalize(x: _GI) -> _GI:
    """Associate in the first quadrant: re > 0, im >= 0."""
    for _ in range(4):
        if x[0] > 0 and x[1] >= 0:
            return x
        x = (-x[1], x[0])
    raise ValueError("zero has no normal associate")


def _gaussian_primes_over(p: int) -> list:
    if p == 2:
        return [(1, 1)]
    if p % 4 == 3:
        return [(p, 0)]
    t = int(sqrt_mod(-1, p))
    pi = _gi_normalize(_gi_gcd((p, 0), (t, 1)))
    return sorted({pi, _gi_normalize((pi[0], -pi[1]))})


def _gi_factor(g: _GI):
    """``g = unit * prod(pi**e)`` with normalized primes; returns (unit, {pi: e})."""
    factors = {}
    # sympy may hand back gmpy integers; keep plain ints past this boundary
    for p in sorted(int(p) for p in factorint(g[0] * g[0] + g[1] * g[1])):
        for pi in _gaussian_primes_over(p):
            e = 0
            while True:
                q = _gi_divexact(g, pi)
                if q is None:
                    break
                g, e = q, e + 1
            if e:
                factors[pi] = e
    assert g in ((1, 0), (-1, 0), (0, 1), (0, -1)), g
    return g, factors


def square_class(c: GaussianRational):
    """Write ``c = m**2 * d`` with ``d`` a square-free Gaussian integer (unit 1 or i)."""
    if c.is_zero():
        raise ZeroRadicand("zero has no square class")
    den = lcm(c.re.denominator, c.im.denominator)
    g = (int(c.re * den * den), int(c.im * den * den))
    unit, factors = _gi_factor(g)
    # units modulo squares: -1 = i**2, so only 1 and i survive
    unit_class, unit_root = {
        (1, 0): ((1, 0), (1, 0)),
        (-1, 0): ((1, 0), (0, 1)),
        (0, 1): ((0, 1), (1, 0)),
        (0, -1): ((0, 1), (0, 1)),
    }[unit]
    d, m = unit_class, unit_root
    odd = set()
    for pi, e in factors.items():
        if e % 2:
            odd.add(pi)
            d = _gi_mul(d, pi)
        for _ in range(e // 2):
            m = _gi_mul(m, pi)
    m_s = None
    base = _rational_representative(odd)
    if base is not None:
        # prefer sqrt(2) over (1-i)*sqrt(i) when the class has a rational member
        for n in (base, 2 * base):
            d_s = GaussianRational(n)
            m_s = _gauss_sqrt(c / d_s)
            if m_s is not None:
                break
    if m_s is None:
        d_s = GaussianRational(*d)
        m_s = GaussianRational(*m) / den
    assert m_s is not None and m_s * m_s * d_s == c
    return m_s, d_s


def _rational_representative(odd: set) -> Optional[int]:
    """Odd part of a positive square-free integer in the class, up to a factor 2."""
    if (1, 1) in odd:
        return None
    n = 1
    for pi in odd:
        conj = _gi_normalize((pi[0], -pi[1]))
        if pi[1] == 0:
            n *= pi[0]
        elif conj not in odd:
            return None
        elif pi < conj:
            n *= pi[0] * pi[0] + pi[1] * pi[1]
    return n
