"""Sparse multivariate polynomials with exact scalar coefficients.

Terms are kept in a dict keyed by exponent tuples; zero coefficients are never
stored.  The term order is graded lexicographic (total degree first, then
exponents compared left to right), which fixes iteration, printing and
leading terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DegreeExceeded, DimensionMismatch
from .scalars import ONE, ZERO, Tower, common_tower, exact_sqrt, scalar, tower_of

AFFINE_VARS = ("z", "w")
PROJ_VARS = ("x0", "x1", "x2")

# (distinguished coordinate, coordinate read as z, coordinate read as w) per chart:
# chart 0 is [z:w:1], chart 1 is [z:1:w], chart 2 is [1:z:w]
CHART_LAYOUT = {0: (2, 0, 1), 1: (1, 0, 2), 2: (0, 1, 2)}


def _order_key(exps):
    return (sum(exps), exps)


class Poly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), vars: Sequence[str] = AFFINE_VARS):
        object.__setattr__(self, "vars", tuple(vars))
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        n = len(self.vars)
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != n:
                raise DimensionMismatch(f"exponent {exps} does not fit variables {self.vars}")
            c = scalar(c)
            if c != 0:
                clean[exps] = clean[exps] + c if exps in clean else c
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _trusted(cls, terms: dict, vars: tuple) -> "Poly":
        """Build from an exponent -> scalar dict produced by arithmetic; drops zeros."""
        p = object.__new__(cls)
        object.__setattr__(p, "vars", vars)
        object.__setattr__(p, "terms", {e: c for e, c in terms.items() if c})
        object.__setattr__(p, "_hash", None)
        return p

    # construction helpers

    @classmethod
    def zero(cls, vars=AFFINE_VARS) -> Poly:
        return cls({}, vars)

    @classmethod
    def constant(cls, c, vars=AFFINE_VARS) -> Poly:
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars=AFFINE_VARS) -> Poly:
        vars = tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not one of {vars}")
        return cls({exps: ONE}, vars)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=-1)

    @property
    def tower(self) -> Tower:
        return common_tower(*(tower_of(c) for c in self.terms.values()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            return None
        exps = max(self.terms, key=_order_key)
        return exps, self.terms[exps]

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), ZERO)

    def constant_term(self):
        return self.coefficient((0,) * len(self.vars))

    def is_constant(self) -> bool:
        return self.degree <= 0

    def coeff_in(self, index: int, power: int) -> Poly:
        """Coefficient of ``vars[index]**power``, as a polynomial in the same variables."""
        out = {}
        for e, c in self.terms.items():
            if e[index] == power:
                out[e[:index] + (0,) + e[index + 1:]] = c
        return Poly(out, self.vars)

    def __repr__(self):
        return f"Poly({self}, vars={self.vars})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        s = _as_scalar(other)
        if s is not None:
            return self.terms == ({} if s == 0 else {(0,) * len(self.vars): s})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vars, frozenset(self.terms.items()))))
        return self._hash

    # arithmetic

    def _lift(self, other) -> Optional[Poly]:
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise DimensionMismatch(f"variables {self.vars} vs {other.vars}")
            return other
        s = _as_scalar(other)
        if s is None:
            return None
        return Poly.constant(s, self.vars)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly._trusted(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._trusted({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        s = _as_scalar(other)
        if s is not None:
            if s == 0:
                return Poly.zero(self.vars)
            return Poly._trusted({e: c * s for e, c in self.terms.items()}, self.vars)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = {}
        two = len(self.vars) == 2
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1]) if two else tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return Poly._trusted(out, self.vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = _as_scalar(other)
        if s is None:
            return NotImplemented
        inv = s.inverse()
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(ONE, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # evaluation and composition

    def evaluate(self, point):
        """Value at ``point`` (sequence in variable order, or mapping name -> value)."""
        if isinstance(point, Mapping):
            point = [point[v] for v in self.vars]
        values = [scalar(p) for p in point]
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def substitute(self, mapping: Mapping[str, "Poly"]) -> Poly:
        """Compose with ``{var: image}``; unmapped variables must exist in the image ring."""
        images = list(mapping.values())
        new_vars = images[0].vars if images else self.vars
        for im in images:
            if im.vars != new_vars:
                raise DimensionMismatch("substitution images use different variable sets")
        subs = []
        for v in self.vars:
            if v in mapping:
                subs.append(mapping[v])
            else:
                subs.append(Poly.var(v, new_vars))
        powers = [{0: Poly.constant(ONE, new_vars)} for _ in subs]

        def pw(i, k):
            if k not in powers[i]:
                powers[i][k] = pw(i, k - 1) * subs[i]
            return powers[i][k]

        total = Poly.zero(new_vars)
        for e, c in self.terms.items():
            term = Poly.constant(c, new_vars)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = total + term
        return total

    def rename(self, vars: Sequence[str]) -> Poly:
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise DimensionMismatch("rename needs the same number of variables")
        return Poly(self.terms, vars)

    def diff(self, name: str) -> Poly:
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly(out, self.vars)

    # exact division and square roots

    def divexact(self, other: "Poly") -> Optional[Poly]:
        """Quotient ``q`` with ``q * other == self``, or None when there is none."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading_term()
        lc_inv = lc.inverse()
        q = {}
        r = self
        while r:
            re_, rc = r.leading_term()
            diff = tuple(a - b for a, b in zip(re_, le))
            if min(diff) < 0:
                return None
            c = rc * lc_inv
            q[diff] = c
            r = r - other * Poly({diff: c}, self.vars)
        return Poly(q, self.vars)

    def sqrt(self, within: Optional[Tower] = None) -> Optional[Poly]:
        """Polynomial ``s`` with ``s*s == self`` (lex-positive leading coefficient), or None.

        The leading coefficient's root may adjoin one quadratic extension.
        """
        if not self.terms:
            return self
        tower = common_tower(self.tower, within) if within is not None else self.tower
        le, lc = self.leading_term()
        if any(k % 2 for k in le):
            return None
        root_c, ext = exact_sqrt(lc, within=tower)
        s0 = tuple(k // 2 for k in le)
        s = Poly({s0: root_c}, self.vars)
        two_lead_inv = (root_c * 2).inverse()
        r = self - s * s
        while r:
            re_, rc = r.leading_term()
            diff = tuple(a - b for a, b in zip(re_, s0))
            if min(diff) < 0 or _order_key(diff) >= _order_key(s0):
                return None
            s = s + Poly({diff: rc * two_lead_inv}, self.vars)
            r = self - s * s
        return s


def _as_scalar(x):
    if isinstance(x, Poly):
        return None
    try:
        return scalar(x)
    except TypeError:
        return None


def affine(terms=(), vars=AFFINE_VARS) -> Poly:
    """Polynomial in the chart coordinates ``(z, w)``."""
    return Poly(terms, vars)


def z_w(vars=AFFINE_VARS):
    return Poly.var(vars[0], vars), Poly.var(vars[1], vars)


@dataclass(frozen=True)
class HomogeneousForm3:
    """Homogeneous form of fixed degree in ``x0, x1, x2``."""

    degree: int
    poly: Poly

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if self.poly.vars != PROJ_VARS:
            raise DimensionMismatch(f"forms use variables {PROJ_VARS}")
        for e in self.poly.terms:
            if sum(e) != self.degree:
                raise ValueError(f"term {e} is not of degree {self.degree}")

    @classmethod
    def from_terms(cls, degree: int, terms) -> "HomogeneousForm3":
        return cls(degree, Poly(terms, PROJ_VARS))

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousForm3":
        return cls(degree, Poly.zero(PROJ_VARS))

    @classmethod
    def coordinate(cls, i: int) -> "HomogeneousForm3":
        return cls(1, Poly.var(PROJ_VARS[i], PROJ_VARS))

    @property
    def terms(self):
        return self.poly.terms

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "HomogeneousForm3"):
        if not isinstance(other, HomogeneousForm3):
            return NotImplemented
        if other.degree != self.degree:
            raise DimensionMismatch("adding forms of different degree")
        return HomogeneousForm3(self.degree, self.poly + other.poly)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HomogeneousForm3(self.degree, -self.poly)

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm3):
            return HomogeneousForm3(self.degree + other.degree, self.poly * other.poly)
        return HomogeneousForm3(self.degree, self.poly * scalar(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return HomogeneousForm3(self.degree, self.poly / scalar(other))

    def __pow__(self, n: int):
        return HomogeneousForm3(self.degree * n, self.poly**n)

    def evaluate(self, point):
        return self.poly.evaluate(point)

    def __str__(self):
        return str(self.poly)


def homogenize(p: Poly, target_degree: int, chart: int = 0) -> HomogeneousForm3:
    """Degree-``target_degree`` form whose dehomogenization on ``chart`` is ``p``."""
    if p.degree > target_degree:
        raise DegreeExceeded(f"degree {p.degree} exceeds target {target_degree}")
    c, iz, iw = CHART_LAYOUT[int(chart)]
    out = {}
    for (a, b), coef in p.terms.items():
        e = [0, 0, 0]
        e[iz], e[iw], e[c] = a, b, target_degree - a - b
        out[tuple(e)] = coef
    return HomogeneousForm3(target_degree, Poly(out, PROJ_VARS))


def dehomogenize(f: HomogeneousForm3 | Poly, chart: int = 0, vars=AFFINE_VARS) -> Poly:
    """Set the chart's distinguished coordinate to 1 and read the other two as ``(z, w)``."""
    poly = f.poly if isinstance(f, HomogeneousForm3) else f
    c, iz, iw = CHART_LAYOUT[int(chart)]
    out = {}
    for e, coef in poly.terms.items():
        key = (e[iz], e[iw])
        out[key] = out[key] + coef if key in out else coef
    return Poly(out, vars)


def substitute(p: Poly, mapping: Mapping[str, Poly]) -> Poly:
    return p.substitute(mapping)
