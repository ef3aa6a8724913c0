"""Charts, global sections and transition data on the projective plane.

Global models of sections:

* ``O(k)``: a homogeneous form of degree k.
* ``T(-1)``: a vector ``v`` in C^3, the vector field ``sum v_i * x_c * d/dx_i``
  in the chart with distinguished coordinate ``x_c``.
* ``T``: a traceless 3x3 matrix ``m``, the vector field ``sum (m x)_i d/dx_i``
  (scalar matrices give the Euler field, which is zero).

Transition convention: ``rep_j(chart_map(i, j)) == transition(i, j) * rep_i``,
everything written in chart-i coordinates.  Tangent transitions are the
Jacobians of the chart changes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .errors import NotASquare, SingularEvaluationPoint, ZeroSection
from .poly import AFFINE_VARS, CHART_LAYOUT, PROJ_VARS, HomogeneousForm3, Poly, dehomogenize
from .ratfunc import RatFunc, RatFuncMatrix, mat_identity, mat_mul, mat_rank
from .scalars import ONE, ZERO, exact_sqrt, lex_positive, scalar


class Bundle(str, Enum):
    O = "O"
    T = "T"
    T_MINUS_1 = "T(-1)"
    SYM2_T = "Sym2T"
    SYM2_T_MINUS_2 = "Sym2T(-2)"


@dataclass(frozen=True)
class Chart:
    index: int

    def __post_init__(self):
        if self.index not in (0, 1, 2):
            raise ValueError(f"chart index must be 0, 1 or 2, not {self.index}")

    @property
    def distinguished(self) -> int:
        return CHART_LAYOUT[self.index][0]

    @property
    def z_index(self) -> int:
        return CHART_LAYOUT[self.index][1]

    @property
    def w_index(self) -> int:
        return CHART_LAYOUT[self.index][2]

    def embedding(self) -> list:
        """Homogeneous coordinates of the chart point ``(z, w)`` as polynomials."""
        z, w = Poly.var("z"), Poly.var("w")
        out = [None, None, None]
        out[self.distinguished] = Poly.constant(ONE)
        out[self.z_index] = z
        out[self.w_index] = w
        return out

    def __int__(self):
        return self.index


CHARTS = (Chart(0), Chart(1), Chart(2))


def _chart(c) -> Chart:
    return c if isinstance(c, Chart) else Chart(int(c))


@lru_cache(maxsize=None)
def chart_map(i, j) -> dict:
    """Chart-j coordinates as rational functions of chart-i coordinates."""
    ci, cj = _chart(i), _chart(j)
    x = [RatFunc(p) for p in ci.embedding()]
    return {"z": x[cj.z_index] / x[cj.distinguished], "w": x[cj.w_index] / x[cj.distinguished]}


@lru_cache(maxsize=None)
def jacobian(i, j) -> RatFuncMatrix:
    m = chart_map(i, j)
    return RatFuncMatrix(
        [[m["z"].diff("z"), m["z"].diff("w")], [m["w"].diff("z"), m["w"].diff("w")]]
    )


@lru_cache(maxsize=None)
def o1_transition(i, j) -> RatFunc:
    """``x_{c(i)} / x_{c(j)}`` in chart-i coordinates."""
    x = [RatFunc(p) for p in _chart(i).embedding()]
    return x[_chart(i).distinguished] / x[_chart(j).distinguished]


def sym2_entries(g):
    """Symmetric square of a 2x2 matrix in the ordered basis (e1^2, e1e2, e2^2).

    Acts on coefficient vectors, i.e. on ``(s1^2, 2*s1*s2, s2^2)``.
    """
    (a, b), (c, d) = g[0], g[1]
    return [
        [a * a, a * b, b * b],
        [2 * c * a, d * a + c * b, 2 * d * b],
        [c * c, c * d, d * d],
    ]


def sym2_matrix(g):
    if isinstance(g, RatFuncMatrix):
        return RatFuncMatrix(sym2_entries(g.rows), g.vars)
    return sym2_entries([[scalar(x) for x in row] for row in g])


def transition(bundle: Bundle | str, i, j, k: int = 1):
    """Transition data for ``bundle`` from chart i to chart j (scalar for ``O(k)``)."""
    return _transition(Bundle(bundle), int(i), int(j), k)


@lru_cache(maxsize=None)
def _transition(bundle: Bundle, i: int, j: int, k: int):
    if int(i) == int(j):
        raise ValueError("transition needs two distinct charts")
    if bundle is Bundle.O:
        return o1_transition(i, j) ** k
    jac = jacobian(i, j)
    if bundle is Bundle.T:
        return jac
    twisted = jac * o1_transition(i, j).inverse()
    if bundle is Bundle.T_MINUS_1:
        return twisted
    if bundle is Bundle.SYM2_T:
        return sym2_matrix(jac)
    return sym2_matrix(twisted)


# --- points -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PointP2:
    coords: tuple

    def __post_init__(self):
        c = tuple(scalar(x) for x in self.coords)
        if len(c) != 3 or all(x == 0 for x in c):
            raise ValueError("a projective point needs three coordinates, not all zero")
        object.__setattr__(self, "coords", c)

    def normalized(self) -> tuple:
        lead = next(x for x in self.coords if x != 0)
        return tuple(x / lead for x in self.coords)

    def __eq__(self, other):
        if not isinstance(other, PointP2):
            return NotImplemented
        a, b = self.coords, other.coords
        return all(a[i] * b[j] == a[j] * b[i] for i in range(3) for j in range(i + 1, 3))

    def __hash__(self):
        return hash(self.normalized())

    def in_chart(self, chart) -> bool:
        return self.coords[_chart(chart).distinguished] != 0

    def chart_coords(self, chart) -> tuple:
        c = _chart(chart)
        d = self.coords[c.distinguished]
        if d == 0:
            raise SingularEvaluationPoint(f"{self} is not in chart {c.index}")
        return (self.coords[c.z_index] / d, self.coords[c.w_index] / d)

    def __str__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"


# --- sections -------------------------------------------------------------------


@dataclass(frozen=True)
class SectionOk:
    form: HomogeneousForm3

    @classmethod
    def from_terms(cls, k: int, terms) -> "SectionOk":
        return cls(HomogeneousForm3.from_terms(k, terms))

    @property
    def k(self) -> int:
        return self.form.degree

    def is_zero(self) -> bool:
        return self.form.is_zero()

    def local_rep(self, chart=0) -> Poly:
        return dehomogenize(self.form, int(chart))

    def __neg__(self):
        return SectionOk(-self.form)

    def __mul__(self, other):
        if isinstance(other, SectionOk):
            return SectionOk(self.form * other.form)
        return SectionOk(self.form * scalar(other))

    __rmul__ = __mul__

    def __add__(self, other: "SectionOk"):
        return SectionOk(self.form + other.form)

    def __sub__(self, other: "SectionOk"):
        return SectionOk(self.form - other.form)

    def __str__(self):
        return str(self.form)


@dataclass(frozen=True)
class SectionTm1:
    v: tuple

    def __post_init__(self):
        v = tuple(scalar(x) for x in self.v)
        if len(v) != 3:
            raise ValueError("a section of T(-1) is a triple")
        object.__setattr__(self, "v", v)

    @classmethod
    def zero(cls) -> "SectionTm1":
        return cls((ZERO, ZERO, ZERO))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.v)

    def local_rep(self, chart=0) -> tuple:
        c = _chart(chart)
        z, w = Poly.var("z"), Poly.var("w")
        vc = self.v[c.distinguished]
        return (Poly.constant(self.v[c.z_index]) - z * vc, Poly.constant(self.v[c.w_index]) - w * vc)

    def __neg__(self):
        return SectionTm1(tuple(-x for x in self.v))

    def __mul__(self, a):
        a = scalar(a)
        return SectionTm1(tuple(a * x for x in self.v))

    __rmul__ = __mul__

    def __truediv__(self, a):
        return self * scalar(a).inverse()

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.v) + ")"


@dataclass(frozen=True)
class SectionT:
    """Traceless representative of a 3x3 matrix modulo scalars."""

    m: tuple

    def __post_init__(self):
        m = tuple(tuple(scalar(x) for x in row) for row in self.m)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("a section of T is a 3x3 matrix")
        tr = m[0][0] + m[1][1] + m[2][2]
        if tr != 0:
            shift = tr / 3
            m = tuple(tuple(x - shift if i == j else x for j, x in enumerate(r)) for i, r in enumerate(m))
        object.__setattr__(self, "m", m)

    @classmethod
    def zero(cls) -> "SectionT":
        return cls(((ZERO,) * 3,) * 3)

    @classmethod
    def from_product(cls, c: SectionTm1, ell: HomogeneousForm3) -> "SectionT":
        """The section ``ell * C`` for a linear form ``ell`` and ``C`` in T(-1)."""
        row = [ell.poly.coefficient(tuple(1 if t == j else 0 for t in range(3))) for j in range(3)]
        return cls(tuple(tuple(c.v[i] * row[j] for j in range(3)) for i in range(3)))

    def entries(self) -> tuple:
        return tuple(x for row in self.m for x in row)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def local_rep(self, chart=0) -> tuple:
        c = _chart(chart)
        x = c.embedding()
        lin = [sum((x[j] * self.m[i][j] for j in range(3)), Poly.zero()) for i in range(3)]
        z, w = Poly.var("z"), Poly.var("w")
        lc = lin[c.distinguished]
        return (lin[c.z_index] - z * lc, lin[c.w_index] - w * lc)

    def __neg__(self):
        return SectionT(tuple(tuple(-x for x in r) for r in self.m))

    def __mul__(self, a):
        a = scalar(a)
        return SectionT(tuple(tuple(a * x for x in r) for r in self.m))

    __rmul__ = __mul__

    def __add__(self, other: "SectionT"):
        return SectionT(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.m, other.m)))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.m) + "]"


@dataclass(frozen=True)
class Sym2Triple:
    """Chart representative ``t11 e1^2 + 2 t12 e1e2 + t22 e2^2`` (middle slot is s1*s2)."""

    t11: Poly
    t12: Poly
    t22: Poly

    @classmethod
    def zero(cls, vars=AFFINE_VARS) -> "Sym2Triple":
        z = Poly.zero(vars)
        return cls(z, z, z)

    @classmethod
    def from_coefficients(cls, c) -> "Sym2Triple":
        c = [x.as_poly() if isinstance(x, RatFunc) else x for x in c]
        if any(x is None for x in c):
            raise ValueError("coefficients are not polynomial")
        return cls(c[0], c[1] / 2, c[2])

    def coefficients(self) -> tuple:
        return (self.t11, self.t12 * 2, self.t22)

    def is_zero(self) -> bool:
        return self.t11.is_zero() and self.t12.is_zero() and self.t22.is_zero()

    def scale(self, f) -> "Sym2Triple":
        return Sym2Triple(self.t11 * f, self.t12 * f, self.t22 * f)

    def __neg__(self):
        return self.scale(-ONE)

    def __add__(self, other: "Sym2Triple"):
        return Sym2Triple(self.t11 + other.t11, self.t12 + other.t12, self.t22 + other.t22)

    def __iter__(self):
        return iter((self.t11, self.t12, self.t22))

    def __str__(self):
        return f"({self.t11}; {self.t12}; {self.t22})"


def local_rep(section, chart=0):
    return section.local_rep(chart)


def sym2_section(c: SectionTm1 | SectionT, chart=0) -> Sym2Triple:
    s1, s2 = c.local_rep(chart)
    return Sym2Triple(s1 * s1, s1 * s2, s2 * s2)


# --- gluing -------------------------------------------------------------------


def glue_check_local(reps: dict, bundle: Bundle | str, k: int = 1) -> bool:
    """Check ``rep_j o chart_map(i, j) == transition(i, j) rep_i`` for every chart pair.

    ``reps`` maps chart index to a Poly (for ``O(k)``) or a sequence of Polys
    (component vector in the bundle's local frame).  Each unordered pair is
    checked once: the reverse transition is the inverse, which the cocycle
    check covers.
    """
    bundle = Bundle(bundle)
    for i in reps:
        for j in reps:
            if j <= i:
                continue
            g = transition(bundle, i, j, k)
            cmap = chart_map(i, j)
            if bundle is Bundle.O:
                lhs = [RatFunc(reps[j]).compose(cmap)]
                rhs = [g * RatFunc(reps[i])]
            else:
                lhs = [RatFunc(p).compose(cmap) for p in reps[j]]
                rhs = g.apply(reps[i])
            if any(a != b for a, b in zip(lhs, rhs)):
                return False
    return True


def glue_check(section) -> bool:
    if isinstance(section, SectionOk):
        return glue_check_local({c: section.local_rep(c) for c in range(3)}, Bundle.O, section.k)
    if isinstance(section, SectionTm1):
        return glue_check_local({c: section.local_rep(c) for c in range(3)}, Bundle.T_MINUS_1)
    if isinstance(section, SectionT):
        return glue_check_local({c: section.local_rep(c) for c in range(3)}, Bundle.T)
    raise TypeError(f"no gluing data for {type(section).__name__}")


def sym2_glue_check(triples: dict, bundle: Bundle | str = Bundle.SYM2_T) -> bool:
    """Gluing of Sym^2 triples given per chart, in coefficient coordinates."""
    return glue_check_local({c: t.coefficients() for c, t in triples.items()}, bundle)


# --- cocycle ------------------------------------------------------------------

# Tangent transitions as displayed in the source, stored verbatim.  Each entry
# is keyed by name and the (source, target) chart pair its name refers to.
def _displayed_tangent_transitions() -> dict:
    z, w = Poly.var("z"), Poly.var("w")
    one = Poly.constant(ONE)

    def r(n, d):
        return RatFunc(n, d)

    g12 = RatFuncMatrix([[r(one, w), r(-z, w * w)], [0, r(-one, w * w)]])
    g23 = RatFuncMatrix([[r(-one, z * z), 0], [r(-z, w * w), r(one, z)]])
    g31 = RatFuncMatrix([[r(-w, z * z), r(one, z)], [r(-one, z * z), 0]])
    return {"g12": (g12, (0, 1)), "g23": (g23, (1, 2)), "g31": (g31, (2, 0))}


DISPLAYED_TANGENT_TRANSITIONS = _displayed_tangent_transitions()


def _overlap_stream(seed: int, bound: int = 9):
    rng = random.Random(seed)
    while True:
        coords = []
        for _ in range(3):
            num = 0
            while num == 0:
                num = rng.randint(-bound, bound)
            coords.append(Fraction(num, rng.randint(1, 5)))
        yield PointP2(tuple(coords))


def overlap_points(n: int, seed: int = 0, bound: int = 9) -> list:
    """Seeded points of the triple overlap: small rationals, every coordinate nonzero."""
    stream = _overlap_stream(seed, bound)
    return [next(stream) for _ in range(n)]


@dataclass
class CocycleReport:
    bundle: str
    source: str
    results: list = field(default_factory=list)  # (point, chart cycle, passed)
    resampled: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(ok for _, _, ok in self.results)

    @property
    def failures(self) -> list:
        return [(p, cyc) for p, cyc, ok in self.results if not ok]


def _eval_at(g, point: PointP2, chart: int):
    zw = point.chart_coords(chart)
    if isinstance(g, RatFunc):
        return [[g.evaluate(zw)]]
    return g.evaluate(zw)


def _cocycle_data(bundle: Bundle, k: int, source: str):
    if source == "displayed":
        if bundle is not Bundle.T:
            raise ValueError("displayed transitions exist only for T")
        g = {pair: m for m, pair in DISPLAYED_TANGENT_TRANSITIONS.values()}
        return g, [(0, 1, 2)]
    if source == "jacobian":
        g = {(i, j): transition(bundle, i, j, k) for i in range(3) for j in range(3) if i != j}
        return g, list(permutations(range(3)))
    raise ValueError(f"unknown transition source {source!r}")


def cocycle_at(point: PointP2, bundle: Bundle | str, k: int = 1, source: str = "jacobian") -> list:
    """``[(cycle, passed)]`` for ``g_ki(p_k) g_jk(p_j) g_ij(p_i) == I`` at one point.

    Raises SingularEvaluationPoint when the point leaves the triple overlap.
    """
    g, cycles = _cocycle_data(Bundle(bundle), k, source)
    rows = []
    for i, j, kk in cycles:
        prod = mat_mul(
            _eval_at(g[(kk, i)], point, kk),
            mat_mul(_eval_at(g[(j, kk)], point, j), _eval_at(g[(i, j)], point, i)),
        )
        rows.append(((i, j, kk), prod == mat_identity(len(prod))))
    return rows


def cocycle_check(
    bundle: Bundle | str, k: int = 1, points: int = 20, seed: int = 0, source: str = "jacobian"
) -> CocycleReport:
    """Run :func:`cocycle_at` over ``points`` seeded overlap points.

    ``source='jacobian'`` uses derived transitions over every ordered triple of
    charts; ``source='displayed'`` uses the displayed tangent matrices on the cycle
    0 -> 1 -> 2 -> 0.
    """
    bundle = Bundle(bundle)
    _cocycle_data(bundle, k, source)
    report = CocycleReport(bundle.value if bundle is not Bundle.O else f"O({k})", source)
    stream = _overlap_stream(seed)
    tested = 0
    while tested < points:
        p = next(stream)
        try:
            rows = cocycle_at(p, bundle, k, source)
        except SingularEvaluationPoint:
            report.resampled += 1
            continue
        tested += 1
        for cyc, ok in rows:
            report.results.append((p, cyc, ok))
    return report


@dataclass(frozen=True)
class TransitionComparison:
    name: str
    pair: tuple
    matches: bool
    mismatched_entries: tuple
    matches_reverse: bool
    note: str


def compare_displayed_transitions() -> list:
    """Compare each displayed tangent transition with the derived Jacobian.

    Mismatches are reported, never corrected.  ``matches_reverse`` records
    whether the displayed matrix is instead the Jacobian of the reverse chart
    change written in the target chart's coordinates.
    """
    out = []
    for name, (mat, (i, j)) in DISPLAYED_TANGENT_TRANSITIONS.items():
        jac = jacobian(i, j)
        bad = tuple(
            (r, c) for r in range(2) for c in range(2) if mat[r, c] != jac[r, c]
        )
        reverse = mat == jacobian(j, i)
        if not bad:
            note = f"{name} equals the Jacobian of chart {i} -> chart {j}"
        elif reverse:
            note = (
                f"{name} differs from the Jacobian of chart {i} -> chart {j} but equals "
                f"the Jacobian of chart {j} -> chart {i} (direction reversed)"
            )
        else:
            cells = ", ".join(f"({r + 1},{c + 1}): shown {mat[r, c]}, derived {jac[r, c]}" for r, c in bad)
            note = f"{name} differs from the Jacobian of chart {i} -> chart {j} at {cells}"
        out.append(TransitionComparison(name, (i, j), not bad, bad, reverse, note))
    return out


# --- square roots of symmetric squares ---------------------------------------------


def tm1_from_local(s1: Poly, s2: Poly) -> Optional[SectionTm1]:
    """The T(-1) section with chart-0 representative (s1, s2), if there is one."""
    allowed1 = {(0, 0), (1, 0)}
    allowed2 = {(0, 0), (0, 1)}
    if set(s1.terms) - allowed1 or set(s2.terms) - allowed2:
        return None
    v2 = -s1.coefficient((1, 0))
    if s2.coefficient((0, 1)) != -v2:
        return None
    return SectionTm1((s1.constant_term(), s2.constant_term(), v2))


def tangent_from_local(a1: Poly, a2: Poly) -> Optional[SectionT]:
    """The T section with chart-0 representative (a1, a2), if there is one."""
    allowed1 = {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)}
    allowed2 = {(0, 0), (1, 0), (0, 1), (1, 1), (0, 2)}
    if set(a1.terms) - allowed1 or set(a2.terms) - allowed2:
        return None
    c1, c2 = a1.coefficient, a2.coefficient
    m20, m21 = -c1((2, 0)), -c1((1, 1))
    if c2((1, 1)) != -m20 or c2((0, 2)) != -m21:
        return None
    p, q = c1((1, 0)), c2((0, 1))
    m22 = -(p + q) / 3
    m = (
        (p + m22, c1((0, 1)), c1((0, 0))),
        (c2((1, 0)), q + m22, c2((0, 0))),
        (m20, m21, m22),
    )
    return SectionT(m)


def pm_normalize(entries: Sequence) -> bool:
    """True when the first nonzero entry is lex-positive (the sign to keep)."""
    for e in entries:
        if e != 0:
            return lex_positive(e)
    return True


def recover_sqrt(t):
    """Both square roots ``{+C, -C}`` of a symmetric square, canonical sign first.

    ``t`` is a :class:`Sym2Triple` (returns T(-1) sections) or a triple of
    scalars (returns pairs ``(s1, s2)``).  The zero triple returns a single root.
    """
    if isinstance(t, Sym2Triple):
        if t.is_zero():
            return (SectionTm1.zero(),)
        s1, s2 = _poly_sqrt_pair(t)
        c = tm1_from_local(s1, s2)
        if c is None:
            raise NotASquare("square root exists but is not a section of T(-1)")
        if not pm_normalize(c.v):
            c = -c
        return (c, -c)
    t11, t12, t22 = (scalar(x) for x in t)
    if t11 == 0 and t12 == 0 and t22 == 0:
        return ((ZERO, ZERO),)
    if t12 * t12 != t11 * t22:
        raise NotASquare(f"t12^2 != t11*t22 for {t11}, {t12}, {t22}")
    if t11 != 0:
        s1, _ = exact_sqrt(t11)
        s2 = t12 / s1
    else:
        s1, (s2, _) = ZERO, exact_sqrt(t22)
    if not pm_normalize((s1, s2)):
        s1, s2 = -s1, -s2
    return ((s1, s2), (-s1, -s2))


def _poly_sqrt_pair(t: Sym2Triple):
    if t.t12 * t.t12 != t.t11 * t.t22:
        raise NotASquare("t12^2 != t11*t22")
    s1 = t.t11.sqrt()
    if s1 is None:
        raise NotASquare("t11 is not a square polynomial")
    if s1:
        s2 = t.t12.divexact(s1)
    else:
        s2 = t.t22.sqrt()
    if s2 is None or s2 * s2 != t.t22 or s1 * s2 != t.t12:
        raise NotASquare("no polynomial square root")
    return s1, s2


def recover_tangent_sqrt(t: Sym2Triple) -> Optional[SectionT]:
    """A section A of T with ``sym2_section(A) == t``, canonical sign, or None."""
    if t.is_zero():
        return SectionT.zero()
    try:
        a1, a2 = _poly_sqrt_pair(t)
    except NotASquare:
        return None
    a = tangent_from_local(a1, a2)
    if a is None:
        return None
    return a if pm_normalize(a.entries()) else -a


def split_tangent(a: SectionT):
    """Write ``a`` as ``ell * C`` (linear form times a T(-1) section), or return None.

    ``a`` is decomposable exactly when ``m + s*I`` has rank one for some scalar s,
    which forces ``m^2 == s*m + 2*s^2*I`` for the traceless representative m.
    """
    m = a.m
    if a.is_zero():
        return None
    candidates = []
    off = [(i, j) for i in range(3) for j in range(3) if i != j and m[i][j] != 0]
    if off:
        i, j = off[0]
        sq = mat_mul(m, m)
        candidates.append(sq[i][j] / m[i][j])
    else:
        d = [m[i][i] for i in range(3)]
        candidates.extend(-d[i] for i in range(3) for j in range(i + 1, 3) if d[i] == d[j])
    for s in candidates:
        n = [[m[i][j] + (s if i == j else ZERO) for j in range(3)] for i in range(3)]
        if mat_rank(n) != 1:
            continue
        i, j = next((i, j) for i in range(3) for j in range(3) if n[i][j] != 0)
        v = SectionTm1(tuple(n[r][j] for r in range(3)))
        row = [n[i][c] / n[i][j] for c in range(3)]
        ell = HomogeneousForm3(1, Poly({_unit(c): row[c] for c in range(3)}, PROJ_VARS))
        assert SectionT.from_product(v, ell) == a
        return ell, v
    return None


def zero_point(c: SectionTm1) -> PointP2:
    if c.is_zero():
        raise ZeroSection("the zero section vanishes everywhere")
    p = PointP2(c.v)
    chart = next(ch for ch in CHARTS if p.in_chart(ch))
    zw = p.chart_coords(chart)
    assert all(s.evaluate(zw) == 0 for s in c.local_rep(chart))
    return p


# --- conics -------------------------------------------------------------------


@dataclass(frozen=True)
class ConicRank:
    rank: int
    factors: tuple = ()


def _unit(i: int) -> tuple:
    return tuple(1 if t == i else 0 for t in range(3))


def conic_matrix(q) -> list:
    poly = q.form.poly if isinstance(q, SectionOk) else q.poly if isinstance(q, HomogeneousForm3) else q
    m = [[ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            e = tuple(a + b for a, b in zip(_unit(i), _unit(j)))
            c = poly.coefficient(e)
            m[i][j] = c if i == j else c / 2
    return m


def conic_rank(q) -> ConicRank:
    """Rank of the conic's symmetric matrix, with its linear factors when rank <= 2."""
    form = q.form if isinstance(q, SectionOk) else q
    if form.degree != 2:
        raise ValueError("conic_rank needs a degree-2 form")
    if form.is_zero():
        raise ZeroSection("the zero conic has no rank")
    m = conic_matrix(form)
    rank = mat_rank(m)
    if rank == 3:
        return ConicRank(3)
    poly = form.poly
    if rank == 1:
        i = next(i for i in range(3) if m[i][i] != 0)
        root, _ = exact_sqrt(m[i][i], within=poly.tower)
        ell = Poly({_unit(j): m[i][j] / root for j in range(3)}, PROJ_VARS)
        assert ell * ell == poly
        return ConicRank(1, (HomogeneousForm3(1, ell),))
    l1, l2 = _factor_rank2(poly)
    assert l1 * l2 == poly
    _, c1 = l1.leading_term()
    _, c2 = l2.leading_term()
    l1, l2 = l1 / c1, l2 / c2
    l1, l2 = sorted((l1, l2), key=lambda p: sorted(p.terms), reverse=True)
    return ConicRank(2, (HomogeneousForm3(1, l1 * (c1 * c2)), HomogeneousForm3(1, l2)))


def _factor_rank2(poly: Poly):
    for i in range(3):
        if poly.coefficient(tuple(2 * u for u in _unit(i))) != 0:
            return _factor_in(poly, i)
    i, j = next(
        (i, j) for i in range(3) for j in range(i + 1, 3)
        if poly.coefficient(tuple(a + b for a, b in zip(_unit(i), _unit(j)))) != 0
    )
    xi, xj = Poly.var(PROJ_VARS[i], PROJ_VARS), Poly.var(PROJ_VARS[j], PROJ_VARS)
    shifted = poly.substitute({PROJ_VARS[i]: xi + xj})
    l1, l2 = _factor_in(shifted, j)
    back = {PROJ_VARS[i]: xi - xj}
    return l1.substitute(back), l2.substitute(back)


def _factor_in(poly: Poly, i: int):
    a = poly.coefficient(tuple(2 * u for u in _unit(i)))
    b = poly.coeff_in(i, 1)
    c = poly.coeff_in(i, 0)
    disc = b * b - c * (4 * a)
    delta = disc.sqrt(within=poly.tower)
    if delta is None:
        raise NotASquare("discriminant of a rank-2 conic is not a square")
    xi = Poly.var(PROJ_VARS[i], PROJ_VARS)
    l1 = xi * a + (b - delta) / 2
    l2 = (xi * a + (b + delta) / 2) / a
    return l1, l2
