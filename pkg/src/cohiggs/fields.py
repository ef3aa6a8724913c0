"""Traceless co-Higgs fields on the rank-2 Schwarzenberger bundles.

Every variant exposes its local components on a chart: writing the field as
``phi_z (x) d/dz + phi_w (x) d/dw`` gives two traceless 2x2 matrices, and the
field is integrable exactly when they commute.  The determinant is the
symmetric product of those components, a section of Sym^2 T.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import DegreeExceeded, ExcludedIndex
from .geometry import (
    Bundle,
    SectionOk,
    SectionT,
    SectionTm1,
    Sym2Triple,
    chart_map,
    conic_rank,
    jacobian,
    o1_transition,
    split_tangent,
    sym2_glue_check,
    sym2_section,
)
from .poly import HomogeneousForm3, Poly, dehomogenize, homogenize
from .ratfunc import RatFunc, RatFuncMatrix, commutator
from .scalars import ONE, ZERO, exact_sqrt, scalar

SPLITTINGS = {0: "O+O(-1)", 1: "O+O", 2: "Tangent"}


@dataclass(frozen=True)
class SchwarzInfo:
    k: int
    c1: int
    c2: int
    splitting: str
    h1_end0: int


def schwarz_info(k: int) -> SchwarzInfo:
    if k < 0:
        raise ValueError("the index k is nonnegative")
    if k == 3:
        raise ExcludedIndex("k = 3 is the excluded case")
    return SchwarzInfo(
        k=k,
        c1=k - 1,
        c2=k * (k - 1) // 2,
        splitting=SPLITTINGS.get(k, "Generic"),
        h1_end0=0 if k <= 2 else k * k - 4,
    )


# --- field variants -------------------------------------------------------------


@dataclass(frozen=True)
class CoHiggsK0:
    """``[[lam, mu], [1, -lam]] (x) C``."""

    lam: SectionOk
    mu: SectionOk
    C: SectionTm1

    def __post_init__(self):
        if self.lam.k != 1 or self.mu.k != 2:
            raise DegreeExceeded("lam must be a section of O(1) and mu of O(2)")

    k = 0


@dataclass(frozen=True)
class CoHiggsK1:
    """``[[A, B], [C, -A]]`` with A, B, C sections of T."""

    A: SectionT
    B: SectionT
    C: SectionT

    k = 1


@dataclass(frozen=True)
class CoHiggsK2:
    """Chart-0 core ``[[F, G], [H, -F]]`` tensored with ``C``."""

    F: Poly
    G: Poly
    H: object
    C: SectionTm1

    def __post_init__(self):
        object.__setattr__(self, "H", scalar(self.H.constant_term() if isinstance(self.H, Poly) else self.H))
        if self.F.degree > 1 or self.G.degree > 2:
            raise DegreeExceeded("F must have degree <= 1 and G degree <= 2")

    k = 2

    def core(self) -> RatFuncMatrix:
        return RatFuncMatrix([[self.F, self.G], [self.H, -self.F]])


@dataclass(frozen=True)
class CoHiggsKBig:
    """Determinant data ``det(phi0) = lam * rho`` of ``phi0 (x) C`` for k > 3."""

    k: int
    rho: SectionOk
    lam: object
    C: SectionTm1

    def __post_init__(self):
        object.__setattr__(self, "lam", scalar(self.lam))
        if self.k <= 3:
            raise ExcludedIndex("this variant needs k > 3")
        if self.lam == 0:
            raise ValueError("lam must be nonzero")
        if self.rho.k != 2 or conic_rank(self.rho).rank != 3:
            raise ValueError("rho must be an irreducible conic")


CoHiggsField = Union[CoHiggsK0, CoHiggsK1, CoHiggsK2, CoHiggsKBig]


# --- local data -------------------------------------------------------------------


def _core_local(phi, chart: int) -> RatFuncMatrix:
    """The 2x2 factor phi0 of a decomposed field, in the frame of ``chart``."""
    if isinstance(phi, CoHiggsK0):
        lam = dehomogenize(phi.lam.form, chart)
        mu = dehomogenize(phi.mu.form, chart)
        return RatFuncMatrix([[lam, mu], [ONE, -lam]])
    if isinstance(phi, CoHiggsKBig):
        return RatFuncMatrix([[ZERO, dehomogenize(phi.rho.form, chart) * phi.lam], [-ONE, ZERO]])
    m0 = phi.core()
    if chart == 0:
        return m0
    jac = jacobian(0, chart)
    moved = (jac.inverse() * m0 * jac) * o1_transition(0, chart)
    return moved.compose(chart_map(chart, 0))


def local_components(phi: CoHiggsField, chart: int = 0) -> tuple:
    """``(phi_z, phi_w)`` on the chart, as 2x2 rational-function matrices."""
    chart = int(chart)
    if isinstance(phi, CoHiggsK1):
        a, b, c = (x.local_rep(chart) for x in (phi.A, phi.B, phi.C))
        comps = tuple(RatFuncMatrix([[a[i], b[i]], [c[i], -a[i]]]) for i in range(2))
    else:
        core = _core_local(phi, chart)
        comps = tuple(core * RatFunc(s) for s in phi.C.local_rep(chart))
    for m in comps:
        assert (m[0, 0] + m[1, 1]).is_zero()
    return comps


def integrable(phi: CoHiggsField, chart: int = 0) -> bool:
    pz, pw = local_components(phi, chart)
    return commutator(pz, pw).is_zero()


def _as_poly(f: RatFunc) -> Poly:
    p = f.as_poly()
    if p is None:
        raise ValueError(f"{f} is not polynomial on this chart")
    return p


def det_local(phi: CoHiggsField, chart: int = 0) -> Sym2Triple:
    """Determinant of the field on a chart as a symmetric product of its components."""
    (m1, m2) = local_components(phi, chart)
    a1, b1, c1 = m1[0, 0], m1[0, 1], m1[1, 0]
    a2, b2, c2 = m2[0, 0], m2[0, 1], m2[1, 0]
    half = ONE / 2
    t11 = -(a1 * a1 + b1 * c1)
    t12 = -(a1 * a2 + (b1 * c2 + b2 * c1) * half)
    t22 = -(a2 * a2 + b2 * c2)
    return Sym2Triple(_as_poly(t11), _as_poly(t12), _as_poly(t22))


# --- determinants -----------------------------------------------------------------


@dataclass(frozen=True)
class QCForm:
    """``q (x) Sym^2(C)``."""

    q: SectionOk
    C: SectionTm1

    def triple(self) -> Sym2Triple:
        return sym2_section(self.C).scale(self.q.local_rep(0))


@dataclass(frozen=True)
class TangentForm:
    """``-Sym^2(A)``."""

    A: SectionT

    def triple(self) -> Sym2Triple:
        return -sym2_section(self.A)


@dataclass(frozen=True)
class RhoForm:
    """``lam * rho (x) Sym^2(C)``."""

    lam: object
    rho: SectionOk
    C: SectionTm1

    def triple(self) -> Sym2Triple:
        return sym2_section(self.C).scale(self.rho.local_rep(0) * self.lam)


StructuredForm = Union[QCForm, TangentForm, RhoForm]


@dataclass(frozen=True)
class DetSection:
    triple: Sym2Triple
    structured: Optional[StructuredForm] = None
    k: Optional[int] = None

    def is_zero(self) -> bool:
        return self.triple.is_zero()


def _poly_section(p: Poly, degree: int) -> SectionOk:
    return SectionOk(homogenize(p, degree))


def k2_target(phi: CoHiggsK2) -> SectionOk:
    """The conic ``det(phi0) = -F^2 - G*H`` as a section of O(2)."""
    return _poly_section(-(phi.F * phi.F) - phi.G * phi.H, 2)


def determinant(phi: CoHiggsField) -> DetSection:
    triple = det_local(phi, 0)
    if isinstance(phi, CoHiggsK0):
        q = -(phi.lam * phi.lam) - phi.mu
        return DetSection(triple, QCForm(q, phi.C), 0)
    if isinstance(phi, CoHiggsK2):
        return DetSection(triple, QCForm(k2_target(phi), phi.C), 2)
    if isinstance(phi, CoHiggsKBig):
        return DetSection(triple, RhoForm(phi.lam, phi.rho, phi.C), phi.k)
    return DetSection(triple, k1_structure(phi), 1)


def det_glue_check(phi: CoHiggsField) -> bool:
    return sym2_glue_check({c: det_local(phi, c) for c in range(3)}, Bundle.SYM2_T)


# --- the two shapes of integrable K1 fields ----------------------------------------


def _ratio(x: SectionT, r: SectionT):
    """Scalar c with ``x == c * r``, or None."""
    xs, rs = x.entries(), r.entries()
    i = next(i for i, e in enumerate(rs) if e != 0)
    c = xs[i] / rs[i]
    return c if all(a == c * b for a, b in zip(xs, rs)) else None


def constant_shape(phi: CoHiggsK1):
    """``(a, b, c, R)`` with ``(A, B, C) == (a R, b R, c R)`` for scalars, or None."""
    sections = (phi.A, phi.B, phi.C)
    r = next((s for s in sections if not s.is_zero()), None)
    if r is None:
        return None
    coeffs = [ZERO if s.is_zero() else _ratio(s, r) for s in sections]
    if any(c is None for c in coeffs):
        return None
    return (*coeffs, r)


def common_factor_shape(phi: CoHiggsK1):
    """``(lam, mu, mu2, C)`` with ``(A, B, C) == (lam, mu, mu2) (x) C``, or None.

    The three coefficients are linear forms; ``C`` is a T(-1) section.
    """
    parts = []
    base = None
    for s in (phi.A, phi.B, phi.C):
        if s.is_zero():
            parts.append(None)
            continue
        split = split_tangent(s)
        if split is None:
            return None
        ell, v = split
        if base is None:
            base = v
        else:
            i = next(i for i, e in enumerate(base.v) if e != 0)
            c = v.v[i] / base.v[i]
            if v != base * c:
                return None
            ell = ell * c
        parts.append(ell)
    if base is None:
        return None
    zero = HomogeneousForm3.zero(1)
    return (*(zero if p is None else p for p in parts), base)


def k1_structure(phi: CoHiggsK1) -> Optional[StructuredForm]:
    """Structured determinant of a K1 field when its shape is recognized."""
    if phi.B.is_zero() or phi.C.is_zero():
        return TangentForm(phi.A)
    const = constant_shape(phi)
    if const is not None:
        a, b, c, r = const
        root, _ = exact_sqrt(a * a + b * c)
        return TangentForm(r * root)
    common = common_factor_shape(phi)
    if common is not None:
        lam, mu, mu2, v = common
        return QCForm(SectionOk(-(lam * lam) - mu * mu2), v)
    return None


# --- the local form of phi0 on the tangent bundle ------------------------------------


def solve_phi0_chart1(F: Poly, G: Poly, H) -> Optional[RatFuncMatrix]:
    """Chart-1 core ``[[f, g], [h, -f]]`` forced by the displayed gluing relation.

    The relation reads ``M0 * J = K * (M1 o chart_map(0, 1))`` with ``J`` the
    tangent transition and ``K`` the T(-1) transition from chart 0 to chart 1.
    """
    m0 = RatFuncMatrix([[F, G], [H, -F]])
    jac = jacobian(0, 1)
    k = jac * o1_transition(0, 1).inverse()
    return (k.inverse() * m0 * jac).compose(chart_map(1, 0))


def phi0_glue_check(phi: CoHiggsK2 | tuple) -> bool:
    """True when the chart-1 solution is polynomial with the stated degree bounds."""
    if isinstance(phi, CoHiggsK2):
        F, G, H = phi.F, phi.G, Poly.constant(phi.H)
    else:
        F, G, H = (x if isinstance(x, Poly) else Poly.constant(x) for x in phi)
    m1 = solve_phi0_chart1(F, G, H)
    f, g, h, f2 = (m1[i, j].as_poly() for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))
    if any(p is None for p in (f, g, h, f2)) or f2 != -f:
        return False
    return f.degree <= 1 and g.degree <= 2 and h.degree <= 0


def phi0_for_target(q: SectionOk | Poly) -> tuple:
    """``(F, G, H)`` in the degree bounds with ``-F^2 - G*H`` equal to q on chart 0."""
    s = q.local_rep(0) if isinstance(q, SectionOk) else q
    if s.is_zero():
        return Poly.zero(), Poly.zero(), ZERO
    return Poly.zero(), -s, ONE
