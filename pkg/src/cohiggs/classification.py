"""Square completion, linear-product splitting and canonical image points."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import Unclassifiable, ZeroInput
from .fields import DetSection, QCForm, RhoForm, TangentForm
from .geometry import (
    SectionOk,
    SectionT,
    SectionTm1,
    Sym2Triple,
    conic_rank,
    pm_normalize,
    recover_tangent_sqrt,
    split_tangent,
    sym2_section,
)
from .poly import Poly, dehomogenize, homogenize
from .ratfunc import nullspace
from .scalars import ZERO, Extension, common_tower, exact_sqrt, tower_of

ROTATED_VARS = ("z'", "w'")


@dataclass(frozen=True)
class SquareDecomposition:
    lam: Poly
    mu: Poly
    case_tag: str
    rotated: bool = False
    extension_used: Optional[Extension] = None
    mu_rotated: Optional[Poly] = None  # case iii: mu in the rotated coordinates


def _coeffs(s: Poly):
    c = s.coefficient
    return c((2, 0)), c((1, 1)), c((0, 2)), c((1, 0)), c((0, 1)), c((0, 0))


def case_tag(s: Poly) -> str:
    a, b, c, *_ = _coeffs(s)
    if a != 0:
        return "i"
    if c != 0:
        return "ii"
    if b != 0:
        return "iii"
    return "iv"


def complete_square(s: Poly) -> SquareDecomposition:
    """``s == lam^2 + mu`` following the leading-coefficient cases i to iv."""
    if s.degree > 2:
        raise ValueError("complete_square needs degree <= 2")
    a, b, c, d, e, f = _coeffs(s)
    z, w = Poly.var("z"), Poly.var("w")
    tag = case_tag(s)
    if tag == "iv":
        return SquareDecomposition(Poly.zero(), s, "iv")
    lead = {"i": a, "ii": c, "iii": b}[tag]
    r, ext = exact_sqrt(lead, within=s.tower)
    if tag == "i":
        lam = z * r + w * (b / (2 * r)) + d / (2 * r)
    elif tag == "ii":
        lam = w * r + z * (b / (2 * r)) + e / (2 * r)
    else:
        # z = z' + w', w = z' - w'
        zr = (z + w) / 2
        lam = zr * r + (d + e) / (2 * r)
    mu = s - lam * lam
    if tag != "iii":
        return SquareDecomposition(lam, mu, tag, False, ext)
    wp = Poly.var("w'", ROTATED_VARS)
    mu_rot = wp * wp * (-b) + wp * (d - e) + (f - (d + e) * (d + e) / (4 * b))
    return SquareDecomposition(lam, mu, tag, True, ext, mu_rot)


def _univariate_factor(p: Poly, u: Poly):
    """Split ``p == alpha u^2 + beta u + gamma`` into two factors of degree <= 1 in u."""
    alpha, beta, gamma = _univariate_coeffs(p, u)
    if alpha == 0:
        return p, Poly.constant(1)
    disc = beta * beta - alpha * gamma * 4
    root, _ = exact_sqrt(disc, within=p.tower)
    r_plus = (-beta + root) / (alpha * 2)
    r_minus = (-beta - root) / (alpha * 2)
    return (u - r_plus) * alpha, u - r_minus


def _univariate_coeffs(p: Poly, u: Poly):
    """Coefficients of p as a quadratic in the linear form u (u has no constant term)."""
    alpha = beta = ZERO
    gamma = p.constant_term()
    rest = p - gamma
    u2 = u * u
    if rest.degree == 2:
        e, c = rest.leading_term()
        alpha = c / u2.coefficient(e)
        rest = rest - u2 * alpha
    if not rest.is_zero():
        e, c = rest.leading_term()
        beta = c / u.coefficient(e)
        rest = rest - u * beta
    if not rest.is_zero():
        raise ValueError("remainder is not a polynomial in the given linear form")
    return alpha, beta, gamma


def decompose_linear_product(s: Poly):
    """``(lam, mu, mu2)`` of degree <= 1 with ``s == lam^2 + mu * mu2``.

    A conic that already splits into lines is factored directly (lam = 0);
    otherwise the square is completed and the univariate remainder factored.
    """
    if s.degree > 2:
        raise ValueError("decompose_linear_product needs degree <= 2")
    zero = Poly.zero()
    if s.is_zero():
        return zero, zero, zero
    if s.degree <= 1:
        return zero, s, Poly.constant(1)
    cr = conic_rank(homogenize(s, 2))
    if cr.rank == 1:
        ell = dehomogenize(cr.factors[0], 0)
        return zero, ell, ell
    if cr.rank == 2:
        return zero, dehomogenize(cr.factors[0], 0), dehomogenize(cr.factors[1], 0)
    sq = complete_square(s)
    z, w = Poly.var("z"), Poly.var("w")
    u = {"i": w, "ii": z, "iii": (z - w) / 2}[sq.case_tag]
    mu, mu2 = _univariate_factor(sq.mu, u)
    return sq.lam, mu, mu2


# --- image points -------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroImage:
    pass


@dataclass(frozen=True)
class QSym2:
    q: SectionOk
    C: SectionTm1


@dataclass(frozen=True)
class SymTangent:
    A: SectionT


@dataclass(frozen=True)
class RhoSym2:
    C: SectionTm1
    rho: SectionOk


ImagePoint = Union[ZeroImage, QSym2, SymTangent, RhoSym2]


def _lead(entries):
    return next((e for e in entries if e != 0), None)


def canonicalize_qc(q: SectionOk, c: SectionTm1) -> QSym2:
    """Orbit representative of ``(q, C) ~ (a^2 q, C / a)``: C's first nonzero coordinate is 1."""
    if q.is_zero() or c.is_zero():
        raise ZeroInput("canonicalize_qc needs q != 0 and C != 0")
    alpha = _lead(c.v)
    return QSym2(q * (alpha * alpha), c / alpha)


def canonicalize_pm(a):
    """The member of ``{a, -a}`` whose first nonzero entry is lex-positive."""
    entries = a.entries() if isinstance(a, SectionT) else a.v if isinstance(a, SectionTm1) else tuple(a)
    if all(e == 0 for e in entries):
        raise ZeroInput("canonicalize_pm needs a nonzero section")
    if pm_normalize(entries):
        return a
    return -a if not isinstance(a, tuple) else tuple(-e for e in a)


def canonicalize_rho(lam, c: SectionTm1, rho: SectionOk) -> RhoSym2:
    """Absorb ``lam`` into C as ``sqrt(lam) * C`` after making rho's leading coefficient 1."""
    if lam == 0 or c.is_zero():
        raise ZeroInput("canonicalize_rho needs lam != 0 and C != 0")
    _, lead = rho.form.poly.leading_term()
    rho = rho * lead.inverse()
    tower = common_tower(*(tower_of(x) for x in c.v))
    root, _ = exact_sqrt(lam * lead, within=tower)
    return RhoSym2(canonicalize_pm(c * root), rho)


def sym_tangent_point(a: SectionT) -> ImagePoint:
    """Image of ``-Sym^2(A)``; a decomposable ``A = ell * C`` is read as ``(-ell^2, C)``."""
    if a.is_zero():
        return ZeroImage()
    split = split_tangent(a)
    if split is not None:
        ell, v = split
        return canonicalize_qc(SectionOk(-(ell * ell)), v)
    return SymTangent(canonicalize_pm(a))


def qc_point(q: SectionOk, c: SectionTm1) -> ImagePoint:
    if q.is_zero() or c.is_zero():
        return ZeroImage()
    return canonicalize_qc(q, c)


def image_point(d: DetSection, k: Optional[int] = None) -> ImagePoint:
    """Canonical image point of a determinant section for the index k."""
    k = d.k if k is None else k
    if k is None or k == 3 or k < 0:
        raise Unclassifiable(f"no classification for index {k}")
    if d.is_zero():
        return ZeroImage()
    s = d.structured
    if isinstance(s, QCForm):
        if k > 3:
            raise Unclassifiable("a (q, C) form is not in the image for k > 3")
        return qc_point(s.q, s.C)
    if isinstance(s, TangentForm):
        if k != 1:
            raise Unclassifiable("a tangent form only occurs for k = 1")
        return sym_tangent_point(s.A)
    if isinstance(s, RhoForm):
        if k <= 3:
            raise Unclassifiable("a conic form only occurs for k > 3")
        return canonicalize_rho(s.lam, s.C, s.rho)
    return _image_from_triple(d.triple, k)


def split_q_sym2(t: Sym2Triple):
    """``(q, C)`` with ``t == q * Sym^2(C)`` and q of degree <= 2, or None."""
    # (s1, s2) is proportional to (t11, t12) and (t12, t22): linear equations in C.
    rows = {}
    basis = [SectionTm1(tuple(1 if i == j else 0 for i in range(3))) for j in range(3)]
    reps = [b.local_rep(0) for b in basis]
    for col, (s1, s2) in enumerate(reps):
        for eq, expr in enumerate((s1 * t.t12 - s2 * t.t11, s1 * t.t22 - s2 * t.t12)):
            for e, c in expr.terms.items():
                rows.setdefault((eq, e), [ZERO] * 3)[col] = c
    kernel = nullspace([rows[key] for key in sorted(rows)], 3) if rows else [[1, 0, 0]]
    for vec in kernel:
        c = SectionTm1(tuple(vec))
        if c.is_zero():
            continue
        s1, s2 = c.local_rep(0)
        num, sq = (t.t11, s1 * s1) if not s1.is_zero() else (t.t22, s2 * s2)
        q = num.divexact(sq)
        if q is None or q.degree > 2:
            continue
        if sym2_section(c).scale(q) == t:
            return SectionOk(homogenize(q, 2)), c
    return None


def _image_from_triple(t: Sym2Triple, k: int) -> ImagePoint:
    split = split_q_sym2(t)
    if split is not None:
        q, c = split
        if k <= 2:
            return qc_point(q, c)
        if conic_rank(q).rank == 3:
            return canonicalize_rho(1, c, q)
        raise Unclassifiable("for k > 3 the conic factor must be irreducible")
    if k == 1:
        a = recover_tangent_sqrt(-t)
        if a is not None:
            return sym_tangent_point(a)
    raise Unclassifiable("the triple matches no classified shape")


def image_triple(p: ImagePoint) -> Sym2Triple:
    """The chart-0 determinant triple an image point stands for."""
    if isinstance(p, ZeroImage):
        return Sym2Triple.zero()
    if isinstance(p, QSym2):
        return sym2_section(p.C).scale(p.q.local_rep(0))
    if isinstance(p, SymTangent):
        return -sym2_section(p.A)
    return sym2_section(p.C).scale(p.rho.local_rep(0))


def image_equal(p: ImagePoint, other: ImagePoint) -> bool:
    return p == other


def invariant_equal(p: ImagePoint, other: ImagePoint) -> bool:
    return image_triple(p) == image_triple(other)

