"""Seeded random inputs: small Gaussian-rational coefficients, every case branch reachable."""
from __future__ import annotations

import random
from fractions import Fraction

from .fields import CoHiggsK0, CoHiggsK1, CoHiggsK2, CoHiggsKBig
from .geometry import PointP2, SectionOk, SectionT, SectionTm1, conic_rank
from .poly import HomogeneousForm3, Poly, PROJ_VARS
from .scalars import GaussianRational

DEFAULT_BOUND = 9


def rand_int(rng: random.Random, bound: int, nonzero: bool = False) -> int:
    while True:
        n = rng.randint(-bound, bound)
        if n or not nonzero:
            return n


def rand_scalar(rng: random.Random, bound: int = DEFAULT_BOUND, nonzero: bool = False) -> GaussianRational:
    """Mostly integers, sometimes with an imaginary part or a small denominator."""
    while True:
        re = Fraction(rand_int(rng, bound), rng.choice((1, 1, 1, 2, 3)))
        im = Fraction(rand_int(rng, bound), rng.choice((1, 1, 2))) if rng.random() < 0.25 else 0
        g = GaussianRational(re, im)
        if g or not nonzero:
            return g


def _monomials(nvars: int, degree: int, exact: bool):
    if nvars == 2:
        return [(i, d - i) for d in range(degree + 1) for i in range(d + 1) if not exact or d == degree]
    return [(i, j, degree - i - j) for i in range(degree + 1) for j in range(degree + 1 - i)]


def rand_affine(rng, degree: int, bound: int = DEFAULT_BOUND, density: float = 0.7) -> Poly:
    terms = {e: rand_scalar(rng, bound) for e in _monomials(2, degree, False) if rng.random() < density}
    return Poly(terms)


def rand_form(rng, k: int, bound: int = DEFAULT_BOUND, density: float = 0.7, nonzero=False) -> SectionOk:
    while True:
        terms = {e: rand_scalar(rng, bound) for e in _monomials(3, k, True) if rng.random() < density}
        s = SectionOk(HomogeneousForm3(k, Poly(terms, PROJ_VARS)))
        if not nonzero or not s.is_zero():
            return s


def rand_tm1(rng, bound: int = DEFAULT_BOUND, nonzero: bool = True) -> SectionTm1:
    while True:
        v = tuple(rand_scalar(rng, bound) if rng.random() < 0.8 else 0 for _ in range(3))
        c = SectionTm1(v)
        if not nonzero or not c.is_zero():
            return c


def rand_tangent(rng, bound: int = DEFAULT_BOUND, nonzero: bool = True) -> SectionT:
    while True:
        m = tuple(tuple(rand_scalar(rng, bound) if rng.random() < 0.6 else 0 for _ in range(3)) for _ in range(3))
        a = SectionT(m)
        if not nonzero or not a.is_zero():
            return a


def rand_degree2(rng, bound: int = DEFAULT_BOUND) -> Poly:
    """A polynomial of degree <= 2 whose leading pattern is drawn evenly from the four cases."""
    case = rng.choice("i ii iii iv".split())
    c = {e: rand_scalar(rng, bound) for e in _monomials(2, 2, False) if rng.random() < 0.7}
    if case == "i":
        c[(2, 0)] = rand_scalar(rng, bound, nonzero=True)
    elif case == "ii":
        c[(2, 0)] = 0
        c[(0, 2)] = rand_scalar(rng, bound, nonzero=True)
    elif case == "iii":
        c[(2, 0)] = c[(0, 2)] = 0
        c[(1, 1)] = rand_scalar(rng, bound, nonzero=True)
    else:
        c[(2, 0)] = c[(0, 2)] = c[(1, 1)] = 0
    return Poly(c)


def rand_rank3_conic(rng, bound: int = DEFAULT_BOUND) -> SectionOk:
    while True:
        q = rand_form(rng, 2, bound, density=0.8, nonzero=True)
        if conic_rank(q).rank == 3:
            return q


def rand_linear_form(rng, bound: int = DEFAULT_BOUND, nonzero: bool = False) -> HomogeneousForm3:
    return rand_form(rng, 1, bound, nonzero=nonzero).form


def rand_matrix2(rng, bound: int = DEFAULT_BOUND, invertible: bool = True):
    while True:
        g = [[rand_scalar(rng, bound) for _ in range(2)] for _ in range(2)]
        if not invertible or g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0:
            return g


def rand_point(rng, bound: int = DEFAULT_BOUND) -> PointP2:
    """A point with every homogeneous coordinate nonzero."""
    return PointP2(tuple(Fraction(rand_int(rng, bound, True), rng.randint(1, 5)) for _ in range(3)))


# --- fields -------------------------------------------------------------------------


def rand_k0(rng, bound: int = DEFAULT_BOUND) -> CoHiggsK0:
    return CoHiggsK0(rand_form(rng, 1, bound), rand_form(rng, 2, bound), rand_tm1(rng, bound, nonzero=False))


def rand_k2(rng, bound: int = DEFAULT_BOUND) -> CoHiggsK2:
    return CoHiggsK2(
        rand_affine(rng, 1, bound), rand_affine(rng, 2, bound), rand_scalar(rng, bound), rand_tm1(rng, bound, False)
    )


def rand_kbig(rng, bound: int = DEFAULT_BOUND) -> CoHiggsKBig:
    return CoHiggsKBig(
        rng.randint(4, 10), rand_rank3_conic(rng, bound), rand_scalar(rng, bound, nonzero=True), rand_tm1(rng, bound)
    )


K1_SHAPES = ("triangular", "constant", "common")


def rand_k1_integrable(rng, bound: int = DEFAULT_BOUND, shape: str | None = None):
    """An integrable K1 field built from one of the known shapes, and the shape's name."""
    shape = shape or rng.choice(K1_SHAPES)
    if shape == "triangular":
        a = rand_tangent(rng, bound)
        b = a * rand_scalar(rng, bound) if rng.random() < 0.7 else SectionT.zero()
        zero = SectionT.zero()
        phi = CoHiggsK1(a, b, zero) if rng.random() < 0.5 else CoHiggsK1(a, zero, b)
    elif shape == "constant":
        r = rand_tangent(rng, bound)
        a, b, c = rand_scalar(rng, bound), rand_scalar(rng, bound, True), rand_scalar(rng, bound, True)
        phi = CoHiggsK1(r * a, r * b, r * c)
    elif shape == "common":
        v = rand_tm1(rng, bound)
        lam = rand_linear_form(rng, bound)
        mu, mu2 = rand_linear_form(rng, bound, True), rand_linear_form(rng, bound, True)
        phi = CoHiggsK1(*(SectionT.from_product(v, ell) for ell in (lam, mu, mu2)))
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return phi, shape


def wedge_chart0(a: SectionT, b: SectionT) -> Poly:
    """``a1*b2 - a2*b1`` on chart 0: zero exactly when A and B are parallel there."""
    a1, a2 = a.local_rep(0)
    b1, b2 = b.local_rep(0)
    return a1 * b2 - a2 * b1


def rand_k1_noncommuting(rng, bound: int = DEFAULT_BOUND) -> CoHiggsK1:
    """Upper-triangular ``[[A, B], [0, -A]]`` with ``A ^ B != 0``, hence not integrable."""
    while True:
        a, b = rand_tangent(rng, bound), rand_tangent(rng, bound)
        if not wedge_chart0(a, b).is_zero():
            return CoHiggsK1(a, b, SectionT.zero())
