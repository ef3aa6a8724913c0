import pytest
from hypothesis import given

from cohiggs.errors import DegreeExceeded
from cohiggs.poly import PROJ_VARS, HomogeneousForm3, Poly, dehomogenize, homogenize, substitute
from cohiggs.scalars import exact_sqrt, tower_of

from conftest import affine_polys, gaussians

z, w = Poly.var("z"), Poly.var("w")


@given(affine_polys(), affine_polys(), affine_polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(affine_polys(), affine_polys(), affine_polys(1), affine_polys(1))
def test_substitution_is_a_ring_map(p, q, a, b):
    sigma = {"z": a, "w": b}
    assert substitute(p * q, sigma) == substitute(p, sigma) * substitute(q, sigma)
    assert substitute(p + q, sigma) == substitute(p, sigma) + substitute(q, sigma)


def test_rotation_identity():
    zr, wr = Poly.var("z'", ("z'", "w'")), Poly.var("w'", ("z'", "w'"))
    assert substitute(z * w, {"z": zr + wr, "w": zr - wr}) == zr * zr - wr * wr


def test_shift():
    assert substitute(z * z, {"z": z + 1}) == z * z + z * 2 + 1


@given(affine_polys())
def test_affine_substitution_round_trip(p):
    there = substitute(p, {"z": z + w, "w": z - w})
    back = substitute(there, {"z": (z + w) / 2, "w": (z - w) / 2})
    assert back == p


@given(affine_polys(), affine_polys(1))
def test_divexact(p, q):
    if not q.is_zero():
        assert (p * q).divexact(q) == p


def test_divexact_rejects():
    assert (z * z + 1).divexact(z) is None


@given(affine_polys(1))
def test_sqrt_of_square(p):
    r = (p * p).sqrt()
    assert r is not None and r * r == p * p


def test_sqrt_in_extension():
    r2, _ = exact_sqrt(2)
    r = (z * z * 2).sqrt(within=tower_of(r2))
    assert r * r == z * z * 2


def test_homogenize_examples():
    assert homogenize(z * w, 2).poly == Poly({(1, 1, 0): 1}, PROJ_VARS)
    assert dehomogenize(HomogeneousForm3.from_terms(2, {(0, 0, 2): 1})) == Poly.constant(1)
    with pytest.raises(DegreeExceeded):
        homogenize(z * z * z, 2)


@given(affine_polys())
def test_homogenize_round_trip(p):
    for chart in range(3):
        assert dehomogenize(homogenize(p, 2, chart), chart) == p


def test_term_order_is_graded_lex():
    p = z * z + w * w * w + z * w + 1
    assert [e for e, _ in p.sorted_terms()] == [(0, 3), (2, 0), (1, 1), (0, 0)]


@given(affine_polys(), gaussians, gaussians)
def test_evaluate_matches_substitution(p, a, b):
    assert p.evaluate((a, b)) == substitute(p, {"z": Poly.constant(a), "w": Poly.constant(b)}).constant_term()


def test_diff():
    assert (z * z * w).diff("z") == z * w * 2
