import random

import pytest
from hypothesis import given

from cohiggs.classification import (
    QSym2,
    SymTangent,
    ZeroImage,
    canonicalize_pm,
    canonicalize_qc,
    canonicalize_rho,
    case_tag,
    complete_square,
    decompose_linear_product,
    image_equal,
    image_point,
    image_triple,
    invariant_equal,
)
from cohiggs.errors import Unclassifiable, ZeroInput
from cohiggs.fields import CoHiggsK0, CoHiggsK1, DetSection, determinant
from cohiggs.generators import rand_degree2, rand_form, rand_kbig, rand_rank3_conic, rand_scalar, rand_tangent, rand_tm1
from cohiggs.geometry import SectionOk, SectionT, SectionTm1, Sym2Triple, sym2_section
from cohiggs.poly import HomogeneousForm3, Poly
from cohiggs.scalars import I

from conftest import affine_polys

z, w = Poly.var("z"), Poly.var("w")


def form2(terms):
    return SectionOk(HomogeneousForm3.from_terms(2, terms))


def test_complete_square_examples():
    sq = complete_square(z * z + z * w * 2 + w * w + z * 2 + w * 2 + 1)
    assert (sq.lam, sq.mu, sq.case_tag) == (z + w + 1, Poly.zero(), "i")
    sq = complete_square(z * w)
    assert sq.case_tag == "iii" and sq.rotated
    assert sq.lam == (z + w) / 2
    assert sq.mu == -(((z - w) / 2) * ((z - w) / 2))
    s = z * 3 - w + 5
    sq = complete_square(s)
    assert (sq.lam, sq.mu, sq.case_tag) == (Poly.zero(), s, "iv")


@given(affine_polys())
def test_complete_square_identity(s):
    sq = complete_square(s)
    assert sq.lam * sq.lam + sq.mu == s
    assert sq.case_tag == case_tag(s)


def test_every_case_is_generated():
    rng = random.Random(0)
    assert {case_tag(rand_degree2(rng)) for _ in range(200)} == {"i", "ii", "iii", "iv"}


def test_decompose_examples():
    assert decompose_linear_product(z * w) == (Poly.zero(), z, w)
    lam, mu, mu2 = decompose_linear_product(z * z + w * w)
    assert lam * lam + mu * mu2 == z * z + w * w
    assert {mu, mu2} == {z - w * I, z + w * I}
    s = z * z + z * w + 1
    lam, mu, mu2 = decompose_linear_product(s)
    assert lam == z + w / 2
    assert mu * mu2 == -(w * w) / 4 + 1


@given(affine_polys())
def test_decompose_identity(s):
    lam, mu, mu2 = decompose_linear_product(s)
    assert lam * lam + mu * mu2 == s
    assert max(p.degree for p in (lam, mu, mu2)) <= 1


def test_decompose_needs_an_extension():
    s = z * z + w * 2 + 3
    lam, mu, mu2 = decompose_linear_product(s)
    assert lam * lam + mu * mu2 == s


def test_canonicalize_qc_examples():
    rng = random.Random(1)
    q = rand_form(rng, 2, nonzero=True)
    p = canonicalize_qc(q, SectionTm1((2, 0, 0)))
    assert p.C == SectionTm1((1, 0, 0)) and p.q == q * 4
    c = rand_tm1(rng)
    assert canonicalize_qc(q, c) == canonicalize_qc(q, -c)
    with pytest.raises(ZeroInput):
        canonicalize_qc(q, SectionTm1.zero())


def test_canonicalize_qc_orbits():
    rng = random.Random(2)
    for _ in range(100):
        q, c = rand_form(rng, 2, nonzero=True), rand_tm1(rng)
        a = rand_scalar(rng, nonzero=True)
        p = canonicalize_qc(q, c)
        assert p == canonicalize_qc(q * (a * a), c / a)
        assert canonicalize_qc(p.q, p.C) == p


def test_canonicalize_pm_examples():
    a = SectionT(((0, -3, 0), (0, 0, 0), (0, 0, 0)))
    assert canonicalize_pm(a) == -a
    b = SectionT(((0, I, 0), (0, 0, 0), (0, 0, 0)))
    assert canonicalize_pm(b) == b
    rng = random.Random(3)
    for _ in range(200):
        a = rand_tangent(rng)
        assert canonicalize_pm(canonicalize_pm(a)) == canonicalize_pm(a) == canonicalize_pm(-a)
    with pytest.raises(ZeroInput):
        canonicalize_pm(SectionT.zero())


def test_canonicalize_rho_examples():
    rng = random.Random(4)
    rho, c = rand_rank3_conic(rng), rand_tm1(rng)
    lead = rho.form.poly.leading_term()[1]
    p = canonicalize_rho(4 / lead, c, rho)
    assert p.C == canonicalize_pm(c * 2)
    assert canonicalize_rho(1, c, rho) == canonicalize_rho(1, -c, rho)
    for _ in range(30):
        lam, beta = rand_scalar(rng, nonzero=True), rand_scalar(rng, nonzero=True)
        p = canonicalize_rho(lam, c, rho)
        assert p == canonicalize_rho(lam / (beta * beta), c * beta, rho)
        assert image_triple(p) == sym2_section(c).scale(rho.local_rep(0) * lam)


def test_image_point_examples():
    assert image_point(DetSection(Sym2Triple.zero(), k=0)) == ZeroImage()
    phi = CoHiggsK0(SectionOk(HomogeneousForm3.zero(1)), form2({(0, 0, 2): 1}), SectionTm1((0, 0, 1)))
    p = image_point(determinant(phi))
    assert p == QSym2(form2({(0, 0, 2): -1}), SectionTm1((0, 0, 1)))
    assert image_triple(p) == determinant(phi).triple


def test_triangular_k1_image():
    rng = random.Random(5)
    for _ in range(20):
        a = rand_tangent(rng)
        p = image_point(determinant(CoHiggsK1(a, SectionT.zero(), a * 2)))
        assert image_triple(p) == -sym2_section(a)
        if isinstance(p, SymTangent):
            assert p.A == canonicalize_pm(a)


def test_raw_triple_recovery_agrees():
    rng = random.Random(6)
    for _ in range(20):
        phi = rand_kbig(rng)
        d = determinant(phi)
        assert image_point(DetSection(d.triple, None, phi.k)) == image_point(d)
        q, c = rand_form(rng, 2, nonzero=True), rand_tm1(rng)
        t = sym2_section(c).scale(q.local_rep(0))
        assert image_point(DetSection(t, None, 0)) == canonicalize_qc(q, c)


def test_unclassifiable():
    t = Sym2Triple(z, Poly.constant(1), w * w)
    with pytest.raises(Unclassifiable):
        image_point(DetSection(t, None, 2))
    with pytest.raises(Unclassifiable):
        image_point(DetSection(t, None, 3))


def test_image_equal_agrees_with_invariant():
    rng = random.Random(7)
    for _ in range(100):
        q, c = rand_form(rng, 2, nonzero=True), rand_tm1(rng)
        a = rand_scalar(rng, nonzero=True)
        p, same = canonicalize_qc(q, c), canonicalize_qc(q * (a * a), c / a)
        other = canonicalize_qc(q + rand_form(rng, 2, nonzero=True), c)
        assert image_equal(p, p)
        assert image_equal(p, same) and invariant_equal(p, same)
        assert image_equal(p, other) == invariant_equal(p, other)
