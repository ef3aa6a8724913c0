import random

import pytest
import sympy

from cohiggs.errors import ExcludedIndex
from cohiggs.fields import (
    CoHiggsK0,
    CoHiggsK1,
    CoHiggsK2,
    QCForm,
    TangentForm,
    det_glue_check,
    determinant,
    integrable,
    local_components,
    phi0_for_target,
    phi0_glue_check,
    schwarz_info,
)
from cohiggs.generators import (
    K1_SHAPES,
    rand_affine,
    rand_form,
    rand_k0,
    rand_k1_integrable,
    rand_k1_noncommuting,
    rand_k2,
    rand_kbig,
    rand_scalar,
    rand_tangent,
    rand_tm1,
)
from cohiggs.geometry import SectionOk, SectionT, SectionTm1, Sym2Triple, sym2_section, tangent_from_local
from cohiggs.poly import HomogeneousForm3, Poly
from cohiggs.ratfunc import RatFuncMatrix, commutator

z, w = Poly.var("z"), Poly.var("w")
Z, W, T1, T2 = sympy.symbols("z w t1 t2")


def to_sympy(p: Poly):
    out = 0
    for (a, b), c in p.terms.items():
        out += (sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) * Z**a * W**b
    return out


def oracle_triple(phi):
    """Coefficients of det(phi_z t1 + phi_w t2), computed by sympy from the chart-0 components."""
    pz, pw = local_components(phi, 0)
    m = sympy.zeros(2, 2)
    for r in range(2):
        for c in range(2):
            for comp, t in ((pz, T1), (pw, T2)):
                f = comp[r, c]
                m[r, c] += to_sympy(f.num) / to_sympy(f.den) * t
    d = sympy.Poly(sympy.expand(sympy.cancel(m.det())), T1, T2)
    return d.coeff_monomial(T1**2), d.coeff_monomial(T1 * T2) / 2, d.coeff_monomial(T2**2)


def same(triple: Sym2Triple, oracle) -> bool:
    return all(sympy.expand(to_sympy(p) - o) == 0 for p, o in zip((triple.t11, triple.t12, triple.t22), oracle))


def test_schwarz_info_examples():
    i0 = schwarz_info(0)
    assert (i0.c1, i0.c2, i0.splitting) == (-1, 0, "O+O(-1)")
    i2 = schwarz_info(2)
    assert (i2.c1, i2.c2, i2.splitting) == (1, 1, "Tangent")
    assert schwarz_info(5).h1_end0 == 21
    with pytest.raises(ExcludedIndex):
        schwarz_info(3)


def test_noncommuting_example():
    one, zero = Poly.constant(1), Poly.zero()
    a, b = tangent_from_local(one, zero), tangent_from_local(zero, one)
    phi = CoHiggsK1(a, b, SectionT.zero())
    pz, pw = local_components(phi)
    assert pz == RatFuncMatrix([[1, 0], [0, -1]]) and pw == RatFuncMatrix([[0, 1], [0, 0]])
    assert commutator(pz, pw) == RatFuncMatrix([[0, 2], [0, 0]])
    assert not integrable(phi)


def test_diagonal_k1_is_integrable():
    rng = random.Random(1)
    for _ in range(10):
        assert integrable(CoHiggsK1(rand_tangent(rng), SectionT.zero(), SectionT.zero()))


@pytest.mark.parametrize("make", [rand_k0, rand_k2, rand_kbig])
def test_decomposed_fields_integrable_everywhere(make):
    rng = random.Random(make.__name__)
    for _ in range(8):
        phi = make(rng)
        assert all(integrable(phi, c) for c in range(3))


def test_noncommuting_fields_fail_everywhere():
    rng = random.Random(4)
    for _ in range(8):
        phi = rand_k1_noncommuting(rng)
        assert not any(integrable(phi, c) for c in range(3))


@pytest.mark.parametrize("make", [rand_k0, rand_k2, rand_kbig])
def test_determinant_against_sympy(make):
    rng = random.Random("det" + make.__name__)
    for _ in range(5):
        phi = make(rng)
        d = determinant(phi)
        assert same(d.triple, oracle_triple(phi))
        assert d.structured.triple() == d.triple
        assert det_glue_check(phi)


def test_k1_determinant_against_sympy_even_when_not_integrable():
    rng = random.Random(9)
    for _ in range(5):
        phi = CoHiggsK1(rand_tangent(rng), rand_tangent(rng), rand_tangent(rng))
        assert same(determinant(phi).triple, oracle_triple(phi))


@pytest.mark.parametrize("shape", K1_SHAPES)
def test_k1_shapes_are_recognized(shape):
    rng = random.Random(shape)
    for _ in range(8):
        phi, _ = rand_k1_integrable(rng, shape=shape)
        d = determinant(phi)
        assert integrable(phi)
        assert d.structured is not None and d.structured.triple() == d.triple
        assert det_glue_check(phi)


def test_k0_zero_determinant():
    phi = CoHiggsK0(SectionOk(HomogeneousForm3.zero(1)), SectionOk(HomogeneousForm3.zero(2)), SectionTm1((1, 2, 3)))
    assert determinant(phi).is_zero()


def test_k1_triangular_is_minus_sym2_a():
    rng = random.Random(6)
    a = rand_tangent(rng)
    phi = CoHiggsK1(a, a * 3, SectionT.zero())
    d = determinant(phi)
    assert isinstance(d.structured, TangentForm)
    assert d.triple == -sym2_section(a)


def test_k2_target_example():
    rng = random.Random(7)
    q = rand_affine(rng, 2)
    c = rand_tm1(rng)
    d = determinant(CoHiggsK2(Poly.zero(), -q, 1, c))
    assert d.triple == sym2_section(c).scale(q)
    assert isinstance(d.structured, QCForm)


def test_phi0_for_target_examples():
    assert phi0_for_target(z * z) == (Poly.zero(), -(z * z), 1)
    f, g, h = phi0_for_target(Poly.zero())
    assert f.is_zero() and g.is_zero() and h == 0


def test_phi0_for_target_random():
    rng = random.Random(12)
    for _ in range(50):
        q = rand_form(rng, 2)
        f, g, h = phi0_for_target(q)
        assert -(f * f) - g * h == q.local_rep(0)
        assert f.degree <= 1 and g.degree <= 2


def test_phi0_glue_check():
    zero = Poly.zero()
    assert phi0_glue_check((zero, zero, 0))
    assert phi0_glue_check((z, zero, 0))
    assert not phi0_glue_check((z * z, zero, 0))
    rng = random.Random(13)
    for _ in range(20):
        assert phi0_glue_check((rand_affine(rng, 1), rand_affine(rng, 2), rand_scalar(rng)))
