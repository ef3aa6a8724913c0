import random

import pytest
from hypothesis import given

from cohiggs.errors import DimensionMismatch
from cohiggs.generators import rand_scalar
from cohiggs.poly import Poly
from cohiggs.ratfunc import RatFunc, RatFuncMatrix, commutator, mat_det, mat_mul, mat_rank, nullspace

from conftest import affine_polys

z, w = Poly.var("z"), Poly.var("w")


def test_commutator_examples():
    a = RatFuncMatrix([[1, 0], [0, -1]])
    b = RatFuncMatrix([[0, 1], [0, 0]])
    assert commutator(a, b) == RatFuncMatrix([[0, 2], [0, 0]])
    assert commutator(RatFuncMatrix.identity(2), b).is_zero()


@given(affine_polys(1), affine_polys(1), affine_polys(1), affine_polys(1))
def test_commutator_antisymmetric(p, q, r, s):
    a = RatFuncMatrix([[p, q], [r, s]])
    b = RatFuncMatrix([[q, r], [s, p]])
    assert commutator(a, b) == commutator(b, a) * -1
    assert commutator(a, a).is_zero()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        commutator(RatFuncMatrix.identity(2), RatFuncMatrix.identity(3))


def test_ratfunc_reduces():
    f = RatFunc(z * z - w * w, z - w)
    assert f.as_poly() == z + w
    assert RatFunc(z, w) * RatFunc(w, z) == RatFunc.const(1)


def test_inverse_and_compose():
    f = RatFunc(z + 1, w)
    assert f * f.inverse() == RatFunc.const(1)
    g = f.compose({"z": RatFunc(w), "w": RatFunc(z)})
    assert g == RatFunc(w + 1, z)


def _random_matrix(rng, n):
    return [[rand_scalar(rng, 9) for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("n", [2, 3])
def test_det_multiplicative(n):
    rng = random.Random(n)
    for _ in range(200):
        a, b = _random_matrix(rng, n), _random_matrix(rng, n)
        assert mat_det(mat_mul(a, b)) == mat_det(a) * mat_det(b)


def test_symbolic_inverse():
    m = RatFuncMatrix([[z, 1], [w, 2]])
    assert m * m.inverse() == RatFuncMatrix.identity(2)
    assert m.det() == RatFunc(z * 2 - w)


def test_nullspace():
    a = [[1, 2, 3], [2, 4, 6]]
    assert mat_rank(a) == 1
    ker = nullspace(a, 3)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(r[j] * v[j] for j in range(3)) == 0 for r in a)
