import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from cohiggs.poly import Poly
from cohiggs.scalars import GaussianRational

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small = st.integers(min_value=-9, max_value=9)
fractions = st.builds(Fraction, small, st.sampled_from([1, 2, 3, 5]))
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(lambda g: g != 0)


@st.composite
def affine_polys(draw, max_degree=2):
    exps = [(i, d - i) for d in range(max_degree + 1) for i in range(d + 1)]
    chosen = draw(st.lists(st.sampled_from(exps), unique=True, max_size=len(exps)))
    return Poly({e: draw(gaussians) for e in chosen})


@pytest.fixture
def rng():
    return random.Random("tests")
