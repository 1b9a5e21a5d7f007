import numpy as np
import pytest
from hypothesis import strategies as st

from spacetime_em.kernel import GRADE, Multivector

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
coeff_arrays = st.lists(finite, min_size=16, max_size=16).map(np.array)
multivectors = coeff_arrays.map(Multivector)
grades = st.integers(min_value=0, max_value=4)


def homogeneous(coeffs, p):
    return Multivector(np.where(GRADE == p, coeffs, 0.0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
