import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaoa_lie.errors import DegenerateInputError, DimensionError
from qaoa_lie.numeric import string_matrix, to_matrix
from qaoa_lie.pauli import (
    PauliString,
    PauliSum,
    commutator_strings,
    commutator_sums,
    hs_inner,
    multiply,
    proportional_to,
)


@st.composite
def strings(draw, n=None):
    n = n or draw(st.integers(1, 4))
    return PauliString(n, draw(st.integers(0, 2**n - 1)), draw(st.integers(0, 2**n - 1)),
                       draw(st.integers(0, 3)))


@st.composite
def string_pairs(draw):
    n = draw(st.integers(1, 4))
    return draw(strings(n)), draw(strings(n))


@st.composite
def sums(draw, n):
    keys = st.tuples(st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))
    coefs = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
    return PauliSum(n, draw(st.dictionaries(keys, coefs, max_size=5)))


class TestPauliString:
    def test_labels(self):
        p = PauliString.from_label("Z1 I2 X3", 3)
        assert p.label() == "Z1 I2 X3"
        assert p.label(compact=True) == "Z1 X3"
        assert p.support() == [1, 3]
        assert p.weight == 2

    def test_y_is_hermitian_convention(self):
        y = PauliString.single(1, 1, "Y")
        assert np.allclose(string_matrix(y), [[0, -1j], [1j, 0]])

    def test_single_site_products(self):
        x, y, z = (PauliString.single(1, 1, c) for c in "XYZ")
        assert multiply(x, y) == PauliString(1, 0, 1, 1)  # XY = iZ
        assert multiply(y, x) == PauliString(1, 0, 1, 3)
        assert multiply(z, x) == PauliString(1, 1, 1, 1)  # ZX = iY
        assert np.allclose(string_matrix(multiply(z, x)), string_matrix(z) @ string_matrix(x))

    @given(string_pairs())
    def test_product_matches_matrices(self, pair):
        p, q = pair
        assert np.allclose(string_matrix(p * q), string_matrix(p) @ string_matrix(q))

    @given(string_pairs())
    def test_commutation_rule(self, pair):
        p, q = pair
        mp, mq = string_matrix(p), string_matrix(q)
        assert p.commutes_with(q) == np.allclose(mp @ mq, mq @ mp)

    @given(string_pairs())
    def test_commutator_strings(self, pair):
        p, q = pair
        out = commutator_strings(p, q)
        mp, mq = string_matrix(p), string_matrix(q)
        if out is None:
            assert p.commutes_with(q)
        else:
            s, c = out
            assert s.phase == 0
            assert np.allclose(c * string_matrix(s), mp @ mq - mq @ mp)

    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            PauliString.single(3, 4, "X")

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            multiply(PauliString.identity(2), PauliString.identity(3))


class TestPauliSum:
    def test_drops_tiny_terms(self):
        s = PauliSum(2, {(1, 0): 1e-14, (0, 1): 1.0})
        assert len(s) == 1

    def test_cancellation(self):
        a = PauliSum.from_label("X1 Z2", 2)
        assert not (a - a)

    def test_json_roundtrip(self):
        a = PauliSum.from_label("X1 Y3", 3, 2 - 1j) + PauliSum.from_label("Z2", 3)
        assert PauliSum.from_json(a.to_json()) == a

    def test_print_form(self):
        assert str(PauliSum.from_label("Z1 X3", 3)) == "(1)*[Z1 I2 X3]"

    def test_known_commutator(self):
        zz = PauliSum.from_label("Z1 Z2", 2)
        x1 = PauliSum.from_label("X1", 2)
        assert commutator_sums(zz, x1) == PauliSum.from_label("Y1 Z2", 2, 2j)

    @settings(max_examples=60)
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(sums(n), sums(n))))
    def test_commutator_homomorphism(self, pair):
        a, b = pair
        ma, mb = to_matrix(a), to_matrix(b)
        assert np.allclose(to_matrix(commutator_sums(a, b)), ma @ mb - mb @ ma, atol=1e-9)

    @settings(max_examples=60)
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(sums(n), sums(n))))
    def test_hs_inner(self, pair):
        a, b = pair
        ma, mb = to_matrix(a), to_matrix(b)
        ref = np.trace(ma.conj().T @ mb) / ma.shape[0]
        assert abs(hs_inner(a, b) - ref) < 1e-9

    def test_proportional(self):
        b = PauliSum.from_label("Y1 Z2", 2) + PauliSum.from_label("Z1 Y2", 2, 3)
        assert proportional_to(b.scale(2j), b) == pytest.approx(2j)
        assert proportional_to(b + PauliSum.from_label("X1", 2), b) is None
        assert proportional_to(PauliSum.zero(2), b) == 0
        with pytest.raises(DegenerateInputError):
            proportional_to(b, PauliSum.zero(2))

    def test_hermiticity(self):
        assert PauliSum.from_label("X1", 1, 2.0).is_hermitian()
        assert PauliSum.from_label("X1", 1, 2j).is_antihermitian()
