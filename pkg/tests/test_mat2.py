import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gassmann.errors import BadParameter, BudgetExceeded, ModulusMismatch, NotInKernel, NotInvertible
from gassmann.mat2 import (
    Mat2,
    PPart,
    ambient,
    arrays_of,
    commutator,
    conjugate_codes,
    embed,
    gl2_order,
    lifted_ambient,
    matrix_space,
    order,
    p_part,
    pow_,
)
from gassmann.residue import Modulus
from tests.strategies import matrices, moduli

M9 = Modulus(3, 2)
M25 = Modulus(5, 2)


def test_entries_are_reduced():
    assert Mat2(-1, 10, 0, 1, M9).t == (8, 1, 0, 1)
    assert str(Mat2.of([[1, 1], [0, 1]], M9)) == "[[1,1],[0,1]]"


@given(matrices())
def test_encode_decode(g):
    assert Mat2.decode(g.encode(), g.modulus) == g


def test_decode_out_of_range():
    with pytest.raises(BadParameter):
        Mat2.decode(9**4, M9)


@given(matrices(invertible=True))
def test_inverse(g):
    assert (g * g.inv()).is_identity()
    assert (g.inv() * g).is_identity()


@given(moduli().flatmap(lambda m: st.tuples(matrices(m), matrices(m))))
def test_det_is_multiplicative(pair):
    g, h = pair
    assert (g * h).det() == g.det() * h.det()


def test_singular_inverse():
    with pytest.raises(NotInvertible):
        Mat2(3, 0, 0, 1, M9).inv()
    with pytest.raises(NotInvertible):
        order(Mat2(0, 0, 0, 0, M9))


def test_mixed_moduli():
    with pytest.raises(ModulusMismatch):
        Mat2.identity(M9) * Mat2.identity(M25)


def test_orders():
    t9 = Mat2(1, 1, 0, 1, M9)
    assert order(t9) == 9
    assert order(Mat2(1, 1, 0, 1, M25)) == 25
    assert order(Mat2.diag(8, 1, M9)) == 2
    assert order(Mat2(1, 1, 0, 1, Modulus(3, 1))) == 3


@given(matrices(invertible=True), st.integers(-30, 30))
def test_pow_matches_repeated_product(g, n):
    expected = Mat2.identity(g.modulus)
    step = g if n >= 0 else g.inv()
    for _ in range(abs(n)):
        expected = expected * step
    assert pow_(g, n) == expected
    assert g**n == expected


def test_kernel_elements():
    A = Mat2(1, 2, 0, 1, Modulus(3, 1))
    kappa = embed(A)
    assert kappa.t == (4, 6, 0, 4)
    assert kappa.in_kernel()
    assert p_part(kappa) == PPart(A)
    with pytest.raises(NotInKernel):
        p_part(Mat2(1, 1, 0, 1, M9))
    with pytest.raises(BadParameter):
        PPart(kappa)


def test_reduce_and_lift():
    g = Mat2(4, 7, 2, 8, M9)
    assert g.reduce_mod_p() == Mat2(1, 1, 2, 2, Modulus(3, 1))
    assert g.reduce_mod_p().lift() == Mat2(1, 1, 2, 2, M9)
    with pytest.raises(BadParameter):
        g.reduce_mod_p().reduce_mod_p()
    with pytest.raises(BadParameter):
        g.lift()


def test_commutator_of_diagonals_is_trivial():
    assert commutator(Mat2.diag(2, 5, M9), Mat2.diag(4, 7, M9)).is_identity()


@pytest.mark.parametrize("modulus, size", [(Modulus(3, 1), 48), (M9, 3888), (Modulus(5, 1), 480)])
def test_ambient_sizes(modulus, size):
    arrays = ambient(modulus)
    assert len(arrays) == size == gl2_order(modulus)
    assert np.all(np.diff(arrays.codes) > 0)


def test_ambient_respects_limit():
    assert gl2_order(M25) == 300000
    with pytest.raises(BudgetExceeded) as info:
        ambient(M25, limit=1000)
    assert info.value.exit_code == 3
    assert info.value.stats["group_order"] == 300000


def test_ambient_inverses():
    arrays = ambient(Modulus(3, 1))
    for i in range(0, len(arrays), 7):
        g = arrays.element(i)
        h = Mat2(*(int(v[i]) for v in arrays.inverses), g.modulus)
        assert (g * h).is_identity()


def test_lifted_ambient_has_one_lift_per_class():
    arrays = lifted_ambient(3)
    assert len(arrays) == 48
    assert arrays.modulus == M9


@settings(max_examples=50)
@given(matrices(M9, invertible=True), st.lists(matrices(M9, invertible=True), min_size=1, max_size=5))
def test_conjugate_codes_matches_conjugate_by(x, hs):
    codes = [h.encode() for h in hs]
    got = conjugate_codes(x.t, codes, M9).tolist()
    assert got == [h.conjugate_by(x).encode() for h in hs]


def test_arrays_of_subset():
    gens = [Mat2(1, 1, 0, 1, M9), Mat2.diag(8, 1, M9)]
    arrays = arrays_of(M9, [g.encode() for g in gens])
    assert len(arrays) == 2
    assert sorted(arrays.codes.tolist()) == sorted(g.encode() for g in gens)
    for i in range(2):
        g = arrays.element(i)
        assert (g * Mat2(*(int(v[i]) for v in arrays.inverses), M9)).is_identity()


def test_matrix_space():
    a, b, c, d = matrix_space(3)
    assert len(a) == 81
    assert (int(a[80]), int(b[80]), int(c[80]), int(d[80])) == (2, 2, 2, 2)
