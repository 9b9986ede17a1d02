import pytest
from hypothesis import given

from gassmann.conjcls import (
    ClassInvariant,
    SimilarityRep,
    class_invariant,
    invariant_of_code,
    kernel_conjugate,
    rep_from_trace_det,
    similarity_rep,
    table1,
)
from gassmann.errors import BadParameter
from gassmann.families import kern
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus
from tests.strategies import matrices

M9 = Modulus(3, 2)
F3 = Modulus(3, 1)


def test_scalar_elements():
    assert class_invariant(Mat2.identity(M9)) == ClassInvariant(2, 1)
    assert class_invariant(Mat2.scalar(4, M9)).is_scalar
    assert class_invariant(Mat2.identity(M9)).to_json() == {"l": 2, "d": 1}


def test_kernel_element_invariant():
    inv = class_invariant(Mat2.diag(4, 7, M9))
    assert inv == ClassInvariant(1, 1, 0, 2)
    assert str(inv) == "(l=1, d=1, tr=0, det=2)"


def test_generic_element_invariant():
    assert class_invariant(Mat2(1, 1, 0, 1, M9)) == ClassInvariant(0, 0, 2, 1)
    assert invariant_of_code(Mat2(1, 1, 0, 1, M9).encode(), M9) == ClassInvariant(0, 0, 2, 1)


@given(matrices(M9, invertible=True), matrices(M9, invertible=True))
def test_invariant_is_constant_on_classes(g, x):
    assert class_invariant(g.conjugate_by(x)) == class_invariant(g)


@pytest.mark.parametrize("p", (3, 5, 7))
def test_table_size(p):
    reps = table1(p)
    assert len(reps) == p * p + p
    assert len({rep.matrix(p).encode() for rep in reps}) == len(reps)


def test_rep_from_trace_det():
    assert rep_from_trace_det(0, 1, 3) == SimilarityRep("nonsplit", (0, 1))
    assert rep_from_trace_det(2, 1, 3) == SimilarityRep("jordan", (1,))
    assert rep_from_trace_det(0, 2, 3) == SimilarityRep("split", (1, 2))


@given(matrices(F3))
def test_similarity_rep_preserves_trace_and_det(A):
    R = similarity_rep(A).matrix(3)
    assert R.trace() == A.trace()
    assert R.det() == A.det()


def test_similarity_rep_mod_p_only():
    with pytest.raises(BadParameter):
        similarity_rep(Mat2.identity(M9))


def test_kernel_conjugate():
    assert kernel_conjugate(kern(3, 0, 1, 0, 0), kern(3, 0, 0, 1, 0))
    assert not kernel_conjugate(kern(3, 0, 1, 0, 0), kern(3, 1, 0, 0, 1))
    assert kernel_conjugate(kern(5, 1, 0, 0, 2), kern(5, 2, 0, 0, 1))
