import pytest

from gassmann.errors import BadParameter, DegeneratePair
from gassmann.families import (
    KERNEL_FAMILIES,
    FamilyId,
    borel_pair,
    cartan_pair,
    cyclic_diagonal,
    diagonal_swap,
    glp_pair,
    k_element,
    kern,
    kernel_catalog,
    kernel_family,
    named,
    named_order,
    preimage,
    sl2_p3_list,
    tau_element,
)
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus
from gassmann.subgrp import are_conjugate, are_locally_conjugate, closure, image_mod_p, vector_dim

M9 = Modulus(3, 2)
F3 = Modulus(3, 1)


@pytest.mark.parametrize("name", ["Z", "Cs", "Cns", "B", "NCs", "NCns", "SL2", "GL2", "KerPhi", "T"])
def test_named_orders_mod_9(name):
    assert named(name, 3, 2).order == named_order(name, 3, 2)


@pytest.mark.parametrize("name", ["Z", "Cs", "Cns", "B", "NCs", "NCns", "SL2", "GL2"])
@pytest.mark.parametrize("p", (3, 5))
def test_named_orders_mod_p(name, p):
    assert named(name, p, 1).order == named_order(name, p, 1)


def test_named_errors():
    with pytest.raises(BadParameter):
        named("Q8", 3, 2)
    with pytest.raises(BadParameter):
        named("KerPhi", 3, 1)


def test_preimage():
    H = preimage(named("Cs", 3, 1))
    assert H.order == 4 * 81
    assert image_mod_p(H) == named("Cs", 3, 1)
    with pytest.raises(BadParameter):
        preimage(named("Cs", 3, 2))


def test_family_id():
    f = FamilyId("ker2.h3", (("d", 0),))
    assert str(f) == "ker2.h3(d=0)"
    assert f.param("d") == 0
    assert f.to_json() == {"name": "ker2.h3", "d": 0}
    assert str(FamilyId("t")) == "t"


@pytest.mark.parametrize("p", (3, 5))
def test_catalog_dimensions(p):
    for fid, H in kernel_catalog(p):
        assert H.is_in_kernel(), fid
        expected = {"ker01": 1, "t2": 2, "ker2": 2, "ker3": 3, "t": 3, "kerphi": 4}[fid.name.split(".")[0]]
        if fid.name == "ker01.1":
            expected = 0
        assert vector_dim(H) == expected, fid


def test_kernel_family_parameters():
    assert kernel_family("ker01.4", 5, d=1) == closure([kern(5, 1, 0, 0, 1)])
    with pytest.raises(BadParameter):
        kernel_family("ker01.6", 5, c=0)
    with pytest.raises(BadParameter):
        kernel_family("ker2.h3", 5)
    with pytest.raises(BadParameter):
        kernel_family("ker9.h1", 5)
    assert set(KERNEL_FAMILIES) >= {"ker01.1", "ker2.h6", "ker3.h4", "t", "kerphi"}


def test_diagonal_swap():
    D = cyclic_diagonal(2, 1, M9)
    assert diagonal_swap(D) == cyclic_diagonal(1, 2, M9)
    with pytest.raises(BadParameter):
        diagonal_swap(closure([Mat2(1, 1, 0, 1, M9)]))


def test_glp_pair_is_nontrivial():
    H1, H2 = glp_pair(closure([Mat2.diag(2, 1, F3)]))
    assert H1.order == H2.order == 6
    assert are_locally_conjugate(H1, H2)
    assert are_conjugate(H1, H2) is None


def test_pair_preconditions():
    with pytest.raises(DegeneratePair):
        glp_pair(named("Cs", 3, 1))
    with pytest.raises(BadParameter):
        glp_pair(cyclic_diagonal(2, 1, M9))
    with pytest.raises(BadParameter):
        cartan_pair(closure([Mat2.diag(2, 1, F3)]))
    with pytest.raises(BadParameter):
        borel_pair("plain", 0, "I", cyclic_diagonal(2, 1, M9))


def test_cartan_pair_at_3():
    D = closure([kern(3, 1, 0, 0, 0)])
    H1, H2 = cartan_pair(D)
    assert are_locally_conjugate(H1, H2)
    assert are_conjugate(H1, H2, limit=10_000) is None


def test_tau_and_k_elements():
    M = Modulus(5, 2)
    assert tau_element("plain", 0, M) == Mat2(1, 1, 0, 1, M)
    assert tau_element("plus-scalar-p", 0, M) == Mat2(6, 1, 0, 6, M)
    assert tau_element("lower-1", 2, M) == Mat2(11, 1, 5, 11, M)
    assert tau_element("lower-eps", 0, M) == Mat2(1, 1, 10, 1, M)
    assert k_element("lower", M) == kern(5, 0, 0, 1, 0)
    with pytest.raises(BadParameter):
        tau_element("upper", 0, M)
    with pytest.raises(BadParameter):
        k_element("upper", M)


def test_borel_pair_at_5():
    M = Modulus(5, 2)
    D = closure([Mat2.diag(6, 11, M)])
    H1, H2 = borel_pair("plain", 0, "I", D)
    assert image_mod_p(H1) == image_mod_p(H2)
    assert Mat2(1, 1, 0, 1, M) in H1


def test_sl2_p3_list():
    groups = sl2_p3_list()
    assert len(groups) == 6
    assert {H.order for H in groups} <= {648, 1944}
    assert all(image_mod_p(H) == named("SL2", 3, 1) for H in groups)
