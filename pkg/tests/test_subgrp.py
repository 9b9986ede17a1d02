import pytest

from gassmann.errors import BadParameter, ModulusMismatch, NotInKernel, NotInvertible
from gassmann.families import kern, kernel_family, named
from gassmann.mat2 import Mat2, ambient
from gassmann.residue import Modulus
from gassmann.subgrp import (
    are_conjugate,
    are_locally_conjugate,
    c_part,
    canonical_key,
    closure,
    conjugate_subgroup,
    cyclic_subgroups,
    dedupe_conjugates,
    delta,
    delta_perp,
    diag_part,
    element_order,
    generating_set,
    image_mod_p,
    is_determinant_one,
    join,
    kernel_part,
    normalizer_mod_p,
    small_subgroups,
    subgroup_classes,
    trivial,
    vector_dim,
)

M9 = Modulus(3, 2)
F3 = Modulus(3, 1)


def test_closure_of_t():
    H = closure([Mat2(1, 1, 0, 1, M9)])
    assert H.order == 9
    assert Mat2(1, 3, 0, 1, M9) in H
    assert Mat2(1, 0, 1, 1, M9) not in H


def test_closure_errors():
    with pytest.raises(BadParameter):
        closure([])
    assert closure([], M9) == trivial(M9)
    with pytest.raises(NotInvertible):
        closure([Mat2(3, 0, 0, 1, M9)])
    with pytest.raises(ModulusMismatch):
        closure([Mat2.identity(M9), Mat2.identity(F3)])


def test_closure_limit():
    gens = [Mat2(1, 1, 0, 1, M9), Mat2(1, 0, 1, 1, M9)]
    assert closure(gens, M9, limit=100) is None
    assert closure(gens, M9).order == 648


def test_subgroup_order_and_containment():
    T = named("T", 3, 2)
    K = named("KerPhi", 3, 2)
    assert T <= K
    assert not K <= T
    assert T.fingerprint.total == T.order == 27


def test_join():
    H = join(closure([kern(3, 0, 1, 0, 0)]), closure([kern(3, 0, 0, 1, 0)]))
    assert H.order == 9


def test_locally_conjugate_kernel_pair():
    H2 = kernel_family("ker2.h2", 3)
    H30 = kernel_family("ker2.h3", 3, d=0)
    assert are_locally_conjugate(H2, H30)
    assert are_conjugate(H2, H30) is None


def test_conjugate_witness_is_checked():
    H = closure([Mat2(1, 1, 0, 1, M9), Mat2.diag(8, 1, M9)])
    x = Mat2(2, 1, 1, 1, M9)
    K = conjugate_subgroup(H, x)
    w = are_conjugate(H, K, limit=10_000)
    assert w is not None
    assert conjugate_subgroup(H, w) == K
    assert are_conjugate(H, H).is_identity()


def test_are_conjugate_prunes_on_order():
    assert are_conjugate(trivial(M9), closure([Mat2.diag(8, 1, M9)])) is None


def test_locally_conjugate_needs_same_modulus():
    with pytest.raises(ModulusMismatch):
        are_locally_conjugate(trivial(M9), trivial(F3))


def test_generating_set_generates():
    for name in ("B", "NCs", "SL2", "GL2"):
        G = named(name, 3, 1)
        assert closure(generating_set(G), F3) == G
    assert generating_set(trivial(M9)) == []


def test_element_order():
    assert element_order((1, 1, 0, 1), M9) == 9
    assert element_order((8, 0, 0, 1), M9) == 2


def test_small_subgroups_of_klein_four():
    subs = small_subgroups(named("Cs", 3, 1))
    assert [S.order for S in subs] == [1, 2, 2, 2, 4]
    assert len(cyclic_subgroups(named("Cs", 3, 1))) == 3


def test_subgroup_classes_of_gl2_3():
    classes = subgroup_classes(named("GL2", 3, 1))
    assert len(classes) == 16
    assert classes[0].order == 1
    assert classes[-1].order == 48


def test_dedupe_conjugates():
    a = closure([Mat2.diag(2, 1, F3)])
    b = closure([Mat2.diag(1, 2, F3)])
    assert dedupe_conjugates([a, b], ambient(F3)) == [a]
    assert canonical_key(a) == canonical_key(b)


def test_normalizer_of_split_cartan():
    N = normalizer_mod_p(named("Cs", 3, 1))
    assert N == named("NCs", 3, 1)
    with pytest.raises(BadParameter):
        normalizer_mod_p(named("Cs", 3, 2))


def test_structural_parts_of_sl2():
    S = named("SL2", 3, 2)
    assert image_mod_p(S) == named("SL2", 3, 1)
    assert kernel_part(S) == named("T", 3, 2)
    assert is_determinant_one(S)
    assert vector_dim(kernel_part(S)) == 3


def test_delta_parts():
    K = named("KerPhi", 3, 2)
    assert delta(K).order == 9
    assert delta_perp(K).order == 9
    assert (delta(K).elements & delta_perp(K).elements) == trivial(M9).elements


def test_diag_and_c_parts():
    assert diag_part(named("B", 3, 2)) == named("Cs", 3, 2)
    C = c_part(named("B", 3, 2))
    assert C.order == 4
    assert all(a in (1, 8) and d in (1, 8) for a, b, c, d in C.tuples())


def test_kernel_only_extractors():
    with pytest.raises(NotInKernel):
        vector_dim(named("Cs", 3, 2))
    with pytest.raises(BadParameter):
        kernel_part(named("Cs", 3, 1))


def test_to_json():
    data = named("T", 3, 2).to_json()
    assert data["order"] == 27
    assert sum(row["count"] for row in data["fingerprint"]) == 27
