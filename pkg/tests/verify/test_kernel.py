import pytest

from gassmann.errors import NotInKernel
from gassmann.families import FamilyId, kernel_family, named
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus
from gassmann.subgrp import conjugate_subgroup, trivial
from gassmann.verify.kernel import (
    enumerate_kernel_subgroups,
    expected_kernel_pairs,
    gaussian_binomial,
    kernel_orbits,
    observed_kernel_pairs,
    orbit_of,
    verify_gassmann_oracle,
    verify_kernel_classification,
)


def test_gaussian_binomial():
    assert [gaussian_binomial(4, r, 3) for r in range(5)] == [1, 40, 130, 40, 1]


@pytest.mark.parametrize("p, total", [(3, 212), (5, 1120)])
def test_enumeration_size(p, total):
    assert len(enumerate_kernel_subgroups(p)) == total


def test_zero_subspace_is_the_trivial_group():
    subs = enumerate_kernel_subgroups(3)
    assert subs[0] == trivial(Modulus(3, 2))
    assert subs[0].generators == ()
    assert subs[-1] == named("KerPhi", 3, 2)


def test_orbits_partition_the_subspaces():
    orbits = kernel_orbits(3)
    assert sum(o.size for o in orbits) == 212
    H = kernel_family("ker2.h2", 3)
    assert orbit_of(H) == orbit_of(conjugate_subgroup(H, Mat2(2, 1, 1, 1, Modulus(3, 2))))
    with pytest.raises(NotInKernel):
        orbit_of(named("Cs", 3, 2))


def test_stated_merges():
    orbits = kernel_orbits(5)
    where = {f: o.index for o in orbits for f in o.families}
    assert where[FamilyId("ker01.4", (("d", 2),))] == where[FamilyId("ker01.4", (("d", 3),))]
    assert where[FamilyId("ker01.4", (("d", 2),))] != where[FamilyId("ker01.4", (("d", 4),))]


def test_local_pairs_at_3():
    assert observed_kernel_pairs(3) == expected_kernel_pairs(3)
    assert len(expected_kernel_pairs(3)) == 1


def test_local_pairs_at_5():
    pairs = observed_kernel_pairs(5)
    assert pairs == expected_kernel_pairs(5)
    where = {f: o.index for o in kernel_orbits(5) for f in o.families}
    h3 = {d: where[FamilyId("ker2.h3", (("d", d),))] for d in range(4)}
    assert pairs == {frozenset((where[FamilyId("ker2.h2")], h3[0])), frozenset((h3[2], h3[3]))}


@pytest.mark.parametrize("p", (3, 5))
def test_kernel_classification(p):
    report = verify_kernel_classification(p)
    assert report.status == "verified", report.witness
    assert report.stats["by_dim"] == [gaussian_binomial(4, r, p) for r in range(5)]


def test_gassmann_oracle_at_3():
    report = verify_gassmann_oracle(3)
    assert report.status == "verified", report.witness
    assert report.stats["subgroups"] == 212
