import pytest

from gassmann.families import kernel_family, named
from gassmann.residue import Modulus
from gassmann.subgrp import generating_set, trivial
from gassmann.verify.census import (
    SubgroupCensus,
    borel_images,
    cartan_images,
    coset_representatives,
    extensions,
    invariant_kernels,
    is_invariant,
    nonsplit_images,
    verify_enumerator_crosscheck,
)
from gassmann.verify.kernel import kernel_orbits


def test_image_classes_at_3():
    assert sorted(Q.order for Q in borel_images(3)) == [3, 6, 6, 6, 12]
    assert sorted(Q.order for Q in cartan_images(3)) == [1, 2, 2, 4]
    assert sorted(Q.order for Q in nonsplit_images(3)) == [4, 8]


def test_coset_representatives():
    K = kernel_family("ker2.h2", 3)
    assert len(coset_representatives(K)) == 9
    assert len(coset_representatives(trivial(Modulus(3, 2)))) == 81


def test_invariance():
    Cs = named("Cs", 3, 1)
    assert is_invariant(named("T", 3, 2), [g.lift() for g in generating_set(named("GL2", 3, 1))])
    assert len(invariant_kernels(trivial(Modulus(3, 1)))) == 212
    assert len(invariant_kernels(Cs)) < 212


def test_extensions_of_trivial_image():
    subs = extensions(trivial(Modulus(3, 1)))
    assert len(subs) == 212
    assert all(H.is_in_kernel() for H in subs)


def test_census_of_kernel_subgroups():
    census = SubgroupCensus.build(3, [trivial(Modulus(3, 1))])
    assert len(census) == len(kernel_orbits(3))
    assert census.subgroup_count == 212
    assert census.incomplete == 0
    assert len(census.nontrivial_pairs()) == 1
    a, b = census.nontrivial_pairs()[0]
    assert {census.locate(kernel_family("ker2.h2", 3)), census.locate(kernel_family("ker2.h3", 3, d=0))} == {a, b}
    assert census.locate(named("Cs", 3, 2)) is None
    assert census.completeness_failures() == []
    assert census.image_order(census.nontrivial_pairs()[0][0]) == 1


def test_incomplete_census_reports_a_failure():
    census = SubgroupCensus(3, [trivial(Modulus(3, 1))], incomplete=2)
    assert census.completeness_failures() == [{"check": "census incomplete", "outside": 2, "images": 1}]


@pytest.mark.slow
def test_census_of_split_cartan_images():
    census = SubgroupCensus.build(3, cartan_images(3))
    assert census.locate(named("Cs", 3, 2)) is not None
    assert census.classes[0].to_json()["image"] == 0


@pytest.mark.slow
def test_enumerator_crosscheck_at_3():
    report = verify_enumerator_crosscheck(3)
    assert report.status == "verified", report.witness
