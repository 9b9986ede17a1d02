import pytest

from gassmann.residue import Modulus
from gassmann.verify.classes import (
    conjugacy_orbits,
    verify_class_invariants,
    verify_power_formulas,
    verify_similarity_reps,
)


def test_conjugacy_orbits_mod_3():
    codes, orbit = conjugacy_orbits(Modulus(3, 1))
    assert len(codes) == 48
    assert len(set(orbit.tolist())) == 8


@pytest.mark.parametrize("k", (1, 2))
def test_class_invariants_at_3(k):
    report = verify_class_invariants(3, k=k)
    assert report.status == "verified", report.witness


@pytest.mark.parametrize("p", (3, 5, 7))
def test_similarity_reps(p):
    report = verify_similarity_reps(p)
    assert report.status == "verified", report.witness
    assert report.stats["classes"] == report.stats["table_rows"] == p * p + p


@pytest.mark.parametrize("p", (3, 5))
def test_power_formulas(p):
    report = verify_power_formulas(p, samples=40, seed=3)
    assert report.status == "verified", report.witness
    assert report.stats["membership_samples"] == 40


@pytest.mark.slow
def test_class_invariants_at_5():
    assert verify_class_invariants(5).status == "verified"
