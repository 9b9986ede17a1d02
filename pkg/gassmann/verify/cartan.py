"""Pairs with image in the split Cartan, and rigidity for the nonsplit Cartan."""
from __future__ import annotations

import logging

import numpy as np

from gassmann.errors import DegeneratePair
from gassmann.families import cartan_pair, diagonal_swap, kern, named, preimage
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus
from gassmann.subgrp import (
    Subgroup,
    are_conjugate,
    are_locally_conjugate,
    closure,
    generating_set,
    small_subgroups,
)
from gassmann.utils import get_settings
from gassmann.verify.census import SubgroupCensus, cartan_images, nonsplit_images
from gassmann.verify.necessity import necessity_failures
from gassmann.verify.report import Budget, subgroup_witness, verdict

logger = logging.getLogger(__name__)


def sampled_diagonals(p: int, samples: int, seed: int) -> list[Subgroup]:
    """Subgroups of C_s(p^2) generated by one or two random diagonal elements."""
    rng = np.random.default_rng(seed)
    modulus = Modulus(p, 2)
    diagonals = named("Cs", p, 2).tuples()
    out = []
    for _ in range(samples):
        picks = rng.choice(len(diagonals), size=int(rng.integers(1, 3)), replace=False)
        out.append(closure([Mat2.from_tuple(diagonals[i], modulus) for i in picks], modulus))
    return out


def cartan_diagonals(p: int, samples: int = 20, seed: int = 0) -> list[Subgroup]:
    """Every subgroup of C_s(9) at p = 3. Above 3, <I + diag(1, 2)p>, the scalar
    <I + Ip> and a random sample."""
    if p == 3:
        return small_subgroups(named("Cs", 3, 2))
    modulus = Modulus(p, 2)
    fixed = [
        closure([Mat2.diag(1 + p, 1 + 2 * p, modulus)], modulus),
        closure([Mat2.scalar(1 + p, modulus)], modulus),
    ]
    return fixed + sampled_diagonals(p, samples, seed)


def _pair(D: Subgroup):
    try:
        return cartan_pair(D)
    except DegeneratePair:
        u = kern(D.modulus.p, 0, 1, 0, 0)
        H = closure(list(D.generators or generating_set(D)) + [u], D.modulus)
        return H, H


def verify_cartan_pairs(p: int, budget: Budget | None = None, samples: int = 20, seed: int = 0, **_):
    """<D, I + E12 p> and <D', I + E12 p> are locally conjugate, and conjugate only when D = D'.

    At p = 3 the census of subgroups with image in C_s(3) must show no other
    nontrivially locally conjugate pairs.
    """
    budget = budget or Budget()
    limit = get_settings().full_scan_limit
    failures, pairs = [], []
    Ds = cartan_diagonals(p, samples, seed)
    for n, D in enumerate(Ds):
        H1, H2 = _pair(D)
        swapped = diagonal_swap(D) != D
        witness = subgroup_witness(D)
        if not are_locally_conjugate(H1, H2):
            failures.append({"check": "not locally conjugate", "D": witness})
        elif (are_conjugate(H1, H2, limit) is None) != swapped:
            failures.append({"check": "conjugacy", "D": witness, "distinct_swap": swapped})
        else:
            failures.extend(necessity_failures(H1, H2))
        if swapped:
            pairs.append((H1, H2))
        budget.check({"diagonals": n + 1, "failures": len(failures)})

    stats = {"diagonals": len(Ds), "nontrivial_pairs_formed": len(pairs), "seed": seed}
    if p == 3:
        census = SubgroupCensus.build(p, cartan_images(p), budget)
        failures[:0] = census.completeness_failures()
        formed = set()
        for H1, H2 in pairs:
            a, b = census.locate(H1), census.locate(H2)
            if a is None or b is None:
                failures.append({"check": "pair outside census", "pair": [H1.to_json(), H2.to_json()]})
            else:
                formed.add(tuple(sorted((a, b))))
        observed = set(census.nontrivial_pairs())
        for a, b in sorted(observed - formed):
            failures.append({"check": "unexplained pair", "classes": [census.classes[a].to_json(),
                                                                      census.classes[b].to_json()]})
        stats.update({"census_classes": len(census), "census_pairs": len(observed),
                      "incomplete": census.incomplete})
    return verdict("cartan-pairs", p, failures, stats)


def verify_cns_rigidity(p: int, budget: Budget | None = None, **_):
    """No nontrivially locally conjugate pairs among subgroups with nonscalar image in C_ns(p)."""
    budget = budget or Budget()
    census = SubgroupCensus.build(p, nonsplit_images(p), budget)
    failures = census.completeness_failures()
    if census.locate(preimage(named("Cns", p, 1))) is None:
        failures.append({"check": "preimage of C_ns missing"})
    failures += [
        {"check": "locally conjugate pair", "classes": [census.classes[a].to_json(), census.classes[b].to_json()]}
        for a, b in census.nontrivial_pairs()
    ]
    stats = {"images": len(census.images), "classes": len(census), "subgroups": census.subgroup_count,
             "incomplete": census.incomplete}
    return verdict("cns-rigidity", p, failures, stats)
