"""Nontrivially locally conjugate pairs inside GL_2(Z/pZ)."""
from __future__ import annotations

import logging
from collections import defaultdict
from itertools import combinations

from gassmann.families import diagonal_swap, glp_pair, named
from gassmann.mat2 import ambient
from gassmann.residue import Modulus
from gassmann.subgrp import (
    are_conjugate,
    are_locally_conjugate,
    canonical_key,
    small_subgroups,
    subgroup_classes,
)
from gassmann.verify.report import Budget, subgroup_witness, verdict

logger = logging.getLogger(__name__)

SWEEP_PRIMES = (3, 5)


def formed_glp_pairs(p: int) -> list:
    """(D, <D, t>, <D', t>) for each subgroup D of C_s(p) with D != D'."""
    out = []
    for D in small_subgroups(named("Cs", p, 1)):
        if diagonal_swap(D) != D:
            out.append((D, *glp_pair(D)))
    return out


def verify_glp_pairs(p: int, budget: Budget | None = None, sweep: bool | None = None, **_):
    """Every <D, t>, <D', t> with D != D' is locally conjugate but not conjugate,
    and for small p a sweep over all subgroup classes finds no other such pair."""
    budget = budget or Budget()
    arrays = ambient(Modulus(p, 1))
    failures = []
    formed = formed_glp_pairs(p)
    keys = set()
    for D, H1, H2 in formed:
        witness = subgroup_witness(D)
        if not are_locally_conjugate(H1, H2):
            failures.append({"check": "not locally conjugate", "D": witness})
        elif are_conjugate(H1, H2) is not None:
            failures.append({"check": "conjugate", "D": witness})
        keys.add(frozenset((canonical_key(H1, arrays), canonical_key(H2, arrays))))
        budget.check({"pairs": len(keys)})

    stats = {"formed_pairs": len(formed), "distinct_formed_pairs": len(keys)}
    if sweep if sweep is not None else p in SWEEP_PRIMES:
        classes = subgroup_classes(named("GL2", p, 1))
        budget.check({"classes": len(classes)})
        groups = defaultdict(list)
        for S in classes:
            groups[(S.order, S.fingerprint)].append(canonical_key(S, arrays))
        observed = {frozenset(pair) for members in groups.values() for pair in combinations(members, 2)}
        stats.update({"subgroup_classes": len(classes), "observed_pairs": len(observed)})
        if observed != keys:
            failures.append({"check": "sweep", "unexplained": len(observed - keys), "missing": len(keys - observed)})
    return verdict("glp-pairs", p, failures, stats)
