"""Pairs with image in the Borel subgroup: the exhaustive count at p = 3 and
the explicit forms for p > 3."""
from __future__ import annotations

import logging
from collections import Counter

from gassmann.errors import BadParameter, DegeneratePair
from gassmann.families import K_KINDS, TAU_KINDS, borel_pair, diagonal_swap
from gassmann.subgrp import (
    Subgroup,
    are_conjugate,
    are_locally_conjugate,
    closure,
    diag_part,
    generating_set,
)
from gassmann.utils import get_settings
from gassmann.verify.cartan import cartan_diagonals
from gassmann.verify.census import SubgroupCensus, all_images
from gassmann.verify.necessity import necessity_failures
from gassmann.verify.report import Budget, subgroup_witness, verdict

logger = logging.getLogger(__name__)

BOREL_PAIRS_P3 = 40
PRESENTATION_TRIES = 200


def _unipotent_part(H: Subgroup) -> Subgroup:
    """Elements of H whose reduction mod p is upper unipotent."""
    p = H.modulus.p
    codes = [code for code, (a, b, c, d) in zip(H.key, H.tuples()) if a % p == 1 and c % p == 0 and d % p == 1]
    return Subgroup.from_codes(H.modulus, codes)


def _joined(*groups: Subgroup) -> Subgroup:
    return closure([g for G in groups for g in generating_set(G)], groups[0].modulus)


def presentation(census: SubgroupCensus, a: int, b: int):
    """Generators S, D, D' with <S, D> in class a and <S, D'> in class b, if some member allows it."""
    for H1 in census.classes[a].members[:PRESENTATION_TRIES]:
        D = diag_part(H1)
        Dp = diagonal_swap(D)
        if Dp == D:
            continue
        S = _unipotent_part(H1)
        if _joined(S, D) != H1:
            continue
        H2 = _joined(S, Dp)
        if census.locate(H2) == b:
            return {"tau_k": subgroup_witness(S),
                    "D": subgroup_witness(D),
                    "D_swapped": subgroup_witness(Dp)}
    return None


def count_borel_pairs_p3(p: int = 3, budget: Budget | None = None, **_):
    """Nontrivially locally conjugate pairs over every image class at p = 3, expected to number 40.

    The pairs are split by image: image of order divisible by p (conjugate into
    B(3) and containing t) or of order prime to p (the split Cartan pairs).
    """
    budget = budget or Budget()
    if p != 3:
        raise BadParameter("the exhaustive Borel count runs at p = 3")
    census = SubgroupCensus.build(p, all_images(p), budget)
    pairs = census.nontrivial_pairs()
    failures = census.completeness_failures()
    if len(pairs) != BOREL_PAIRS_P3:
        failures.append({"check": "pair count", "found": len(pairs), "expected": BOREL_PAIRS_P3})

    listed, split = [], Counter()
    for a, b in pairs:
        H1, H2 = census.classes[a].representative, census.classes[b].representative
        kind = "borel" if census.image_order(a) % p == 0 else "cartan"
        split[kind] += 1
        failures.extend(necessity_failures(H1, H2))
        listed.append({"orders": H1.order, "classes": [a, b], "image": kind,
                       "presentation": presentation(census, a, b) if kind == "borel" else None})
        budget.check({"pairs_checked": len(listed)})
    logger.info("borel-40: %d pairs, %d with image in B(3), %d split Cartan",
                len(pairs), split["borel"], split["cartan"])

    stats = {"images": len(census.images), "classes": len(census), "subgroups": census.subgroup_count,
             "pairs": listed, "global_pairs": len(pairs), "borel_pairs": split["borel"],
             "cartan_pairs": split["cartan"], "incomplete": census.incomplete}
    return verdict("borel-40", p, failures, stats)


def verify_borel_forms(p: int, budget: Budget | None = None, samples: int = 2, seed: int = 0, **_):
    """Build <tau, k, D> and <tau, k, D'> for every tau form, a, k and sampled D,
    and record which combinations are nontrivially locally conjugate."""
    budget = budget or Budget()
    if p == 3:
        raise BadParameter("the Borel forms are stated for p > 3")
    limit = get_settings().full_scan_limit
    failures, combos = [], []
    for D in cartan_diagonals(p, samples, seed):
        if diagonal_swap(D) == D:
            continue
        for tau in TAU_KINDS:
            for a in (range(p) if tau.startswith("lower") else (0,)):
                for k in K_KINDS:
                    try:
                        H1, H2 = borel_pair(tau, a, k, D)
                    except DegeneratePair:
                        continue
                    local = are_locally_conjugate(H1, H2)
                    conj = local and are_conjugate(H1, H2, limit) is not None
                    if local:
                        failures.extend(necessity_failures(H1, H2))
                    combos.append({"tau": tau, "a": a, "k": k, "D": subgroup_witness(D),
                                   "order": H1.order, "locally_conjugate": local, "conjugate": conj})
                    budget.check({"combinations": len(combos)})
    nontrivial = sum(1 for c in combos if c["locally_conjugate"] and not c["conjugate"])
    stats = {"combinations": len(combos), "nontrivial": nontrivial, "seed": seed, "results": combos}
    return verdict("borel-forms", p, failures, stats)
