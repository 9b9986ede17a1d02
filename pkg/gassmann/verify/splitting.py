"""Subgroups with the same kernel part and the same image of order prime to p
are conjugate: checked on randomly twisted lifts of diagonal images."""
from __future__ import annotations

import logging

import numpy as np

from gassmann.families import named
from gassmann.mat2 import Mat2, embed
from gassmann.residue import Modulus, teichmuller_value
from gassmann.subgrp import (
    Subgroup,
    are_conjugate,
    closure,
    conjugate_subgroup,
    generating_set,
    image_mod_p,
    kernel_part,
    small_subgroups,
)
from gassmann.utils import get_settings
from gassmann.verify.census import invariant_kernels
from gassmann.verify.kernel import enumerate_kernel_subgroups
from gassmann.verify.report import Budget, subgroup_witness, verdict

logger = logging.getLogger(__name__)

ATTEMPTS_PER_SAMPLE = 20


def _teichmuller_diagonal(q: Mat2, modulus: Modulus) -> Mat2:
    p = modulus.p
    return Mat2.diag(teichmuller_value(q.a, p), teichmuller_value(q.d, p), modulus)


def _twisted(lifts, K: Subgroup, rng) -> Subgroup:
    p = K.modulus.p
    small = K.modulus.reduced()
    gens = [g * embed(Mat2(*(int(v) for v in rng.integers(0, p, 4)), small)) for g in lifts]
    return closure(list(K.generators) + gens, K.modulus)


def verify_schur_zassenhaus(p: int, budget: Budget | None = None, samples: int = 50, seed: int = 0, **_):
    """Twisted pairs sharing kernel part and image, with p not dividing the image order,
    must be conjugate; every found conjugator is checked."""
    budget = budget or Budget()
    rng = np.random.default_rng(seed)
    modulus = Modulus(p, 2)
    limit = get_settings().full_scan_limit
    images = [Q for Q in small_subgroups(named("Cs", p, 1)) if Q.order > 1]
    kernels = enumerate_kernel_subgroups(p)
    invariant = {Q.key: invariant_kernels(Q) for Q in images}

    failures, accepted, attempts = [], 0, 0
    while accepted < samples and attempts < ATTEMPTS_PER_SAMPLE * samples:
        attempts += 1
        Q = images[int(rng.integers(len(images)))]
        K = kernels[int(rng.choice(invariant[Q.key]))]
        lifts = [_teichmuller_diagonal(q, modulus) for q in generating_set(Q)]
        H1, H2 = _twisted(lifts, K, rng), _twisted(lifts, K, rng)
        if Q.order % p == 0 or image_mod_p(H1) != image_mod_p(H2) or kernel_part(H1) != kernel_part(H2):
            continue
        accepted += 1
        x = are_conjugate(H1, H2, limit)
        if x is None or conjugate_subgroup(H1, x) != H2:
            failures.append({"image": subgroup_witness(Q),
                             "H1": subgroup_witness(H1),
                             "H2": subgroup_witness(H2)})
        budget.check({"accepted": accepted, "attempts": attempts})

    stats = {"samples": samples, "accepted": accepted, "attempts": attempts, "seed": seed}
    return verdict("schur-zassenhaus", p, failures, stats)
