"""Subgroups whose image contains SL_2(Z/pZ), and the kernels that the
exceptional images A_4 and S_4 allow at p = 5."""
from __future__ import annotations

import logging
from itertools import combinations

import numpy as np

from gassmann.errors import BadParameter
from gassmann.families import kernel_family, kern, named, preimage, sl2_p3_list, t_matrix
from gassmann.mat2 import Mat2, embed
from gassmann.residue import Modulus
from gassmann.subgrp import (
    Subgroup,
    are_locally_conjugate,
    closure,
    image_mod_p,
    kernel_part,
    trivial,
)
from gassmann.verify.report import Budget, subgroup_witness, verdict

logger = logging.getLogger(__name__)

# positions in sl2_p3_list() of SL_2(Z/9Z) and of the full preimage of SL_2(Z/3Z)
SL2_ITEM, PREIMAGE_ITEM = 1, 3

A4_GENERATORS = (((2, 0), (0, 3)), ((0, 1), (4, 0)), ((1, 1), (2, 3)))
S4_EXTRA = ((3, 0), (0, 4))


def _random_p_part(rng, p: int) -> Mat2:
    return embed(Mat2(*(int(v) for v in rng.integers(0, p, 4)), Modulus(p, 1)))


def _verify_sl2_p3(failures: list, stats: dict):
    groups = sl2_p3_list()
    target = named("SL2", 3, 1)
    for n, H in enumerate(groups):
        if image_mod_p(H) != target:
            failures.append({"check": "image", "group": n, "subgroup": subgroup_witness(H)})
    if groups[SL2_ITEM] != named("SL2", 3, 2):
        failures.append({"check": "SL_2(Z/9Z)", "group": SL2_ITEM, "order": groups[SL2_ITEM].order})
    if groups[PREIMAGE_ITEM] != preimage(target):
        failures.append({"check": "preimage", "group": PREIMAGE_ITEM, "order": groups[PREIMAGE_ITEM].order})
    for i, j in combinations(range(len(groups)), 2):
        if are_locally_conjugate(groups[i], groups[j]):
            failures.append({"check": "locally conjugate", "groups": [i, j]})
    stats["orders"] = [H.order for H in groups]


def _verify_sl2_lifts(p: int, samples: int, seed: int, failures: list, stats: dict, budget: Budget):
    modulus = Modulus(p, 2)
    t, lower = t_matrix(modulus), Mat2(1, 0, 1, 1, modulus)
    sl2, full = named("SL2", p, 2), preimage(named("SL2", p, 1))
    if closure([t, lower], modulus) != sl2:
        failures.append({"check": "SL_2 lift", "expected": sl2.order})
    if closure([t, lower, kern(p, 1, 0, 0, 1)], modulus) != full:
        failures.append({"check": "preimage lift", "expected": full.order})
    budget.check({"lifts": 0})

    rng = np.random.default_rng(seed)
    orders = []
    for s in range(samples):
        H = closure([t * _random_p_part(rng, p), lower * _random_p_part(rng, p)], modulus)
        orders.append(H.order)
        if H != sl2 and H != full:
            failures.append({"check": "random lift", "order": H.order, "subgroup": subgroup_witness(H)})
        budget.check({"lifts": s + 1})
    stats["orders"] = sorted(set(orders))
    stats["targets"] = [sl2.order, full.order]


def verify_sl2(p: int, budget: Budget | None = None, samples: int = 5, seed: int = 0, **_):
    """At p = 3: the six lifts of SL_2(Z/3Z) have image SL_2(Z/3Z), include SL_2(Z/9Z)
    and the full preimage, and are pairwise not locally conjugate. Above 3: any lift
    of SL_2(Z/pZ) is SL_2(Z/p^2Z) or the full preimage."""
    budget = budget or Budget()
    failures, stats = [], {"seed": seed}
    if p == 3:
        _verify_sl2_p3(failures, stats)
    else:
        _verify_sl2_lifts(p, samples, seed, failures, stats, budget)
    return verdict("sl2", p, failures, stats)


def complement_lifts(gens, modulus: Modulus) -> list[Mat2]:
    """Lifts of ``gens`` (mod p) generating a subgroup that meets ker(phi) trivially.

    Needs the image to have order prime to p. Each generator in turn takes the
    first lift, in code order, that keeps the kernel part trivial.
    """
    small = modulus.reduced()
    n = closure(gens, small).order
    if n % modulus.p == 0:
        raise BadParameter(f"image of order {n} is divisible by p = {modulus.p}")
    kernel = named("KerPhi", modulus.p, 2).matrices()
    chosen = []
    for g in gens:
        base = g.lift()
        for k in kernel:
            H = closure(chosen + [base * k], modulus, limit=n)
            if H is not None and kernel_part(H).order == 1:
                chosen.append(base * k)
                break
        else:
            raise BadParameter(f"no lift of {g} keeps the kernel trivial")
    return chosen


def allowed_exceptional_kernels(p: int) -> dict:
    modulus = Modulus(p, 2)
    return {
        "trivial": trivial(modulus),
        "scalar": kernel_family("ker01.4", p, d=1),
        "trace-zero": named("T", p, 2),
        "kerphi": named("KerPhi", p, 2),
    }


def exceptional_seeds(p: int) -> dict:
    """Kernel elements added to a complement lift, keyed by the kernel part they produce."""
    scalar, trace_zero = kern(p, 1, 0, 0, 1), kern(p, 0, 1, 0, 0)
    return {"trivial": [], "scalar": [scalar], "trace-zero": [trace_zero], "kerphi": [scalar, trace_zero]}


def _label(K: Subgroup, allowed: dict):
    return next((key for key, A in allowed.items() if A == K), None)


def verify_exceptional_kernels(p: int = 5, budget: Budget | None = None, samples: int = 4, seed: int = 0, **_):
    """With image mod 5 of type A_4 or S_4, the kernel part is trivial, scalar, T or all of ker(phi).

    Each kernel type is produced once from a complement lift plus a fixed seed;
    random lifts and seeds are then sampled and must land on a listed type.
    """
    budget = budget or Budget()
    if p != 5:
        raise BadParameter("the exceptional images are checked at p = 5")
    modulus = Modulus(p, 2)
    small = modulus.reduced()
    rng = np.random.default_rng(seed)
    allowed = allowed_exceptional_kernels(p)
    base = [Mat2.of(g, small) for g in A4_GENERATORS]
    cases = {"A4": base, "S4": base + [Mat2.of(S4_EXTRA, small)]}

    failures, found, constructed = [], {}, {}
    for name, gens in cases.items():
        lifts = complement_lifts(gens, modulus)
        for expected, extra in exceptional_seeds(p).items():
            K = kernel_part(closure(lifts + extra, modulus))
            label = _label(K, allowed)
            constructed.setdefault(name, {})[expected] = label
            if label != expected:
                failures.append({"image": name, "seed": expected, "kernel_order": K.order,
                                 "kernel": subgroup_witness(K)})
        budget.check({"image": name, "constructed": len(constructed[name])})

        for s in range(samples):
            extra = [_random_p_part(rng, p)] if s % 2 else []
            H = closure([g.lift() * _random_p_part(rng, p) for g in gens] + extra, modulus)
            K = kernel_part(H)
            label = _label(K, allowed)
            found.setdefault(name, set()).add(label or f"order {K.order}")
            if label is None:
                failures.append({"image": name, "kernel_order": K.order, "kernel": subgroup_witness(K)})
            budget.check({"image": name, "samples": s + 1})

    stats = {"samples": samples, "seed": seed, "constructed": constructed,
             "kernels": {k: sorted(v) for k, v in found.items()}}
    return verdict("exceptional-kernels", p, failures, stats)
