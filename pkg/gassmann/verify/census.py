"""Subgroups of GL_2(Z/p^2Z) with a prescribed image mod p, up to conjugacy.

A subgroup H with image Q and kernel part K is generated by K and one lift
g_i (I + A_i p) of each generator q_i of Q, where K is Q-invariant and the
A_i run over coset representatives of Mat_2(Z/pZ) / K. Every candidate is
closed with the limit |Q||K| and kept when it reaches exactly that order.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from gassmann.families import named, named_generators, preimage, t_matrix
from gassmann.mat2 import Mat2, ambient, conjugate_codes, embed
from gassmann.residue import Modulus
from gassmann.subgrp import (
    Subgroup,
    are_conjugate,
    closure,
    dedupe_conjugates,
    generating_set,
    image_mod_p,
    normalizer_mod_p,
    small_subgroups,
    subgroup_classes,
)
from gassmann.utils import get_settings
from gassmann.verify.kernel import enumerate_kernel_subgroups
from gassmann.verify.report import Budget, subgroup_witness, verdict
from gassmann.verify.sweep import UnionFind, fan_out

logger = logging.getLogger(__name__)


# -- image classes mod p -----------------------------------------------------

def all_images(p: int) -> list[Subgroup]:
    """One subgroup per conjugacy class of subgroups of GL_2(Z/pZ)."""
    return subgroup_classes(named("GL2", p, 1))


def borel_images(p: int) -> list[Subgroup]:
    """Classes of subgroups of B(p) that contain t."""
    small = Modulus(p, 1)
    t = t_matrix(small)
    inside = [S for S in subgroup_classes(named("B", p, 1)) if t in S]
    return dedupe_conjugates(inside, ambient(small))


def cartan_images(p: int) -> list[Subgroup]:
    return dedupe_conjugates(subgroup_classes(named("Cs", p, 1)), ambient(Modulus(p, 1)))


def nonsplit_images(p: int) -> list[Subgroup]:
    """Classes of subgroups of C_ns(p) that are not scalar."""
    Z = named("Z", p, 1)
    subs = [S for S in subgroup_classes(named("Cns", p, 1)) if not S <= Z]
    return dedupe_conjugates(subs, ambient(Modulus(p, 1)))


# -- extensions of one image -------------------------------------------------

def _p_part_vectors(K: Subgroup) -> np.ndarray:
    p = K.modulus.p
    x = np.array(K.tuples(), dtype=np.int64).reshape(-1, 4)
    x[:, 0] -= 1
    x[:, 3] -= 1
    return (x // p) % p


def coset_representatives(K: Subgroup) -> list[tuple]:
    """Least representative (in code order) of each coset of Mat_2(Z/pZ) / K."""
    p = K.modulus.p
    weights = np.array([p**3, p**2, p, 1], dtype=np.int64)
    space = np.array(list(product(range(p), repeat=4)), dtype=np.int64)
    shifted = (space[:, None, :] + _p_part_vectors(K)[None, :, :]) % p
    least = np.unique((shifted @ weights).min(axis=1))
    return [tuple(int(v) for v in (c // weights) % p) for c in least]


def is_invariant(K: Subgroup, gens) -> bool:
    return all(frozenset(conjugate_codes(g.t, K.codes, K.modulus).tolist()) == K.elements for g in gens)


def _extensions(item) -> list[frozenset]:
    p, qgens, kernel_index = item
    modulus = Modulus(p, 2)
    small = modulus.reduced()
    K = enumerate_kernel_subgroups(p)[kernel_index]
    lifts = [Mat2.from_tuple(q, small).lift() for q in qgens]
    kgens = list(K.generators)
    target = K.order * _image_order(qgens, small)
    reps = coset_representatives(K)

    found = set()
    for shifts in product(reps, repeat=len(lifts)):
        gens = [g * embed(Mat2(*A, small)) for g, A in zip(lifts, shifts)]
        H = closure(kgens + gens, modulus, target)
        if H is not None and H.order == target:
            found.add(H.elements)
    return sorted(found, key=min)


def _image_order(qgens, small: Modulus) -> int:
    return closure([Mat2.from_tuple(q, small) for q in qgens], small).order


def invariant_kernels(Q: Subgroup) -> list[int]:
    """Indices (into the kernel enumeration) of the kernel subgroups normalized by Q."""
    lifts = [g.lift() for g in generating_set(Q)]
    return [i for i, K in enumerate(enumerate_kernel_subgroups(Q.modulus.p)) if is_invariant(K, lifts)]


def extensions(Q: Subgroup, jobs=None) -> list[Subgroup]:
    """Every subgroup of GL_2(Z/p^2Z) whose image mod p is exactly Q."""
    p = Q.modulus.p
    modulus = Q.modulus.lifted()
    qgens = tuple(g.t for g in generating_set(Q))
    items = [(p, qgens, i) for i in invariant_kernels(Q)]
    out = []
    for found in fan_out(_extensions, items, jobs=jobs):
        out.extend(Subgroup.from_codes(modulus, codes) for codes in found)
    return out


# -- the census --------------------------------------------------------------

@dataclass(frozen=True)
class CensusClass:
    index: int
    image: int
    members: tuple

    @property
    def representative(self) -> Subgroup:
        return self.members[0]

    @property
    def order(self) -> int:
        return self.representative.order

    @property
    def fingerprint(self):
        return self.representative.fingerprint

    def to_json(self):
        return {"index": self.index, "image": self.image, "size": len(self.members),
                **self.representative.to_json()}


@dataclass
class SubgroupCensus:
    """Conjugacy classes of the subgroups of GL_2(Z/p^2Z) with image in ``images``."""

    p: int
    images: list
    classes: list = field(default_factory=list)
    incomplete: int = 0
    _index: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, p: int, images: list[Subgroup], budget: Budget | None = None, jobs=None) -> SubgroupCensus:
        budget = budget or Budget()
        census = cls(p, list(images))
        modulus = Modulus(p, 2)
        kernel_gens = [g.t for g in named_generators("KerPhi", modulus)]
        for qi, Q in enumerate(census.images):
            subs = extensions(Q, jobs=jobs)
            budget.check({"images_done": qi, "classes": len(census.classes)})
            index = {H.elements: i for i, H in enumerate(subs)}
            conjugators = [g.lift().t for g in generating_set(normalizer_mod_p(Q))] + kernel_gens
            uf = UnionFind(len(subs))
            for i, H in enumerate(subs):
                for x in conjugators:
                    j = index.get(frozenset(conjugate_codes(x, H.codes, modulus).tolist()))
                    if j is None:
                        census.incomplete += 1
                    else:
                        uf.union(i, j)
            for members in uf.groups():
                census._add(CensusClass(len(census.classes), qi, tuple(subs[i] for i in members)))
            logger.info("image %d of order %d: %d subgroups in %d classes",
                        qi, Q.order, len(subs), len(uf.groups()))
        if census.incomplete:
            logger.warning("census at p=%d: %d conjugates fell outside the enumeration", p, census.incomplete)
        return census

    def _add(self, klass: CensusClass):
        self.classes.append(klass)
        for H in klass.members:
            self._index[H.elements] = klass.index

    def __len__(self):
        return len(self.classes)

    @property
    def subgroup_count(self) -> int:
        return sum(len(c.members) for c in self.classes)

    def completeness_failures(self) -> list:
        """A failure entry when conjugation led outside the enumerated subgroups."""
        if not self.incomplete:
            return []
        return [{"check": "census incomplete", "outside": self.incomplete, "images": len(self.images)}]

    def image_order(self, index: int) -> int:
        return self.images[self.classes[index].image].order

    def locate(self, H: Subgroup):
        """Index of the class containing a conjugate of H, or None outside the census."""
        hit = self._index.get(H.elements)
        if hit is not None:
            return hit
        limit = get_settings().full_scan_limit
        for klass in self.classes:
            if klass.order == H.order and klass.fingerprint == H.fingerprint:
                if are_conjugate(H, klass.representative, limit) is not None:
                    return klass.index
        return None

    def nontrivial_pairs(self) -> list[tuple[int, int]]:
        """Class pairs that are locally conjugate but not conjugate."""
        groups = defaultdict(list)
        for klass in self.classes:
            groups[(klass.order, klass.fingerprint)].append(klass.index)
        return sorted(pair for members in groups.values() for pair in combinations(members, 2))


def verify_enumerator_crosscheck(p: int, budget: Budget | None = None, max_image: int = 2, **_):
    """Extensions of small images against a brute-force subgroup lattice of the preimage."""
    budget = budget or Budget()

    failures, checked = [], []
    for Q in all_images(p):
        if Q.order > max_image:
            continue
        direct = {H.elements for H in extensions(Q)}
        lattice = {S.elements for S in small_subgroups(preimage(Q)) if image_mod_p(S) == Q}
        checked.append({"image_order": Q.order, "subgroups": len(lattice)})
        if direct != lattice:
            failures.append({"image": subgroup_witness(Q),
                             "only_extensions": len(direct - lattice), "only_lattice": len(lattice - direct)})
        budget.check({"images": len(checked)})
    return verdict("enumerator-crosscheck", p, failures, {"images": checked})
