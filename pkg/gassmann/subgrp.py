"""Subgroups of GL_2(Z/p^kZ): closure, Gassmann fingerprints, conjugacy search
and the structural pieces (kernel part, image mod p, diagonal parts)."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from gassmann.conjcls import invariant_t
from gassmann.errors import BadParameter, ModulusMismatch, NotInKernel, NotInvertible
from gassmann.mat2 import (
    Mat2,
    ambient,
    arrays_of,
    conjugate_codes,
    decode_array,
    decode_t,
    det_t,
    encode_array,
    encode_t,
    lifted_ambient,
    mul_arrays,
    mul_t,
)
from gassmann.residue import Modulus, teichmuller_value

logger = logging.getLogger(__name__)

IDENTITY = (1, 0, 0, 1)
SCAN_CHUNK = 1 << 17


def close_codes(gens, modulus: Modulus, limit: Optional[int] = None):
    """Breadth-first product closure of entry tuples.

    Returns the set of element codes, or None as soon as the closure grows
    past ``limit``.
    """
    m = modulus.m
    gens = [g for g in dict.fromkeys(gens) if g != IDENTITY]
    seen = {encode_t(IDENTITY, m)}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul_t(x, g, m)
                code = encode_t(y, m)
                if code not in seen:
                    seen.add(code)
                    nxt.append(y)
        if limit is not None and len(seen) > limit:
            return None
        frontier = nxt
    return seen


@dataclass(frozen=True, eq=False)
class Subgroup:
    modulus: Modulus
    generators: tuple
    elements: frozenset

    @classmethod
    def from_codes(cls, modulus: Modulus, codes: Iterable[int], generators=()) -> Subgroup:
        return cls(modulus, tuple(generators), frozenset(int(c) for c in codes))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        if isinstance(g, Mat2):
            return g.modulus == self.modulus and g.encode() in self.elements
        return int(g) in self.elements

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.modulus == other.modulus and self.elements == other.elements

    def __hash__(self):
        return hash((self.modulus, self.elements))

    def __le__(self, other: Subgroup) -> bool:
        return self.modulus == other.modulus and self.elements <= other.elements

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Subgroup(order={self.order}, p={self.modulus.p}, k={self.modulus.k}, gens=[{gens}])"

    @cached_property
    def key(self) -> tuple:
        """Sorted element codes: the canonical key of this subgroup."""
        return tuple(sorted(self.elements))

    @cached_property
    def codes(self) -> np.ndarray:
        return np.array(self.key, dtype=np.int64)

    @cached_property
    def fingerprint(self) -> Fingerprint:
        return fingerprint(self)

    def tuples(self):
        m = self.modulus.m
        return [decode_t(c, m) for c in self.key]

    def matrices(self):
        return [Mat2.decode(c, self.modulus) for c in self.key]

    def is_in_kernel(self) -> bool:
        p = self.modulus.p
        if self.modulus.k != 2:
            return False
        for a, b, c, d in self.tuples():
            if a % p != 1 or b % p or c % p or d % p != 1:
                return False
        return True

    def to_json(self):
        return {
            "p": self.modulus.p,
            "k": self.modulus.k,
            "order": self.order,
            "generators": [str(g) for g in (self.generators or generating_set(self))],
            "fingerprint": self.fingerprint.to_json(),
        }


def trivial(modulus: Modulus) -> Subgroup:
    return Subgroup.from_codes(modulus, [encode_t(IDENTITY, modulus.m)])


def closure(gens: Iterable[Mat2], modulus: Optional[Modulus] = None, limit: Optional[int] = None):
    """The subgroup generated by ``gens``; with ``limit`` returns None once it outgrows the limit."""
    gens = list(gens)
    if not gens:
        if modulus is None:
            raise BadParameter("closure of no generators needs a modulus")
        return trivial(modulus)
    modulus = modulus or gens[0].modulus
    for g in gens:
        if g.modulus != modulus:
            raise ModulusMismatch(f"generator {g} is not over {modulus}")
        if not g.is_invertible():
            raise NotInvertible(f"generator {g} is singular")
    codes = close_codes([g.t for g in gens], modulus, limit)
    if codes is None:
        return None
    return Subgroup(modulus, tuple(gens), frozenset(codes))


def join(*groups: Subgroup, extra: Iterable[Mat2] = ()) -> Subgroup:
    gens = [g for H in groups for g in (H.generators or generating_set(H))] + list(extra)
    return closure(gens, groups[0].modulus)


# -- fingerprints ------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    counts: tuple  # ((ClassInvariant, count), ...) in invariant order

    @property
    def total(self) -> int:
        return sum(n for _, n in self.counts)

    def as_dict(self) -> dict:
        return dict(self.counts)

    def to_json(self):
        return [{**inv.to_json(), "count": n} for inv, n in self.counts]


def fingerprint(H: Subgroup) -> Fingerprint:
    p, k = H.modulus.p, H.modulus.k
    counts = Counter(invariant_t(x, p, k) for x in H.tuples())
    return Fingerprint(tuple(sorted(counts.items())))


def are_locally_conjugate(H1: Subgroup, H2: Subgroup) -> bool:
    if H1.modulus != H2.modulus:
        raise ModulusMismatch(f"{H1.modulus} vs {H2.modulus}")
    return H1.order == H2.order and H1.fingerprint == H2.fingerprint


# -- conjugation -------------------------------------------------------------

def conjugate_subgroup(H: Subgroup, x: Mat2) -> Subgroup:
    """x H x^-1."""
    if x.modulus != H.modulus:
        raise ModulusMismatch(f"{x.modulus} vs {H.modulus}")
    codes = conjugate_codes(x.t, H.codes, H.modulus)
    gens = tuple(g.conjugate_by(x) for g in H.generators)
    return Subgroup.from_codes(H.modulus, codes.tolist(), gens)


def _scan(arrays, gens, target: np.ndarray):
    """Indices i (in order) with g_i h g_i^-1 in target for every h in gens."""
    n = len(arrays)
    for start in range(0, n, SCAN_CHUNK):
        stop = min(start + SCAN_CHUNK, n)
        mask = np.ones(stop - start, dtype=bool)
        for h in gens:
            idx = np.nonzero(mask)[0]
            if len(idx) == 0:
                break
            images = arrays.conjugates_of(h, start, stop)[idx]
            mask[idx] = np.isin(images, target)
        for i in np.nonzero(mask)[0]:
            yield start + int(i)


def are_conjugate(H1: Subgroup, H2: Subgroup, limit: Optional[int] = None) -> Optional[Mat2]:
    """Some g with g H1 g^-1 = H2, or None.

    Prunes on order and fingerprint, then scans for g sending every generator
    of H1 into H2. Kernel subgroups are searched over GL_2(Z/pZ) only. Other
    searches scan GL_2(Z/p^kZ) and raise BudgetExceeded above ``limit``.
    """
    if H1.modulus != H2.modulus:
        raise ModulusMismatch(f"{H1.modulus} vs {H2.modulus}")
    modulus = H1.modulus
    if H1.order != H2.order:
        return None
    if H1.elements == H2.elements:
        return Mat2.identity(modulus)
    if H1.fingerprint != H2.fingerprint:
        return None

    gens = [g.t for g in generating_set(H1)]
    if modulus.k == 2 and H1.is_in_kernel() and H2.is_in_kernel():
        arrays = lifted_ambient(modulus.p)
    else:
        arrays = ambient(modulus, limit)

    for i in _scan(arrays, gens, H2.codes):
        x = arrays.element(i)
        if conjugate_subgroup(H1, x) == H2:
            return x
        logger.warning("discarded unverified conjugator %s", x)
    return None


def canonical_key(H: Subgroup, conjugators=None) -> tuple:
    """Least sorted key over the orbit of H under conjugation.

    ``conjugators`` defaults to GL_2(Z/p^kZ) (all of it, so keep this to
    small moduli)."""
    arrays = conjugators if conjugators is not None else ambient(H.modulus)
    m = H.modulus.m
    h = decode_array(H.codes, m)
    g = tuple(v[:, None] for v in arrays.entries)
    gi = tuple(v[:, None] for v in arrays.inverses)
    images = encode_array(*mul_arrays(mul_arrays(g, h, m), gi, m), m)
    images.sort(axis=1)
    best = np.lexsort(images.T[::-1])[0]
    return tuple(int(v) for v in images[best])


def normalizer_mod_p(Q: Subgroup) -> Subgroup:
    """N_{GL_2(Z/pZ)}(Q) for Q a subgroup mod p."""
    if Q.modulus.k != 1:
        raise BadParameter("normalizer_mod_p expects a subgroup mod p")
    arrays = ambient(Q.modulus)
    gens = [g.t for g in generating_set(Q)]
    hits = list(_scan(arrays, gens, Q.codes))
    return Subgroup.from_codes(Q.modulus, arrays.codes[hits].tolist())


# -- generating sets and small lattices --------------------------------------

def element_order(x, modulus: Modulus) -> int:
    m = modulus.m
    y, n = x, 1
    while y != IDENTITY:
        y = mul_t(y, x, m)
        n += 1
    return n


PAIR_SEARCH_LIMIT = 100


def generating_set(H: Subgroup) -> list:
    """A short generating list: one element when cyclic, a pair for small
    groups when one exists, otherwise greedy."""
    if H.order == 1:
        return []
    modulus = H.modulus
    elems = [x for x in H.tuples() if x != IDENTITY]
    if H.order <= 4 * PAIR_SEARCH_LIMIT:
        orders = {x: element_order(x, modulus) for x in elems}
        for x in elems:
            if orders[x] == H.order:
                return [Mat2.from_tuple(x, modulus)]
        if H.order <= PAIR_SEARCH_LIMIT:
            ranked = sorted(elems, key=lambda x: -orders[x])
            for x, y in combinations(ranked, 2):
                got = close_codes([x, y], modulus, H.order)
                if got is not None and len(got) == H.order:
                    return [Mat2.from_tuple(x, modulus), Mat2.from_tuple(y, modulus)]
    gens = []
    current = {encode_t(IDENTITY, modulus.m)}
    for x in elems:
        if encode_t(x, modulus.m) in current:
            continue
        gens.append(x)
        current = close_codes(gens, modulus)
        if len(current) == H.order:
            break
    return [Mat2.from_tuple(x, modulus) for x in gens]


def cyclic_subgroups(H: Subgroup) -> list[Subgroup]:
    seen = {}
    for x in H.tuples():
        if x == IDENTITY:
            continue
        C = closure([Mat2.from_tuple(x, H.modulus)])
        seen.setdefault(C.elements, C)
    return sorted(seen.values(), key=lambda S: (S.order, S.key))


def small_subgroups(H: Subgroup) -> list[Subgroup]:
    """Every subgroup of a small group, by closing the cyclic subgroups under joins."""
    cyclics = cyclic_subgroups(H)
    found = {trivial(H.modulus).elements: trivial(H.modulus)}
    for C in cyclics:
        found.setdefault(C.elements, C)
    frontier = list(cyclics)
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclics:
                if C.elements <= S.elements:
                    continue
                J = closure(list(S.generators) + list(C.generators), H.modulus)
                if J.elements not in found:
                    found[J.elements] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.key))



def dedupe_conjugates(groups: Iterable[Subgroup], conjugators=None) -> list[Subgroup]:
    """The first subgroup of each conjugacy class, in input order."""
    seen, out = set(), []
    for H in groups:
        key = canonical_key(H, conjugators)
        if key not in seen:
            seen.add(key)
            out.append(H)
    return out


def subgroup_classes(G: Subgroup) -> list[Subgroup]:
    """One subgroup per G-conjugacy class of subgroups of G.

    Joins class representatives with every cyclic subgroup of G: any subgroup
    is a conjugate of such a join, so only representatives need extending.
    """
    conjugators = arrays_of(G.modulus, G.elements)
    cyclics = cyclic_subgroups(G)
    reps, keys = [], set()

    def add(S):
        key = canonical_key(S, conjugators)
        if key in keys:
            return False
        keys.add(key)
        reps.append(S)
        return True

    add(trivial(G.modulus))
    frontier = [C for C in cyclics if add(C)]
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclics:
                if C.elements <= S.elements:
                    continue
                J = closure(list(S.generators) + list(C.generators), G.modulus)
                if add(J):
                    nxt.append(J)
        frontier = nxt
    logger.debug("%d subgroup classes in a group of order %d", len(reps), G.order)
    return sorted(reps, key=lambda S: (S.order, S.key))


# -- structural extractors ---------------------------------------------------

def _filtered(H: Subgroup, keep, modulus=None) -> Subgroup:
    target = modulus or H.modulus
    return Subgroup.from_codes(target, [encode_t(x, target.m) for x in H.tuples() if keep(x)])


def _require_k2(H: Subgroup):
    if H.modulus.k != 2:
        raise BadParameter("this extractor needs a subgroup mod p^2")


def kernel_part(H: Subgroup) -> Subgroup:
    """H meet ker(phi)."""
    _require_k2(H)
    p = H.modulus.p
    return _filtered(H, lambda x: x[0] % p == 1 and x[1] % p == 0 and x[2] % p == 0 and x[3] % p == 1)


def image_mod_p(H: Subgroup) -> Subgroup:
    """phi(H) as a subgroup of GL_2(Z/pZ)."""
    _require_k2(H)
    small = H.modulus.reduced()
    p = small.p
    codes = {encode_t(tuple(v % p for v in x), p) for x in H.tuples()}
    return Subgroup.from_codes(small, codes)


def delta(H: Subgroup) -> Subgroup:
    """Kernel elements of H whose p-parts are diagonal."""
    K = kernel_part(H)
    return _filtered(K, lambda x: x[1] == 0 and x[2] == 0)


def delta_perp(H: Subgroup) -> Subgroup:
    """Kernel elements of H whose p-parts are antidiagonal."""
    K = kernel_part(H)
    return _filtered(K, lambda x: x[0] == 1 and x[3] == 1)


def diag_part(H: Subgroup) -> Subgroup:
    """D_H: the diagonal matrices in H."""
    return _filtered(H, lambda x: x[1] == 0 and x[2] == 0)


def c_part(H: Subgroup) -> Subgroup:
    """Teichmuller lift of phi(H) meet C_s(p), as a subgroup of C_s(p^2)."""
    _require_k2(H)
    p, m = H.modulus.p, H.modulus.m
    codes = set()
    for a, b, c, d in image_mod_p(H).tuples():
        if b == 0 and c == 0:
            codes.add(encode_t((teichmuller_value(a, p), 0, 0, teichmuller_value(d, p)), m))
    return Subgroup.from_codes(H.modulus, codes)


def vector_dim(K: Subgroup) -> int:
    """log_p |K| for K inside ker(phi)."""
    if not K.is_in_kernel():
        raise NotInKernel("vector_dim needs a subgroup of ker(phi)")
    p, n, dim = K.modulus.p, K.order, 0
    while n > 1:
        n //= p
        dim += 1
    return dim


def is_determinant_one(H: Subgroup) -> bool:
    m = H.modulus.m
    return all(det_t(x, m) == 1 for x in H.tuples())
