"""Subgroups of ker(phi): exhaustive enumeration as subspaces of Mat_2(Z/pZ),
their GL_2(Z/pZ)-orbits, and the classification and Gassmann-oracle checks."""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from gassmann.families import FamilyId, kern, kernel_catalog, named
from gassmann.errors import BudgetExceeded, NotInKernel
from gassmann.mat2 import ambient, conjugate_codes, decode_t, encode_array, lifted_ambient
from gassmann.residue import Modulus, epsilon
from gassmann.subgrp import Subgroup, generating_set
from gassmann.utils import get_settings
from gassmann.verify.report import Budget, subgroup_witness, verdict
from gassmann.verify.sweep import UnionFind

logger = logging.getLogger(__name__)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _echelon_bases(p: int, r: int):
    """Reduced row echelon bases of every r-dimensional subspace of (Z/pZ)^4."""
    for pivots in combinations(range(4), r):
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, 4) if j not in pivots]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * 4 for _ in range(r)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield rows


def _span_codes(rows, p: int) -> np.ndarray:
    r = len(rows)
    coeffs = np.array(list(product(range(p), repeat=r)), dtype=np.int64).reshape(p**r, r)
    basis = np.array(rows, dtype=np.int64).reshape(r, 4)
    vecs = (coeffs @ basis) % p
    m = p * p
    return encode_array(1 + vecs[:, 0] * p, vecs[:, 1] * p, vecs[:, 2] * p, 1 + vecs[:, 3] * p, m)


@lru_cache(maxsize=4)
def enumerate_kernel_subgroups(p: int) -> tuple[Subgroup, ...]:
    """Every subgroup of ker(phi), one per subspace of Mat_2(Z/pZ), by dimension."""
    modulus = Modulus(p, 2)
    out = []
    for r in range(5):
        for rows in _echelon_bases(p, r):
            gens = tuple(kern(p, *row) for row in rows)
            out.append(Subgroup.from_codes(modulus, _span_codes(rows, p).tolist(), gens))
    logger.info("enumerated %d kernel subgroups at p=%d", len(out), p)
    return tuple(out)


@dataclass(frozen=True)
class KernelOrbit:
    index: int
    members: tuple
    representative: Subgroup
    families: tuple

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def dim(self) -> int:
        n, p, d = self.representative.order, self.representative.modulus.p, 0
        while n > 1:
            n //= p
            d += 1
        return d

    @property
    def generators(self):
        return self.representative.generators or tuple(generating_set(self.representative))


def _conjugators(p: int) -> list:
    """Lifts to Z/p^2Z of a generating set of GL_2(Z/pZ)."""
    return [g.lift().t for g in generating_set(named("GL2", p, 1))]


@lru_cache(maxsize=4)
def kernel_orbits(p: int) -> tuple[KernelOrbit, ...]:
    subs = enumerate_kernel_subgroups(p)
    modulus = subs[0].modulus
    index = {H.elements: i for i, H in enumerate(subs)}
    uf = UnionFind(len(subs))
    gens = _conjugators(p)
    for i, H in enumerate(subs):
        for x in gens:
            image = frozenset(conjugate_codes(x, H.codes, modulus).tolist())
            uf.union(i, index[image])

    found = defaultdict(list)
    for fid, H in kernel_catalog(p):
        found[uf.find(index[H.elements])].append(fid)

    orbits = []
    for n, members in enumerate(uf.groups()):
        rep = subs[members[0]]
        orbits.append(KernelOrbit(n, tuple(members), rep, tuple(sorted(found.get(uf.find(members[0]), [])))))
    return tuple(orbits)


@lru_cache(maxsize=4)
def _orbit_index(p: int) -> dict:
    subs = enumerate_kernel_subgroups(p)
    return {subs[i].elements: orbit.index for orbit in kernel_orbits(p) for i in orbit.members}


def orbit_of(H: Subgroup) -> int:
    """Index of the kernel orbit containing H."""
    if not H.is_in_kernel():
        raise NotInKernel("orbit_of takes a subgroup of ker(phi)")
    return _orbit_index(H.modulus.p)[H.elements]


def _norm(f: FamilyId, p: int) -> int:
    return (f.param("a") ** 2 - epsilon(p) * f.param("b") ** 2) % p


def _allowed_merge(f: FamilyId, g: FamilyId, p: int) -> bool:
    """Listed subgroups that the classification already states are conjugate."""
    if f.name != g.name:
        return False
    if f.name == "ker01.4":
        d, e = f.param("d"), g.param("d")
        return d == e or (d * e) % p == 1
    if f.name == "ker2.h6":
        return _norm(f, p) == _norm(g, p)
    return False


def expected_kernel_pairs(p: int) -> set:
    """Unordered pairs of orbits the classification names as nontrivially locally conjugate."""
    pairs = set()
    by_family = {fid: o.index for o in kernel_orbits(p) for fid in o.families}
    h3 = {d: by_family[FamilyId("ker2.h3", (("d", d),))] for d in range(p - 1)}
    pairs.add(frozenset((by_family[FamilyId("ker2.h2")], h3[0])))
    for d in range(2, p - 1):
        pairs.add(frozenset((h3[d], h3[pow(d, -1, p)])))
    return pairs


def observed_kernel_pairs(p: int) -> set:
    groups = defaultdict(list)
    for orbit in kernel_orbits(p):
        rep = orbit.representative
        groups[(rep.order, rep.fingerprint)].append(orbit.index)
    return {frozenset(pair) for members in groups.values() for pair in combinations(members, 2)}


def verify_kernel_classification(p: int, budget: Budget | None = None, **_):
    budget = budget or Budget()
    subs = enumerate_kernel_subgroups(p)
    failures = []

    histogram = Counter(len(H.generators) for H in subs)
    for r in range(5):
        if histogram[r] != gaussian_binomial(4, r, p):
            failures.append({"check": "subspace count", "dim": r, "found": histogram[r],
                             "expected": gaussian_binomial(4, r, p)})
    budget.check({"subspaces": len(subs)})

    orbits = kernel_orbits(p)
    for orbit in orbits:
        if not orbit.families:
            failures.append({"check": "unlisted orbit", "orbit": orbit.index,
                             "subgroup": subgroup_witness(orbit.representative)})
        for f, g in combinations(orbit.families, 2):
            if not _allowed_merge(f, g, p):
                failures.append({"check": "listed twice", "orbit": orbit.index, "families": [str(f), str(g)]})

    where = {fid: o.index for o in orbits for fid in o.families}
    for f, g in combinations(sorted(where), 2):
        if _allowed_merge(f, g, p) and where[f] != where[g]:
            failures.append({"check": "stated conjugacy missing", "families": [str(f), str(g)]})
    budget.check({"subspaces": len(subs), "orbits": len(orbits)})

    expected = expected_kernel_pairs(p)
    observed = observed_kernel_pairs(p)

    def label(i):
        return [str(f) for f in orbits[i].families]

    for pair in sorted(observed ^ expected, key=sorted):
        a, b = sorted(pair)
        failures.append({
            "check": "unexpected local conjugacy" if pair in observed else "missing local conjugacy",
            "orbits": [label(a), label(b)],
        })

    stats = {
        "subspaces": len(subs),
        "by_dim": [histogram[r] for r in range(5)],
        "orbits": len(orbits),
        "listed_subgroups": sum(len(o.families) for o in orbits),
        "nontrivial_pairs": [[label(a), label(b)] for a, b in (sorted(x) for x in sorted(observed, key=sorted))],
    }
    return verdict("kernel-classification", p, failures, stats)


def raw_kernel_classes(p: int) -> dict:
    """Kernel element code -> least code in its conjugation orbit, by brute force."""
    modulus = Modulus(p, 2)
    limit = get_settings().full_scan_limit
    try:
        arrays = ambient(modulus, limit)
    except BudgetExceeded:
        arrays = lifted_ambient(p)
    codes = _span_codes([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], p).tolist()
    return {code: int(arrays.conjugates_of(decode_t(code, modulus.m)).min()) for code in codes}


def verify_gassmann_oracle(p: int, budget: Budget | None = None, **_):
    """Fingerprint equality against per-orbit counts taken from raw conjugation orbits."""
    budget = budget or Budget()
    subs = enumerate_kernel_subgroups(p)
    raw = raw_kernel_classes(p)
    by_fp, by_raw = defaultdict(set), defaultdict(set)
    for i, H in enumerate(subs):
        by_fp[H.fingerprint].add(i)
        by_raw[tuple(sorted(Counter(raw[c] for c in H.elements).items()))].add(i)
        if i % 64 == 0:
            budget.check({"checked": i})
    fp_blocks = {frozenset(s) for s in by_fp.values()}
    raw_blocks = {frozenset(s) for s in by_raw.values()}
    failures = []
    for block in sorted(fp_blocks ^ raw_blocks, key=lambda b: min(b)):
        i = min(block)
        failures.append({
            "subgroup": subgroup_witness(subs[i]),
            "fingerprint_block": len(next(b for b in fp_blocks if i in b)),
            "orbit_count_block": len(next(b for b in raw_blocks if i in b)),
        })
    n = len(subs)
    stats = {"subgroups": n, "pairs": n * (n - 1) // 2, "fingerprint_classes": len(fp_blocks)}
    return verdict("gassmann-oracle", p, failures, stats)
