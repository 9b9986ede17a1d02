"""Element-level suites: completeness of the class invariant, the similarity
table mod p, and the closed-form power, conjugation and membership rules."""
from __future__ import annotations

import logging
from collections import defaultdict

import numpy as np

from gassmann import formulas
from gassmann.conjcls import invariant_t, rep_from_trace_det, similarity_rep, table1
from gassmann.families import kern, t_matrix
from gassmann.mat2 import Mat2, ambient, embed, matrix_space, pow_
from gassmann.residue import Modulus, teichmuller_value
from gassmann.subgrp import closure
from gassmann.utils import get_settings
from gassmann.verify.report import Budget, verdict

logger = logging.getLogger(__name__)


def conjugacy_orbits(modulus: Modulus, limit=None) -> tuple[np.ndarray, np.ndarray]:
    """(codes, orbit id per code) for GL_2(Z/p^kZ), orbits found by direct conjugation."""
    arrays = ambient(modulus, limit)
    codes = arrays.codes
    orbit = np.full(len(codes), -1, dtype=np.int64)
    for i in range(len(codes)):
        if orbit[i] >= 0:
            continue
        images = arrays.conjugates_of((int(arrays.a[i]), int(arrays.b[i]), int(arrays.c[i]), int(arrays.d[i])))
        orbit[np.searchsorted(codes, images)] = i
    return codes, orbit


def verify_class_invariants(p: int, k: int = 2, budget: Budget | None = None, **_):
    """Equal invariants exactly when conjugate, over every element of GL_2(Z/p^kZ)."""
    budget = budget or Budget()
    modulus = Modulus(p, k)
    arrays = ambient(modulus, get_settings().full_scan_limit)
    codes, orbit = conjugacy_orbits(modulus)
    budget.check({"elements": len(codes)})

    by_orbit, by_invariant = defaultdict(set), defaultdict(set)
    for i, x in enumerate(zip(*(v.tolist() for v in arrays.entries))):
        inv = invariant_t(x, p, k)
        by_orbit[int(orbit[i])].add(inv)
        by_invariant[inv].add(int(orbit[i]))

    failures = []
    for o, invs in by_orbit.items():
        if len(invs) > 1:
            failures.append({"check": "invariant varies on a class", "element": str(arrays.element(o)),
                             "invariants": sorted(str(v) for v in invs)})
    for inv, orbits in by_invariant.items():
        if len(orbits) > 1:
            a, b = sorted(orbits)[:2]
            failures.append({"check": "invariant shared by two classes", "invariant": inv.to_json(),
                             "elements": [str(arrays.element(a)), str(arrays.element(b))]})
    stats = {"k": k, "elements": len(codes), "classes": len(by_orbit), "invariants": len(by_invariant)}
    return verdict("class-invariants", p, failures, stats)


def verify_similarity_reps(p: int, budget: Budget | None = None, **_):
    """Every matrix mod p is similar to exactly one table representative, and
    nonscalar classes are fixed by (trace, det)."""
    budget = budget or Budget()
    modulus = Modulus(p, 1)
    group = ambient(modulus)
    a, b, c, d = matrix_space(p)
    n = p**4
    orbit = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        if orbit[i] < 0:
            orbit[group.conjugates_of((int(a[i]), int(b[i]), int(c[i]), int(d[i])))] = i

    failures = []
    reps_in = defaultdict(list)
    for rep in table1(p):
        reps_in[int(orbit[rep.matrix(p).encode()])].append(rep)
    for o in sorted(set(orbit.tolist())):
        found = reps_in.get(o, [])
        if len(found) != 1:
            failures.append({"check": "representatives per class", "element": str(Mat2.decode(o, modulus)),
                             "found": [str(r) for r in found]})

    by_trace_det = defaultdict(set)
    for i in range(n):
        A = Mat2(int(a[i]), int(b[i]), int(c[i]), int(d[i]), modulus)
        rep = similarity_rep(A)
        expected = reps_in.get(int(orbit[i]), [None])[0]
        if rep != expected:
            failures.append({"check": "similarity_rep", "matrix": str(A), "got": str(rep), "class": str(expected)})
        if not A.is_scalar():
            by_trace_det[(int(A.trace()), int(A.det()))].add(int(orbit[i]))
    budget.check({"matrices": n})

    for (tr, det), orbits in sorted(by_trace_det.items()):
        if len(orbits) != 1 or rep_from_trace_det(tr, det, p) != reps_in.get(min(orbits), [None])[0]:
            failures.append({"check": "trace and det", "trace": tr, "det": det, "classes": len(orbits)})
    stats = {"matrices": n, "classes": len(set(orbit.tolist())), "table_rows": len(table1(p))}
    return verdict("similarity-reps", p, failures, stats)


def _check(failures, name, got, expected, **inputs):
    if got != expected:
        failures.append({"formula": name, "got": str(got), "expected": str(expected), **inputs})


def _random_unit(rng, p):
    return int(rng.integers(1, p))


def verify_power_formulas(p: int, samples: int = 1000, seed: int = 0, budget: Budget | None = None, **_):
    """Closed forms for powers, conjugates and products against direct multiplication,
    then the membership rules they imply on generated subgroups."""
    budget = budget or Budget()
    rng = np.random.default_rng(seed)
    modulus = Modulus(p, 2)
    m = modulus.m
    failures = []

    for s in range(samples):
        A = tuple(int(v) for v in rng.integers(0, p, 4))
        w = _random_unit(rng, p)
        z = _random_unit(rng, p)
        scalar = formulas.scalar_element(w, A, p)
        diagonal = formulas.diagonal_element(w, z, A, p)
        unipotent = formulas.unipotent_element(A, p)
        for n in range(p * p):
            _check(failures, "scalar_power", formulas.scalar_power(w, A, n, p), pow_(scalar, n), w=w, A=A, n=n)
            _check(failures, "unipotent_power", formulas.unipotent_power(A, n, p), pow_(unipotent, n), A=A, n=n)
            if w != z:
                _check(failures, "diagonal_power", formulas.diagonal_power(w, z, A, n, p), pow_(diagonal, n),
                       w=w, z=z, A=A, n=n)

        first, second = formulas.scalar_cycle(w, A, p)
        _check(failures, "scalar_cycle", (first, second), (pow_(scalar, p - 1), pow_(scalar, p)), w=w, A=A)
        if w != z:
            first, second = formulas.diagonal_cycle(w, z, A, p)
            _check(failures, "diagonal_cycle", (first, second), (pow_(diagonal, p - 1), pow_(diagonal, p)),
                   w=w, z=z, A=A)

        M = tuple(int(v) for v in rng.integers(0, m, 4))
        g = Mat2(*M, modulus)
        u, v = (int(x) for x in rng.integers(1, m, 2))
        if u % p and v % p:
            _check(failures, "diagonal_conjugate", formulas.diagonal_conjugate(u, v, M, modulus),
                   g.conjugate_by(Mat2.diag(u, v, modulus)), M=M, w=u, z=v)
            _check(failures, "antidiagonal_conjugate", formulas.antidiagonal_conjugate(u, v, M, modulus),
                   g.conjugate_by(Mat2(0, u, v, 0, modulus)), M=M, x=u, y=v)
        _check(failures, "t_conjugate", formulas.t_conjugate(M, modulus), g.conjugate_by(t_matrix(modulus)), M=M)
        B = tuple(int(x) for x in rng.integers(0, p, 4))
        _check(failures, "t_product", formulas.t_product(A, B, p), unipotent * embed(Mat2(*B, modulus.reduced())),
               A=A, B=B)
        if s % 100 == 0:
            budget.check({"samples": s, "failures": len(failures)})

    checked = min(samples, 50)
    for s in range(checked):
        failures.extend(_membership_failures(rng, p))
        budget.check({"samples": samples, "membership_samples": s})

    stats = {"samples": samples, "exponents": p * p, "membership_samples": checked, "seed": seed}
    return verdict("power-formulas", p, failures, stats)


def _membership_failures(rng, p: int) -> list:
    modulus = Modulus(p, 2)
    out = []
    A = tuple(int(v) for v in rng.integers(0, p, 4))
    a, b, c, d = A
    w, z = _random_unit(rng, p), _random_unit(rng, p)

    H = closure([formulas.scalar_element(w, A, p)], modulus)
    for x in (Mat2.scalar(teichmuller_value(w, p), modulus), kern(p, *A)):
        if x not in H:
            out.append({"rule": "scalar membership", "w": w, "A": A, "missing": str(x)})

    if w != z:
        H = closure([formulas.diagonal_element(w, z, A, p)], modulus)
        for x in formulas.diagonal_cycle(w, z, A, p):
            if x not in H:
                out.append({"rule": "diagonal membership", "w": w, "z": z, "A": A, "missing": str(x)})

    M = tuple(int(v) for v in rng.integers(0, p, 4))
    tau = formulas.unipotent_element(M, p)
    H = closure([tau, kern(p, *A)], modulus)
    upper, split = kern(p, 0, 1, 0, 0), kern(p, 1, 0, 0, p - 1)
    if a != d and upper not in H:
        out.append({"rule": "unipotent membership", "M": M, "k": A, "missing": str(upper)})
    if c != 0 and (upper not in H or split not in H):
        out.append({"rule": "unipotent membership", "M": M, "k": A, "missing": f"{upper} or {split}"})

    if p > 3 and upper not in closure([tau], modulus):
        out.append({"rule": "unipotent p-th power", "M": M, "missing": str(upper)})

    if p > 3 and M[0] != M[3] and (w - z) % p and (w + z) % p:
        h = Mat2.diag(teichmuller_value(w, p), teichmuller_value(z, p), modulus)
        H = closure([tau, h], modulus)
        hits = [x for x in H.tuples() if x[1] == 0 and x[2] == 0 and x[0] % p == 1 and x[3] % p == 1
                and (x[0] - x[3]) % (p * p)]
        if not hits:
            out.append({"rule": "borel product", "M": M, "w": w, "z": z})
    return out
