"""Tabular exports (similarity representatives, conjugacy classes, fingerprints,
kernel orbits) as pandas DataFrames."""
from collections import Counter

import pandas as pd

from gassmann.conjcls import invariant_t, table1
from gassmann.mat2 import ambient
from gassmann.residue import Modulus
from gassmann.utils import get_settings
from gassmann.verify.kernel import kernel_orbits


def similarity_table(p):
    rows = []
    for rep in table1(p):
        A = rep.matrix(p)
        rows.append({
            "kind": rep.kind,
            **rep.to_json(),
            "matrix": str(A),
            "trace": int(A.trace()),
            "det": int(A.det()),
        })
    df = pd.DataFrame.from_records(rows)
    cols = ["kind", "w", "z", "y", "matrix", "trace", "det"]
    return df.reindex(columns=cols).astype({"z": "Int64", "y": "Int64"})


def class_table(p, k=2):
    """Conjugacy classes of GL_2(Z/p^kZ) with their sizes and a representative."""
    modulus = Modulus(p, k)
    arrays = ambient(modulus, get_settings().full_scan_limit)
    sizes, reps = Counter(), {}
    for x in zip(*(v.tolist() for v in arrays.entries)):
        inv = invariant_t(x, p, k)
        sizes[inv] += 1
        reps.setdefault(inv, x)

    rows = []
    for inv in sorted(sizes):
        a, b, c, d = reps[inv]
        rows.append({
            "l": inv.l,
            "d": inv.d,
            "tr": inv.tr,
            "det": inv.det,
            "size": sizes[inv],
            "representative": f"[[{a},{b}],[{c},{d}]]",
        })
    return pd.DataFrame.from_records(rows).astype({"tr": "Int64", "det": "Int64"})


def fingerprint_table(H):
    rows = [{**inv.to_json(), "count": n} for inv, n in H.fingerprint.counts]
    df = pd.DataFrame.from_records(rows).reindex(columns=["l", "d", "tr", "det", "count"])
    return df.astype({"tr": "Int64", "det": "Int64"})


def kernel_orbit_table(p):
    """One row per GL_2(Z/pZ)-orbit of subgroups of ker(phi)."""
    rows = []
    for orbit in kernel_orbits(p):
        rows.append({
            "orbit": orbit.index,
            "dim": orbit.dim,
            "order": orbit.representative.order,
            "size": orbit.size,
            "families": ";".join(str(f) for f in orbit.families),
            "representative": ";".join(str(g) for g in orbit.generators),
            "classes": len(orbit.representative.fingerprint.counts),
        })
    return pd.DataFrame.from_records(rows)
