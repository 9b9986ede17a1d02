"""Local conjugacy passes to the kernel part and to the image mod p."""
from __future__ import annotations

from gassmann.subgrp import Subgroup, are_locally_conjugate, image_mod_p, kernel_part
from gassmann.verify.report import VerificationReport, subgroup_witness, verdict


def necessity_failures(H1: Subgroup, H2: Subgroup) -> list:
    """Ways a locally conjugate pair breaks the necessary conditions (empty when it does not)."""
    out = []
    for part, extract in (("kernel part", kernel_part), ("image mod p", image_mod_p)):
        if not are_locally_conjugate(extract(H1), extract(H2)):
            out.append({"check": part, "pair": [subgroup_witness(H1), subgroup_witness(H2)]})
    return out


def verify_necessity(pairs, p: int | None = None, **_) -> VerificationReport:
    """Check the locally conjugate pairs among ``pairs``; skipped when there are none."""
    pairs = list(pairs)
    p = p if p is not None else (pairs[0][0].modulus.p if pairs else 0)
    premised = [(H1, H2) for H1, H2 in pairs if are_locally_conjugate(H1, H2)]
    stats = {"pairs": len(pairs), "locally_conjugate": len(premised)}
    if not premised:
        return VerificationReport(claim="necessity", p=p, status="skipped",
                                  stats={**stats, "reason": "no locally conjugate pair"})
    failures = [f for H1, H2 in premised for f in necessity_failures(H1, H2)]
    return verdict("necessity", p, failures, stats)
