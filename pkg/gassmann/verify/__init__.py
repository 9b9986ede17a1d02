"""Verification suites, one per claim, behind a single registry."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from gassmann.errors import BadParameter
from gassmann.families import cartan_pair, diagonal_swap, kernel_family
from gassmann.utils import get_settings
from gassmann.verify.borel import count_borel_pairs_p3, verify_borel_forms
from gassmann.verify.cartan import cartan_diagonals, verify_cartan_pairs, verify_cns_rigidity
from gassmann.verify.census import verify_enumerator_crosscheck
from gassmann.verify.classes import verify_class_invariants, verify_power_formulas, verify_similarity_reps
from gassmann.verify.kernel import verify_gassmann_oracle, verify_kernel_classification
from gassmann.verify.linear import verify_glp_pairs
from gassmann.verify.necessity import verify_necessity
from gassmann.verify.report import Budget, VerificationReport, run_suite
from gassmann.verify.sl2 import verify_exceptional_kernels, verify_sl2
from gassmann.verify.splitting import verify_schur_zassenhaus


def verify_necessity_corpus(p: int, budget: Optional[Budget] = None, **_) -> VerificationReport:
    """Necessary conditions over the Cartan pairs and the kernel pair H2, H3(0)."""
    pairs = [cartan_pair(D) for D in cartan_diagonals(p) if diagonal_swap(D) != D]
    pairs.append((kernel_family("ker2.h2", p), kernel_family("ker2.h3", p, d=0)))
    return verify_necessity(pairs, p)


@dataclass(frozen=True)
class Claim:
    id: str
    runner: Callable[..., VerificationReport]
    statement: str
    primes: tuple
    slow_primes: tuple = ()
    seeded: bool = False


CLAIMS = {
    c.id: c
    for c in [
        Claim("class-invariants", verify_class_invariants,
              "The class invariant separates the conjugacy classes of GL_2(Z/p^2Z).", (3,), (5,)),
        Claim("similarity-reps", verify_similarity_reps,
              "Every matrix mod p is similar to exactly one table representative.", (3, 5, 7)),
        Claim("power-formulas", verify_power_formulas,
              "Closed forms for powers, conjugates and products agree with multiplication.", (3, 5, 7),
              seeded=True),
        Claim("kernel-classification", verify_kernel_classification,
              "Subgroups of ker(phi) are exactly the listed families, with the stated local conjugacies.",
              (3, 5), (7,)),
        Claim("gassmann-oracle", verify_gassmann_oracle,
              "Fingerprints agree with per-class counts from raw conjugation orbits.", (3,), (5,)),
        Claim("enumerator-crosscheck", verify_enumerator_crosscheck,
              "Extensions of small images match a brute-force subgroup lattice.", (), (3,)),
        Claim("glp-pairs", verify_glp_pairs,
              "Pairs in GL_2(Z/pZ) are exactly <D, t>, <D', t> with D != D'.", (3,), (5,)),
        Claim("cartan-pairs", verify_cartan_pairs,
              "Pairs with image in C_s(p) are exactly <D, I+E12 p>, <D', I+E12 p> with D != D'.", (), (3, 5),
              seeded=True),
        Claim("cns-rigidity", verify_cns_rigidity,
              "No nontrivial pairs have nonscalar image in C_ns(p).", (), (3,)),
        Claim("borel-40", count_borel_pairs_p3,
              "There are 40 nontrivially locally conjugate pairs in GL_2(Z/9Z),"
              " split by Borel or Cartan image.", (), (3,)),
        Claim("borel-forms", verify_borel_forms,
              "The explicit Borel pairs for p > 3, recorded by combination.", (), (5,), seeded=True),
        Claim("sl2", verify_sl2,
              "Lifts of SL_2(Z/pZ): six classes at p = 3, SL_2(Z/p^2Z) or the full preimage above.", (3,), (5,),
              seeded=True),
        Claim("exceptional-kernels", verify_exceptional_kernels,
              "A_4 and S_4 images at p = 5 allow only trivial, scalar, T or full kernel parts.", (), (5,),
              seeded=True),
        Claim("schur-zassenhaus", verify_schur_zassenhaus,
              "Same kernel part and same image of order prime to p imply conjugate.", (), (3,), seeded=True),
        Claim("necessity", verify_necessity_corpus,
              "Locally conjugate subgroups have locally conjugate kernel parts and images.", (3,)),
    ]
}


def get_claim(claim_id: str) -> Claim:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise BadParameter(f"unknown claim {claim_id!r}; see --list") from None


def run_claim(claim_id: str, p: int, seconds: Optional[float] = None, **kwargs) -> VerificationReport:
    """Run one claim at one prime under a fresh budget."""
    claim = get_claim(claim_id)
    settings = get_settings()
    if claim.seeded:
        kwargs.setdefault("seed", settings.seed)
    budget = Budget(seconds if seconds is not None else settings.budget_seconds)
    return run_suite(claim.id, p, claim.runner, budget, **kwargs)


def run_all(include_slow: bool = False, seconds: Optional[float] = None) -> list[VerificationReport]:
    reports = []
    for claim in CLAIMS.values():
        for p in claim.primes + (claim.slow_primes if include_slow else ()):
            reports.append(run_claim(claim.id, p, seconds))
    return reports


__all__ = ["CLAIMS", "Claim", "get_claim", "run_all", "run_claim", "VerificationReport"]
