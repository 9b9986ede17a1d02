"""Verification reports and time budgets."""
from __future__ import annotations

import logging
import time
from typing import Any, Callable, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from gassmann.errors import BadParameter, BudgetExceeded
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus
from gassmann.subgrp import Subgroup, closure, generating_set
from gassmann.utils import get_tracer

logger = logging.getLogger(__name__)

Status = Literal["verified", "refuted", "skipped"]


class VerificationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    claim_id: str = Field(alias="claim")
    p: int
    status: Status
    witness: Optional[Any] = None
    stats: dict = Field(default_factory=dict)

    @model_validator(mode="after")
    def _refutation_has_witness(self):
        if self.status == "refuted" and self.witness is None:
            raise ValueError(f"{self.claim_id}: a refuted report needs a witness")
        return self

    @property
    def ok(self) -> bool:
        return self.status != "refuted"

    def to_json(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


class Budget:
    """Wall-clock allowance for one suite."""

    def __init__(self, seconds: Optional[float] = None):
        self.seconds = seconds
        self.started = time.monotonic()

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def expired(self) -> bool:
        return self.seconds is not None and self.elapsed > self.seconds

    def check(self, stats: Optional[dict] = None):
        if self.expired():
            raise BudgetExceeded(f"budget of {self.seconds}s exhausted", stats)


def subgroup_witness(H: Subgroup) -> dict:
    """Generators of H as element codes, replayable with ``replay_witness``."""
    gens = list(H.generators) or generating_set(H)
    return {
        "p": H.modulus.p,
        "k": H.modulus.k,
        "generators": [g.encode() for g in gens],
        "matrices": [str(g) for g in gens],
    }


def replay_witness(witness: dict) -> Subgroup:
    try:
        modulus = Modulus(witness["p"], witness["k"])
        gens = [Mat2.decode(int(code), modulus) for code in witness["generators"]]
    except (KeyError, TypeError) as exc:
        raise BadParameter(f"not a subgroup witness: {witness!r}") from exc
    return closure(gens, modulus)


def verdict(claim: str, p: int, failures: list, stats: dict) -> VerificationReport:
    """verified when ``failures`` is empty, otherwise refuted with the first failure as witness."""
    stats = {**stats, "failures": len(failures)}
    if failures:
        return VerificationReport(claim=claim, p=p, status="refuted", witness=failures[0], stats=stats)
    return VerificationReport(claim=claim, p=p, status="verified", stats=stats)


def run_suite(claim: str, p: int, runner: Callable[..., VerificationReport], budget: Budget, **kwargs):
    """Run one suite inside a span; an exhausted budget becomes a skipped report."""
    tracer = get_tracer()
    with tracer.start_as_current_span(claim) as span:
        span.set_attribute("p", p)
        logger.info("running %s at p=%d", claim, p)
        try:
            report = runner(p=p, budget=budget, **kwargs)
        except BudgetExceeded as exc:
            stats = {**exc.stats, "reason": "budget", "message": str(exc)}
            report = VerificationReport(claim=claim, p=p, status="skipped", stats=stats)
        report.stats.setdefault("seconds", round(budget.elapsed, 3))
        span.set_attribute("status", report.status)
        for key, value in report.stats.items():
            if isinstance(value, (int, float, str, bool)):
                span.set_attribute(f"stats.{key}", value)
        logger.info("%s at p=%d: %s", claim, p, report.status)
        return report
