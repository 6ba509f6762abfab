"""Exact verification of the identity registry."""
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from random import Random
from typing import Any, Dict, List, Optional, Sequence

from src.coeffring import DomainMismatch, Scalar
from src.identities import CaseContext, Family, IdentityCase, plucker_sum, registry

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

MANIFEST_PATH = Path(__file__).parent / "resources" / "identity_manifest.json"

SUITES = {
    "all": (Family.GAMMA_FORMULA, Family.FACTORIZATION, Family.SYZYGY, Family.PLUCKER),
    "gamma": (Family.GAMMA_FORMULA, Family.FACTORIZATION),
    "syzygy": (Family.SYZYGY,),
    "plucker": (Family.PLUCKER,),
}


class UnknownCase(KeyError):
    """Raised for an id that is not in the registry."""


@dataclass
class CaseResult:
    case_id: str
    family: str
    passed: bool
    residual: str
    printed: Optional[str] = None
    printed_matches: bool = True
    random_failures: int = 0
    unsigned: Optional[str] = None
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "id": self.case_id,
            "family": self.family,
            "status": "pass" if self.passed else "fail",
            "residual": self.residual,
            "printed": self.printed,
            "printedMatches": self.printed_matches,
            "randomFailures": self.random_failures,
        }
        if self.unsigned is not None:
            data["unsignedSum"] = self.unsigned
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class SuiteReport:
    suite: str
    results: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "total": len(self.results),
            "failed": sum(1 for result in self.results if not result.passed),
            "cases": [result.to_dict() for result in self.results],
        }


def get_case(case_id: str) -> IdentityCase:
    cases = registry()
    if case_id not in cases:
        raise UnknownCase(f"unknown case id: {case_id}")
    return cases[case_id]


def load_manifest(path: Path = MANIFEST_PATH) -> Dict[str, str]:
    """Display label -> case id."""
    with open(path, "r") as f:
        raw = json.load(f)
    return raw["displays"]


def missing_manifest_cases(path: Path = MANIFEST_PATH) -> List[str]:
    cases = registry()
    return sorted(label for label, case_id in load_manifest(path).items() if case_id not in cases)


def _residual(case: IdentityCase, ctx: CaseContext):
    return case.lhs(ctx) - case.rhs(ctx)


def cross_check(case: IdentityCase, rng: Random, points: int = 100, p: int = 7) -> int:
    """Number of random GF(p) points where the identity fails."""
    failures = 0
    for _ in range(points):
        ctx = CaseContext.random_point(case.params, case.constraints, rng, p)
        if not ctx.domain.is_zero(_residual(case, ctx)):
            failures += 1
    return failures


def _run(case: IdentityCase, rng: Optional[Random] = None, points: int = 0) -> CaseResult:
    ctx = CaseContext.symbolic(case.params, case.constraints)
    residual = _residual(case, ctx)
    passed = ctx.domain.is_zero(residual)
    random_failures = cross_check(case, rng, points) if rng is not None and points else 0
    unsigned = None
    if case.plucker is not None:
        unsigned = ctx.domain.format(_unsigned(case, ctx))
    result = CaseResult(
        case_id=case.case_id,
        family=case.family.value,
        passed=passed and random_failures == 0,
        residual=ctx.domain.format(residual),
        printed=case.printed,
        printed_matches=case.printed_matches,
        random_failures=random_failures,
        unsigned=unsigned,
        note=case.note,
    )
    if result.passed:
        logger.info(f"{case.case_id}: pass")
    else:
        logger.info(f"{case.case_id}: FAIL, residual {result.residual}")
    return result


def _unsigned(case: IdentityCase, ctx: CaseContext):
    rows, a, b = case.plucker
    return plucker_sum(ctx.domain, ctx.matrix(rows), a, b, signed=False)


def verify_gamma_identity(case_id: str, rng: Optional[Random] = None, points: int = 0) -> CaseResult:
    case = get_case(case_id)
    if case.family not in SUITES["gamma"]:
        raise UnknownCase(f"{case_id} is not a Gamma formula")
    return _run(case, rng, points)


def verify_syzygy(case_id: str, rng: Optional[Random] = None, points: int = 0) -> CaseResult:
    case = get_case(case_id)
    if case.family not in (Family.SYZYGY, Family.PLUCKER):
        raise UnknownCase(f"{case_id} is not a syzygy")
    return _run(case, rng, points)


def plucker_check(Y: Sequence[Sequence[Scalar]], a: Sequence[int], b: Sequence[int],
                  signed: bool = True) -> Scalar:
    """Quadratic relation among maximal minors of Y; zero when it holds.

    Columns are 1-based. The signed form is the classical alternating sum.
    """
    if not Y or not Y[0]:
        raise ValueError("Y is required")
    domain = Y[0][0].domain
    for row in Y:
        for entry in row:
            if entry.domain != domain:
                raise DomainMismatch("entries of Y live in different domains")
    rows = [[entry.value for entry in row] for row in Y]
    return Scalar(domain, plucker_sum(domain, rows, a, b, signed))


def _run_by_id(args):
    case_id, seed, points = args
    return _run(get_case(case_id), Random(f"{seed}:{case_id}") if points else None, points)


def run_suite(suite: str = "all", case_id: Optional[str] = None, seed: int = 20240229,
              points: int = 0, jobs: int = 1) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {', '.join(SUITES)}")
    if case_id is not None:
        ids = [get_case(case_id).case_id]
    else:
        ids = sorted(case.case_id for case in registry().values() if case.family in SUITES[suite])
    work = [(i, seed, points) for i in ids]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_by_id, work))
    else:
        results = [_run_by_id(item) for item in work]
    report = SuiteReport(suite, results)
    logger.info(f"verify {suite}: {len(results) - report.to_dict()['failed']}/{len(results)} passed")
    return report
