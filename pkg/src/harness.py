"""Exhaustive finite-field census and GL orbits of cubic inverse systems."""
import csv
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from src.apolarity import InverseSystem, embedding_dimension, wlp_witness
from src.batched import classify_batch, decode, encode, orbit_codes
from src.coeffring import DomainKind, DomainSpec
from src.config import HarnessConfig
from src.gamma import gamma_is_zero
from src.polyspace import DividedElem, SymElem, monomials

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

REFERENCE_EXCEPTIONS = {
    3: "x*y*z",
    4: "x^(3) + y*z*w",
}

BinKey = Tuple[int, bool, bool]


class BudgetExceeded(ValueError):
    """Raised when a census or orbit would exceed the classification budget."""


def system_from_code(code: int, p: int, d: int) -> DividedElem:
    """The cubic whose coefficient on the m-th monomial is the m-th base-p digit of code."""
    domain = DomainSpec.prime_field(p)
    terms = {}
    for e in monomials(d, 3):
        code, digit = divmod(code, p)
        if digit:
            terms[e] = digit
    return DividedElem(domain, d, 3, terms)


def code_of(phi: DividedElem) -> int:
    if phi.domain.kind != DomainKind.PRIME_FIELD:
        raise ValueError("codes need a prime field domain")
    if phi.degree != 3:
        raise ValueError("phi must have degree 3")
    p = phi.domain.p
    code = 0
    for e in reversed(monomials(phi.d, 3)):
        code = code * p + phi.domain.to_int(phi.coeff(e))
    return code


def coefficients_of(phi: DividedElem) -> np.ndarray:
    return np.array([phi.domain.to_int(phi.coeff(e)) for e in monomials(phi.d, 3)], dtype=np.int64)


def reference_exception(p: int, d: int) -> DividedElem:
    if d not in REFERENCE_EXCEPTIONS:
        raise ValueError("d must be 3 or 4")
    return DividedElem.from_text(REFERENCE_EXCEPTIONS[d], DomainSpec.prime_field(p), d, 3)


@dataclass
class OrbitResult:
    size: int
    members: Optional[List[DividedElem]] = None
    codes: Optional[List[int]] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"size": self.size}
        if self.members is not None:
            data["members"] = [member.to_dict() for member in self.members]
        return data


def _check_group_budget(p: int, d: int, config: HarnessConfig):
    work = p ** (d * d)
    if work > config.classification_budget and not config.force:
        msg = f"GL_{d}(GF({p})) enumeration needs {work} matrices, over the budget of {config.classification_budget}"
        logger.info(msg)
        raise BudgetExceeded(msg)


def orbit(phi: DividedElem, config: Optional[HarnessConfig] = None, members: bool = False) -> OrbitResult:
    """Orbit of phi under every invertible change of basis over its prime field."""
    config = config or HarnessConfig()
    if phi.domain.kind != DomainKind.PRIME_FIELD:
        raise ValueError("orbits need a prime field domain")
    p, d = phi.domain.p, phi.d
    _check_group_budget(p, d, config)
    codes = orbit_codes(coefficients_of(phi), p, d, config.batch_size)
    logger.info(f"orbit of {phi} over GF({p}) has {len(codes)} elements")
    if not members:
        return OrbitResult(len(codes))
    listed = [int(code) for code in codes]
    return OrbitResult(len(codes), [system_from_code(code, p, d) for code in listed], listed)


@dataclass
class _Chunk:
    bins: Counter
    exceptional: List[int]
    discrepancies: List[int]
    discrepancy_count: int


def _census_chunk(args) -> _Chunk:
    p, d, start, stop, limit = args
    codes = np.arange(start, stop, dtype=np.int64)
    result = classify_batch(decode(codes, p, len(monomials(d, 3))), p, d)
    bins = Counter(zip(result.embedding_dim.tolist(), result.gamma_zero.tolist(), result.wlp_found.tolist()))
    full = result.embedding_dim == d
    disagree = full & (result.gamma_zero == result.wlp_found)
    return _Chunk(
        bins=bins,
        exceptional=codes[full & result.gamma_zero].tolist(),
        discrepancies=codes[disagree][:limit].tolist(),
        discrepancy_count=int(disagree.sum()),
    )


@dataclass
class CensusReport:
    """Aggregate classification of every nonzero cubic over GF(p).

    ``orbit_matches`` compares the full-embedding Gamma-zero bin with the orbit of
    the reference exception in characteristic two, and with the empty set otherwise.
    """
    p: int
    d: int
    total: int
    bins: Dict[BinKey, int] = field(default_factory=dict)
    exception_orbit_size: Optional[int] = None
    exception_bin_size: int = 0
    orbit_matches: Optional[bool] = None
    discrepancies: List[DividedElem] = field(default_factory=list)
    discrepancy_count: int = 0
    finding: str = ""

    def __post_init__(self):
        if sum(self.bins.values()) != self.total:
            raise ValueError(f"bins add up to {sum(self.bins.values())}, expected {self.total}")

    def count(self, embedding_dim: Optional[int] = None, gamma_zero: Optional[bool] = None,
              wlp: Optional[bool] = None) -> int:
        total = 0
        for (e, g, w), n in self.bins.items():
            if embedding_dim is not None and e != embedding_dim:
                continue
            if gamma_zero is not None and g != gamma_zero:
                continue
            if wlp is not None and w != wlp:
                continue
            total += n
        return total

    def bin_rows(self) -> List[Dict[str, Any]]:
        return [
            {"embdim": e, "gammaZero": g, "wlp": w, "count": n}
            for (e, g, w), n in sorted(self.bins.items())
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "d": self.d,
            "total": self.total,
            "bins": self.bin_rows(),
            "exceptionOrbitSize": self.exception_orbit_size,
            "exceptionBinSize": self.exception_bin_size,
            "orbitMatches": self.orbit_matches,
            "discrepancyCount": self.discrepancy_count,
            "discrepancies": [phi.to_dict() for phi in self.discrepancies],
            "finding": self.finding,
        }

    def write(self, path: Path) -> Tuple[Path, Path]:
        """Write the JSON report and a CSV of bins next to it."""
        path = Path(path)
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")
        csv_path = path.with_suffix(".csv")
        with open(csv_path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=["embdim", "gammaZero", "wlp", "count"])
            writer.writeheader()
            writer.writerows(self.bin_rows())
        logger.info(f"census report written to {path} and {csv_path}")
        return path, csv_path


def census_finding(p: int, d: int, nonzero: int, missing: int) -> str:
    """One sentence on whether the full-embedding systems with Gamma nonzero all have rational Lefschetz elements."""
    if missing == 0:
        return (
            f"Over GF({p}) every one of the {nonzero} systems in {d} variables with embedding dimension {d} "
            f"and Gamma not identically zero has a Lefschetz element defined over GF({p})."
        )
    return (
        f"Over GF({p}) {missing} of the {nonzero} systems in {d} variables with embedding dimension {d} "
        f"and Gamma not identically zero have no Lefschetz element defined over GF({p}); "
        f"their Lefschetz elements only appear after a field extension."
    )


def enumerate_systems(p: int, d: int, config: Optional[HarnessConfig] = None) -> CensusReport:
    """Classify every nonzero cubic inverse system in d variables over GF(p)."""
    config = config or HarnessConfig()
    if d < 2:
        raise ValueError("d must be at least 2")
    DomainSpec.prime_field(p)
    n = len(monomials(d, 3))
    total = p ** n - 1
    if total > config.classification_budget and not config.force:
        msg = f"census over GF({p}) in {d} variables needs {total} classifications, over the budget of " \
              f"{config.classification_budget}; pass force to run it anyway"
        logger.info(msg)
        raise BudgetExceeded(msg)
    work = [
        (p, d, start, min(start + config.batch_size, total + 1), config.max_discrepancies)
        for start in range(1, total + 1, config.batch_size)
    ]
    logger.info(f"census over GF({p}) in {d} variables: {total} systems in {len(work)} chunks")
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(_census_chunk, work))
    else:
        chunks = []
        for index, item in enumerate(work):
            chunks.append(_census_chunk(item))
            if (index + 1) % 64 == 0:
                logger.info(f"census chunk {index + 1}/{len(work)} done")

    bins: Counter = Counter()
    exceptional: List[int] = []
    discrepancies: List[int] = []
    discrepancy_count = 0
    for chunk in chunks:
        bins.update(chunk.bins)
        exceptional.extend(chunk.exceptional)
        discrepancies.extend(chunk.discrepancies)
        discrepancy_count += chunk.discrepancy_count
    discrepancies = sorted(discrepancies)[:config.max_discrepancies]

    orbit_size = None
    orbit_matches = None
    if d in REFERENCE_EXCEPTIONS:
        try:
            reference = orbit(reference_exception(p, d), replace(config, force=False), members=True)
        except BudgetExceeded:
            reference = None
        if reference is not None:
            orbit_size = reference.size
            expected = set(reference.codes) if p == 2 else set()
            orbit_matches = set(exceptional) == expected
    missing = sum(n for (e, g, w), n in bins.items() if e == d and not g and not w)
    nonzero = sum(n for (e, g, w), n in bins.items() if e == d and not g)
    report = CensusReport(
        p=p,
        d=d,
        total=total,
        bins=dict(sorted(bins.items())),
        exception_orbit_size=orbit_size,
        exception_bin_size=len(exceptional),
        orbit_matches=orbit_matches,
        discrepancies=[system_from_code(code, p, d) for code in discrepancies],
        discrepancy_count=discrepancy_count,
        finding=census_finding(p, d, nonzero, missing),
    )
    logger.info(f"census over GF({p}) in {d} variables: exception bin {len(exceptional)}, "
                f"orbit {orbit_size}, discrepancies {discrepancy_count}")
    return report


@dataclass
class ReplayResult:
    phi: DividedElem
    embedding_dim: int
    gamma_zero: bool
    wlp_witness: Optional[SymElem]

    @property
    def is_discrepancy(self) -> bool:
        """Full embedding dimension with Gamma vanishing exactly when a witness exists."""
        return self.embedding_dim == self.phi.d and self.gamma_zero == (self.wlp_witness is not None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "phi": self.phi.to_dict(),
            "embeddingDim": self.embedding_dim,
            "gammaZero": self.gamma_zero,
            "wlpWitness": str(self.wlp_witness) if self.wlp_witness is not None else None,
            "isDiscrepancy": self.is_discrepancy,
        }


def replay(record: Mapping[str, Any], config: Optional[HarnessConfig] = None) -> ReplayResult:
    """Recompute a serialized census system through the exact modules."""
    config = config or HarnessConfig()
    phi = DividedElem.from_dict(record)
    S = InverseSystem(phi)
    zero, _ = gamma_is_zero(phi)
    return ReplayResult(
        phi=phi,
        embedding_dim=embedding_dimension(S),
        gamma_zero=zero,
        wlp_witness=wlp_witness(S, config.q_search_height, config.q_search_budget),
    )


@dataclass
class AgreementReport:
    p: int
    d: int
    checked: int
    disagreements: List[DividedElem] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "d": self.d,
            "checked": self.checked,
            "disagreements": [phi.to_dict() for phi in self.disagreements],
        }


def sample_agreement(p: int, d: int, samples: int = 10000, config: Optional[HarnessConfig] = None) -> AgreementReport:
    """Compare Gamma vanishing with the absence of a rational witness on random full-embedding systems."""
    config = config or HarnessConfig()
    rng = np.random.default_rng(config.seed)
    n = len(monomials(d, 3))
    checked = 0
    disagreements: List[int] = []
    while checked < samples:
        size = min(config.batch_size, samples - checked)
        coefficients = rng.integers(0, p, size=(size, n), dtype=np.int64)
        result = classify_batch(coefficients, p, d)
        full = result.embedding_dim == d
        disagree = full & (result.gamma_zero == result.wlp_found)
        disagreements.extend(encode(coefficients[disagree], p).tolist())
        checked += int(full.sum())
    logger.info(f"agreement over GF({p}) in {d} variables: {len(disagreements)} disagreements in {checked}")
    return AgreementReport(p, d, checked, [system_from_code(code, p, d) for code in disagreements])
