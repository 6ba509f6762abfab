"""Main entry point for the CLI."""

import logging
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from src import __about__
from src.apolarity import InverseSystem, classify, hilbert_function, multiplication_rank, wlp_witness
from src.coeffring import DomainSpec
from src.config import HarnessConfig
from src.gamma import gamma_coordinate, gamma_on_power, gamma_vector, power_determinant
from src.harness import enumerate_systems, orbit
from src.normalform import proof_case, standard_form
from src.polyspace import DividedElem, Space, SymElem, infer_dimension
from src.verify import SUITES, run_suite

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

DEFAULT_DOMAIN = "GF(2)"


def _optional_int(value) -> Optional[int]:
    return None if value is None or value == "" else int(value)


def _flag(value) -> bool:
    if isinstance(value, str):
        return value.lower() in ("true", "1", "yes")
    return bool(value)


def load_phi(path: str, domain: Optional[str] = None, d: Optional[int] = None) -> DividedElem:
    """Read a cubic from a text file ("x^(3) + y*z*w") or a structured JSON file."""
    text = Path(path).read_text().strip()
    if not text:
        raise ValueError(f"{path} is empty")
    if text.startswith("{"):
        phi = DividedElem.from_dict(json.loads(text))
        if domain is not None and DomainSpec.parse(domain) != phi.domain:
            phi = phi.with_domain(DomainSpec.parse(domain))
    else:
        phi = DividedElem.from_text(text, DomainSpec.parse(domain or DEFAULT_DOMAIN), d or infer_dimension(text), 3)
    if d is not None and phi.d != d:
        raise ValueError(f"{path} has {phi.d} variables, expected {d}")
    return phi


@dataclass
class PhiCommand:
    """Fields shared by the commands that read one inverse system."""
    phi: str
    domain: Optional[str] = None
    d: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self):
        if not self.phi:
            raise ValueError("phi is required")
        self.d = _optional_int(self.d)
        if self.d is not None and self.d < 1:
            raise ValueError("d must be at least 1")


@dataclass
class GammaCommand(PhiCommand):
    """Class representing the gamma command."""
    monomial: Optional[str] = None
    ell: Optional[str] = None

    def __post_init__(self):
        super().__post_init__()
        if self.monomial and self.ell:
            raise ValueError("monomial and ell are mutually exclusive")


@dataclass
class ClassifyCommand(PhiCommand):
    """Class representing the classify command."""


@dataclass
class WlpCommand(PhiCommand):
    """Class representing the wlp command."""


@dataclass
class NormalFormCommand(PhiCommand):
    """Class representing the normal-form command."""


@dataclass
class OrbitCommand(PhiCommand):
    """Class representing the orbit command."""
    members: bool = False

    def __post_init__(self):
        super().__post_init__()
        self.members = _flag(self.members)


@dataclass
class VerifyCommand:
    """Class representing the verify command."""
    suite: str = "all"
    id: Optional[str] = None
    points: int = 0
    out: Optional[str] = None

    def __post_init__(self):
        if not self.suite:
            raise ValueError("suite is required")
        if self.suite not in SUITES:
            raise ValueError(f"suite must be one of {', '.join(SUITES)}")
        self.points = _optional_int(self.points) or 0
        if self.points < 0:
            raise ValueError("points must be nonnegative")


@dataclass
class ExhaustCommand:
    """Class representing the exhaust command."""
    p: int
    d: int
    out: Optional[str] = None

    def __post_init__(self):
        if self.p is None or self.p == "":
            raise ValueError("p is required")
        if self.d is None or self.d == "":
            raise ValueError("d is required")
        self.p = int(self.p)
        self.d = int(self.d)


class WlpGamma:
    """Class representing the wlp-gamma CLI."""

    def __init__(self, config: Optional[HarnessConfig] = None):
        self.config = config or HarnessConfig()
        self.version = __about__.__version__

    def _emit(self, data: Dict[str, Any], out: Optional[str]):
        text = json.dumps(data, indent=2, sort_keys=True)
        if out:
            Path(out).write_text(text + "\n")
            logger.info(f"report written to {out}")
        print(text)

    def _system(self, cmd: PhiCommand) -> InverseSystem:
        return InverseSystem(load_phi(cmd.phi, cmd.domain, cmd.d))

    def gamma(self, cmd: GammaCommand) -> int:
        """Print one Gamma coordinate, Gamma on a power, or the whole basis vector."""
        S = self._system(cmd)
        data: Dict[str, Any] = {"phi": str(S.phi), "domain": str(S.domain)}
        if cmd.monomial:
            e = tuple(int(k) for k in cmd.monomial.split(","))
            X = DividedElem.monomial(S.domain, e, space=Space.PRIMAL)
            data["monomial"] = list(e)
            data["value"] = str(gamma_coordinate(S.phi, X))
        elif cmd.ell:
            ell = SymElem.from_text(cmd.ell, S.domain, S.d, 1)
            data["ell"] = str(ell)
            data["value"] = str(gamma_on_power(S.phi, ell))
            data["powerDeterminant"] = str(power_determinant(S.phi, ell))
        else:
            data["gamma"] = [{"e": list(e), "value": str(value)} for e, value in gamma_vector(S.phi)]
        self._emit(data, cmd.out)
        return 0

    def classify(self, cmd: ClassifyCommand) -> int:
        S = self._system(cmd)
        record = classify(S, self.config.q_search_height, self.config.q_search_budget)
        self._emit(record.to_dict(), cmd.out)
        return 0

    def wlp(self, cmd: WlpCommand) -> int:
        """Print a Lefschetz element or NONE, with the multiplication ranks."""
        S = self._system(cmd)
        ell = wlp_witness(S, self.config.q_search_height, self.config.q_search_budget)
        data: Dict[str, Any] = {"phi": str(S.phi), "hilbert": hilbert_function(S), "witness": "NONE"}
        if ell is not None:
            data["witness"] = str(ell)
            data["ranks"] = [multiplication_rank(S, ell, i) for i in range(3)]
        self._emit(data, cmd.out)
        return 0

    def normal_form(self, cmd: NormalFormCommand) -> int:
        S = self._system(cmd)
        data = standard_form(S).to_dict()
        if S.d in (3, 4):
            data["case"] = proof_case(S).to_dict()
        self._emit(data, cmd.out)
        return 0

    def verify(self, cmd: VerifyCommand) -> int:
        report = run_suite(cmd.suite, cmd.id, self.config.seed, cmd.points, self.config.jobs)
        self._emit(report.to_dict(), cmd.out)
        return 0 if report.passed else 1

    def exhaust(self, cmd: ExhaustCommand) -> int:
        report = enumerate_systems(cmd.p, cmd.d, self.config)
        if cmd.out:
            report.write(Path(cmd.out))
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
        return 1 if report.orbit_matches is False else 0

    def orbit(self, cmd: OrbitCommand) -> int:
        phi = load_phi(cmd.phi, cmd.domain, cmd.d)
        self._emit(orbit(phi, self.config, cmd.members).to_dict(), cmd.out)
        return 0


def _phi_fields(flags: Dict[str, Any]) -> Dict[str, Any]:
    return {key: flags.get(key) for key in ("phi", "domain", "d", "out")}


def gamma(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    return wlp.gamma(GammaCommand(**_phi_fields(flags), monomial=flags.get("monomial"), ell=flags.get("ell")))


def classify_system(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    return wlp.classify(ClassifyCommand(**_phi_fields(flags)))


def find_witness(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    return wlp.wlp(WlpCommand(**_phi_fields(flags)))


def normal_form(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    return wlp.normal_form(NormalFormCommand(**_phi_fields(flags)))


def verify(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    cmd = VerifyCommand(
        suite=flags.get("suite") or "all",
        id=flags.get("id"),
        points=flags.get("points"),
        out=flags.get("out"),
    )
    return wlp.verify(cmd)


def exhaust(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    return wlp.exhaust(ExhaustCommand(p=flags.get("p"), d=flags.get("d"), out=flags.get("out")))


def group_orbit(wlp: WlpGamma, flags: Dict[str, Any]) -> int:
    return wlp.orbit(OrbitCommand(**_phi_fields(flags), members=flags.get("members", False)))


MAPPING = {
    "gamma": gamma,
    "classify": classify_system,
    "wlp": find_witness,
    "normal-form": normal_form,
    "verify": verify,
    "exhaust": exhaust,
    "orbit": group_orbit,
}


def load_config(flags: Dict[str, Any]) -> HarnessConfig:
    """Config file values, overridden by the flags given on the command line."""
    path = flags.pop("config", None)
    config = HarnessConfig.from_file(Path(path)) if path else HarnessConfig()
    force = flags.pop("force", None)
    return config.override(
        seed=_optional_int(flags.pop("seed", None)),
        jobs=_optional_int(flags.pop("jobs", None)),
        force=True if force is not None and _flag(force) else None,
    )


def main(raw) -> int:
    payload = json.loads(raw)
    command = payload["command"]
    if command not in MAPPING:
        msg = f"cannot find command: {command}"
        raise KeyError(msg)
    flags = payload["flags"]
    log_level = flags.pop("log_level", "info")
    if log_level != "disabled":
        logger.setLevel(log_level.upper())
    config = load_config(flags)
    wlp = WlpGamma(config)
    return MAPPING[command](wlp, flags)


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
