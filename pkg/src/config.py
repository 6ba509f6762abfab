"""Versioned JSON configuration for the census, orbit and witness searches."""
import json
from abc import abstractmethod
from dataclasses import dataclass, fields, is_dataclass, replace
from pathlib import Path
from typing import Any, Dict, Generic, Optional, TypeVar
from .__about__ import __version__


# Bumped whenever a HarnessConfig field is renamed or removed
_CONFIG_VERSION = 1

T = TypeVar("T")


class _Config(Generic[T]):

    @classmethod
    @abstractmethod
    def from_dict(cls, raw: dict) -> T:
        ...

    @classmethod
    def from_bytes(cls, raw: str) -> T:
        data = json.loads(raw)
        return cls.from_dict(data or {})

    @classmethod
    def from_file(cls, config_file: Path) -> T:
        return cls.from_bytes(Path(config_file).read_text())

    @classmethod
    def _verify_version(cls, raw):
        stored_version = raw.pop("version", None)
        if stored_version != _CONFIG_VERSION:
            raise ValueError(
                f"Unsupported config version: {stored_version}. "
                f"wlp-gamma v{__version__} reads config version {_CONFIG_VERSION}"
            )

    def as_dict(self) -> Dict[str, Any]:
        """Nonempty fields plus the schema version, ready for json.dump."""
        serialized = {}
        if is_dataclass(self):
            for f in fields(self):
                value = getattr(self, f.name)
                if value:
                    serialized[f.name] = value
        serialized["version"] = _CONFIG_VERSION
        return serialized


@dataclass
class HarnessConfig(_Config["HarnessConfig"]):
    """Knobs for the census, orbit and witness searches."""
    seed: int = 20240229
    jobs: int = 1
    batch_size: int = 4096
    classification_budget: int = 2 ** 24
    force: bool = False
    q_search_height: int = 3
    q_search_budget: int = 20000
    max_discrepancies: int = 256

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
        if self.classification_budget < 1:
            raise ValueError("classification_budget must be positive")
        if self.q_search_height < 1:
            raise ValueError("q_search_height must be positive")
        if self.max_discrepancies < 0:
            raise ValueError("max_discrepancies must be nonnegative")

    @classmethod
    def from_dict(cls, raw: dict):
        cls._verify_version(raw)
        unknown = set(raw) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    def override(self, **flags: Optional[Any]) -> "HarnessConfig":
        """Copy with every flag that is not None replacing the stored value."""
        return replace(self, **{k: v for k, v in flags.items() if v is not None})
