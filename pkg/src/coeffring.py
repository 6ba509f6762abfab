"""Exact coefficient domains: integers, rationals, prime fields and integer parameter rings."""
import logging
import re
from tokenize import TokenError
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, Optional, Tuple

from sympy import Symbol, isprime, sstr
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    split_symbols_custom,
    standard_transformations,
)
from sympy.polys.domains import FF, QQ, ZZ
from sympy.polys.polyerrors import CoercionFailed

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

_DOMAIN_PATTERN = re.compile(r"^\s*(?:(Z|ZZ|Q|QQ)|GF\(\s*(\d+)\s*\)|Z\[([^\]]*)\])\s*$")
_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


class DomainMismatch(ValueError):
    """Raised when two values from different domains meet."""


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting zero."""


class NotAUnit(ValueError):
    """Raised when inverting a non-unit of a ring that is not a field."""


class DomainKind(str, Enum):
    INTEGERS = "INTEGERS"
    RATIONALS = "RATIONALS"
    PRIME_FIELD = "PRIME_FIELD"
    PARAM_RING = "PARAM_RING"


@lru_cache(maxsize=None)
def _sympy_domain(kind: DomainKind, p: Optional[int], names: Tuple[str, ...]):
    if kind == DomainKind.INTEGERS:
        return ZZ
    if kind == DomainKind.RATIONALS:
        return QQ
    if kind == DomainKind.PRIME_FIELD:
        return FF(p, symmetric=False)
    return ZZ.poly_ring(*[Symbol(name) for name in names])


def _splitter(letters):
    """Split juxtaposed single-letter names such as ``ac`` into ``a*c``."""
    def predicate(symbol_str):
        return len(symbol_str) > 1 and all(ch in letters for ch in symbol_str)
    return split_symbols_custom(predicate)


def parse_sympy(text: str, symbols: Dict[str, Symbol]):
    """Parse ASCII polynomial text into a sympy expression over the given symbols."""
    letters = {name for name in symbols if len(name) == 1}
    transformations = standard_transformations + (
        _splitter(letters),
        implicit_multiplication,
        convert_xor,
    )
    cleaned = text.replace("−", "-").strip()
    if not cleaned:
        raise ValueError("empty expression")
    try:
        return parse_expr(cleaned, local_dict=dict(symbols), transformations=transformations)
    except (SyntaxError, TypeError, TokenError) as e:
        raise ValueError(f"cannot parse {text!r}: {e}")


@dataclass(frozen=True)
class DomainSpec:
    """An exact coefficient domain.

    ``kind`` selects the domain; ``p`` is the characteristic of a prime field and
    ``names`` the ordered indeterminates of a parameter ring over the integers.
    """
    kind: DomainKind
    p: Optional[int] = None
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.kind, DomainKind):
            object.__setattr__(self, "kind", DomainKind(self.kind))
        object.__setattr__(self, "names", tuple(self.names))
        if self.kind == DomainKind.PRIME_FIELD:
            if self.p is None:
                raise ValueError("p is required")
            if not isprime(self.p):
                raise ValueError(f"p must be prime, got {self.p}")
        elif self.p is not None:
            raise ValueError("p is only allowed for prime fields")
        if self.kind == DomainKind.PARAM_RING:
            if not self.names:
                raise ValueError("names are required")
            if len(set(self.names)) != len(self.names):
                raise ValueError(f"names must be distinct: {self.names}")
            for name in self.names:
                if not _NAME_PATTERN.match(name):
                    raise ValueError(f"invalid indeterminate name: {name!r}")
        elif self.names:
            raise ValueError("names are only allowed for parameter rings")

    @classmethod
    def integers(cls) -> "DomainSpec":
        return cls(DomainKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "DomainSpec":
        return cls(DomainKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "DomainSpec":
        return cls(DomainKind.PRIME_FIELD, p=p)

    @classmethod
    def param_ring(cls, *names: str) -> "DomainSpec":
        return cls(DomainKind.PARAM_RING, names=tuple(names))

    @classmethod
    def parse(cls, text: str) -> "DomainSpec":
        """Read "Z", "Q", "GF(p)" or "Z[a,b,...]"."""
        match = _DOMAIN_PATTERN.match(text or "")
        if not match:
            raise ValueError(f"unknown domain: {text!r}")
        plain, p, names = match.groups()
        if plain:
            return cls.integers() if plain.startswith("Z") else cls.rationals()
        if p:
            return cls.prime_field(int(p))
        return cls.param_ring(*[name.strip() for name in names.split(",") if name.strip()])

    def __str__(self):
        if self.kind == DomainKind.INTEGERS:
            return "Z"
        if self.kind == DomainKind.RATIONALS:
            return "Q"
        if self.kind == DomainKind.PRIME_FIELD:
            return f"GF({self.p})"
        return f"Z[{','.join(self.names)}]"

    @property
    def K(self):
        """The backing sympy domain."""
        return _sympy_domain(self.kind, self.p, self.names)

    @property
    def is_field(self) -> bool:
        return self.kind in (DomainKind.RATIONALS, DomainKind.PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == DomainKind.PRIME_FIELD else 0

    @property
    def zero(self):
        return self.K.zero

    @property
    def one(self):
        return self.K.one

    @property
    def symbols(self) -> Dict[str, Symbol]:
        return {name: Symbol(name) for name in self.names}

    def gens(self) -> Dict[str, Any]:
        """Raw generators of a parameter ring keyed by name."""
        if self.kind != DomainKind.PARAM_RING:
            raise ValueError(f"{self} has no generators")
        return dict(zip(self.names, self.K.gens))

    def convert(self, value):
        """Canonical raw element for an int, a raw element or a sympy number."""
        K = self.K
        try:
            if isinstance(value, int):
                return K(value)
            if K.of_type(value):
                return value
            return K.convert(value)
        except (CoercionFailed, TypeError, ValueError) as e:
            raise DomainMismatch(f"cannot convert {value!r} into {self}: {e}")

    def from_sympy(self, expr):
        try:
            return self.K.from_sympy(expr)
        except (CoercionFailed, ValueError, TypeError) as e:
            raise ValueError(f"{expr} is not an element of {self}: {e}")

    def parse_element(self, text: str):
        expr = parse_sympy(text, self.symbols)
        return self.from_sympy(expr.expand())

    def is_zero(self, value) -> bool:
        return value == self.K.zero

    def to_int(self, value) -> int:
        """Integer representative; residues come back in [0, p)."""
        if self.kind == DomainKind.PRIME_FIELD:
            return int(self.K.to_int(value)) % self.p
        if self.kind == DomainKind.INTEGERS:
            return int(value)
        raise ValueError(f"{self} elements are not integers")

    def is_unit(self, value) -> bool:
        if self.is_zero(value):
            return False
        if self.is_field:
            return True
        return value == self.K.one or value == -self.K.one

    def inverse(self, value):
        if self.is_zero(value):
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.is_field:
            return self.K.one / value
        if self.is_unit(value):
            return value
        raise NotAUnit(f"{self.format(value)} is not a unit of {self}")

    def format(self, value) -> str:
        if self.kind == DomainKind.PRIME_FIELD:
            return str(self.to_int(value))
        return sstr(self.K.to_sympy(value)).replace("**", "^")


@dataclass(frozen=True)
class Scalar:
    """An element of a DomainSpec, held in canonical form."""
    domain: DomainSpec
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.domain.convert(self.value))

    @classmethod
    def parse(cls, domain: DomainSpec, text: str) -> "Scalar":
        return cls(domain, domain.parse_element(text))

    @classmethod
    def of(cls, domain: DomainSpec, n: int) -> "Scalar":
        return cls(domain, domain.convert(n))

    def is_zero(self) -> bool:
        return self.domain.is_zero(self.value)

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            raise DomainMismatch(f"expected a Scalar, got {type(other).__name__}")
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} and {other.domain} do not match")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.domain, self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.domain, self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.domain, self.value * other.value)

    def __neg__(self):
        return Scalar(self.domain, -self.value)

    def __str__(self):
        return self.domain.format(self.value)


ARITH_OPS = ("add", "sub", "mul", "neg")


def arith(op: str, x: Scalar, y: Optional[Scalar] = None) -> Scalar:
    """Exact ring arithmetic on Scalars sharing a domain."""
    if op not in ARITH_OPS:
        raise ValueError(f"op must be one of {', '.join(ARITH_OPS)}")
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    return x * y


def unit_inverse(x: Scalar) -> Scalar:
    """Inverse of a unit; fields invert every nonzero element."""
    return Scalar(x.domain, x.domain.inverse(x.value))
