"""Symmetric powers Sym_i U and divided powers D_i U, D_i U* on a based space.

Divided elements are stored on the divided monomial basis: the exponent tuple
``(e_1, ..., e_d)`` stands for ``x_1^(e_1) ... x_d^(e_d)`` and its coefficient is the
pairing value against the monomial ``x^e``. No factorials appear anywhere, so every
operation is integral and characteristic free.
"""
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from src.coeffring import DomainMismatch, DomainSpec, Scalar, parse_sympy

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

Exponent = Tuple[int, ...]


class Space(str, Enum):
    PRIMAL = "primal"
    DUAL = "dual"


def variable_names(d: int) -> Tuple[str, ...]:
    """x, y, z, w for d <= 4, x1..xd beyond."""
    if d < 1:
        raise ValueError("d must be positive")
    if d <= 4:
        return ("x", "y", "z", "w")[:d]
    return tuple(f"x{i + 1}" for i in range(d))


@lru_cache(maxsize=None)
def monomials(d: int, degree: int) -> Tuple[Exponent, ...]:
    """All exponent tuples of the given degree, lexicographic with x > y > z > w."""
    found = set()
    for combo in combinations_with_replacement(range(d), degree):
        e = [0] * d
        for index in combo:
            e[index] += 1
        found.add(tuple(e))
    return tuple(sorted(found, reverse=True))


def unit_vector(d: int, i: int) -> Exponent:
    return tuple(1 if k == i else 0 for k in range(d))


def infer_dimension(text: str) -> int:
    """Ambient dimension implied by the variable letters of a text element."""
    return 4 if "w" in text else 3


@dataclass(frozen=True, eq=False)
class _Graded:
    domain: DomainSpec
    d: int
    degree: int
    terms: Mapping[Exponent, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != self.d or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e} for d={self.d}")
            if sum(e) != self.degree:
                raise ValueError(f"exponent {e} does not have degree {self.degree}")
            value = self.domain.convert(c)
            if not self.domain.is_zero(value):
                clean[e] = value
        object.__setattr__(self, "terms", clean)

    def _key(self):
        return (type(self), self.domain, self.d, self.degree, getattr(self, "space", None))

    def __eq__(self, other):
        if not isinstance(other, _Graded):
            return NotImplemented
        return self._key() == other._key() and self.terms == other.terms

    def __hash__(self):
        return hash((self._key(), frozenset(self.terms.items())))

    def _like(self, terms):
        raise NotImplementedError

    def _check(self, other):
        if other._key() != self._key():
            raise DomainMismatch("elements live in different spaces")

    def coeff(self, e: Sequence[int]):
        return self.terms.get(tuple(e), self.domain.zero)

    def scalar_at(self, e: Sequence[int]) -> Scalar:
        return Scalar(self.domain, self.coeff(e))

    def items(self) -> List[Tuple[Exponent, Any]]:
        return sorted(self.terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.domain.zero) + c
        return self._like(terms)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.domain.convert(c)
        return self._like({e: c * v for e, v in self.terms.items()})

    def _variables(self):
        return variable_names(self.d)

    def _monomial_text(self, e: Exponent, divided: bool) -> str:
        parts = []
        for name, k in zip(self._variables(), e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^({k})" if divided else f"{name}^{k}")
        return "*".join(parts)

    def _text(self, divided: bool) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for e, c in self.items():
            coefficient = self.domain.format(c)
            monomial = self._monomial_text(e, divided)
            if not monomial:
                pieces.append(coefficient)
            elif coefficient == "1":
                pieces.append(monomial)
            elif coefficient == "-1":
                pieces.append(f"-{monomial}")
            elif any(op in coefficient.lstrip("-") for op in "+-"):
                pieces.append(f"({coefficient})*{monomial}")
            else:
                pieces.append(f"{coefficient}*{monomial}")
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "degree": self.degree,
            "space": self._space_tag(),
            "domain": str(self.domain),
            "terms": [{"e": list(e), "c": self.domain.format(c)} for e, c in self.items()],
        }

    def _space_tag(self) -> str:
        return "sym"

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True, eq=False)
class SymElem(_Graded):
    """Homogeneous element of Sym_i U on the monomial basis."""

    def _like(self, terms):
        return SymElem(self.domain, self.d, self.degree, terms)

    def __str__(self):
        return self._text(divided=False)

    @classmethod
    def zero(cls, domain: DomainSpec, d: int, degree: int) -> "SymElem":
        return cls(domain, d, degree, {})

    @classmethod
    def monomial(cls, domain: DomainSpec, e: Sequence[int], c=1) -> "SymElem":
        e = tuple(e)
        return cls(domain, len(e), sum(e), {e: c})

    @classmethod
    def variable(cls, domain: DomainSpec, d: int, i: int) -> "SymElem":
        return cls.monomial(domain, unit_vector(d, i))

    @classmethod
    def linear(cls, domain: DomainSpec, coefficients: Sequence[Any]) -> "SymElem":
        d = len(coefficients)
        return cls(domain, d, 1, {unit_vector(d, i): c for i, c in enumerate(coefficients)})

    def linear_coefficients(self) -> List[Any]:
        if self.degree != 1:
            raise ValueError("a linear form is required")
        return [self.coeff(unit_vector(self.d, i)) for i in range(self.d)]

    @classmethod
    def from_text(cls, text: str, domain: DomainSpec, d: int, degree: Optional[int] = None) -> "SymElem":
        found_degree, terms = _parse_terms(text, domain, d, degree)
        return cls(domain, d, found_degree, terms)

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "SymElem":
        domain, d, degree, terms = _read_dict(raw)
        return cls(domain, d, degree, terms)


@dataclass(frozen=True, eq=False)
class DividedElem(_Graded):
    """Homogeneous element of D_i U (PRIMAL) or D_i U* (DUAL) on the divided basis."""
    space: Space = Space.DUAL

    def _like(self, terms):
        return DividedElem(self.domain, self.d, self.degree, terms, self.space)

    def _space_tag(self) -> str:
        return self.space.value

    def __str__(self):
        return self._text(divided=True)

    @classmethod
    def zero(cls, domain: DomainSpec, d: int, degree: int, space: Space = Space.DUAL) -> "DividedElem":
        return cls(domain, d, degree, {}, space)

    @classmethod
    def monomial(cls, domain: DomainSpec, e: Sequence[int], c=1, space: Space = Space.DUAL) -> "DividedElem":
        e = tuple(e)
        return cls(domain, len(e), sum(e), {e: c}, space)

    @classmethod
    def linear(cls, domain: DomainSpec, coefficients: Sequence[Any], space: Space = Space.DUAL) -> "DividedElem":
        d = len(coefficients)
        return cls(domain, d, 1, {unit_vector(d, i): c for i, c in enumerate(coefficients)}, space)

    def linear_coefficients(self) -> List[Any]:
        if self.degree != 1:
            raise ValueError("a linear form is required")
        return [self.coeff(unit_vector(self.d, i)) for i in range(self.d)]

    def scalar(self) -> Scalar:
        """The value of a degree-0 element."""
        if self.degree != 0:
            raise ValueError("only degree-0 elements are scalars")
        return self.scalar_at((0,) * self.d)

    def with_domain(self, domain: DomainSpec) -> "DividedElem":
        """Reinterpret integer coefficients in another domain."""
        terms = {e: domain.from_sympy(self.domain.K.to_sympy(c)) for e, c in self.terms.items()}
        return DividedElem(domain, self.d, self.degree, terms, self.space)

    @classmethod
    def from_text(cls, text: str, domain: DomainSpec, d: int, degree: Optional[int] = None,
                  space: Space = Space.DUAL) -> "DividedElem":
        found_degree, terms = _parse_terms(text, domain, d, degree)
        return cls(domain, d, found_degree, terms, space)

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "DividedElem":
        domain, d, degree, terms = _read_dict(raw)
        space = Space(raw.get("space", Space.DUAL.value))
        return cls(domain, d, degree, terms, space)


def _parse_terms(text: str, domain: DomainSpec, d: int, degree: Optional[int]):
    names = variable_names(d)
    clash = set(names) & set(domain.names)
    if clash:
        raise ValueError(f"parameter names clash with variables: {sorted(clash)}")
    var_symbols = {name: Symbol(name) for name in names}
    expr = parse_sympy(text, {**domain.symbols, **var_symbols}).expand()
    unknown = expr.free_symbols - set(var_symbols.values()) - set(domain.symbols.values())
    if unknown:
        raise ValueError(f"unknown names in {text!r}: {sorted(str(s) for s in unknown)}")
    poly = Poly(expr, *[var_symbols[name] for name in names])
    terms = {}
    for e, c in poly.as_dict(native=False).items():
        value = domain.from_sympy(c)
        if domain.is_zero(value):
            continue
        terms[tuple(e)] = value
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        raise ValueError(f"{text!r} is not homogeneous")
    if degrees:
        found = degrees.pop()
        if degree is not None and found != degree:
            raise ValueError(f"{text!r} has degree {found}, expected {degree}")
        degree = found
    if degree is None:
        raise ValueError(f"degree is required for {text!r}")
    return degree, terms


def _read_dict(raw: Mapping[str, Any]):
    for key in ("d", "degree", "domain", "terms"):
        if key not in raw:
            raise ValueError(f"{key} is required")
    domain = DomainSpec.parse(raw["domain"])
    terms = {}
    for term in raw["terms"]:
        terms[tuple(term["e"])] = domain.parse_element(str(term["c"]))
    return domain, int(raw["d"]), int(raw["degree"]), terms


def _same_ambient(a: _Graded, b: _Graded):
    if a.d != b.d:
        raise DomainMismatch(f"dimension mismatch: {a.d} != {b.d}")
    if a.domain != b.domain:
        raise DomainMismatch(f"domain mismatch: {a.domain} != {b.domain}")


def sym_mul(a: SymElem, b: SymElem) -> SymElem:
    """Product in Sym U."""
    _same_ambient(a, b)
    terms: Dict[Exponent, Any] = {}
    zero = a.domain.zero
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            terms[e] = terms.get(e, zero) + ca * cb
    return SymElem(a.domain, a.d, a.degree + b.degree, terms)


def contract(u: SymElem, phi: DividedElem) -> DividedElem:
    """The module action of Sym U on D U*: m' . m* = (m/m')* when m' divides m, else 0."""
    _same_ambient(u, phi)
    if phi.space != Space.DUAL:
        raise ValueError("contraction acts on dual divided elements")
    if u.degree > phi.degree:
        raise ValueError(f"cannot contract degree {u.degree} into degree {phi.degree}")
    terms: Dict[Exponent, Any] = {}
    zero = phi.domain.zero
    for eu, cu in u.terms.items():
        for ep, cp in phi.terms.items():
            if all(a <= b for a, b in zip(eu, ep)):
                e = tuple(b - a for a, b in zip(eu, ep))
                terms[e] = terms.get(e, zero) + cu * cp
    return DividedElem(phi.domain, phi.d, phi.degree - u.degree, terms, Space.DUAL)


def _power(domain: DomainSpec, a, k: int):
    result = domain.one
    for _ in range(k):
        result = result * a
    return result


def divided_power(ell: Union[DividedElem, SymElem], n: int) -> DividedElem:
    """(sum a_i x_i)^(n) = sum over |e| = n of prod a_i^e_i x^(e).

    A SymElem input is read as an element of U and gives a PRIMAL result.
    """
    if ell.degree != 1:
        raise ValueError("divided powers are taken of linear forms")
    if n < 0:
        raise ValueError("n must be nonnegative")
    space = ell.space if isinstance(ell, DividedElem) else Space.PRIMAL
    coefficients = ell.linear_coefficients()
    support = [i for i, a in enumerate(coefficients) if not ell.domain.is_zero(a)]
    terms = {}
    for e in monomials(ell.d, n):
        if any(k and i not in support for i, k in enumerate(e)):
            continue
        value = ell.domain.one
        for a, k in zip(coefficients, e):
            if k:
                value = value * _power(ell.domain, a, k)
        terms[e] = value
    return DividedElem(ell.domain, ell.d, n, terms, space)


def divided_mul(a: DividedElem, b: DividedElem) -> DividedElem:
    """Divided-basis product x^(a) x^(b) = prod C(a_i + b_i, a_i) x^(a+b)."""
    _same_ambient(a, b)
    if a.space != b.space:
        raise DomainMismatch("cannot multiply primal and dual elements")
    terms: Dict[Exponent, Any] = {}
    zero = a.domain.zero
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            binomial = 1
            for x, y in zip(ea, eb):
                binomial *= comb(x + y, x)
            terms[e] = terms.get(e, zero) + a.domain.convert(binomial) * ca * cb
    return DividedElem(a.domain, a.d, a.degree + b.degree, terms, a.space)


def comultiply(X: DividedElem) -> List[Tuple[Scalar, Tuple[int, ...]]]:
    """Delta: D_i U -> T_i U, each divided monomial going to the sum of its distinct words."""
    if X.space != Space.PRIMAL:
        raise ValueError("comultiplication is defined on primal elements")
    words = []
    for e, c in X.items():
        letters = [i for i, k in enumerate(e) for _ in range(k)]
        for word in multiset_permutations(letters):
            words.append((Scalar(X.domain, c), tuple(word)))
    return words


def _matrix(domain: DomainSpec, rows: Sequence[Sequence[Any]]) -> DomainMatrix:
    converted = [[domain.convert(v) for v in row] for row in rows]
    return DomainMatrix(converted, (len(converted), len(converted[0]) if converted else 0), domain.K)


@dataclass(frozen=True, eq=False)
class BasisChange:
    """An invertible d x d matrix M acting on U by x_i -> sum_j M[j][i] x_j.

    U* is acted on by the inverse transpose, so pairings are preserved.
    """
    domain: DomainSpec
    matrix: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self):
        if not self.domain.is_field:
            raise ValueError("basis changes need a field domain")
        rows = tuple(tuple(self.domain.convert(v) for v in row) for row in self.matrix)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", rows)
        if self.domain.is_zero(self._dm().det()):
            raise ValueError("matrix is singular")

    @property
    def d(self) -> int:
        return len(self.matrix)

    def __eq__(self, other):
        if not isinstance(other, BasisChange):
            return NotImplemented
        return self.domain == other.domain and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.domain, self.matrix))

    def _dm(self) -> DomainMatrix:
        return _matrix(self.domain, self.matrix)

    @classmethod
    def _from_dm(cls, domain: DomainSpec, dm: DomainMatrix) -> "BasisChange":
        return cls(domain, tuple(tuple(row) for row in dm.to_list()))

    @classmethod
    def identity(cls, domain: DomainSpec, d: int) -> "BasisChange":
        return cls(domain, tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)))

    @classmethod
    def permutation(cls, domain: DomainSpec, images: Sequence[int]) -> "BasisChange":
        """x_i -> x_{images[i]}."""
        d = len(images)
        rows = [[0] * d for _ in range(d)]
        for i, j in enumerate(images):
            rows[j][i] = 1
        return cls(domain, tuple(tuple(row) for row in rows))

    @classmethod
    def swap(cls, domain: DomainSpec, d: int, i: int, j: int) -> "BasisChange":
        images = list(range(d))
        images[i], images[j] = j, i
        return cls.permutation(domain, images)

    @classmethod
    def from_dual_substitution(cls, domain: DomainSpec, S: Sequence[Sequence[Any]]) -> "BasisChange":
        """The change whose dual action is x_i* -> sum_j S[j][i] x_j*; M = S^-T."""
        dm = _matrix(domain, S)
        return cls._from_dm(domain, dm.inv().transpose())

    @classmethod
    def from_primal_basis(cls, domain: DomainSpec, L: Sequence[Sequence[Any]]) -> "BasisChange":
        """The change to the basis of U given by the columns of L; M = L^-1."""
        return cls._from_dm(domain, _matrix(domain, L).inv())

    def dual_matrix(self) -> Tuple[Tuple[Any, ...], ...]:
        return tuple(tuple(row) for row in self._dm().inv().transpose().to_list())

    def inverse(self) -> "BasisChange":
        return BasisChange._from_dm(self.domain, self._dm().inv())

    def then(self, other: "BasisChange") -> "BasisChange":
        """Apply self first, then other: the matrix other * self."""
        if other.domain != self.domain or other.d != self.d:
            raise DomainMismatch("basis changes act on different spaces")
        return BasisChange._from_dm(self.domain, other._dm() * self._dm())

    def block(self, offset: int, d: int) -> "BasisChange":
        """Embed this change on coordinates offset.. of a d-dimensional space."""
        rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        for i, row in enumerate(self.matrix):
            for j, v in enumerate(row):
                rows[offset + i][offset + j] = v
        return BasisChange(self.domain, tuple(tuple(row) for row in rows))

    def to_lists(self) -> List[List[str]]:
        return [[self.domain.format(v) for v in row] for row in self.matrix]


def _substitute(v: _Graded, images: Sequence[_Graded]) -> _Graded:
    """Replace each basis vector by a linear form and re-expand."""
    if isinstance(v, SymElem):
        result = SymElem.zero(v.domain, v.d, v.degree)
        for e, c in v.terms.items():
            term = SymElem.monomial(v.domain, (0,) * v.d, c)
            for image, k in zip(images, e):
                for _ in range(k):
                    term = sym_mul(term, image)
            result = result + term
        return result
    powers: Dict[Tuple[int, int], DividedElem] = {}
    result = DividedElem.zero(v.domain, v.d, v.degree, v.space)
    for e, c in v.terms.items():
        term = DividedElem.monomial(v.domain, (0,) * v.d, c, v.space)
        for i, k in enumerate(e):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = divided_power(images[i], k)
                term = divided_mul(term, powers[(i, k)])
        result = result + term
    return result


def apply_basis_change(v: Union[SymElem, DividedElem], M: BasisChange):
    """Transport v along M: Sym and primal elements by M, dual elements by M^-T."""
    if v.d != M.d:
        raise DomainMismatch(f"dimension mismatch: {v.d} != {M.d}")
    if v.domain != M.domain:
        raise DomainMismatch(f"domain mismatch: {v.domain} != {M.domain}")
    if isinstance(v, DividedElem) and v.space == Space.DUAL:
        matrix = M.dual_matrix()
    else:
        matrix = M.matrix
    d = v.d
    if isinstance(v, SymElem):
        images = [SymElem.linear(v.domain, [matrix[j][i] for j in range(d)]) for i in range(d)]
    else:
        images = [DividedElem.linear(v.domain, [matrix[j][i] for j in range(d)], v.space) for i in range(d)]
    return _substitute(v, images)


def substitute_dual(phi: DividedElem, images: Iterable[DividedElem]) -> DividedElem:
    """Rewrite phi after replacing x_i* by the given degree-1 dual forms."""
    images = list(images)
    if len(images) != phi.d:
        raise ValueError("one image per variable is required")
    return _substitute(phi, images)
