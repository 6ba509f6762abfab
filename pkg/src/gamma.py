"""Exterior algebra on based spaces and the Gamma map of a cubic inverse system.

For phi in D_3 U* the map sends X (x) omega, with X in D_d U and omega in the top
exterior power of U, through bowtie, the exterior power of multiplication
E (x) E -> Sym_2 U, and the exterior power of u2 -> u2 . phi, landing in the top
exterior power of U*.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.matrices import DomainMatrix

from src.coeffring import DomainMismatch, DomainSpec, Scalar
from src.polyspace import (
    DividedElem,
    Space,
    SymElem,
    comultiply,
    contract,
    divided_mul,
    divided_power,
    monomials,
    sym_mul,
    unit_vector,
)

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

Index = Tuple[int, ...]


@dataclass(frozen=True)
class Ambient:
    """A based space: dimension and a tag naming it."""
    n: int
    tag: str

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")


def primal_space(d: int) -> Ambient:
    return Ambient(d, "U")


def dual_space(d: int) -> Ambient:
    return Ambient(d, "U*")


@dataclass(frozen=True)
class PairedSpace:
    """E (x) G with basis (i, j) ordered lexicographically."""
    dim_e: int
    dim_g: int

    @property
    def ambient(self) -> Ambient:
        return Ambient(self.dim_e * self.dim_g, f"E{self.dim_e}xG{self.dim_g}")

    def index(self, i: int, j: int) -> int:
        return i * self.dim_g + j

    def pair(self, k: int) -> Tuple[int, int]:
        return divmod(k, self.dim_g)


def _sort_with_sign(indices: Sequence[int]) -> Tuple[Optional[Index], int]:
    """Sorted tuple and permutation sign, or (None, 0) on a repeated index."""
    if len(set(indices)) != len(indices):
        return None, 0
    inversions = 0
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if indices[a] > indices[b]:
                inversions += 1
    return tuple(sorted(indices)), -1 if inversions % 2 else 1


@dataclass(frozen=True, eq=False)
class ExtElem:
    """Element of the k-th exterior power of a based space.

    Terms are keyed by strictly increasing index tuples.
    """
    domain: DomainSpec
    ambient: Ambient
    grade: int
    terms: Mapping[Index, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.grade < 0 or self.grade > self.ambient.n:
            raise ValueError(f"grade {self.grade} out of range for dimension {self.ambient.n}")
        clean: Dict[Index, Any] = {}
        for index, c in self.terms.items():
            ordered, sign = _sort_with_sign(tuple(index))
            if ordered is None:
                continue
            if len(ordered) != self.grade or (ordered and not 0 <= ordered[0] <= ordered[-1] < self.ambient.n):
                raise ValueError(f"bad index {index} for grade {self.grade}")
            value = self.domain.convert(c)
            if sign < 0:
                value = -value
            clean[ordered] = clean.get(ordered, self.domain.zero) + value
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if not self.domain.is_zero(v)})

    def __eq__(self, other):
        if not isinstance(other, ExtElem):
            return NotImplemented
        return (self.domain, self.ambient, self.grade, self.terms) == (
            other.domain, other.ambient, other.grade, other.terms)

    def __hash__(self):
        return hash((self.domain, self.ambient, self.grade, frozenset(self.terms.items())))

    def _check(self, other: "ExtElem"):
        if self.ambient != other.ambient:
            raise DomainMismatch(f"ambient mismatch: {self.ambient} != {other.ambient}")
        if self.domain != other.domain:
            raise DomainMismatch(f"domain mismatch: {self.domain} != {other.domain}")

    def __add__(self, other: "ExtElem") -> "ExtElem":
        self._check(other)
        if self.grade != other.grade:
            raise ValueError("cannot add elements of different grades")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, self.domain.zero) + v
        return ExtElem(self.domain, self.ambient, self.grade, terms)

    def scale(self, c) -> "ExtElem":
        c = self.domain.convert(c)
        return ExtElem(self.domain, self.ambient, self.grade, {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coordinate(self) -> Scalar:
        """Coefficient on e_0 ^ ... ^ e_{n-1}; top grade only."""
        if self.grade != self.ambient.n:
            raise ValueError("only top-grade elements have a single coordinate")
        return Scalar(self.domain, self.terms.get(tuple(range(self.ambient.n)), self.domain.zero))

    @classmethod
    def zero(cls, domain: DomainSpec, ambient: Ambient, grade: int) -> "ExtElem":
        return cls(domain, ambient, grade, {})

    @classmethod
    def basis(cls, domain: DomainSpec, ambient: Ambient, i: int) -> "ExtElem":
        return cls(domain, ambient, 1, {(i,): 1})

    @classmethod
    def from_vector(cls, domain: DomainSpec, ambient: Ambient, coefficients: Sequence[Any]) -> "ExtElem":
        if len(coefficients) != ambient.n:
            raise ValueError("one coefficient per basis vector is required")
        return cls(domain, ambient, 1, {(i,): c for i, c in enumerate(coefficients)})

    @classmethod
    def top(cls, domain: DomainSpec, ambient: Ambient, c=1) -> "ExtElem":
        """c times e_0 ^ ... ^ e_{n-1}."""
        return cls(domain, ambient, ambient.n, {tuple(range(ambient.n)): c})


def wedge(a: ExtElem, b: ExtElem) -> ExtElem:
    """Exterior product; a repeated index kills the term."""
    a._check(b)
    grade = a.grade + b.grade
    if grade > a.ambient.n:
        raise ValueError(f"grade {grade} exceeds dimension {a.ambient.n}")
    terms: Dict[Index, Any] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            ordered, sign = _sort_with_sign(ia + ib)
            if ordered is None:
                continue
            value = ca * cb if sign > 0 else -(ca * cb)
            terms[ordered] = terms.get(ordered, a.domain.zero) + value
    return ExtElem(a.domain, a.ambient, grade, terms)


def wedge_all(factors: Sequence[ExtElem]) -> ExtElem:
    if not factors:
        raise ValueError("at least one factor is required")
    result = factors[0]
    for factor in factors[1:]:
        result = wedge(result, factor)
        if result.is_zero():
            return ExtElem.zero(result.domain, result.ambient, sum(f.grade for f in factors))
    return result


def _check_cubic(phi: DividedElem):
    if phi.space != Space.DUAL or phi.degree != 3:
        raise ValueError("phi must be a degree-3 dual divided element")


def p_phi(phi: DividedElem, u2: SymElem) -> DividedElem:
    """u2 -> u2 . phi from Sym_2 U to U*."""
    _check_cubic(phi)
    if u2.degree != 2:
        raise ValueError("u2 must have degree 2")
    return contract(u2, phi)


def bowtie(X: DividedElem, Y: ExtElem) -> ExtElem:
    """Comultiply X into words and zip each word with the wedge words of Y."""
    if X.space != Space.PRIMAL:
        raise ValueError("X must be a primal divided element")
    if X.degree != Y.grade:
        raise ValueError(f"degree {X.degree} does not match grade {Y.grade}")
    if X.domain != Y.domain:
        raise DomainMismatch(f"domain mismatch: {X.domain} != {Y.domain}")
    paired = PairedSpace(X.d, Y.ambient.n)
    terms: Dict[Index, Any] = {}
    zero = X.domain.zero
    for c, word in comultiply(X):
        for letters, cy in Y.terms.items():
            indices = [paired.index(i, j) for i, j in zip(word, letters)]
            ordered, sign = _sort_with_sign(indices)
            if ordered is None:
                continue
            value = c.value * cy
            terms[ordered] = terms.get(ordered, zero) + (value if sign > 0 else -value)
    return ExtElem(X.domain, paired.ambient, X.degree, terms)


def _pair_images(phi: DividedElem) -> Dict[Tuple[int, int], ExtElem]:
    """(i, j) -> x_i x_j . phi as a vector of U*."""
    d = phi.d
    images = {}
    for i in range(d):
        for j in range(i, d):
            u2 = sym_mul(SymElem.variable(phi.domain, d, i), SymElem.variable(phi.domain, d, j))
            image = p_phi(phi, u2)
            vector = ExtElem.from_vector(
                phi.domain, dual_space(d), [image.coeff(unit_vector(d, k)) for k in range(d)])
            images[(i, j)] = images[(j, i)] = vector
    return images


def omega(domain: DomainSpec, d: int) -> ExtElem:
    """x_1 ^ ... ^ x_d in the top exterior power of U."""
    return ExtElem.top(domain, primal_space(d))


def gamma_eval(phi: DividedElem, X: DividedElem, w: Optional[ExtElem] = None,
               images: Optional[Dict[Tuple[int, int], ExtElem]] = None) -> ExtElem:
    """Gamma(X (x) w) as an element of the top exterior power of U*."""
    _check_cubic(phi)
    d = phi.d
    if X.d != d or X.degree != d:
        raise ValueError(f"X must be a degree-{d} primal element in dimension {d}")
    if w is None:
        w = omega(phi.domain, d)
    if w.ambient != primal_space(d) or w.grade != d:
        raise ValueError("w must lie in the top exterior power of U")
    if X.domain != phi.domain:
        raise DomainMismatch(f"domain mismatch: {X.domain} != {phi.domain}")
    if images is None:
        images = _pair_images(phi)
    paired = PairedSpace(d, d)
    result = ExtElem.zero(phi.domain, dual_space(d), d)
    for indices, c in bowtie(X, w).terms.items():
        factors = [images[paired.pair(k)] for k in indices]
        result = result + wedge_all(factors).scale(c)
    return result


def gamma_coordinate(phi: DividedElem, X: DividedElem, w: Optional[ExtElem] = None) -> Scalar:
    return gamma_eval(phi, X, w).coordinate()


def gamma_on_power(phi: DividedElem, ell: SymElem) -> Scalar:
    """Coordinate of Gamma(ell^(d) (x) x_1 ^ ... ^ x_d)."""
    if ell.degree != 1:
        raise ValueError("ell must be linear")
    return gamma_coordinate(phi, divided_power(ell, phi.d))


def power_matrix(phi: DividedElem, ell: SymElem) -> List[List[Any]]:
    """Rows ell x_i . phi in dual coordinates; symmetric."""
    _check_cubic(phi)
    d = phi.d
    rows = []
    for i in range(d):
        image = contract(sym_mul(ell, SymElem.variable(phi.domain, d, i)), phi)
        rows.append([image.coeff(unit_vector(d, k)) for k in range(d)])
    return rows


def power_determinant(phi: DividedElem, ell: SymElem) -> Scalar:
    rows = power_matrix(phi, ell)
    return Scalar(phi.domain, DomainMatrix(rows, (phi.d, phi.d), phi.domain.K).det())


def gamma_vector(phi: DividedElem) -> List[Tuple[Tuple[int, ...], Scalar]]:
    """Gamma on every divided monomial of degree d, in lexicographic order."""
    _check_cubic(phi)
    images = _pair_images(phi)
    values = []
    for e in monomials(phi.d, phi.d):
        X = DividedElem.monomial(phi.domain, e, space=Space.PRIMAL)
        values.append((e, gamma_eval(phi, X, images=images).coordinate()))
    return values


def gamma_vector_via_determinant(phi: DividedElem) -> Dict[Tuple[int, ...], Scalar]:
    """Basis values read off as the coefficients of det(sum_k t_k H_k)."""
    _check_cubic(phi)
    d = phi.d
    K = phi.domain.K
    R = K.poly_ring(*[Symbol(f"t{k}") for k in range(d)])
    ts = R.gens
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            entry = R.zero
            for k in range(d):
                e = tuple(a + b + c for a, b, c in zip(unit_vector(d, i), unit_vector(d, j), unit_vector(d, k)))
                entry += ts[k] * R.ring.ground_new(phi.coeff(e))
            row.append(entry)
        rows.append(row)
    det = DomainMatrix(rows, (d, d), R).det()
    values = {e: Scalar(phi.domain, phi.domain.zero) for e in monomials(d, d)}
    for e, c in det.terms():
        values[tuple(e)] = Scalar(phi.domain, c)
    return values


def gamma_is_zero(phi: DividedElem) -> Tuple[bool, Optional[DividedElem]]:
    """Vanishing on the full divided-monomial basis, with the first nonzero monomial."""
    for e, value in gamma_vector(phi):
        if not value.is_zero():
            return False, DividedElem.monomial(phi.domain, e, space=Space.PRIMAL)
    return True, None


def polarize(phi: DividedElem, ell1: SymElem, ell2: SymElem, a, X: DividedElem) -> Tuple[Scalar, Scalar]:
    """Both sides of Gamma((l1 + a l2)^(n) X) = sum_j a^j Gamma(l1^(n-j) l2^(j) X), n = d - deg X."""
    domain = phi.domain
    a = domain.convert(a)
    n = phi.d - X.degree
    if n < 0:
        raise ValueError("X has too large a degree")
    combined = ell1 + ell2.scale(a)
    lhs = gamma_coordinate(phi, divided_mul(divided_power(combined, n), X))
    rhs = Scalar(domain, domain.zero)
    weight = domain.one
    for j in range(n + 1):
        Y = divided_mul(divided_mul(divided_power(ell1, n - j), divided_power(ell2, j)), X)
        rhs = rhs + Scalar(domain, weight * gamma_coordinate(phi, Y).value)
        weight = weight * a
    return lhs, rhs
