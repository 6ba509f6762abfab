"""Macaulay inverse systems of socle degree three."""
import logging
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from src.coeffring import DomainKind, DomainSpec
from src.gamma import gamma_is_zero, power_determinant
from src.polyspace import DividedElem, Space, SymElem, contract, monomials, sym_mul

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)


def _domain_matrix(domain: DomainSpec, rows: Sequence[Sequence[Any]], ncols: int) -> DomainMatrix:
    dm = DomainMatrix([list(row) for row in rows], (len(rows), ncols), domain.K)
    return dm if domain.is_field else dm.to_field()


def matrix_rank(domain: DomainSpec, rows: Sequence[Sequence[Any]], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    _, pivots = _domain_matrix(domain, rows, ncols).rref()
    return len(pivots)


def kernel_basis(domain: DomainSpec, rows: Sequence[Sequence[Any]], ncols: int) -> List[List[Any]]:
    """Basis of {v : rows . v = 0}, one vector per free column of the reduced echelon form."""
    if not domain.is_field:
        raise ValueError("kernels need a field domain")
    if not rows:
        return [[domain.one if i == j else domain.zero for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = _domain_matrix(domain, rows, ncols).rref()
    reduced = reduced.to_list()
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vector = [domain.zero] * ncols
        vector[free] = domain.one
        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row][free]
        basis.append(vector)
    return basis


@dataclass(frozen=True)
class InverseSystem:
    """A nonzero cubic phi in D_3 U*; the algebra is Sym U / ann(phi)."""
    phi: DividedElem

    def __post_init__(self):
        if self.phi.space != Space.DUAL:
            raise ValueError("phi must be a dual divided element")
        if self.phi.degree != 3:
            raise ValueError("phi must have degree 3")
        if self.phi.is_zero():
            raise ValueError("phi must be nonzero")

    @property
    def d(self) -> int:
        return self.phi.d

    @property
    def domain(self) -> DomainSpec:
        return self.phi.domain


@dataclass
class ClassificationRecord:
    embedding_dim: int
    hilbert: List[int]
    gamma_zero: bool
    wlp_witness: Optional[SymElem] = None
    is_exception: bool = False
    gamma_witness: Optional[DividedElem] = None
    domain: str = ""
    d: int = 0

    def __post_init__(self):
        if self.hilbert != self.hilbert[::-1]:
            raise ValueError(f"hilbert function {self.hilbert} is not palindromic")
        if self.hilbert and self.hilbert[0] != 1:
            raise ValueError("hilbert function must start with 1")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain": self.domain,
            "d": self.d,
            "embeddingDim": self.embedding_dim,
            "hilbert": list(self.hilbert),
            "gammaZero": self.gamma_zero,
            "gammaWitness": list(self.gamma_witness.items()[0][0]) if self.gamma_witness else None,
            "wlpWitness": str(self.wlp_witness) if self.wlp_witness is not None else None,
            "isException": self.is_exception,
        }


def _contraction_rows(S: InverseSystem, i: int, multiplier: Optional[SymElem] = None):
    """Matrix of v -> (multiplier v) . phi on the monomials of Sym_i U."""
    d = S.d
    shift = multiplier.degree if multiplier is not None else 0
    targets = monomials(d, 3 - i - shift)
    columns = []
    for m in monomials(d, i):
        u = SymElem.monomial(S.domain, m)
        if multiplier is not None:
            u = sym_mul(multiplier, u)
        image = contract(u, S.phi)
        columns.append([image.coeff(t) for t in targets])
    rows = [[column[r] for column in columns] for r in range(len(targets))]
    return rows, len(columns)


def annihilator_component(S: InverseSystem, i: int) -> List[SymElem]:
    """A basis of the degree-i part of ann(phi)."""
    if not 0 <= i <= 3:
        raise ValueError("i must be in 0..3")
    rows, ncols = _contraction_rows(S, i)
    basis = []
    for vector in kernel_basis(S.domain, rows, ncols):
        terms = {m: c for m, c in zip(monomials(S.d, i), vector)}
        basis.append(SymElem(S.domain, S.d, i, terms))
    return basis


def hilbert_function(S: InverseSystem) -> List[int]:
    values = []
    for i in range(4):
        rows, ncols = _contraction_rows(S, i)
        values.append(matrix_rank(S.domain, rows, ncols))
    return values


def embedding_dimension(S: InverseSystem) -> int:
    """Rank of ell -> ell . phi on U."""
    rows, ncols = _contraction_rows(S, 1)
    return matrix_rank(S.domain, rows, ncols)


def multiplication_rank(S: InverseSystem, ell: SymElem, i: int) -> int:
    """Rank of multiplication by ell from A_i to A_(i+1)."""
    if not 0 <= i <= 2:
        raise ValueError("i must be in 0..2")
    if ell.degree != 1:
        raise ValueError("ell must be linear")
    rows, ncols = _contraction_rows(S, i, ell)
    return matrix_rank(S.domain, rows, ncols)


def is_weak_lefschetz(S: InverseSystem, ell: SymElem, hilbert: Optional[List[int]] = None) -> bool:
    hilbert = hilbert or hilbert_function(S)
    for i in range(3):
        if multiplication_rank(S, ell, i) != min(hilbert[i], hilbert[i + 1]):
            return False
    return True


def projective_points(p: int, d: int) -> Iterator[List[int]]:
    """Nonzero vectors of GF(p)^d with leading coordinate 1, in lex order."""
    for lead in range(d):
        for tail in product(range(p), repeat=d - lead - 1):
            yield [0] * lead + [1] + list(tail)


def small_height_points(d: int, height: int) -> Iterator[List[int]]:
    """Primitive integer directions by increasing height, first nonzero entry positive."""
    for h in range(1, height + 1):
        values = [0]
        for k in range(1, h + 1):
            values += [k, -k]
        for vector in product(values, repeat=d):
            if max(abs(v) for v in vector) != h:
                continue
            leading = next(v for v in vector if v)
            if leading < 0 or gcd(*vector) != 1:
                continue
            yield list(vector)


def wlp_witness(S: InverseSystem, height: int = 3, budget: int = 20000) -> Optional[SymElem]:
    """First linear form with the weak Lefschetz property, or None.

    Finite fields are searched exhaustively over projective points; the rationals
    by a bounded small-height search.
    """
    domain = S.domain
    if domain.kind == DomainKind.PARAM_RING:
        raise ValueError("witness search needs a field domain")
    if domain.kind == DomainKind.PRIME_FIELD:
        candidates = projective_points(domain.p, S.d)
    else:
        candidates = small_height_points(S.d, height)
    hilbert = hilbert_function(S)
    full = hilbert[1] == S.d
    for count, coefficients in enumerate(candidates):
        if domain.kind != DomainKind.PRIME_FIELD and count >= budget:
            logger.info(f"witness search stopped after {budget} candidates")
            break
        ell = SymElem.linear(domain, coefficients)
        if full and power_determinant(S.phi, ell).is_zero():
            continue
        if is_weak_lefschetz(S, ell, hilbert):
            return ell
    return None


def is_exceptional(domain: DomainSpec, d: int, embedding_dim: int, gamma_zero: bool) -> bool:
    """Characteristic two, full embedding dimension and Gamma identically zero."""
    return domain.characteristic == 2 and embedding_dim == d and gamma_zero


def classify(S: InverseSystem, height: int = 3, budget: int = 20000) -> ClassificationRecord:
    embedding_dim = embedding_dimension(S)
    zero, witness = gamma_is_zero(S.phi)
    record = ClassificationRecord(
        embedding_dim=embedding_dim,
        hilbert=hilbert_function(S),
        gamma_zero=zero,
        wlp_witness=wlp_witness(S, height, budget),
        is_exception=S.d in (3, 4) and is_exceptional(S.domain, S.d, embedding_dim, zero),
        gamma_witness=witness,
        domain=str(S.domain),
        d=S.d,
    )
    logger.info(f"classified {S.phi}: embdim={record.embedding_dim} gammaZero={record.gamma_zero}")
    return record
