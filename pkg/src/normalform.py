"""Constructive normal forms of cubic inverse systems.

Every nonzero cubic over a field is brought, by a change of basis and a unit scalar, to one
of three shapes:

* CUBIC: ``x1*^(3) + x1* phi20 + phi30``
* SQUARE_TIMES_LINEAR: ``x1*^(2) x2* + x1* phi20 + phi30``
* CHAR2_SQUAREFREE: a sum of distinct triples, characteristic two only

where ``phi20`` and ``phi30`` do not involve ``x1*``. Ties are always broken by the lowest
index or the lex-first nonzero coefficient, so the reduction is deterministic.
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from src.apolarity import (
    InverseSystem,
    embedding_dimension,
    is_exceptional,
    kernel_basis,
    matrix_rank,
)
from src.coeffring import DomainSpec, Scalar, unit_inverse
from src.gamma import gamma_is_zero
from src.polyspace import BasisChange, DividedElem, Space, SymElem, apply_basis_change

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)


class NotDegenerate(ValueError):
    """Raised when a binary quadratic is not a perfect square."""


class Form(str, Enum):
    CUBIC = "CUBIC"
    SQUARE_TIMES_LINEAR = "SQUARE_TIMES_LINEAR"
    CHAR2_SQUAREFREE = "CHAR2_SQUAREFREE"


@dataclass(frozen=True)
class NormalFormReport:
    form: Form
    alpha: Scalar
    change: BasisChange
    phi20: DividedElem
    phi30: DividedElem
    normalized: DividedElem
    r: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "form": self.form.value,
            "alpha": str(self.alpha),
            "change": self.change.to_lists(),
            "r": self.r,
            "phi20": self.phi20.to_dict(),
            "phi30": self.phi30.to_dict(),
            "normalized": str(self.normalized),
        }


def _unwrap(phi: Union[DividedElem, InverseSystem]) -> DividedElem:
    if isinstance(phi, InverseSystem):
        return phi.phi
    InverseSystem(phi)
    return phi


def _substitution(domain: DomainSpec, d: int, column: int, entries: Dict[int, Any]) -> BasisChange:
    """Dual substitution rewriting only x_column*: old x_column* -> sum entries[j] new_j*."""
    rows = [[domain.one if i == j else domain.zero for j in range(d)] for i in range(d)]
    rows[column][column] = domain.zero
    for j, c in entries.items():
        rows[j][column] = domain.convert(c)
    return BasisChange.from_dual_substitution(domain, rows)


def _split(final: DividedElem) -> Tuple[DividedElem, DividedElem]:
    """phi20 and phi30 of a normalized cubic, both free of x1*."""
    phi20, phi30 = {}, {}
    for e, c in final.terms.items():
        if e[0] == 1:
            phi20[(0,) + e[1:]] = c
        elif e[0] == 0:
            phi30[e] = c
    return (DividedElem(final.domain, final.d, 2, phi20),
            DividedElem(final.domain, final.d, 3, phi30))


def _report(phi: DividedElem, form: Form, alpha: Scalar, change: BasisChange,
            r: Optional[int] = None) -> NormalFormReport:
    final = apply_basis_change(phi, change).scale(alpha.value)
    phi20, phi30 = _split(final)
    logger.debug(f"normal form {form.value} of {phi}: {final}")
    return NormalFormReport(form, alpha, change, phi20, phi30, final, r)


def _lower(phi20: DividedElem) -> DividedElem:
    """Drop the unused first variable of phi20."""
    return DividedElem(phi20.domain, phi20.d - 1, 2, {e[1:]: c for e, c in phi20.terms.items()})


def _cubic_form(phi: DividedElem, i: int) -> NormalFormReport:
    domain, d = phi.domain, phi.d
    change = BasisChange.identity(domain, d) if i == 0 else BasisChange.swap(domain, d, 0, i)
    psi = apply_basis_change(phi, change)
    cube = (3,) + (0,) * (d - 1)
    alpha = unit_inverse(psi.scalar_at(cube))
    psi = psi.scale(alpha.value)
    # x1* -> X* - phi10, where phi10 = sum_j coeff(x1*^(2) xj*) xj*
    entries = {0: domain.one}
    for j in range(1, d):
        e = [0] * d
        e[0], e[j] = 2, 1
        c = psi.coeff(e)
        if not domain.is_zero(c):
            entries[j] = -c
    if len(entries) > 1:
        change = change.then(_substitution(domain, d, 0, entries))
    r = 0
    if d > 1:
        final = apply_basis_change(phi, change).scale(alpha.value)
        phi20, _ = _split(final)
        r, reduction = rank_reduce(_lower(phi20))
        change = change.then(reduction.block(1, d))
    return _report(phi, Form.CUBIC, alpha, change, r)


def _square_form(phi: DividedElem, i: int, j: int) -> NormalFormReport:
    domain, d = phi.domain, phi.d
    rest = [k for k in range(d) if k not in (i, j)]
    images = [0] * d
    images[i], images[j] = 0, 1
    for position, k in enumerate(rest, start=2):
        images[k] = position
    change = BasisChange.permutation(domain, images)
    psi = apply_basis_change(phi, change)
    coefficients = []
    for k in range(d):
        e = [0] * d
        e[0] += 2
        e[k] += 1
        coefficients.append(psi.coeff(e) if k else domain.zero)
    # new x2* is the old phi10: old x2* = (new x2* - sum_k c_k xk*) / c_2
    pivot = domain.inverse(coefficients[1])
    entries = {1: pivot}
    for k in range(2, d):
        if not domain.is_zero(coefficients[k]):
            entries[k] = -coefficients[k] * pivot
    change = change.then(_substitution(domain, d, 1, entries))
    return _report(phi, Form.SQUARE_TIMES_LINEAR, Scalar.of(domain, 1), change)


def _squarefree_triple(phi: DividedElem) -> Tuple[int, int, int]:
    e, _ = phi.items()[0]
    i, j, k = [index for index, v in enumerate(e) if v]
    return i, j, k


def standard_form(phi: Union[DividedElem, InverseSystem]) -> NormalFormReport:
    phi = _unwrap(phi)
    domain, d = phi.domain, phi.d
    if not domain.is_field:
        raise ValueError("normal forms need a field domain")
    for i in range(d):
        e = [0] * d
        e[i] = 3
        if not domain.is_zero(phi.coeff(e)):
            return _cubic_form(phi, i)
    for e, _ in phi.items():
        if 2 in e:
            return _square_form(phi, e.index(2), e.index(1))
    if domain.characteristic == 2:
        return _report(phi, Form.CHAR2_SQUAREFREE, Scalar.of(domain, 1), BasisChange.identity(domain, d))
    # x_j* -> y_j* + x_i* turns the triple x_i* x_j* x_k* into 2 x_i*^(2) x_k* + ...
    i, j, _ = _squarefree_triple(phi)
    first = _substitution(domain, d, j, {j: domain.one, i: domain.one})
    report = standard_form(apply_basis_change(phi, first))
    return replace(report, change=first.then(report.change))


def _pairing_rows(phi20: DividedElem) -> List[List[Any]]:
    d = phi20.d
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            e = [0] * d
            e[i] += 1
            e[j] += 1
            row.append(phi20.coeff(e))
        rows.append(row)
    return rows


def rank_reduce(phi20: DividedElem) -> Tuple[int, BasisChange]:
    """Rank r of ell -> ell phi20 and a change supporting phi20 on the first r variables."""
    if phi20.degree != 2 or phi20.space != Space.DUAL:
        raise ValueError("phi20 must be a dual quadratic")
    domain, d = phi20.domain, phi20.d
    rows = _pairing_rows(phi20)
    r = matrix_rank(domain, rows, d)
    if r == 0:
        return 0, BasisChange.identity(domain, d)
    kernel = kernel_basis(domain, rows, d)
    chosen: List[List[Any]] = []
    for k in range(d):
        if len(chosen) == r:
            break
        candidate = [domain.one if i == k else domain.zero for i in range(d)]
        if matrix_rank(domain, chosen + [candidate] + kernel, d) == len(chosen) + 1 + len(kernel):
            chosen.append(candidate)
    columns = chosen + kernel
    L = [[columns[c][i] for c in range(d)] for i in range(d)]
    return r, BasisChange.from_primal_basis(domain, L)


def complete_square(phi20: DividedElem) -> BasisChange:
    """Change of basis making a degenerate binary quadratic a multiple of z*^(2)."""
    if phi20.d != 2 or phi20.degree != 2:
        raise ValueError("phi20 must be a quadratic in two dual variables")
    domain = phi20.domain
    a, b, c = phi20.coeff((2, 0)), phi20.coeff((1, 1)), phi20.coeff((0, 2))
    if a * c != b * b:
        raise NotDegenerate(f"{phi20} is not a perfect square")
    if phi20.is_zero():
        return BasisChange.identity(domain, 2)
    if domain.is_zero(a):
        return BasisChange.swap(domain, 2, 0, 1)
    return _substitution(domain, 2, 0, {0: domain.one, 1: -b * domain.inverse(a)})


def detect_exception(S: Union[InverseSystem, DividedElem]) -> bool:
    S = S if isinstance(S, InverseSystem) else InverseSystem(S)
    if S.d not in (3, 4):
        raise ValueError(f"unsupported d: {S.d}")
    zero, _ = gamma_is_zero(S.phi)
    return is_exceptional(S.domain, S.d, embedding_dimension(S), zero)


@dataclass(frozen=True)
class CaseReport:
    """Which branch of the case analysis an inverse system falls into."""
    form: Form
    subcase: str
    change: BasisChange
    r: Optional[int] = None
    discriminant: Optional[Scalar] = None
    kernel_element: Optional[SymElem] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "form": self.form.value,
            "subcase": self.subcase,
            "r": self.r,
            "change": self.change.to_lists(),
            "discriminant": str(self.discriminant) if self.discriminant is not None else None,
            "kernelElement": str(self.kernel_element) if self.kernel_element is not None else None,
        }


def proof_case(S: Union[InverseSystem, DividedElem]) -> CaseReport:
    phi = _unwrap(S)
    report = standard_form(phi)
    d, domain = phi.d, phi.domain
    if report.form == Form.CUBIC:
        return CaseReport(report.form, f"rank-{report.r}", report.change, r=report.r)
    if report.form == Form.SQUARE_TIMES_LINEAR:
        if d != 4:
            return CaseReport(report.form, "square-times-linear", report.change)
        final = report.normalized
        a, b, c = final.coeff((1, 0, 2, 0)), final.coeff((1, 0, 1, 1)), final.coeff((1, 0, 0, 2))
        discriminant = Scalar(domain, b * b - a * c)
        if not discriminant.is_zero():
            return CaseReport(report.form, "nondegenerate-block", report.change, discriminant=discriminant)
        block = DividedElem(domain, 2, 2, {(2, 0): a, (1, 1): b, (0, 2): c})
        change = report.change.then(complete_square(block).block(2, 4))
        squared = apply_basis_change(phi, change)
        subcase = "no-square" if domain.is_zero(squared.coeff((1, 0, 2, 0))) else "square-present"
        return CaseReport(report.form, subcase, change, discriminant=discriminant)
    if d != 4:
        return CaseReport(report.form, "squarefree", report.change)
    coefficients = []
    for i in range(4):
        e = [1] * 4
        e[i] = 0
        coefficients.append(phi.coeff(e))
    ell = SymElem.linear(domain, coefficients)
    return CaseReport(report.form, "kernel-element", report.change, kernel_element=ell)
