"""Registry of closed-form Gamma values and polynomial identities.

Each case is evaluated in a ``CaseContext``: either the integer polynomial ring on the
case parameters, or a random point over a small prime field. Parameters named in a case's
constraints are set to zero.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from random import Random
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.matrices import DomainMatrix

from src.coeffring import DomainSpec, parse_sympy
from src.gamma import gamma_coordinate
from src.polyspace import DividedElem, Space, SymElem, contract, monomials, unit_vector

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)

Exponent = Tuple[int, ...]
Template = Sequence[Tuple[Exponent, Any]]


class Family(str, Enum):
    GAMMA_FORMULA = "GAMMA_FORMULA"
    SYZYGY = "SYZYGY"
    PLUCKER = "PLUCKER"
    FACTORIZATION = "FACTORIZATION"


# Named polynomials used inside formulas.
DEFINITIONS = {
    "F0": "f*i-h^2",
    "F1": "f*g-2*e*h+i*l",
    "F2": "g*l-e^2",
    "F3": "i*m-f*h",
    "F4": "g*m-2*e*f+h*l",
    "F5": "h*m-f^2",
    "F6": "d*e^2-d^2*f+f*g*j-2*e*h*j+2*d*h*k-i*k^2-d*g*l+i*j*l",
    "F7": "g*j*l-e^2*j+2*d*e*k-g*k^2-d^2*l",
    "F8": "g*j*m-2*e*f*j+e^2*k+2*d*f*k-h*k^2+h*j*l-g*k*l-d^2*m",
    "G0": "f*g-e*h",
    "G1": "g*h-e*i",
    "G2": "h^2-f*i",
    "G3": "g*k-d*e",
    "G4": "h*k-d*f",
    "G5": "i*k-d*h",
    "G6": "g*l-e^2",
    "G7": "h*l-e*f",
    "G8": "i*l-e*h",
    "G9": "d*l-e*k",
    "G10": "g*m-e*f",
    "G11": "h*m-f^2",
    "G12": "i*m-f*h",
    "G13": "d*m-f*k",
    "G14": "e*m-f*l",
    "I0": "-a*f^2*g-d^2*g*k-a*d*h*k+d*k*m^2+2*d*f*g*n+d*h*n^2-2*d*m*n*p+a*d*p^2",
    "DM2": "b*(g*i-h^2)-d*(d*i-e*h)+e*(d*h-e*g)",
}

LETTERS = tuple("abcdefghijklmnopt")


@lru_cache(maxsize=None)
def _definition_exprs():
    symbols = {name: Symbol(name) for name in LETTERS}
    return {Symbol(name): parse_sympy(text, symbols) for name, text in DEFINITIONS.items()}


@dataclass
class CaseContext:
    """Values for the parameters of one case, as raw elements of ``domain``."""
    domain: DomainSpec
    values: Dict[str, Any]

    @classmethod
    def symbolic(cls, params: Sequence[str], constraints: Sequence[str] = ()) -> "CaseContext":
        free = [name for name in params if name not in constraints]
        domain = DomainSpec.param_ring(*free)
        values = domain.gens()
        for name in constraints:
            values[name] = domain.zero
        return cls(domain, values)

    @classmethod
    def random_point(cls, params: Sequence[str], constraints: Sequence[str], rng: Random,
                     p: int = 7) -> "CaseContext":
        domain = DomainSpec.prime_field(p)
        values = {name: domain.convert(0 if name in constraints else rng.randrange(p)) for name in params}
        return cls(domain, values)

    def value(self, spec):
        if isinstance(spec, int):
            return self.domain.convert(spec)
        if spec not in self.values:
            raise KeyError(f"unknown parameter: {spec}")
        return self.values[spec]

    def evaluate(self, text: str):
        """Evaluate a formula, expanding the named definitions."""
        symbols = {name: Symbol(name) for name in list(self.values) + list(DEFINITIONS)}
        expr = parse_sympy(text, symbols).xreplace(_definition_exprs())
        K = self.domain.K
        point = {Symbol(name): K.to_sympy(v) for name, v in self.values.items()}
        return self.domain.from_sympy(expr.xreplace(point).expand())

    def phi(self, template: Template, d: int) -> DividedElem:
        terms: Dict[Exponent, Any] = {}
        for e, spec in template:
            terms[e] = terms.get(e, self.domain.zero) + self.value(spec)
        return DividedElem(self.domain, d, 3, terms)

    def matrix(self, rows: Sequence[Sequence[Any]]) -> List[List[Any]]:
        return [[self.value(spec) for spec in row] for row in rows]


Evaluator = Callable[[CaseContext], Any]


@dataclass(frozen=True)
class IdentityCase:
    case_id: str
    family: Family
    params: Tuple[str, ...]
    lhs: Evaluator
    rhs: Evaluator
    description: str
    constraints: Tuple[str, ...] = ()
    printed: Optional[str] = None
    printed_matches: bool = True
    note: str = ""
    plucker: Optional[Tuple[Any, Tuple[int, ...], Tuple[int, ...]]] = None

    def __post_init__(self):
        if not self.case_id:
            raise ValueError("case_id is required")
        unknown = set(self.constraints) - set(self.params)
        if unknown:
            raise ValueError(f"constraints name unknown parameters: {sorted(unknown)}")


def determinant(domain: DomainSpec, rows: Sequence[Sequence[Any]]):
    n = len(rows)
    if n == 0:
        return domain.one
    return DomainMatrix([list(row) for row in rows], (n, n), domain.K).det()


def minor(rows: Sequence[Sequence[Any]], drop_rows: Sequence[int], drop_cols: Sequence[int]):
    """Submatrix without the given 1-based rows and columns."""
    return [[v for j, v in enumerate(row, 1) if j not in drop_cols]
            for i, row in enumerate(rows, 1) if i not in drop_rows]


def columns(rows: Sequence[Sequence[Any]], picked: Sequence[int]):
    """Square submatrix on the given 1-based columns, in the given order."""
    return [[row[j - 1] for j in picked] for row in rows]


def plucker_sum(domain: DomainSpec, rows: Sequence[Sequence[Any]], a: Sequence[int],
                b: Sequence[int], signed: bool = True):
    """sum_i (-1)^i det Y(a, b_i) det Y(b without b_i); the signs are dropped when signed is False."""
    r = len(rows)
    if len(a) != r - 1 or len(b) != r + 1:
        raise ValueError(f"need {r - 1} and {r + 1} columns for {r} rows")
    width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows) or r > width:
        raise ValueError("Y must be a rectangular matrix with at least as many columns as rows")
    if any(not 1 <= j <= width for j in list(a) + list(b)):
        raise ValueError("column index out of range")
    total = domain.zero
    for i, picked in enumerate(b, 1):
        rest = [j for k, j in enumerate(b, 1) if k != i]
        term = determinant(domain, columns(rows, list(a) + [picked])) * determinant(domain, columns(rows, rest))
        total += -term if signed and i % 2 else term
    return total


# Templates: (exponent, coefficient) with the coefficient a parameter name or an int.
# Exponents are ordered x, y, z, w.
GENERIC_A = (
    ((3, 0, 0, 0), 1),
    ((1, 0, 2, 0), "a"), ((1, 0, 1, 1), "b"), ((1, 0, 0, 2), "c"),
    ((0, 1, 2, 0), "d"), ((0, 1, 1, 1), "e"), ((0, 1, 0, 2), "f"),
    ((0, 2, 1, 0), "g"), ((0, 2, 0, 1), "h"), ((0, 3, 0, 0), "i"),
    ((0, 0, 3, 0), "j"), ((0, 0, 2, 1), "k"), ((0, 0, 1, 2), "l"), ((0, 0, 0, 3), "m"),
)
PARAMS_A = tuple("abcdefghijklm")

SQUARE_BLOCK = (
    ((2, 1, 0, 0), 1),
    ((1, 0, 2, 0), "a"), ((1, 0, 1, 1), "b"), ((1, 0, 0, 2), "c"),
    ((1, 2, 0, 0), "d"), ((1, 1, 1, 0), "e"), ((1, 1, 0, 1), "f"),
    ((0, 2, 1, 0), "g"), ((0, 2, 0, 1), "h"), ((0, 1, 2, 0), "i"),
    ((0, 1, 1, 1), "j"), ((0, 1, 0, 2), "k"), ((0, 0, 2, 1), "l"), ((0, 0, 1, 2), "m"),
)
PARAMS_SQUARE = tuple("abcdefghijklm")

SQUARE_FULL = (
    ((2, 1, 0, 0), 1),
    ((1, 2, 0, 0), "d"), ((0, 2, 1, 0), "e"), ((0, 2, 0, 1), "f"),
    ((1, 0, 2, 0), "g"), ((0, 1, 2, 0), "h"), ((0, 0, 2, 1), "i"),
    ((0, 1, 0, 2), "k"), ((0, 0, 1, 2), "l"),
    ((1, 1, 1, 0), "m"), ((1, 1, 0, 1), "n"), ((0, 1, 1, 1), "p"),
)
PARAMS_SQUARE_FULL = tuple("defghiklmnp")

SQUARE_SCALED = (
    ((2, 1, 0, 0), "a"),
    ((1, 2, 0, 0), "d"), ((0, 2, 1, 0), "e"), ((0, 2, 0, 1), "f"),
    ((1, 0, 2, 0), "g"), ((0, 1, 2, 0), "h"), ((0, 0, 2, 1), "i"),
    ((0, 1, 0, 2), "k"),
    ((1, 1, 1, 0), "m"), ((1, 1, 0, 1), "n"), ((0, 1, 1, 1), "p"),
)
PARAMS_SQUARE_SCALED = tuple("adefghikmnp")

CUBE_RANK3 = (
    ((3, 0, 0, 0), "t"),
    ((1, 2, 0, 0), "a"), ((1, 1, 1, 0), "b"), ((1, 1, 0, 1), "c"),
    ((1, 0, 2, 0), "d"), ((1, 0, 1, 1), "e"), ((1, 0, 0, 2), "f"),
    ((0, 3, 0, 0), "g"), ((0, 2, 1, 0), "h"), ((0, 2, 0, 1), "i"), ((0, 1, 2, 0), "j"),
    ((0, 1, 1, 1), "k"), ((0, 1, 0, 2), "l"), ((0, 0, 3, 0), "m"), ((0, 0, 2, 1), "n"),
    ((0, 0, 1, 2), "o"), ((0, 0, 0, 3), "p"),
)
PARAMS_CUBE_RANK3 = tuple("abcdefghijklmnopt")

TERNARY_CUBE = (
    ((3, 0, 0), "a"), ((1, 2, 0), "d"), ((1, 1, 1), "e"), ((1, 0, 2), "f"),
    ((0, 3, 0), "g"), ((0, 2, 1), "h"), ((0, 1, 2), "i"), ((0, 0, 3), "j"),
)
PARAMS_TERNARY_CUBE = tuple("adefghij")

TERNARY_SQUARE = (
    ((2, 1, 0), "b"), ((1, 2, 0), "d"), ((1, 1, 1), "e"), ((1, 0, 2), "f"),
    ((0, 3, 0), "g"), ((0, 2, 1), "h"), ((0, 1, 2), "i"), ((0, 0, 3), "j"),
)
PARAMS_TERNARY_SQUARE = tuple("bdefghij")

# Pairing matrix of y against the scaled square form with g = i = 0.
SYMMETRIC_M = (
    ("a", "d", "m", "n"),
    ("d", 0, "e", "f"),
    ("m", "e", "h", "p"),
    ("n", "f", "p", "k"),
)
PARAMS_M = tuple("adefhkmnp")

SYMMETRIC_M2 = (
    ("b", "d", "e"),
    ("d", "g", "h"),
    ("e", "h", "i"),
)
BORDERED_M2 = (
    ("b", "d", "e", 0, 0, 1),
    ("d", "g", "h", 0, 1, 0),
    ("e", "h", "i", 1, 0, 0),
)
PARAMS_M2 = tuple("bdeghi")

ANTI_IDENTITY = tuple(tuple(1 if i + j == 3 else 0 for j in range(4)) for i in range(4))
BORDERED_M = tuple(row + anti for row, anti in zip(SYMMETRIC_M, ANTI_IDENTITY))

GENERIC_2X4 = (
    ("a", "b", "c", "d"),
    ("e", "f", "g", "h"),
)


def generic_name(e: Exponent) -> str:
    return "c" + "".join(str(k) for k in e)


def generic_template(d: int) -> Template:
    return tuple((e, generic_name(e)) for e in monomials(d, 3))


def gamma_of(template: Template, d: int, X: Exponent) -> Evaluator:
    def evaluate(ctx: CaseContext):
        phi = ctx.phi(template, d)
        return gamma_coordinate(phi, DividedElem.monomial(ctx.domain, X, space=Space.PRIMAL)).value
    return evaluate


def formula(text: str) -> Evaluator:
    def evaluate(ctx: CaseContext):
        return ctx.evaluate(text)
    return evaluate


def zero(ctx: CaseContext):
    return ctx.domain.zero


def wedge_sum(template: Template, d: int, terms: Sequence[Tuple[int, Sequence[str]]]) -> Evaluator:
    """sum of mult * det[rows l_a l_b phi], each row given as a two-digit 1-based string."""
    def evaluate(ctx: CaseContext):
        phi = ctx.phi(template, d)
        total = ctx.domain.zero
        for multiplicity, factors in terms:
            rows = []
            for pair in factors:
                e = [0] * d
                for digit in pair:
                    e[int(digit) - 1] += 1
                image = contract(SymElem.monomial(ctx.domain, e), phi)
                rows.append([image.coeff(unit_vector(d, k)) for k in range(d)])
            total += ctx.domain.convert(multiplicity) * determinant(ctx.domain, rows)
        return total
    return evaluate


def factored_gamma(d: int, theta: Exponent) -> Tuple[Evaluator, Evaluator]:
    """Gamma of x^(3) + phi' at x theta, and Gamma of phi' at theta one dimension down."""
    lower = generic_template(d - 1)
    full = (((3,) + (0,) * (d - 1), 1),) + tuple(((0,) + e, name) for e, name in lower)

    def lhs(ctx: CaseContext):
        phi = ctx.phi(full, d)
        X = DividedElem.monomial(ctx.domain, (1,) + tuple(theta), space=Space.PRIMAL)
        return gamma_coordinate(phi, X).value

    def rhs(ctx: CaseContext):
        phi = ctx.phi(lower, d - 1)
        return gamma_coordinate(phi, DividedElem.monomial(ctx.domain, theta, space=Space.PRIMAL)).value
    return lhs, rhs


def det_of(rows, drop_rows=(), drop_cols=()) -> Evaluator:
    def evaluate(ctx: CaseContext):
        return determinant(ctx.domain, minor(ctx.matrix(rows), drop_rows, drop_cols))
    return evaluate


def desnanot(k: int) -> Tuple[Evaluator, Evaluator]:
    """(det M[2;k])^2 against det M[2;2] det M[k;k] - det M[2,k;2,k] det M for symmetric M."""
    def lhs(ctx: CaseContext):
        return det_of(SYMMETRIC_M, (2,), (k,))(ctx) ** 2

    def rhs(ctx: CaseContext):
        pair = tuple(sorted({2, k}))
        return (det_of(SYMMETRIC_M, (2,), (2,))(ctx) * det_of(SYMMETRIC_M, (k,), (k,))(ctx)
                - det_of(SYMMETRIC_M, pair, pair)(ctx) * det_of(SYMMETRIC_M)(ctx))
    return lhs, rhs


def plucker_case(rows, a: Sequence[int], b: Sequence[int]) -> Evaluator:
    def evaluate(ctx: CaseContext):
        return plucker_sum(ctx.domain, ctx.matrix(rows), a, b)
    return evaluate


def _gamma_case(case_id, template, params, d, X, rhs, description, constraints=(), printed=None,
                printed_matches=True, note="") -> IdentityCase:
    return IdentityCase(
        case_id=case_id,
        family=Family.GAMMA_FORMULA,
        params=tuple(params),
        lhs=gamma_of(template, d, X),
        rhs=formula(rhs),
        description=description,
        constraints=tuple(constraints),
        printed=printed or rhs,
        printed_matches=printed_matches,
        note=note,
    )


def _syzygy(case_id, params, lhs, rhs, description) -> IdentityCase:
    return IdentityCase(case_id, Family.SYZYGY, tuple(params), formula(lhs), formula(rhs),
                        description, printed=f"{lhs} = {rhs}")


def _expansion(case_id, d, X, terms, description) -> IdentityCase:
    template = generic_template(d)
    return IdentityCase(
        case_id=case_id,
        family=Family.GAMMA_FORMULA,
        params=tuple(name for _, name in template),
        lhs=gamma_of(template, d, X),
        rhs=wedge_sum(template, d, terms),
        description=description,
    )


def _build() -> List[IdentityCase]:
    cases: List[IdentityCase] = []

    # Expansions of Gamma on products of basis vectors, generic cubic.
    cases += [
        _expansion("EX_D3_CUBE", 3, (3, 0, 0), [(1, ["11", "12", "13"])], "x^(3), ternary generic"),
        _expansion("EX_D3_SQUARE", 3, (2, 1, 0), [(1, ["11", "22", "13"]), (1, ["11", "12", "23"])],
                   "x^(2)y, ternary generic"),
        _expansion("EX_D3_TRIPLE", 3, (1, 1, 1), [(1, ["11", "22", "33"]), (2, ["12", "23", "13"])],
                   "xyz, ternary generic"),
        _expansion("EX_D4_FOURTH", 4, (4, 0, 0, 0), [(1, ["11", "12", "13", "14"])], "x^(4), generic"),
        _expansion("EX_D4_CUBE", 4, (3, 1, 0, 0),
                   [(1, ["11", "22", "13", "14"]), (1, ["11", "12", "23", "14"]), (1, ["11", "12", "13", "24"])],
                   "x^(3)y, generic"),
        _expansion("EX_D4_TWO_SQUARES", 4, (2, 2, 0, 0),
                   [(1, ["11", "12", "23", "24"]), (1, ["11", "22", "13", "24"]),
                    (1, ["11", "22", "23", "14"]), (1, ["12", "22", "13", "14"])],
                   "x^(2)y^(2), generic"),
        _expansion("EX_D4_SQUARE", 4, (2, 1, 1, 0),
                   [(1, ["11", "12", "23", "34"]), (1, ["11", "12", "33", "24"]), (1, ["11", "22", "13", "34"]),
                    (1, ["11", "23", "13", "24"]), (1, ["11", "22", "33", "14"]), (2, ["12", "23", "13", "14"])],
                   "x^(2)yz, generic"),
        _expansion("EX_D4_ALL", 4, (1, 1, 1, 1),
                   [(1, ["11", "22", "33", "44"]), (2, ["11", "23", "34", "24"]), (2, ["13", "22", "34", "14"]),
                    (2, ["12", "24", "33", "14"]), (2, ["12", "23", "13", "44"])],
                   "xyzw, generic"),
    ]

    # Cube plus a generic remainder.
    cases += [
        _gamma_case("CUBE_X3Y", GENERIC_A, PARAMS_A, 4, (3, 1, 0, 0), "i*(a*c-b^2)", "x^(3)y, cube form"),
        _gamma_case("CUBE_X3Z", GENERIC_A, PARAMS_A, 4, (3, 0, 1, 0), "g*(a*c-b^2)", "x^(3)z, cube form"),
        _gamma_case("CUBE_X3W", GENERIC_A, PARAMS_A, 4, (3, 0, 0, 1), "h*(a*c-b^2)", "x^(3)w, cube form"),
        _gamma_case("CUBE_X2Z2", GENERIC_A, PARAMS_A, 4, (2, 0, 2, 0), "-c*d^2+2*b*d*e-a*e^2",
                    "x^(2)z^(2), cube form without y^(2) terms", constraints="ghi"),
        _gamma_case("CUBE_Z4", GENERIC_A, PARAMS_A, 4, (0, 0, 4, 0), "(a*e-b*d)^2",
                    "z^(4), cube form without y^(2) terms", constraints="ghi"),
        _syzygy("CUBE_COMBINATION", "abcde", "a*(-c*d^2+2*b*d*e-a*e^2)+(a*e-b*d)^2", "d^2*(b^2-a*c)",
                "combination of the two values above"),
    ]

    reduced = "dghi"
    cases += [
        _gamma_case("CALC_XZ3", GENERIC_A, PARAMS_A, 4, (1, 0, 3, 0), "-e^2*j", "xz^(3)", reduced),
        _gamma_case("CALC_XYZW", GENERIC_A, PARAMS_A, 4, (1, 1, 1, 1), "2*e^3", "xyzw", reduced),
        _gamma_case("CALC_XZ2W", GENERIC_A, PARAMS_A, 4, (1, 0, 2, 1), "e^2*k-2*e*f*j", "xz^(2)w", reduced),
        _gamma_case("CALC_X2W2", GENERIC_A, PARAMS_A, 4, (2, 0, 0, 2), "-c*e^2+2*b*e*f-a*f^2", "x^(2)w^(2)",
                    reduced),
        _gamma_case("CALC_XYW2", GENERIC_A, PARAMS_A, 4, (1, 1, 0, 2), "e^2*f", "xyw^(2)", reduced),
        _gamma_case("CALC_XZW2", GENERIC_A, PARAMS_A, 4, (1, 0, 1, 2), "e^2*l-j*f^2", "xzw^(2)", reduced),
        _gamma_case("CALC_Z2W2", GENERIC_A, PARAMS_A, 4, (0, 0, 2, 2), "-2*a*c*e^2+2*a*b*e*f+a^2*f^2",
                    "z^(2)w^(2)", reduced),
        _gamma_case("CALC_XW3", GENERIC_A, PARAMS_A, 4, (1, 0, 0, 3), "-f^2*k+2*e*f*l-e^2*m", "xw^(3)", reduced),
        _gamma_case("CALC_W4", GENERIC_A, PARAMS_A, 4, (0, 0, 0, 4), "(b*f-c*e)^2", "w^(4)", reduced),
    ]

    diagonal = "bc"
    for case_id, X, rhs in (
        ("DIAG_X2Y2", (2, 2, 0, 0), "a*F0"),
        ("DIAG_X2YZ", (2, 1, 1, 0), "a*F1"),
        ("DIAG_X2Z2", (2, 0, 2, 0), "a*F2"),
        ("DIAG_X2YW", (2, 1, 0, 1), "a*F3"),
        ("DIAG_X2ZW", (2, 0, 1, 1), "a*F4"),
        ("DIAG_X2W2", (2, 0, 0, 2), "a*F5"),
        ("DIAG_XYZ2", (1, 1, 2, 0), "F6"),
        ("DIAG_XZ3", (1, 0, 3, 0), "F7"),
        ("DIAG_XZ2W", (1, 0, 2, 1), "F8"),
    ):
        cases.append(_gamma_case(case_id, GENERIC_A, PARAMS_A, 4, X, rhs, f"{X}, diagonal block", diagonal))

    syzygy_params = tuple("defghijklm")
    for case_id, lhs, rhs in (
        ("G0_SQ", "G0^2", "-g*l*F0+f*g*F1-h^2*F2"),
        ("G1_SQ", "G1^2", "-g^2*F0+g*i*F1-i^2*F2"),
        ("G2", "G2", "-F0"),
        ("G3_SQ", "G3^2", "-d^2*F2-g*(F7-j*F2)"),
        ("G4_SQ", "G4^2", "-k^2*F0+f*(-d*F2+j*F1-F6)"),
        ("G5_SQ", "G5^2", "-d^2*F0+i*(-d*F2+j*F1-F6)"),
        ("G6", "G6", "F2"),
        ("G7_SQ", "G7^2", "-f^2*F2+h*l*F4-g*l*F5"),
        ("G8_SQ", "G8^2", "-g*l*F0+i*l*F1-h^2*F2"),
        ("G9_SQ", "G9^2", "-k^2*F2-l*(F7-j*F2)"),
        ("G10_SQ", "G10^2", "-f^2*F2+g*m*F4-g*l*F5"),
        ("G11", "G11", "F5"),
        ("G12", "G12", "F3"),
        ("G13_SQ", "G13^2", "-k^2*F5-m*(F8-j*F4+k*F2)"),
        ("G14_SQ", "G14^2", "-m^2*F2+l*m*F4-l^2*F5"),
    ):
        cases.append(_syzygy(case_id, syzygy_params, lhs, rhs, f"{lhs} in terms of the F values"))

    cases += [
        _gamma_case("SQUARE_X4", SQUARE_BLOCK, PARAMS_SQUARE, 4, (4, 0, 0, 0), "b^2-a*c",
                    "x^(4), square times linear with a (z, w) block", printed="a*c-b^2", printed_matches=False,
                    note="the printed value has the opposite sign"),
        _gamma_case("SQUARE_X2W2", SQUARE_FULL, PARAMS_SQUARE_FULL, 4, (2, 0, 0, 2), "l^2",
                    "x^(2)w^(2), square times linear"),
        _gamma_case("SCALED_X3Y", SQUARE_SCALED, PARAMS_SQUARE_SCALED, 4, (3, 1, 0, 0), "a*g*(n^2-a*k)",
                    "x^(3)y, scaled square"),
        _gamma_case("SCALED_X2Z2", SQUARE_SCALED, PARAMS_SQUARE_SCALED, 4, (2, 0, 2, 0), "(a*i-g*n)^2",
                    "x^(2)z^(2), scaled square"),
        _gamma_case("SCALED_Z4", SQUARE_SCALED, PARAMS_SQUARE_SCALED, 4, (0, 0, 4, 0), "(i*m-g*p)^2",
                    "z^(4), scaled square"),
        _gamma_case("SCALED_Z2W2", SQUARE_SCALED, PARAMS_SQUARE_SCALED, 4, (0, 0, 2, 2), "(g*k-i*n)^2",
                    "z^(2)w^(2), scaled square"),
        _gamma_case("SCALED_XY3", SQUARE_SCALED, PARAMS_SQUARE_SCALED, 4, (1, 3, 0, 0), "I0",
                    "xy^(3), scaled square"),
        _syzygy("SCALED_COMBINATION", PARAMS_SQUARE_SCALED,
                "-g*n^2*I0+(-d^2*g^2*k+2*d*f*g^2*n-d*i*m^2*n+d*g*h*n^2)*(n^2-a*k)"
                "+(-d*k*m^2*n+d*m*n^2*p)*(a*i-g*n)+(d*m*n^3-a*d*n^2*p)*(i*m-g*p)",
                "a*g^2*(d*k-f*n)^2", "combination of the scaled square values"),
        _gamma_case("NO_XZ2_X2Z2", SQUARE_SCALED, PARAMS_SQUARE_SCALED, 4, (2, 0, 2, 0), "a^2*i^2",
                    "x^(2)z^(2), scaled square without xz^(2)", constraints="g"),
    ]

    no_z2 = ("g", "i")
    cases += [
        IdentityCase("PENCIL_X2Y2", Family.GAMMA_FORMULA, PARAMS_SQUARE_SCALED,
                     gamma_of(SQUARE_SCALED, 4, (2, 2, 0, 0)),
                     lambda ctx: -ctx.value("a") * det_of(SYMMETRIC_M, (2,), (2,))(ctx),
                     "x^(2)y^(2), scaled square without z^(2) terms", constraints=no_z2,
                     printed="-a*det M[2;2]"),
        IdentityCase("PENCIL_Y4", Family.GAMMA_FORMULA, PARAMS_SQUARE_SCALED,
                     gamma_of(SQUARE_SCALED, 4, (0, 4, 0, 0)), det_of(SYMMETRIC_M),
                     "y^(4), scaled square without z^(2) terms", constraints=no_z2, printed="det M"),
    ]
    for k in (1, 3, 4):
        lhs, rhs = desnanot(k)
        cases.append(IdentityCase(f"MINORS_2{k}", Family.SYZYGY, PARAMS_M, lhs, rhs,
                                  f"(det M[2;{k}])^2 through complementary minors",
                                  printed=f"(det M[2;{k}])^2"))

    cases.append(_gamma_case("RANK3_X4", CUBE_RANK3, PARAMS_CUBE_RANK3, 4, (4, 0, 0, 0),
                             "t*(a*(d*f-e^2)-b*(b*f-c*e)+c*(b*e-c*d))",
                             "x^(4), cube with a rank three block"))
    for theta in ((3, 0, 0), (2, 1, 0), (1, 1, 1), (0, 2, 1)):
        lhs, rhs = factored_gamma(4, theta)
        name = "".join(v + (str(k) if k > 1 else "") for v, k in zip("yzw", theta) if k)
        cases.append(IdentityCase(f"FACTOR_{name.upper()}", Family.FACTORIZATION,
                                  tuple(name for _, name in generic_template(3)), lhs, rhs,
                                  f"x times {theta} splits off the cube"))

    cases += [
        _gamma_case("TERNARY_X3", TERNARY_CUBE, PARAMS_TERNARY_CUBE, 3, (3, 0, 0), "a*(d*f-e^2)",
                    "x^(3), ternary cube"),
        _gamma_case("TERNARY_Y3", TERNARY_CUBE, PARAMS_TERNARY_CUBE, 3, (0, 3, 0), "-d^2*i",
                    "y^(3), ternary cube without xz", constraints="ef"),
        _gamma_case("TERNARY_X2Z", TERNARY_CUBE, PARAMS_TERNARY_CUBE, 3, (2, 0, 1), "a*d*j",
                    "x^(2)z, ternary cube without xz", constraints="ef"),
        _gamma_case("TERNARY_XY2", TERNARY_CUBE, PARAMS_TERNARY_CUBE, 3, (1, 2, 0), "a*(g*i-h^2)",
                    "xy^(2), ternary cube without xz", constraints="ef"),
        _gamma_case("TERNARY_XZ2", TERNARY_CUBE, PARAMS_TERNARY_CUBE, 3, (1, 0, 2), "a*(h*j-i^2)",
                    "xz^(2), ternary cube without xz", constraints="ef"),
        _gamma_case("TERNARY_XYZ", TERNARY_CUBE, PARAMS_TERNARY_CUBE, 3, (1, 1, 1), "a*(g*j-h*i)",
                    "xyz, ternary cube without xz", constraints="ef"),
        _gamma_case("TERNARY_SQ_X3", TERNARY_SQUARE, PARAMS_TERNARY_SQUARE, 3, (3, 0, 0), "-b^2*f",
                    "x^(3), ternary square"),
        _gamma_case("TERNARY_SQ_X2Z", TERNARY_SQUARE, PARAMS_TERNARY_SQUARE, 3, (2, 0, 1), "-b^2*j",
                    "x^(2)z, ternary square"),
        _gamma_case("TERNARY_SQ_X2Y", TERNARY_SQUARE, PARAMS_TERNARY_SQUARE, 3, (2, 1, 0), "b*(e^2-b*i)",
                    "x^(2)y, ternary square without xz^(2)", constraints="f"),
        _gamma_case("TERNARY_SQ_Y3", TERNARY_SQUARE, PARAMS_TERNARY_SQUARE, 3, (0, 3, 0), "DM2",
                    "y^(3), ternary square without xz^(2)", constraints="f", printed="det M2"),
        _syzygy("TERNARY_MINORS_A", PARAMS_M2, "(d*i-e*h)^2+i*DM2-(g*i-h^2)*(b*i-e^2)", "0",
                "bordered minors, columns 2 and 3"),
        _syzygy("TERNARY_MINORS_B", PARAMS_M2, "(b*h-d*e)^2+b*DM2-(b*g-d^2)*(b*i-e^2)", "0",
                "bordered minors, columns 1 and 2"),
    ]

    for case_id, rows, params, a, b, description in (
        ("PLUCKER_2X4", GENERIC_2X4, "abcdefgh", (1,), (2, 3, 4), "three-term relation"),
        ("PLUCKER_BORDER_234", BORDERED_M, PARAMS_M, (2, 3, 4), (1, 3, 4, 7, 8), "[M|J], first minors identity"),
        ("PLUCKER_BORDER_124", BORDERED_M, PARAMS_M, (1, 2, 4), (1, 3, 4, 6, 7), "[M|J], second minors identity"),
        ("PLUCKER_BORDER_123", BORDERED_M, PARAMS_M, (1, 2, 3), (1, 3, 4, 5, 7), "[M|J], third minors identity"),
        ("PLUCKER_TERNARY_23", BORDERED_M2, PARAMS_M2, (2, 3), (1, 3, 5, 6), "bordered 3x6, columns 2 and 3"),
        ("PLUCKER_TERNARY_12", BORDERED_M2, PARAMS_M2, (1, 2), (1, 3, 4, 5), "bordered 3x6, columns 1 and 2"),
    ):
        cases.append(IdentityCase(case_id, Family.PLUCKER, tuple(params), plucker_case(rows, a, b), zero,
                                  description, printed="sum of products of maximal minors = 0",
                                  plucker=(rows, tuple(a), tuple(b))))
    return cases


@lru_cache(maxsize=1)
def registry() -> Dict[str, IdentityCase]:
    cases = _build()
    table = {case.case_id: case for case in cases}
    if len(table) != len(cases):
        raise ValueError("duplicate case ids in the identity registry")
    return table


def cases_for(families: Sequence[Family]) -> List[IdentityCase]:
    return [case for case in registry().values() if case.family in families]
