"""Test inverse systems, Hilbert functions and Lefschetz elements."""
from src.apolarity import (
    ClassificationRecord,
    InverseSystem,
    annihilator_component,
    classify,
    embedding_dimension,
    hilbert_function,
    is_exceptional,
    is_weak_lefschetz,
    kernel_basis,
    matrix_rank,
    multiplication_rank,
    projective_points,
    small_height_points,
    wlp_witness,
)
from src.coeffring import DomainSpec
from src.polyspace import DividedElem, Space, SymElem, contract, monomials
from tests.utils import WlpTestCase


class LinearAlgebraTests(WlpTestCase):
    """Rank and kernel Unit Test ."""

    def test_rank(self):
        rows = [[self.GF2.convert(v) for v in row] for row in ([1, 1, 0], [0, 1, 1], [1, 0, 1])]
        self.assertEqual(matrix_rank(self.GF2, rows, 3), 2)
        rows = [[self.GF3.convert(v) for v in row] for row in ([1, 1, 0], [0, 1, 1], [1, 0, 1])]
        self.assertEqual(matrix_rank(self.GF3, rows, 3), 3)
        self.assertEqual(matrix_rank(self.ZZ, [[2, 4], [1, 2]], 2), 1)
        self.assertEqual(matrix_rank(self.GF2, [], 3), 0)

    def test_kernel(self):
        rows = [[self.QQ.convert(v) for v in row] for row in ([1, 2, 3], [2, 4, 6])]
        basis = kernel_basis(self.QQ, rows, 3)
        self.assertEqual(len(basis), 2)
        for vector in basis:
            self.assertEqual(sum(a * b for a, b in zip(rows[0], vector)), self.QQ.zero)
        with self.assertRaises(ValueError):
            kernel_basis(self.ZZ, [[1, 2]], 2)


class InverseSystemTests(WlpTestCase):
    """InverseSystem Unit Test ."""

    def test_validation(self):
        with self.assertRaises(ValueError):
            InverseSystem(DividedElem.zero(self.GF2, 4, 3))
        with self.assertRaises(ValueError):
            InverseSystem(DividedElem.monomial(self.GF2, (2, 0, 0, 0)))
        with self.assertRaises(ValueError):
            InverseSystem(DividedElem.from_text("x*y*z", self.GF2, 3, space=Space.PRIMAL))

    def test_exception(self):
        S = InverseSystem(self.exception)
        self.assertEqual(hilbert_function(S), [1, 4, 4, 1])
        self.assertEqual(embedding_dimension(S), 4)
        quadrics = annihilator_component(S, 2)
        self.assertEqual(len(quadrics), 6)
        for u in quadrics:
            self.assertTrue(contract(u, self.exception).is_zero())
        basis_rows = [[u.coeff(m) for m in monomials(4, 2)] for u in quadrics]
        for text in ("x*y", "x*z", "x*w", "y^2", "z^2", "w^2"):
            u = SymElem.from_text(text, self.GF2, 4)
            rows = basis_rows + [[u.coeff(m) for m in monomials(4, 2)]]
            self.assertEqual(matrix_rank(self.GF2, rows, 10), 6, text)

    def test_exception_has_no_lefschetz_element(self):
        S = InverseSystem(self.exception)
        points = list(projective_points(2, 4))
        self.assertEqual(len(points), 15)
        for point in points:
            self.assertFalse(is_weak_lefschetz(S, SymElem.linear(self.GF2, point)), point)
        self.assertIsNone(wlp_witness(S))

    def test_exception_over_gf5(self):
        S = InverseSystem(self.cubic("x^(3) + y*z*w", self.GF5))
        ell = wlp_witness(S)
        self.assertIsNotNone(ell)
        self.assertTrue(is_weak_lefschetz(S, ell))
        self.assertFalse(classify(S).is_exception)

    def test_classify_exception(self):
        record = classify(InverseSystem(self.exception))
        self.assertTrue(record.is_exception)
        self.assertTrue(record.gamma_zero)
        self.assertIsNone(record.wlp_witness)
        self.assertEqual(record.to_dict(), {
            "domain": "GF(2)",
            "d": 4,
            "embeddingDim": 4,
            "hilbert": [1, 4, 4, 1],
            "gammaZero": True,
            "gammaWitness": None,
            "wlpWitness": None,
            "isException": True,
        })

    def test_four_cubes(self):
        S = InverseSystem(self.four_cubes)
        self.assertEqual(wlp_witness(S), SymElem.linear(self.GF2, [1, 1, 1, 1]))
        record = classify(S)
        self.assertFalse(record.gamma_zero)
        self.assertEqual(record.to_dict()["gammaWitness"], [1, 1, 1, 1])
        self.assertEqual(record.to_dict()["wlpWitness"], "x + y + z + w")

    def test_rational_search(self):
        S = InverseSystem(self.cubic("x^(3) + y^(3) + z^(3) + w^(3)", self.QQ))
        self.assertEqual(wlp_witness(S), SymElem.linear(self.QQ, [1, 1, 1, 1]))
        with self.assertRaises(ValueError):
            wlp_witness(InverseSystem(self.cubic("a*x^(3)", DomainSpec.param_ring("a"))))

    def test_small_embedding_dimension(self):
        S = InverseSystem(self.cubic("x^(3)", self.GF2))
        self.assertEqual(hilbert_function(S), [1, 1, 1, 1])
        self.assertEqual(embedding_dimension(S), 1)
        self.assertEqual(wlp_witness(S), SymElem.linear(self.GF2, [1, 0, 0, 0]))
        self.assertFalse(classify(S).is_exception)

    def test_ternary_triple(self):
        S = InverseSystem(self.triple)
        self.assertEqual(hilbert_function(S), [1, 3, 3, 1])
        self.assertIsNone(wlp_witness(S))
        self.assertTrue(classify(S).is_exception)
        self.assertIsNotNone(wlp_witness(InverseSystem(self.cubic("x*y*z", self.GF3, d=3))))

    def test_multiplication_rank_bounds(self):
        S = InverseSystem(self.exception)
        ell = SymElem.linear(self.GF2, [1, 0, 0, 0])
        with self.assertRaises(ValueError):
            multiplication_rank(S, ell, 3)
        with self.assertRaises(ValueError):
            multiplication_rank(S, SymElem.from_text("x*y", self.GF2, 4), 0)

    def test_is_exceptional(self):
        self.assertTrue(is_exceptional(self.GF2, 4, 4, True))
        self.assertFalse(is_exceptional(self.GF3, 4, 4, True))
        self.assertFalse(is_exceptional(self.GF2, 4, 3, True))

    def test_record_validation(self):
        with self.assertRaises(ValueError):
            ClassificationRecord(embedding_dim=3, hilbert=[1, 3, 2, 1], gamma_zero=False)
        with self.assertRaises(ValueError):
            ClassificationRecord(embedding_dim=0, hilbert=[2, 2], gamma_zero=False)


class PointTests(WlpTestCase):
    """Candidate enumeration Unit Test ."""

    def test_projective_points(self):
        points = list(projective_points(3, 3))
        self.assertEqual(len(points), 13)
        self.assertEqual(points[0], [1, 0, 0])
        self.assertEqual(points[-1], [0, 0, 1])

    def test_small_height_points(self):
        points = list(small_height_points(2, 1))
        self.assertEqual(points, [[0, 1], [1, 0], [1, 1], [1, -1]])
        self.assertEqual(list(small_height_points(2, 2))[4:], [[1, 2], [1, -2], [2, 1], [2, -1]])
        self.assertNotIn([2, 2, 0, 0], list(small_height_points(4, 2)))


class PropertyTests(WlpTestCase):
    """Seeded random checks of Gorenstein duality."""

    def test_rank_duality_and_palindrome(self):
        for domain, d in ((self.GF7, 4), (self.GF2, 4), (self.GF3, 3)):
            for _ in range(self.instances(30)):
                S = InverseSystem(self.random_cubic(domain, d))
                hilbert = hilbert_function(S)
                self.assertEqual(hilbert, hilbert[::-1])
                self.assertEqual(hilbert[1], embedding_dimension(S))
                ell = self.random_linear(domain, d)
                self.assertEqual(multiplication_rank(S, ell, 0), multiplication_rank(S, ell, 2))
