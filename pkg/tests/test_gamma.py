"""Test the exterior algebra and the Gamma map."""
from src.coeffring import Scalar
from src.gamma import (
    ExtElem,
    PairedSpace,
    bowtie,
    dual_space,
    gamma_coordinate,
    gamma_is_zero,
    gamma_on_power,
    gamma_vector,
    gamma_vector_via_determinant,
    omega,
    p_phi,
    polarize,
    power_determinant,
    power_matrix,
    primal_space,
    wedge,
    wedge_all,
)
from src.polyspace import DividedElem, Space, SymElem, apply_basis_change, monomials
from tests.utils import WlpTestCase


class ExteriorTests(WlpTestCase):
    """ExtElem Unit Test ."""

    def test_wedge_signs(self):
        space = primal_space(3)
        e0, e1 = ExtElem.basis(self.QQ, space, 0), ExtElem.basis(self.QQ, space, 1)
        self.assertEqual(wedge(e0, e1), wedge(e1, e0).scale(-1))
        self.assertTrue(wedge(e0, e0).is_zero())
        self.assertEqual(wedge(e0, e1).terms, {(0, 1): self.QQ.one})

    def test_top_coordinate(self):
        space = dual_space(3)
        vectors = [ExtElem.from_vector(self.QQ, space, row) for row in ([2, 1, 0], [0, 3, 1], [1, 0, 1])]
        # det [[2,1,0],[0,3,1],[1,0,1]] = 2*3 - 1*(0 - 1) = 7
        self.assertEqual(wedge_all(vectors).coordinate(), Scalar.of(self.QQ, 7))
        with self.assertRaises(ValueError):
            vectors[0].coordinate()

    def test_omega(self):
        w = omega(self.GF2, 4)
        self.assertEqual(w.grade, 4)
        self.assertEqual(w.coordinate(), Scalar.of(self.GF2, 1))

    def test_paired_space(self):
        paired = PairedSpace(4, 4)
        self.assertEqual(paired.index(2, 3), 11)
        self.assertEqual(paired.pair(11), (2, 3))
        self.assertEqual(paired.ambient.n, 16)

    def test_bowtie_requires_primal(self):
        with self.assertRaises(ValueError):
            bowtie(self.triple, omega(self.GF2, 3))


class GammaTests(WlpTestCase):
    """Gamma Unit Test ."""

    def test_p_phi(self):
        yz = SymElem.from_text("y*z", self.GF2, 4)
        self.assertEqual(p_phi(self.exception, yz), DividedElem.monomial(self.GF2, (0, 0, 0, 1)))

    def test_exception_vanishes(self):
        values = gamma_vector(self.exception)
        self.assertEqual(len(values), 35)
        self.assertTrue(all(value.is_zero() for _, value in values))
        self.assertEqual(gamma_is_zero(self.exception), (True, None))

    def test_exception_outside_characteristic_two(self):
        phi = self.cubic("x^(3) + y*z*w", self.GF5)
        zero, witness = gamma_is_zero(phi)
        self.assertFalse(zero)
        self.assertEqual(witness, DividedElem.monomial(self.GF5, (1, 1, 1, 1), space=Space.PRIMAL))
        self.assertEqual(gamma_coordinate(phi, witness), Scalar.of(self.GF5, 2))

    def test_four_cubes(self):
        values = dict(gamma_vector(self.four_cubes))
        self.assertEqual(values[(1, 1, 1, 1)], Scalar.of(self.GF2, 1))
        self.assertEqual(sum(1 for value in values.values() if not value.is_zero()), 1)

    def test_ternary_triple(self):
        self.assertTrue(gamma_is_zero(self.triple)[0])
        phi = self.cubic("x*y*z", self.GF3, d=3)
        X = DividedElem.monomial(self.GF3, (1, 1, 1), space=Space.PRIMAL)
        self.assertEqual(gamma_coordinate(phi, X), Scalar.of(self.GF3, 2))

    def test_power_matrix_is_symmetric(self):
        for _ in range(self.instances(50)):
            phi = self.random_cubic(self.GF7, 4)
            rows = power_matrix(phi, self.random_linear(self.GF7, 4))
            for i in range(4):
                for j in range(4):
                    self.assertEqual(rows[i][j], rows[j][i])

    def test_basis_values_match_determinant(self):
        for domain, d in ((self.QQ, 3), (self.GF7, 4), (self.GF2, 4), (self.GF3, 3)):
            for _ in range(self.instances(5)):
                phi = self.random_cubic(domain, d)
                expected = gamma_vector_via_determinant(phi)
                for e, value in gamma_vector(phi):
                    self.assertEqual(value, expected[e], f"{phi} at {e}")

    def test_gamma_on_power_is_determinant(self):
        for domain, d in ((self.QQ, 3), (self.GF5, 4), (self.GF2, 4)):
            for _ in range(self.instances(20)):
                phi = self.random_cubic(domain, d)
                ell = self.random_linear(domain, d)
                self.assertEqual(gamma_on_power(phi, ell), power_determinant(phi, ell))

    def test_polarization(self):
        for _ in range(self.instances(50)):
            phi = self.random_cubic(self.GF7, 3)
            ell1, ell2 = self.random_linear(self.GF7, 3), self.random_linear(self.GF7, 3)
            degree = self.rng.randint(0, 2)
            e = self.rng.choice(monomials(3, degree))
            X = DividedElem.monomial(self.GF7, e, space=Space.PRIMAL)
            lhs, rhs = polarize(phi, ell1, ell2, self.rng.randrange(7), X)
            self.assertEqual(lhs, rhs)

    def test_vanishing_is_basis_invariant(self):
        for domain, d in ((self.GF2, 4), (self.GF3, 3), (self.GF5, 4)):
            for _ in range(self.instances(10)):
                phi = self.random_cubic(domain, d, density=0.3)
                change = self.random_change(domain, d)
                self.assertEqual(gamma_is_zero(phi)[0], gamma_is_zero(apply_basis_change(phi, change))[0])
        moved = apply_basis_change(self.exception, self.random_change(self.GF2, 4))
        self.assertTrue(gamma_is_zero(moved)[0])

    def test_rejects_non_cubic(self):
        with self.assertRaises(ValueError):
            gamma_vector(DividedElem.monomial(self.GF2, (2, 0, 0)))
