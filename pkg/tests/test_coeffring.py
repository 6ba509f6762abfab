"""Test coefficient domains."""
from src.coeffring import (
    DivisionByZero,
    DomainKind,
    DomainMismatch,
    DomainSpec,
    NotAUnit,
    Scalar,
    arith,
    unit_inverse,
)
from tests.utils import WlpTestCase


class DomainSpecTests(WlpTestCase):
    """DomainSpec Unit Test ."""

    def test_parse(self):
        self.assertEqual(DomainSpec.parse("Z"), self.ZZ)
        self.assertEqual(DomainSpec.parse("QQ"), self.QQ)
        self.assertEqual(DomainSpec.parse("GF(7)"), self.GF7)
        ring = DomainSpec.parse("Z[a, b,c]")
        self.assertEqual(ring.kind, DomainKind.PARAM_RING)
        self.assertEqual(ring.names, ("a", "b", "c"))
        self.assertEqual(str(ring), "Z[a,b,c]")

    def test_parse_rejects(self):
        for text in ("R", "GF(4)", "GF()", "", "Z[1a]"):
            with self.assertRaises(ValueError):
                DomainSpec.parse(text)

    def test_validation(self):
        with self.assertRaises(ValueError):
            DomainSpec(DomainKind.PRIME_FIELD)
        with self.assertRaises(ValueError):
            DomainSpec(DomainKind.INTEGERS, p=3)
        with self.assertRaises(ValueError):
            DomainSpec.param_ring("a", "a")
        with self.assertRaises(ValueError):
            DomainSpec.param_ring()

    def test_field_and_characteristic(self):
        self.assertTrue(self.QQ.is_field)
        self.assertTrue(self.GF2.is_field)
        self.assertFalse(self.ZZ.is_field)
        self.assertFalse(DomainSpec.param_ring("a").is_field)
        self.assertEqual(self.GF5.characteristic, 5)
        self.assertEqual(self.QQ.characteristic, 0)

    def test_residues(self):
        self.assertEqual(self.GF7.to_int(self.GF7.convert(-1)), 6)
        self.assertEqual(self.GF2.format(self.GF2.convert(3)), "1")
        with self.assertRaises(ValueError):
            self.QQ.to_int(self.QQ.convert(1))

    def test_parse_element_errors(self):
        ring = DomainSpec.param_ring("a", "b")
        with self.assertRaises(ValueError):
            ring.parse_element("a + q")
        with self.assertRaises(ValueError):
            ring.parse_element("a +* ")
        with self.assertRaises(ValueError):
            self.ZZ.parse_element("1/2")


class ScalarTests(WlpTestCase):
    """Scalar Unit Test ."""

    def test_prime_field_arithmetic(self):
        three, five = Scalar.of(self.GF7, 3), Scalar.of(self.GF7, 5)
        self.assertEqual(str(arith("add", three, five)), "1")
        self.assertEqual(str(arith("sub", three, five)), "5")
        self.assertEqual(str(arith("mul", three, five)), "1")
        self.assertEqual(str(arith("neg", three)), "4")
        self.assertEqual(unit_inverse(three), five)

    def test_characteristic_two(self):
        one = Scalar.of(self.GF2, 1)
        self.assertTrue((one + one).is_zero())
        self.assertEqual(-one, one)

    def test_rationals(self):
        self.assertEqual(Scalar.parse(self.QQ, "2/3") * Scalar.parse(self.QQ, "3/2"), Scalar.of(self.QQ, 1))
        self.assertEqual(unit_inverse(Scalar.parse(self.QQ, "-4/5")), Scalar.parse(self.QQ, "-5/4"))

    def test_parameter_ring(self):
        ring = DomainSpec.param_ring("a", "b", "c")
        juxtaposed = Scalar.parse(ring, "ac - b^2")
        explicit = Scalar.parse(ring, "a*c - b**2")
        self.assertEqual(juxtaposed, explicit)
        self.assertTrue((juxtaposed - explicit).is_zero())
        self.assertEqual(unit_inverse(Scalar.of(ring, -1)), Scalar.of(ring, -1))
        with self.assertRaises(NotAUnit):
            unit_inverse(Scalar.parse(ring, "a"))

    def test_integer_units(self):
        self.assertEqual(unit_inverse(Scalar.of(self.ZZ, -1)), Scalar.of(self.ZZ, -1))
        with self.assertRaises(NotAUnit):
            unit_inverse(Scalar.of(self.ZZ, 2))

    def test_division_by_zero(self):
        with self.assertRaises(DivisionByZero):
            unit_inverse(Scalar.of(self.GF7, 0))
        with self.assertRaises(ZeroDivisionError):
            unit_inverse(Scalar.of(self.QQ, 0))

    def test_mismatch(self):
        with self.assertRaises(DomainMismatch):
            Scalar.of(self.GF5, 1) + Scalar.of(self.GF7, 1)
        with self.assertRaises(DomainMismatch):
            Scalar.of(self.GF5, 1) * 3

    def test_bad_operator(self):
        x = Scalar.of(self.GF5, 2)
        with self.assertRaises(ValueError):
            arith("div", x, x)
        with self.assertRaises(ValueError):
            arith("add", x)

    def random_scalar(self, domain):
        if domain.kind != DomainKind.PARAM_RING:
            return Scalar.of(domain, self.rng.randint(-20, 20))
        value = domain.K.zero
        for _ in range(self.rng.randint(1, 4)):
            term = domain.K(self.rng.randint(-5, 5))
            for generator in domain.gens().values():
                term *= generator ** self.rng.randint(0, 2)
            value += term
        return Scalar(domain, value)

    def test_ring_axioms(self):
        """Seeded random instances of the commutative ring axioms."""
        ring = DomainSpec.param_ring("a", "b", "c")
        for domain in (self.ZZ, self.GF7, self.GF2, self.QQ, ring):
            for _ in range(1000):
                x, y, z = (self.random_scalar(domain) for _ in range(3))
                self.assertEqual((x + y) + z, x + (y + z))
                self.assertEqual(x * y, y * x)
                self.assertEqual((x * y) * z, x * (y * z))
                self.assertEqual(x * (y + z), x * y + x * z)
                self.assertTrue((x - x).is_zero())
                self.assertEqual(x + (-y), x - y)

    def test_parameter_ring_has_no_zero_divisors(self):
        ring = DomainSpec.param_ring("a", "b", "c")
        checked = 0
        while checked < 1000:
            x, y = self.random_scalar(ring), self.random_scalar(ring)
            if x.is_zero() or y.is_zero():
                continue
            self.assertFalse((x * y).is_zero(), f"({x})*({y})")
            checked += 1
