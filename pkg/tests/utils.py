"""Base test class."""


import os
import shutil
import tempfile
import unittest
from random import Random

from src.coeffring import DomainSpec
from src.polyspace import BasisChange, DividedElem, SymElem, monomials

SLOW = os.environ.get("WLP_GAMMA_SLOW") == "1"


class WlpTestCase(unittest.TestCase):
    """Test class base with the common domains, fixture systems and a scratch directory."""

    def setUp(self):
        """Set inputs."""
        self.rng = Random(20240229)
        self.ZZ = DomainSpec.integers()
        self.QQ = DomainSpec.rationals()
        self.GF2 = DomainSpec.prime_field(2)
        self.GF3 = DomainSpec.prime_field(3)
        self.GF5 = DomainSpec.prime_field(5)
        self.GF7 = DomainSpec.prime_field(7)
        self.exception_file = "tests/resources/exception.txt"
        self.exception_json_file = "tests/resources/exception.json"
        self.four_cubes_file = "tests/resources/four_cubes.txt"
        self.ternary_triple_file = "tests/resources/ternary_triple.txt"
        self.config_file = "tests/resources/harness_config.json"
        self.config_v0_file = "tests/resources/harness_config_v0.json"
        self.quaternary_census_file = "tests/resources/census_gf2_quaternary.json"
        self.exception = self.cubic("x^(3) + y*z*w", self.GF2)
        self.four_cubes = self.cubic("x^(3) + y^(3) + z^(3) + w^(3)", self.GF2)
        self.triple = self.cubic("x*y*z", self.GF2, d=3)
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Tear down."""
        shutil.rmtree(self.temp_dir)

    def temp_path(self, name: str) -> str:
        return os.path.join(self.temp_dir, name)

    @staticmethod
    def cubic(text: str, domain: DomainSpec, d: int = 4) -> DividedElem:
        return DividedElem.from_text(text, domain, d, 3)

    def random_cubic(self, domain: DomainSpec, d: int, density: float = 0.6) -> DividedElem:
        """A nonzero cubic with each coefficient drawn from 0..p-1 (or -3..3 over Q)."""
        while True:
            terms = {}
            for e in monomials(d, 3):
                if self.rng.random() < density:
                    if domain.characteristic:
                        terms[e] = self.rng.randrange(domain.characteristic)
                    else:
                        terms[e] = self.rng.randint(-3, 3)
            phi = DividedElem(domain, d, 3, terms)
            if not phi.is_zero():
                return phi

    def random_change(self, domain: DomainSpec, d: int) -> BasisChange:
        p = domain.characteristic
        while True:
            rows = [[self.rng.randrange(p) if p else self.rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
            try:
                return BasisChange(domain, tuple(tuple(row) for row in rows))
            except ValueError:
                continue

    def random_linear(self, domain: DomainSpec, d: int):
        p = domain.characteristic
        while True:
            coefficients = [self.rng.randrange(p) if p else self.rng.randint(-3, 3) for _ in range(d)]
            if any(coefficients):
                return SymElem.linear(domain, coefficients)

    @staticmethod
    def instances(fast: int, full: int = 1000) -> int:
        """Loop count for a seeded property: the full count only under WLP_GAMMA_SLOW=1."""
        return full if SLOW else fast
