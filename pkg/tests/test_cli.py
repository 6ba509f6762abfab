"""Test the wlp-gamma CLI."""
import json
from unittest.mock import patch

from src.__about__ import __version__
from src.cli import (
    ClassifyCommand,
    ExhaustCommand,
    GammaCommand,
    OrbitCommand,
    VerifyCommand,
    WlpGamma,
    load_config,
    load_phi,
    main,
)
from src.config import HarnessConfig
from tests.utils import WlpTestCase


class CommandTests(WlpTestCase):
    """Command validation Unit Test ."""

    def test_phi_required(self):
        with self.assertRaises(ValueError):
            ClassifyCommand(phi="")
        with self.assertRaises(ValueError):
            ClassifyCommand(phi=self.exception_file, d="0")
        self.assertEqual(ClassifyCommand(phi=self.exception_file, d="1").d, 1)
        self.assertEqual(ClassifyCommand(phi=self.exception_file, d="4").d, 4)

    def test_gamma_options_exclusive(self):
        with self.assertRaises(ValueError):
            GammaCommand(phi=self.exception_file, monomial="1,1,1,1", ell="x")

    def test_verify_command(self):
        with self.assertRaises(ValueError):
            VerifyCommand(suite="everything")
        with self.assertRaises(ValueError):
            VerifyCommand(points="-1")
        self.assertEqual(VerifyCommand(points="5").points, 5)

    def test_exhaust_command(self):
        with self.assertRaises(ValueError):
            ExhaustCommand(p=None, d=3)
        with self.assertRaises(ValueError):
            ExhaustCommand(p="2", d="")
        self.assertEqual((ExhaustCommand(p="2", d="3").p, ExhaustCommand(p="2", d="3").d), (2, 3))

    def test_orbit_members_flag(self):
        self.assertTrue(OrbitCommand(phi=self.exception_file, members="true").members)
        self.assertFalse(OrbitCommand(phi=self.exception_file).members)


class LoadTests(WlpTestCase):
    """load_phi and load_config Unit Test ."""

    def test_text_and_json_agree(self):
        self.assertEqual(load_phi(self.exception_file), self.exception)
        self.assertEqual(load_phi(self.exception_json_file), self.exception)
        self.assertEqual(load_phi(self.ternary_triple_file), self.triple)

    def test_domain_and_dimension(self):
        phi = load_phi(self.exception_json_file, domain="GF(5)")
        self.assertEqual(str(phi.domain), "GF(5)")
        with self.assertRaises(ValueError):
            load_phi(self.exception_file, d=3)
        empty = self.temp_path("empty.txt")
        with open(empty, "w") as f:
            f.write("\n")
        with self.assertRaises(ValueError):
            load_phi(empty)

    def test_load_config(self):
        flags = {"config": self.config_file, "seed": "11", "force": True, "phi": "x"}
        config = load_config(flags)
        self.assertEqual(config.seed, 11)
        self.assertEqual(config.batch_size, 512)
        self.assertTrue(config.force)
        self.assertEqual(flags, {"phi": "x"})
        self.assertEqual(load_config({}), HarnessConfig())


class CliTests(WlpTestCase):
    """WlpGamma Unit Test ."""

    def run_command(self, command, **flags):
        out = self.temp_path(f"{command}.json")
        flags.setdefault("out", out)
        flags.setdefault("log_level", "disabled")
        with patch("builtins.print"):
            code = main(json.dumps({"command": command, "flags": flags}))
        with open(out) as f:
            return code, json.load(f)

    def test_version(self):
        self.assertEqual(WlpGamma().version, __version__)

    def test_unknown_command(self):
        with self.assertRaises(KeyError):
            main(json.dumps({"command": "census", "flags": {}}))

    def test_gamma(self):
        code, data = self.run_command("gamma", phi=self.exception_file)
        self.assertEqual(code, 0)
        self.assertEqual(len(data["gamma"]), 35)
        self.assertTrue(all(entry["value"] == "0" for entry in data["gamma"]))
        code, data = self.run_command("gamma", phi=self.exception_file, domain="GF(5)", monomial="1,1,1,1")
        self.assertEqual(data["value"], "2")
        code, data = self.run_command("gamma", phi=self.four_cubes_file, ell="x + y + z + w")
        self.assertEqual(data["value"], data["powerDeterminant"])
        self.assertEqual(data["value"], "1")

    def test_classify(self):
        code, data = self.run_command("classify", phi=self.exception_json_file)
        self.assertEqual(code, 0)
        self.assertTrue(data["isException"])
        self.assertEqual(data["hilbert"], [1, 4, 4, 1])

    def test_wlp(self):
        code, data = self.run_command("wlp", phi=self.exception_file)
        self.assertEqual(data["witness"], "NONE")
        code, data = self.run_command("wlp", phi=self.four_cubes_file)
        self.assertEqual(data["witness"], "x + y + z + w")
        self.assertEqual(data["ranks"], [1, 4, 1])

    def test_wlp_single_variable(self):
        cube = self.temp_path("cube.txt")
        with open(cube, "w") as f:
            f.write("x^(3)\n")
        code, data = self.run_command("wlp", phi=cube, d="1")
        self.assertEqual(code, 0)
        self.assertEqual(data["hilbert"], [1, 1, 1, 1])
        self.assertEqual(data["witness"], "x")
        self.assertEqual(data["ranks"], [1, 1, 1])

    def test_normal_form(self):
        code, data = self.run_command("normal-form", phi=self.exception_file)
        self.assertEqual(data["form"], "CUBIC")
        self.assertEqual(data["case"]["subcase"], "rank-0")

    def test_verify(self):
        code, data = self.run_command("verify", id="CUBE_X3Y", points="3", seed="5")
        self.assertEqual(code, 0)
        self.assertEqual(data["total"], 1)
        code, data = self.run_command("verify", suite="plucker")
        self.assertEqual(code, 0)
        self.assertEqual(data["suite"], "plucker")

    def test_verify_failure_exit_code(self):
        report = WlpGamma()
        with patch("src.cli.run_suite") as mock_run, patch("builtins.print"):
            mock_run.return_value.passed = False
            mock_run.return_value.to_dict.return_value = {"failed": 1}
            self.assertEqual(report.verify(VerifyCommand()), 1)

    def test_exhaust(self):
        out = self.temp_path("census.json")
        with patch("builtins.print"):
            code = main(json.dumps({"command": "exhaust",
                                    "flags": {"p": "2", "d": "3", "out": out, "log_level": "disabled"}}))
        self.assertEqual(code, 0)
        with open(out) as f:
            data = json.load(f)
        self.assertTrue(data["orbitMatches"])
        with open(self.temp_path("census.csv")) as f:
            self.assertTrue(f.readline().startswith("embdim"))

    def test_orbit(self):
        code, data = self.run_command("orbit", phi=self.ternary_triple_file, members=True)
        self.assertEqual(code, 0)
        self.assertEqual(len(data["members"]), data["size"])
        self.assertEqual(168 % data["size"], 0)
