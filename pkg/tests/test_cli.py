"""
Module: test_cli

Description:
This module contains the test scenarios for the command-line front end: byte-exact golden reports from the
corpus, the exit code contract (0 ok, 1 refuted, 2 error, 3 budget exceeded) and the report renderer.

Test Classes:
1. `TestGoldenReports`:
   - Reproduces every corpus/golden/*.args invocation (Scenario 1).
2. `TestExitCodes`:
   - Certified, refuted, budget and error outcomes (Scenarios 2-6).
3. `TestReport`:
   - Rendering of nested payloads (Scenario 7).
4. `TestWittCommands`:
   - The coker, check-ftilde and check-div subcommands (Scenarios 8-9).

Test Scenarios:
- **Scenario_1**: Each golden .args file renders exactly its .out file and exits with its recorded code.
- **Scenario_2**: Certified and refuted weak TTF sweeps.
- **Scenario_3**: Torsion, approximation system and Galois refutations carry their witness.
- **Scenario_4**: A budget hit exits with 3 and reports its progress.
- **Scenario_5**: Input errors exit with 2 and name the error type.
- **Scenario_6**: --seed is echoed in the report header; ab snf prints the Smith form.
- **Scenario_7**: Nested mappings and sequences render with two-space indentation; floats are refused.
- **Scenario_8**: Each witt subcommand reports its result for small prime powers.
- **Scenario_9**: A non-positive --deg is an input error.

Fixtures:
- `logger_setup`: Provides a logger instance for recording detailed test execution steps and results.
- `corpus_dir`: Location of the corpus and golden files.
- `fresh_settings`: Clears cached settings around each command.

Usage:
```bash
pytest tests/test_cli.py
```
"""
import io
from fractions import Fraction

import pytest

from ttfkit import __version__
from ttfkit.cli import EXIT_BUDGET, EXIT_ERROR, EXIT_OK, EXIT_REFUTED, run
from ttfkit.config import get_settings
from ttfkit.report import Report

GOLDEN = [
    ("ab_abelianize_heisenberg", EXIT_OK),
    ("ab_dual_2_2", EXIT_OK),
    ("approx_build_s1_s2", EXIT_OK),
    ("galois_check_5_1_4", EXIT_OK),
    ("galois_check_5_2_4_swap", EXIT_REFUTED),
    ("ttf_check_nonorientable2", EXIT_REFUTED),
    ("virtab_embed_klein", EXIT_OK),
    ("virtab_torsion_dihedral", EXIT_REFUTED),
    ("virtab_torsion_klein", EXIT_OK),
    ("witt_check_div_2_1", EXIT_OK),
    ("witt_check_ftilde_2_1", EXIT_OK),
    ("witt_coker_2_1_2", EXIT_OK),
]


@pytest.fixture
def fresh_settings(monkeypatch):
    monkeypatch.setenv("TTFKIT_SEED", "0")
    monkeypatch.delenv("TTFKIT_LOG_FILE", raising=False)
    monkeypatch.delenv("TTFKIT_WORKERS", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def invoke(argv):
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


@pytest.mark.usefixtures("logger_setup", "fresh_settings")
class TestGoldenReports:
    """
    Test Class: TestGoldenReports

    Commands run from inside the corpus so relative paths in the .args files resolve.
    """

    """Scenario_1."""
    @pytest.mark.sanity
    @pytest.mark.regression
    @pytest.mark.parametrize("name, exit_code", GOLDEN)
    def test_001_golden(self, logger_setup, corpus_dir, monkeypatch, name, exit_code):
        logger = logger_setup
        golden = corpus_dir / "golden"
        argv = (golden / f"{name}.args").read_text().split()
        expected = (golden / f"{name}.out").read_text()
        monkeypatch.chdir(corpus_dir)
        code, output = invoke(argv)
        logger.debug(output)
        assert code == exit_code
        assert output == expected
        logger.info("Scenario_1 Passed")


@pytest.mark.usefixtures("logger_setup", "fresh_settings")
class TestExitCodes:
    """
    Test Class: TestExitCodes
    """

    """Scenario_2."""
    @pytest.mark.sanity
    def test_002_ttf_check(self, logger_setup):
        logger = logger_setup
        code, output = invoke(["ttf", "check", "builtin:free:2", "--max-index", "3"])
        assert code == EXIT_OK
        assert "status: certified" in output
        code, output = invoke(["ttf", "check", "builtin:heisenberg", "--max-index", "2"])
        logger.info(output)
        assert code == EXIT_REFUTED
        assert "status: refuted" in output
        assert "abelianization: Z^2 + Z/2" in output
        logger.info("Scenario_2 Passed")

    """Scenario_3."""
    @pytest.mark.regression
    def test_003_refutations(self, logger_setup, corpus_dir, monkeypatch):
        logger = logger_setup
        code, output = invoke(["virtab", "torsion", "builtin:dihedral_inf"])
        assert code == EXIT_REFUTED
        assert "order: 2" in output
        code, output = invoke(["virtab", "torsion", "builtin:klein_bottle"])
        assert (code, "status: torsion-free" in output) == (EXIT_OK, True)
        monkeypatch.chdir(corpus_dir)
        code, output = invoke(["approx", "check", "s1.as", "--p", "2", "--g", "flip"])
        assert code == EXIT_REFUTED
        assert "witness: flip | 0" in output
        code, output = invoke(["approx", "build", "--systems", "s1.as", "s2.as"])
        assert code == EXIT_OK
        assert "torsion_free: true" in output
        code, output = invoke(["galois", "check", "--q", "5", "--n", "2", "--s", "4", "--subgroup", "swap.sub"])
        logger.info(output)
        assert code == EXIT_REFUTED
        assert "point: (1, 1)" in output
        assert "inertia_element: 2 1 | 0 0" in output
        logger.info("Scenario_3 Passed")

    """Scenario_4."""
    @pytest.mark.regression
    def test_004_budget(self, logger_setup):
        logger = logger_setup
        code, output = invoke(["ttf", "check", "builtin:free:2", "--max-index", "3", "--budget", "5"])
        logger.info(output)
        assert code == EXIT_BUDGET
        assert "status: budget-exceeded" in output
        assert "max_index: 3" in output
        logger.info("Scenario_4 Passed")

    """Scenario_5."""
    @pytest.mark.regression
    @pytest.mark.parametrize("argv, error_type", [
        (["ab", "snf", "1 2", "3"], "ValueError"),
        (["ab", "abelianize", "no_such_file.grp"], "FileNotFoundError"),
        (["galois", "check", "--q", "5", "--n", "1", "--s", "3"], "ValueError"),
        (["witt", "coker", "--p", "2", "--n", "7"], "LevelGuardError"),
        (["virtab", "torsion", "builtin:moebius"], "ValidationError"),
        (["ttf", "check", "builtin:klein", "--max-index", "1"], "ValidationError"),
    ])
    def test_005_errors(self, logger_setup, argv, error_type):
        logger = logger_setup
        code, output = invoke(argv)
        logger.info(output)
        assert code == EXIT_ERROR
        assert "status: error" in output
        assert f"error_type: {error_type}" in output
        assert invoke(["no-such-command"])[0] == EXIT_ERROR
        logger.info("Scenario_5 Passed")

    """Scenario_6."""
    @pytest.mark.functional
    def test_006_seed_and_snf(self, logger_setup, monkeypatch):
        logger = logger_setup
        monkeypatch.setenv("TTFKIT_SEED", "0")
        code, output = invoke(["--seed", "7", "ab", "snf", "2 4 4", "-6 6 12", "10 -4 -16"])
        logger.info(output)
        assert code == EXIT_OK
        assert output.splitlines()[:4] == ["command: --seed 7 ab snf 2 4 4 -6 6 12 10 -4 -16", "status: ok",
                                           f"version: {__version__}", "seed: 7"]
        assert "group: Z/2 + Z/6 + Z/12" in output
        logger.info("Scenario_6 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestReport:
    """
    Test Class: TestReport
    """

    """Scenario_7."""
    @pytest.mark.sanity
    def test_007_render(self, logger_setup):
        logger = logger_setup
        report = Report("demo", "ok", {"a": [1, {"b": Fraction(1, 2)}], "c": {}, "d": True, "e": [],
                                       "f": {"g": (1, 2), "h": None}})
        assert report.render() == "\n".join([
            "command: demo",
            "status: ok",
            f"version: {__version__}",
            "seed: 0",
            "payload:",
            "  a:",
            "    - 1",
            "    - b: 1/2",
            "  c: {}",
            "  d: true",
            "  e: []",
            "  f:",
            "    g: (1, 2)",
            "    h: none",
        ]) + "\n"
        with pytest.raises(TypeError):
            Report("demo", "ok", {"x": 0.5}).render()
        logger.info("Scenario_7 Passed")


@pytest.mark.usefixtures("logger_setup", "fresh_settings")
class TestWittCommands:
    """
    Test Class: TestWittCommands

    Every witt subcommand builds its Witt polynomials through the command line.
    """

    """Scenario_8."""
    @pytest.mark.sanity
    @pytest.mark.parametrize("argv, status, line", [
        (["witt", "coker", "--p", "2", "--n", "1"], "ok", "ring_order: 2"),
        (["witt", "coker", "--p", "3", "--n", "1"], "ok", "ring_order: 3"),
        (["witt", "check-ftilde", "--p", "2", "--n", "2"], "true", "ftilde_equals_ftildeV: true"),
        (["witt", "check-ftilde", "--p", "2", "--deg", "2", "--n", "1"], "true", "q: 4"),
        (["witt", "check-div", "--p", "2", "--n", "2"], "true", "p_divisible: true"),
        (["witt", "check-div", "--p", "3", "--n", "1"], "true", "q: 3"),
    ])
    def test_008_witt_subcommands(self, logger_setup, argv, status, line):
        logger = logger_setup
        code, output = invoke(argv)
        logger.info(output)
        assert code == EXIT_OK
        assert f"status: {status}" in output
        assert line in output
        logger.info("Scenario_8 Passed")

    """Scenario_9."""
    @pytest.mark.regression
    def test_009_witt_bad_degree(self, logger_setup):
        logger = logger_setup
        code, output = invoke(["witt", "check-div", "--p", "2", "--deg", "0", "--n", "1"])
        assert code == EXIT_ERROR
        assert "error_type: ValueError" in output
        logger.info("Scenario_9 Passed")
