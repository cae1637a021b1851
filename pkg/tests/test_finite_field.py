"""
Module: test_finite_field

Description:
This module contains the test scenarios for the finite fields F_q used by the Witt vector and Galois ring
layers: modulus choice, primitive elements, arithmetic and the Frobenius.

Test Classes:
1. `TestFiniteField`:
   - Construction and arithmetic of prime and non-prime fields (Scenarios 1-5).

Test Scenarios:
- **Scenario_1**: Prime fields use the least primitive root.
- **Scenario_2**: F_4 and F_9 have the least irreducible modulus and print as polynomials in z.
- **Scenario_3**: Field axioms on every pair of F_9 and F_8.
- **Scenario_4**: The Frobenius is additive and fixes the prime field.
- **Scenario_5**: Zero divisions and non-prime-power orders are rejected.

Fixtures:
- `logger_setup`: Provides a logger instance for recording detailed test execution steps and results.

Usage:
```bash
pytest tests/test_finite_field.py
```
"""
import pytest

from ttfkit.finite_field import FiniteField, field_of_order, finite_field, least_irreducible


@pytest.mark.usefixtures("logger_setup")
class TestFiniteField:
    """
    Test Class: TestFiniteField

    Elements are integers 0..q-1 holding base-p coefficient digits.
    """

    """Scenario_1."""
    @pytest.mark.sanity
    @pytest.mark.regression
    @pytest.mark.parametrize("p, root", [(2, 1), (3, 2), (5, 2), (7, 3), (11, 2), (13, 2)])
    def test_001_prime_fields(self, logger_setup, p, root):
        logger = logger_setup
        F = finite_field(p)
        logger.info(f"F_{p}: primitive element {F.primitive_element}")
        assert F.primitive_element == root
        assert F.modulus == (1, 0)
        assert F.from_int(p + 2) == 2 % p
        assert F.format(1) == "1"
        logger.info("Scenario_1 Passed")

    """Scenario_2."""
    @pytest.mark.regression
    def test_002_extension_fields(self, logger_setup):
        logger = logger_setup
        assert least_irreducible(2, 2) == (1, 1, 1)
        assert least_irreducible(3, 2) == (1, 0, 1)
        F4 = finite_field(2, 2)
        assert F4.q == 4
        assert F4.mul(2, 2) == 3
        assert F4.primitive_element == 2
        assert (F4.format(0), F4.format(2), F4.format(3)) == ("0", "z", "z+1")
        F9 = field_of_order(9)
        assert F9.modulus == (1, 0, 1)
        assert F9.mul(3, 3) == 2
        assert F9.multiplicative_order(F9.primitive_element) == 8
        assert F9.format(7) == "2z+1"
        logger.info("Scenario_2 Passed")

    """Scenario_3."""
    @pytest.mark.functional
    @pytest.mark.parametrize("q", [8, 9])
    def test_003_field_axioms(self, logger_setup, q):
        logger = logger_setup
        F = field_of_order(q)
        for a in F.elements():
            assert F.add(a, F.neg(a)) == 0
            assert F.sub(a, a) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
                assert F.pow(a, q - 1) == 1
                assert (q - 1) % F.multiplicative_order(a) == 0
            for b in F.elements():
                assert F.mul(a, b) == F.mul(b, a)
                assert F.add(a, b) == F.add(b, a)
        logger.debug(f"F_{q}: {q * q} pairs checked")
        logger.info("Scenario_3 Passed")

    """Scenario_4."""
    @pytest.mark.functional
    def test_004_frobenius(self, logger_setup):
        logger = logger_setup
        F = finite_field(3, 2)
        for a in F.elements():
            for b in F.elements():
                assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert [F.frobenius(a) for a in range(3)] == [0, 1, 2]
        assert finite_field(2, 2).frobenius(2) == 3
        logger.info("Scenario_4 Passed")

    """Scenario_5."""
    @pytest.mark.sanity
    def test_005_errors(self, logger_setup):
        logger = logger_setup
        F = finite_field(5)
        with pytest.raises(ZeroDivisionError):
            F.inv(0)
        with pytest.raises(ZeroDivisionError):
            F.pow(0, -1)
        with pytest.raises(ValueError):
            F.multiplicative_order(0)
        assert F.pow(0, 0) == 1
        with pytest.raises(ValueError):
            field_of_order(6)
        with pytest.raises(ValueError):
            FiniteField(4, 1)
        with pytest.raises(ValueError):
            FiniteField(5, 0)
        logger.info("Scenario_5 Passed")
