"""
Module: test_witt

Description:
This module contains the test scenarios for truncated Witt vectors W_n(F_q): the universal sum and
product polynomials, ring arithmetic, Frobenius and Verschiebung identities, and the quotients of
W_n(F_q) by the image of π = F - id together with the maps between successive levels.

Test Classes:
1. `TestWittPolynomials`:
   - Sum/product polynomials and the level guard (Scenarios 1-2).
2. `TestWittArithmetic`:
   - Ring laws, integers and Teichmüller lifts (Scenarios 3-6).
3. `TestFrobeniusVerschiebung`:
   - F, V and their identities (Scenarios 7-9).
4. `TestArtinSchreierQuotients`:
   - Quotients by π and the maps induced by V (Scenarios 10-13).

Test Scenarios:
- **Scenario_1**: S_1 = x1 + y1 - x0*y0 for p = 2, and every cached table satisfies the ghost identities.
- **Scenario_2**: Levels beyond the guard need an explicit override.
- **Scenario_3**: (1, 0) + (1, 0) = (0, 1) in W_2(F_2).
- **Scenario_4**: Ring laws on seeded random vectors.
- **Scenario_5**: W_n(F_p) is Z/p^n through from_integer.
- **Scenario_6**: Teichmüller lifts are multiplicative.
- **Scenario_7**: VF = FV = p on every element.
- **Scenario_8**: V is not multiplicative: V(1)V(1) = 0 while V(1·1) = V(1).
- **Scenario_9**: F is a ring endomorphism.
- **Scenario_10**: The quotient W_n(F_q)/π is cyclic of order p^n.
- **Scenario_11**: The transition map W_1(F_2)/π -> W_2(F_2)/π.
- **Scenario_12**: V and VF agree modulo π at the next level; the V-image is p-divisible.
- **Scenario_13**: Argument checks.

Fixtures:
- `logger_setup`: Provides a logger instance for recording detailed test execution steps and results.
- `rng`: Seeded random generator.

Usage:
```bash
pytest tests/test_witt.py
```
"""
import pytest

from ttfkit.errors import LevelGuardError
from ttfkit.witt import (WittRing, artin_schreier_cokernel, as_quotient, check_frobenius_is_ring_hom,
                         check_ftilde_equals_ftildeV, check_vf_is_multiplication_by_p,
                         find_v_not_multiplicative, p_divisibility_stage, prime_field_ring, verschiebung_up,
                         witt_polys)


@pytest.mark.usefixtures("logger_setup")
class TestWittPolynomials:
    """
    Test Class: TestWittPolynomials
    """

    """Scenario_1."""
    @pytest.mark.sanity
    @pytest.mark.regression
    def test_001_sum_and_product_polynomials(self, logger_setup):
        logger = logger_setup
        polys = witt_polys(2, 2)
        x, y = polys.x, polys.y
        logger.info(f"S_1 = {polys.sums[1]}")
        assert polys.sums[0] == x[0] + y[0]
        assert polys.sums[1] == x[1] + y[1] - x[0] * y[0]
        assert polys.prods[0] == x[0] * y[0]
        assert witt_polys(2, 2) is polys
        for p, n in ((2, 3), (3, 2), (5, 2)):
            assert witt_polys(p, n).verify()
        logger.info("Scenario_1 Passed")

    """Scenario_2."""
    @pytest.mark.regression
    def test_002_level_guard(self, logger_setup):
        logger = logger_setup
        with pytest.raises(LevelGuardError):
            witt_polys(2, 3, level_guard=2)
        with pytest.raises(LevelGuardError):
            WittRing.of(2, 7)
        with pytest.raises(ValueError):
            witt_polys(2, 0)
        assert WittRing.of(2, 3, level_guard=3).n == 3
        logger.info("Scenario_2 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestWittArithmetic:
    """
    Test Class: TestWittArithmetic
    """

    """Scenario_3."""
    @pytest.mark.sanity
    def test_003_carry_in_w2_f2(self, logger_setup):
        logger = logger_setup
        W = prime_field_ring(2, 2)
        one = W.one()
        assert one + one == W.vector((0, 1))
        assert W.from_integer(2) == W.vector((0, 1))
        assert W.from_integer(-1) == W.vector((1, 1))
        assert -one == W.vector((1, 1))
        assert str(W.vector((1, 1))) == "(1, 1)"
        logger.info("Scenario_3 Passed")

    """Scenario_4."""
    @pytest.mark.functional
    @pytest.mark.parametrize("q, n", [(2, 3), (3, 2), (4, 2)])
    def test_004_ring_laws(self, logger_setup, rng, q, n):
        logger = logger_setup
        W = WittRing.of(q, n)
        for _ in range(40):
            a, b, c = (W.random_vector(rng) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == W.zero()
            assert a * W.one() == a
        logger.debug(f"W_{n}(F_{q}): 40 random triples checked")
        logger.info("Scenario_4 Passed")

    """Scenario_5."""
    @pytest.mark.regression
    @pytest.mark.parametrize("p, n", [(2, 3), (3, 2), (5, 2)])
    def test_005_integers(self, logger_setup, p, n):
        logger = logger_setup
        W = prime_field_ring(p, n)
        assert W.from_integer(p ** n) == W.zero()
        assert W.from_integer(p ** (n - 1)) != W.zero()
        assert W.from_integer(7) == W.scale(7, W.one())
        assert len({W.from_integer(k) for k in range(p ** n)}) == W.order
        logger.info("Scenario_5 Passed")

    """Scenario_6."""
    @pytest.mark.functional
    def test_006_teichmuller(self, logger_setup):
        logger = logger_setup
        W = WittRing.of(4, 2)
        F = W.base
        for a in F.elements():
            for b in F.elements():
                assert W.teichmuller(a) * W.teichmuller(b) == W.teichmuller(F.mul(a, b))
            assert W.frobenius(W.teichmuller(a)) == W.teichmuller(F.pow(a, 2))
        assert str(W.vector((2, 1))) == "(z, 1)"
        logger.info("Scenario_6 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestFrobeniusVerschiebung:
    """
    Test Class: TestFrobeniusVerschiebung
    """

    """Scenario_7."""
    @pytest.mark.sanity
    @pytest.mark.parametrize("q, n", [(2, 3), (3, 2), (4, 2)])
    def test_007_vf_is_p(self, logger_setup, q, n):
        logger = logger_setup
        assert check_vf_is_multiplication_by_p(WittRing.of(q, n))
        logger.info("Scenario_7 Passed")

    """Scenario_8."""
    @pytest.mark.regression
    def test_008_v_not_multiplicative(self, logger_setup):
        logger = logger_setup
        W = prime_field_ring(2, 2)
        one = W.one()
        v_one = W.verschiebung(one)
        assert v_one * v_one == W.zero()
        assert W.verschiebung(one * one) == v_one != W.zero()
        assert find_v_not_multiplicative(W) == (one, one)
        logger.info("Scenario_8 Passed")

    """Scenario_9."""
    @pytest.mark.functional
    @pytest.mark.parametrize("q, n", [(4, 2), (9, 1), (8, 2)])
    def test_009_frobenius_is_ring_hom(self, logger_setup, q, n):
        logger = logger_setup
        assert check_frobenius_is_ring_hom(WittRing.of(q, n))
        logger.info("Scenario_9 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestArtinSchreierQuotients:
    """
    Test Class: TestArtinSchreierQuotients
    """

    """Scenario_10."""
    @pytest.mark.sanity
    @pytest.mark.regression
    @pytest.mark.parametrize("q, n, image_order", [(2, 1, 1), (2, 2, 1), (3, 1, 1), (4, 1, 2), (4, 2, 4), (2, 3, 1)])
    def test_010_cokernel_is_cyclic(self, logger_setup, q, n, image_order):
        logger = logger_setup
        result = artin_schreier_cokernel(q, n)
        p = WittRing.of(q, n).p
        logger.info(f"W_{n}(F_{q})/pi = {result.invariants}, |pi(W)| = {result.image_order}")
        assert result.invariants.torsion == (p ** n,)
        assert result.image_order == image_order
        assert as_quotient(WittRing.of(q, n)).order == p ** n
        logger.info("Scenario_10 Passed")

    """Scenario_11."""
    @pytest.mark.regression
    def test_011_transition_map(self, logger_setup):
        logger = logger_setup
        result = artin_schreier_cokernel(2, 1)
        transition = {k.components: v.components for k, v in result.transition.items()}
        assert transition == {(0,): (0, 0), (1,): (0, 1)}
        logger.info("Scenario_11 Passed")

    """Scenario_12."""
    @pytest.mark.functional
    @pytest.mark.parametrize("q, n", [(2, 1), (2, 2), (4, 1), (3, 1)])
    def test_012_next_level_identities(self, logger_setup, q, n):
        logger = logger_setup
        assert check_ftilde_equals_ftildeV(q, n)
        assert p_divisibility_stage(q, n)
        logger.info("Scenario_12 Passed")

    """Scenario_13."""
    @pytest.mark.sanity
    def test_013_argument_checks(self, logger_setup):
        logger = logger_setup
        W = prime_field_ring(2, 2)
        with pytest.raises(ValueError):
            W.vector((2, 0))
        with pytest.raises(ValueError):
            W.add(W.one(), prime_field_ring(3, 2).one())
        with pytest.raises(ValueError):
            verschiebung_up(W.one(), prime_field_ring(2, 2))
        assert verschiebung_up(W.one(), W.extend()) == W.extend().vector((0, 1, 0))
        with pytest.raises(ValueError):
            WittRing.of(6, 1)
        logger.info("Scenario_13 Passed")
