"""
Module: test_finite_group

Description:
This module contains the test scenarios for finite groups given by multiplication tables, including the
permutation groups used as point groups and as the Σ_N targets of lattice embeddings.

Test Classes:
1. `TestPermutations`:
   - Cycle notation, composition and inversion (Scenario 1).
2. `TestFiniteGroup`:
   - Constructors, arithmetic, subgroups and axiom checking (Scenarios 2-7).

Test Scenarios:
- **Scenario_1**: Permutations compose right to left and print in 1-based cycle notation.
- **Scenario_2**: Cyclic groups: labels, powers, inverses and element orders.
- **Scenario_3**: Symmetric and generated permutation groups.
- **Scenario_4**: Subgroups generated by elements, and closed subsets as groups.
- **Scenario_5**: Direct products.
- **Scenario_6**: Tables violating the group axioms are rejected.
- **Scenario_7**: Lookups of unknown labels and permutations fail loudly.

Fixtures:
- `logger_setup`: Provides a logger instance for recording detailed test execution steps and results.

Usage:
```bash
pytest tests/test_finite_group.py
```
"""
import pytest

from ttfkit.errors import ValidationError
from ttfkit.finite_group import (FiniteGroup, compose, cycle_notation, cyclic, direct_product,
                                 from_permutations, invert_perm, symmetric, trivial)

# Smallest loop that is not a group: every element is its own inverse.
LOOP_OF_ORDER_FIVE = (
    (0, 1, 2, 3, 4),
    (1, 0, 3, 4, 2),
    (2, 4, 0, 1, 3),
    (3, 2, 4, 0, 1),
    (4, 3, 1, 2, 0),
)


@pytest.mark.usefixtures("logger_setup")
class TestPermutations:
    """
    Test Class: TestPermutations
    """

    """Scenario_1."""
    @pytest.mark.sanity
    def test_001_permutation_helpers(self, logger_setup):
        logger = logger_setup
        assert cycle_notation((1, 0, 3, 2)) == "(1,2)(3,4)"
        assert cycle_notation((0, 1, 2)) == "()"
        assert cycle_notation((1, 2, 0)) == "(1,2,3)"
        assert compose((1, 2, 0), (1, 0, 2)) == (2, 1, 0)
        assert invert_perm((1, 2, 0)) == (2, 0, 1)
        assert compose((1, 2, 0), invert_perm((1, 2, 0))) == (0, 1, 2)
        logger.info("Scenario_1 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestFiniteGroup:
    """
    Test Class: TestFiniteGroup

    Multiplication-table groups with labels, and permutation groups on top of them.
    """

    """Scenario_2."""
    @pytest.mark.sanity
    @pytest.mark.regression
    def test_002_cyclic_group(self, logger_setup):
        logger = logger_setup
        z4 = cyclic(4)
        assert z4.labels == ("e", "g", "g2", "g3")
        assert z4.identity == 0
        assert z4.power(1, 3) == 3
        assert z4.power(1, -1) == 3
        assert z4.inv(3) == 1
        assert [z4.element_order(a) for a in z4.elements()] == [1, 4, 2, 4]
        assert z4.is_abelian
        assert trivial().order == 1
        with pytest.raises(ValueError):
            cyclic(0)
        logger.info("Scenario_2 Passed")

    """Scenario_3."""
    @pytest.mark.regression
    def test_003_permutation_groups(self, logger_setup):
        logger = logger_setup
        s3 = symmetric(3)
        assert s3.order == 6
        assert not s3.is_abelian
        assert s3.label(s3.identity) == "()"
        assert s3.element_order(s3.index_of_perm((1, 0, 2))) == 2
        assert s3.element_order(s3.index_of_perm((1, 2, 0))) == 3
        assert s3.degree == 3
        c3 = from_permutations([(1, 2, 0)], name="C3")
        logger.info(f"C3 elements: {c3.labels}")
        assert c3.perms == ((0, 1, 2), (1, 2, 0), (2, 0, 1))
        assert c3.is_abelian
        assert c3.perm(1) == (1, 2, 0)
        logger.info("Scenario_3 Passed")

    """Scenario_4."""
    @pytest.mark.functional
    def test_004_subgroups(self, logger_setup):
        logger = logger_setup
        s3 = symmetric(3)
        swap = s3.index_of_perm((1, 0, 2))
        rotation = s3.index_of_perm((1, 2, 0))
        assert len(s3.generated([swap])) == 2
        assert len(s3.generated([rotation])) == 3
        assert len(s3.generated([swap, rotation])) == 6
        sub, members = s3.subgroup(s3.generated([rotation]))
        assert sub.order == 3 and sub.is_abelian
        assert [s3.perm(m) for m in members] == list(sub.perms)
        with pytest.raises(ValidationError):
            s3.subgroup([s3.identity, rotation])
        logger.info("Scenario_4 Passed")

    """Scenario_5."""
    @pytest.mark.functional
    def test_005_direct_product(self, logger_setup):
        logger = logger_setup
        v4 = direct_product(cyclic(2), cyclic(2))
        assert v4.order == 4
        assert v4.labels == ("e,e", "e,g", "g,e", "g,g")
        assert v4.is_abelian
        assert sorted(v4.element_order(a) for a in v4.elements()) == [1, 2, 2, 2]
        assert v4.name == "Z/2xZ/2"
        logger.info("Scenario_5 Passed")

    """Scenario_6."""
    @pytest.mark.regression
    def test_006_axioms_checked(self, logger_setup):
        logger = logger_setup
        with pytest.raises(ValidationError):
            FiniteGroup(())
        with pytest.raises(ValidationError):
            FiniteGroup(((0, 0), (1, 1)))
        with pytest.raises(ValidationError):
            FiniteGroup(((0, 1), (1, 1)))
        with pytest.raises(ValidationError):
            FiniteGroup(((0, 1), (1, 2)))
        with pytest.raises(ValidationError) as info:
            FiniteGroup(LOOP_OF_ORDER_FIVE)
        logger.info(f"loop rejected: {info.value}")
        assert "associative" in str(info.value)
        with pytest.raises(ValidationError):
            FiniteGroup(((0, 1), (1, 0)), ("e", "e"))
        with pytest.raises(ValidationError):
            FiniteGroup(((0, 1), (1, 0)), ("e", "a b"))
        logger.info("Scenario_6 Passed")

    """Scenario_7."""
    @pytest.mark.sanity
    def test_007_lookups(self, logger_setup):
        logger = logger_setup
        z2 = cyclic(2)
        assert z2.index_of("g") == 1
        with pytest.raises(ValidationError):
            z2.index_of("h")
        with pytest.raises(ValueError):
            z2.perm(0)
        with pytest.raises(ValidationError):
            from_permutations([(1, 2, 0)]).index_of_perm((1, 0, 2))
        logger.info("Scenario_7 Passed")
