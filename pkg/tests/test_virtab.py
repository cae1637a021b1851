"""
Module: test_virtab

Description:
This module contains the test scenarios for virtually abelian groups given as extension data
1 -> Z^n -> G -> Q -> 1: validation of the data, the group law, torsion detection, the Kaloujnine-Krasner
and Σ_N-lattice embeddings, and closures of finitely generated subgroups.

Test Classes:
1. `TestExtensionData`:
   - Group law, parsing and data validation (Scenarios 1-4).
2. `TestTorsion`:
   - Torsion-free and torsion examples with witnesses (Scenarios 5-7).
3. `TestEmbeddings`:
   - Wreath product and Σ_N ⋉ Z^N embeddings (Scenarios 8-10).
4. `TestSubgroupClosure`:
   - Closures, inclusions and lattice intersection witnesses (Scenarios 11-12).
5. `TestEmbeddingChecks`:
   - The embedding verification contract and a non-abelian point group (Scenarios 13-14).

Test Scenarios:
- **Scenario_1**: The Klein bottle group law and its infinite-order glide reflection.
- **Scenario_2**: Associativity and inverses on seeded random elements.
- **Scenario_3**: Elements print as ``label | v`` and parse back.
- **Scenario_4**: Invalid actions and cocycles are rejected; constant cocycles are normalized away.
- **Scenario_5**: Klein bottle, Hantzsche-Wendt and lattices are torsion-free.
- **Scenario_6**: Infinite dihedral group and Z/2 x Z carry torsion of order 2.
- **Scenario_7**: Semidirect products Z x|_phi Z^b and direct products.
- **Scenario_8**: Kaloujnine-Krasner image of the Klein bottle glide reflection.
- **Scenario_9**: Σ_N-lattice embeddings use the full symmetric group when it is small.
- **Scenario_10**: Σ_2 x| Z^2 arithmetic.
- **Scenario_11**: Closure of the glide reflection is infinite cyclic, with include/restrict.
- **Scenario_12**: Lattice intersection witnesses tell torsion from translation.
- **Scenario_13**: A map that kills the point group element is flagged as having a finite kernel.
- **Scenario_14**: The wreath embedding of Σ_3 x| Z^3 puts M_y·v in block y.

Fixtures:
- `logger_setup`: Provides a logger instance for recording detailed test execution steps and results.
- `klein_bottle_group`, `dihedral_group`: Standard extension data.
- `rng`: Seeded random generator.

Usage:
```bash
pytest tests/test_virtab.py
```
"""
import math

import pytest

from ttfkit.abelian import IntMatrix
from ttfkit.errors import ValidationError
from ttfkit.finite_group import cyclic, symmetric
from ttfkit.virtab import (VAElement, direct_product, element_order, embed_sigma_lattice, hantzsche_wendt,
                           is_torsion_free, kk_embed, lattice_intersection_witness, make_virtab, pair_element,
                           semidirect_product, sigma_lattice_group, subgroup_closure, torus, z2_times_z,
                           check_embedding)


def random_element(G, rng, bound=3):
    return VAElement(rng.randrange(G.Q.order), tuple(rng.randint(-bound, bound) for _ in range(G.n)))


@pytest.mark.usefixtures("logger_setup")
class TestExtensionData:
    """
    Test Class: TestExtensionData

    Extension data is validated once; the group law follows (q1, v1)(q2, v2) = (q1q2, v1 + M v2 + c).
    """

    """Scenario_1."""
    @pytest.mark.sanity
    @pytest.mark.regression
    def test_001_klein_bottle_group_law(self, logger_setup, klein_bottle_group):
        logger = logger_setup
        G = klein_bottle_group
        glide = G.element("flip", (0, 1))
        square = G.mul(glide, glide)
        logger.info(f"(flip | 0 1)^2 = {G.format_element(square)}")
        assert square == G.element("e", (1, 0))
        assert G.power(G.element("flip"), 2) == G.element("e", (1, 0))
        assert element_order(G, G.element("flip")) == math.inf
        assert element_order(G, G.identity) == 1
        assert len(G.generators()) == 3
        logger.info("Scenario_1 Passed")

    """Scenario_2."""
    @pytest.mark.regression
    @pytest.mark.functional
    def test_002_group_axioms_on_samples(self, logger_setup, rng, klein_bottle_group, dihedral_group):
        logger = logger_setup
        for G in (klein_bottle_group, dihedral_group, hantzsche_wendt()):
            for _ in range(30):
                x, y, z = (random_element(G, rng) for _ in range(3))
                assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
                assert G.mul(x, G.inverse(x)) == G.identity
                assert G.mul(G.inverse(x), x) == G.identity
                assert G.power(x, -2) == G.inverse(G.mul(x, x))
            logger.debug(f"{G.name}: 30 random triples checked")
        logger.info("Scenario_2 Passed")

    """Scenario_3."""
    @pytest.mark.sanity
    def test_003_format_and_parse(self, logger_setup, klein_bottle_group):
        logger = logger_setup
        G = klein_bottle_group
        x = G.element("flip", (1, -2))
        assert G.format_element(x) == "flip | 1 -2"
        assert G.parse_element("flip | 1 -2") == x
        assert G.parse_element("flip") == G.element("flip")
        with pytest.raises(ValueError):
            G.element("e", (1,))
        with pytest.raises(ValidationError):
            G.parse_element("rot | 0 0")
        logger.info("Scenario_3 Passed")

    """Scenario_4."""
    @pytest.mark.regression
    def test_004_invalid_data(self, logger_setup):
        logger = logger_setup
        z2 = cyclic(2, ("e", "flip"))
        with pytest.raises(ValidationError):
            make_virtab(z2, 1, {"flip": [[2]]})
        with pytest.raises(ValidationError):
            make_virtab(z2, 2, {"flip": [[1, 1], [0, 1]]})
        with pytest.raises(ValidationError):
            make_virtab(z2, 1, {"e": [[-1]], "flip": [[-1]]})
        with pytest.raises(ValidationError):
            make_virtab(z2, 1, {"flip": IntMatrix.identity(2)})
        with pytest.raises(ValidationError):
            make_virtab(z2, 1, cocycle={("flip", "flip"): (1, 0)})
        with pytest.raises(ValidationError) as info:
            make_virtab(z2, 1, cocycle={("e", "flip"): (1,)})
        logger.info(f"rejected cocycle: {info.value}")
        with pytest.raises(ValueError):
            make_virtab(z2, -1)
        constant = {(a, b): (1,) for a in ("e", "flip") for b in ("e", "flip")}
        G = make_virtab(z2, 1, cocycle=constant)
        assert all(v == (0,) for row in G.cocycle for v in row)
        logger.info("Scenario_4 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestTorsion:
    """
    Test Class: TestTorsion

    For each q of order m the equation N_q v = -d_q over Z decides whether (q, v) is torsion.
    """

    """Scenario_5."""
    @pytest.mark.sanity
    @pytest.mark.regression
    def test_005_torsion_free_examples(self, logger_setup, klein_bottle_group):
        logger = logger_setup
        for G in (klein_bottle_group, hantzsche_wendt(), torus(3), torus(0)):
            free, witness = is_torsion_free(G)
            logger.info(f"{G.name}: torsion-free = {free}")
            assert free and witness is None
        with pytest.raises(ValueError):
            torus(-1)
        logger.info("Scenario_5 Passed")

    """Scenario_6."""
    @pytest.mark.sanity
    @pytest.mark.regression
    def test_006_torsion_examples(self, logger_setup, dihedral_group):
        logger = logger_setup
        for G in (dihedral_group, z2_times_z()):
            free, witness = is_torsion_free(G)
            logger.info(f"{G.name}: witness {G.format_element(witness)}")
            assert not free
            assert G.Q.label(witness.q) == "flip"
            assert element_order(G, witness) == 2
        logger.info("Scenario_6 Passed")

    """Scenario_7."""
    @pytest.mark.functional
    def test_007_products(self, logger_setup, dihedral_group):
        logger = logger_setup
        klein = semidirect_product([[-1]])
        assert (klein.Q.order, klein.n) == (2, 2)
        assert is_torsion_free(klein)[0]
        rotation = semidirect_product([[0, -1], [1, 0]])
        assert rotation.Q.order == 4
        assert is_torsion_free(rotation)[0]
        with pytest.raises(ValidationError):
            semidirect_product([[1, 1], [0, 1]], max_order=20)

        G = direct_product(dihedral_group, torus(1))
        assert (G.Q.order, G.n) == (2, 2)
        assert not is_torsion_free(G)[0]
        x = pair_element(G, dihedral_group.element("flip", (3,)), torus(1).element("e", (5,)), 1)
        assert x == G.element("flip,e", (3, 5))
        assert element_order(G, G.element("flip,e", (3, 0))) == 2
        logger.info("Scenario_7 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestEmbeddings:
    """
    Test Class: TestEmbeddings

    Every embedding runs its verification contract before it is returned.
    """

    """Scenario_8."""
    @pytest.mark.sanity
    @pytest.mark.regression
    def test_008_kaloujnine_krasner(self, logger_setup, klein_bottle_group):
        logger = logger_setup
        G = klein_bottle_group
        wreath, mapping, report = kk_embed(G)
        image = mapping(G.element("flip"))
        logger.info(f"KK image of the glide: {wreath.base.format_element(image)}")
        assert image == VAElement(G.Q.index_of("flip"), (0, 0, 1, 0))
        assert wreath.base.n == 4
        assert wreath.block(image.v, 0) == (0, 0)
        assert wreath.block(image.v, 1) == (1, 0)
        assert report.passed
        assert report.pairs_checked > 0
        logger.info("Scenario_8 Passed")

    """Scenario_9."""
    @pytest.mark.functional
    def test_009_sigma_lattice(self, logger_setup, klein_bottle_group, dihedral_group):
        logger = logger_setup
        klein = embed_sigma_lattice(klein_bottle_group)
        assert klein.N == 4
        assert klein.target.Q.order == 24
        assert klein.report.passed
        dihedral = embed_sigma_lattice(dihedral_group)
        assert dihedral.N == 2
        assert dihedral.target.Q.order == 2
        hw = embed_sigma_lattice(hantzsche_wendt())
        logger.info(f"Hantzsche-Wendt lands in {hw.target.name}")
        assert hw.N == 12
        assert hw.target.Q.order == 4
        logger.info("Scenario_9 Passed")

    """Scenario_10."""
    @pytest.mark.regression
    def test_010_sigma_two_arithmetic(self, logger_setup):
        logger = logger_setup
        G = sigma_lattice_group(symmetric(2))
        x = G.parse_element("(1,2) | 1 0")
        assert G.mul(x, x) == G.element("()", (1, 1))
        assert element_order(G, G.parse_element("(1,2) | 1 -1")) == 2
        logger.info("Scenario_10 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestSubgroupClosure:
    """
    Test Class: TestSubgroupClosure
    """

    """Scenario_11."""
    @pytest.mark.functional
    def test_011_closure_of_glide(self, logger_setup, klein_bottle_group):
        logger = logger_setup
        G = klein_bottle_group
        sub, inclusion = subgroup_closure(G, [G.element("flip")])
        logger.info(f"closure: |Q'| = {sub.Q.order}, rank {sub.n}, basis {inclusion.basis}")
        assert (sub.Q.order, sub.n) == (2, 1)
        assert inclusion.basis == ((1, 0),)
        assert is_torsion_free(sub)[0]
        assert inclusion.include(VAElement(1, (0,))) == G.element("flip")
        assert inclusion.restrict(G.element("e", (3, 0))) == VAElement(0, (3,))
        assert inclusion.restrict(G.element("flip", (0, 1))) is None
        whole, _ = subgroup_closure(G, G.generators())
        assert (whole.Q.order, whole.n) == (2, 2)
        logger.info("Scenario_11 Passed")

    """Scenario_12."""
    @pytest.mark.regression
    def test_012_intersection_witness(self, logger_setup, klein_bottle_group, dihedral_group):
        logger = logger_setup
        glide = lattice_intersection_witness(klein_bottle_group, [klein_bottle_group.element("flip")])
        assert not glide.torsion
        assert glide.exponent == 2
        assert glide.witness == klein_bottle_group.element("e", (1, 0))
        reflection = lattice_intersection_witness(dihedral_group, [dihedral_group.element("flip")])
        assert reflection.torsion
        with pytest.raises(ValidationError):
            lattice_intersection_witness(dihedral_group, [dihedral_group.identity])
        logger.info("Scenario_12 Passed")


@pytest.mark.usefixtures("logger_setup")
class TestEmbeddingChecks:
    """
    Test Class: TestEmbeddingChecks

    The verification contract itself, and the wreath embedding over a non-abelian point group.
    """

    """Scenario_13."""
    @pytest.mark.regression
    def test_013_finite_kernel_is_detected(self, logger_setup):
        logger = logger_setup
        source, target = z2_times_z(), torus(1)
        report = check_embedding(source, target, lambda x: VAElement(0, x.v), lambda q: 0)
        logger.info(f"projection Z/2 x Z -> Z: {report}")
        assert report.homomorphism
        assert report.projection_commutes
        assert report.lattice_injective
        assert not report.finite_kernel_trivial
        assert not report.passed
        _, mapping, _ = kk_embed(source)
        assert check_embedding(source, mapping.target, mapping, lambda q: q).passed
        logger.info("Scenario_13 Passed")

    """Scenario_14."""
    @pytest.mark.functional
    def test_014_non_abelian_point_group(self, logger_setup):
        logger = logger_setup
        G = sigma_lattice_group(symmetric(3))
        wreath, mapping, report = kk_embed(G)
        logger.info(f"{G.name} into {wreath.base.name}: {report.pairs_checked} pairs")
        assert report.passed
        assert wreath.base.n == 18
        v = (1, 0, 0)
        image = mapping(G.element(G.Q.identity, v))
        for y in G.Q.elements():
            assert wreath.block(image.v, y) == G.action[y].apply(v)
        for x in G.generators():
            assert mapping(x).q == x.q
        logger.info("Scenario_14 Passed")
