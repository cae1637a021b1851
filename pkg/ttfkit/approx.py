# ttfkit/approx.py
"""
Approximation systems Γ → Ĝ → G over extension data.

Γ only appears through generator labels and their images in Ĝ; its
relations are never consulted. σ: Ĝ → G is given by the images of the
section elements (q, 0) and of the lattice basis, σ(q, v) = λ(v)·φ(q).
"""
import logging
import random
from dataclasses import dataclass, field

import sympy

from ttfkit.abelian import IntMatrix, hermite_normal_form, solve_integral
from ttfkit.config import get_settings
from ttfkit.errors import NotOfOrderError, UncoveredPairError, ValidationError, VerificationFailure
from ttfkit.virtab import VAElement, direct_product, is_torsion_free, pair_element, power_affine, \
    subgroup_closure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SigmaMap:
    """σ(q, v) = λ(v)·φ(q) with φ(q) = σ(q, 0) and λ(e_j) = σ(e, e_j)."""
    ghat: object
    G: object
    phi: tuple
    lam: tuple

    def __post_init__(self):
        ghat, G = self.ghat, self.G
        phi = tuple(G.index_of(x) if isinstance(x, str) else int(x) for x in self.phi)
        lam = tuple(G.index_of(x) if isinstance(x, str) else int(x) for x in self.lam)
        if len(phi) != ghat.Q.order or len(lam) != ghat.n:
            raise ValidationError("sigma needs one image per element of Q and per lattice basis vector")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "lam", lam)
        self._check_homomorphism()

    def lattice_image(self, v):
        G = self.G
        out = G.identity
        for a, k in zip(self.lam, v):
            out = G.mul(out, G.power(a, k))
        return out

    def __call__(self, x):
        return self.G.mul(self.lattice_image(x.v), self.phi[x.q])

    def _check_homomorphism(self):
        ghat, G = self.ghat, self.G
        Q = ghat.Q
        for a in self.lam:
            for b in self.lam:
                if G.mul(a, b) != G.mul(b, a):
                    raise ValidationError("lattice images under sigma do not commute",
                                          detail=(G.label(a), G.label(b)))
        if self.phi[Q.identity] != G.identity:
            raise ValidationError("sigma does not send the identity to the identity")
        for q1 in Q.elements():
            for q2 in Q.elements():
                lhs = G.mul(self.phi[q1], self.phi[q2])
                rhs = G.mul(self.lattice_image(ghat.cocycle[q1][q2]), self.phi[Q.mul(q1, q2)])
                if lhs != rhs:
                    raise ValidationError(
                        f"sigma is not a homomorphism on ({Q.label(q1)}, {Q.label(q2)})",
                        detail=(Q.label(q1), Q.label(q2)))
            for j in range(ghat.n):
                e_j = tuple(int(i == j) for i in range(ghat.n))
                lhs = G.mul(self.phi[q1], self.lam[j])
                rhs = G.mul(self.lattice_image(ghat.action[q1].apply(e_j)), self.phi[q1])
                if lhs != rhs:
                    raise ValidationError(
                        f"sigma does not respect the action of {Q.label(q1)} on basis vector {j + 1}",
                        detail=(Q.label(q1), j))

    def lattice_structure(self):
        """
        The image A = λ(Z^n), a coordinate vector for every a ∈ A, and a
        basis of ker λ (full rank, Hermite form).
        """
        G = self.G
        n = len(self.lam)
        coords = {G.identity: (0,) * n}
        order = [G.identity]
        relations = []
        i = 0
        while i < len(order):
            a = order[i]
            for j, image in enumerate(self.lam):
                b = G.mul(a, image)
                step = tuple(x + int(k == j) for k, x in enumerate(coords[a]))
                if b not in coords:
                    coords[b] = step
                    order.append(b)
                else:
                    relations.append(tuple(x - y for x, y in zip(step, coords[b])))
            i += 1
        return coords, hermite_normal_form(relations, n)


@dataclass(frozen=True)
class ApproxSystem:
    source_gens: tuple
    ghat: object
    images: dict
    G: object
    sigma: SigmaMap
    kernel: object = field(default=None, compare=False, repr=False)
    factors: tuple = field(default=(), compare=False, repr=False)
    inclusion: object = field(default=None, compare=False, repr=False)


def kernel_of_sigma(ghat, sigma):
    """ker σ as a closure in Ĝ: (sub, inclusion)."""
    G = sigma.G
    coords, lattice = sigma.lattice_structure()
    gens = [VAElement(ghat.Q.identity, b) for b in lattice]
    for q in ghat.Q.elements():
        target = G.inv(sigma.phi[q])
        if q != ghat.Q.identity and target in coords:
            gens.append(VAElement(q, coords[target]))
    return subgroup_closure(ghat, gens)


def make_approx_system(source_gens, ghat, images, G, sigma, factors=(), inclusion=None):
    """
    Validate and build an approximation system.

    :raises ValidationError: images do not generate Ĝ, σ∘images misses part of
        G, or ker σ is not torsion-free abelian.
    """
    source_gens = tuple(source_gens)
    images = {label: images[label] for label in source_gens} if set(images) == set(source_gens) else None
    if images is None:
        raise ValidationError("images must be given for exactly the source generators", detail=source_gens)
    if not isinstance(sigma, SigmaMap):
        phi, lam = sigma
        sigma = SigmaMap(ghat, G, phi, lam)

    closure, inc = subgroup_closure(ghat, images.values())
    full = [tuple(int(i == j) for i in range(ghat.n)) for j in range(ghat.n)]
    if len(inc.q_members) != ghat.Q.order or list(inc.basis) != full:
        raise ValidationError("images do not generate the target group",
                              detail={"image_of_Q": len(inc.q_members), "lattice_basis": inc.basis})

    projected = [sigma(x) for x in images.values()]
    if len(G.generated(projected)) != G.order:
        raise ValidationError("sigma composed with the images is not onto G")

    kernel, kernel_inc = kernel_of_sigma(ghat, sigma)
    kernel_gens = [kernel_inc.include(x) for x in kernel.generators()]
    for x in kernel_gens:
        for y in kernel_gens:
            if ghat.mul(x, y) != ghat.mul(y, x):
                raise ValidationError("the kernel of sigma is not abelian",
                                      detail=(ghat.format_element(x), ghat.format_element(y)))
    torsion_free, witness = is_torsion_free(kernel)
    if not torsion_free:
        raise ValidationError("the kernel of sigma has torsion",
                              detail=ghat.format_element(kernel_inc.include(witness)))
    logger.debug("approximation system over %s: kernel rank %d", G.name or "G", kernel.n)
    return ApproxSystem(source_gens, ghat, images, G, sigma, kernel, tuple(factors), inclusion)


def _as_g(G, g):
    return G.index_of(g) if isinstance(g, str) else int(g)


def is_p_torsion_free_over(system, p, g):
    """
    (True, None) when σ⁻¹(g) has no element of order p, else (False, witness).

    For every q with q^p = e the fiber condition λ(v) = g·φ(q)⁻¹ pins v to a
    coset r + ker λ, and (q, r + K·w)^p = 1 is an affine equation in w.
    """
    G, ghat, sigma = system.G, system.ghat, system.sigma
    g = _as_g(G, g)
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not a prime")
    if G.element_order(g) != p:
        raise NotOfOrderError(f"{G.label(g)} does not have order {p}", detail=G.label(g))
    coords, kernel_basis = sigma.lattice_structure()
    n = ghat.n
    k_matrix = IntMatrix.of([list(col) for col in zip(*kernel_basis)], len(kernel_basis)) if n else IntMatrix.zero(0, 0)
    for q in ghat.Q.elements():
        if ghat.Q.power(q, p) != ghat.Q.identity:
            continue
        target = G.mul(g, G.inv(sigma.phi[q]))
        if target not in coords:
            continue
        r = coords[target]
        s, d = power_affine(ghat, q, p)
        rhs = tuple(-a - b for a, b in zip(d, s.apply(r)))
        w = solve_integral(s @ k_matrix, rhs)
        if w is None:
            continue
        v = tuple(a + b for a, b in zip(r, k_matrix.apply(w)))
        witness = VAElement(q, v)
        if sigma(witness) != g or ghat.power(witness, p) != ghat.identity:
            raise VerificationFailure(f"p-torsion witness {ghat.format_element(witness)} does not check out")
        logger.info("not %d-torsion free over %s: %s", p, G.label(g), ghat.format_element(witness))
        return False, witness
    return True, None


def _project(x, first, second):
    q1, q2 = divmod(x.q, second.Q.order)
    return VAElement(q1, x.v[:first.n]), VAElement(q2, x.v[first.n:])


def fiber_product(s1, s2):
    """
    The image of Γ in Ĝ₁ × Ĝ₂ with σ₁₂ = σ₁∘pr₁ (= σ₂∘pr₂, which is checked).
    """
    if s1.source_gens != s2.source_gens:
        raise ValidationError("systems have different source generators")
    if (s1.G.table, s1.G.labels) != (s2.G.table, s2.G.labels):
        raise ValidationError("systems have different finite quotients")
    G = s1.G
    for label in s1.source_gens:
        if s1.sigma(s1.images[label]) != s2.sigma(s2.images[label]):
            raise ValidationError(f"projections to G disagree on generator {label}", detail=label)
    g1, g2 = s1.ghat, s2.ghat
    P = direct_product(g1, g2)
    pairs = {label: pair_element(P, s1.images[label], s2.images[label], g2.Q.order) for label in s1.source_gens}
    sub, inc = subgroup_closure(P, pairs.values())

    def sigma12(x):
        y1, _ = _project(inc.include(x), g1, g2)
        return s1.sigma(y1)

    phi = [sigma12(VAElement(q, sub.zero)) for q in sub.Q.elements()]
    lam = [sigma12(x) for x in sub.generators()[sub.Q.order - 1:]]
    sigma = SigmaMap(sub, G, phi, lam)

    rng = random.Random(get_settings().seed)
    checks = sub.generators()
    checks += [sub.product(rng.choice(checks) for _ in range(5)) for _ in range(16)] if checks else []
    for x in checks:
        y1, y2 = _project(inc.include(x), g1, g2)
        if not (sigma(x) == s1.sigma(y1) == s2.sigma(y2)):
            raise VerificationFailure(f"fiber product projections disagree on {sub.format_element(x)}")

    images = {label: inc.restrict(pairs[label]) for label in s1.source_gens}
    system = make_approx_system(s1.source_gens, sub, images, G, sigma, factors=(s1, s2), inclusion=inc)
    logger.info("fiber product: |Q| = %d, lattice rank %d", sub.Q.order, sub.n)
    return system


def prime_order_pairs(G):
    """Every (p, g) with g ∈ G of prime order p, ordered by p then element index."""
    pairs = []
    for g in G.elements():
        order = G.element_order(g)
        if sympy.isprime(order):
            pairs.append((order, g))
    return sorted(pairs)


def inherited_pairs(s1, s2, pairs, product=None):
    """
    For each pair: whether s1, s2 and their fiber product are p-torsion free
    over g. Whenever either factor is, the product must be too.
    """
    product = fiber_product(s1, s2) if product is None else product
    rows = []
    for p, g in pairs:
        row = (p, _as_g(s1.G, g),
               is_p_torsion_free_over(s1, p, g)[0],
               is_p_torsion_free_over(s2, p, g)[0],
               is_p_torsion_free_over(product, p, g)[0])
        rows.append(row)
    return rows


@dataclass(frozen=True)
class QuotientReport:
    system: ApproxSystem
    fold_order: tuple
    coverage: tuple
    pair_checks: tuple
    torsion_free: bool
    witness: VAElement | None = None

    @property
    def ghat(self):
        return self.system.ghat


def build_torsion_free_quotient(systems, pairs=None):
    """
    Left-fold fiber products over ``systems`` after checking that each pair
    (p, g) is covered by some system p-torsion free over g.

    :param pairs: (p, g) pairs; all prime-order pairs of G when omitted.
    :raises UncoveredPairError: naming the first uncovered pair.
    """
    systems = list(systems)
    if not systems:
        raise ValueError("at least one approximation system is required")
    G = systems[0].G
    complete = prime_order_pairs(G)
    pairs = complete if pairs is None else [(p, _as_g(G, g)) for p, g in pairs]
    for p, g in pairs:
        if (p, g) not in complete:
            raise NotOfOrderError(f"{G.label(g)} does not have order {p}", detail=(p, G.label(g)))

    coverage = []
    for p, g in pairs:
        covering = next((i for i, s in enumerate(systems) if is_p_torsion_free_over(s, p, g)[0]), None)
        if covering is None:
            raise UncoveredPairError(f"no system is {p}-torsion free over {G.label(g)}", detail=(p, G.label(g)))
        coverage.append((p, g, covering))

    result = systems[0]
    for s in systems[1:]:
        result = fiber_product(result, s)

    checks = tuple((p, g, is_p_torsion_free_over(result, p, g)[0]) for p, g in pairs)
    if not all(ok for _, _, ok in checks):
        raise VerificationFailure("a covered pair was lost in the fiber product")
    torsion_free, witness = is_torsion_free(result.ghat)
    if not torsion_free and sorted(set(pairs)) == complete:
        raise VerificationFailure(
            f"all prime-order pairs are covered but {result.ghat.format_element(witness)} is torsion")
    logger.info("torsion-free quotient: |Q| = %d, rank %d, torsion free: %s",
                result.ghat.Q.order, result.ghat.n, torsion_free)
    return QuotientReport(result, tuple(range(len(systems))), tuple(coverage), checks, torsion_free, witness)
