# ttfkit/virtab.py
"""
Torsion-free virtually abelian groups as explicit extension data.

A VirtAbGroup is an extension 1 → Z^n → G → Q → 1 of a finite group Q by a
lattice, given by the action q ↦ M_q ∈ GL_n(Z) and a normalized 2-cocycle c.
Elements are pairs (q, v) = (e, v)·(q, 0) and multiply by

    (q₁, v₁)(q₂, v₂) = (q₁q₂, v₁ + M_{q₁}v₂ + c(q₁, q₂)).

Profinite lattices Ẑ^n are modelled by Z^n throughout: torsion, embeddings
and closures are all decided with integer linear algebra.
"""
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ttfkit.abelian import IntMatrix, hermite_normal_form, smith_normal_form, solve_integral
from ttfkit.config import get_settings
from ttfkit.errors import ValidationError, VerificationFailure
from ttfkit.finite_group import FiniteGroup, cyclic, direct_product as group_product, \
    from_permutations, symmetric, trivial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VAElement:
    q: int
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))


def _add(*vectors):
    return tuple(sum(parts) for parts in zip(*vectors))


def _neg(v):
    return tuple(-x for x in v)


@dataclass(frozen=True)
class VirtAbGroup:
    Q: FiniteGroup
    n: int
    action: tuple
    cocycle: tuple
    name: str | None = field(default=None, compare=False)

    @property
    def zero(self):
        return (0,) * self.n

    @property
    def identity(self):
        return VAElement(self.Q.identity, self.zero)

    def element(self, q, v=None):
        """Element from a Q label or index and a translation (zero when omitted)."""
        if isinstance(q, str):
            q = self.Q.index_of(q)
        v = self.zero if v is None else tuple(v)
        if len(v) != self.n:
            raise ValueError(f"translation {v} does not have length {self.n}")
        return VAElement(q, v)

    def mul(self, x, y):
        return VAElement(self.Q.mul(x.q, y.q),
                         _add(x.v, self.action[x.q].apply(y.v), self.cocycle[x.q][y.q]))

    def inverse(self, x):
        qi = self.Q.inv(x.q)
        return VAElement(qi, _neg(self.action[qi].apply(_add(x.v, self.cocycle[x.q][qi]))))

    def power(self, x, k):
        if k < 0:
            x, k = self.inverse(x), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def product(self, elements):
        out = self.identity
        for x in elements:
            out = self.mul(out, x)
        return out

    def generators(self):
        """Section elements (q, 0) for q ≠ e followed by the lattice basis (e, e_j)."""
        gens = [VAElement(q, self.zero) for q in self.Q.elements() if q != self.Q.identity]
        for j in range(self.n):
            gens.append(VAElement(self.Q.identity, tuple(int(i == j) for i in range(self.n))))
        return gens

    def format_element(self, x):
        return f"{self.Q.label(x.q)} | {' '.join(str(a) for a in x.v)}".rstrip()

    def parse_element(self, text):
        label, _, rest = text.partition("|")
        label = label.strip()
        v = tuple(int(tok) for tok in rest.split())
        if not rest.strip():
            v = self.zero
        return self.element(label, v)


def _as_matrix(rows, n):
    if isinstance(rows, IntMatrix):
        matrix = rows
    else:
        matrix = IntMatrix.of(rows, n)
    if matrix.rows != n or matrix.cols != n:
        raise ValidationError(f"action matrix is {matrix.rows}x{matrix.cols}, expected {n}x{n}")
    return matrix


def _coerce_q(Q, q):
    return Q.index_of(q) if isinstance(q, str) else int(q)


def normalize_cocycle(Q, action, table):
    """Shift a cocycle by the coboundary of the constant c(e, e): c'(q₁,q₂) = c(q₁,q₂) − M_{q₁}c(e,e)."""
    base = table[Q.identity][Q.identity]
    if not any(base):
        return table
    return tuple(tuple(_add(table[a][b], _neg(action[a].apply(base))) for b in Q.elements())
                 for a in Q.elements())


def make_virtab(Q, n, action=None, cocycle=None, name=None):
    """
    Validate extension data and build the group.

    :param action: mapping q ↦ n×n rows (or IntMatrix); missing entries are the identity.
    :param cocycle: mapping (q₁, q₂) ↦ vector; missing entries are zero. Keys may be
        labels or indices. A cocycle that is not normalized is shifted at ingestion.
    :raises ValidationError: naming the offending element, pair or triple.
    """
    if n < 0:
        raise ValueError("lattice rank must be nonnegative")
    action = {_coerce_q(Q, q): m for q, m in (action or {}).items()}
    matrices = tuple(_as_matrix(action[q], n) if q in action else IntMatrix.identity(n) for q in Q.elements())
    for q, matrix in enumerate(matrices):
        if abs(matrix.determinant()) != 1:
            raise ValidationError(f"action of {Q.label(q)} is not unimodular", detail=Q.label(q))
    if not matrices[Q.identity].is_identity():
        raise ValidationError("the identity of Q must act trivially", detail=Q.label(Q.identity))
    for a, b in product(Q.elements(), repeat=2):
        if matrices[a] @ matrices[b] != matrices[Q.mul(a, b)]:
            raise ValidationError(
                f"action is not a homomorphism on ({Q.label(a)}, {Q.label(b)})", detail=(Q.label(a), Q.label(b)))

    zero = (0,) * n
    entries = {}
    for key, vec in (cocycle or {}).items():
        a, b = (_coerce_q(Q, q) for q in key)
        vec = tuple(int(x) for x in vec)
        if len(vec) != n:
            raise ValidationError(f"cocycle value {vec} does not have length {n}", detail=key)
        entries[a, b] = vec
    table = tuple(tuple(entries.get((a, b), zero) for b in Q.elements()) for a in Q.elements())

    if any(any(v) for v in entries.values()):
        for a, b, c in product(Q.elements(), repeat=3):
            lhs = _add(matrices[a].apply(table[b][c]), _neg(table[Q.mul(a, b)][c]),
                       table[a][Q.mul(b, c)], _neg(table[a][b]))
            if any(lhs):
                raise ValidationError(
                    f"cocycle identity fails on ({Q.label(a)}, {Q.label(b)}, {Q.label(c)})",
                    detail=(Q.label(a), Q.label(b), Q.label(c)))
        shifted = normalize_cocycle(Q, matrices, table)
        if shifted is not table:
            logger.debug("cocycle normalized by the shift of c(e, e) = %s", table[Q.identity][Q.identity])
        table = shifted
    group = VirtAbGroup(Q, n, matrices, table, name)
    logger.debug("built extension %s: |Q| = %d, rank %d", name or "G", Q.order, n)
    return group


# ---------------------------------------------------------------------------
# Torsion
# ---------------------------------------------------------------------------

def element_order(G, x):
    """Order of x, or ``math.inf``; at most |Q| multiplications are needed."""
    y, k = x, 1
    while y.q != G.Q.identity:
        y = G.mul(y, x)
        k += 1
    return k if not any(y.v) else math.inf


def power_affine(G, q, k):
    """
    (S, d) with (q, v)^k = (q^k, S·v + d) for every v: S = Σ_{i<k} M_q^i and
    d the translation of (q, 0)^k.
    """
    n = G.n
    s = IntMatrix.zero(n, n)
    power = IntMatrix.identity(n)
    for _ in range(k):
        s = IntMatrix(n, n, tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(s.entries, power.entries)))
        power = power @ G.action[q]
    d = G.power(VAElement(q, G.zero), k).v
    return s, d


def torsion_solution(G, q, k):
    """A translation v with (q, v)^k = 1, or None. Requires q^k = e."""
    s, d = power_affine(G, q, k)
    return solve_integral(s, _neg(d))


def is_torsion_free(G):
    """
    (True, None) when G has no nontrivial element of finite order, otherwise
    (False, witness). For each q ≠ e of order m the equation N_q·v = −d_q is
    solved over Z.
    """
    for q in G.Q.elements():
        if q == G.Q.identity:
            continue
        v = torsion_solution(G, q, G.Q.element_order(q))
        if v is not None:
            witness = VAElement(q, v)
            if element_order(G, witness) == math.inf:
                raise VerificationFailure(f"torsion solution {G.format_element(witness)} has infinite order")
            logger.info("%s has torsion: %s", G.name or "G", G.format_element(witness))
            return False, witness
    logger.info("%s is torsion-free", G.name or "G")
    return True, None


# ---------------------------------------------------------------------------
# Embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingReport:
    pairs_checked: int
    homomorphism: bool
    finite_kernel_trivial: bool
    lattice_injective: bool
    projection_commutes: bool

    @property
    def passed(self):
        return self.homomorphism and self.finite_kernel_trivial and self.lattice_injective and self.projection_commutes


@dataclass(frozen=True)
class WreathModel:
    """Q ≀ Z^n = Q ⋉ (Z^n)^Q; block y of a translation holds the value f(y)."""
    base: VirtAbGroup
    Q: FiniteGroup
    n: int

    def block(self, f, y):
        return f[y * self.n:(y + 1) * self.n]


@dataclass(frozen=True)
class GroupMap:
    source: VirtAbGroup
    target: VirtAbGroup
    images: dict = field(repr=False)
    func: object = field(repr=False, compare=False)

    def __call__(self, x):
        return self.func(x)


def block_permutation(Q, n, q):
    """Coordinate permutation of (Z^n)^Q under q: block y goes to block y·q⁻¹."""
    return tuple(Q.mul(i // n, Q.inv(q)) * n + i % n for i in range(n * Q.order))


def permutation_matrix(sigma):
    size = len(sigma)
    rows = [[0] * size for _ in range(size)]
    for i, s in enumerate(sigma):
        rows[s][i] = 1
    return IntMatrix.of(rows, size)


def wreath_model(Q, n, name=None):
    """Q ≀ Z^n with Q acting by right translation of blocks, (q·f)(y) = f(y·q)."""
    action = {q: permutation_matrix(block_permutation(Q, n, q)) for q in Q.elements()}
    return WreathModel(make_virtab(Q, n * Q.order, action, name=name or f"{Q.name or 'Q'} wr Z^{n}"), Q, n)


def check_embedding(source, target, func, q_map):
    """
    Run the verification contract on generators, their pairs and seeded random
    products: ``func`` is a homomorphism, no nontrivial (q, 0) maps to the
    identity, the lattice goes in injectively, and the projection to Q
    commutes with ``q_map``.
    """
    settings = get_settings()
    gens = source.generators() + [source.inverse(g) for g in source.generators()]
    samples = [source.identity] + gens
    rng = random.Random(settings.seed)
    for _ in range(32):
        samples.append(source.product(rng.choice(gens) for _ in range(rng.randint(2, 6))) if gens else source.identity)
    pairs = 0
    homomorphism = True
    for x, y in product(samples, repeat=2):
        pairs += 1
        if func(source.mul(x, y)) != target.mul(func(x), func(y)):
            homomorphism = False
            logger.error("embedding fails on %s, %s", source.format_element(x), source.format_element(y))
            break
    projection = all(func(x).q == q_map(x.q) for x in samples)
    finite_kernel = all(func(VAElement(q, source.zero)) != target.identity
                        for q in source.Q.elements() if q != source.Q.identity)
    lattice_columns = [func(VAElement(source.Q.identity, tuple(int(i == j) for i in range(source.n)))).v
                       for j in range(source.n)]
    if source.n:
        _, d, _ = smith_normal_form(IntMatrix.of(lattice_columns, target.n).transpose())
        lattice_injective = all(d.diagonal()) and len(d.diagonal()) == source.n
    else:
        lattice_injective = True
    return EmbeddingReport(pairs, homomorphism, finite_kernel, lattice_injective, projection)


def kk_embed(G):
    """
    Kaloujnine–Krasner embedding G → Q ≀ Z^n over Q, with section s(q) = (q, 0):

        g = (q, v) ↦ (q, f_g),   f_g(y) = s(y) · g · s(y·q)⁻¹ ∈ Z^n.

    Then f_{gh}(y) = f_g(y) + f_h(y·q), which is the product in the wreath
    model under right translation.

    :return: (wreath model, map, report)
    :raises VerificationFailure: the per-instance verification did not pass.
    """
    Q, n = G.Q, G.n
    wreath = wreath_model(Q, n)
    W = wreath.base

    def embed(x):
        values = []
        for y in Q.elements():
            s_y = VAElement(y, G.zero)
            s_next = VAElement(Q.mul(y, x.q), G.zero)
            value = G.product([s_y, x, G.inverse(s_next)])
            if value.q != Q.identity:
                raise VerificationFailure("transversal value left the lattice")
            values.extend(value.v)
        return VAElement(x.q, values)

    report = check_embedding(G, W, embed, lambda q: q)
    if not report.passed:
        raise VerificationFailure(f"Kaloujnine–Krasner embedding of {G.name or 'G'} failed verification: {report}")
    mapping = GroupMap(G, W, {x: embed(x) for x in G.generators()}, embed)
    logger.info("embedded %s into %s (%d pairs checked)", G.name or "G", W.name, report.pairs_checked)
    return wreath, mapping, report


@dataclass(frozen=True)
class SigmaLatticeEmbedding:
    N: int
    target: VirtAbGroup
    map: GroupMap
    report: EmbeddingReport


def sigma_lattice_group(perm_group, name=None):
    """Σ ⋉ Z^N for a permutation group Σ acting by coordinate permutation."""
    action = {a: permutation_matrix(perm_group.perm(a)) for a in perm_group.elements()}
    return make_virtab(perm_group, perm_group.degree, action, name=name or f"{perm_group.name} x| Z^{perm_group.degree}")


def embed_sigma_lattice(G):
    """
    G → Q ≀ Z^n ↪ Σ_N ⋉ Z^N with N = n·|Q|, blocks permuted by right translation.

    Σ_N is built in full when N! fits the configured limit; otherwise the
    target is the image permutation group acting on the same lattice.
    """
    wreath, kk, _ = kk_embed(G)
    Q, n = G.Q, G.n
    N = n * Q.order
    perms = [block_permutation(Q, n, q) for q in Q.elements()]
    if N == 0:
        sigma = trivial()
        sigma = FiniteGroup(sigma.table, sigma.labels, "S0", ((),))
    elif math.factorial(N) <= get_settings().full_symmetric_limit:
        sigma = symmetric(N)
    else:
        sigma = from_permutations(perms, N, name=f"im({Q.name or 'Q'})")
    target = sigma_lattice_group(sigma)
    q_image = [sigma.index_of_perm(p) for p in perms]

    def embed(x):
        y = kk(x)
        return VAElement(q_image[y.q], y.v)

    report = check_embedding(G, target, embed, lambda q: q_image[q])
    if not report.passed:
        raise VerificationFailure(f"Σ_N-lattice embedding of {G.name or 'G'} failed verification: {report}")
    mapping = GroupMap(G, target, {x: embed(x) for x in G.generators()}, embed)
    logger.info("embedded %s into %s with N = %d", G.name or "G", target.name, N)
    return SigmaLatticeEmbedding(N, target, mapping, report)


# ---------------------------------------------------------------------------
# Subgroup closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupInclusion:
    """
    Records how the closure sits in the ambient group: sub element (q', x)
    is (e, B·x)·t_{q'} with B the lattice basis and t the transversal.
    """
    ambient: VirtAbGroup
    q_members: tuple
    basis: tuple
    transversal: tuple
    sub: VirtAbGroup = field(default=None, repr=False)

    @property
    def basis_matrix(self):
        return IntMatrix.of([list(col) for col in zip(*self.basis)], len(self.basis)) if self.basis else \
            IntMatrix.zero(self.ambient.n, 0)

    def include(self, x):
        shift = self.basis_matrix.apply(x.v) if self.basis else self.ambient.zero
        return self.ambient.mul(VAElement(self.ambient.Q.identity, shift), self.transversal[x.q])

    def restrict(self, y):
        """The sub element mapping to ``y``, or None when y is outside the closure."""
        if y.q not in self.q_members:
            return None
        i = self.q_members.index(y.q)
        u = self.ambient.mul(y, self.ambient.inverse(self.transversal[i]))
        if not self.basis:
            return VAElement(i, ()) if not any(u.v) else None
        x = solve_integral(self.basis_matrix, u.v)
        return None if x is None else VAElement(i, x)


def _saturate(rows, matrices, n):
    basis = hermite_normal_form(rows, n)
    rounds = 0
    while True:
        grown = hermite_normal_form(basis + [m.apply(b) for m in matrices for b in basis], n)
        if grown == basis:
            return basis, rounds
        if len(grown) < len(basis):
            raise VerificationFailure("lattice saturation lost rank")
        rounds += 1
        logger.debug("saturation round %d: rank %d", rounds, len(grown))
        basis = grown


def subgroup_closure(ambient, gens):
    """
    The subgroup generated by ``gens``: image Q' in Q, lattice L = H ∩ Z^n from
    Schreier generators saturated under Q', and the data rewritten over Q'
    with L's Hermite basis.

    :return: (sub, inclusion)
    """
    Q = ambient.Q
    gens = list(gens)
    transversal = {Q.identity: ambient.identity}
    order = [Q.identity]
    i = 0
    while i < len(order):
        t = transversal[order[i]]
        for g in gens:
            y = ambient.mul(t, g)
            if y.q not in transversal:
                transversal[y.q] = y
                order.append(y.q)
        i += 1
    schreier = []
    for q, t in transversal.items():
        for g in gens:
            y = ambient.mul(t, g)
            k = ambient.mul(y, ambient.inverse(transversal[y.q]))
            if k.q != Q.identity:
                raise VerificationFailure("Schreier generator left the lattice")
            if any(k.v):
                schreier.append(k.v)
    members = tuple(sorted(transversal))
    basis, rounds = _saturate(schreier, [ambient.action[q] for q in members], ambient.n)
    logger.debug("closure: |Q'| = %d, lattice rank %d after %d saturation rounds", len(members), len(basis), rounds)

    Qsub, _ = Q.subgroup(members)
    r = len(basis)
    b_matrix = IntMatrix.of([list(col) for col in zip(*basis)], r) if basis else IntMatrix.zero(ambient.n, 0)

    def lattice_coords(vector):
        if not r:
            if any(vector):
                raise VerificationFailure("nonzero translation in a rank-0 closure")
            return ()
        x = solve_integral(b_matrix, vector)
        if x is None:
            raise VerificationFailure(f"translation {vector} is not in the saturated lattice")
        return x

    action = {}
    for i, q in enumerate(members):
        columns = [lattice_coords(ambient.action[q].apply(b)) for b in basis]
        action[i] = [list(row) for row in zip(*columns)] if r else []
    cocycle = {}
    t_list = [transversal[q] for q in members]
    for i, j in product(range(len(members)), repeat=2):
        k = members.index(Q.mul(members[i], members[j]))
        tau = ambient.mul(ambient.mul(t_list[i], t_list[j]), ambient.inverse(t_list[k]))
        coords = lattice_coords(tau.v)
        if any(coords):
            cocycle[i, j] = coords
    sub = make_virtab(Qsub, r, action, cocycle, name=f"<{len(gens)} gens> in {ambient.name or 'G'}")
    inclusion = SubgroupInclusion(ambient, members, tuple(basis), tuple(t_list), sub)
    return sub, inclusion


@dataclass(frozen=True)
class IntersectionReport:
    generator: VAElement
    exponent: int
    witness: VAElement | None

    @property
    def torsion(self):
        return self.witness is None


def lattice_intersection_witness(ambient, gens):
    """
    For the first nontrivial generator γ with Q-part of order s, γ^s lies in
    the lattice; it is a witness of nontrivial intersection unless it is the
    identity, in which case γ is torsion.
    """
    gamma = next((g for g in gens if g != ambient.identity), None)
    if gamma is None:
        raise ValidationError("the subgroup is trivial")
    s = ambient.Q.element_order(gamma.q)
    y = ambient.power(gamma, s)
    report = IntersectionReport(gamma, s, y if any(y.v) else None)
    if report.torsion:
        logger.info("%s has order %d: no lattice witness", ambient.format_element(gamma), s)
    return report


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def _flip_group():
    return cyclic(2, ("e", "flip"))


def klein_four():
    table = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
    return FiniteGroup(table, ("e", "a", "b", "ab"), "V4")


def infinite_dihedral():
    return make_virtab(_flip_group(), 1, {"flip": [[-1]]}, name="dihedral_inf")


def klein_bottle():
    return make_virtab(_flip_group(), 2, {"flip": [[1, 0], [0, -1]]}, {("flip", "flip"): (1, 0)}, name="klein_bottle")


def torus(n):
    if n < 0:
        raise ValueError("rank must be nonnegative")
    return make_virtab(trivial(), n, name=f"Z^{n}")


def z2_times_z():
    return make_virtab(_flip_group(), 1, name="z2_times_z")


def from_affine(Q, action, translations, name=None):
    """
    Extension data of a group of affine maps x ↦ M_q x + t_q with rational
    translation parts: c(q₁,q₂) = t_{q₁} + M_{q₁}t_{q₂} − t_{q₁q₂} must be integral.
    """
    translations = {_coerce_q(Q, q): tuple(Fraction(x) for x in t) for q, t in translations.items()}
    if translations:
        n = len(next(iter(translations.values())))
    elif action:
        first = next(iter(action.values()))
        n = first.rows if isinstance(first, IntMatrix) else len(first)
    else:
        n = 0
    matrices = {_coerce_q(Q, q): _as_matrix(m, n) for q, m in action.items()}
    zero = (Fraction(0),) * n

    def t(q):
        return translations.get(q, zero)

    def m(q):
        return matrices.get(q, IntMatrix.identity(n))

    cocycle = {}
    for a, b in product(Q.elements(), repeat=2):
        mt = tuple(sum(row[j] * t(b)[j] for j in range(n)) for row in m(a).entries)
        value = tuple(x + y - z for x, y, z in zip(t(a), mt, t(Q.mul(a, b))))
        if any(x.denominator != 1 for x in value):
            raise ValidationError(f"translations give a non-integral cocycle at ({Q.label(a)}, {Q.label(b)})",
                                  detail=(Q.label(a), Q.label(b)))
        if any(value):
            cocycle[a, b] = tuple(int(x) for x in value)
    return make_virtab(Q, n, matrices, cocycle, name=name)


def hantzsche_wendt():
    """The flat 3-manifold group with holonomy Z/2 × Z/2."""
    half = Fraction(1, 2)
    return from_affine(
        klein_four(),
        {"a": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
         "b": [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
         "ab": [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]},
        {"a": (half, half, 0), "b": (0, half, half), "ab": (half, 0, half)},
        name="hantzsche_wendt")


def semidirect_product(phi, name=None, max_order=1000):
    """
    Z ⋉_Φ Z^b for Φ ∈ GL_b(Z) of finite order m, as an extension of Z/m by the
    lattice mZ × Z^b: M_k = diag(1, Φ^k) and c(k, l) = (⌊(k + l)/m⌋, 0).
    """
    phi = _as_matrix(phi, len(phi.entries) if isinstance(phi, IntMatrix) else len(phi))
    b = phi.rows
    powers = [IntMatrix.identity(b)]
    while True:
        nxt = powers[-1] @ phi
        if nxt.is_identity():
            break
        powers.append(nxt)
        if len(powers) > max_order:
            raise ValidationError("Φ does not have finite order", detail=phi.to_lists())
    m = len(powers)
    action = {}
    for k, power in enumerate(powers):
        rows = [[1] + [0] * b] + [[0] + list(row) for row in power.entries]
        action[k] = rows
    cocycle = {(k, l): (1,) + (0,) * b for k in range(m) for l in range(m) if k + l >= m}
    return make_virtab(cyclic(m, ["e"] + [f"t{k}" if k > 1 else "t" for k in range(1, m)]), b + 1, action, cocycle,
                       name=name or f"Z x|_phi Z^{b}")


def direct_product(g1, g2):
    """G₁ × G₂ with Q = Q₁ × Q₂ (index a·|Q₂| + b) and lattice Z^{n₁} ⊕ Z^{n₂}."""
    Q = group_product(g1.Q, g2.Q)
    n1, n2 = g1.n, g2.n
    pairs = list(product(g1.Q.elements(), g2.Q.elements()))
    action = {}
    for i, (a, b) in enumerate(pairs):
        rows = [list(r) + [0] * n2 for r in g1.action[a].entries]
        rows += [[0] * n1 + list(r) for r in g2.action[b].entries]
        action[i] = rows
    cocycle = {}
    for i, (a1, b1) in enumerate(pairs):
        for j, (a2, b2) in enumerate(pairs):
            value = g1.cocycle[a1][a2] + g2.cocycle[b1][b2]
            if any(value):
                cocycle[i, j] = value
    return make_virtab(Q, n1 + n2, action, cocycle, name=f"{g1.name or 'G1'} x {g2.name or 'G2'}")


def pair_element(G, x1, x2, g2_order):
    """The element (x1, x2) of direct_product(G1, G2) given |Q₂|."""
    return VAElement(x1.q * g2_order + x2.q, x1.v + x2.v)
