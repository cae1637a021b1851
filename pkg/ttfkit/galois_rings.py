# ttfkit/galois_rings.py
"""
Finite stages of the Laurent tower T_n ⊆ E_n over F_q.

The stage with denominator s is F_q[u_1^{±1}, …, u_n^{±1}] with u_i = t_i^{1/s};
the exponent vector e of a monomial stands for t^{e/s}, and T_n sits inside as
the monomials whose exponents are all divisible by s. The stage group
Σ_n ⋉ (Z/s)^n acts by

    (σ, a) · u^e = θ^{⟨a, σ·e⟩} u^{σ·e},    (σ·e)_{σ(i)} = e_i

so (σ, a)(τ, b) = (στ, a + σ·b), which is Σ_n ⋉ Z^n from virtab read mod s.

Primes are the maximal ideals of F_q-rational points with unit coordinates,
taken in the u-coordinates.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import product

from ttfkit.config import get_settings
from ttfkit.errors import ValidationError, VerificationFailure
from ttfkit.finite_field import field_of_order
from ttfkit.finite_group import compose, invert_perm

logger = logging.getLogger(__name__)


def permute_vector(sigma, e):
    """σ·e with (σ·e)_{σ(i)} = e_i."""
    out = [0] * len(e)
    for i, x in enumerate(e):
        out[sigma[i]] = x
    return tuple(out)


@dataclass(frozen=True)
class StageGroupElement:
    perm: tuple
    twist: tuple

    def __str__(self):
        return " ".join(str(i + 1) for i in self.perm) + " | " + " ".join(map(str, self.twist))

    @property
    def is_identity(self):
        return self.perm == tuple(range(len(self.perm))) and not any(self.twist)


@dataclass(frozen=True)
class LaurentStage:
    base: object
    n: int
    s: int
    theta: int

    def __post_init__(self):
        F = self.base
        if self.n < 1:
            raise ValueError("a stage needs at least one variable")
        if self.s < 1 or (F.q - 1) % self.s:
            raise ValueError(f"s = {self.s} does not divide q - 1 = {F.q - 1}: F_{F.q} lacks the s-th roots of unity")
        if not 0 < self.theta < F.q or F.multiplicative_order(self.theta) != self.s:
            raise ValidationError(f"theta = {self.theta} does not have multiplicative order {self.s}", detail=self.theta)

    @property
    def q(self):
        return self.base.q

    def __str__(self):
        return f"E(q={self.q}, n={self.n}, s={self.s}, theta={self.base.format(self.theta)})"

    # ring

    def element(self, terms):
        """Normalized Laurent element from an exponent → coefficient mapping."""
        out = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n:
                raise ValueError(f"exponent {e} does not belong to a stage in {self.n} variables")
            if not 0 <= c < self.q:
                raise ValueError(f"{c} is not an element of F_{self.q}")
            if c:
                out[e] = c
        return out

    def monomial(self, e, c=1):
        return self.element({tuple(e): c})

    def variable(self, i):
        return self.monomial(tuple(int(j == i) for j in range(self.n)))

    def one(self):
        return self.monomial((0,) * self.n)

    def add(self, f, g):
        out = dict(f)
        for e, c in g.items():
            out[e] = self.base.add(out.get(e, 0), c)
        return {e: c for e, c in out.items() if c}

    def scale(self, c, f):
        return {e: self.base.mul(c, a) for e, a in f.items() if self.base.mul(c, a)}

    def mul(self, f, g):
        out = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = self.base.add(out.get(e, 0), self.base.mul(c1, c2))
        return {e: c for e, c in out.items() if c}

    def evaluate(self, f, point):
        F = self.base
        acc = 0
        for e, c in f.items():
            t = c
            for x, k in zip(point, e):
                t = F.mul(t, F.pow(x, k))
            acc = F.add(acc, t)
        return acc

    def is_integral(self, f):
        """Membership in T_n: every exponent divisible by s."""
        return all(x % self.s == 0 for e in f for x in e)

    def format(self, f):
        if not f:
            return "0"
        names = ["u"] if self.n == 1 else [f"u{i + 1}" for i in range(self.n)]
        terms = []
        for e in sorted(f):
            factors = [name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k]
            c = f[e]
            if c != 1 or not factors:
                factors.insert(0, self.base.format(c))
            terms.append("*".join(factors))
        return " + ".join(terms)

    # group

    def identity(self):
        return StageGroupElement(tuple(range(self.n)), (0,) * self.n)

    def group_element(self, perm, twist=None):
        perm = tuple(int(i) for i in perm)
        twist = (0,) * self.n if twist is None else tuple(int(a) % self.s for a in twist)
        if sorted(perm) != list(range(self.n)) or len(twist) != self.n:
            raise ValueError(f"({perm}, {twist}) is not an element of the stage group on {self.n} letters")
        return StageGroupElement(perm, twist)

    def twist_generator(self, j=0):
        """α_j = (id, e_j); α_j acts on u_j by θ."""
        return self.group_element(range(self.n), [int(i == j) for i in range(self.n)])

    def check_element(self, g):
        if (len(g.perm) != self.n or sorted(g.perm) != list(range(self.n)) or len(g.twist) != self.n
                or any(not 0 <= a < self.s for a in g.twist)):
            raise ValueError(f"{g} is not an element of the stage group of {self}")

    def compose(self, g, h):
        twist = tuple((a + b) % self.s for a, b in zip(g.twist, permute_vector(g.perm, h.twist)))
        return StageGroupElement(compose(g.perm, h.perm), twist)

    def invert(self, g):
        inv = invert_perm(g.perm)
        return StageGroupElement(inv, tuple(-a % self.s for a in permute_vector(inv, g.twist)))

    def power(self, g, k):
        if k < 0:
            g, k = self.invert(g), -k
        out = self.identity()
        for _ in range(k):
            out = self.compose(out, g)
        return out


def make_stage(q, n, s):
    """Stage (q, n, s) with θ = g^{(q−1)/s} for the least primitive element g of F_q."""
    F = field_of_order(q)
    if s < 1 or (q - 1) % s:
        raise ValueError(f"s = {s} does not divide q - 1 = {q - 1}: F_{q} lacks the s-th roots of unity")
    stage = LaurentStage(F, n, s, F.pow(F.primitive_element, (q - 1) // s))
    logger.debug("stage %s", stage)
    return stage


def act(stage, g, f):
    """g · f, extended linearly from monomials."""
    stage.check_element(g)
    F = stage.base
    out = {}
    for e, c in stage.element(f).items():
        image = permute_vector(g.perm, e)
        weight = sum(a * x for a, x in zip(g.twist, image))
        out[image] = F.mul(c, F.pow(stage.theta, weight))
    return out


def stage_closure(stage, gens):
    """Elements of ⟨gens⟩, sorted."""
    gens = list(dict.fromkeys(gens))
    for g in gens:
        stage.check_element(g)
    identity = stage.identity()
    closed = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = stage.compose(x, g)
            if y not in closed:
                closed.add(y)
                frontier.append(y)
    return tuple(sorted(closed, key=lambda g: (g.perm, g.twist)))


def _monomial_box(stage, bound):
    return product(range(-bound, bound + 1), repeat=stage.n)


def fixed_ring_check(stage, bound=None):
    """
    A monomial in the exponent box |e_i| ≤ bound is fixed by every twist
    iff all its exponents are divisible by s, and the twists scale
    monomials by characters, so the fixed ring is T_n at this stage.
    """
    bound = stage.s if bound is None else bound
    twists = [stage.twist_generator(j) for j in range(stage.n)]
    for e in _monomial_box(stage, bound):
        u = stage.monomial(e)
        fixed = all(act(stage, g, u) == u for g in twists)
        if fixed != stage.is_integral(u):
            logger.info("fixed ring check failed at %s", stage.format(u))
            return False
    return True


def residue_decomposition(stage, f):
    """f = Σ_r u^r · f_r with 0 ≤ r_i < s and every f_r in T_n."""
    parts = {}
    for e, c in f.items():
        r = tuple(x % stage.s for x in e)
        parts.setdefault(r, {})[tuple(x - y for x, y in zip(e, r))] = c
    return parts


def separability_basis_check(stage, bound=None):
    """
    {u^r : 0 ≤ r_i < s} as a free basis of the stage over T_n.

    Checks spanning and uniqueness of the residue decomposition over the
    exponent box, and the Galois coordinates x_r = s^{−n} u^{−r}, y_r = u^r
    with Σ_r x_r · g(y_r) = δ_{g,1} for every twist g.
    :return: (passed, basis); the basis has s^n elements.
    """
    bound = stage.s if bound is None else bound
    F = stage.base
    residues = list(product(range(stage.s), repeat=stage.n))
    basis = [stage.monomial(r) for r in residues]

    seen = {}
    for e in _monomial_box(stage, bound):
        u = stage.monomial(e)
        parts = residue_decomposition(stage, u)
        rebuilt = {}
        for r, coeff in parts.items():
            if not stage.is_integral(coeff):
                return False, basis
            rebuilt = stage.add(rebuilt, stage.mul(stage.monomial(r), coeff))
        if rebuilt != u:
            return False, basis
        # distinct monomials must come from distinct (residue, T-monomial) pairs
        (r, coeff), = parts.items()
        key = (r, tuple(coeff))
        if key in seen:
            return False, basis
        seen[key] = e

    norm = F.inv(F.from_int(stage.s ** stage.n))
    for a in residues:
        g = stage.group_element(range(stage.n), a)
        total = {}
        for r in residues:
            x = stage.monomial(tuple(-k for k in r), norm)
            total = stage.add(total, stage.mul(x, act(stage, g, stage.monomial(r))))
        expected = stage.one() if not any(a) else {}
        if total != expected:
            logger.info("Galois coordinates fail for twist %s", a)
            return False, basis
    return True, basis


def _check_point(stage, point):
    point = tuple(int(x) for x in point)
    if len(point) != stage.n:
        raise ValueError(f"point {point} does not have {stage.n} coordinates")
    if any(not 0 < x < stage.q for x in point):
        raise ValueError(f"point {point} needs nonzero coordinates in F_{stage.q}")
    return point


def pull_back(stage, g, point):
    """ψ_g(x) with (g·f)(x) = f(ψ_g(x)); ψ_g(x)_i = θ^{a_{σ(i)}} x_{σ(i)}."""
    F = stage.base
    return tuple(F.mul(F.pow(stage.theta, g.twist[j]), point[j]) for j in g.perm)


def _local_groups(stage, group, point):
    decomposition = tuple(g for g in group if pull_back(stage, g, point) == point)
    inertia = tuple(g for g in decomposition
                    if all(stage.evaluate(act(stage, g, stage.variable(i)), point) == point[i]
                           for i in range(stage.n)))
    return decomposition, inertia


def inertia_at_point(stage, sub, point):
    """
    Decomposition and inertia groups of ⟨sub⟩ at the maximal ideal of ``point``.

    g maps the ideal of x to the ideal of ψ_{g⁻¹}(x), so the decomposition
    group is the stabilizer {g : ψ_g(x) = x}. The inertia group keeps the
    decomposition elements that fix every residue u_i(x).
    """
    point = _check_point(stage, point)
    return _local_groups(stage, stage_closure(stage, sub), point)


def orbit(stage, sub, point):
    """Points of the orbit of the maximal ideal at ``point``, sorted."""
    point = _check_point(stage, point)
    group = stage_closure(stage, sub)
    return tuple(sorted({pull_back(stage, stage.invert(g), point) for g in group}))


@dataclass(frozen=True)
class GaloisCertificate:
    galois: bool
    group_order: int
    points_checked: int
    witness: tuple | None = None

    def describe(self):
        if self.galois:
            return f"trivial inertia at all {self.points_checked} rational points (|G| = {self.group_order})"
        point, g = self.witness
        return f"inertia element {g} at point {point}"


def _first_inertia(stage, group, point):
    _, inertia = _local_groups(stage, group, point)
    return next((g for g in inertia if not g.is_identity), None)


def galois_criterion(stage, sub, workers=None):
    """
    Sweep every rational point with unit coordinates in lexicographic order
    and look for nontrivial inertia. The reported witness is the least point
    and the least nontrivial inertia element there, whatever the worker count.
    """
    workers = get_settings().workers if workers is None else workers
    group = stage_closure(stage, sub)
    points = list(product(range(1, stage.q), repeat=stage.n))
    examine = partial(_first_inertia, stage, group)
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(examine, points, chunksize=max(1, len(points) // (4 * workers))))
    else:
        results = []
        for point in points:
            results.append(examine(point))
            if results[-1] is not None:
                break
    for point, g in zip(points, results):
        if g is not None:
            certificate = GaloisCertificate(False, len(group), len(results), (point, g))
            break
    else:
        certificate = GaloisCertificate(True, len(group), len(points))
        # free action: every orbit has |G| points
        if len(orbit(stage, group, points[0])) != len(group):
            raise VerificationFailure(f"orbit of {points[0]} is smaller than |G| = {len(group)} without inertia")
    logger.info("%s, |G| = %d: %s", stage, len(group), certificate.describe())
    return certificate


def refine(stage, s2):
    """
    The stage with denominator s2 (s | s2 | q − 1) and the inclusion that
    multiplies exponents by s2/s. θ_{s2}^{s2/s} = θ_s since both come from the
    same primitive element.
    """
    if s2 % stage.s:
        raise ValueError(f"s = {stage.s} does not divide {s2}")
    fine = make_stage(stage.q, stage.n, s2)
    factor = s2 // stage.s

    def include(f):
        return fine.element({tuple(factor * x for x in e): c for e, c in stage.element(f).items()})

    return fine, include


def reduce_lattice_element(stage, group, x):
    """Stage element of an element of Σ ⋉ Z^N (a virtab group over a permutation group), twist mod s."""
    sigma = group.Q.perm(x.q)
    if len(sigma) != stage.n:
        raise ValueError(f"{group.name or 'group'} acts on {len(sigma)} letters, the stage has {stage.n} variables")
    return stage.group_element(sigma, x.v)
