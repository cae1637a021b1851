# ttfkit/witt.py
"""
Truncated Witt vectors W_n(F_q).

The sum and product polynomials are computed once over the integers from the
ghost components w_k = Σ_{i≤k} p^i X_i^{p^{k−i}} and only then reduced mod p
for evaluation, since the recursion divides by powers of p.

F is the Frobenius (a₀, a₁, …) ↦ (a₀^p, a₁^p, …), V the Verschiebung
(a₀, a₁, …) ↦ (0, a₀, a₁, …) and π = F − id. Quotients by π are computed by
exhaustive enumeration of W_n(F_q), which keeps them usable as an oracle.
"""
import logging
import random
import threading
from dataclasses import dataclass, field
from itertools import product

from sympy.polys.domains import ZZ
from sympy.polys.rings import ring

from ttfkit.abelian import p_group_invariants
from ttfkit.config import get_settings
from ttfkit.errors import LevelGuardError, VerificationFailure
from ttfkit.finite_field import field_of_order, finite_field

logger = logging.getLogger(__name__)

_POLY_CACHE = {}
_POLY_LOCK = threading.Lock()


@dataclass(frozen=True)
class WittPolys:
    p: int
    n: int
    ring: object = field(repr=False, compare=False)
    x: tuple = field(repr=False, compare=False)
    y: tuple = field(repr=False, compare=False)
    sums: tuple = field(repr=False)
    prods: tuple = field(repr=False)

    def ghost(self, k, comps):
        return sum((self.p ** i * comps[i] ** (self.p ** (k - i)) for i in range(k + 1)), self.ring.zero)

    def verify(self):
        """Exact check of w_k(S) = w_k(x) + w_k(y) and w_k(P) = w_k(x)·w_k(y) for all k < n."""
        for k in range(self.n):
            wx, wy = self.ghost(k, self.x), self.ghost(k, self.y)
            if self.ghost(k, self.sums) != wx + wy:
                raise VerificationFailure(f"ghost identity for S_{k} fails (p = {self.p})")
            if self.ghost(k, self.prods) != wx * wy:
                raise VerificationFailure(f"ghost identity for P_{k} fails (p = {self.p})")
        return True


def _guard(n, level_guard):
    guard = get_settings().witt_level_guard if level_guard is None else level_guard
    if n > guard:
        raise LevelGuardError(f"Witt level {n} exceeds the guard of {guard}; pass a larger level_guard to override")


def _exact_quo(poly, d):
    if any(int(coeff) % d for coeff in poly.coeffs()):
        raise VerificationFailure(f"Witt recursion left a coefficient not divisible by {d}")
    return poly.quo_ground(d)


def witt_polys(p, n, level_guard=None):
    """
    Sum and product polynomials S_0..S_{n−1}, P_0..P_{n−1} over Z, cached
    per (p, n) and verified against the ghost identities before caching.
    """
    if n < 1:
        raise ValueError("Witt level must be at least 1")
    _guard(n, level_guard)
    key = (p, n)
    cached = _POLY_CACHE.get(key)
    if cached is not None:
        return cached
    with _POLY_LOCK:
        cached = _POLY_CACHE.get(key)
        if cached is not None:
            return cached
        names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
        R, *gens = ring(names, ZZ)
        x, y = tuple(gens[:n]), tuple(gens[n:])
        partial = WittPolys(p, n, R, x, y, (), ())
        sums, prods = [], []
        for k in range(n):
            lower_s = sum((p ** i * sums[i] ** (p ** (k - i)) for i in range(k)), R.zero)
            lower_p = sum((p ** i * prods[i] ** (p ** (k - i)) for i in range(k)), R.zero)
            wx, wy = partial.ghost(k, x), partial.ghost(k, y)
            sums.append(_exact_quo(wx + wy - lower_s, p ** k))
            prods.append(_exact_quo(wx * wy - lower_p, p ** k))
        polys = WittPolys(p, n, R, x, y, tuple(sums), tuple(prods))
        polys.verify()
        logger.debug("Witt polynomials for p = %d, n = %d: %s terms in S, %s terms in P", p, n,
                     [len(s.terms()) for s in sums], [len(q.terms()) for q in prods])
        _POLY_CACHE[key] = polys
        return polys


def _compile(poly, p):
    """Terms with coefficient reduced mod p, zero terms dropped."""
    out = []
    for monom, coeff in poly.terms():
        c = int(coeff) % p
        if c:
            out.append((c, tuple((i, e) for i, e in enumerate(monom) if e)))
    return tuple(out)


@dataclass(frozen=True)
class WittVector:
    ring: "WittRing"
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.ring.n:
            raise ValueError(f"a vector of W_{self.ring.n} needs {self.ring.n} components")

    def __add__(self, other):
        return self.ring.add(self, other)

    def __sub__(self, other):
        return self.ring.sub(self, other)

    def __mul__(self, other):
        return self.ring.mul(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __str__(self):
        return "(" + ", ".join(self.ring.base.format(a) for a in self.components) + ")"


@dataclass(frozen=True)
class WittRing:
    """W_n(F_q)."""
    base: object
    n: int
    level_guard: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        polys = witt_polys(self.base.p, self.n, self.level_guard)
        object.__setattr__(self, "_sums", tuple(_compile(s, self.base.p) for s in polys.sums))
        object.__setattr__(self, "_prods", tuple(_compile(q, self.base.p) for q in polys.prods))

    @classmethod
    def of(cls, q, n, level_guard=None):
        return cls(field_of_order(q), n, level_guard)

    @property
    def p(self):
        return self.base.p

    @property
    def order(self):
        return self.base.q ** self.n

    def vector(self, components):
        components = tuple(int(a) for a in components)
        if any(not 0 <= a < self.base.q for a in components):
            raise ValueError(f"components {components} are not elements of F_{self.base.q}")
        return WittVector(self, components)

    def zero(self):
        return WittVector(self, (0,) * self.n)

    def one(self):
        return WittVector(self, (1,) + (0,) * (self.n - 1))

    def elements(self):
        for comps in product(self.base.elements(), repeat=self.n):
            yield WittVector(self, comps)

    def random_vector(self, rng):
        return WittVector(self, tuple(rng.randrange(self.base.q) for _ in range(self.n)))

    def _check(self, *vectors):
        for v in vectors:
            if v.ring != self:
                raise ValueError("Witt vectors belong to different rings")

    def _evaluate(self, terms, values):
        F = self.base
        acc = 0
        for coeff, monom in terms:
            t = coeff
            for i, e in monom:
                t = F.mul(t, F.pow(values[i], e))
                if not t:
                    break
            if t:
                acc = F.add(acc, t)
        return acc

    def _combine(self, polys, a, b):
        values = a.components + b.components
        return WittVector(self, tuple(self._evaluate(terms, values) for terms in polys))

    def add(self, a, b):
        self._check(a, b)
        return self._combine(self._sums, a, b)

    def mul(self, a, b):
        self._check(a, b)
        return self._combine(self._prods, a, b)

    def from_integer(self, k):
        """Image of k ∈ Z: the integral Witt vector with every ghost component k, reduced mod p."""
        p = self.p
        comps = []
        for m in range(self.n):
            total = k - sum(p ** i * comps[i] ** (p ** (m - i)) for i in range(m))
            comps.append(total // p ** m)
        return WittVector(self, tuple(self.base.from_int(c) for c in comps))

    def neg(self, a):
        return self.mul(self.from_integer(-1), a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, k, a):
        """k·a by repeated addition (k ≥ 0)."""
        out = self.zero()
        for _ in range(k):
            out = self.add(out, a)
        return out

    def teichmuller(self, a):
        return WittVector(self, (a,) + (0,) * (self.n - 1))

    def frobenius(self, a):
        return WittVector(self, tuple(self.base.frobenius(c) for c in a.components))

    def verschiebung(self, a):
        """V inside the same truncation; the last component falls off."""
        return WittVector(self, (0,) + a.components[:-1])

    def pi(self, a):
        return self.sub(self.frobenius(a), a)

    def extend(self):
        return WittRing(self.base, self.n + 1, self.level_guard)


def verschiebung_up(a, target):
    """V: W_n → W_{n+1}, (a₀, …, a_{n−1}) ↦ (0, a₀, …, a_{n−1})."""
    if target.base != a.ring.base or target.n != a.ring.n + 1:
        raise ValueError("target must be W_{n+1} over the same field")
    return WittVector(target, (0,) + a.components)


def _sample_or_all(ring):
    settings = get_settings()
    if ring.order <= settings.sample_threshold:
        return list(ring.elements()), True
    rng = random.Random(settings.seed)
    return [ring.random_vector(rng) for _ in range(settings.sample_size)], False


# ---------------------------------------------------------------------------
# Artin–Schreier quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ASQuotient:
    """W_n(F_q)/π(W_n(F_q)) with cosets named by their first element in enumeration order."""
    ring: WittRing
    image: frozenset = field(repr=False)
    coset_of: dict = field(repr=False)

    @property
    def order(self):
        return len(set(self.coset_of.values()))

    @property
    def representatives(self):
        return sorted(set(self.coset_of.values()), key=lambda v: v.components)


def as_quotient(ring):
    if ring.order > get_settings().sample_threshold:
        raise LevelGuardError(f"|W_{ring.n}(F_{ring.base.q})| = {ring.order} is too large to enumerate")
    elements = list(ring.elements())
    image = frozenset(ring.pi(a) for a in elements)
    coset_of = {}
    for a in elements:
        if a in coset_of:
            continue
        for i in image:
            coset_of[ring.add(a, i)] = a
    return ASQuotient(ring, image, coset_of)


def _quotient_invariants(quotient):
    ring = quotient.ring
    p = ring.p
    times_p = {a: ring.scale(p, a) for a in quotient.coset_of}
    counts = [1]
    current = {a: a for a in quotient.coset_of}
    while counts[-1] < quotient.order:
        current = {a: times_p[b] for a, b in current.items()}
        killed = sum(1 for b in current.values() if b in quotient.image)
        counts.append(killed // len(quotient.image))
        if len(counts) > ring.n + 2:
            raise VerificationFailure("quotient is not annihilated by p^(n+1)")
    return p_group_invariants(p, counts)


@dataclass(frozen=True)
class CokernelResult:
    q: int
    n: int
    invariants: object
    image_order: int
    transition: dict = field(repr=False)


def artin_schreier_cokernel(q, n, level_guard=None):
    """
    Invariants of W_n(F_q)/π(W_n(F_q)) together with the map into
    W_{n+1}(F_q)/π(W_{n+1}(F_q)) induced by V, as coset representative → representative.
    """
    ring = WittRing.of(q, n, level_guard)
    guard = get_settings().witt_level_guard if level_guard is None else level_guard
    upper = WittRing(ring.base, n + 1, max(guard, n + 1))
    here, there = as_quotient(ring), as_quotient(upper)
    for i in here.image:
        if verschiebung_up(i, upper) not in there.image:
            raise VerificationFailure(f"V does not carry π(W_{n}) into π(W_{n + 1}) at {i}")
    transition = {r: there.coset_of[verschiebung_up(r, upper)] for r in here.representatives}
    invariants = _quotient_invariants(here)
    logger.info("W_%d(F_%d)/pi = %s", n, q, invariants)
    return CokernelResult(q, n, invariants, len(here.image), transition)


def check_ftilde_equals_ftildeV(q, n, level_guard=None):
    """
    V(x) ≡ V(F(x)) modulo π(W_{n+1}) for every x ∈ W_n(F_q), or for a seeded
    sample when W_{n+1} is too large to enumerate (then the preimage π(V x)
    is exhibited instead of a membership lookup).
    """
    ring = WittRing.of(q, n, level_guard)
    guard = get_settings().witt_level_guard if level_guard is None else level_guard
    upper = WittRing(ring.base, n + 1, max(guard, n + 1))
    elements, exhaustive = _sample_or_all(ring)
    image = as_quotient(upper).image if upper.order <= get_settings().sample_threshold else None
    for x in elements:
        vx = verschiebung_up(x, upper)
        difference = upper.sub(verschiebung_up(ring.frobenius(x), upper), vx)
        in_image = difference in image if image is not None else upper.pi(vx) == difference
        if not in_image:
            logger.info("F~ and F~V differ at %s", x)
            return False
    logger.info("F~ = F~V on W_%d(F_%d) (%s)", n, q, "exhaustive" if exhaustive else "sampled")
    return True


def p_divisibility_stage(q, n, level_guard=None):
    """The V-image of W_n/π lies in p·(W_{n+1}/π)."""
    result = artin_schreier_cokernel(q, n, level_guard)
    guard = get_settings().witt_level_guard if level_guard is None else level_guard
    upper = WittRing(field_of_order(q), n + 1, max(guard, n + 1))
    there = as_quotient(upper)
    multiples = {there.coset_of[upper.scale(upper.p, y)] for y in upper.elements()}
    ok = all(target in multiples for target in result.transition.values())
    logger.info("stage p-divisibility for W_%d(F_%d): %s", n, q, ok)
    return ok


# ---------------------------------------------------------------------------
# Identities of F and V
# ---------------------------------------------------------------------------

def check_vf_is_multiplication_by_p(ring):
    """V(F(a)) = F(V(a)) = p·a on every element (or a seeded sample)."""
    elements, _ = _sample_or_all(ring)
    for a in elements:
        pa = ring.scale(ring.p, a)
        if ring.verschiebung(ring.frobenius(a)) != pa or ring.frobenius(ring.verschiebung(a)) != pa:
            logger.info("VF = p fails at %s", a)
            return False
    return True


def find_v_not_multiplicative(ring):
    """The first pair (a, b) with V(ab) ≠ V(a)V(b), or None."""
    elements, _ = _sample_or_all(ring)
    for a in elements:
        for b in elements:
            if ring.verschiebung(ring.mul(a, b)) != ring.mul(ring.verschiebung(a), ring.verschiebung(b)):
                return a, b
    return None


def check_frobenius_is_ring_hom(ring):
    F = ring.frobenius
    if F(ring.one()) != ring.one():
        return False
    elements, _ = _sample_or_all(ring)
    rng = random.Random(get_settings().seed)
    for a in elements:
        b = rng.choice(elements)
        if F(ring.add(a, b)) != ring.add(F(a), F(b)) or F(ring.mul(a, b)) != ring.mul(F(a), F(b)):
            logger.info("Frobenius is not a ring map at %s, %s", a, b)
            return False
    return True


def prime_field_ring(p, n, level_guard=None):
    return WittRing(finite_field(p, 1), n, level_guard)
