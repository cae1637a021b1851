# ttfkit/finite_field.py
"""
Finite fields F_q, q = p^d, with elements encoded as integers 0..q-1.

The integer c₀ + c₁p + … + c_{d−1}p^{d−1} stands for c₀ + c₁z + … with z a
root of the modulus. The modulus is the lexicographically least monic
irreducible polynomial of degree d (coefficients compared from the highest
degree down). Addition is table driven; multiplication goes through
discrete logarithms to the least primitive element.
"""
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_strip

from ttfkit.config import get_settings
from ttfkit.errors import VerificationFailure

logger = logging.getLogger(__name__)


def least_irreducible(p, d):
    """Lexicographically least monic irreducible of degree d over F_p, highest coefficient first."""
    for tail in product(range(p), repeat=d):
        poly = [1, *tail]
        if gf_irreducible_p(poly, p, ZZ):
            return tuple(poly)
    raise VerificationFailure(f"no irreducible polynomial of degree {d} over F_{p}")


@dataclass(frozen=True)
class FiniteField:
    p: int
    degree: int
    modulus: tuple = field(init=False)
    primitive_element: int = field(init=False)
    _add: tuple = field(init=False, repr=False, compare=False)
    _neg: tuple = field(init=False, repr=False, compare=False)
    _exp: tuple = field(init=False, repr=False, compare=False)
    _log: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p, d = self.p, self.degree
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not a prime")
        if d < 1:
            raise ValueError("field degree must be positive")
        modulus = least_irreducible(p, d)
        q = p ** d
        digits = [self._digits(a) for a in range(q)]
        add = tuple(tuple(self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q))
                    for a in range(q))
        neg = tuple(self._encode([-x % p for x in digits[a]]) for a in range(q))

        def poly_mul(a, b):
            fa = gf_strip(list(reversed(digits[a])))
            fb = gf_strip(list(reversed(digits[b])))
            rem = gf_rem(gf_mul(fa, fb, p, ZZ), list(modulus), p, ZZ)
            coeffs = [int(c) for c in reversed(rem)]
            return self._encode(coeffs + [0] * (d - len(coeffs)))

        generator = exp = None
        for g in range(1, q):
            powers = [1]
            while len(powers) < q - 1:
                nxt = poly_mul(powers[-1], g)
                if nxt == 1:
                    break
                powers.append(nxt)
            if len(powers) == q - 1:
                generator, exp = g, powers
                break
        log = [None] * q
        for k, a in enumerate(exp):
            log[a] = k
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "primitive_element", generator)
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", tuple(log))
        self._spot_check(poly_mul)
        logger.debug("F_%d: modulus %s, primitive element %d", q, modulus, generator)

    def _digits(self, a):
        out = []
        for _ in range(self.degree):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def _encode(self, coeffs):
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + c
        return a

    def _spot_check(self, poly_mul):
        rng = random.Random(get_settings().seed)
        for _ in range(64):
            a, b, c = (rng.randrange(self.q) for _ in range(3))
            if self.mul(a, b) != poly_mul(a, b):
                raise VerificationFailure(f"log tables disagree with polynomial multiplication on {a}, {b}")
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                raise VerificationFailure(f"distributivity fails in F_{self.q} on {a}, {b}, {c}")

    @property
    def q(self):
        return self.p ** self.degree

    @property
    def order(self):
        return self.q

    def elements(self):
        return range(self.q)

    def from_int(self, k):
        """Image of the integer k in the prime field."""
        return k % self.p

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def pow(self, a, k):
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    def multiplicative_order(self, a):
        if a == 0:
            raise ValueError("0 is not a unit")
        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def format(self, a):
        if self.degree == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self._digits(a)))):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(mono if c == 1 and i else f"{c}{mono}")
        return "+".join(terms) or "0"


@lru_cache(maxsize=None)
def finite_field(p, degree=1):
    return FiniteField(p, degree)


def field_of_order(q):
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, d), = factors.items()
    return finite_field(p, d)
