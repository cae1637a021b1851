# ttfkit/abelian.py
"""
Exact integer linear algebra and finitely generated abelian groups.

Smith normal form is the engine behind every torsion computation in the
package: abelianizations, the integral solvability tests of virtab and the
lattice saturation of subgroup closures all end up here.

Finite abelian groups are written additively as tuples of residues modulo
their torsion coefficients d₁ | d₂ | … ; characters into Q/Z take values in
exact ``Fraction``s with denominator dividing the exponent.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod

import sympy
from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf

from ttfkit.errors import ValidationError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(a) for a in row) for row in self.entries)
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise ValueError(f"entries do not match a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                               for row in self.entries))

    def transpose(self):
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                         tuple(() for _ in range(self.cols)))

    def apply(self, vector):
        return tuple(sum(a * v for a, v in zip(row, vector)) for row in self.entries)

    def is_identity(self):
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def determinant(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(sympy.Matrix(self.entries).det())

    def diagonal(self):
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def to_lists(self):
        return [list(row) for row in self.entries]


def smith_normal_form(matrix):
    """
    Return (U, D, V) with U·M·V = D, U and V unimodular and D diagonal with
    d₁ | d₂ | … (nonnegative, zeros last).

    Pivots are chosen of minimal absolute value over the remaining block;
    a pivot that fails to divide the block is replaced through a row addition.
    """
    m, n = matrix.rows, matrix.cols
    a = matrix.to_lists()
    u = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()

    def row_axpy(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_axpy(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return IntMatrix.of(u, m), IntMatrix.of(a, n), IntMatrix.of(v, n)
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
            p = a[t][t]
            cleared = True
            for i in range(t + 1, m):
                if a[i][t]:
                    row_axpy(i, t, a[i][t] // p)
                    cleared = cleared and not a[i][t]
            for j in range(t + 1, n):
                if a[t][j]:
                    col_axpy(j, t, a[t][j] // p)
                    cleared = cleared and not a[t][j]
            if not cleared:
                continue
            blocker = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if blocker is None:
                break
            row_axpy(t, blocker[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix.of(u, m), IntMatrix.of(a, n), IntMatrix.of(v, n)


def hermite_normal_form(rows, ncols=None):
    """
    Row Hermite normal form of the lattice spanned by ``rows``: echelon rows
    with positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows are dropped, so the result is a basis.

    sympy computes the column form (upper triangular, pivots at the bottom of
    each column); with coordinates and column order reversed the two agree.
    """
    work = [list(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    work = [r for r in work if any(r)]
    if not work:
        return []
    columns = sympy.Matrix(ncols, len(work), lambda i, j: work[j][ncols - 1 - i])
    w = sympy_hnf(columns)
    basis = [tuple(int(w[i, j]) for i in reversed(range(w.rows))) for j in range(w.cols)]
    return basis[::-1]


def solve_integral(matrix, rhs):
    """An integer x with matrix·x = rhs, or None when no integral solution exists."""
    u, d, v = smith_normal_form(matrix)
    c = u.apply(rhs)
    y = [0] * matrix.cols
    for i in range(matrix.rows):
        di = d[i, i] if i < matrix.cols else 0
        if di == 0:
            if c[i] != 0:
                return None
        elif c[i] % di:
            return None
        else:
            y[i] = c[i] // di
    return v.apply(y)


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinAbInvariants:
    """Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k with every dᵢ ≥ 2 and d₁ | d₂ | …"""
    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        torsion = tuple(int(d) for d in self.torsion)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(d < 2 for d in torsion):
            raise ValueError(f"torsion coefficients must be at least 2, got {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion coefficients {torsion} do not form a divisibility chain")
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def from_diagonal(cls, diagonal, ngens):
        """Invariants of Z^ngens modulo a lattice with the given Smith diagonal."""
        nonzero = [abs(d) for d in diagonal if d]
        return cls(ngens - len(nonzero), tuple(d for d in nonzero if d > 1))

    @classmethod
    def from_orders(cls, orders):
        """Invariants of ⊕ Z/mᵢ for arbitrary moduli (0 meaning Z)."""
        orders = list(orders)
        relations = IntMatrix.of([[m if i == j else 0 for j in range(len(orders))]
                                  for i, m in enumerate(orders)], len(orders))
        return invariants_of_relations(relations)

    @property
    def is_torsion_free(self):
        return not self.torsion

    @property
    def order(self):
        """Cardinality, or None for an infinite group."""
        return prod(self.torsion) if self.rank == 0 else None

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def invariants_of_relations(relations):
    """Invariants of Z^cols modulo the row space of an integer relation matrix."""
    _, d, _ = smith_normal_form(relations)
    return FinAbInvariants.from_diagonal(d.diagonal(), relations.cols)


def relation_matrix(pres):
    from ttfkit.fp_core import exponent_sums

    return IntMatrix.of([exponent_sums(rel, pres.ngens) for rel in pres.relators], pres.ngens)


def abelianization(pres):
    """Invariants of Z^gens modulo the exponent-sum rows of the relators."""
    invariants = invariants_of_relations(relation_matrix(pres))
    logger.debug("abelianization of %s: %s", pres.name or "group", invariants)
    return invariants


def p_group_invariants(p, kernel_orders):
    """
    Invariants of a finite abelian p-group from kernel_orders[k] = |G[p^k]|
    (k = 0, 1, … until the sequence stabilises).
    """
    exponents = []
    for k in range(1, len(kernel_orders)):
        jump = kernel_orders[k] // kernel_orders[k - 1]
        count = 0
        while jump > 1:
            if jump % p:
                raise ValueError(f"kernel orders {kernel_orders} do not describe a {p}-group")
            jump //= p
            count += 1
        exponents.append(count)
    # exponents[k-1] = number of cyclic factors of order ≥ p^k
    torsion = []
    for k in range(len(exponents), 0, -1):
        beyond = exponents[k] if k < len(exponents) else 0
        torsion.extend([p ** k] * (exponents[k - 1] - beyond))
    return FinAbInvariants(0, tuple(sorted(torsion)))


# ---------------------------------------------------------------------------
# Finite abelian groups and Pontryagin duality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinAbGroup:
    """
    A finite abelian group Z/d₁ ⊕ … ⊕ Z/d_k.

    A group returned by ``dual_group`` remembers the group it is dual to in
    ``dual_of``; its elements are characters and ``pair`` evaluates them.
    """
    invariants: FinAbInvariants
    dual_of: "FinAbGroup | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.invariants.rank:
            raise ValueError("a FinAbGroup must have rank 0")

    @classmethod
    def cyclic_sum(cls, *orders):
        return cls(FinAbInvariants.from_orders(orders))

    @property
    def moduli(self):
        return self.invariants.torsion

    @property
    def order(self):
        return self.invariants.order

    @property
    def exponent(self):
        return self.moduli[-1] if self.moduli else 1

    def zero(self):
        return (0,) * len(self.moduli)

    def element(self, coords):
        return tuple(int(x) % d for x, d in zip(coords, self.moduli))

    def generators(self):
        k = len(self.moduli)
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def elements(self):
        return [tuple(e) for e in product(*(range(d) for d in self.moduli))]

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple(-a % d for a, d in zip(x, self.moduli))

    def scale(self, k, x):
        return tuple(k * a % d for a, d in zip(x, self.moduli))

    def element_order(self, x):
        order = 1
        for a, d in zip(x, self.moduli):
            component = d // gcd(a, d)
            order = order * component // gcd(order, component)
        return order

    def pair(self, chi, g):
        """⟨χ, g⟩ ∈ Q/Z for a character χ of ``dual_of`` and g in ``dual_of``."""
        if self.dual_of is None:
            raise ValueError("pairing is only defined on a dual group")
        return sum((Fraction(c * x, d) for c, x, d in zip(chi, g, self.moduli)), Fraction(0)) % 1


def dual_group(group):
    """
    Ĝ = Hom(G, Q/Z) modelled inside μ_∞ ∩ (1/exp G)Z/Z: the character with
    coordinates (k₁, …) sends g to Σ kᵢ gᵢ / dᵢ mod 1.
    """
    return FinAbGroup(group.invariants, dual_of=group)


def double_dual_evaluation(group):
    """
    The canonical map G → Ĝ̂, g ↦ (χ ↦ ⟨χ, g⟩), expressed in the coordinates
    of Ĝ̂ by evaluating g on the basis characters of Ĝ.
    """
    dual = dual_group(group)
    bidual = dual_group(dual)
    mapping = {}
    for g in group.elements():
        coords = [dual.pair(chi, g) * d for chi, d in zip(dual.generators(), dual.moduli)]
        mapping[g] = bidual.element(int(c) for c in coords)
    return bidual, mapping


@dataclass(frozen=True)
class FinAbHom:
    """Homomorphism given by the images of the standard generators of ``source``."""
    source: FinAbGroup
    target: FinAbGroup
    images: tuple

    def __post_init__(self):
        images = tuple(self.target.element(x) for x in self.images)
        if len(images) != len(self.source.moduli):
            raise ValidationError("one image per source generator is required")
        for d, x in zip(self.source.moduli, images):
            if self.target.scale(d, x) != self.target.zero():
                raise ValidationError(f"image {x} of a generator of order {d} does not have order dividing {d}",
                                      detail=x)
        object.__setattr__(self, "images", images)

    def __call__(self, x):
        out = self.target.zero()
        for coeff, image in zip(x, self.images):
            out = self.target.add(out, self.target.scale(coeff, image))
        return out

    def kernel(self):
        return {x for x in self.source.elements() if self(x) == self.target.zero()}

    def image(self):
        return {self(x) for x in self.source.elements()}

    def dual(self):
        """f̂: T̂ → Ŝ, χ ↦ χ∘f."""
        dual_source = dual_group(self.target)
        dual_target = dual_group(self.source)
        images = []
        for chi in dual_source.generators():
            images.append(tuple(int(dual_source.pair(chi, self(e)) * d)
                                for e, d in zip(self.source.generators(), self.source.moduli)))
        return FinAbHom(dual_source, dual_target, tuple(images))


def is_exact(f, g):
    """Exactness of A --f--> B --g--> C at B."""
    if f.target.invariants != g.source.invariants:
        raise ValueError("maps are not composable")
    return f.image() == g.kernel()


def is_short_exact(f, g):
    return (f.kernel() == {f.source.zero()} and is_exact(f, g)
            and g.image() == set(g.target.elements()))


# ---------------------------------------------------------------------------
# Formal profinite abelian data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfAbData:
    """∏_p Z_p^{r_p} ⊕ (finite part), described by its structure data only."""
    local_ranks: dict = field(default_factory=dict)
    finite_part: FinAbInvariants = FinAbInvariants()

    def __post_init__(self):
        for p, r in self.local_ranks.items():
            if not sympy.isprime(p):
                raise ValueError(f"{p} is not a prime")
            if r < 1:
                raise ValueError(f"local rank at {p} must be positive, got {r}")
        if self.finite_part.rank:
            raise ValueError("finite_part must have rank 0")


@dataclass(frozen=True)
class LatticeEmbedding:
    """n = max r_p together with the coordinates of Ẑⁿ used at each prime."""
    n: int
    coordinates: dict


def embed_rank(data):
    """
    The least n with a closed embedding ∏_p Z_p^{r_p} → Ẑⁿ = ∏_p Z_pⁿ; at
    prime p the factor lands on the first r_p coordinates.
    """
    if not data.finite_part.is_torsion_free:
        raise ValidationError("embedding into Ẑⁿ needs torsion-free data", detail=data.finite_part)
    n = max(data.local_ranks.values(), default=0)
    coordinates = {p: tuple(range(r)) for p, r in sorted(data.local_ranks.items())}
    return LatticeEmbedding(n, coordinates)


def _multiplication_is_onto(group, ell):
    return len({group.scale(ell, x) for x in group.elements()}) == group.order


def _dual_is_divisible_at(data, ell):
    # Prüfer summands Z(p^∞) are divisible; only the finite dual can obstruct.
    finite_dual = dual_group(FinAbGroup(data.finite_part))
    return _multiplication_is_onto(finite_dual, ell)


def duality_criteria(data):
    """
    (torsion_free, dual_divisible), each computed on its own description:
    torsion freeness from the finite part, divisibility on the dual
    ⊕_p (Q_p/Z_p)^{r_p} ⊕ (finite part)^ prime by prime.
    """
    torsion_free = data.finite_part.is_torsion_free
    order = data.finite_part.order
    primes = sorted(sympy.factorint(order)) if order > 1 else []
    dual_divisible = all(_dual_is_divisible_at(data, ell) for ell in primes)
    return torsion_free, dual_divisible


def p_duality_criteria(data, p):
    """(p-torsion free, dual p-divisible) for one prime p."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not a prime")
    group = FinAbGroup(data.finite_part)
    p_torsion_free = all(group.scale(p, x) != group.zero() for x in group.elements() if x != group.zero())
    return p_torsion_free, _dual_is_divisible_at(data, p)
