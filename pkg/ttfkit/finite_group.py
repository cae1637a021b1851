# ttfkit/finite_group.py
"""
Finite groups given by a multiplication table on element indices 0..order-1.

Labels are whitespace-free strings used by the file formats and reports.
Permutation groups also keep the one-line permutation behind every element;
permutations compose right to left, (στ)(i) = σ(τ(i)). The permutation
arithmetic is sympy's ``Permutation``, whose product applies the left
factor first, so στ here is ``Permutation(τ) * Permutation(σ)``.
"""
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from ttfkit.config import get_settings
from ttfkit.errors import ValidationError

logger = logging.getLogger(__name__)


def cycle_notation(perm):
    """1-based cycle notation without spaces, e.g. ``(1,2)(3,4)``; ``()`` for the identity."""
    if not perm:
        return "()"
    cycles = Permutation(list(perm)).cyclic_form
    return "".join("(" + ",".join(str(i + 1) for i in cycle) + ")" for cycle in cycles) or "()"


def compose(sigma, tau):
    return tuple((Permutation(list(tau)) * Permutation(list(sigma))).array_form)


def invert_perm(sigma):
    return tuple((~Permutation(list(sigma))).array_form)


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    labels: tuple = None
    name: str | None = None
    perms: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        n = len(table)
        if n == 0:
            raise ValidationError("a group has at least one element")
        for a, row in enumerate(table):
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise ValidationError(f"row {a} of the multiplication table is malformed", detail=a)
        labels = tuple(self.labels) if self.labels is not None else tuple(f"g{i}" for i in range(n))
        if len(labels) != n or len(set(labels)) != n or any(not l or any(ch.isspace() for ch in l) for l in labels):
            raise ValidationError("labels must be distinct nonempty words, one per element", detail=labels)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "labels", labels)
        self._check_axioms()

    def _check_axioms(self):
        n = self.order
        table = self.table
        e = next((a for a in range(n) if all(table[a][b] == b == table[b][a] for b in range(n))), None)
        if e is None:
            raise ValidationError("multiplication table has no identity")
        object.__setattr__(self, "identity", e)
        for a in range(n):
            if e not in table[a] or sorted(table[a]) != list(range(n)):
                raise ValidationError(f"element {self.labels[a]} has no inverse", detail=self.labels[a])
        settings = get_settings()
        if n <= settings.associativity_limit:
            triples = product(range(n), repeat=3)
        else:
            rng = random.Random(settings.seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(settings.sample_size))
        for a, b, c in triples:
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise ValidationError(
                    f"multiplication is not associative on ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})",
                    detail=(a, b, c))

    @property
    def order(self):
        return len(self.table)

    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self.table[a][b]

    @cached_property
    def _inverses(self):
        return tuple(row.index(self.identity) for row in self.table)

    def inv(self, a):
        return self._inverses[a]

    def power(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def label(self, a):
        return self.labels[a]

    def index_of(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown group element {label!r}", detail=label) from None

    @property
    def is_abelian(self):
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def generated(self, gens):
        """Sorted tuple of the elements of ⟨gens⟩."""
        closed = {self.identity}
        frontier = [self.identity]
        gens = list(dict.fromkeys(gens))
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in closed:
                    closed.add(y)
                    frontier.append(y)
        return tuple(sorted(closed))

    def subgroup(self, elements):
        """
        The closed subset ``elements`` as a group of its own, plus the list
        mapping new indices to old ones.
        """
        members = sorted(set(elements))
        position = {old: new for new, old in enumerate(members)}
        try:
            table = [[position[self.table[a][b]] for b in members] for a in members]
        except KeyError:
            raise ValidationError("subset is not closed under multiplication") from None
        perms = tuple(self.perms[a] for a in members) if self.perms else None
        sub = FiniteGroup(table, tuple(self.labels[a] for a in members), self.name and f"sub({self.name})", perms)
        return sub, members

    # permutation groups

    def perm(self, a):
        if self.perms is None:
            raise ValueError(f"{self.name or 'group'} is not a permutation group")
        return self.perms[a]

    def index_of_perm(self, sigma):
        if self.perms is None:
            raise ValueError(f"{self.name or 'group'} is not a permutation group")
        try:
            return self.perms.index(tuple(sigma))
        except ValueError:
            raise ValidationError(f"permutation {cycle_notation(sigma)} is not in the group") from None

    @property
    def degree(self):
        return len(self.perms[0]) if self.perms else 0


def trivial():
    return FiniteGroup(((0,),), ("e",), "1")


def cyclic(m, labels=None):
    if m < 1:
        raise ValueError("cyclic group order must be positive")
    if labels is None:
        labels = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, m)]
    return FiniteGroup(tuple(tuple((a + b) % m for b in range(m)) for a in range(m)), tuple(labels), f"Z/{m}")


def direct_product(g1, g2):
    """Pairs (a, b) indexed a·|g2| + b, labelled ``a,b``."""
    n2 = g2.order
    pairs = list(product(range(g1.order), range(n2)))
    table = [[g1.mul(a1, b1) * n2 + g2.mul(a2, b2) for b1, b2 in pairs] for a1, a2 in pairs]
    labels = [f"{g1.label(a)},{g2.label(b)}" for a, b in pairs]
    return FiniteGroup(table, labels, f"{g1.name or 'G'}x{g2.name or 'H'}")


def from_permutations(gens, degree=None, name=None):
    """Closure of the given one-line permutations, elements sorted lexicographically."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    if not gens:
        return _permutation_group((tuple(range(degree)),), name)
    group = PermutationGroup([Permutation(list(g), size=degree) for g in gens])
    perms = tuple(sorted(tuple(p.array_form) for p in group.generate()))
    return _permutation_group(perms, name)


def symmetric(n):
    if n < 1:
        return _permutation_group(((),), f"S{n}")
    perms = tuple(sorted(tuple(p.array_form) for p in SymmetricGroup(n).generate()))
    return _permutation_group(perms, f"S{n}")


def _permutation_group(perms, name):
    index = {p: i for i, p in enumerate(perms)}
    elements = [Permutation(list(p)) for p in perms]
    table = tuple(tuple(index[tuple((r * p).array_form)] for r in elements) for p in elements)
    logger.debug("permutation group %s of order %d", name, len(perms))
    return FiniteGroup(table, tuple(cycle_notation(p) for p in perms), name, perms)
