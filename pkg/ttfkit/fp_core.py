# ttfkit/fp_core.py
"""
Finitely presented groups.

Words are tuples of nonzero signed generator numbers: ``k`` stands for
generator ``k - 1`` and ``-k`` for its inverse. Coset numbers are 0-based
internally, coset 0 being the subgroup itself; reports print them 1-based.

Coset enumeration, the low-index search and the Reidemeister rewriting run
on ``sympy.combinatorics``. On top of it this module keeps coset tables in a
canonical order under a budget and eliminates length-1 generators from
Schreier presentations. The searches raise
``BudgetExceeded`` rather than ever returning a truncated answer.
"""
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from sympy.combinatorics.coset_table import CosetTable as SympyCosetTable, coset_enumeration_r
from sympy.combinatorics.fp_groups import (FpGroup, define_schreier_generators, reidemeister_relators,
                                           low_index_subgroups as sympy_low_index_subgroups)
from sympy.combinatorics.free_groups import free_group

from ttfkit.config import get_settings
from ttfkit.errors import BudgetExceeded, PresentationError, ValidationError, VerificationFailure

logger = logging.getLogger(__name__)

SYMBOL_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
BUILTIN_NAMES = ("heisenberg", "free", "free_abelian", "surface", "nonorientable",
                 "dihedral_inf", "cyclic", "semidirect_flip")


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def free_reduce(letters):
    out = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word):
    return tuple(-letter for letter in reversed(word))


def cyclic_reduce(word):
    word = free_reduce(word)
    while len(word) > 1 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def exponent_sums(word, ngens):
    sums = [0] * ngens
    for letter in word:
        sums[abs(letter) - 1] += 1 if letter > 0 else -1
    return sums


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """
    ⟨generators | relators⟩ with relators stored freely reduced.

    Empty relators are dropped on construction; symbols must be lowercase
    identifiers because the uppercased symbol denotes the inverse.
    """
    generators: tuple
    relators: tuple = ()
    name: str | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        seen = set()
        for sym in gens:
            if not SYMBOL_RE.match(sym):
                raise PresentationError(f"invalid generator symbol {sym!r}")
            if sym in seen:
                raise PresentationError(f"duplicate generator symbol {sym!r}")
            seen.add(sym)
        rels = []
        for rel in self.relators:
            for letter in rel:
                if letter == 0 or abs(letter) > len(gens):
                    raise PresentationError(f"relator letter {letter} does not index a generator")
            reduced = free_reduce(rel)
            if reduced:
                rels.append(reduced)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self):
        return len(self.generators)

    def word_text(self, word):
        if not word:
            return "1"
        return " ".join(self.generators[l - 1] if l > 0 else self.generators[-l - 1].upper()
                        for l in word)

    def parse_word(self, text):
        """
        Parse whitespace-separated letters. When every generator is a single
        character, an unbroken token such as ``aBa`` is split into letters.
        """
        lookup = self._letter_lookup
        letters = []
        single_char = all(len(g) == 1 for g in self.generators)
        for token in text.split():
            if token == "1":
                continue
            if token in lookup:
                letters.append(lookup[token])
            elif single_char and all(ch in lookup for ch in token):
                letters.extend(lookup[ch] for ch in token)
            else:
                raise PresentationError(f"unknown letter {token!r} in word {text!r}")
        return free_reduce(letters)

    @cached_property
    def _letter_lookup(self):
        lookup = {}
        for i, sym in enumerate(self.generators, start=1):
            lookup[sym] = i
            lookup[sym.upper()] = -i
        return lookup

    @property
    def fp_group(self):
        """The same group as a sympy ``FpGroup``."""
        return _fp_group(self.generators, self.relators)

    def free_word(self, word):
        """A word as an element of ``fp_group.free_group``."""
        gens = self.fp_group.generators
        element = self.fp_group.free_group.identity
        for letter in word:
            element = element * (gens[letter - 1] if letter > 0 else gens[-letter - 1] ** -1)
        return element


@lru_cache(maxsize=256)
def _fp_group(generators, relators):
    free, *gens = free_group(", ".join(generators))
    rels = []
    for rel in relators:
        element = free.identity
        for letter in rel:
            element = element * (gens[letter - 1] if letter > 0 else gens[-letter - 1] ** -1)
        rels.append(element)
    return FpGroup(free, rels)


def _from_free(element, lookup):
    """Back from a sympy free group element; ``lookup`` maps symbol names to generator numbers."""
    letters = []
    for symbol, exp in element.array_form:
        k = lookup[str(symbol)]
        letters.extend([k if exp > 0 else -k] * abs(exp))
    return free_reduce(letters)


def parse_presentation(text):
    """
    Parse the line-oriented presentation format::

        group <name>          (optional)
        gens <s1> <s2> ...
        rel <letters...>      (any number; uppercase letter = inverse)

    ``#`` starts a comment. Raises PresentationError with line and column.
    """
    name = None
    gens = None
    lookup = {}
    relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        keyword, col = tokens[0]
        args = tokens[1:]
        if keyword == "group":
            if len(args) != 1:
                raise PresentationError("'group' takes exactly one name", lineno, col)
            name = args[0][0]
        elif keyword == "gens":
            if gens is not None:
                raise PresentationError("second 'gens' line", lineno, col)
            gens = []
            for sym, scol in args:
                if not SYMBOL_RE.match(sym):
                    raise PresentationError(f"invalid generator symbol {sym!r}", lineno, scol)
                if sym in lookup:
                    raise PresentationError(f"duplicate generator symbol {sym!r}", lineno, scol)
                gens.append(sym)
                lookup[sym] = len(gens)
                lookup[sym.upper()] = -len(gens)
        elif keyword == "rel":
            if gens is None:
                raise PresentationError("'rel' before 'gens'", lineno, col)
            word = []
            for sym, scol in args:
                if sym not in lookup:
                    raise PresentationError(f"relator uses undeclared symbol {sym!r}", lineno, scol)
                word.append(lookup[sym])
            relators.append(tuple(word))
        else:
            raise PresentationError(f"unknown keyword {keyword!r}", lineno, col)
    if gens is None:
        raise PresentationError("missing 'gens' line")
    return GroupPresentation(tuple(gens), tuple(relators), name)


def format_presentation(pres):
    lines = []
    if pres.name:
        lines.append(f"group {pres.name}")
    lines.append(" ".join(["gens", *pres.generators]))
    for rel in pres.relators:
        lines.append(f"rel {pres.word_text(rel)}")
    return "\n".join(lines) + "\n"


def _letters(n):
    if n <= 26:
        return tuple(chr(ord("a") + i) for i in range(n))
    return tuple(f"x{i}" for i in range(1, n + 1))


def _commutator(i, j):
    return (i, j, -i, -j)


def builtin(name, params=()):
    """Standard presentations of the example groups, e.g. ``builtin("surface", [2])``."""
    params = list(params)
    if name not in BUILTIN_NAMES:
        raise ValidationError(f"unknown builtin group {name!r}; choose from {', '.join(BUILTIN_NAMES)}",
                              detail=name)
    if name in ("free", "free_abelian", "surface", "nonorientable", "cyclic"):
        if len(params) != 1:
            raise ValidationError(f"builtin {name!r} takes exactly one integer parameter", detail=params)
        n = int(params[0])
        if n <= 0:
            raise ValidationError(f"builtin {name!r} needs a positive parameter, got {n}", detail=n)
    elif params:
        raise ValidationError(f"builtin {name!r} takes no parameters", detail=params)

    if name == "heisenberg":
        # x, y, z = 1, 2, 3
        return GroupPresentation(("x", "y", "z"),
                                 ((1, 2, -1, -2, -3), (1, 3, -1, -3), (2, 3, -2, -3)),
                                 "heisenberg")
    if name == "free":
        return GroupPresentation(_letters(n), (), f"free({n})")
    if name == "free_abelian":
        rels = tuple(_commutator(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        return GroupPresentation(_letters(n), rels, f"free_abelian({n})")
    if name == "surface":
        gens = tuple(sym for i in range(1, n + 1) for sym in (f"a{i}", f"b{i}"))
        rel = tuple(letter for i in range(n) for letter in _commutator(2 * i + 1, 2 * i + 2))
        return GroupPresentation(gens, (rel,), f"surface({n})")
    if name == "nonorientable":
        gens = tuple(f"a{i}" for i in range(1, n + 1))
        rel = tuple(letter for i in range(1, n + 1) for letter in (i, i))
        return GroupPresentation(gens, (rel,), f"nonorientable({n})")
    if name == "dihedral_inf":
        return GroupPresentation(("a", "b"), ((1, 1), (1, 2, 1, 2)), "dihedral_inf")
    if name == "cyclic":
        return GroupPresentation(("a",), ((1,) * n,), f"cyclic({n})")
    # semidirect_flip: Z ⋉ Z with t acting on a by inversion
    return GroupPresentation(("a", "t"), ((2, 1, -2, 1),), "semidirect_flip")


def free_product(p1, p2):
    """Disjoint union of generators (clashing symbols of p2 get a suffix) and relators."""
    taken = set(p1.generators)
    originals = set(p2.generators)
    renamed = []
    for sym in p2.generators:
        new, k = sym, 2
        while new in taken or (new != sym and new in originals):
            new = f"{sym}_{k}"
            k += 1
        taken.add(new)
        renamed.append(new)
    shift = p1.ngens
    rels = p1.relators + tuple(tuple(l + shift if l > 0 else l - shift for l in rel)
                               for rel in p2.relators)
    name = f"{p1.name or 'G1'}*{p2.name or 'G2'}"
    return GroupPresentation(p1.generators + tuple(renamed), rels, name)


# ---------------------------------------------------------------------------
# Coset tables
# ---------------------------------------------------------------------------

def _standardize(rows, ncols, start=0):
    """
    Renumber cosets by first appearance in row-major order, with ``start``
    becoming coset 0. Columns are g_1, g_1⁻¹, g_2, ...
    """
    order = [start]
    new_of = {start: 0}
    i = 0
    while i < len(order):
        row = rows[order[i]]
        for x in range(ncols):
            target = row[x]
            if target not in new_of:
                new_of[target] = len(order)
                order.append(target)
        i += 1
    return [[new_of[rows[old][x]] for x in range(ncols)] for old in order]


@dataclass(frozen=True)
class CosetTable:
    """
    Permutation action of the generators on the cosets of a finite-index subgroup.

    ``action[k][c]`` is the coset c·g_k. Tables produced here are standardized:
    cosets are numbered by first appearance when scanning rows in order and
    columns in the order g_1, g_1⁻¹, g_2, ...
    """
    index: int
    action: tuple
    presentation: GroupPresentation = field(repr=False, compare=False)
    subgroup_gens: tuple = field(default=(), compare=False)

    @cached_property
    def inverse_action(self):
        inverse = []
        for perm in self.action:
            inv = [0] * self.index
            for c, d in enumerate(perm):
                inv[d] = c
            inverse.append(tuple(inv))
        return tuple(inverse)

    def image(self, coset, letter):
        if letter > 0:
            return self.action[letter - 1][coset]
        return self.inverse_action[-letter - 1][coset]

    def apply(self, coset, word):
        for letter in word:
            coset = self.image(coset, letter)
        return coset

    def sort_key(self):
        return (self.index, tuple(c for perm in self.action for c in perm))

    def schreier_tree(self):
        """
        Map coset → (parent coset, letter) with parent·letter = coset, following
        the standard numbering; coset 0 is the root.
        """
        tree = {}
        seen = {0}
        for c in range(self.index):
            for k in range(len(self.action)):
                for letter in (k + 1, -(k + 1)):
                    d = self.image(c, letter)
                    if d not in seen:
                        seen.add(d)
                        tree[d] = (c, letter)
        return tree

    def transversal(self):
        """Schreier transversal words t_c with 1·t_c = c."""
        tree = self.schreier_tree()
        words = {0: ()}
        for c in sorted(tree, key=lambda d: d):
            parent, letter = tree[c]
            words[c] = words[parent] + (letter,)
        return [words[c] for c in range(self.index)]

    def verify(self):
        """Raise VerificationFailure unless the table is a valid closed coset table."""
        n = self.index
        if len(self.action) != self.presentation.ngens:
            raise VerificationFailure("coset table has the wrong number of generator rows")
        for k, perm in enumerate(self.action):
            if sorted(perm) != list(range(n)):
                raise VerificationFailure(f"generator {self.presentation.generators[k]} is not a bijection")
        for rel in self.presentation.relators:
            for c in range(n):
                if self.apply(c, rel) != c:
                    raise VerificationFailure(
                        f"relator {self.presentation.word_text(rel)} moves coset {c + 1}")
        for word in self.subgroup_gens:
            if self.apply(0, word) != 0:
                raise VerificationFailure(
                    f"subgroup generator {self.presentation.word_text(word)} leaves the subgroup coset")
        reached = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            for perm in self.action:
                if perm[c] not in reached:
                    reached.add(perm[c])
                    frontier.append(perm[c])
        if len(reached) != n:
            raise VerificationFailure("coset table is not transitive")
        return True

    @classmethod
    def from_rows(cls, rows, pres, subgroup_gens=()):
        """Build from full rows (generator and inverse columns), standardizing first."""
        std = _standardize(rows, 2 * pres.ngens)
        action = tuple(tuple(row[2 * k] for row in std) for k in range(pres.ngens))
        return cls(len(std), action, pres, tuple(subgroup_gens))


# ---------------------------------------------------------------------------
# Coset enumeration
# ---------------------------------------------------------------------------

def _full_rows(table):
    """Rows with both the generator and the inverse columns, as sympy stores them."""
    r = len(table.action)
    return [[table.image(c, letter) for k in range(r) for letter in (k + 1, -(k + 1))]
            for c in range(table.index)]


def coset_enumerate(pres, subgroup_gens=(), budget=None):
    """
    Todd–Coxeter enumeration (HLT) of the cosets of ⟨subgroup_gens⟩.

    :param budget: maximal number of cosets defined (settings default).
    :return: a verified, standardized CosetTable.
    :raises BudgetExceeded: the index is infinite or larger than the budget allows.
    """
    budget = get_settings().coset_budget if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least 1")
    subgroup_gens = tuple(free_reduce(w) for w in subgroup_gens)
    if pres.ngens == 0:
        return CosetTable(1, (), pres, subgroup_gens)
    group = pres.fp_group
    try:
        enumeration = coset_enumeration_r(group, [pres.free_word(w) for w in subgroup_gens if w],
                                          max_cosets=budget)
    except ValueError as exc:
        raise BudgetExceeded(f"coset enumeration exceeded the budget of {budget} cosets",
                             {"defined_cosets": budget}) from exc
    enumeration.compress()
    table = CosetTable.from_rows(enumeration.table, pres, subgroup_gens)
    table.verify()
    logger.info("index of subgroup in %s is %d", pres.name or "group", table.index)
    return table


# ---------------------------------------------------------------------------
# Low-index subgroups
# ---------------------------------------------------------------------------

def _conjugates(table):
    """Every subgroup conjugate to ``table``'s, keyed by sort key."""
    rows = _full_rows(table)
    ncols = 2 * len(table.action)
    found = {}
    for base in range(table.index):
        std = _standardize(rows, ncols, start=base)
        action = tuple(tuple(row[2 * k] for row in std) for k in range(len(table.action)))
        conjugate = CosetTable(table.index, action, table.presentation)
        found.setdefault(conjugate.sort_key(), conjugate)
    return found


def _level_classes(pres, index):
    """Conjugacy class representatives of index exactly ``index``."""
    if pres.ngens == 0:
        return [CosetTable(1, (), pres)] if index == 1 else []
    reps = sympy_low_index_subgroups(pres.fp_group, index)
    return [CosetTable.from_rows(rep.table, pres) for rep in reps if len(rep.table) == index]


def subgroup_levels(pres, max_index, budget=None, conjugacy_classes=False):
    """
    Yield ``(index, tables)`` for index 1, 2, ... max_index, each level sorted
    by (index, flattened action rows). A level is searched only when the
    caller asks for it, so a consumer that stops early never pays for the
    larger indices.

    :param budget: maximal number of subgroups handed out over all levels.
    :raises BudgetExceeded: the next level would go past the budget.
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    budget = get_settings().coset_budget if budget is None else budget
    found = 0
    for index in range(1, max_index + 1):
        tables = []
        for rep in _level_classes(pres, index):
            members = _conjugates(rep)
            if conjugacy_classes:
                tables.append(members[min(members)])
            else:
                tables.extend(members.values())
        if found + len(tables) > budget:
            raise BudgetExceeded(
                f"low-index search exceeded the budget of {budget} subgroups",
                {"subgroups_found": found, "index": index})
        found += len(tables)
        for table in tables:
            table.verify()
        tables.sort(key=CosetTable.sort_key)
        logger.debug("%d subgroups of index %d in %s", len(tables), index, pres.name or "group")
        yield index, tables


def low_index_subgroups(pres, max_index, budget=None, conjugacy_classes=False):
    """
    All subgroups of index ≤ max_index, as standardized coset tables sorted by
    (index, flattened action rows). With ``conjugacy_classes`` only the
    smallest table of each conjugacy class is kept.
    """
    tables = [table for _, level in subgroup_levels(pres, max_index, budget, conjugacy_classes)
              for table in level]
    logger.info("%d subgroups of index <= %d in %s", len(tables), max_index, pres.name or "group")
    return tables


# ---------------------------------------------------------------------------
# Reidemeister–Schreier
# ---------------------------------------------------------------------------

def _eliminate_trivial(gens, relators):
    """Drop generators that some length-1 relator kills, until none is left."""
    relators = [rel for rel in relators if rel]
    while True:
        killed = {abs(rel[0]) for rel in relators if len(rel) == 1}
        if not killed:
            break
        keep = [i for i in range(1, len(gens) + 1) if i not in killed]
        renumber = {old: new for new, old in enumerate(keep, start=1)}
        gens = [gens[i - 1] for i in keep]
        new_rels = []
        for rel in relators:
            word = free_reduce(renumber[abs(l)] * (1 if l > 0 else -1) for l in rel if abs(l) not in killed)
            if word:
                new_rels.append(word)
        relators = new_rels
    unique = sorted(set(relators), key=lambda rel: (len(rel), rel))
    return gens, unique


def _schreier_name(symbol):
    """sympy names s_{c,g} ``g_c`` with c 0-based; reports use ``s{c+1}_g``."""
    gen, coset = str(symbol).rsplit("_", 1)
    return f"s{int(coset) + 1}_{gen}"


def reidemeister_schreier(pres, table):
    """
    Presentation of the subgroup described by ``table`` on its Schreier
    generators s_{c,g} = t_c g t_{c·g}⁻¹ (tree generators omitted), with every
    conjugate t_c r t_c⁻¹ of a relator rewritten.
    """
    if (table.presentation.generators != pres.generators
            or table.presentation.relators != pres.relators):
        raise ValidationError("coset table was not built from this presentation")
    n = table.index
    base = pres.name or "group"
    if pres.ngens == 0:
        return GroupPresentation((), (), f"{base}[index={n}]")
    schreier = SympyCosetTable(pres.fp_group, [])
    schreier.table = _standardize(_full_rows(table), 2 * pres.ngens)
    schreier.p = list(range(n))
    define_schreier_generators(schreier)
    reidemeister_relators(schreier)
    symbols = [g.array_form[0][0] for g in schreier._schreier_generators]
    lookup = {str(sym): i for i, sym in enumerate(symbols, start=1)}
    relators = [_from_free(rel, lookup) for rel in schreier._reidemeister_relators]
    logger.debug("Schreier presentation: %d generators, %d relators before elimination",
                 len(symbols), len(relators))
    names, relators = _eliminate_trivial([_schreier_name(sym) for sym in symbols], relators)
    return GroupPresentation(tuple(names), tuple(relators), f"{base}[index={n}]")
