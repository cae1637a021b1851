# ttfkit/formats.py
"""
Readers and writers for the extension-data (.vab), approximation-system
(.as) and stage-subgroup (.sub) text formats.

All three are line oriented, whitespace separated, with ``#`` comments.

.vab::

    name klein_bottle           (optional)
    Q e flip                    element labels of Q
    row e flip                  one row per label: products label_i · label_j
    row flip e
    n 2
    action flip := 1 0 ; 0 -1   rows separated by ';' (identity when omitted)
    cocycle flip flip := 1 0    (zero when omitted)

.as is a .vab block followed by::

    gens a b                    generators of Γ
    image a := flip | 0 0       image of a generator in Ĝ
    G e g                       the finite quotient, with its own 'row' lines
    sigma.q flip := g           σ(q, 0)
    sigma.v 1 := e              σ(e, e_j), j counted from 1

.sub lists one stage element per line as ``perm | twist`` with the
permutation in 1-based one-line notation, e.g. ``2 1 | 0 0``.

Syntax errors raise FormatError with line and column; semantic errors come
from the constructors (ValidationError).
"""
import re

from ttfkit.approx import make_approx_system
from ttfkit.errors import FormatError, ValidationError
from ttfkit.finite_group import FiniteGroup
from ttfkit.galois_rings import StageGroupElement
from ttfkit.virtab import make_virtab


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if tokens:
            yield lineno, tokens


def _int(token, lineno):
    text, col = token
    try:
        return int(text)
    except ValueError:
        raise FormatError(f"expected an integer, got {text!r}", lineno, col) from None


def _split_assignment(tokens, lineno, nkeys):
    """``keyword k1 .. kn := values`` → (keys, value tokens)."""
    keyword, col = tokens[0]
    if len(tokens) < nkeys + 2 or tokens[nkeys + 1][0] != ":=":
        raise FormatError(f"'{keyword}' expects {nkeys} key(s) followed by ':='", lineno, col)
    return [t[0] for t in tokens[1:nkeys + 1]], tokens[nkeys + 2:]


class _GroupBlock:
    """Labels plus 'row' lines of a finite group."""

    def __init__(self, labels, lineno, col):
        self.labels = labels
        self.rows = []
        self.lineno, self.col = lineno, col
        if len(set(labels)) != len(labels) or not labels:
            raise FormatError("group labels must be distinct and nonempty", lineno, col)

    def add_row(self, tokens, lineno):
        if len(self.rows) == len(self.labels):
            raise FormatError("more rows than group elements", lineno, tokens[0][1])
        row = []
        for text, col in tokens[1:]:
            if text not in self.labels:
                raise FormatError(f"unknown group element {text!r}", lineno, col)
            row.append(self.labels.index(text))
        if len(row) != len(self.labels):
            raise FormatError(f"row has {len(row)} entries, expected {len(self.labels)}", lineno, tokens[0][1])
        self.rows.append(row)

    def build(self, name):
        if len(self.rows) != len(self.labels):
            raise FormatError(f"group table has {len(self.rows)} rows, expected {len(self.labels)}",
                              self.lineno, self.col)
        return FiniteGroup(self.rows, tuple(self.labels), name)


class _Reader:
    def __init__(self):
        self.name = None
        self.q_block = None
        self.g_block = None
        self.current = None
        self.n = None
        self.action = {}
        self.cocycle = {}
        self.gens = None
        self.images = {}
        self.phi = {}
        self.lam = {}

    def _need_q(self, lineno, col, what):
        if self.q_block is None:
            raise FormatError(f"'{what}' before 'Q'", lineno, col)

    def vab_line(self, lineno, tokens):
        keyword, col = tokens[0]
        if keyword == "name":
            if len(tokens) != 2:
                raise FormatError("'name' takes exactly one word", lineno, col)
            self.name = tokens[1][0]
        elif keyword == "Q":
            if self.q_block is not None:
                raise FormatError("second 'Q' line", lineno, col)
            self.q_block = self.current = _GroupBlock([t[0] for t in tokens[1:]], lineno, col)
        elif keyword == "row":
            if self.current is None:
                raise FormatError("'row' before a group header", lineno, col)
            self.current.add_row(tokens, lineno)
        elif keyword == "n":
            if len(tokens) != 2:
                raise FormatError("'n' takes exactly one integer", lineno, col)
            self.n = _int(tokens[1], lineno)
            if self.n < 0:
                raise FormatError("lattice rank must be nonnegative", lineno, tokens[1][1])
        elif keyword == "action":
            self._need_q(lineno, col, keyword)
            (label,), values = _split_assignment(tokens, lineno, 1)
            self._check_label(self.q_block, label, lineno, tokens[1][1])
            rows, current = [], []
            for token in values:
                if token[0] == ";":
                    rows.append(current)
                    current = []
                else:
                    current.append(_int(token, lineno))
            rows.append(current)
            if self.n is None or len(rows) != self.n or any(len(r) != self.n for r in rows):
                raise FormatError(f"action of {label} is not an n x n matrix (n = {self.n})", lineno, col)
            if label in self.action:
                raise FormatError(f"second action for {label}", lineno, col)
            self.action[label] = rows
        elif keyword == "cocycle":
            self._need_q(lineno, col, keyword)
            (a, b), values = _split_assignment(tokens, lineno, 2)
            self._check_label(self.q_block, a, lineno, tokens[1][1])
            self._check_label(self.q_block, b, lineno, tokens[2][1])
            vector = tuple(_int(t, lineno) for t in values)
            if self.n is None or len(vector) != self.n:
                raise FormatError(f"cocycle value has {len(vector)} entries, expected {self.n}", lineno, col)
            self.cocycle[a, b] = vector
        else:
            return False
        return True

    def as_line(self, lineno, tokens):
        keyword, col = tokens[0]
        if keyword == "gens":
            if self.gens is not None:
                raise FormatError("second 'gens' line", lineno, col)
            self.gens = [t[0] for t in tokens[1:]]
            if len(set(self.gens)) != len(self.gens):
                raise FormatError("duplicate generator", lineno, col)
        elif keyword == "image":
            if self.gens is None:
                raise FormatError("'image' before 'gens'", lineno, col)
            (label,), values = _split_assignment(tokens, lineno, 1)
            if label not in self.gens:
                raise FormatError(f"undeclared generator {label!r}", lineno, tokens[1][1])
            if not values:
                raise FormatError("missing image", lineno, col)
            self.images[label] = (" ".join(t[0] for t in values), lineno, values[0][1])
        elif keyword == "G":
            if self.g_block is not None:
                raise FormatError("second 'G' line", lineno, col)
            self.g_block = self.current = _GroupBlock([t[0] for t in tokens[1:]], lineno, col)
        elif keyword == "sigma.q":
            self._need_q(lineno, col, keyword)
            (label,), values = _split_assignment(tokens, lineno, 1)
            self._check_label(self.q_block, label, lineno, tokens[1][1])
            self.phi[label] = self._single(values, lineno, col)
        elif keyword == "sigma.v":
            (j,), values = _split_assignment(tokens, lineno, 1)
            index = _int((j, tokens[1][1]), lineno)
            if self.n is None or not 1 <= index <= self.n:
                raise FormatError(f"basis index {index} out of range 1..{self.n}", lineno, tokens[1][1])
            self.lam[index - 1] = self._single(values, lineno, col)
        else:
            return False
        return True

    @staticmethod
    def _single(values, lineno, col):
        if len(values) != 1:
            raise FormatError("expected exactly one group element", lineno, col)
        return values[0][0], lineno, values[0][1]

    @staticmethod
    def _check_label(block, label, lineno, col):
        if label not in block.labels:
            raise FormatError(f"unknown element {label!r} of Q", lineno, col)

    def virtab(self):
        if self.q_block is None:
            raise FormatError("missing 'Q' line")
        if self.n is None:
            raise FormatError("missing 'n' line")
        Q = self.q_block.build("Q")
        return make_virtab(Q, self.n, self.action, self.cocycle, name=self.name)


def read_vab(text):
    reader = _Reader()
    for lineno, tokens in _lines(text):
        if not reader.vab_line(lineno, tokens):
            raise FormatError(f"unknown keyword {tokens[0][0]!r}", lineno, tokens[0][1])
    return reader.virtab()


def _matrix_text(matrix):
    return " ; ".join(" ".join(str(x) for x in row) for row in matrix.entries)


def _group_lines(header, group):
    lines = [" ".join([header, *group.labels])]
    for a in group.elements():
        lines.append(" ".join(["row", *(group.label(group.mul(a, b)) for b in group.elements())]))
    return lines


def write_vab(G):
    Q = G.Q
    lines = [f"name {G.name}"] if G.name else []
    lines += _group_lines("Q", Q)
    lines.append(f"n {G.n}")
    for q in Q.elements():
        if not G.action[q].is_identity():
            lines.append(f"action {Q.label(q)} := {_matrix_text(G.action[q])}")
    for a in Q.elements():
        for b in Q.elements():
            value = G.cocycle[a][b]
            if any(value):
                lines.append(f"cocycle {Q.label(a)} {Q.label(b)} := {' '.join(map(str, value))}")
    return "\n".join(lines) + "\n"


def read_as(text):
    reader = _Reader()
    for lineno, tokens in _lines(text):
        if not (reader.vab_line(lineno, tokens) or reader.as_line(lineno, tokens)):
            raise FormatError(f"unknown keyword {tokens[0][0]!r}", lineno, tokens[0][1])
    if reader.gens is None:
        raise FormatError("missing 'gens' line")
    if reader.g_block is None:
        raise FormatError("missing 'G' line")
    ghat = reader.virtab()
    G = reader.g_block.build("G")

    images = {}
    for label in reader.gens:
        if label not in reader.images:
            raise FormatError(f"no image for generator {label!r}")
        source, lineno, col = reader.images[label]
        try:
            images[label] = ghat.parse_element(source)
        except (ValueError, ValidationError) as exc:
            raise FormatError(str(exc), lineno, col) from None

    phi = []
    for q in ghat.Q.elements():
        label = ghat.Q.label(q)
        if label in reader.phi:
            phi.append(_g_element(G, *reader.phi[label]))
        elif q == ghat.Q.identity:
            phi.append(G.identity)
        else:
            raise FormatError(f"missing 'sigma.q {label}'")
    lam = []
    for j in range(ghat.n):
        if j not in reader.lam:
            raise FormatError(f"missing 'sigma.v {j + 1}'")
        lam.append(_g_element(G, *reader.lam[j]))
    return make_approx_system(reader.gens, ghat, images, G, (phi, lam))


def _g_element(G, label, lineno, col):
    if label not in G.labels:
        raise FormatError(f"unknown element {label!r} of G", lineno, col)
    return G.index_of(label)


def write_as(system):
    ghat, G, sigma = system.ghat, system.G, system.sigma
    lines = [write_vab(ghat).rstrip("\n")]
    lines.append(" ".join(["gens", *system.source_gens]))
    for label in system.source_gens:
        lines.append(f"image {label} := {ghat.format_element(system.images[label])}")
    lines += _group_lines("G", G)
    for q in ghat.Q.elements():
        lines.append(f"sigma.q {ghat.Q.label(q)} := {G.label(sigma.phi[q])}")
    for j, g in enumerate(sigma.lam, start=1):
        lines.append(f"sigma.v {j} := {G.label(g)}")
    return "\n".join(lines) + "\n"


def read_sub(text, stage=None):
    """
    Stage elements of a .sub file; with ``stage`` given they are validated
    and their twists reduced mod s.
    """
    elements = []
    for lineno, tokens in _lines(text):
        bars = [i for i, (t, _) in enumerate(tokens) if t == "|"]
        if len(bars) != 1:
            raise FormatError("expected 'perm | twist'", lineno, tokens[0][1])
        split = bars[0]
        perm = [_int(t, lineno) - 1 for t in tokens[:split]]
        twist = [_int(t, lineno) for t in tokens[split + 1:]]
        if sorted(perm) != list(range(len(perm))) or len(twist) != len(perm):
            raise FormatError("permutation must be 1..n in one-line form with a twist of length n",
                              lineno, tokens[0][1])
        if stage is not None:
            if len(perm) != stage.n:
                raise FormatError(f"element acts on {len(perm)} letters, the stage has {stage.n}",
                                  lineno, tokens[0][1])
            elements.append(stage.group_element(perm, twist))
        else:
            elements.append(StageGroupElement(tuple(perm), tuple(twist)))
    return elements


def write_sub(elements):
    return "".join(f"{g}\n" for g in elements)
