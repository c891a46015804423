"""Combinatorial structures encoded as edge-colourings of K_n.

Colour tables (1-indexed colours; pairs (i, j) always have i < j):

* digraph, k=4:      1 = no arc, 2 = i->j, 3 = j->i, 4 = both arcs
* oriented graph, k=3: 1 = no arc, 2 = i->j, 3 = j->i
* tournament, k=2:   1 = i->j, 2 = j->i  (embeds into the digraph table
                     via TOURNAMENT_TO_DIGRAPH_COLOUR)
* multigraph with multiplicity bound d, k=d+1: colour = multiplicity + 1

Forbidden-pattern families for the bundled case studies are generated
exhaustively from predicates over the term host's colourings; none of the
lists is written out by hand.
"""

from __future__ import annotations

from itertools import combinations

from .core import ForbiddenFamily, Template
from .hosts import CompleteHost

TOURNAMENT_TO_DIGRAPH_COLOUR = {1: 2, 2: 3}


def _pairs(n: int):
    return combinations(range(1, n + 1), 2)


class Digraph:
    """Loopless directed graph on vertices 1..n; both directions allowed."""

    def __init__(self, n: int, arcs):
        self.n = n
        self.arcs = frozenset((int(a), int(b)) for a, b in arcs)
        for a, b in self.arcs:
            if a == b or not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"bad arc ({a}, {b})")

    def __eq__(self, other):
        return (isinstance(other, Digraph) and self.n == other.n
                and self.arcs == other.arcs)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"


class OrientedGraph(Digraph):
    """Digraph with at most one arc per vertex pair."""

    def __init__(self, n: int, arcs):
        super().__init__(n, arcs)
        for a, b in self.arcs:
            if (b, a) in self.arcs:
                raise ValueError(f"both directions present on {{{a}, {b}}}")

    def __repr__(self):
        return f"OrientedGraph(n={self.n}, arcs={sorted(self.arcs)})"


class Tournament(OrientedGraph):
    """Exactly one arc per vertex pair."""

    def __init__(self, n: int, arcs):
        super().__init__(n, arcs)
        for a, b in _pairs(n):
            if (a, b) not in self.arcs and (b, a) not in self.arcs:
                raise ValueError(f"missing arc on {{{a}, {b}}}")

    def __repr__(self):
        return f"Tournament(n={self.n}, arcs={sorted(self.arcs)})"


class Multigraph:
    """Edge multiplicities 0..bound on K_n's edges."""

    def __init__(self, n: int, bound: int, multiplicities):
        self.n = n
        self.bound = bound
        mult = dict(multiplicities)
        self.multiplicities = {}
        for (a, b), m in mult.items():
            if a > b:
                a, b = b, a
            if not (1 <= a < b <= n):
                raise ValueError(f"bad edge ({a}, {b})")
            if not (0 <= m <= bound):
                raise ValueError(f"multiplicity {m} outside 0..{bound}")
            self.multiplicities[(a, b)] = m
        for p in _pairs(n):
            self.multiplicities.setdefault(p, 0)

    def __eq__(self, other):
        return (isinstance(other, Multigraph) and self.n == other.n
                and self.bound == other.bound
                and self.multiplicities == other.multiplicities)

    def __repr__(self):
        nz = {e: m for e, m in sorted(self.multiplicities.items()) if m}
        return f"Multigraph(n={self.n}, bound={self.bound}, {nz})"


# -- structure <-> colouring ------------------------------------------------

def encode_digraph(d: Digraph) -> Template:
    cols = []
    for a, b in _pairs(d.n):
        fwd = (a, b) in d.arcs
        bwd = (b, a) in d.arcs
        cols.append(1 + fwd + 2 * bwd if not (fwd and bwd) else 4)
    return Template.from_colouring(CompleteHost(d.n), 4, cols)


def decode_digraph(t: Template) -> Digraph:
    c = t.as_colouring()
    arcs = []
    for (a, b), col in zip(_pairs(t.host.n), c):
        if col in (2, 4):
            arcs.append((a, b))
        if col in (3, 4):
            arcs.append((b, a))
    return Digraph(t.host.n, arcs)


def encode_oriented(g: OrientedGraph) -> Template:
    cols = []
    for a, b in _pairs(g.n):
        cols.append(2 if (a, b) in g.arcs else 3 if (b, a) in g.arcs else 1)
    return Template.from_colouring(CompleteHost(g.n), 3, cols)


def decode_oriented(t: Template) -> OrientedGraph:
    c = t.as_colouring()
    arcs = []
    for (a, b), col in zip(_pairs(t.host.n), c):
        if col == 2:
            arcs.append((a, b))
        elif col == 3:
            arcs.append((b, a))
    return OrientedGraph(t.host.n, arcs)


def encode_tournament(tt: Tournament) -> Template:
    cols = [1 if (a, b) in tt.arcs else 2 for a, b in _pairs(tt.n)]
    return Template.from_colouring(CompleteHost(tt.n), 2, cols)


def decode_tournament(t: Template) -> Tournament:
    c = t.as_colouring()
    arcs = [(a, b) if col == 1 else (b, a)
            for (a, b), col in zip(_pairs(t.host.n), c)]
    return Tournament(t.host.n, arcs)


def encode_multigraph(m: Multigraph) -> Template:
    cols = [m.multiplicities[p] + 1 for p in _pairs(m.n)]
    return Template.from_colouring(CompleteHost(m.n), m.bound + 1, cols)


def decode_multigraph(t: Template, bound: int) -> Multigraph:
    if t.k != bound + 1:
        raise ValueError(f"template k={t.k} does not match bound {bound}")
    c = t.as_colouring()
    return Multigraph(t.host.n, bound,
                      {p: col - 1 for p, col in zip(_pairs(t.host.n), c)})


# -- forbidden families ------------------------------------------------------
#
# Each entry: (host kind, span N, k, predicate over term colourings,
#              quick membership check over palette masks at one embedding).
# The quick form must agree with the predicate-generated family everywhere;
# tests enforce this pointwise.

def _quick_rainbow(masks) -> bool:
    # a triangle can take three distinct colours iff Hall's condition holds
    # for the 3x3 colour assignment (k = 3: union must be everything and
    # every pair of palettes must span >= 2 colours)
    m1, m2, m3 = masks
    if m1 | m2 | m3 != 0b111:
        return False
    return ((m1 | m2).bit_count() >= 2 and (m1 | m3).bit_count() >= 2
            and (m2 | m3).bit_count() >= 2)


def _quick_all_colour(colour_bit: int):
    def quick(masks) -> bool:
        acc = ~0
        for m in masks:
            acc &= m
        return bool(acc & colour_bit)
    return quick


def _quick_multisum(masks) -> bool:
    return sum(m.bit_length() - 1 for m in masks) >= 5


def _quick_increasing(masks) -> bool:
    return bool(masks[0] & 1 and masks[2] & 1)


def _quick_any_two(masks) -> bool:
    return sum(m & 1 for m in masks) >= 2


def _quick_repeat(masks) -> bool:
    return bool(masks[0] & masks[1])


_FAMILY_SPECS = {
    "rainbow-k3": ("kn", 3, 3,
                   lambda c: len(set(c)) == 3, _quick_rainbow),
    "mono-triangle": ("kn", 3, 2,
                      lambda c: all(x == 1 for x in c), _quick_all_colour(1)),
    "df-free-k3": ("kn", 3, 4,
                   lambda c: all(x == 4 for x in c), _quick_all_colour(8)),
    "no-increasing-p2": ("kn", 3, 2,
                         lambda c: c[0] == 1 and c[2] == 1, _quick_increasing),
    "no-any-p2": ("kn", 3, 2,
                  lambda c: sum(1 for x in c if x == 1) >= 2, _quick_any_two),
    "multigraph-3-4": ("kn", 3, 5,
                       lambda c: sum(c) - 3 >= 5, _quick_multisum),
    "path-no-repeat": ("pn", 3, 3,
                       lambda c: c[0] == c[1], _quick_repeat),
    "q2-free-vertex": ("qn-vertex", 2, 2,
                       lambda c: all(x == 1 for x in c), _quick_all_colour(1)),
    "q2-free-edge": ("qn-edge", 2, 2,
                     lambda c: all(x == 1 for x in c), _quick_all_colour(1)),
}


def family_names() -> list[str]:
    return sorted(_FAMILY_SPECS)


def forbidden_family_for(name: str) -> ForbiddenFamily:
    """Build the named forbidden family by exhaustive predicate enumeration."""
    try:
        host_kind, span, k, pred, quick = _FAMILY_SPECS[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of "
                         f"{family_names()}") from None
    return ForbiddenFamily.from_predicate(name, host_kind, span, k, pred,
                                          quick=quick)
