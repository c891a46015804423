"""Colouring templates and forbidden-pattern families.

A template assigns every ground element of a host a nonempty palette of
colours from [k]; its realisations are the colourings picking one colour
per element. A colouring is the same thing as a template whose palettes
are all singletons — there is no separate colouring type.

Template size is measured multiplicatively: weight(t) = product of palette
sizes = number of realisations, kept as an exact big integer. Log-scale
comparisons elsewhere cross-multiply exponents instead of taking floats.

Palettes are bitmasks over colours: bit (i-1) set means colour i is
allowed. Public constructors accept any iterable of colours.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

from .hosts import Embedding, Host


class EmptyPaletteError(ValueError):
    """A palette became empty (construction or meet)."""

    def __init__(self, element_index: int, label: str | None = None):
        self.element_index = element_index
        where = f"element {element_index}" + (f" ({label})" if label else "")
        super().__init__(f"empty palette at {where}")


def mask_of(colours: Iterable[int], k: int) -> int:
    m = 0
    for c in colours:
        if not 1 <= c <= k:
            raise ValueError(f"colour {c} outside 1..{k}")
        m |= 1 << (c - 1)
    return m


def colours_of(mask: int) -> tuple[int, ...]:
    out = []
    c = 1
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return tuple(out)


class Template:
    __slots__ = ("host", "k", "palettes", "_weight")

    def __init__(self, host: Host, k: int, palettes: Sequence[int]):
        if k < 1:
            raise ValueError("k must be >= 1")
        palettes = tuple(palettes)
        if len(palettes) != host.size:
            raise ValueError(f"expected {host.size} palettes, got {len(palettes)}")
        full = (1 << k) - 1
        for i, m in enumerate(palettes):
            if m == 0:
                raise EmptyPaletteError(i)
            if m & ~full:
                raise ValueError(f"palette at element {i} uses colours beyond k={k}")
        self.host = host
        self.k = k
        self.palettes = palettes
        self._weight: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def full(cls, host: Host, k: int) -> "Template":
        return cls(host, k, [(1 << k) - 1] * host.size)

    @classmethod
    def constant(cls, host: Host, k: int, colours: Iterable[int]) -> "Template":
        m = mask_of(colours, k)
        return cls(host, k, [m] * host.size)

    @classmethod
    def from_colouring(cls, host: Host, k: int, colouring: Sequence[int]) -> "Template":
        return cls(host, k, [mask_of((c,), k) for c in colouring])

    @classmethod
    def from_palette_sets(cls, host: Host, k: int,
                          sets: Sequence[Iterable[int]]) -> "Template":
        return cls(host, k, [mask_of(s, k) for s in sets])

    # -- size --------------------------------------------------------------

    def weight(self) -> int:
        """Number of realisations, exact."""
        if self._weight is None:
            w = 1
            for m in self.palettes:
                w *= m.bit_count()
            self._weight = w
        return self._weight

    def palette_size_counts(self) -> tuple[int, ...]:
        """counts[s-1] = number of elements whose palette has s colours."""
        counts = [0] * self.k
        for m in self.palettes:
            counts[m.bit_count() - 1] += 1
        return tuple(counts)

    @property
    def is_colouring(self) -> bool:
        return all(m & (m - 1) == 0 for m in self.palettes)

    def as_colouring(self) -> tuple[int, ...]:
        if not self.is_colouring:
            raise ValueError("template has a non-singleton palette")
        return tuple(m.bit_length() for m in self.palettes)

    # -- structure ---------------------------------------------------------

    def palette_colours(self, index: int) -> tuple[int, ...]:
        return colours_of(self.palettes[index])

    def restrict(self, embedding: Embedding) -> "Template":
        """Pull the template back along an embedding of a smaller host."""
        if embedding.target != self.host:
            raise ValueError("embedding target does not match template host")
        return Template(embedding.source, self.k,
                        [self.palettes[j] for j in embedding.element_map])

    def meet(self, other: "Template") -> "Template":
        """Pointwise palette intersection; raises EmptyPaletteError if some
        element has no common colour."""
        self._check_shape(other)
        out = []
        labels = None
        for i, (a, b) in enumerate(zip(self.palettes, other.palettes)):
            m = a & b
            if m == 0:
                if labels is None:
                    labels = self.host.element_labels()
                raise EmptyPaletteError(i, labels[i])
            out.append(m)
        return Template(self.host, self.k, out)

    def __le__(self, other: "Template") -> bool:
        """Subtemplate order: every palette contained in the other's."""
        self._check_shape(other)
        return all(a & ~b == 0 for a, b in zip(self.palettes, other.palettes))

    def edit_distance(self, other: "Template") -> int:
        """Number of elements where the two palettes differ."""
        self._check_shape(other)
        return sum(1 for a, b in zip(self.palettes, other.palettes) if a != b)

    def contains_colouring(self, colouring: Sequence[int]) -> bool:
        if len(colouring) != len(self.palettes):
            raise ValueError("colouring length mismatch")
        return all(m >> (c - 1) & 1 for m, c in zip(self.palettes, colouring))

    def realisations(self, limit: int | None = 1_000_000) -> Iterator[tuple[int, ...]]:
        """Yield realisations in lexicographic colour order.

        Guarded by `limit` (None disables): enumerating a heavy template by
        accident is the easiest way to hang a test session.
        """
        if limit is not None and self.weight() > limit:
            raise ValueError(f"template has {self.weight()} realisations, "
                             f"limit is {limit}")
        choices = [colours_of(m) for m in self.palettes]
        return product(*choices)

    def _check_shape(self, other: "Template") -> None:
        if self.host != other.host or self.k != other.k:
            raise ValueError("templates live on different hosts or colour counts")

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Template) and self.host == other.host
                and self.k == other.k and self.palettes == other.palettes)

    def __hash__(self) -> int:
        return hash((self.host, self.k, self.palettes))

    def __repr__(self) -> str:
        return (f"Template({self.host!r}, k={self.k}, "
                f"weight={self.weight()})")


def distance_to_family(template: Template, family: Sequence[Template]) -> int:
    """Minimum edit distance from `template` to any member of `family`."""
    if not family:
        raise ValueError("family is empty")
    return min(template.edit_distance(t) for t in family)


class ForbiddenFamily:
    """A set of forbidden colourings of a term host (the local patterns).

    colourings are tuples over the term host's ground set in its canonical
    element order. `span` is the term's size parameter N. An optional
    `quick` predicate (masks tuple -> bool at one embedding) mirrors the
    generic membership test for solver hot loops; tests assert it agrees
    with the generic route everywhere.
    """

    __slots__ = ("name", "host_kind", "span", "k", "colourings", "_set", "quick")

    def __init__(self, name: str, host_kind: str, span: int, k: int,
                 colourings: Iterable[Sequence[int]], quick=None):
        self.name = name
        self.host_kind = host_kind
        self.span = span
        self.k = k
        self.colourings = tuple(tuple(c) for c in colourings)
        self._set = frozenset(self.colourings)
        self.quick = quick
        if not self.colourings:
            raise ValueError("forbidden family must be nonempty")

    @classmethod
    def from_predicate(cls, name: str, host_kind: str, span: int, k: int,
                       predicate, quick=None) -> "ForbiddenFamily":
        """Enumerate all k-colourings of the term host matching `predicate`.

        Always exhaustive — forbidden lists are never written by hand.
        """
        from .hosts import host_from_name
        term = host_from_name(host_kind, span)
        cols = [c for c in product(range(1, k + 1), repeat=term.size)
                if predicate(c)]
        return cls(name, host_kind, span, k, cols, quick=quick)

    def __contains__(self, colouring: Sequence[int]) -> bool:
        return tuple(colouring) in self._set

    def __len__(self) -> int:
        return len(self.colourings)

    def __repr__(self) -> str:
        return (f"ForbiddenFamily({self.name!r}, host={self.host_kind!r}, "
                f"span={self.span}, k={self.k}, size={len(self)})")

    def realisable_at(self, palettes: Sequence[int],
                      element_map: Sequence[int]) -> bool:
        """Can any forbidden colouring be realised through this embedding?"""
        for c in self.colourings:
            ok = True
            for pos, colour in zip(element_map, c):
                if not palettes[pos] >> (colour - 1) & 1:
                    ok = False
                    break
            if ok:
                return True
        return False


def bad_pairs(template: Template, family: ForbiddenFamily) -> int:
    """Number of (embedding, forbidden colouring) pairs realisable in the
    template. Zero iff every realisation avoids the family."""
    _check_family_host(template, family)
    count = 0
    palettes = template.palettes
    for emb in template.host.embeddings(family.span):
        emap = emb.element_map
        for c in family.colourings:
            ok = True
            for pos, colour in zip(emap, c):
                if not palettes[pos] >> (colour - 1) & 1:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def satisfies(template: Template, family: ForbiddenFamily) -> bool:
    """True iff no realisation of the template contains a forbidden pattern
    (early-exit form of bad_pairs == 0)."""
    _check_family_host(template, family)
    palettes = template.palettes
    for emb in template.host.embeddings(family.span):
        if family.realisable_at(palettes, emb.element_map):
            return False
    return True


def _check_family_host(template: Template, family: ForbiddenFamily) -> None:
    if template.host.kind != family.host_kind:
        raise ValueError(f"family {family.name!r} lives on {family.host_kind!r} "
                         f"hosts, template on {template.host.kind!r}")
    if template.k != family.k:
        raise ValueError(f"family {family.name!r} uses k={family.k}, "
                         f"template k={template.k}")
