"""Bundled case studies: forbidden family + search aids + known values.

Each case study carries, besides its forbidden family:

* candidate palette lists for the exact solver (a weight-dominating set of
  palettes; None means all nonempty palettes). Soundness arguments are in
  the docstrings below and every list is value-equivalence-tested against
  the unreduced solver at small n.
* an extremal construction (warm start; its validity and weight are checked
  before use, it is never trusted as a witness),
* the known closed-form extremal weight where one exists (used only to
  cross-check solver output, never to produce it),
* the colour (if any) to which every element may be recoloured without
  leaving the property — the monotonicity used by the random-restriction
  experiments,
* an optional exact member-count formula and stability reference family.

Soundness of the candidate lists:

* families whose forbidden colourings mention only colour 1
  (mono-triangle, no-increasing-p2, no-any-p2, q2-free-*): enlarging any
  palette by colours other than 1 never makes a forbidden pattern
  realisable, so palettes {1,2}/{2} (k=2) dominate every template
  weight-wise with the same or smaller bad-pair set.
* df-free-k3 (k=4, forbidden pattern mentions only colour 4): palettes
  {1,2,3,4}/{1,2,3} dominate by the same argument.
* multigraph-3-4: the forbidden predicate is upward-closed in each
  coordinate (raising a multiplicity keeps the sum >= 5), so lowering any
  colour is safe and every palette is dominated by the downward-closed
  palette {1..m} of the same size.
* rainbow-k3 and path-no-repeat: no sound closure exists (patterns involve
  colour interactions on both sides); candidates stay None.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .core import ForbiddenFamily, Template
from .encodings import family_names, forbidden_family_for
from .hosts import Host, host_from_name


def _split_pairs(n: int) -> set[tuple[int, int]]:
    """Edges of the complete bipartite split {1..floor(n/2)} vs rest."""
    m = n // 2
    return {(a, b) for a in range(1, m + 1) for b in range(m + 1, n + 1)}


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def _bipartite_template(n: int, k: int, rich: int, poor: int) -> Template:
    """rich palette mask on the bipartite-split edges, poor elsewhere."""
    split = _split_pairs(n)
    host = host_from_name("kn", n)
    pal = [rich if (a, b) in split or (b, a) in split else poor
           for a, b in _pair_list(n)]
    return Template(host, k, pal)


def _matching_template(n: int, k: int, rich: int, poor: int) -> Template:
    host = host_from_name("kn", n)
    matched = {(2 * i + 1, 2 * i + 2) for i in range(n // 2)}
    pal = [rich if (a, b) in matched else poor for a, b in _pair_list(n)]
    return Template(host, k, pal)


def _construct_rainbow(n: int) -> Template:
    return Template.constant(host_from_name("kn", n), 3, (1, 2))


def _construct_mono(n: int) -> Template:
    return _bipartite_template(n, 2, 0b11, 0b10)


def _construct_df(n: int) -> Template:
    return _bipartite_template(n, 4, 0b1111, 0b0111)


def _construct_increasing(n: int) -> Template:
    return _bipartite_template(n, 2, 0b11, 0b10)


def _construct_any_two(n: int) -> Template:
    return _matching_template(n, 2, 0b11, 0b10)


def _construct_multigraph(n: int) -> Template:
    return _matching_template(n, 5, 0b00111, 0b00011)


def _construct_path(n: int) -> Template:
    # disjoint palettes on adjacent edges; two-colour palettes alternate
    pal = [0b011 if i % 2 == 0 else 0b100 for i in range(n - 1)]
    return Template(host_from_name("pn", n), 3, pal)


def _construct_q2_vertex(n: int) -> Template:
    # palettes {2} on the all-zeros and all-ones vertices hit every
    # axis-aligned square, {1,2} elsewhere
    size = 1 << n
    pal = [0b10 if v in (0, size - 1) else 0b11 for v in range(size)]
    return Template(host_from_name("qn-vertex", n), 2, pal)


def _construct_q2_edge(n: int) -> Template:
    host = host_from_name("qn-edge", n)
    if n == 2:
        pal = [0b11] * host.size
        pal[0] = 0b10
        return Template(host, 2, pal)
    # generic fallback: one poor edge per square via a greedy cover
    from .core import satisfies
    pal = [0b11] * host.size
    t = Template(host, 2, pal)
    fam = forbidden_family_for("q2-free-edge")
    for emb in host.embeddings(2):
        if fam.realisable_at(t.palettes, emb.element_map):
            pal[emb.element_map[0]] = 0b10
            t = Template(host, 2, pal)
    assert satisfies(t, fam)
    return t


def _floor_quarter(n: int) -> int:
    return n * n // 4


@dataclass(frozen=True)
class CaseStudy:
    name: str
    host_kind: str
    span: int
    k: int
    candidates: tuple[int, ...] | None
    construction: Callable[[int], Template]
    closed_form_weight: Callable[[int], int | None]
    monotone_colour: int | None
    speed_formula: Callable[[int], int | None] | None = None
    stability_reference: Callable[[int], list[Template]] | None = None
    value_bound: Callable[[int], int] | None = None

    @property
    def family(self) -> ForbiddenFamily:
        return forbidden_family_for(self.name)

    def host(self, n: int) -> Host:
        return host_from_name(self.host_kind, n)

    def relative_candidates(self, root: int) -> list[int] | None:
        """Weight-dominating palettes inside a root palette, or None for
        the full subset lattice. Only colour-1-driven families shrink."""
        if self.candidates is None:
            return None
        if self.name == "multigraph-3-4":
            # downward closure within the root: keep the lowest m colours
            # present in the root, for each m
            out = []
            seen = set()
            m = root
            while m:
                if m not in seen:
                    seen.add(m)
                    out.append(m)
                m &= ~(1 << (m.bit_length() - 1))  # drop highest colour
            return out
        out = [root]
        rest = root & ~1
        if rest and rest != root:
            out.append(rest)
        return out


def _rainbow_stability(n: int) -> list[Template]:
    host = host_from_name("kn", n)
    return [Template.constant(host, 3, pair)
            for pair in ((1, 2), (1, 3), (2, 3))]


_CASES: dict[str, CaseStudy] = {}


def _register(case: CaseStudy) -> None:
    _CASES[case.name] = case


_register(CaseStudy(
    name="rainbow-k3", host_kind="kn", span=3, k=3,
    candidates=None,
    construction=_construct_rainbow,
    closed_form_weight=lambda n: 2 ** comb(n, 2) if n >= 3 else None,
    monotone_colour=None,
    stability_reference=_rainbow_stability,
))

_register(CaseStudy(
    name="mono-triangle", host_kind="kn", span=3, k=2,
    candidates=(0b11, 0b10),
    construction=_construct_mono,
    closed_form_weight=lambda n: 2 ** _floor_quarter(n) if n >= 3 else None,
    monotone_colour=2,
    # A valid template's two-colour edges form a triangle-free graph, and
    # a triangle-free graph on n vertices has at most n^2/4 edges
    # (Mantel's theorem), so the weight is at most 2^(n^2/4).
    value_bound=lambda n: 2 ** _floor_quarter(n),
))

_register(CaseStudy(
    name="df-free-k3", host_kind="kn", span=3, k=4,
    candidates=(0b1111, 0b0111),
    construction=_construct_df,
    closed_form_weight=lambda n: (4 ** _floor_quarter(n)
                                  * 3 ** (comb(n, 2) - _floor_quarter(n))
                                  if n >= 3 else None),
    monotone_colour=1,
))

_register(CaseStudy(
    name="no-increasing-p2", host_kind="kn", span=3, k=2,
    candidates=(0b11, 0b10),
    construction=_construct_increasing,
    closed_form_weight=lambda n: 2 ** _floor_quarter(n) if n >= 3 else None,
    monotone_colour=2,
))

_register(CaseStudy(
    name="no-any-p2", host_kind="kn", span=3, k=2,
    candidates=(0b11, 0b10),
    construction=_construct_any_two,
    closed_form_weight=lambda n: 2 ** (n // 2) if n >= 3 else None,
    monotone_colour=2,
))

_register(CaseStudy(
    name="multigraph-3-4", host_kind="kn", span=3, k=5,
    candidates=(0b11111, 0b01111, 0b00111, 0b00011, 0b00001),
    construction=_construct_multigraph,
    closed_form_weight=lambda n: (2 ** (comb(n, 2) - n // 2) * 3 ** (n // 2)
                                  if n >= 3 else None),
    monotone_colour=1,
))

_register(CaseStudy(
    name="path-no-repeat", host_kind="pn", span=3, k=3,
    candidates=None,
    construction=_construct_path,
    closed_form_weight=lambda n: 2 ** ((n - 1 + 1) // 2) if n >= 3 else None,
    monotone_colour=None,
    speed_formula=lambda n: 3 * 2 ** (n - 2) if n >= 2 else None,
))

_register(CaseStudy(
    name="q2-free-vertex", host_kind="qn-vertex", span=2, k=2,
    candidates=(0b11, 0b10),
    construction=_construct_q2_vertex,
    closed_form_weight=lambda n: {2: 8, 3: 64}.get(n),
    monotone_colour=2,
))

_register(CaseStudy(
    name="q2-free-edge", host_kind="qn-edge", span=2, k=2,
    candidates=(0b11, 0b10),
    construction=_construct_q2_edge,
    closed_form_weight=lambda n: {2: 8}.get(n),
    monotone_colour=2,
))

assert set(_CASES) == set(family_names())


def case_names() -> list[str]:
    return sorted(_CASES)


def get_case(name: str) -> CaseStudy:
    try:
        return _CASES[name]
    except KeyError:
        raise ValueError(f"unknown case {name!r}; expected one of "
                         f"{case_names()}") from None
