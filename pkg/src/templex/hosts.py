"""Host structures whose elements get coloured.

A host is a finite ground set plus the family of order-preserving
embeddings of the same kind of host at a smaller size parameter.

Conventions (fixed; serialisation and all canonical orders rely on them):

* complete graph K_n ("kn"): vertices 1..n, ground set = edges in
  lexicographic order (1,2), (1,3), ..., (1,n), (2,3), ...; embeddings of
  K_N are the N-subsets of [n] in lexicographic order.
* hypercube vertices Q_n ("qn-vertex"): ground set = the 2^n vertices as
  integers 0..2^n-1; coordinate i of vertex v is bit (i-1) of v.
  Embeddings of Q_N are pairs (A, w): an N-subset A of coordinates
  (lexicographic) and an assignment w of the remaining n-N coordinates
  (binary counter over the free coordinates in increasing order).
* hypercube edges ("qn-edge"): ground set = edges (v, v + 2^(i-1)) listed
  by increasing (v, i); embeddings are the same (A, w) pairs, mapping
  direction j to direction A[j].
* path P_n ("pn"): vertices 1..n, ground set = edges (i, i+1) in order;
  embeddings of P_N are the consecutive windows, by increasing offset.

All embedding lists are material (length = embedding_count(N)) and cached
per (host, N).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb


class Embedding:
    """Order-preserving embedding of a term host into a larger host.

    element_map[i] is the target ground-element index that source element i
    lands on. detail carries the host-specific description (vertex subset,
    (A, w) pair, or window offset) for reports.
    """

    __slots__ = ("source", "target", "element_map", "detail")

    def __init__(self, source: "Host", target: "Host",
                 element_map: tuple[int, ...], detail: tuple):
        self.source = source
        self.target = target
        self.element_map = element_map
        self.detail = detail

    def __repr__(self) -> str:
        return f"Embedding({self.source!r}->{self.target!r}, {self.detail})"


class Host:
    kind: str = ""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("size parameter must be >= 1")
        self.n = n
        self.size = self._ground_size()

    def _ground_size(self) -> int:
        raise NotImplementedError

    def element_labels(self) -> list[str]:
        raise NotImplementedError

    def term(self, N: int) -> "Host":
        """The same kind of host at size parameter N."""
        return type(self)(N)

    def embedding_count(self, N: int) -> int:
        raise NotImplementedError

    def embeddings(self, N: int) -> list[Embedding]:
        return _embeddings_cached(self.kind, self.n, N)

    def _build_embeddings(self, N: int) -> list[Embedding]:
        raise NotImplementedError

    def overlap_weight(self, N: int) -> Fraction:
        """Half the number of ordered embedding pairs (equal pairs included)
        whose images share at least 2 ground elements.

        May be half-integral; kept exact.
        """
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Host) and self.kind == other.kind and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.kind, self.n))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.n})"


@lru_cache(maxsize=None)
def _embeddings_cached(kind: str, n: int, N: int) -> list:
    host = host_from_name(kind, n)
    if N > n:
        return []
    return host._build_embeddings(N)


class CompleteHost(Host):
    kind = "kn"

    def _ground_size(self) -> int:
        return comb(self.n, 2)

    def element_labels(self) -> list[str]:
        return [f"{a}-{b}" for a, b in combinations(range(1, self.n + 1), 2)]

    def pair_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(combinations(range(1, self.n + 1), 2))}

    def embedding_count(self, N: int) -> int:
        return comb(self.n, N)

    def _build_embeddings(self, N: int) -> list[Embedding]:
        src = CompleteHost(N)
        src_pairs = list(combinations(range(1, N + 1), 2))
        tgt_index = self.pair_index()
        out = []
        for subset in combinations(range(1, self.n + 1), N):
            emap = tuple(tgt_index[(subset[a - 1], subset[b - 1])]
                         for a, b in src_pairs)
            out.append(Embedding(src, self, emap, subset))
        return out

    def overlap_weight(self, N: int) -> Fraction:
        # ordered pairs of N-subsets sharing >= 3 vertices (>= 2 common edges)
        n = self.n
        total = comb(n, N) * sum(comb(N, j) * comb(n - N, N - j)
                                 for j in range(3, N + 1))
        return Fraction(total, 2)


def _spread(bits: int, positions: tuple[int, ...]) -> int:
    """Place bit i of `bits` at coordinate positions[i]."""
    v = 0
    for i, p in enumerate(positions):
        if bits >> i & 1:
            v |= 1 << p
    return v


class CubeVertexHost(Host):
    kind = "qn-vertex"

    def _ground_size(self) -> int:
        return 1 << self.n

    def element_labels(self) -> list[str]:
        n = self.n
        return ["".join(str(v >> i & 1) for i in range(n)) for v in range(1 << n)]

    def embedding_count(self, N: int) -> int:
        if N > self.n:
            return 0
        return comb(self.n, N) << (self.n - N)

    def _subcube_maps(self, N: int):
        n = self.n
        for A in combinations(range(n), N):
            free = tuple(p for p in range(n) if p not in A)
            for w in range(1 << (n - N)):
                base = _spread(w, free)
                yield A, w, base

    def _build_embeddings(self, N: int) -> list[Embedding]:
        src = CubeVertexHost(N)
        out = []
        for A, w, base in self._subcube_maps(N):
            emap = tuple(base | _spread(x, A) for x in range(1 << N))
            out.append(Embedding(src, self, emap, (A, w)))
        return out

    def overlap_weight(self, N: int) -> Fraction:
        n = self.n
        total = comb(n, N) * sum(comb(N, i) * comb(n - N, N - i) * (1 << (n - i))
                                 for i in range(1, N + 1))
        return Fraction(total, 2)


class CubeEdgeHost(Host):
    kind = "qn-edge"

    def _ground_size(self) -> int:
        return self.n << (self.n - 1)

    def _edge_list(self) -> list[tuple[int, int]]:
        # (lower endpoint, direction), direction counted from 0
        return [(v, i) for v in range(1 << self.n)
                for i in range(self.n) if not v >> i & 1]

    def element_labels(self) -> list[str]:
        n = self.n

        def lab(v: int) -> str:
            return "".join(str(v >> i & 1) for i in range(n))

        return [f"{lab(v)}-{lab(v | (1 << i))}" for v, i in self._edge_list()]

    def embedding_count(self, N: int) -> int:
        if N > self.n:
            return 0
        return comb(self.n, N) << (self.n - N)

    def _build_embeddings(self, N: int) -> list[Embedding]:
        src = CubeEdgeHost(N)
        src_edges = src._edge_list()
        tgt_index = {e: i for i, e in enumerate(self._edge_list())}
        out = []
        for A, w, base in CubeVertexHost(self.n)._subcube_maps(N):
            emap = tuple(tgt_index[(base | _spread(x, A), A[j])]
                         for x, j in src_edges)
            out.append(Embedding(src, self, emap, (A, w)))
        return out

    def overlap_weight(self, N: int) -> Fraction:
        # shared subcube of dimension i has i*2^(i-1) edges; >= 2 iff i >= 2
        n = self.n
        total = comb(n, N) * sum(comb(N, i) * comb(n - N, N - i) * (1 << (n - i))
                                 for i in range(2, N + 1))
        return Fraction(total, 2)


class PathHost(Host):
    kind = "pn"

    def _ground_size(self) -> int:
        return self.n - 1

    def element_labels(self) -> list[str]:
        return [f"{i}-{i + 1}" for i in range(1, self.n)]

    def embedding_count(self, N: int) -> int:
        if N > self.n:
            return 0
        return self.n - N + 1

    def _build_embeddings(self, N: int) -> list[Embedding]:
        src = PathHost(N)
        out = []
        for off in range(self.n - N + 1):
            emap = tuple(off + i for i in range(N - 1))
            out.append(Embedding(src, self, emap, off))
        return out

    def overlap_weight(self, N: int) -> Fraction:
        # windows at offsets j1, j2 share (N-1) - |j1-j2| edges when positive
        last = self.n - N
        if last < 0:
            return Fraction(0)
        total = 0
        for j1 in range(last + 1):
            for j2 in range(last + 1):
                if (N - 1) - abs(j1 - j2) >= 2:
                    total += 1
        return Fraction(total, 2)


_HOST_KINDS: dict[str, type[Host]] = {
    cls.kind: cls for cls in (CompleteHost, CubeVertexHost, CubeEdgeHost, PathHost)
}


def host_from_name(kind: str, n: int) -> Host:
    try:
        cls = _HOST_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown host kind {kind!r}; expected one of "
                         f"{sorted(_HOST_KINDS)}") from None
    return cls(n)


def goodness_report(kind: str, N: int, n: int) -> dict:
    """Exact richness diagnostics for the embedding family at (N, n).

    ratio1 = embeddings / ground-set size (wants to grow without bound);
    ratio2 = ground size * overlap weight / embeddings^2 (wants to vanish).
    Both are exact Fractions; the verdict at a single n is a data point,
    not a limit claim.
    """
    host = host_from_name(kind, n)
    emb = host.embedding_count(N)
    overlap = host.overlap_weight(N)
    return {
        "host": kind,
        "N": N,
        "n": n,
        "ground_size": host.size,
        "embeddings": emb,
        "overlap_weight": overlap,
        "ratio1": Fraction(emb, host.size) if host.size else Fraction(0),
        "ratio2": (Fraction(host.size) * overlap / (emb * emb)) if emb else Fraction(0),
    }
