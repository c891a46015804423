"""Exact branch-and-bound maximisation of template weights.

The solver assigns palettes to ground-set elements in the host's
canonical order, depth first, and keeps the search exact with three
cooperating devices:

* a running-product bound: the weight collected so far times the largest
  product the unassigned elements could still contribute;
* per-embedding caps: for each embedding of the family's term host, the
  largest restricted weight any valid completion of the current partial
  assignment can reach, memoised by the embedding's assignment pattern.
  A cap of zero means the pattern already forces a forbidden colouring
  on that embedding, so the branch dies;
* a degree-power bound: any valid completion t satisfies
  prod_phi W(t|phi) = prod_e |t(e)|^deg(e) >= W(t)^d_min, while the left
  side is at most the product P of all current caps.  A branch with
  best^d_min > P therefore cannot reach the incumbent.

All three devices preserve ties, so when witnesses are requested the
enumeration of optimal templates is exhaustive up to the witness cap.

Larger instances are certified instead of searched where a sound upper
bound meets the registered construction: either the case's classical
value bound, or a density-descent bound transported from the previous
exact optimum.  Descent is only valid on hosts whose smaller copies
cover every element equally often (complete graphs and hypercubes); on
paths the per-element density genuinely oscillates and no descent is
attempted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cases import CaseStudy
from .core import EmptyPaletteError, ForbiddenFamily, Template, satisfies
from .hosts import Host
from .intmath import integer_root_floor, pow_compare

# Candidate spaces at most this large are always searched outright;
# beyond it the solver first tries to certify bound == construction.
SEARCH_SPACE_LIMIT = 1_000_000

_DESCENT_HOSTS = frozenset({"kn", "qn-vertex", "qn-edge"})


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of one extremal computation.

    certification is "search" when the value came out of branch and
    bound, and "bound+construction" when a sound upper bound matched the
    validated construction weight and no search was needed.  Witnesses
    are only populated by searches asked to collect them.
    """

    case_name: str
    host_kind: str
    n: int
    weight: int
    witnesses: tuple[Template, ...]
    witnesses_truncated: bool
    reduced: bool
    nodes: int
    certification: str


def _ordered(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(masks, key=lambda m: (-bin(m).count("1"), m)))


def _submasks(root: int) -> list[int]:
    out = []
    sub = root
    while sub:
        out.append(sub)
        sub = (sub - 1) & root
    return out


class _Search:
    """One branch-and-bound run over fixed host, family, and candidates."""

    def __init__(self, host: Host, k: int, family: ForbiddenFamily,
                 candidates: Sequence[Sequence[int]]):
        self.host = host
        self.k = k
        self.family = family
        self.size = host.size
        self.candidates = [tuple(c) for c in candidates]
        self.maps = [emb.element_map for emb in host.embeddings(family.span)]
        pos_embs: list[list[tuple[int, int]]] = [[] for _ in range(self.size)]
        for ei, emap in enumerate(self.maps):
            for ti, pos in enumerate(emap):
                pos_embs[pos].append((ei, ti))
        self.pos_embs = pos_embs
        degrees = [len(lst) for lst in pos_embs]
        self.d_min = min(degrees) if self.maps else 0
        self.fam_masks = [tuple(1 << (c - 1) for c in col)
                          for col in family.colourings]
        # Intern each embedding's tuple of per-position candidate sets so
        # cap-memo keys are flat (signature id, masks...) int tuples.
        sig_ids: dict[tuple, int] = {}
        self.emb_sig: list[int] = []
        self.sig_cands: list[tuple[tuple[int, ...], ...]] = []
        for emap in self.maps:
            sig = tuple(self.candidates[pos] for pos in emap)
            sid = sig_ids.get(sig)
            if sid is None:
                sid = len(self.sig_cands)
                sig_ids[sig] = sid
                self.sig_cands.append(sig)
            self.emb_sig.append(sid)
        self._cap_memo: dict[tuple, int] = {}
        suffix = [1] * (self.size + 1)
        for pos in range(self.size - 1, -1, -1):
            best_size = max(m.bit_count() for m in self.candidates[pos])
            suffix[pos] = suffix[pos + 1] * best_size
        self.suffix = suffix

    def _cap(self, sid: int, masks: tuple[int, ...]) -> int:
        """Max weight a valid completion can place on one embedding.

        masks holds the embedding's current palettes in term order, with
        0 marking a still-open position.  Zero return = no completion
        avoids the forbidden family.
        """
        key = (sid, masks)
        cached = self._cap_memo.get(key)
        if cached is not None:
            return cached
        cands = self.sig_cands[sid]
        open_slots = [i for i, m in enumerate(masks) if m == 0]
        work = list(masks)
        best = 0
        for choice in itertools.product(*(cands[i] for i in open_slots)):
            for i, m in zip(open_slots, choice):
                work[i] = m
            realisable = False
            for col in self.fam_masks:
                hit = True
                for m, bit in zip(work, col):
                    if not m & bit:
                        hit = False
                        break
                if hit:
                    realisable = True
                    break
            if realisable:
                continue
            prod = 1
            for m in work:
                prod *= m.bit_count()
            if prod > best:
                best = prod
        self._cap_memo[key] = best
        return best

    def _root_caps(self) -> tuple[list[list[int]], list[int], int]:
        emb_masks = [[0] * len(emap) for emap in self.maps]
        ecaps = [self._cap(self.emb_sig[ei], tuple(masks))
                 for ei, masks in enumerate(emb_masks)]
        product = 1
        for c in ecaps:
            product *= c
        return emb_masks, ecaps, product

    def greedy(self) -> tuple[int, tuple[int, ...] | None]:
        """First-fit feasible assignment; a cheap valid warm start."""
        emb_masks, ecaps, _ = self._root_caps()
        if 0 in ecaps:
            return 0, None
        assigned = [0] * self.size
        weight = 1
        for pos in range(self.size):
            placed = False
            for mask in self.candidates[pos]:
                updates = []
                ok = True
                for ei, ti in self.pos_embs[pos]:
                    emb_masks[ei][ti] = mask
                    new_cap = self._cap(self.emb_sig[ei], tuple(emb_masks[ei]))
                    updates.append((ei, new_cap))
                    if new_cap == 0:
                        ok = False
                        break
                if ok:
                    for ei, new_cap in updates:
                        ecaps[ei] = new_cap
                    assigned[pos] = mask
                    weight *= mask.bit_count()
                    placed = True
                    break
                for ei, ti in self.pos_embs[pos]:
                    emb_masks[ei][ti] = 0
            if not placed:
                return 0, None
        return weight, tuple(assigned)

    def run(self, *, warm: int = 0, collect: bool = False, witness_cap: int = 64,
            upper_bound: int | None = None, early_exit: bool = False,
            ) -> tuple[int, list[tuple[int, ...]], bool, int]:
        size = self.size
        emb_masks, ecaps, P = self._root_caps()
        witnesses: list[tuple[int, ...]] = []
        if 0 in ecaps:
            # some embedding admits no valid completion at all: the
            # candidate space contains no valid template
            return warm, witnesses, False, 0
        assigned = [0] * size
        best = warm
        d_min = self.d_min
        best_pow = best ** d_min if d_min else 0
        truncated = False
        nodes = 0
        done = False
        suffix = self.suffix
        candidates = self.candidates
        pos_embs = self.pos_embs
        emb_sig = self.emb_sig
        cap = self._cap

        def rec(pos: int, weight: int) -> None:
            nonlocal best, best_pow, truncated, nodes, done, P
            if done:
                return
            nodes += 1
            if pos == size:
                if weight > best:
                    best = weight
                    if d_min:
                        best_pow = best ** d_min
                    witnesses.clear()
                    truncated = False
                    if collect:
                        witnesses.append(tuple(assigned))
                    if early_exit and upper_bound is not None and best >= upper_bound:
                        done = True
                elif weight == best and collect:
                    if len(witnesses) < witness_cap:
                        witnesses.append(tuple(assigned))
                    else:
                        truncated = True
                return
            if weight * suffix[pos] < best:
                return
            for mask in candidates[pos]:
                assigned[pos] = mask
                saved: list[tuple[int, int]] = []
                P_before = P
                dead = False
                for ei, ti in pos_embs[pos]:
                    masks_list = emb_masks[ei]
                    masks_list[ti] = mask
                    old = ecaps[ei]
                    new = cap(emb_sig[ei], tuple(masks_list))
                    if new != old:
                        saved.append((ei, old))
                        ecaps[ei] = new
                        if new == 0:
                            dead = True
                            break
                        P = P // old * new
                if not dead and (not d_min or best_pow <= P):
                    rec(pos + 1, weight * mask.bit_count())
                for ei, old in saved:
                    ecaps[ei] = old
                for ei, ti in pos_embs[pos]:
                    emb_masks[ei][ti] = 0
                P = P_before
                assigned[pos] = 0
                if done:
                    return

        rec(0, 1)
        return best, witnesses, truncated, nodes


def _finish(case: CaseStudy, host: Host, best: int,
            raw_witnesses: list[tuple[int, ...]], truncated: bool,
            reduced: bool, nodes: int, certification: str) -> ExtremalResult:
    witnesses = tuple(Template(host, case.k, masks)
                      for masks in sorted(raw_witnesses))
    return ExtremalResult(case.name, host.kind, host.n, best, witnesses,
                          truncated, reduced, nodes, certification)


def _warm_start(case: CaseStudy, n: int) -> tuple[Template | None, int]:
    if case.construction is None:
        return None, 0
    construction = case.construction(n)
    if not satisfies(construction, case.family):
        raise AssertionError(
            f"registered construction for {case.name} violates the family at n={n}")
    return construction, construction.weight()


def solve_ex(case: CaseStudy, n: int, *, value_only: bool = False,
             witness_cap: int = 64, upper_bound: int | None = None,
             use_reduction: bool = True) -> ExtremalResult:
    """Exact extremal template weight for a case study at size n.

    With use_reduction the case's weight-dominating candidate palettes
    are searched; otherwise all nonempty palettes.  An upper_bound, when
    given, must be sound; if the validated construction already meets
    it the result is certified without search, and otherwise the search
    may stop as soon as the bound is attained (value_only runs only).
    """
    host = case.host(n)
    if use_reduction and case.candidates is not None:
        space = _ordered(case.candidates)
        reduced = True
    else:
        space = _ordered(range(1, 1 << case.k))
        reduced = False
    _, warm = _warm_start(case, n)
    if upper_bound is not None:
        if warm > upper_bound:
            raise AssertionError(
                f"upper bound {upper_bound} below construction weight {warm} "
                f"for {case.name} at n={n}")
        if warm == upper_bound:
            return _finish(case, host, warm, [], False, reduced, 0,
                           "bound+construction")
    search = _Search(host, case.k, case.family, [space] * host.size)
    best, raw, truncated, nodes = search.run(
        warm=warm, collect=not value_only, witness_cap=witness_cap,
        upper_bound=upper_bound, early_exit=value_only)
    return _finish(case, host, best, raw, truncated, reduced, nodes, "search")


def relative_ex(case: CaseStudy, root: Template, *, value_only: bool = True,
                witness_cap: int = 64,
                upper_bound: int | None = None) -> ExtremalResult:
    """Exact maximum weight over valid subtemplates of a root template."""
    host = root.host
    family = case.family
    candidates = []
    for mask in root.palettes:
        nested = case.relative_candidates(mask)
        candidates.append(_ordered(nested if nested is not None
                                   else _submasks(mask)))
    warm = 0
    if case.construction is not None:
        construction = case.construction(host.n)
        try:
            met = construction.meet(root)
        except EmptyPaletteError:
            met = None
        # met <= construction pointwise, so its realisations are a subset
        # of the construction's and it inherits validity
        if met is not None and satisfies(met, family):
            warm = met.weight()
    if upper_bound is not None and warm == upper_bound:
        return _finish(case, host, warm, [], False, True, 0,
                       "bound+construction")
    search = _Search(host, case.k, family, candidates)
    greedy_weight, _ = search.greedy()
    warm = max(warm, greedy_weight)
    if upper_bound is not None:
        if warm > upper_bound:
            raise AssertionError(
                f"upper bound {upper_bound} below warm start {warm} "
                f"for relative {case.name}")
        if warm == upper_bound:
            return _finish(case, host, warm, [], False, True, 0,
                           "bound+construction")
    best, raw, truncated, nodes = search.run(
        warm=warm, collect=not value_only, witness_cap=witness_cap,
        upper_bound=upper_bound, early_exit=value_only)
    return _finish(case, host, best, raw, truncated, True, nodes, "search")


def descent_bound(prev_weight: int, prev_ground: int, next_ground: int) -> int:
    """Upper bound transported from the previous exact optimum.

    Every valid template on the larger host restricts to a valid
    template on each embedded copy of the smaller host, and when every
    element lies in equally many copies, averaging log-weights over the
    copies shows the per-element density cannot grow.  Hence
    W_next <= W_prev^(g_next/g_prev), floored to an integer.
    """
    return integer_root_floor(prev_weight ** next_ground, prev_ground)


def _space_size(case: CaseStudy, host: Host) -> int:
    per_element = (len(case.candidates) if case.candidates is not None
                   else (1 << case.k) - 1)
    return per_element ** host.size


def exact_weights(case: CaseStudy, ns: Sequence[int]) -> dict[int, ExtremalResult]:
    """Exact optima for several sizes, searching or certifying each.

    Sizes whose candidate space is small are searched outright.  Larger
    sizes receive the best available sound upper bound (classical value
    bound, density descent from the previous exact value on K/Q hosts);
    if the construction meets the bound the value is certified, and
    otherwise the bound merely tightens the search.
    """
    results: dict[int, ExtremalResult] = {}
    prev: tuple[int, int] | None = None
    for n in sorted(set(ns)):
        host = case.host(n)
        bounds = []
        if case.value_bound is not None:
            bounds.append(case.value_bound(n))
        if prev is not None and case.host_kind in _DESCENT_HOSTS:
            prev_n, prev_weight = prev
            bounds.append(descent_bound(prev_weight,
                                        case.host(prev_n).size, host.size))
        if _space_size(case, host) <= SEARCH_SPACE_LIMIT:
            result = solve_ex(case, n, value_only=True)
        else:
            bound = min(bounds) if bounds else None
            result = solve_ex(case, n, value_only=True, upper_bound=bound)
        results[n] = result
        prev = (n, result.weight)
    return results


def check_closed_forms(case: CaseStudy, ns: Sequence[int]) -> dict:
    """Compare computed optima against the registered closed form."""
    rows = []
    all_match = True
    for n, result in exact_weights(case, ns).items():
        expected = case.closed_form_weight(n)
        match = expected is not None and result.weight == expected
        if not match:
            all_match = False
        rows.append({
            "n": n,
            "weight": result.weight,
            "expected": expected,
            "match": match,
            "certification": result.certification,
            "nodes": result.nodes,
        })
    return {"case": case.name, "rows": rows, "all_match": all_match}


def density_sequence(case: CaseStudy, ns: Sequence[int]) -> dict:
    """Exact optima plus cross-multiplied density comparisons.

    Step n->m is nonincreasing when ex_n/g(n) >= ex_m/g(m), i.e. when
    W_n^g(m) >= W_m^g(n); the comparison is done on big integers.
    """
    sizes = sorted(set(ns))
    results = exact_weights(case, sizes)
    rows = [{"n": n, "ground_size": case.host(n).size,
             "weight": results[n].weight,
             "certification": results[n].certification}
            for n in sizes]
    steps = []
    monotone = True
    for a, b in zip(sizes, sizes[1:]):
        ga, gb = case.host(a).size, case.host(b).size
        ok = pow_compare(results[a].weight, gb, results[b].weight, ga) >= 0
        if not ok:
            monotone = False
        steps.append({"from": a, "to": b, "nonincreasing": ok})
    return {"case": case.name, "rows": rows, "steps": steps,
            "nonincreasing": monotone}


SPEED_SPACE_LIMIT = 80_000_000


def speed(case: CaseStudy, n: int, *, chunk: int = 1 << 20) -> int:
    """Exact number of colourings of the host that avoid the family.

    Counts by exhaustive chunked enumeration of all k^g(n) colourings,
    so it is deliberately independent of the solver; use it only where
    k^g(n) <= SPEED_SPACE_LIMIT.
    """
    import numpy as np

    host = case.host(n)
    family = case.family
    k = case.k
    size = host.size
    total = k ** size
    if total > SPEED_SPACE_LIMIT:
        raise ValueError(
            f"speed({case.name}, {n}) would enumerate {total} colourings; "
            f"limit is {SPEED_SPACE_LIMIT}")
    maps = [emb.element_map for emb in host.embeddings(family.span)]
    cols = family.colourings
    count = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        rem = np.arange(start, stop, dtype=np.int64)
        digits = []
        for _ in range(size):
            digits.append((rem % k).astype(np.uint8))
            rem = rem // k
        bad = np.zeros(stop - start, dtype=bool)
        for emap in maps:
            for col in cols:
                hit = digits[emap[0]] == col[0] - 1
                for ti in range(1, len(emap)):
                    hit = hit & (digits[emap[ti]] == col[ti] - 1)
                bad |= hit
        count += int((~bad).sum())
    return count
