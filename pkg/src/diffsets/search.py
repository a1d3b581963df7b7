"""Exhaustive difference-set search with multiplier-orbit pruning.

A normalized difference set is fixed setwise by any numerical
multiplier, so for a known multiplier m the search space collapses to
unions of orbits of x -> m*x.  Candidates are grown orbit by orbit with
an incremental difference counter and an early abort as soon as any
non-identity difference is counted more than lambda times.

brute_force_search tests every k-subset and is the ground-truth oracle
the orbit search is validated against.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import comb, gcd

from . import dset as ds
from .groups import AbelianGroup, multiplier_orbits, subgroups_of_order
from .numth import is_prime_power


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    group: AbelianGroup
    k: int
    lam: int
    multiplier: int = 1
    node_budget: int = 50_000_000
    result_cap: int = 100_000

    def __post_init__(self):
        v = self.group.order
        if self.lam * (v - 1) != self.k * (self.k - 1):
            raise ValueError(
                f"infeasible parameters ({v},{self.k},{self.lam}): "
                "lambda(v-1) != k(k-1)")
        if gcd(self.multiplier, v) != 1:
            raise ValueError("multiplier must be a unit mod v")


@dataclass
class SearchResult:
    spec: object
    sets: list                 # sorted rank tuples, lexicographic order
    classes: int               # up to translation and numerical multipliers
    nodes: int
    seconds: float
    complete: bool = True      # False when the node budget was exhausted

    def as_dict(self):
        return {"k": getattr(self.spec, "k", None),
                "lam": getattr(self.spec, "lam", None),
                "sets_found": len(self.sets), "classes": self.classes,
                "nodes": self.nodes, "seconds": self.seconds,
                "complete": self.complete}


def canonical_class(G: AbelianGroup, elements) -> tuple[int, ...]:
    """Lexicographically least image under all translates and power maps."""
    v = G.order
    best = None
    for m in range(1, v):
        if gcd(m, v) != 1:
            continue
        mapped = sorted(G.scale(m, e) for e in elements)
        for g in range(v):
            cand = tuple(sorted(G.add(e, g) for e in mapped))
            if best is None or cand < best:
                best = cand
    return best


def _dedupe_classes(G: AbelianGroup, sets) -> int:
    return len({canonical_class(G, s) for s in sets})


def orbit_union_search(spec: SearchSpec) -> SearchResult:
    """All unions of multiplier orbits of size k with difference counts lambda."""
    G = spec.group
    v = G.order
    k, lam = spec.k, spec.lam
    orbits = multiplier_orbits(G, spec.multiplier)
    sizes = [len(o) for o in orbits]
    # reachable subset sums of the orbit-size suffix, for pruning
    reachable = [set() for _ in range(len(orbits) + 1)]
    reachable[len(orbits)] = {0}
    for i in range(len(orbits) - 1, -1, -1):
        prev = reachable[i + 1]
        reachable[i] = {s for s in prev if s <= k} | \
                       {s + sizes[i] for s in prev if s + sizes[i] <= k}

    counts = [0] * v
    chosen: list[int] = []          # chosen element ranks, unsorted
    results = []
    state = {"nodes": 0}
    t0 = time.perf_counter()
    sub = G.sub

    def add_orbit(orbit):
        """Apply difference updates; returns (ok, applied-list, elements-added)."""
        applied = []
        for a in orbit:
            for b in chosen:
                for d in (sub(a, b), sub(b, a)):
                    counts[d] += 1
                    applied.append(d)
                    if d and counts[d] > lam:
                        return False, applied, 0
        for i, a in enumerate(orbit):
            for b in orbit[i + 1:]:
                for d in (sub(a, b), sub(b, a)):
                    counts[d] += 1
                    applied.append(d)
                    if d and counts[d] > lam:
                        return False, applied, 0
        chosen.extend(orbit)
        return True, applied, len(orbit)

    def undo(applied, added):
        for d in applied:
            counts[d] -= 1
        if added:
            del chosen[-added:]

    def dfs(i, size):
        state["nodes"] += 1
        if state["nodes"] > spec.node_budget:
            raise BudgetExceeded
        if size == k:
            if all(c == lam for c in counts[1:]):
                results.append(tuple(sorted(chosen)))
            return
        if i == len(orbits) or (k - size) not in reachable[i]:
            return
        o = orbits[i]
        if size + sizes[i] <= k:
            ok, applied, added = add_orbit(o)
            if ok:
                dfs(i + 1, size + sizes[i])
            undo(applied, added)
        dfs(i + 1, size)

    complete = True
    try:
        dfs(0, 0)
    except BudgetExceeded:
        complete = False
    results.sort()
    if len(results) > spec.result_cap:
        results = results[:spec.result_cap]
        complete = False
    classes = _dedupe_classes(G, results) if results else 0
    return SearchResult(spec, results, classes, state["nodes"],
                        time.perf_counter() - t0, complete)


def brute_force_search(G: AbelianGroup, k: int, lam: int,
                       budget: int = 10_000_000) -> SearchResult:
    """Oracle: test every k-subset of G by direct difference counting."""
    v = G.order
    if comb(v, k) > budget:
        raise BudgetExceeded(
            f"C({v},{k}) = {comb(v, k)} subsets exceeds budget {budget}")
    sub = G.sub
    t0 = time.perf_counter()
    results = []
    nodes = 0
    for cand in itertools.combinations(range(v), k):
        nodes += 1
        counts = [0] * v
        ok = True
        for i, a in enumerate(cand):
            for b in cand[:i]:
                for d in (sub(a, b), sub(b, a)):
                    counts[d] += 1
                    if counts[d] > lam:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok and (k == v or all(c == lam for c in counts[1:])):
            results.append(cand)
    classes = _dedupe_classes(G, results) if results else 0
    return SearchResult(("brute", v, k, lam), results, classes, nodes,
                        time.perf_counter() - t0)


def multiplier_fixed(G: AbelianGroup, elements, m: int) -> bool:
    es = set(elements)
    return all(G.scale(m, e) in es for e in elements)


# -- conjecture evidence -------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    q: int
    s: int
    v: int
    subgroup_order: int
    status: str                # "embedded", "not-embedded", or an error note
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {"q": self.q, "s": self.s, "v": self.v,
                "subgroup_order": self.subgroup_order,
                "status": self.status, "detail": dict(self.detail)}


def conjecture_scan(q: int, s_list, ceiling=None) -> list[ScanRow]:
    """For each s, does the Singer set restrict to a minimal difference set
    on some subgroup of order (q+1)(q^2+1)?"""
    from .field import SIZE_CEILING
    from .singer import singer_construct_streamed
    if ceiling is None:
        ceiling = SIZE_CEILING
    target = (q + 1) * (q * q + 1)
    minimal_params = ((q + 1) * (q * q + 1), q * q + q + 1, q + 1)
    pe = is_prime_power(q)
    rows = []
    for s in s_list:
        try:
            D = singer_construct_streamed(q, s, ceiling=ceiling)
        except Exception as e:
            rows.append(ScanRow(q, s, 0, target, f"error: {e}"))
            continue
        v = D.params.v
        if v % target != 0:
            rows.append(ScanRow(q, s, v, target, "subgroup-absent"))
            continue
        embedded = False
        detail = {}
        for S in subgroups_of_order(D.group, target):
            res = ds.restrict(D, S)
            rep = ds.verify(res.group, res.elements)
            if rep.ok and (rep.v, rep.k, rep.lambda_observed) == minimal_params:
                embedded = True
                detail = {"restriction": rep.as_dict(),
                          "q_is_p^(2^i)": pe is not None and
                          (pe[1] & (pe[1] - 1)) == 0}
                break
        rows.append(ScanRow(q, s, v, target,
                            "embedded" if embedded else "not-embedded", detail))
    return rows
