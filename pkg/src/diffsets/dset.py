"""Difference-set core: parameters, verification, translates, profiles.

Verification computes the full difference multiset {a - b : a, b in D}
into a dense length-v counter (the group-ring vector of D D^(-1)) and
succeeds iff the identity coefficient is k and every other coefficient
is a common lambda.  All bound checks are done in cleared-denominator
integer arithmetic; no floating point anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .groups import (AbelianGroup, CosetDecomposition, Subgroup, cosets,
                     subgroup_as_group)
from .numth import is_prime_power

#: Full difference counting keeps a dense length-v counter.
FULL_VERIFY_ORDER_LIMIT = 1 << 26

#: Above this many ordered pairs, constructions fall back to sampled
#: verification unless explicitly overridden.
AUTO_VERIFY_PAIR_LIMIT = 4_000_000


@dataclass(frozen=True)
class Params:
    v: int
    k: int
    lam: int

    @property
    def n(self) -> int:
        return self.k - self.lam

    def fundamental_ok(self) -> bool:
        return self.lam * (self.v - 1) == self.k * (self.k - 1)

    def as_tuple(self):
        return (self.v, self.k, self.lam)

    def __str__(self):
        return f"({self.v},{self.k},{self.lam})"


def classical_params(q: int, d: int) -> Params:
    """Parameters ((q^d-1)/(q-1), (q^(d-1)-1)/(q-1), (q^(d-2)-1)/(q-1))."""
    if is_prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    if d < 3:
        raise ValueError("dimension must be at least 3")
    return Params((q**d - 1) // (q - 1),
                  (q**(d - 1) - 1) // (q - 1),
                  (q**(d - 2) - 1) // (q - 1))


@dataclass(frozen=True)
class DifferenceSet:
    group: AbelianGroup
    elements: tuple[int, ...]           # sorted ranks, distinct
    params: Params
    verified: bool = False              # False = candidate
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("difference-set elements must be distinct")
        if len(self.elements) != self.params.k:
            raise ValueError("element count does not match k")

    @property
    def element_set(self):
        es = self.__dict__.get("_es")
        if es is None:
            es = frozenset(self.elements)
            self.__dict__["_es"] = es
        return es

    def __repr__(self):
        tag = "verified" if self.verified else "candidate"
        return f"DifferenceSet{self.params} in {self.group.descriptor()} [{tag}]"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    v: int
    k: int
    lambda_observed: int | None
    identity_count: int
    fundamental_ok: bool
    mode: str = "full"                  # "full" or "sampled"

    def as_dict(self):
        return {
            "verified": self.ok,
            "v": self.v,
            "k": self.k,
            "lambda_observed": self.lambda_observed,
            "identity_count": self.identity_count,
            "fundamental_ok": self.fundamental_ok,
            "mode": self.mode,
        }


def difference_counts(G: AbelianGroup, elements) -> np.ndarray:
    """Coefficient vector of D D^(-1) in the group ring, indexed by rank."""
    v = G.order
    if v > FULL_VERIFY_ORDER_LIMIT:
        raise MemoryError(
            f"full difference counting limited to group order {FULL_VERIFY_ORDER_LIMIT}")
    ranks = np.asarray(sorted(elements), dtype=np.int64)
    k = len(ranks)
    counts = np.zeros(v, dtype=np.int64)
    if k == 0:
        return counts
    chunk = max(1, 4_000_000 // k)
    if len(G.factors) == 1:
        for i in range(0, k, chunk):
            d = (ranks[i:i + chunk, None] - ranks[None, :]) % v
            counts += np.bincount(d.ravel(), minlength=v)
        return counts
    factors = np.array(G.factors, dtype=np.int64)
    weights = np.array(G._weights, dtype=np.int64)
    coords = (ranks[:, None] // weights[None, :]) % factors[None, :]
    for i in range(0, k, chunk):
        d = (coords[i:i + chunk, None, :] - coords[None, :, :]) % factors
        dr = (d * weights).sum(axis=2).ravel()
        counts += np.bincount(dr, minlength=v)
    return counts


def verify(G: AbelianGroup, elements, workers: int = 1) -> VerificationReport:
    """Full group-ring verification of a candidate element set."""
    counts = difference_counts(G, elements)
    k = len(set(elements))
    v = G.order
    identity_count = int(counts[0])
    rest = np.delete(counts, 0) if v > 1 else np.array([], dtype=np.int64)
    if v > 1 and rest.min() == rest.max() and identity_count == k:
        lam = int(rest[0])
        p = Params(v, k, lam)
        return VerificationReport(True, v, k, lam, identity_count,
                                  p.fundamental_ok())
    if v == 1:
        return VerificationReport(True, 1, k, k, identity_count, True)
    return VerificationReport(False, v, k, None, identity_count, False)


def verify_sampled(G: AbelianGroup, elements, sample) -> VerificationReport:
    """Check D D^(-1) coefficients on a caller-specified set of group elements.

    Uses O(k) set membership per sampled element, so it scales past the
    dense-counter guard.
    """
    eset = set(elements)
    k = len(eset)
    lam = None
    identity_count = None
    ok = True
    for t in sample:
        c = sum(1 for a in eset if G.sub(a, t) in eset)
        if t == 0:
            identity_count = c
            ok = ok and c == k
        elif lam is None:
            lam = c
        elif c != lam:
            ok = False
            break
    if identity_count is None:
        identity_count = k
    p = Params(G.order, k, lam if lam is not None else 0)
    return VerificationReport(ok, G.order, k, lam if ok else None,
                              identity_count, p.fundamental_ok() if ok else False,
                              mode="sampled")


def make_difference_set(G: AbelianGroup, elements, workers: int = 1,
                        meta: dict | None = None) -> DifferenceSet:
    """Verify an element set and wrap it; raises if it is not a difference set."""
    rep = verify(G, elements, workers=workers)
    if not rep.ok:
        raise ValueError("element set is not a difference set: "
                         f"{rep.as_dict()}")
    return DifferenceSet(G, tuple(sorted(set(elements))),
                         Params(rep.v, rep.k, rep.lambda_observed), True,
                         dict(meta or {}))


# -- translates and power maps -------------------------------------------------

def translate(D: DifferenceSet, g: int) -> DifferenceSet:
    els = tuple(sorted(D.group.add(e, g) for e in D.elements))
    return DifferenceSet(D.group, els, D.params, D.verified, dict(D.meta))


def apply_power_map(D: DifferenceSet, m: int) -> tuple[int, ...]:
    """Image of D under the numerical multiplier x -> m*x, as a sorted tuple."""
    G = D.group
    if gcd(m, G.order) != 1:
        raise ValueError(f"gcd({m}, {G.order}) != 1: not an automorphism")
    return tuple(sorted(G.scale(m, e) for e in D.elements))


def element_sum(G: AbelianGroup, elements) -> int:
    s = 0
    for e in elements:
        s = G.add(s, e)
    return s


def normalizing_shift(G: AbelianGroup, elements) -> int:
    """The unique g with coordinate-sum(D + g) = 0; needs gcd(v, k) = 1."""
    k = len(elements)
    if gcd(k, G.order) != 1:
        raise ValueError(f"gcd(v, k) = gcd({G.order}, {k}) != 1; "
                         "normalized translate is not unique")
    s = G.unrank(element_sum(G, elements))
    shift = []
    for si, d in zip(s, G.factors):
        kinv = pow(k % d, -1, d)
        shift.append((-si * kinv) % d)
    return G.rank(shift)


def normalize(D: DifferenceSet) -> DifferenceSet:
    """The translate of D whose element coordinate sum is the identity."""
    g = normalizing_shift(D.group, D.elements)
    return translate(D, g) if g else D


def is_normalized(G: AbelianGroup, elements) -> bool:
    return element_sum(G, elements) == 0


# -- intersection profiles -------------------------------------------------------

@dataclass(frozen=True)
class IntersectionProfile:
    subgroup: Subgroup
    decomposition: CosetDecomposition
    pairs: tuple[tuple[int, int], ...]   # (coset representative rank, s_i), nonzero only
    index: int                           # number of cosets r
    k: int
    lam: int
    n: int

    @property
    def sum_si(self) -> int:
        return sum(s for _, s in self.pairs)

    @property
    def sum_si_sq(self) -> int:
        return sum(s * s for _, s in self.pairs)

    def multiset(self) -> list[int]:
        """All r intersection numbers, sorted (zeros included)."""
        vals = sorted(s for _, s in self.pairs)
        return sorted(vals + [0] * (self.index - len(self.pairs)))

    def sum_ok(self) -> bool:
        return self.sum_si == self.k

    def sum_sq_ok(self) -> bool:
        return self.sum_si_sq == self.lam * self.subgroup.order + self.n

    def as_dict(self):
        return {
            "subgroup_order": self.subgroup.order,
            "index": self.index,
            "profile": self.multiset(),
            "sum_ok": self.sum_ok(),
            "sum_sq_ok": self.sum_sq_ok(),
        }


def intersection_profile(D: DifferenceSet, H: Subgroup) -> IntersectionProfile:
    G = D.group
    dec = cosets(G, H)
    counts: dict[int, int] = {}
    for e in D.elements:
        i = dec.coset_index(e)
        counts[i] = counts.get(i, 0) + 1
    pairs = tuple(sorted((dec.representatives[i], s) for i, s in counts.items()))
    return IntersectionProfile(H, dec, pairs, dec.index, D.params.k,
                               D.params.lam, D.params.n)


@dataclass(frozen=True)
class BoundCheck:
    ok: bool
    index: int
    violations: tuple[tuple[int, int], ...]   # (coset rep, s_i) exceeding the bound

    def as_dict(self):
        return {"ok": self.ok, "index": self.index,
                "violations": list(self.violations)}


def distribution_bound_check(D: DifferenceSet, H: Subgroup) -> BoundCheck:
    """Exact check of |s_i - k/r| <= sqrt(n)(r-1)/r for every coset.

    Compared with cleared denominators: (r*s_i - k)^2 <= n*(r-1)^2.
    """
    prof = intersection_profile(D, H)
    r = prof.index
    k = D.params.k
    n = D.params.n
    rhs = n * (r - 1) * (r - 1)
    bad = [(rep, s) for rep, s in prof.pairs if (r * s - k) ** 2 > rhs]
    if len(prof.pairs) < r and k * k > rhs:
        bad.append((-1, 0))               # some coset misses D entirely
    return BoundCheck(not bad, r, tuple(bad))


# -- restriction to a subgroup ---------------------------------------------------

@dataclass(frozen=True)
class Restriction:
    group: AbelianGroup                  # M in invariant-factor form
    elements: tuple[int, ...]            # sorted ranks within M
    mapping: tuple[tuple[int, int], ...]  # (rank in parent, rank in M)
    presentation: object = field(repr=False, default=None)


def restrict(D: DifferenceSet, M: Subgroup) -> Restriction:
    """D intersected with M, re-coordinatized into M's own presentation."""
    pres = subgroup_as_group(M)
    hits = sorted(set(D.elements) & M._element_set)
    mapping = tuple((e, pres.to_sub[e]) for e in hits)
    els = tuple(sorted(pres.to_sub[e] for e in hits))
    return Restriction(pres.group, els, mapping, pres)


# -- set-file interchange format ---------------------------------------------------

def write_set_file(path, D: DifferenceSet):
    lines = [f"group {D.group.descriptor().replace(' ', '')}",
             f"{D.params.v} {D.params.k} {D.params.lam}"]
    lines += [str(e) for e in D.elements]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


class SetFileError(ValueError):
    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


def read_set_file(path, verify_now: bool = True) -> DifferenceSet:
    from .groups import parse_group
    with open(path) as fh:
        raw = fh.read().splitlines()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw)
             if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) < 2:
        raise SetFileError(path, 1, "expected a group line and a parameter line")
    lno, gline = lines[0]
    if not gline.startswith("group "):
        raise SetFileError(path, lno, 'first line must be "group Z_..."')
    try:
        G = parse_group(gline[6:])
    except ValueError as e:
        raise SetFileError(path, lno, str(e)) from None
    lno, pline = lines[1]
    try:
        v, k, lam = (int(x) for x in pline.split())
    except ValueError:
        raise SetFileError(path, lno, 'expected "v k lambda"') from None
    if v != G.order:
        raise SetFileError(path, lno, f"v = {v} does not match group order {G.order}")
    els = []
    for lno, ln in lines[2:]:
        try:
            e = int(ln)
        except ValueError:
            raise SetFileError(path, lno, f"bad element rank {ln!r}") from None
        if not 0 <= e < v:
            raise SetFileError(path, lno, f"element rank {e} out of range")
        els.append(e)
    if len(els) != k:
        raise SetFileError(path, len(raw), f"expected {k} elements, found {len(els)}")
    params = Params(v, k, lam)
    if verify_now and v <= FULL_VERIFY_ORDER_LIMIT and k * k <= AUTO_VERIFY_PAIR_LIMIT:
        rep = verify(G, els)
        verified = rep.ok and rep.lambda_observed == lam
    else:
        verified = False
    return DifferenceSet(G, tuple(sorted(els)), params, verified)
