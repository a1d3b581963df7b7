"""Finite abelian groups, written additively.

A group is a direct product Z_{d1} x ... x Z_{dt}; elements are handled
by their mixed-radix rank (most significant coordinate first), which
keeps subgroup element lists compact and hashable.  The usual
multiplicative language for difference sets maps onto this as
"product of elements = 1" <-> "coordinate sum = 0".

Factor lists are not required to be in invariant-factor form (Z_3 x Z_5
is accepted as written); :func:`subgroup_as_group` always emits a proper
invariant-factor presentation via Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .numth import divisors, factorize

#: Orders up to this are safe to materialize element-by-element.
MATERIALIZE_LIMIT = 1 << 24

#: Exhaustive subgroup enumeration is only attempted below this order
#: for non-cyclic groups.
ENUMERATION_LIMIT = 10**5


class GroupSizeError(ValueError):
    """Operation would materialize more elements than the guard allows."""


class AbelianGroup:
    """Direct product of cyclic groups, elements addressed by rank."""

    def __init__(self, factors):
        factors = tuple(int(d) for d in factors)
        if not factors or any(d < 1 for d in factors):
            raise ValueError(f"invalid factor list {factors}")
        self.factors = factors
        self.order = 1
        for d in factors:
            self.order *= d
        # weight[i] = product of factors after i, so
        # rank = sum coords[i] * weight[i]
        self._weights = []
        w = self.order
        for d in factors:
            w //= d
            self._weights.append(w)
        self.exponent = lcm(*factors)

    @property
    def is_cyclic(self) -> bool:
        return self.exponent == self.order

    def descriptor(self) -> str:
        return " x ".join(f"Z_{d}" for d in self.factors)

    def __repr__(self):
        return f"AbelianGroup({self.descriptor()})"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    # -- coordinates ---------------------------------------------------------

    def rank(self, coords) -> int:
        if len(coords) != len(self.factors):
            raise ValueError("coordinate length mismatch")
        r = 0
        for c, d, w in zip(coords, self.factors, self._weights):
            if not 0 <= c < d:
                raise ValueError(f"coordinate {c} out of range [0, {d})")
            r += c * w
        return r

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < self.order:
            raise ValueError(f"rank {r} out of range")
        out = []
        for w in self._weights:
            c, r = divmod(r, w)
            out.append(c)
        return tuple(out)

    # -- group law on ranks ----------------------------------------------------

    def add(self, r1: int, r2: int) -> int:
        if len(self.factors) == 1:
            return (r1 + r2) % self.order
        out = 0
        for d, w in zip(self.factors, self._weights):
            c1, r1 = divmod(r1, w)
            c2, r2 = divmod(r2, w)
            out += ((c1 + c2) % d) * w
        return out

    def neg(self, r: int) -> int:
        if len(self.factors) == 1:
            return (-r) % self.order
        out = 0
        for d, w in zip(self.factors, self._weights):
            c, r = divmod(r, w)
            out += ((-c) % d) * w
        return out

    def sub(self, r1: int, r2: int) -> int:
        return self.add(r1, self.neg(r2))

    def scale(self, m: int, r: int) -> int:
        """m-fold sum of the element of rank r (the power map x -> x^m)."""
        if len(self.factors) == 1:
            return (m * r) % self.order
        out = 0
        for d, w in zip(self.factors, self._weights):
            c, r = divmod(r, w)
            out += (m * c % d) * w
        return out

    def element_order(self, r: int) -> int:
        o = 1
        for d, w in zip(self.factors, self._weights):
            c, r = divmod(r, w)
            o = lcm(o, d // gcd(c, d))
        return o

    def elements(self):
        return range(self.order)


def parse_group(text: str) -> AbelianGroup:
    """Parse a descriptor like "Z_3 x Z_15" (spacing and case lenient)."""
    parts = text.replace("X", "x").split("x")
    factors = []
    for part in parts:
        part = part.strip()
        if not part.startswith(("Z_", "z_")):
            raise ValueError(f"bad group descriptor component {part!r}")
        factors.append(int(part[2:]))
    return AbelianGroup(factors)


@dataclass(frozen=True)
class Subgroup:
    group: AbelianGroup
    elements: tuple[int, ...]          # sorted ranks

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, r: int) -> bool:
        return r in self._element_set

    @property
    def _element_set(self):
        es = self.__dict__.get("_es")
        if es is None:
            es = frozenset(self.elements)
            self.__dict__["_es"] = es
        return es

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.group.descriptor()})"


@dataclass(frozen=True)
class CosetDecomposition:
    subgroup: Subgroup
    representatives: tuple[int, ...]   # minimal rank per coset, ascending

    @property
    def index(self) -> int:
        return len(self.representatives)

    def coset_index(self, r: int) -> int:
        G = self.subgroup.group
        if len(G.factors) == 1:
            return r % (G.order // self.subgroup.order)
        return self._lookup[r]

    @property
    def _lookup(self):
        lk = self.__dict__.get("_lk")
        if lk is None:
            G = self.subgroup.group
            lk = {}
            for i, rep in enumerate(self.representatives):
                for h in self.subgroup.elements:
                    lk[G.add(rep, h)] = i
            self.__dict__["_lk"] = lk
        return lk


def _closure(G: AbelianGroup, gens) -> tuple[int, ...]:
    seen = {0}
    frontier = [0]
    for g in gens:
        if g not in seen:
            new = []
            for s in list(seen):
                t = G.add(s, g)
                while t not in seen:
                    seen.add(t)
                    new.append(t)
                    t = G.add(t, g)
            frontier.extend(new)
        if len(seen) > MATERIALIZE_LIMIT:
            raise GroupSizeError("subgroup closure exceeds materialization guard")
    return tuple(sorted(seen))


def generated_subgroup(G: AbelianGroup, gens) -> Subgroup:
    return Subgroup(G, _closure(G, gens))


def cyclic_subgroup_of_order(G: AbelianGroup, m: int) -> Subgroup:
    """The unique subgroup of order m of a cyclic group."""
    if not G.is_cyclic:
        raise ValueError("group is not cyclic")
    if G.order % m != 0:
        raise ValueError(f"{m} does not divide the group order {G.order}")
    # generic cyclic group = Z_{d1} x ... with lcm = order; reduce to the
    # plain Z_v case through a generator
    if len(G.factors) == 1:
        step = G.order // m
        return Subgroup(G, tuple(range(0, G.order, step)))
    gen = _cyclic_generator(G)
    step = G.order // m
    els = []
    t = 0
    for _ in range(m):
        els.append(t)
        t = G.add(t, G.scale(step, gen))
    return Subgroup(G, tuple(sorted(els)))


def _cyclic_generator(G: AbelianGroup) -> int:
    for r in range(1, G.order):
        if G.element_order(r) == G.order:
            return r
    raise ValueError("no generator found")


def subgroups_of_order(G: AbelianGroup, m: int) -> list[Subgroup]:
    """All subgroups of order m; exactly one for cyclic G."""
    if G.order % m != 0:
        raise ValueError(f"{m} does not divide the group order {G.order}")
    if G.is_cyclic:
        return [cyclic_subgroup_of_order(G, m)]
    if G.order > ENUMERATION_LIMIT:
        raise GroupSizeError(
            f"subgroup enumeration limited to non-cyclic orders <= {ENUMERATION_LIMIT}")
    return [S for S in all_subgroups(G) if S.order == m]


def all_subgroups(G: AbelianGroup) -> list[Subgroup]:
    """Every subgroup, by closing the set of cyclic subgroups under joins."""
    if G.order > ENUMERATION_LIMIT:
        raise GroupSizeError("group too large for exhaustive subgroup enumeration")
    cyclics = {_closure(G, (r,)) for r in G.elements()}
    subs = set(cyclics)
    frontier = set(cyclics)
    while frontier:
        nxt = set()
        for s in frontier:
            for c in cyclics:
                if not set(c) <= set(s):
                    j = _closure(G, set(s) | set(c))
                    if j not in subs:
                        subs.add(j)
                        nxt.add(j)
        frontier = nxt
    return [Subgroup(G, s) for s in sorted(subs, key=lambda t: (len(t), t))]


def cosets(G: AbelianGroup, H: Subgroup) -> CosetDecomposition:
    """Coset decomposition with minimal-rank representatives, ascending."""
    if H.group != G:
        raise ValueError("subgroup belongs to a different group")
    r = G.order // H.order
    if len(G.factors) == 1:
        # difference of two ranks is in H iff ranks agree mod the index
        return CosetDecomposition(H, tuple(range(r)))
    if G.order > MATERIALIZE_LIMIT:
        raise GroupSizeError("coset decomposition needs a materializable group")
    seen = bytearray(G.order)
    reps = []
    hset = H.elements
    for x in range(G.order):
        if not seen[x]:
            reps.append(x)
            for h in hset:
                seen[G.add(x, h)] = 1
            if len(reps) == r:
                break
    return CosetDecomposition(H, tuple(reps))


def quotient_exponent(G: AbelianGroup, U: Subgroup) -> int:
    """Least m >= 1 with m*x in U for every x in G."""
    uset = U._element_set
    m = 1
    for d in divisors(G.exponent):
        ok = True
        for w in G._weights:            # generators of the direct factors
            if G.scale(d, w) not in uset:
                ok = False
                break
        if ok:
            return d
    return G.exponent


def sylow(G: AbelianGroup, p: int):
    """The Sylow p-subgroup, a cyclicity flag, and a generator when cyclic."""
    parts = []
    for d in G.factors:
        pe = 1
        while d % p == 0:
            pe *= p
            d //= p
        parts.append(pe)
    order = 1
    for pe in parts:
        order *= pe
    cyclic = sum(1 for pe in parts if pe > 1) <= 1
    if order > MATERIALIZE_LIMIT:
        raise GroupSizeError("Sylow subgroup too large to materialize")
    gens = [G._weights[i] * (G.factors[i] // parts[i])
            for i in range(len(parts)) if parts[i] > 1]
    S = generated_subgroup(G, gens)
    generator = None
    if cyclic and order > 1:
        generator = min(e for e in S.elements if G.element_order(e) == order)
    return S, cyclic, generator


def fixed_subgroup(G: AbelianGroup, m: int) -> Subgroup:
    """Fixed points of the power map x -> m*x; requires gcd(m, v) = 1."""
    if gcd(m, G.order) != 1:
        raise ValueError(f"x -> {m}x is not an automorphism of {G.descriptor()}")
    order = 1
    steps = []
    for d in G.factors:
        g = gcd(m - 1, d)
        order *= g
        steps.append(d // g)
    if order > MATERIALIZE_LIMIT:
        raise GroupSizeError("fixed-point subgroup too large to materialize")
    els = [0]
    for d, step, w in zip(G.factors, steps, G._weights):
        els = [e + c * w for e in els for c in range(0, d, step)]
    return Subgroup(G, tuple(sorted(els)))


# ---------------------------------------------------------------------------
# invariant-factor presentation of a subgroup (Smith normal form over Z)

def _snf_with_transforms(A):
    """Smith normal form S = P A Q of a small integer matrix."""
    A = [row[:] for row in A]
    n = len(A)
    m = len(A[0])
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        P[dst] = [a + c * b for a, b in zip(P[dst], P[src])]

    def add_col(src, dst, c):
        for row in A:
            row[dst] += c * row[src]
        for row in Q:
            row[dst] += c * row[src]

    t = 0
    while t < min(n, m):
        # find a nonzero pivot of minimal absolute value
        pivot = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                a = abs(A[i][j])
                if a and (best is None or a < best):
                    best = a
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        swap_rows(t, i)
        swap_cols(t, j)
        if A[t][t] < 0:
            add_row(t, t, -2)  # negate row via A[t] += -2*A[t]
        dirty = False
        for i in range(t + 1, n):
            if A[i][t]:
                q = A[i][t] // A[t][t]
                add_row(t, i, -q)
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, m):
            if A[t][j]:
                q = A[t][j] // A[t][t]
                add_col(t, j, -q)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility fixup
        bad = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if A[i][j] % A[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1
    return A, P, Q


def _hnf_basis(rows, t):
    """Row-echelon integer basis (t x t) of the lattice spanned by rows."""
    mat = [row[:] for row in rows]
    basis = []
    for col in range(t):
        pivot_rows = [r for r in mat if r[col] != 0]
        while len(pivot_rows) > 1:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            a = pivot_rows[0]
            for r in pivot_rows[1:]:
                q = r[col] // a[col]
                for i in range(t):
                    r[i] -= q * a[i]
            pivot_rows = [r for r in mat if r[col] != 0]
        if not pivot_rows:
            raise ValueError("lattice not of full rank")
        piv = pivot_rows[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        basis.append(piv[:])
        mat = [r for r in mat if r is not piv and any(r)]
        for r in mat:
            if r[col]:
                q = r[col] // piv[col]
                for i in range(t):
                    r[i] -= q * piv[i]
        mat = [r for r in mat if any(r)]
    return basis


def _solve_triangular(U, target):
    """Integer z with z @ U = target, U lower-triangular-by-column order."""
    t = len(U)
    z = [0] * t
    rem = list(target)
    for col in range(t):
        # U rows are echelon with pivot at position col for row col
        piv = U[col][col]
        q, r = divmod(rem[col], piv)
        if r:
            raise ValueError("target not in the lattice")
        z[col] = q
        for i in range(t):
            rem[i] -= q * U[col][i]
    if any(rem):
        raise ValueError("target not in the lattice")
    return z


@dataclass(frozen=True)
class SubgroupPresentation:
    """A subgroup re-coordinatized as its own abelian group."""

    subgroup: Subgroup
    group: AbelianGroup                       # invariant-factor form
    to_sub: dict = field(repr=False)          # rank in parent -> rank here
    from_sub: dict = field(repr=False)


def subgroup_as_group(H: Subgroup) -> SubgroupPresentation:
    """Present H in invariant-factor form with an explicit isomorphism."""
    G = H.group
    t = len(G.factors)
    if G.is_cyclic:
        m = H.order
        # all subgroups of a cyclic group are standard: find a generator
        gen = min((e for e in H.elements if G.element_order(e) == m), default=0)
        group = AbelianGroup([m])
        to_sub = {}
        r = 0
        for j in range(m):
            to_sub[r] = j
            r = G.add(r, gen)
        from_sub = {j: r for r, j in to_sub.items()}
        return SubgroupPresentation(H, group, to_sub, from_sub)

    rows = [list(G.unrank(e)) for e in H.elements]
    rows += [[G.factors[i] if i == j else 0 for j in range(t)] for i in range(t)]
    U = _hnf_basis(rows, t)
    # A with A @ U = diag(factors)
    A = [_solve_triangular(U, [G.factors[i] if i == j else 0 for j in range(t)])
         for i in range(t)]
    S, _P, Q = _snf_with_transforms(A)
    invariants = [S[i][i] for i in range(t)]
    kept = [i for i, s in enumerate(invariants) if s > 1]
    if not kept:
        kept = [t - 1]  # trivial subgroup -> Z_1
    factors = [invariants[i] for i in kept]
    group = AbelianGroup(factors)
    to_sub = {}
    for e in H.elements:
        target = list(G.unrank(e))
        z = _solve_triangular(U, target)
        w = [sum(z[i] * Q[i][j] for i in range(t)) % invariants[j] for j in range(t)]
        to_sub[e] = group.rank([w[i] for i in kept])
    if len(set(to_sub.values())) != H.order:
        raise RuntimeError("subgroup re-coordinatization is not injective")
    from_sub = {j: r for r, j in to_sub.items()}
    return SubgroupPresentation(H, group, to_sub, from_sub)


def multiplier_orbits(G: AbelianGroup, m: int) -> list[list[int]]:
    """Orbits of x -> m*x on G, each sorted, ordered by minimal element."""
    if gcd(m, G.order) != 1:
        raise ValueError(f"gcd({m}, {G.order}) != 1: not an automorphism")
    if G.order > MATERIALIZE_LIMIT:
        raise GroupSizeError("orbit decomposition needs a materializable group")
    seen = bytearray(G.order)
    orbits = []
    for x in range(G.order):
        if not seen[x]:
            orb = []
            t = x
            while not seen[t]:
                seen[t] = 1
                orb.append(t)
                t = G.scale(m, t)
            orbits.append(sorted(orb))
    return orbits
