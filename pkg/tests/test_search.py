import itertools

import pytest

from diffsets.dset import verify
from diffsets.groups import AbelianGroup
from diffsets.search import (SearchSpec, brute_force_search, canonical_class,
                             conjecture_scan, multiplier_fixed,
                             orbit_union_search)


def hand_enumerate(G, k, lam):
    """Oracle: test every k-subset by direct difference counting."""
    found = []
    for combo in itertools.combinations(range(G.order), k):
        counts = [0] * G.order
        for a in combo:
            for b in combo:
                counts[G.sub(a, b)] += 1
        if all(c == lam for c in counts[1:]):
            found.append(combo)
    return found


def test_spec_rejects_infeasible():
    with pytest.raises(ValueError):
        SearchSpec(AbelianGroup([15]), 7, 2)
    with pytest.raises(ValueError):
        SearchSpec(AbelianGroup([15]), 7, 3, multiplier=3)


def test_fano_brute_matches_hand_enumeration():
    G = AbelianGroup([7])
    expected = hand_enumerate(G, 3, 1)
    got = brute_force_search(G, 3, 1)
    assert got.sets == expected
    assert len(got.sets) == 14
    assert all(verify(G, s).ok for s in got.sets)


def test_fano_orbit_search_m2():
    G = AbelianGroup([7])
    res = orbit_union_search(SearchSpec(G, 3, 1, multiplier=2))
    assert res.sets == [(1, 2, 4), (3, 5, 6)]
    assert res.complete
    # exactly the multiplier-fixed subsets of the full enumeration
    brute = brute_force_search(G, 3, 1)
    fixed = [s for s in brute.sets if multiplier_fixed(G, s, 2)]
    assert fixed == res.sets


def test_pg32_orbit_search_m2():
    G = AbelianGroup([15])
    res = orbit_union_search(SearchSpec(G, 7, 3, multiplier=2))
    assert res.sets == [(0, 1, 2, 4, 5, 8, 10), (0, 5, 7, 10, 11, 13, 14)]
    brute = brute_force_search(G, 7, 3)
    assert len(brute.sets) == 30
    assert [s for s in brute.sets if multiplier_fixed(G, s, 2)] == res.sets
    assert all(verify(G, s).ok for s in res.sets)


def test_nonexistence_case():
    # Z_16 carries no (16,6,2) difference set
    G = AbelianGroup([16])
    assert orbit_union_search(SearchSpec(G, 6, 2)).sets == []
    assert brute_force_search(G, 6, 2).sets == []


def test_canonical_class_invariance():
    G = AbelianGroup([15])
    base = (0, 5, 7, 10, 11, 13, 14)
    canon = canonical_class(G, base)
    for g in range(15):
        shifted = tuple(sorted((e + g) % 15 for e in base))
        assert canonical_class(G, shifted) == canon
    for m in (2, 4, 7, 8):
        mapped = tuple(sorted(m * e % 15 for e in base))
        assert canonical_class(G, mapped) == canon
    # the two m=2 survivors are equivalent: one class
    assert canonical_class(G, (0, 1, 2, 4, 5, 8, 10)) == canon


def test_class_counts():
    G = AbelianGroup([7])
    res = orbit_union_search(SearchSpec(G, 3, 1, multiplier=2))
    assert res.classes == 1
    assert orbit_union_search(SearchSpec(AbelianGroup([15]), 7, 3,
                                         multiplier=2)).classes == 1


def test_budget_marks_incomplete():
    G = AbelianGroup([15])
    res = orbit_union_search(SearchSpec(G, 7, 3, node_budget=3))
    assert not res.complete


def test_multiplier_one_is_unpruned():
    G = AbelianGroup([7])
    res = orbit_union_search(SearchSpec(G, 3, 1, multiplier=1))
    assert res.sets == brute_force_search(G, 3, 1).sets


def test_conjecture_scan_small():
    rows = conjecture_scan(2, [1, 3])
    assert [r.status for r in rows] == ["embedded", "embedded"]
    assert rows[0].v == 15 and rows[1].v == 585
    assert all(r.subgroup_order == 15 for r in rows)
