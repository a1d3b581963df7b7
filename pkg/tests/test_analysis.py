import pytest

from diffsets.analysis import (check_dintk, check_hk, check_ho,
                               check_lemma_mfix, check_lemma_size, check_main,
                               check_minimal_embedding, check_planar_subset,
                               check_thm_classical_profile, hall_check,
                               is_multiplier, main_theorem_hypotheses,
                               mann_test)
from diffsets.dset import DifferenceSet, Params, make_difference_set
from diffsets.groups import AbelianGroup, cyclic_subgroup_of_order
from diffsets.singer import singer_construct, singer_construct_streamed


@pytest.fixture(scope="module")
def d15():
    return singer_construct(2, 4)


@pytest.fixture(scope="module")
def d40():
    return singer_construct(3, 4)


@pytest.fixture(scope="module")
def d585():
    return singer_construct_streamed(2, 3)


def test_is_multiplier_powers_of_two(d15):
    for m in (1, 2, 4, 8):
        rep = is_multiplier(d15, m)
        assert rep.is_multiplier
        assert rep.fixes_set            # normalized sets are fixed setwise
    brute_multipliers = set()
    from diffsets.dset import apply_power_map, translate
    translates = {translate(d15, g).elements for g in range(15)}
    for m in range(1, 15):
        if m % 3 and m % 5 and apply_power_map(d15, m) in translates:
            brute_multipliers.add(m)
    assert brute_multipliers == {1, 2, 4, 8}
    assert not is_multiplier(d15, 7).is_multiplier


def test_is_multiplier_non_coprime_k():
    # v = 7, k = 3 is coprime, so force the fallback via a group where
    # gcd(k, factor) > 1: (16,6,2) design in Z_2 x Z_8
    G = AbelianGroup([2, 8])
    D = make_difference_set(G, (G.rank((0, 0)), G.rank((0, 1)),
                                G.rank((0, 2)), G.rank((0, 5)),
                                G.rank((1, 0)), G.rank((1, 6))))
    rep = is_multiplier(D, 3)
    assert rep.is_multiplier in (True, False)   # fallback path executes


def test_hall_check_fano():
    D = make_difference_set(AbelianGroup([7]), (1, 2, 4))
    rep = hall_check(D)
    assert rep.status == "verified"
    assert rep.instance["p"] == 2


def test_hall_check_falsified_on_fake_set():
    # (13,4,1) parameters but not a difference set: Hall conclusion fails
    D = DifferenceSet(AbelianGroup([13]), (0, 1, 2, 5), Params(13, 4, 1),
                      verified=False)
    rep = hall_check(D)
    assert rep.status == "FALSIFIED"


def test_mann_q3_witness(d40):
    U = cyclic_subgroup_of_order(d40.group, 10)
    rep = mann_test(d40, U)
    assert rep.status == "verified"
    w = rep.instance["witness"]
    assert (w["p"], w["f"], w["j"]) == (3, 1, 1)
    # all intersection numbers congruent to 1 mod 3
    from diffsets.dset import intersection_profile
    assert {s % 3 for s in intersection_profile(d40, U).multiset()} == {1}


def test_mann_no_applicable_prime():
    D = singer_construct(4, 3)      # (21,5,1), n = 4
    U = cyclic_subgroup_of_order(D.group, 3)
    rep = mann_test(D, U)           # u* = 7 and 2^f is never -1 mod 7
    assert rep.status == "no-applicable-prime"


def test_mann_whole_group_degenerate():
    D = make_difference_set(AbelianGroup([7]), (1, 2, 4))
    U = cyclic_subgroup_of_order(D.group, 7)
    rep = mann_test(D, U)           # G/U trivial: the test says nothing
    assert rep.status == "hypothesis-not-met"


def test_classical_profile_checker(d15, d40, d585):
    assert check_thm_classical_profile(d15, 2, 1).status == "verified"
    assert check_thm_classical_profile(d40, 3, 1).status == "verified"
    assert check_thm_classical_profile(d585, 2, 3).status == "verified"


def test_fixed_subgroup_lemma(d585):
    rep = check_lemma_mfix(d585.group, 2, 3)
    assert rep.status == "verified"


def test_size_lemma(d585):
    rep = check_lemma_size(d585, 2, 3)
    assert rep.status == "verified"


def test_main_theorem_hypotheses_precheck():
    assert all(c.ok for c in main_theorem_hypotheses(2, 3))
    failed = {c.name: c.ok for c in main_theorem_hypotheses(2, 5)}
    assert failed["s does not divide q^2 + 1"] is False
    failed = {c.name: c.ok for c in main_theorem_hypotheses(3, 2)}
    assert not all(failed.values())         # s = 2 is neither odd nor >= q


def test_main_theorem_q2_s3(d585):
    rep = check_main(d585, 2, 3)
    assert rep.status == "verified"


def test_dintk(d15, d40):
    assert check_dintk(d15, 2).status == "verified"
    assert check_dintk(d40, 3).status == "verified"


def test_hk_even_q(d15, d585):
    assert check_hk(d15, 2, 1).status == "verified"
    assert check_hk(d585, 2, 3).status == "verified"


def test_hk_odd_q_hypothesis(d40):
    rep = check_hk(d40, 3, 1)
    assert rep.status == "hypothesis-not-met"   # requires q even


def test_minimal_embedding(d585):
    rep = check_minimal_embedding(d585)
    assert rep.status == "verified"


def test_planar_subset_m2():
    D = singer_construct(4, 3)
    rep = check_planar_subset(D, 2)
    assert rep.status == "verified"


def test_ho_subgroup_absent():
    # order 8 = 2^3 planar set: v = 73 has no subgroup of order 7
    D = singer_construct(8, 3)
    rep = check_ho(D, 2, 3)
    assert rep.status == "subgroup-absent"


def test_ho_identity_case():
    D = singer_construct(3, 3)
    rep = check_ho(D, 3, 1)
    assert rep.status == "verified"
