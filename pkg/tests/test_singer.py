import pytest

from diffsets.dset import classical_params, verify
from diffsets.field import make_field
from diffsets.singer import (hyperplane_containment, singer_construct,
                             singer_construct_streamed,
                             singer_restriction_check)


def brute_singer(q, d):
    """Trace-zero exponent set computed with naive field arithmetic."""
    from diffsets.numth import is_prime_power
    p, e = is_prime_power(q)
    F = make_field(p, e * d)
    v = (q**d - 1) // (q - 1)
    out = []
    x = 1
    for i in range(v):
        if F.rel_trace(e, x) == 0:
            out.append(i)
        x = F.mul(x, F.gen)
    return sorted(out)


def test_q2_d4_frozen():
    D = singer_construct(2, 4)
    assert D.params.as_tuple() == (15, 7, 3)
    assert D.elements == (0, 5, 7, 10, 11, 13, 14)
    assert D.verified and D.meta["verification_mode"] == "full"


def test_q3_d4_frozen():
    D = singer_construct(3, 4)
    assert D.params.as_tuple() == (40, 13, 4)
    assert D.elements == (0, 2, 5, 6, 11, 14, 15, 17, 18, 19, 25, 33, 35)


def test_q4_d3_frozen():
    D = singer_construct(4, 3)
    assert D.params.as_tuple() == (21, 5, 1)
    assert D.elements == (7, 9, 14, 15, 18)


@pytest.mark.parametrize("q,d", [(2, 4), (3, 4), (4, 4), (5, 3), (8, 3), (9, 3)])
def test_matches_naive_trace_oracle(q, d):
    D = singer_construct(q, d)
    from diffsets.dset import normalizing_shift
    # undo normalization before comparing with the raw trace-zero indices
    raw = brute_singer(q, d)
    shift = normalizing_shift(D.group, raw)
    assert sorted((e + shift) % D.group.order for e in raw) == list(D.elements)
    assert verify(D.group, D.elements).ok


@pytest.mark.parametrize("q,s", [(2, 1), (2, 3), (3, 1), (4, 1)])
def test_streamed_equals_direct(q, s):
    A = singer_construct_streamed(q, s)
    B = singer_construct(q**s, 4)
    assert A.elements == B.elements
    assert A.params == B.params == classical_params(q**s, 4)


def test_streamed_gf2_path_is_large_capable():
    D = singer_construct_streamed(2, 5)     # GF(2^20), v = 33825
    assert D.params.as_tuple() == (33825, 1057, 33)
    assert D.verified


def test_rejects_non_prime_power():
    with pytest.raises(ValueError):
        singer_construct(6, 4)


def test_hyperplane_containment_coprime_degrees():
    rep = hyperplane_containment(2, 4, 3)
    assert rep.gcd_ab == 1 and rep.contained and rep.witness is None


def test_hyperplane_containment_non_coprime():
    rep = hyperplane_containment(2, 2, 2)
    assert rep.gcd_ab == 2
    if not rep.contained:
        # witness is an element of the small hyperplane outside the big one
        F = make_field(2, 4)
        assert F.rel_trace(2, rep.witness) == 0       # in E's hyperplane
        assert F.rel_trace(1, rep.witness) != 0       # not in D's


def test_restriction_check_q2_s3():
    D, res, rep, expected = singer_restriction_check(2, 3)
    assert D.params.as_tuple() == (585, 73, 9)
    assert expected.as_tuple() == (15, 7, 3)
    assert rep.ok and (rep.v, rep.k, rep.lambda_observed) == (15, 7, 3)
    assert res.elements == (0, 1, 2, 4, 5, 8, 10)


def test_restriction_check_requires_odd_s():
    with pytest.raises(ValueError):
        singer_restriction_check(2, 2)
