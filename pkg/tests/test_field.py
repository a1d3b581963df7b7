import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffsets.field import (SIZE_CEILING, FieldSizeError, FiniteField,
                            make_field)


# -- brute-force polynomial oracle over GF(p) ------------------------------------

def poly_mul_mod(p, mod, a, b):
    """Multiply coefficient lists a, b modulo the monic polynomial mod."""
    n = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for i in range(n + 1):
                prod[d - n + i] = (prod[d - n + i] - c * mod[i]) % p
    return prod[:n] + [0] * (n - len(prod))


def brute_primitive(p, n, mod):
    """Is x a generator of GF(p^n)* for this irreducible modulus?"""
    one = [1] + [0] * (n - 1)
    x = [0, 1] + [0] * (n - 2) if n > 1 else [(-mod[0]) % p]
    seen = set()
    cur = one
    for _ in range(p**n - 1):
        cur = poly_mul_mod(p, mod, cur, x)
        key = tuple(cur)
        if key in seen:
            return False
        seen.add(key)
    return len(seen) == p**n - 1 and tuple(one) in seen


def is_irreducible_brute(p, mod):
    """No root and no monic factor of degree up to n//2 (n <= 4 only)."""
    n = len(mod) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(tail) + [1]
            # trial division: mod by f must leave a nonzero remainder
            rem = list(mod)
            for top in range(n, d - 1, -1):
                c = rem[top]
                if c:
                    for i in range(d + 1):
                        rem[top - d + i] = (rem[top - d + i] - c * f[i]) % p
            if not any(rem[:d]):
                return False
    return True


def test_modulus_is_lex_smallest_primitive_gf16():
    F = make_field(2, 4)
    assert F.modulus == (1, 0, 0, 1, 1)      # 1 + x^3 + x^4
    cands = []
    for tail in itertools.product(range(2), repeat=4):
        mod = tuple(tail) + (1,)
        if is_irreducible_brute(2, mod) and brute_primitive(2, 4, mod):
            cands.append(mod)
    assert min(cands) == F.modulus


def test_modulus_is_lex_smallest_primitive_gf27():
    F = make_field(3, 3)
    cands = []
    for tail in itertools.product(range(3), repeat=3):
        mod = tuple(tail) + (1,)
        if is_irreducible_brute(3, mod) and brute_primitive(3, 3, mod):
            cands.append(mod)
    assert min(cands) == F.modulus


def test_prime_field():
    F = make_field(7, 1)
    assert F.order == 7
    assert pow(F.gen, 3, 7) != 1 and pow(F.gen, 2, 7) != 1
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5


@pytest.fixture(scope="module")
def gf16():
    return make_field(2, 4)


def test_field_axioms_exhaustive_gf16(gf16):
    F = gf16
    els = list(range(16))
    for a in els:
        assert F.add(a, 0) == a
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_generator_order_gf16(gf16):
    F = gf16
    x = 1
    seen = set()
    for _ in range(15):
        x = F.mul(x, F.gen)
        seen.add(x)
    assert len(seen) == 15 and x == 1


def test_mul_by_gen_matches_mul(gf16):
    F = gf16
    for a in range(16):
        assert F.mul_by_gen(a) == F.mul(a, F.gen)


def test_pow_against_repeated_mul(gf16):
    F = gf16
    for a in range(1, 16):
        acc = 1
        for e in range(20):
            assert F.pow(a, e) == acc
            acc = F.mul(acc, a)


def test_trace_to_prime_field_gf16(gf16):
    F = gf16
    tr = F.trace_map(1)
    for a in range(16):
        # Tr(a) = a + a^2 + a^4 + a^8
        expect = 0
        for e in (1, 2, 4, 8):
            expect = F.add(expect, F.pow(a, e))
        assert tr(a) == expect
    zeros = sum(1 for a in range(16) if tr(a) == 0)
    assert zeros == 8                       # kernel is a GF(2)-hyperplane


def test_relative_trace_tower():
    F = make_field(2, 4)
    tr2 = F.trace_map(2)                    # Tr_{F/GF(4)}
    for a in range(16):
        expect = F.add(a, F.pow(a, 4))
        assert tr2(a) == expect
        assert F.rel_trace(2, a) == expect
        # image lies in the degree-2 subfield: fixed by x -> x^4
        assert F.pow(tr2(a), 4) == tr2(a)


def test_frobenius_is_field_automorphism():
    F = make_field(3, 3)
    fr = F.frobenius(1)
    for a in range(27):
        assert fr(a) == F.pow(a, 3)
        for b in range(27):
            assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    fixed = [a for a in range(27) if fr(a) == a]
    assert sorted(fixed) == [0, 1, 2]       # prime subfield


def test_coeffs_roundtrip():
    F = make_field(5, 3)
    for a in range(0, 125, 7):
        assert F.from_coeffs(F.coeffs(a)) == a


def test_discrete_log_table_path():
    F = make_field(2, 6)
    x = 1
    for i in range(63):
        assert F.discrete_log(x) == i
        x = F.mul(x, F.gen)


def test_discrete_log_bsgs_path():
    F = make_field(2, 21)                   # order - 1 > table limit
    assert F.mult_order > (1 << 20)
    for e in (0, 1, 2, 1000, 123456, F.mult_order - 1):
        assert F.discrete_log(F.pow(F.gen, e)) == e


def test_discrete_log_rejects_zero(gf16):
    with pytest.raises(ZeroDivisionError):
        gf16.discrete_log(0)


def test_size_ceiling_enforced():
    with pytest.raises(FieldSizeError):
        make_field(2, 29)
    F = make_field(2, 29, ceiling=1 << 30)
    assert F.order == 1 << 29


def test_descriptor_roundtrip(gf16):
    parts = gf16.descriptor().split()
    assert parts[:2] == ["2", "4"]
    assert tuple(int(c) for c in parts[2:]) == gf16.modulus


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=342), st.integers(min_value=0, max_value=342))
def test_gf343_oracle_mul(a, b):
    F = make_field(7, 3)
    assert F.coeffs(F.mul(a, b)) == tuple(
        poly_mul_mod(7, list(F.modulus), list(F.coeffs(a)), list(F.coeffs(b))))
