import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealspaces.errors import PreconditionError, ResourceLimitError
from idealspaces.zsym import (ZIdeal, factorize, prm_z_sober_bounded, prm_z_trace, reg_z_irreducibility_witness,
                              reg_z_not_sober_certificate, validate_reg_certificate, z_classify, z_upset)

import oracles


@pytest.mark.parametrize("n, flags", [
    (12, {"primary": False, "prime": False}),
    (8, {"primary": True, "prime": False}),
    (0, {"prime": True, "primary": True, "regular_proper": False}),
    (7, {"prime": True, "maximal": True, "radical": True}),
    (1, {"primary": False, "prime": False, "regular_proper": False, "radical": True}),
])
def test_classify_examples(n, flags):
    got = z_classify(n)
    assert {k: got[k] for k in flags} == flags


@pytest.mark.parametrize("n", range(1, 400))
def test_classify_matches_oracle(n):
    f = z_classify(ZIdeal(n))
    assert f["prime"] == f["maximal"] == oracles.is_prime(n)
    assert f["primary"] == oracles.is_prime_power(n)
    assert f["radical"] == oracles.is_squarefree(n)
    assert f["regular_proper"] == (n >= 2)


def test_upset_examples():
    assert [i.n for i in z_upset(12)] == [1, 2, 3, 4, 6, 12]
    assert [i.n for i in z_upset(1)] == [1]
    assert [i.n for i in z_upset(13)] == [1, 13]
    with pytest.raises(PreconditionError):
        z_upset(0)


def test_ideal_arithmetic_exhaustive_small():
    for a, b in itertools.product(range(0, 150), repeat=2):
        A, B = ZIdeal(a), ZIdeal(b)
        assert (A <= B) == (a == 0 or (b != 0 and a % b == 0))
        assert (A + B).n == math.gcd(a, b)
        s = A & B
        assert s <= A and s <= B
        if a and b:
            assert s.n == math.lcm(a, b)
        assert (A * B).n == a * b


@given(st.integers(1, 10 ** 4), st.integers(1, 10 ** 4))
def test_sum_and_intersection_are_join_and_meet(a, b):
    A, B = ZIdeal(a), ZIdeal(b)
    join, meet = A + B, A & B
    assert A <= join and B <= join and meet <= A and meet <= B
    for d in z_upset(a):
        if B <= d:
            assert join <= d


@given(st.integers(1, 10 ** 6))
def test_radical_is_squarefree_kernel(n):
    r = ZIdeal(n).radical().n
    assert r == math.prod(oracles.prime_factors(n))


def test_factor_limit():
    assert factorize(2 ** 39) == {2: 39}
    with pytest.raises(ResourceLimitError):
        factorize(10 ** 12 + 1)
    with pytest.raises(PreconditionError):
        ZIdeal(-1)


@pytest.mark.parametrize("n, m, p", [(6, 10, 7), (2, 3, 5), (2, 2, 3), (30, 7, 11)])
def test_witness_examples(n, m, p):
    assert reg_z_irreducibility_witness(n, m) == p


@given(st.integers(2, 10 ** 5), st.integers(2, 10 ** 5))
def test_witness_never_divides(n, m):
    p = reg_z_irreducibility_witness(n, m)
    assert oracles.is_prime(p) and n % p and m % p
    assert all((n * m) % q == 0 for q in range(2, p) if oracles.is_prime(q))


def test_reg_certificate_small_and_tamper():
    cert = reg_z_not_sober_certificate(100)
    assert validate_reg_certificate(cert) == []
    assert cert["irreducible"] and not cert["sober"]
    assert dict((k, p) for k, p in cert["intersection_refutations"])[6] == 5
    assert "1" in cert["excluded_candidates"]
    bad = dict(cert, intersection_refutations=[[k, 2] for k, _ in cert["intersection_refutations"]])
    assert validate_reg_certificate(bad)
    bad2 = dict(cert, signatures=[0] + cert["signatures"][1:])
    assert validate_reg_certificate(bad2)


def test_reg_certificate_minimal_and_cap():
    cert = reg_z_not_sober_certificate(2)
    assert cert["pair_count"] == 1 and validate_reg_certificate(cert) == []
    with pytest.raises(ResourceLimitError):
        reg_z_not_sober_certificate(10 ** 7)
    with pytest.raises(PreconditionError):
        reg_z_not_sober_certificate(1)


def test_prm_traces():
    assert prm_z_trace(12) == [2, 3, 4]
    assert prm_z_trace(8) == [2, 4, 8]
    assert prm_z_trace(1) == []


def test_prm_bounded_sober():
    v = prm_z_sober_bounded(1000)
    assert v["sober"] and not v["failures"]
    # irreducible traces are exactly those of prime powers
    assert v["irreducible_traces"] == sum(1 for n in range(2, 1001) if oracles.is_prime_power(n))
    assert v["zero_case"]["zero_primary"] and v["zero_case"]["x_radical"] == 0


@pytest.mark.parametrize("k", range(2, 257))
def test_primary_bridge_to_finite_rings(k, analyzed):
    _, lat, cls = analyzed(f"Z/{k}")
    for n in oracles.divisors(k):
        idx = lat.index_of(sum(1 << x for x in oracles.zmod_ideal(k, n)))
        assert bool(cls.flags["primary"][idx]) == z_classify(n)["primary"]
