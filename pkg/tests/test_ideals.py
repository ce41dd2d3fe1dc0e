import itertools

import numpy as np
import pytest

from idealspaces.errors import ResourceLimitError
from idealspaces.ideals import (Ideal, analyze_ring, enumerate_ideals, ideal_from_generators, ideal_product,
                                is_primary_via_quotient, krull_dimension, principal_ideal, radical_of)
from idealspaces.rings import build_ring

import oracles

SMALL = ["Z/12", "Z/2 x Z/2", "Z/4", "GF(2)[x]/(x^3)", "Z/2 x Z/4", "GF(3)[x]/(x^2)", "Z/8 / (4)",
         "GF(2)[x]/(x^2+x)", "Z/6", "Z/2 x Z/2 x Z/2", "(Z/4 x Z/4)/((2,2))"]


def _labels(lat, ids):
    return [lat.label(i) for i in ids]


@pytest.mark.parametrize("n", range(2, 97))
def test_zmod_lattice_is_divisor_lattice(n, analyzed):
    _, lat, cls = analyzed(f"Z/{n}")
    ideal_sets = {frozenset(lat.ideals[i].members) for i in range(lat.m)}
    expected = {d: oracles.zmod_ideal(n, d) for d in oracles.divisors(n)}
    assert ideal_sets == set(expected.values())
    for d, s in expected.items():
        i = lat.index_of(sum(1 << x for x in s))
        proper = d != 1
        assert cls.flags["prime"][i] == (proper and oracles.is_prime(d))
        assert cls.flags["primary"][i] == (proper and oracles.is_prime_power(d))
        assert cls.flags["radical"][i] == oracles.is_squarefree(d)
        assert cls.flags["maximal"][i] == oracles.is_prime(d)


@pytest.mark.parametrize("text", SMALL)
def test_enumeration_matches_brute_force(text, analyzed):
    ring, lat, _ = analyzed(text)
    if ring.size > 12:
        pytest.skip("brute force limited to 12 elements")
    brute = oracles.ideals_brute(ring.add, ring.mul, ring.size, ring.zero)
    assert {frozenset(lat.ideals[i].members) for i in range(lat.m)} == brute
    assert all(lat.ideals[i].is_ideal() for i in range(lat.m))


def test_spec_examples(analyzed):
    _, lat, cls = analyzed("Z/12")
    assert _labels(lat, range(lat.m)) == ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]
    assert _labels(lat, cls.indices("primary")) == ["(4)", "(3)", "(2)"]
    six = lat.index_of(principal_ideal(lat.ring, 6))
    assert not cls.flags["irreducible"][six]
    _, lat2, _ = analyzed("GF(2)")
    assert lat2.m == 2
    _, lat4, cls4 = analyzed("Z/4")
    assert cls4.flags["primary"][0] and not cls4.flags["prime"][0] and cls4.flags["maximal"][1]
    _, lat22, cls22 = analyzed("Z/2 x Z/2")
    assert lat22.m == 4 and not cls22.flags["primary"][0]
    a, b = cls22.witnesses[("primary", 0)]
    assert lat22.ring.mul(a, b) == lat22.ring.zero and a != lat22.ring.zero and b != lat22.ring.zero


def test_principal_and_generated():
    r6 = build_ring("Z/6")
    assert principal_ideal(r6, 2).members == (0, 2, 4)
    assert principal_ideal(r6, 0).members == (0,)
    r22 = build_ring("Z/2 x Z/2")
    e = r22.element((1, 0))
    assert set(principal_ideal(r22, e).members) == {r22.zero, e}
    r12 = build_ring("Z/12")
    assert ideal_from_generators(r12, [4, 6]).members == (0, 2, 4, 6, 8, 10)
    assert ideal_from_generators(r12, []).members == (0,)
    assert ideal_from_generators(r12, [1]).size == 12


def test_radical_examples(analyzed):
    _, lat, cls = analyzed("Z/12")
    four = lat.index_of(principal_ideal(lat.ring, 4))
    two = lat.index_of(principal_ideal(lat.ring, 2))
    assert radical_of(lat, four) == two
    for p in cls.indices("prime"):
        assert radical_of(lat, p) == p
    _, lat4, _ = analyzed("Z/4")
    assert lat4.label(radical_of(lat4, 0)) == "(2)"


def test_radical_matches_power_scan(analyzed):
    for text in SMALL:
        ring, lat, cls = analyzed(text)
        for i in range(lat.m):
            members = set(lat.ideals[i].members)
            expect = set()
            for x in range(ring.size):
                p = x
                for _ in range(ring.size):
                    if p in members:
                        expect.add(x)
                        break
                    p = ring.mul(p, x)
            assert set(lat.ideals[int(cls.radical[i])].members) == expect


def test_ideal_product_examples(analyzed):
    _, lat, _ = analyzed("Z/12")
    idx = {lat.label(i): i for i in range(lat.m)}
    assert ideal_product(lat, idx["(2)"], idx["(3)"]) == idx["(6)"]
    for i in range(lat.m):
        assert ideal_product(lat, i, lat.top) == i
    _, lat8, _ = analyzed("Z/8")
    two = lat8.index_of(principal_ideal(lat8.ring, 2))
    assert lat8.label(ideal_product(lat8, two, two)) == "(4)"


@pytest.mark.parametrize("text", SMALL + ["Z/36", "Z/8 x Z/4"])
def test_lattice_laws(text, analyzed):
    _, lat, _ = analyzed(text)
    sets = [set(lat.ideals[i].members) for i in range(lat.m)]
    for i, j in itertools.product(range(lat.m), repeat=2):
        assert sets[lat.meet(i, j)] == sets[i] & sets[j]
        assert sets[i] | sets[j] <= sets[lat.join(i, j)]
        assert lat.join(i, lat.meet(i, j)) == i
        assert lat.meet(i, lat.join(i, j)) == i
        assert lat.leq(i, j) == (sets[i] <= sets[j])
    for i, j, k in itertools.product(range(min(lat.m, 12)), repeat=3):
        assert lat.join(lat.join(i, j), k) == lat.join(i, lat.join(j, k))
        assert lat.meet(lat.meet(i, j), k) == lat.meet(i, lat.meet(j, k))
    assert sets[lat.bottom] == {lat.ring.zero} and len(sets[lat.top]) == lat.ring.size


def _definitional_flags(ring, lat, i):
    """Recompute the pair- and family-quantified flags by brute force."""
    I = set(lat.ideals[i].members)
    n = ring.size
    proper = len(I) < n
    rad = {x for x in range(n) if any(_power(ring, x, k) in I for k in range(1, n + 1))}
    prime = proper and all(a in I or b in I for a in range(n) for b in range(n) if ring.mul(a, b) in I)
    primary = proper and all(a in I or b in rad for a in range(n) for b in range(n) if ring.mul(a, b) in I)
    sets = [set(lat.ideals[j].members) for j in range(lat.m)]
    irreducible = proper and all(I in (J, K) for J in sets for K in sets if J & K == I)
    strongly = proper and all(J <= I or K <= I for J in sets for K in sets if J & K <= I)
    above = [J for J in sets if I < J]
    inter = set(range(n))
    for J in above:
        inter &= J
    completely = proper and inter != I
    return {"prime": prime, "primary": primary, "irreducible": irreducible,
            "strongly_irreducible": strongly, "completely_irreducible": completely,
            "radical": rad == I}


def _power(ring, x, k):
    p = ring.one
    for _ in range(k):
        p = ring.mul(p, x)
    return p


@pytest.mark.parametrize("text", SMALL)
def test_flags_match_definitions(text, analyzed):
    ring, lat, cls = analyzed(text)
    for i in range(lat.m):
        for name, value in _definitional_flags(ring, lat, i).items():
            assert bool(cls.flags[name][i]) == value, (name, lat.label(i))


@pytest.mark.parametrize("text", SMALL + ["Z/36", "GF(5)[x]/(x^3)", "Z/3 x Z/9"])
def test_implication_chain(text, analyzed):
    _, lat, cls = analyzed(text)
    f = cls.flags
    for i in range(lat.m):
        if not f["proper"][i]:
            assert not (f["prime"][i] or f["primary"][i] or f["regular"][i])
            continue
        assert not f["maximal"][i] or f["prime"][i]
        assert not f["prime"][i] or (f["primary"][i] and f["radical"][i])
        assert not f["primary"][i] or f["irreducible"][i]
        assert not f["strongly_irreducible"][i] or f["irreducible"][i]
        assert not f["completely_irreducible"][i] or f["irreducible"][i]
        assert not f["primary"][i] or f["prime"][int(cls.radical[i])]
        assert f["finitely_generated"][i]
        assert not f["regular"][i]
    assert f["nil"].tolist() == f["nilpotent"].tolist()


@pytest.mark.parametrize("text", SMALL + ["Z/36", "Z/3 x Z/9", "GF(3)[x]/(x^3+x)"])
def test_primary_matches_quotient_oracle(text, analyzed):
    ring, lat, cls = analyzed(text)
    for i in range(lat.m):
        assert bool(cls.flags["primary"][i]) == is_primary_via_quotient(ring, lat.ideals[i])


@pytest.mark.parametrize("left, right", [("Z/4", "Z/6"), ("Z/2", "GF(2)[x]/(x^2)"), ("Z/9", "Z/2 x Z/2")])
def test_product_ideals_are_products(left, right, analyzed):
    _, la, _ = analyzed(left)
    _, lb, _ = analyzed(right)
    ring, lat, _ = analyzed(f"{left} x ({right})")
    nb = lb.ring.size
    expect = set()
    for i in range(la.m):
        for j in range(lb.m):
            expect.add(frozenset(a * nb + b for a in la.ideals[i].members for b in lb.ideals[j].members))
    assert {frozenset(lat.ideals[i].members) for i in range(lat.m)} == expect


@pytest.mark.parametrize("text", ["Z/12", "GF(2)", "Z/2 x Z/4", "Z/64", "GF(5)[x]/(x^3+x)"])
def test_krull_dimension_zero(text, analyzed):
    _, lat, cls = analyzed(text)
    assert krull_dimension(lat, cls) == 0


def test_canonical_order_is_size_then_lex(analyzed):
    _, lat, _ = analyzed("Z/2 x Z/4")
    keys = [(len(lat.ideals[i].members), lat.ideals[i].members) for i in range(lat.m)]
    assert keys == sorted(keys)


def test_ideal_cap_names_itself():
    with pytest.raises(ResourceLimitError) as exc:
        enumerate_ideals(build_ring("Z/2 x Z/2 x Z/2"), cap=3)
    assert exc.value.cap_name == "IDEALSPACES_IDEAL_CAP"


def test_ideal_value_semantics():
    r = build_ring("Z/12")
    a, b = principal_ideal(r, 4), principal_ideal(r, 2)
    assert a <= b and a < b and not b <= a
    assert 8 in a and 2 not in a
    assert Ideal.from_mask(r, a.element_mask) == a
    assert np.array_equal(a.element_mask, np.isin(np.arange(12), [0, 4, 8]).astype(np.uint8))
