"""The compiled and pure-Python kernels must return identical results."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealspaces import kernels
from idealspaces.rings import build_ring
from idealspaces.topology import FiniteSpace

py = kernels.backend_module("python")
try:
    cy = kernels.backend_module("cython")
except ImportError:  # pragma: no cover - depends on build
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


@st.composite
def spaces(draw):
    n = draw(st.integers(1, 9))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return FiniteSpace.from_preorder(n, pairs)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_cy
@given(spaces(), st.integers(1, 50))
def test_upsets_and_sober_scan_agree(X, cap):
    cm, req = X._classes()
    assert cy.enumerate_upsets(cm, req, cap) == py.enumerate_upsets(cm, req, cap)
    assert cy.sober_scan(cm, req, X.above, X.below, cap) == py.sober_scan(cm, req, X.above, X.below, cap)


@needs_cy
@given(spaces(), st.data())
def test_lower_directed_mask_agrees(X, data):
    mask = data.draw(st.integers(0, X.full))
    assert cy.is_lower_directed_mask(mask, X.below) == py.is_lower_directed_mask(mask, X.below)


@needs_cy
@pytest.mark.parametrize("text", ["Z/12", "Z/2 x Z/4", "GF(2)[x]/(x^3+x)", "Z/36"])
def test_ring_kernels_agree(text):
    r = build_ring(text)
    assert cy.check_ring_axioms(r.add_table, r.mul_table, r.neg_table, r.zero, r.one) is None
    assert py.check_ring_axioms(r.add_table, r.mul_table, r.neg_table, r.zero, r.one) is None
    bad = r.mul_table.copy()
    bad[1, 1] = r.zero
    assert cy.check_ring_axioms(r.add_table, bad, r.neg_table, r.zero, r.one) == \
        py.check_ring_axioms(r.add_table, bad, r.neg_table, r.zero, r.one)
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = (rng.random(r.size) < 0.3).astype(np.uint8)
        b = (rng.random(r.size) < 0.3).astype(np.uint8)
        a[r.zero] = b[r.zero] = 1
        assert np.array_equal(cy.ideal_sum(r.add_table, a, b), py.ideal_sum(r.add_table, a, b))
        assert np.array_equal(cy.radical_mask(r.mul_table, a), py.radical_mask(r.mul_table, a))
        assert cy.pair_witness(r.mul_table, a, 1 - a, 1 - b) == py.pair_witness(r.mul_table, a, 1 - a, 1 - b)


@needs_cy
def test_lower_directed_scan_agrees():
    from idealspaces.families import build_space
    from idealspaces.ideals import analyze_ring
    lat, cls = analyze_ring(build_ring("Z/8 x Z/4"))
    X = build_space(lat, cls, "idl")
    strict_up = [X.above[i] & ~(1 << i) for i in range(X.k)]
    ids = np.array(X.ids, dtype=np.int32)
    for keep in (np.ones(lat.m, np.uint8), (np.arange(lat.m) % 3 != 1).astype(np.uint8)):
        for size in range(1, 5):
            assert cy.lower_directed_scan(strict_up, ids, lat.meet_table, keep, size) == \
                py.lower_directed_scan(strict_up, ids, lat.meet_table, keep, size)


@needs_cy
def test_coprime_pairs_agree():
    primes = [2, 3, 5, 7, 11]
    c1, m1 = cy.least_coprime_prime_pairs(300, primes)
    c2, m2 = py.least_coprime_prime_pairs(300, primes)
    assert list(c1) == list(c2) and m1 == m2
    c3, m3 = cy.least_coprime_prime_pairs(300, [2, 3])
    assert m3 > 0 and m3 == py.least_coprime_prime_pairs(300, [2, 3])[1]


def test_large_spaces_use_python_path():
    X = FiniteSpace.from_preorder(70, [(i, i + 1) for i in range(69)])
    v = X.is_sober_direct()
    assert v.sober and v.stats["closed_sets"] == 71
