import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealspaces.errors import AxiomViolation, PreconditionError, RingSpecError
from idealspaces.rings import (PolyLit, PolyQuot, Product, Quotient, Zmod, build_ring, is_maximal_mask,
                               literal_from_json, literal_to_json, localize_at_maximal, parse_element,
                               parse_ring_spec, quotient_ring, ring_spec_from_json)

import oracles


@pytest.mark.parametrize("text, size", [
    ("Z/4", 4), ("Z/2 x Z/2", 4), ("GF(2)[x]/(x^2)", 4), ("GF(3)", 3), ("GF(2)[x]/(x^2+x+1)", 4),
    ("Z/4 x Z/3", 12), ("Z/8 / (4)", 4), ("(Z/2 x Z/4) / ((0,2))", 4), ("Z/2 × Z/3 * Z/5", 30),
    ("GF(5)[x]/(x^3 + 4x + 1)", 125),
])
def test_sizes(text, size):
    assert build_ring(text).size == size


def test_zmod4_two_squared_is_zero():
    r = build_ring("Z/4")
    assert r.mul(2, 2) == r.zero


def test_product_idempotents_multiply_to_zero():
    r = build_ring("Z/2 x Z/2")
    assert r.mul(r.element((1, 0)), r.element((0, 1))) == r.zero


def test_poly_x_squares_to_zero():
    r = build_ring("GF(2)[x]/(x^2)")
    x = r.element("x")
    assert x != r.zero and r.mul(x, x) == r.zero


@pytest.mark.parametrize("coeffs", [(1, 1, 1), (1, 0, 1), (0, 1, 1, 1)])
def test_polyquot_matches_division_oracle(coeffs):
    # multiply every pair of residues as plain polynomials and reduce by long division
    p = 2
    r = build_ring(PolyQuot(p, coeffs))
    deg = len(coeffs) - 1

    def reduce(poly):
        poly = list(poly)
        for i in range(len(poly) - 1, deg - 1, -1):
            c = poly[i] % p
            if c:
                for j, f in enumerate(coeffs):
                    poly[i - deg + j] = (poly[i - deg + j] - c * f) % p
        return tuple(c % p for c in poly[:deg]) + (0,) * max(0, deg - len(poly))

    def vec(i):
        return tuple((i // p ** t) % p for t in range(deg))

    for a in range(r.size):
        for b in range(r.size):
            prod = [0] * (2 * deg)
            for i, x in enumerate(vec(a)):
                for j, y in enumerate(vec(b)):
                    prod[i + j] += x * y
            assert vec(r.mul(a, b)) == reduce(prod)


@pytest.mark.parametrize("bad", ["Z/1", "Z/0", "GF(4)", "GF(2)[x]/(2x^2)", "GF(2)[x]/(1)",
                                 "Z/4 x", "Z/", "(Z/4", "Q/3"])
def test_bad_specs_rejected_with_position(bad):
    with pytest.raises(RingSpecError) as exc:
        parse_ring_spec(bad)
    assert exc.value.position is not None and "^" in str(exc.value)


def test_element_outside_ring_rejected_at_build():
    with pytest.raises(RingSpecError, match="not an element"):
        build_ring("Z/4 / (x)")


def test_error_caret_points_at_problem():
    with pytest.raises(RingSpecError) as exc:
        parse_ring_spec("Z/4 x Q")
    assert exc.value.position == 6
    assert str(exc.value).splitlines()[-1].index("^") == 2 + 6


def test_quotient_by_unit_rejected():
    with pytest.raises(RingSpecError):
        build_ring("Z/4 / (1)")


@pytest.mark.parametrize("text", ["Z/12", "GF(3)[x]/(x^2+1)", "Z/2 x GF(2)[x]/(x^2)", "(Z/8 x Z/4)/((2,0))"])
def test_text_and_json_roundtrip(text):
    spec = parse_ring_spec(text)
    assert parse_ring_spec(spec.to_text()) == spec
    assert ring_spec_from_json(spec.to_json()) == spec


@given(st.one_of(st.integers(0, 50), st.tuples(st.integers(0, 9), st.integers(0, 9)),
                 st.lists(st.integers(-3, 3), min_size=2, max_size=4).map(lambda c: PolyLit(tuple(c)))))
def test_literal_json_roundtrip(lit):
    assert literal_from_json(literal_to_json(lit)) == lit


def test_parse_element_forms():
    assert parse_element("3") == 3
    assert parse_element("(1,0)") == (1, 0)
    assert parse_element("x^2 + 1") == PolyLit((1, 0, 1))


def test_build_is_deterministic():
    a, b = build_ring("Z/4 x GF(2)[x]/(x^2)"), build_ring("Z/4 x GF(2)[x]/(x^2)")
    assert np.array_equal(a.add_table, b.add_table) and np.array_equal(a.mul_table, b.mul_table)


@pytest.mark.parametrize("text", ["Z/6", "Z/2 x Z/4", "GF(2)[x]/(x^3+x)", "GF(3)[x]/(x^2)", "Z/9 / (3)"])
def test_axioms_exhaustive(text):
    assert build_ring(text).verify_axioms() == "exhaustive"


def test_axioms_sampled_on_large_ring():
    assert build_ring("Z/16 x Z/27").verify_axioms() == "sampled"


def test_axiom_violation_detected():
    from idealspaces import kernels
    r = build_ring("Z/4")
    mul = r.mul_table.copy()
    mul[2, 3] = mul[3, 2] = 1
    assert kernels.check_ring_axioms(r.add_table, mul, r.neg_table, r.zero, r.one) is not None
    with pytest.raises(AxiomViolation):
        raise AxiomViolation("mul_assoc", (1, 2, 3))


@pytest.mark.parametrize("n, x, unit", [(4, 3, True), (4, 2, False), (6, 5, True), (6, 2, False), (5, 3, True)])
def test_units_zmod(n, x, unit):
    r = build_ring(f"Z/{n}")
    assert r.is_unit(x) == unit
    assert r.is_regular_element(x) == unit


def test_unit_witness():
    r = build_ring("Z/7")
    ok, y = r.is_unit(3, witness=True)
    assert ok and r.mul(3, y) == r.one


@pytest.mark.parametrize("text", ["Z/12", "Z/2 x Z/4", "GF(2)[x]/(x^3)", "GF(3)[x]/(x^2+x)", "(Z/4 x Z/4)/((2,2))"])
def test_unit_iff_regular(text):
    r = build_ring(text)
    for x in range(r.size):
        brute_unit = any(r.mul(x, y) == r.one for y in range(r.size))
        brute_regular = all(r.mul(x, y) != r.zero for y in range(r.size) if y != r.zero)
        assert r.is_unit(x) == brute_unit == r.is_regular_element(x) == brute_regular
    assert r.regular_mask.tolist() == r.unit_mask.tolist()


def test_quotient_examples():
    r = build_ring("Z/4")
    q, proj = quotient_ring(r, np.array([1, 0, 1, 0], dtype=np.uint8))
    assert q.size == 2 and proj.tolist() == [0, 1, 0, 1]
    r6 = build_ring("Z/6")
    zero = np.zeros(6, dtype=np.uint8)
    zero[0] = 1
    q6, proj6 = quotient_ring(r6, zero)
    assert q6.size == 6
    assert all(proj6[r6.mul(a, b)] == q6.mul(proj6[a], proj6[b]) for a in range(6) for b in range(6))
    r22 = build_ring("Z/2 x Z/2")
    m = np.zeros(4, dtype=np.uint8)
    m[[r22.element((0, 0)), r22.element((1, 0))]] = 1
    assert quotient_ring(r22, m)[0].size == 2


def test_quotient_projection_is_homomorphism():
    r = build_ring("Z/3 x Z/9")
    mask = np.zeros(r.size, dtype=np.uint8)
    for a in range(3):
        mask[r.element((0, 3 * a))] = 1
    q, proj = quotient_ring(r, mask)
    assert q.size == r.size // 3
    for a in range(r.size):
        for b in range(0, r.size, 4):
            assert proj[r.add(a, b)] == q.add(proj[a], proj[b])
            assert proj[r.mul(a, b)] == q.mul(proj[a], proj[b])


def test_quotient_by_whole_ring_rejected():
    r = build_ring("Z/4")
    with pytest.raises(PreconditionError):
        quotient_ring(r, np.ones(4, dtype=np.uint8))


def _mask(n, members):
    m = np.zeros(n, dtype=np.uint8)
    m[list(members)] = 1
    return m


def test_localization_examples():
    r12 = build_ring("Z/12")
    q, _ = localize_at_maximal(r12, _mask(12, range(0, 12, 2)))
    assert q.size == 4
    r4 = build_ring("Z/4")
    assert localize_at_maximal(r4, _mask(4, [0, 2]))[0].size == 4
    r22 = build_ring("Z/2 x Z/2")
    m = _mask(4, [r22.element((0, 0)), r22.element((0, 1))])
    assert localize_at_maximal(r22, m)[0].size == 2


def test_localization_rejects_non_maximal():
    r = build_ring("Z/12")
    with pytest.raises(PreconditionError):
        localize_at_maximal(r, _mask(12, range(0, 12, 4)))


def test_is_maximal_mask_matches_oracle():
    for n in range(2, 40):
        r = build_ring(f"Z/{n}")
        for d in oracles.divisors(n):
            assert is_maximal_mask(r, _mask(n, oracles.zmod_ideal(n, d))) == oracles.is_prime(d)


def test_spec_invariants():
    with pytest.raises(RingSpecError):
        Zmod(1)
    with pytest.raises(RingSpecError):
        PolyQuot(4, (0, 1))
    with pytest.raises(RingSpecError):
        Product(())
    assert Quotient(Zmod(8), (4,)).to_text() == "Z/8 / (4)"
