"""Pure-Python/numpy implementations of the hot loops.

Every function here has a twin with the same signature in ``_kernels.pyx``.
The two must return identical results; ``kernels`` picks one at import.
Masks over ring elements are ``uint8`` arrays; masks over space points are
Python ints used as bitsets.
"""

from __future__ import annotations

import numpy as np

AXIOM_LAWS = (
    "add_identity",
    "add_inverse",
    "mul_identity",
    "add_comm",
    "mul_comm",
    "add_assoc",
    "mul_assoc",
    "distributivity",
)


def _first_true(flags: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(flags)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def check_ring_axioms(add, mul, neg, zero: int, one: int):
    """Exhaustively check the commutative-ring axioms on all element triples.

    Returns ``(law, a[, b[, c]])`` for the first violation, laws scanned in
    ``AXIOM_LAWS`` order and witnesses in lexicographic order, else ``None``.
    """
    n = add.shape[0]
    idx = np.arange(n)
    unary = (
        ("add_identity", add[idx, zero] != idx),
        ("add_inverse", add[idx, neg] != zero),
        ("mul_identity", mul[idx, one] != idx),
    )
    for law, bad in unary:
        hit = _first_true(bad)
        if hit is not None:
            return (law,) + hit
    for law, table in (("add_comm", add), ("mul_comm", mul)):
        hit = _first_true(table != table.T)
        if hit is not None:
            return (law,) + hit
    # Triples are scanned one leading element at a time to bound memory.
    for law in ("add_assoc", "mul_assoc", "distributivity"):
        for a in range(n):
            if law == "add_assoc":
                lhs = add[add[a]][:, :]           # (a+b)+c indexed [b, c]
                rhs = add[a][add]                 # a+(b+c)
            elif law == "mul_assoc":
                lhs = mul[mul[a]][:, :]
                rhs = mul[a][mul]
            else:
                lhs = mul[a][add]                 # a(b+c)
                rhs = add[mul[a][:, None], mul[a][None, :]]
            hit = _first_true(lhs != rhs)
            if hit is not None:
                return (law, a) + hit
    return None


def ideal_sum(add, a, b):
    """Additive closure of two ideals given as element masks.

    The result is a union of cosets of ``a``; a coset is skipped once its
    representative is already covered.
    """
    out = a.astype(np.uint8).copy()
    a_idx = np.flatnonzero(a)
    for y in np.flatnonzero(b):
        if not out[y]:
            out[add[a_idx, y]] = 1
    return out


def radical_mask(mul, mask):
    """Elements some positive power of which lies in ``mask``."""
    n = mul.shape[0]
    idx = np.arange(n)
    cur = idx.copy()
    hit = mask[cur].astype(bool)
    # The orbit {x^k : k >= 1} has at most n distinct elements.
    for _ in range(n - 1):
        cur = mul[cur, idx]
        hit |= mask[cur].astype(bool)
        if hit.all():
            break
    return hit.astype(np.uint8)


def pair_witness(mul, in_ideal, allow_a, allow_b):
    """First ``(a, b)`` with ``allow_a[a]``, ``allow_b[b]`` and ``ab`` in the ideal."""
    a_idx = np.flatnonzero(allow_a)
    b_idx = np.flatnonzero(allow_b)
    if len(a_idx) == 0 or len(b_idx) == 0:
        return None
    bad = in_ideal[mul[np.ix_(a_idx, b_idx)]].astype(bool)
    hit = _first_true(bad)
    if hit is None:
        return None
    return int(a_idx[hit[0]]), int(b_idx[hit[1]])


def enumerate_upsets(class_masks, required, cap: int):
    """All up-sets of a finite preorder, depth-first, exclude-branch first.

    ``class_masks[i]`` is the i-th equivalence class (as a point bitset) and
    ``required[i]`` the points strictly above it; classes are ordered so that
    every class comes after all classes strictly above it.  Returns the list
    of up-sets, or ``None`` once more than ``cap`` have been produced.
    """
    out: list[int] = []
    k = len(class_masks)
    stack = [(0, 0)]
    while stack:
        i, cur = stack.pop()
        if i == k:
            out.append(cur)
            if len(out) > cap:
                return None
            continue
        if required[i] & ~cur == 0:
            stack.append((i + 1, cur | class_masks[i]))
        stack.append((i + 1, cur))
    return out


def is_lower_directed_mask(mask: int, below) -> tuple[int, int] | None:
    """First pair of points in ``mask`` without a common lower bound inside it."""
    pts = _bits(mask)
    for ii, x in enumerate(pts):
        bx = below[x] & mask
        for y in pts[ii + 1:]:
            if bx & below[y] == 0:
                return x, y
    return None


def sober_scan(class_masks, required, above, below, cap: int):
    """Enumerate closed sets (up-sets) and test each irreducible one.

    Returns ``(n_closed, n_irreducible, bad)`` where ``bad`` is the first
    irreducible closed set, in enumeration order, that lacks a unique generic
    point; ``None`` as the whole result signals that ``cap`` was exceeded.
    """
    closed = enumerate_upsets(class_masks, required, cap)
    if closed is None:
        return None
    n_irr = 0
    bad = None
    for c in closed:
        if c == 0 or is_lower_directed_mask(c, below) is not None:
            continue
        n_irr += 1
        generic = sum(1 for z in _bits(c) if above[z] == c)
        if generic != 1 and bad is None:
            bad = c
    return len(closed), n_irr, bad


def lower_directed_scan(strict_up, ideal_of, meet, in_space, max_size: int):
    """Check ``inf z`` lies in the space for every lower-directed ``z``, ``|z| <= max_size``.

    A finite lower-directed subset of a poset has a least element, so the
    sets are generated as ``{w} | S`` with ``S`` drawn from the points strictly
    above ``w``; this lists each such set exactly once.  Returns
    ``(count, first_failure)`` with the failure as a tuple of local points.
    """
    from itertools import combinations

    count = 0
    for w in range(len(ideal_of)):
        ups = _bits(strict_up[w])
        for size in range(0, max_size):
            for combo in combinations(ups, size):
                count += 1
                inf = int(ideal_of[w])
                for p in combo:
                    inf = int(meet[inf, ideal_of[p]])
                if not in_space[inf]:
                    return count, (w,) + combo
    return count, None


def least_coprime_prime_pairs(bound: int, primes):
    """For all ``2 <= n <= m <= bound`` find the least listed prime dividing neither.

    Returns ``(counts, missing)``: per-prime witness counts and the number of
    pairs for which no listed prime worked.
    """
    primes = np.asarray(primes, dtype=np.int64)
    counts = np.zeros(len(primes), dtype=np.int64)
    missing = 0
    ms = np.arange(2, bound + 1, dtype=np.int64)
    for n in range(2, bound + 1):
        m = ms[n - 2:]
        found = np.full(len(m), -1, dtype=np.int64)
        for j, p in enumerate(primes):
            if n % p == 0:
                continue
            fresh = (found < 0) & (m % p != 0)
            found[fresh] = j
        missing += int(np.count_nonzero(found < 0))
        counts += np.bincount(found[found >= 0], minlength=len(primes))
    return counts, missing


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
