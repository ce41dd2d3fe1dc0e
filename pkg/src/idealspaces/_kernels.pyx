# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``.

Signatures and results match ``_pykernels`` exactly.  Point-bitset kernels
work on spaces of at most 64 points; the dispatcher routes larger spaces to
the Python versions.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

cnp.import_array()

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

MAX_POINTS = 64


def check_ring_axioms(int32_t[:, ::1] add, int32_t[:, ::1] mul, int32_t[::1] neg,
                      int zero, int one):
    cdef Py_ssize_t n = add.shape[0]
    cdef Py_ssize_t a, b, c
    for a in range(n):
        if add[a, zero] != a:
            return ("add_identity", a)
    for a in range(n):
        if add[a, neg[a]] != zero:
            return ("add_inverse", a)
    for a in range(n):
        if mul[a, one] != a:
            return ("mul_identity", a)
    for a in range(n):
        for b in range(n):
            if add[a, b] != add[b, a]:
                return ("add_comm", a, b)
    for a in range(n):
        for b in range(n):
            if mul[a, b] != mul[b, a]:
                return ("mul_comm", a, b)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if add[add[a, b], c] != add[a, add[b, c]]:
                    return ("add_assoc", a, b, c)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    return ("mul_assoc", a, b, c)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]:
                    return ("distributivity", a, b, c)
    return None


def ideal_sum(int32_t[:, ::1] add, const uint8_t[::1] a, const uint8_t[::1] b):
    cdef Py_ssize_t n = add.shape[0]
    cdef Py_ssize_t x, y, na = 0
    out_arr = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    cdef int32_t[::1] a_idx = np.empty(n, dtype=np.int32)
    for x in range(n):
        if a[x]:
            out[x] = 1
            a_idx[na] = <int32_t>x
            na += 1
    for y in range(n):
        if b[y] and not out[y]:
            for x in range(na):
                out[add[a_idx[x], y]] = 1
    return out_arr


def radical_mask(int32_t[:, ::1] mul, const uint8_t[::1] mask):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, k
    cdef int32_t p
    out_arr = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    for x in range(n):
        p = <int32_t>x
        for k in range(n):
            if mask[p]:
                out[x] = 1
                break
            p = mul[p, x]
    return out_arr


def pair_witness(int32_t[:, ::1] mul, const uint8_t[::1] in_ideal,
                 const uint8_t[::1] allow_a, const uint8_t[::1] allow_b):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t a, b
    for a in range(n):
        if not allow_a[a]:
            continue
        for b in range(n):
            if allow_b[b] and in_ideal[mul[a, b]]:
                return (a, b)
    return None


cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef class _UpsetWalker:
    cdef uint64_t[::1] cls
    cdef uint64_t[::1] req
    cdef Py_ssize_t k
    cdef Py_ssize_t cap
    cdef list out
    cdef bint overflow

    def __init__(self, class_masks, required, Py_ssize_t cap):
        self.k = len(class_masks)
        self.cls = np.array(class_masks, dtype=np.uint64).reshape(-1)
        self.req = np.array(required, dtype=np.uint64).reshape(-1)
        self.cap = cap
        self.out = []
        self.overflow = False

    cdef void walk(self, Py_ssize_t i, uint64_t cur):
        if self.overflow:
            return
        if i == self.k:
            self.out.append(cur)
            if len(self.out) > self.cap:
                self.overflow = True
            return
        self.walk(i + 1, cur)
        if self.req[i] & ~cur == 0:
            self.walk(i + 1, cur | self.cls[i])


def enumerate_upsets(class_masks, required, Py_ssize_t cap):
    if len(class_masks) == 0:
        return [0]
    w = _UpsetWalker(class_masks, required, cap)
    w.walk(0, 0)
    if w.overflow:
        return None
    return [int(v) for v in w.out]


cdef inline bint _directed(uint64_t c, uint64_t[::1] below):
    cdef uint64_t rest = c, rest2, bx
    cdef int x, y
    while rest:
        x = __builtin_ctzll(rest)
        rest &= rest - 1
        bx = below[x] & c
        rest2 = rest
        while rest2:
            y = __builtin_ctzll(rest2)
            rest2 &= rest2 - 1
            if bx & below[y] == 0:
                return False
    return True


def sober_scan(class_masks, required, above, below, Py_ssize_t cap):
    closed = enumerate_upsets(class_masks, required, cap)
    if closed is None:
        return None
    cdef uint64_t[::1] ab = np.array(above, dtype=np.uint64).reshape(-1)
    cdef uint64_t[::1] bl = np.array(below, dtype=np.uint64).reshape(-1)
    cdef uint64_t[::1] cs = np.array(closed, dtype=np.uint64).reshape(-1)
    cdef Py_ssize_t i, n_irr = 0
    cdef uint64_t c, rest
    cdef int z, generic
    bad = None
    for i in range(cs.shape[0]):
        c = cs[i]
        if c == 0 or not _directed(c, bl):
            continue
        n_irr += 1
        if bad is not None:
            continue
        generic = 0
        rest = c
        while rest:
            z = __builtin_ctzll(rest)
            rest &= rest - 1
            if ab[z] == c:
                generic += 1
        if generic != 1:
            bad = int(c)
    return len(closed), n_irr, bad


def is_lower_directed_mask(mask, below):
    cdef uint64_t c = mask
    cdef uint64_t[::1] bl = np.array(below, dtype=np.uint64).reshape(-1)
    cdef uint64_t rest = c, rest2, bx
    cdef int x, y
    while rest:
        x = __builtin_ctzll(rest)
        rest &= rest - 1
        bx = bl[x] & c
        rest2 = rest
        while rest2:
            y = __builtin_ctzll(rest2)
            rest2 &= rest2 - 1
            if bx & bl[y] == 0:
                return (x, y)
    return None


def lower_directed_scan(strict_up, ideal_of_arr, int32_t[:, ::1] meet,
                        const uint8_t[::1] in_space, int max_size):
    cdef Py_ssize_t k = len(strict_up)
    cdef int32_t[::1] ideal_of = np.ascontiguousarray(ideal_of_arr, dtype=np.int32)
    cdef int32_t[::1] ups = np.empty(max(k, 1), dtype=np.int32)
    cdef Py_ssize_t w, nu, i, j, l
    cdef int64_t count = 0
    cdef int32_t inf0, inf1, inf2, inf3
    cdef uint64_t rest
    for w in range(k):
        rest = strict_up[w]
        nu = 0
        while rest:
            ups[nu] = __builtin_ctzll(rest)
            rest &= rest - 1
            nu += 1
        inf0 = ideal_of[w]
        count += 1
        if not in_space[inf0]:
            return count, (w,)
        if max_size < 2:
            continue
        for i in range(nu):
            inf1 = meet[inf0, ideal_of[ups[i]]]
            count += 1
            if not in_space[inf1]:
                return count, (w, ups[i])
        if max_size < 3:
            continue
        for i in range(nu):
            inf1 = meet[inf0, ideal_of[ups[i]]]
            for j in range(i + 1, nu):
                inf2 = meet[inf1, ideal_of[ups[j]]]
                count += 1
                if not in_space[inf2]:
                    return count, (w, ups[i], ups[j])
        if max_size < 4:
            continue
        for i in range(nu):
            inf1 = meet[inf0, ideal_of[ups[i]]]
            for j in range(i + 1, nu):
                inf2 = meet[inf1, ideal_of[ups[j]]]
                for l in range(j + 1, nu):
                    inf3 = meet[inf2, ideal_of[ups[l]]]
                    count += 1
                    if not in_space[inf3]:
                        return count, (w, ups[i], ups[j], ups[l])
    return count, None


def least_coprime_prime_pairs(int64_t bound, primes):
    cdef int64_t[::1] ps = np.ascontiguousarray(primes, dtype=np.int64)
    cdef Py_ssize_t np_ = ps.shape[0]
    counts_arr = np.zeros(np_, dtype=np.int64)
    cdef int64_t[::1] counts = counts_arr
    cdef int64_t n, m, missing = 0
    cdef Py_ssize_t j
    cdef bint found
    for n in range(2, bound + 1):
        for m in range(n, bound + 1):
            found = False
            for j in range(np_):
                if n % ps[j] != 0 and m % ps[j] != 0:
                    counts[j] += 1
                    found = True
                    break
            if not found:
                missing += 1
    return counts_arr, missing
