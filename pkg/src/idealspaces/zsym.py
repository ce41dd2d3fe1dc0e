"""Exact model of the ideals of the integers, ``nZ`` stored as ``n >= 0``.

Containment is reversed divisibility, sum is gcd, intersection is lcm.
Statements about infinitely many ideals are certified by explicit witnesses,
never by truncating an infinite intersection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import PreconditionError, ResourceLimitError

FACTOR_LIMIT = 10 ** 12  # trial division by d <= 10**6
Z_BOUND_CAP = 10 ** 6


@dataclass(frozen=True)
class ZIdeal:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise PreconditionError(f"ZIdeal needs a nonnegative integer, got {self.n!r}")

    def __le__(self, other: "ZIdeal") -> bool:
        """``self ⊆ other``."""
        if self.n == 0:
            return True
        if other.n == 0:
            return False
        return self.n % other.n == 0

    def __add__(self, other: "ZIdeal") -> "ZIdeal":
        return ZIdeal(math.gcd(self.n, other.n))

    def __and__(self, other: "ZIdeal") -> "ZIdeal":
        return ZIdeal(0 if 0 in (self.n, other.n) else math.lcm(self.n, other.n))

    def __mul__(self, other: "ZIdeal") -> "ZIdeal":
        return ZIdeal(self.n * other.n)

    def radical(self) -> "ZIdeal":
        if self.n == 0:
            return self
        return ZIdeal(math.prod(factorize(self.n)))

    def __str__(self) -> str:
        return "(0)" if self.n == 0 else ("Z" if self.n == 1 else f"{self.n}Z")


@lru_cache(maxsize=65536)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``1 <= n <= 10**12`` by trial division."""
    if n < 1:
        raise PreconditionError("factorize needs n >= 1")
    if n > FACTOR_LIMIT:
        raise ResourceLimitError("FACTOR_LIMIT", FACTOR_LIMIT, f"cannot factor {n} by trial division")
    return dict(_factorize(int(n)))


def is_prime_z(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def z_classify(i: ZIdeal | int) -> dict[str, bool]:
    n = i.n if isinstance(i, ZIdeal) else int(i)
    if n == 0:
        return {"prime": True, "maximal": False, "primary": True,
                "regular_proper": False, "radical": True}
    fac = factorize(n)
    return {
        "prime": n >= 2 and len(fac) == 1 and max(fac.values()) == 1,
        "maximal": n >= 2 and len(fac) == 1 and max(fac.values()) == 1,
        "primary": n >= 2 and len(fac) == 1,
        "regular_proper": n >= 2,
        "radical": all(e == 1 for e in fac.values()),
    }


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in sorted(factorize(n).items()):
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def z_upset(i: ZIdeal | int) -> list[ZIdeal]:
    """Ideals containing ``nZ``: the ``mZ`` with ``m | n``."""
    n = i.n if isinstance(i, ZIdeal) else int(i)
    if n == 0:
        raise PreconditionError("the up-set of (0) is all of Idl(Z), which is infinite")
    return [ZIdeal(d) for d in divisors(n)]


def primes_upto(limit: int) -> list[int]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def least_prime_not_dividing(k: int) -> int:
    p = 2
    while k % p == 0:
        p += 1
        while not is_prime_z(p):
            p += 1
    return p


def reg_z_irreducibility_witness(n: int, m: int) -> int:
    """Least prime dividing neither ``n`` nor ``m``: ``pZ`` is a regular proper
    ideal outside both ``{nZ}^↑`` and ``{mZ}^↑``."""
    if n < 2 or m < 2:
        raise PreconditionError("witnesses are defined for n, m >= 2")
    return least_prime_not_dividing(n * m)


def _witness_primes(bound: int) -> list[int]:
    # n*m <= bound**2 has fewer distinct prime factors than the number of
    # primes whose product exceeds bound**2, so one of these always works.
    ps, prod = [], 1
    for p in primes_upto(200):
        ps.append(p)
        prod *= p
        if prod > bound * bound:
            break
    ps.append(next(p for p in primes_upto(400) if p > ps[-1]))
    return ps


def _signature_counts(bound: int, primes: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Independent numpy replay: per-n divisibility signature, then for each pair
    the lowest prime absent from both signatures."""
    ns = np.arange(bound + 1, dtype=np.int64)
    sig = np.zeros(bound + 1, dtype=np.uint64)
    for j, p in enumerate(primes):
        sig |= ((ns % p) == 0).astype(np.uint64) << np.uint64(j)
    counts = np.zeros(len(primes) + 1, dtype=np.int64)
    for n in range(2, bound + 1):
        both = sig[n] | sig[n:]
        free = ~both & (both + np.uint64(1))  # lowest zero bit
        idx = np.log2(free.astype(np.float64)).astype(np.int64)
        counts += np.bincount(idx, minlength=len(primes) + 1)[: len(primes) + 1]
    return sig, counts


def reg_z_not_sober_certificate(bound: int) -> dict:
    """Certificate that Reg(Z) is irreducible but not sober, checked up to ``bound``.

    * irreducibility: for all ``2 <= n <= m <= bound`` the least prime not
      dividing ``n*m``; stored as the per-``n`` divisibility signature over
      ``primes`` (the witness for ``(n, m)`` is the first prime missing from
      both signatures) plus per-prime counts from two independent scans;
    * the members of Reg(Z) intersect to ``(0)``: every candidate ``kZ`` with
      ``2 <= k <= bound`` is refuted by a prime ``p`` with ``kZ`` not inside ``pZ``;
      the least prime not dividing ``k`` exists for every ``k >= 1``;
    * so the Reg-radical of ``(0)`` is ``(0)``, not in Reg(Z), while the trace
      Reg(Z) ∩ {(0)}^↑ = Reg(Z) is irreducible.
    """
    if bound < 2:
        raise PreconditionError("bound must be at least 2")
    if bound > Z_BOUND_CAP:
        raise ResourceLimitError("Z_BOUND_CAP", Z_BOUND_CAP, f"bound {bound}")
    primes = _witness_primes(bound)
    counts, missing = kernels.least_coprime_prime_pairs(bound, primes)
    sig, sig_counts = _signature_counts(bound, primes)
    counts = [int(c) for c in counts]
    pairs = (bound - 1) * bound // 2
    refutations = [[k, least_prime_not_dividing(k)] for k in range(2, bound + 1)]
    irreducible = int(missing) == 0 and sum(counts) == pairs
    zero_in_reg = z_classify(0)["regular_proper"]
    return {
        "kind": "reg_z_not_sober",
        "bound": bound,
        "primes": primes,
        "signatures": [int(s) for s in sig[2:]],
        "pair_count": pairs,
        "witness_counts": {str(p): c for p, c in zip(primes, counts) if c},
        "pairs_without_witness": int(missing),
        "signature_scan_agrees": counts == [int(c) for c in sig_counts[: len(primes)]]
        and int(sig_counts[len(primes)]) == 0,
        "intersection_refutations": refutations,
        "excluded_candidates": {"1": "Z is not proper"},
        "x_radical_of_zero": 0,
        "zero_in_reg": zero_in_reg,
        "irreducible": irreducible,
        "sober": not (irreducible and not zero_in_reg),
    }


def validate_reg_certificate(cert: dict) -> list[str]:
    """Replay a certificate from its contents alone; returns the problems found."""
    problems = []
    bound, primes, sigs = cert["bound"], cert["primes"], cert["signatures"]
    if not all(is_prime_z(p) for p in primes):
        problems.append("non-prime in witness list")
    if len(sigs) != bound - 1:
        problems.append("signature table has wrong length")
    for n, s in zip(range(2, bound + 1), sigs):
        if s != sum(1 << j for j, p in enumerate(primes) if n % p == 0):
            problems.append(f"signature of {n} is wrong")
            break
    arr = np.array(sigs, dtype=np.uint64)
    total, full = 0, np.uint64((1 << len(primes)) - 1)
    for i in range(len(arr)):
        both = arr[i] | arr[i:]
        if np.any(both == full):
            problems.append(f"pair with n={i + 2} has no witness prime")
            break
        total += len(both)
    if total != cert["pair_count"] or sum(cert["witness_counts"].values()) != total:
        problems.append("pair count mismatch")
    if not cert["signature_scan_agrees"]:
        problems.append("independent scans disagree")
    ks = [k for k, _ in cert["intersection_refutations"]]
    if ks != list(range(2, bound + 1)):
        problems.append("refutation list incomplete")
    for k, p in cert["intersection_refutations"]:
        if not is_prime_z(p) or k % p == 0:
            problems.append(f"bad refutation {k} -> {p}")
            break
    if cert["zero_in_reg"] or cert["x_radical_of_zero"] != 0 or cert["sober"]:
        problems.append("conclusion inconsistent")
    return problems


def _lower_directed_divisibility(trace: list[int]) -> tuple[int, int] | None:
    """First pair of ``trace`` (ideals ``dZ``) without a common sub-ideal in it."""
    for a in range(len(trace)):
        for b in range(a + 1, len(trace)):
            x, y = trace[a], trace[b]
            if not any(z % x == 0 and z % y == 0 for z in trace):
                return x, y
    return None


def prm_z_trace(n: int) -> list[int]:
    """Prm(Z) ∩ {nZ}^↑ for ``n >= 1``, as sorted generators."""
    return [d.n for d in z_upset(n) if z_classify(d)["primary"]]


def prm_z_sober_bounded(bound: int) -> dict:
    """Soberness criterion for Prm(Z) over all ideals ``nZ`` with ``0 <= n <= bound``."""
    if bound < 2:
        raise PreconditionError("bound must be at least 2")
    if bound > Z_BOUND_CAP:
        raise ResourceLimitError("Z_BOUND_CAP", Z_BOUND_CAP, f"bound {bound}")
    n_empty = n_irr = n_red = 0
    failures = []
    for n in range(1, bound + 1):
        trace = prm_z_trace(n)
        if not trace:
            n_empty += 1
            continue
        if _lower_directed_divisibility(trace) is not None:
            n_red += 1
            continue
        n_irr += 1
        rad = ZIdeal(trace[0])
        for t in trace[1:]:
            rad = rad & ZIdeal(t)
        if not z_classify(rad)["primary"]:
            failures.append({"n": n, "trace": trace, "x_radical": rad.n})
    # n = 0: the trace is Prm(Z) itself. (0) is primary and lies below every
    # member, so every pair has a lower bound and the trace is irreducible;
    # the intersection of all primary ideals is (0), refuted candidate-wise.
    zero_case = {
        "common_lower_bound": 0,
        "zero_primary": z_classify(0)["primary"],
        "open_pair_witnesses": [[n, m, reg_z_irreducibility_witness(n, m)]
                                for n in range(2, min(bound, 12) + 1)
                                for m in range(n, min(bound, 12) + 1)],
        "x_radical": 0,
    }
    return {
        "kind": "prm_z_sober_bounded",
        "bound": bound,
        "empty_traces": n_empty,
        "irreducible_traces": n_irr,
        "reducible_traces": n_red,
        "failures": failures,
        "zero_case": zero_case,
        "sober": not failures and zero_case["zero_primary"],
    }
