"""Ideals of a finite ring: enumeration, lattice operations, classification.

Ideals are stored as Python-int bitsets over element indices.  The lattice
keeps the canonical ordering ``(cardinality, sorted member list)``, so index
0 is ``(0)`` and the last index is ``R``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import PreconditionError, ResourceLimitError
from .rings import FiniteRing, quotient_ring

IDEAL_CAP = int(os.environ.get("IDEALSPACES_IDEAL_CAP", str(2 ** 16)))

FLAG_NAMES = (
    "prime",
    "maximal",
    "primary",
    "radical",
    "irreducible",
    "strongly_irreducible",
    "completely_irreducible",
    "nilpotent",
    "nil",
    "principal",
    "regular",
    "minimal",
    "minimal_prime",
    "proper",
    "finitely_generated",
)


def mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(np.asarray(mask, dtype=np.uint8), bitorder="little").tobytes(), "little")


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].copy()


def iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class Ideal:
    """An ideal of ``ring`` given by the bitset ``bits`` of its elements."""

    ring: FiniteRing = field(compare=False, hash=False, repr=False)
    bits: int
    ring_key: str = ""

    def __post_init__(self):
        if not self.ring_key:
            object.__setattr__(self, "ring_key", self.ring.key)

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask) -> "Ideal":
        return cls(ring, mask_to_bits(mask))

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    @property
    def element_mask(self) -> np.ndarray:
        return bits_to_mask(self.bits, self.ring.size)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __le__(self, other: "Ideal") -> bool:
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self.bits != other.bits

    def is_ideal(self) -> bool:
        """Definitional check: contains 0, closed under +, absorbs multiplication."""
        r = self.ring
        mem = np.array(self.members, dtype=np.int64)
        mask = self.element_mask
        if not mask[r.zero]:
            return False
        if not mask[r.add_table[np.ix_(mem, mem)]].all():
            return False
        return bool(mask[r.mul_table[:, mem]].all())


def principal_ideal(ring: FiniteRing, x: int) -> Ideal:
    """``Rx = {rx : r in R}``; this is the ideal generated by ``x`` since ``R`` has 1."""
    mask = np.zeros(ring.size, dtype=np.uint8)
    mask[ring.mul_table[x]] = 1
    return Ideal.from_mask(ring, mask)


def ideal_from_generators(ring: FiniteRing, gens) -> Ideal:
    """Sum of the principal ideals of ``gens``."""
    acc = np.zeros(ring.size, dtype=np.uint8)
    acc[ring.zero] = 1
    for g in gens:
        acc = kernels.ideal_sum(ring.add_table, acc, principal_ideal(ring, int(g)).element_mask)
    return Ideal.from_mask(ring, acc)


class IdealLattice:
    """All ideals of a finite ring with containment, sum and intersection tables."""

    def __init__(self, ring: FiniteRing, ideal_bits: list[int]):
        self.ring = ring
        keyed = sorted(ideal_bits, key=lambda b: (b.bit_count(), tuple(iter_bits(b))))
        self.ideals = [Ideal(ring, b) for b in keyed]
        self.bits = keyed
        self.index = {b: i for i, b in enumerate(keyed)}
        m = self.m = len(keyed)
        self.bottom = 0
        self.top = m - 1
        masks = np.array([bits_to_mask(b, ring.size) for b in keyed], dtype=np.int32)
        sizes = masks.sum(axis=1)
        inter = masks @ masks.T
        contained = inter == sizes[:, None]  # contained[i, j]: I_i ⊆ I_j
        weights = [1 << j for j in range(m)]
        self.up = [sum(w for w, c in zip(weights, row) if c) for row in contained]
        self.down = [sum(w for w, c in zip(weights, col) if c) for col in contained.T]
        self.contained = contained
        # Join is the least common upper bound, meet the greatest common lower
        # bound; in the canonical order they are the lowest / highest index.
        join = np.empty((m, m), dtype=np.int32)
        meet = np.empty((m, m), dtype=np.int32)
        for i in range(m):
            ui, di = self.up[i], self.down[i]
            for j in range(i, m):
                u = ui & self.up[j]
                d = di & self.down[j]
                join[i, j] = join[j, i] = (u & -u).bit_length() - 1
                meet[i, j] = meet[j, i] = d.bit_length() - 1
        self.sum_table = join
        self.meet_table = meet
        prin = np.empty(ring.size, dtype=np.int32)
        mul = ring.mul_table
        for x in range(ring.size):
            pm = np.zeros(ring.size, dtype=np.uint8)
            pm[mul[x]] = 1
            prin[x] = self.index[mask_to_bits(pm)]
        self.principal_of = prin

    def __len__(self) -> int:
        return self.m

    def index_of(self, ideal: Ideal | int) -> int:
        bits = ideal.bits if isinstance(ideal, Ideal) else ideal
        try:
            return self.index[bits]
        except KeyError:
            raise PreconditionError("set is not an ideal of this lattice") from None

    def element_mask(self, i: int) -> np.ndarray:
        return bits_to_mask(self.bits[i], self.ring.size)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def join(self, i: int, j: int) -> int:
        return int(self.sum_table[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def meet_all(self, indices) -> int:
        acc = self.top
        for i in indices:
            acc = int(self.meet_table[acc, i])
        return acc

    def join_all(self, indices) -> int:
        acc = self.bottom
        for i in indices:
            acc = int(self.sum_table[acc, i])
        return acc

    def generated_by(self, elements) -> int:
        return self.join_all(int(self.principal_of[x]) for x in elements)

    def generators(self, i: int) -> list[int]:
        """Greedy small generating set of ideal ``i`` (largest gain, least element first)."""
        target = self.bits[i]
        cur = self.bottom
        gens: list[int] = []
        while cur != i:
            best, best_idx = -1, -1
            for x in iter_bits(target & ~self.bits[cur]):
                cand = int(self.sum_table[cur, self.principal_of[x]])
                if best_idx < 0 or self.bits[cand].bit_count() > self.bits[best_idx].bit_count():
                    best, best_idx = x, cand
            gens.append(best)
            cur = best_idx
        return gens

    def label(self, i: int) -> str:
        gens = self.generators(i)
        if not gens:
            return f"({self.ring.label(self.ring.zero)})"
        return "(" + ", ".join(self.ring.label(g) for g in gens) + ")"


def enumerate_ideals(ring: FiniteRing, cap: int | None = None) -> IdealLattice:
    """All ideals, as the closure of the principal ideals under binary sum."""
    cap = IDEAL_CAP if cap is None else cap
    add, mul = ring.add_table, ring.mul_table
    principals: dict[int, np.ndarray] = {}
    for x in range(ring.size):
        pm = np.zeros(ring.size, dtype=np.uint8)
        pm[mul[x]] = 1
        principals.setdefault(mask_to_bits(pm), pm)
    zero = np.zeros(ring.size, dtype=np.uint8)
    zero[ring.zero] = 1
    found = {mask_to_bits(zero): zero}
    queue = [mask_to_bits(zero)]
    while queue:
        ib = queue.pop()
        im = found[ib]
        for pb, pm in principals.items():
            if pb & ib == pb:
                continue
            jm = kernels.ideal_sum(add, im, pm)
            jb = mask_to_bits(jm)
            if jb not in found:
                found[jb] = jm
                queue.append(jb)
                if len(found) > cap:
                    raise ResourceLimitError("IDEALSPACES_IDEAL_CAP", cap,
                                             f"ring {ring.key} has more ideals")
    return IdealLattice(ring, list(found))


def radical_of(lat: IdealLattice, i: int) -> int:
    """Index of ``{x : x**k in I for some k >= 1}``."""
    rad = kernels.radical_mask(lat.ring.mul_table, lat.element_mask(i))
    return lat.index_of(mask_to_bits(rad))


def ideal_product(lat: IdealLattice, i: int, j: int) -> int:
    """Index of the ideal generated by all products ``xy``, ``x`` in ``I``, ``y`` in ``J``."""
    a = np.array(lat.ideals[i].members, dtype=np.int64)
    b = np.array(lat.ideals[j].members, dtype=np.int64)
    prods = np.unique(lat.ring.mul_table[np.ix_(a, b)])
    return lat.generated_by(prods)


@dataclass
class IdealClassification:
    """Boolean flags per ideal index, with witnesses for some negative verdicts."""

    lattice: IdealLattice
    flags: dict[str, np.ndarray]
    radical: np.ndarray
    witnesses: dict[tuple[str, int], tuple] = field(default_factory=dict)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.flags[name]

    def indices(self, name: str) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.flags[name])]

    def row(self, i: int) -> dict[str, bool]:
        return {name: bool(self.flags[name][i]) for name in FLAG_NAMES}


def classify(lat: IdealLattice) -> IdealClassification:
    """Compute every flag from its definition (see ``FLAG_NAMES``)."""
    ring = lat.ring
    m, top, bottom = lat.m, lat.top, lat.bottom
    mul = ring.mul_table
    flags = {name: np.zeros(m, dtype=bool) for name in FLAG_NAMES}
    witnesses: dict[tuple[str, int], tuple] = {}
    radical = np.array([radical_of(lat, i) for i in range(m)], dtype=np.int32)
    principal_set = set(int(v) for v in np.unique(lat.principal_of))
    nilpotent_elems = ring.nilpotent_mask
    regular_elems = ring.regular_mask
    meet = lat.meet_table

    for i in range(m):
        bits = lat.bits[i]
        mask = lat.element_mask(i)
        proper = i != top
        flags["proper"][i] = proper
        strict_up = [j for j in iter_bits(lat.up[i]) if j != i]
        strict_down = [j for j in iter_bits(lat.down[i]) if j != i]

        if proper:
            outside = (1 - mask).astype(np.uint8)
            w = kernels.pair_witness(mul, mask, outside, outside)
            flags["prime"][i] = w is None
            if w is not None:
                witnesses[("prime", i)] = w
            rad_out = (1 - lat.element_mask(int(radical[i]))).astype(np.uint8)
            w = kernels.pair_witness(mul, mask, outside, rad_out)
            flags["primary"][i] = w is None
            if w is not None:
                witnesses[("primary", i)] = w
            flags["maximal"][i] = strict_up == [top]

            su = np.array(strict_up, dtype=np.int64)
            hits = np.argwhere(meet[np.ix_(su, su)] == i)
            flags["irreducible"][i] = len(hits) == 0
            if len(hits):
                witnesses[("irreducible", i)] = (int(su[hits[0][0]]), int(su[hits[0][1]]))

            below_i = np.zeros(m, dtype=bool)
            below_i[list(iter_bits(lat.down[i]))] = True
            nb = np.flatnonzero(~below_i)
            hits = np.argwhere(below_i[meet[np.ix_(nb, nb)]])
            flags["strongly_irreducible"][i] = len(hits) == 0
            if len(hits):
                witnesses[("strongly_irreducible", i)] = (int(nb[hits[0][0]]), int(nb[hits[0][1]]))

            acc = -1
            for j in strict_up:
                acc &= lat.bits[j]
            flags["completely_irreducible"][i] = acc != bits

            flags["regular"][i] = bool((mask & regular_elems).any())

        flags["radical"][i] = radical[i] == i

        power, k = i, 1
        while power != bottom and k < max(bits.bit_count(), 1):
            power = ideal_product(lat, power, i)
            k += 1
        flags["nilpotent"][i] = power == bottom

        flags["nil"][i] = not bool((mask & (1 - nilpotent_elems)).any())
        flags["principal"][i] = i in principal_set
        flags["minimal"][i] = i != bottom and strict_down == [bottom]
        flags["finitely_generated"][i] = lat.generated_by(iter_bits(bits)) == i

    for i in range(m):
        if flags["prime"][i]:
            flags["minimal_prime"][i] = not any(
                flags["prime"][j] for j in iter_bits(lat.down[i]) if j != i)
    return IdealClassification(lat, flags, radical, witnesses)


def krull_dimension(lat: IdealLattice, cls: IdealClassification) -> int:
    """Number of edges in the longest chain of primes."""
    primes = cls.indices("prime")
    length = {}
    for j in primes:  # canonical order lists smaller ideals first
        length[j] = max((length[i] + 1 for i in primes if i in length and i != j and lat.leq(i, j)),
                        default=0)
    return max(length.values(), default=0)


def is_primary_via_quotient(ring: FiniteRing, ideal: Ideal) -> bool:
    """Oracle: ``I`` is primary iff ``R/I`` is nonzero and its zero-divisors are nilpotent."""
    if ideal.size == ring.size:
        return False
    q, _ = quotient_ring(ring, ideal.element_mask)
    zero_divisors = q.regular_mask == 0
    return bool((q.nilpotent_mask[zero_divisors] == 1).all())


def analyze_ring(ring: FiniteRing, cap: int | None = None) -> tuple[IdealLattice, IdealClassification]:
    lat = enumerate_ideals(ring, cap)
    return lat, classify(lat)
