"""Finite spaces in the coarse lower topology.

On a finite (pre)ordered set the subbasic closed sets ``{x}^↑`` generate
exactly the up-sets: every up-set is the finite union of the principal
up-sets of its points, and ``{a}^↑ ∩ {b}^↑`` is again subbasic in an ideal
lattice (it is ``{a+b}^↑``).  Closed sets are therefore realized directly as
up-sets; ``FiniteSpace.closed_sets_from_subbasis`` rebuilds them from the
subbasis for cross-checking on small spaces.

A point ``i`` of a :class:`FiniteSpace` carries ``above[i]``, the bitset of its
closure ``cl{i}``.  Sets of points are exchanged as sorted tuples of point ids;
for an :class:`IdealSpace` the point ids are ideal indices of the lattice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .errors import PreconditionError, ResourceLimitError
from .ideals import IdealLattice, iter_bits

CLOSED_CAP = int(os.environ.get("IDEALSPACES_CLOSED_CAP", str(2 ** 20)))
CHAIN_CAP = int(os.environ.get("IDEALSPACES_CHAIN_CAP", str(10 ** 5)))


@dataclass(frozen=True)
class ClosedSet:
    space: str
    members: tuple[int, ...]


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    pair: tuple[int, int] | None = None           # two points with no common lower bound
    cover: tuple[tuple[int, ...], tuple[int, ...]] | None = None  # separating closed sets

    def __bool__(self) -> bool:
        return self.irreducible


@dataclass
class SobernessVerdict:
    sober: bool
    method: str
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.sober


@dataclass
class QuasiCompactnessReport:
    qc: bool
    everyone_below_max: bool
    max_qc: bool
    chain_bounds_ok: bool
    max_elements: tuple[int, ...]
    below_max_witness: dict[int, int]
    n_maximal_chains: int

    @property
    def equivalence_holds(self) -> bool:
        return self.qc == (self.everyone_below_max and self.max_qc)


@dataclass
class SpectralCertificate:
    spectral: bool
    t0: bool
    quasi_compact: bool
    sober: bool
    qc_open_basis_closed_under_intersection: bool
    sober_verdict: SobernessVerdict

    def __bool__(self) -> bool:
        return self.spectral


class FiniteSpace:
    """A finite topological space given by the closures of its points."""

    def __init__(self, above: list[int], ids: list[int] | None = None,
                 label: str = "", names: list[str] | None = None):
        self.k = len(above)
        self.above = list(above)
        self.ids = list(range(self.k)) if ids is None else list(ids)
        self._pos = {p: i for i, p in enumerate(self.ids)}
        self.label = label
        self.names = names
        below = [0] * self.k
        for i, a in enumerate(self.above):
            for j in iter_bits(a):
                below[j] |= 1 << i
        self.below = below
        self.full = (1 << self.k) - 1

    # construction -------------------------------------------------------------

    @classmethod
    def from_preorder(cls, n: int, leq_pairs, label: str = "", names=None) -> "FiniteSpace":
        """Space whose closed sets are the up-sets of the preorder generated by ``leq_pairs``."""
        above = [1 << i for i in range(n)]
        for a, b in leq_pairs:
            above[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = above[i]
                for j in iter_bits(above[i]):
                    acc |= above[j]
                if acc != above[i]:
                    above[i] = acc
                    changed = True
        return cls(above, label=label, names=names)

    @classmethod
    def from_closed_subbasis(cls, n: int, subbasis, label: str = "", names=None) -> "FiniteSpace":
        """Space generated by a family of closed sets (finite unions, arbitrary intersections)."""
        sets = [sum(1 << p for p in s) for s in subbasis]
        full = (1 << n) - 1
        above = []
        for i in range(n):
            acc = full
            # cl{i} is the intersection of the finite unions containing i; the
            # subbasic sets containing i already give that intersection.
            for s in sets:
                if s >> i & 1:
                    acc &= s
            above.append(acc)
        return cls(above, label=label, names=names)

    # conversions ----------------------------------------------------------------

    def to_bits(self, points) -> int:
        bits = 0
        for p in points:
            try:
                bits |= 1 << self._pos[p]
            except KeyError:
                raise PreconditionError(f"point {p} is not in space {self.label!r}") from None
        return bits

    def to_ids(self, bits: int) -> tuple[int, ...]:
        return tuple(sorted(self.ids[i] for i in iter_bits(bits)))

    def point_name(self, p: int) -> str:
        if self.names is not None:
            return self.names[self._pos[p]]
        return str(p)

    # closure and closed sets ------------------------------------------------------

    def closure_bits(self, bits: int) -> int:
        out = 0
        for i in iter_bits(bits):
            out |= self.above[i]
        return out

    def closure(self, subset) -> ClosedSet:
        """Smallest closed set containing ``subset``."""
        return ClosedSet(self.label, self.to_ids(self.closure_bits(self.to_bits(subset))))

    def is_closed(self, subset) -> bool:
        b = self.to_bits(subset)
        return self.closure_bits(b) == b

    def _classes(self, within: int | None = None):
        """Equivalence classes (equal closures) in an order compatible with enumeration."""
        within = self.full if within is None else within
        groups: dict[int, int] = {}
        for i in iter_bits(within):
            key = self.above[i] & within
            groups[key] = groups.get(key, 0) | 1 << i
        order = sorted(groups.items(), key=lambda kv: (kv[0].bit_count(), kv[1]))
        class_masks = [c for _, c in order]
        required = [up & ~c for up, c in order]
        return class_masks, required

    def closed_set_bits(self, cap: int | None = None, within: int | None = None) -> list[int]:
        """Every up-set (of the subspace ``within``, default the whole space)."""
        cap = CLOSED_CAP if cap is None else cap
        class_masks, required = self._classes(within)
        out = kernels.enumerate_upsets(class_masks, required, cap, self.k)
        if out is None:
            raise ResourceLimitError("IDEALSPACES_CLOSED_CAP", cap,
                                     f"space {self.label!r} with {self.k} points")
        return out

    def all_closed_sets(self, cap: int | None = None) -> list[ClosedSet]:
        return [ClosedSet(self.label, self.to_ids(b)) for b in self.closed_set_bits(cap)]

    def closed_sets_from_subbasis(self) -> set[int]:
        """Closed sets generated from the point closures by finite unions and intersections.

        Exponential; intended for cross-checks on spaces with a handful of points.
        """
        subbasic = {self.above[i] for i in range(self.k)}
        family = {0, self.full} | subbasic
        while True:
            new = set(family)
            for a in family:
                for b in family:
                    new.add(a | b)
                    new.add(a & b)
            if new == family:
                return family
            family = new

    # irreducibility ------------------------------------------------------------------

    def _irreducible_bits(self, bits: int) -> IrreducibilityVerdict:
        if bits == 0:
            raise PreconditionError("irreducibility is only defined for nonempty sets")
        pair = kernels.is_lower_directed_mask(bits, self.below)
        if pair is None:
            return IrreducibilityVerdict(True)
        x, y = pair
        below_x = self.below[x] & bits
        below_y = self.below[y] & bits
        v1 = self.closure_bits(bits & ~below_x)
        v2 = self.closure_bits(bits & ~below_y)
        return IrreducibilityVerdict(
            False, (self.ids[x], self.ids[y]), (self.to_ids(v1), self.to_ids(v2)))

    def is_irreducible(self, subset) -> IrreducibilityVerdict:
        """Nonempty ``subset`` is irreducible iff every two of its points have a
        common lower bound inside it; on failure the pair and two closed sets
        covering ``subset`` without containing it are returned."""
        return self._irreducible_bits(self.to_bits(subset))

    def _irreducible_by_covers_bits(self, bits: int, cap: int | None = None):
        if bits == 0:
            raise PreconditionError("irreducibility is only defined for nonempty sets")
        # Any cover V1 ∪ V2 can be shrunk to cl(S ∩ V1), cl(S \ V1); the traces
        # S ∩ V1 are exactly the up-sets of S.
        for a in self.closed_set_bits(cap, within=bits):
            if a == 0 or a == bits:
                continue
            v2 = self.closure_bits(bits & ~a)
            if v2 & bits != bits:
                return False, (self.closure_bits(a), v2)
        return True, None

    def is_irreducible_by_covers(self, subset, cap: int | None = None) -> bool:
        """The definition: no two closed sets cover ``subset`` without one containing it."""
        return self._irreducible_by_covers_bits(self.to_bits(subset), cap)[0]

    # generic points and soberness --------------------------------------------------

    def _generic_bits(self, closed: int) -> list[int]:
        return [z for z in iter_bits(closed) if self.above[z] == closed]

    def generic_point(self, c: ClosedSet | tuple) -> int | None:
        """The unique point whose closure is ``c``, else ``None``."""
        members = c.members if isinstance(c, ClosedSet) else c
        bits = self.to_bits(members)
        if self.closure_bits(bits) != bits:
            raise PreconditionError("generic_point needs a closed set")
        gens = self._generic_bits(bits)
        return self.ids[gens[0]] if len(gens) == 1 else None

    def is_sober_direct(self, cap: int | None = None) -> SobernessVerdict:
        """Enumerate the closed sets; every irreducible one needs a unique generic point."""
        cap = CLOSED_CAP if cap is None else cap
        class_masks, required = self._classes()
        res = kernels.sober_scan(class_masks, required, self.above, self.below, cap)
        if res is None:
            raise ResourceLimitError("IDEALSPACES_CLOSED_CAP", cap,
                                     f"space {self.label!r} with {self.k} points")
        n_closed, n_irr, bad = res
        stats = {"closed_sets": n_closed, "irreducible_closed_sets": n_irr}
        if bad is None:
            return SobernessVerdict(True, "direct", None, stats)
        gens = self._generic_bits(bad)
        witness = {
            "irreducible_closed_set": list(self.to_ids(bad)),
            "generic_point_candidates": [self.ids[g] for g in gens],
        }
        return SobernessVerdict(False, "direct", witness, stats)

    def irreducible_closed_set_bits(self, cap: int | None = None) -> list[int]:
        return [c for c in self.closed_set_bits(cap)
                if c and kernels.is_lower_directed_mask(c, self.below) is None]

    # order structure ---------------------------------------------------------------

    def is_t0(self) -> bool:
        return len(set(self.above)) == self.k

    def specialization_leq(self, p: int, q: int) -> bool:
        """``p ⪯ q`` iff ``q`` lies in the closure of ``{p}``."""
        return bool(self.above[self._pos[p]] >> self._pos[q] & 1)

    def _max_bits(self) -> int:
        return sum(1 << i for i in range(self.k)
                   if self.above[i] & ~self.below[i] == 0)

    def max_elements(self) -> tuple[int, ...]:
        """Points with nothing strictly above them."""
        return self.to_ids(self._max_bits())

    def _finite_subcover(self, cover: list[int], within: int) -> list[int] | None:
        """One member per point; ``None`` if ``cover`` does not cover ``within``."""
        chosen: list[int] = []
        for i in iter_bits(within):
            if not any(u >> i & 1 for u in chosen):
                hit = next((u for u in cover if u >> i & 1), None)
                if hit is None:
                    return None
                chosen.append(hit)
        return chosen

    def _quasi_compact_bits(self, within: int) -> bool:
        # Every open cover of a finite set has a subcover with at most one member
        # per point; the finest cover (minimal neighbourhoods) is the hardest case.
        cover = [self.below[i] & within for i in iter_bits(within)]
        sub = self._finite_subcover(cover, within)
        return sub is not None and len(sub) <= within.bit_count()

    def maximal_chains(self, cap: int | None = None) -> list[tuple[int, ...]]:
        """Maximal chains of the (class-collapsed) order, as tuples of point indices."""
        cap = CHAIN_CAP if cap is None else cap
        class_masks, _ = self._classes()
        reps = [(c & -c).bit_length() - 1 for c in class_masks]
        strict_up = {r: (self.above[r] & ~self.below[r]) for r in reps}
        covers = {}
        for r in reps:
            ups = [s for s in reps if strict_up[r] >> s & 1]
            covers[r] = [s for s in ups
                         if not any(t != s and strict_up[t] >> s & 1 for t in ups)]
        minimal = [r for r in reps if not any(s != r and strict_up[s] >> r & 1 for s in reps)]
        chains: list[tuple[int, ...]] = []
        stack = [(r,) for r in reversed(minimal)]
        while stack:
            path = stack.pop()
            nxt = covers[path[-1]]
            if not nxt:
                chains.append(path)
                if len(chains) > cap:
                    raise ResourceLimitError("IDEALSPACES_CHAIN_CAP", cap,
                                             f"space {self.label!r}")
                continue
            for s in reversed(nxt):
                stack.append(path + (s,))
        return chains

    def quasi_compactness_report(self) -> QuasiCompactnessReport:
        maxb = self._max_bits()
        witness = {}
        everyone = True
        for i in range(self.k):
            hit = self.above[i] & maxb
            if hit:
                witness[self.ids[i]] = self.ids[(hit & -hit).bit_length() - 1]
            else:
                everyone = False
        chains = self.maximal_chains() if self.k else []
        bounds_ok = True
        for chain in chains:
            common = self.full
            for c in chain:
                common &= self.above[c]
            if common == 0:
                bounds_ok = False
                break
        return QuasiCompactnessReport(
            qc=self._quasi_compact_bits(self.full),
            everyone_below_max=everyone,
            max_qc=self._quasi_compact_bits(maxb),
            chain_bounds_ok=bounds_ok,
            max_elements=self.to_ids(maxb),
            below_max_witness=witness,
            n_maximal_chains=len(chains),
        )

    def _open_basis_ok(self) -> bool:
        # Minimal open neighbourhoods form a basis of (finite, hence
        # quasi-compact) opens; their pairwise intersections must be unions of
        # basis members.
        basis = [self.below[i] for i in range(self.k)]
        for a in range(self.k):
            for b in range(a + 1, self.k):
                inter = basis[a] & basis[b]
                union = 0
                for z in iter_bits(inter):
                    if basis[z] & ~inter == 0:
                        union |= basis[z]
                if union != inter:
                    return False
        return True

    def is_spectral_finite(self, cap: int | None = None) -> SpectralCertificate:
        sober = self.is_sober_direct(cap)
        t0 = self.is_t0()
        qc = self._quasi_compact_bits(self.full)
        basis = self._open_basis_ok()
        return SpectralCertificate(t0 and qc and sober.sober and basis, t0, qc, sober.sober, basis, sober)


class IdealSpace(FiniteSpace):
    """A set of ideals of one lattice, ordered by inclusion, with the subspace topology."""

    def __init__(self, lattice: IdealLattice, members, label: str = ""):
        members = sorted(set(int(i) for i in members))
        self.lattice = lattice
        self.member_bits = sum(1 << i for i in members)
        pos = {p: i for i, p in enumerate(members)}
        above = []
        for p in members:
            bits = 0
            for q in iter_bits(lattice.up[p] & self.member_bits):
                bits |= 1 << pos[q]
            above.append(bits)
        super().__init__(above, ids=members, label=label)

    def __contains__(self, ideal_index: int) -> bool:
        return bool(self.member_bits >> ideal_index & 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(self.ids)

    def point_name(self, p: int) -> str:
        return self.lattice.label(p)

    def _trace_bits(self, a: int) -> int:
        """``X ∩ {a}^↑`` as local bits."""
        out = 0
        for q in iter_bits(self.lattice.up[a] & self.member_bits):
            out |= 1 << self._pos[q]
        return out

    def subbasic_closed(self, a: int) -> ClosedSet:
        """``{I in X : a ⊆ I}`` for any ideal ``a`` of the ambient lattice."""
        return ClosedSet(self.label, self.to_ids(self._trace_bits(a)))

    def x_radical(self, a: int) -> tuple[int, bool]:
        """Intersection of the members of ``X`` containing ``a``.

        Returns ``(ideal index, empty_family)``; an empty family gives ``R``.
        """
        trace = self._trace_bits(a)
        if trace == 0:
            return self.lattice.top, True
        return self.lattice.meet_all(self.ids[i] for i in iter_bits(trace)), False

    def is_sober_criterion(self) -> SobernessVerdict:
        """Sober iff for every ambient ideal ``a`` with irreducible nonempty trace
        ``X ∩ {a}^↑``, the X-radical of ``a`` is in ``X``."""
        n_irr = n_empty = 0
        for a in range(self.lattice.m):
            trace = self._trace_bits(a)
            if trace == 0:
                n_empty += 1
                continue
            if kernels.is_lower_directed_mask(trace, self.below) is not None:
                continue
            n_irr += 1
            rad, _ = self.x_radical(a)
            if rad not in self:
                return SobernessVerdict(False, "criterion", {
                    "ideal": a,
                    "trace": list(self.to_ids(trace)),
                    "x_radical": rad,
                }, {"ambient_ideals": self.lattice.m, "irreducible_traces": n_irr,
                    "empty_traces": n_empty})
        return SobernessVerdict(True, "criterion", None, {
            "ambient_ideals": self.lattice.m, "irreducible_traces": n_irr, "empty_traces": n_empty})

    def check_lower_directed(self, z) -> None:
        z = sorted(set(z))
        for x, y in combinations(z, 2):
            if not any(self.lattice.leq(w, x) and self.lattice.leq(w, y) for w in z):
                raise PreconditionError(f"not lower directed: ideals {x} and {y} have no lower bound in the set")

    def lower_directed_infimum_check(self, z) -> tuple[bool, int]:
        """For lower-directed ``z ⊆ X``: whether ``inf z`` (intersection) lies in ``X``."""
        z = list(z)
        if not z:
            raise PreconditionError("empty set has no infimum in the space")
        for p in z:
            if p not in self:
                raise PreconditionError(f"ideal {p} is not in space {self.label!r}")
        self.check_lower_directed(z)
        inf = self.lattice.meet_all(z)
        return inf in self, inf


def lower_directed_sets(space: IdealSpace, max_size: int = 4):
    """Brute force: every subset of size ``<= max_size`` that is lower directed."""
    for size in range(1, max_size + 1):
        for z in combinations(space.ids, size):
            try:
                space.check_lower_directed(z)
            except PreconditionError:
                continue
            yield z
