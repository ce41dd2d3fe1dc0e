"""Finite commutative rings with identity.

A ring is described by a small composable AST (:class:`Zmod`, :class:`PolyQuot`,
:class:`Product`, :class:`Quotient`) and realized by :func:`build_ring` as a
:class:`FiniteRing` whose elements are the integers ``0 .. size-1``:

* ``Zmod(n)``: the residue itself;
* ``PolyQuot(p, f)``: the coefficient vector ``c`` read as ``sum c_t p**t``;
* ``Product``: mixed radix, first factor most significant;
* ``Quotient``: rank of the least base index in each coset.

Operations are vectorized over numpy index arrays; full tables are built on
first use when the ring is small enough (``IDEALSPACES_TABLE_CAP``, default
4096 elements).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np

from . import kernels
from .errors import AxiomViolation, PreconditionError, ResourceLimitError, RingSpecError

TABLE_CAP = int(os.environ.get("IDEALSPACES_TABLE_CAP", "4096"))
EXHAUSTIVE_AXIOM_LIMIT = 256
SAMPLED_AXIOM_TRIPLES = 10_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# element literals


@dataclass(frozen=True)
class PolyLit:
    """A polynomial in ``x`` with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __str__(self) -> str:
        return poly_to_text(self.coeffs)


ElementLit = Union[int, PolyLit, tuple]


def poly_to_text(coeffs) -> str:
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[deg])
        if c == 0:
            continue
        if deg == 0:
            body = str(abs(c))
        else:
            mono = "x" if deg == 1 else f"x^{deg}"
            body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append((" - " if c < 0 else " + ") + body)
    return "".join(terms) if terms else "0"


def literal_to_text(lit: ElementLit) -> str:
    if isinstance(lit, tuple):
        return "(" + ",".join(literal_to_text(v) for v in lit) + ")"
    if isinstance(lit, PolyLit):
        return str(lit).replace(" ", "")
    return str(int(lit))


def literal_to_json(lit: ElementLit):
    if isinstance(lit, tuple):
        return [literal_to_json(v) for v in lit]
    if isinstance(lit, PolyLit):
        return {"poly": list(lit.coeffs)}
    return int(lit)


def literal_from_json(obj) -> ElementLit:
    if isinstance(obj, list):
        return tuple(literal_from_json(v) for v in obj)
    if isinstance(obj, dict):
        return PolyLit(tuple(int(c) for c in obj["poly"]))
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise RingSpecError(f"bad element literal {obj!r}")
    return obj


# ---------------------------------------------------------------------------
# ring specifications


class RingSpec:
    """Base of the ring description AST."""

    def to_text(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Zmod(RingSpec):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise RingSpecError(f"Z/n needs n >= 2, got {self.n!r}")

    def to_text(self) -> str:
        return f"Z/{self.n}"

    def to_json(self) -> dict:
        return {"kind": "zmod", "n": self.n}


@dataclass(frozen=True)
class PolyQuot(RingSpec):
    """``GF(p)[x]/(f)`` with ``f`` monic, coefficients lowest degree first."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingSpecError(f"GF(p) needs a prime p, got {self.p}")
        coeffs = tuple(int(c) % self.p for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise RingSpecError(f"modulus {poly_to_text(self.coeffs)} must have degree >= 1 over GF({self.p})")
        if coeffs[-1] != 1:
            raise RingSpecError(f"modulus {poly_to_text(self.coeffs)} is not monic over GF({self.p})")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_text(self) -> str:
        return f"GF({self.p})[x]/({poly_to_text(self.coeffs).replace(' ', '')})"

    def to_json(self) -> dict:
        return {"kind": "polyquot", "p": self.p, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Product(RingSpec):
    factors: tuple[RingSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise RingSpecError("a product needs at least one factor")

    def to_text(self) -> str:
        parts = []
        for f in self.factors:
            t = f.to_text()
            parts.append(f"({t})" if isinstance(f, Product) else t)
        return " x ".join(parts)

    def to_json(self) -> dict:
        return {"kind": "product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class Quotient(RingSpec):
    base: RingSpec
    gens: tuple

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))

    def to_text(self) -> str:
        b = self.base.to_text()
        if isinstance(self.base, Product):
            b = f"({b})"
        return f"{b} / ({', '.join(literal_to_text(g) for g in self.gens)})"

    def to_json(self) -> dict:
        return {
            "kind": "quotient",
            "base": self.base.to_json(),
            "gens": [literal_to_json(g) for g in self.gens],
        }


def ring_spec_from_json(obj: dict) -> RingSpec:
    try:
        kind = obj["kind"]
        if kind == "zmod":
            return Zmod(int(obj["n"]))
        if kind == "polyquot":
            return PolyQuot(int(obj["p"]), tuple(int(c) for c in obj["coeffs"]))
        if kind == "product":
            return Product(tuple(ring_spec_from_json(f) for f in obj["factors"]))
        if kind == "quotient":
            return Quotient(ring_spec_from_json(obj["base"]),
                            tuple(literal_from_json(g) for g in obj["gens"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise RingSpecError(f"malformed ring JSON: {exc}") from exc
    raise RingSpecError(f"unknown ring kind {obj.get('kind')!r}")


# ---------------------------------------------------------------------------
# text grammar
#
#   expr  := term (('x' | 'X' | '×' | '*') term)*
#   term  := atom ('/' '(' [elem (',' elem)*] ')')*
#   atom  := 'Z/' INT | 'GF(' INT ')' ['[x]/(' poly ')'] | '(' expr ')'
#   elem  := '(' elem (',' elem)* ')' | poly
#
# Quotient binds tighter than product.


_PRODUCT_OPS = ("x", "X", "×", "*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> RingSpecError:
        return RingSpecError(msg, self.pos if pos is None else pos, self.text)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.ws()
        if not self.text.startswith(s, self.pos):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> RingSpec:
        spec = self.expr()
        self.ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return spec

    def expr(self) -> RingSpec:
        factors = [self.term()]
        while self.peek() in _PRODUCT_OPS and self.peek() != "":
            self.pos += 1
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self) -> RingSpec:
        spec = self.atom()
        while self.peek() == "/":
            self.pos += 1
            start = self.pos
            self.expect("(")
            gens = []
            if self.peek() != ")":
                gens.append(self.elem())
                while self.peek() == ",":
                    self.pos += 1
                    gens.append(self.elem())
            self.expect(")")
            try:
                spec = Quotient(spec, tuple(gens))
            except RingSpecError as exc:
                raise self.error(str(exc), start) from None
        return spec

    def atom(self) -> RingSpec:
        self.ws()
        start = self.pos
        t = self.text
        if t.startswith("Z/", self.pos) or t.startswith("Z /", self.pos):
            self.pos += 1
            self.expect("/")
            n = self.integer()
            try:
                return Zmod(n)
            except RingSpecError as exc:
                raise self.error(str(exc), start) from None
        if t.startswith("GF", self.pos):
            self.pos += 2
            self.expect("(")
            p = self.integer()
            self.expect(")")
            if self.peek() == "[":
                self.expect("[")
                self.expect("x")
                self.expect("]")
                self.expect("/")
                self.expect("(")
                coeffs = self.poly()
                self.expect(")")
            else:
                coeffs = (0, 1)  # GF(p) = GF(p)[x]/(x)
            try:
                return PolyQuot(p, coeffs)
            except RingSpecError as exc:
                raise self.error(str(exc), start) from None
        if t.startswith("(", self.pos):
            self.pos += 1
            spec = self.expr()
            self.expect(")")
            return spec
        raise self.error("expected a ring ('Z/n', 'GF(p)...', or '(')")

    def elem(self) -> ElementLit:
        if self.peek() == "(":
            self.pos += 1
            items = [self.elem()]
            while self.peek() == ",":
                self.pos += 1
                items.append(self.elem())
            self.expect(")")
            return items[0] if len(items) == 1 else tuple(items)
        coeffs = self.poly()
        if len(coeffs) <= 1:
            return coeffs[0] if coeffs else 0
        return PolyLit(coeffs)

    _TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*?\s*x(?:\s*\^\s*(\d+))?)?")

    def poly(self) -> tuple[int, ...]:
        coeffs: dict[int, int] = {}
        first = True
        while True:
            self.ws()
            m = self._TERM.match(self.text, self.pos)
            sign, num, xpart, exp = m.groups()
            if num is None and xpart is None:
                if first:
                    raise self.error("expected a polynomial")
                raise self.error("dangling sign in polynomial")
            if not first and sign is None:
                break
            self.pos = m.end()
            c = int(num) if num is not None else 1
            if sign == "-":
                c = -c
            deg = 0 if xpart is None else (int(exp) if exp is not None else 1)
            coeffs[deg] = coeffs.get(deg, 0) + c
            first = False
            nxt = self.peek()
            if nxt not in ("+", "-"):
                break
        top = max(coeffs)
        return tuple(coeffs.get(d, 0) for d in range(top + 1))


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``Z/4``, ``GF(2)[x]/(x^2)``, ``Z/4 x Z/3``, ``Z/8 / (4)`` and combinations."""
    return _Parser(text).parse()


def parse_element(text: str) -> ElementLit:
    p = _Parser(text)
    lit = p.elem()
    p.ws()
    if p.pos != len(text):
        raise p.error("unexpected trailing input")
    return lit


# ---------------------------------------------------------------------------
# realized rings

VecOp = Callable[[np.ndarray, np.ndarray], np.ndarray]


class FiniteRing:
    """A realized finite commutative ring on the indices ``0 .. size-1``.

    Treat instances as immutable.  ``add_table``/``mul_table`` are built lazily
    and cached.
    """

    def __init__(self, spec: RingSpec, size: int, zero: int, one: int,
                 add_vec: VecOp, mul_vec: VecOp, neg_vec: Callable[[np.ndarray], np.ndarray],
                 label: Callable[[int], str], to_literal: Callable[[int], ElementLit],
                 from_literal: Callable[[ElementLit], int]):
        self.spec = spec
        self.size = size
        self.zero = zero
        self.one = one
        self._add_vec = add_vec
        self._mul_vec = mul_vec
        self._neg_vec = neg_vec
        self._label = label
        self._to_literal = to_literal
        self._from_literal = from_literal

    @property
    def key(self) -> str:
        return self.spec.to_text()

    def __repr__(self) -> str:
        return f"FiniteRing({self.key!r}, size={self.size})"

    # element-level operations ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if "add_table" in self.__dict__:
            return int(self.add_table[a, b])
        return int(self._add_vec(np.int64(a), np.int64(b)))

    def mul(self, a: int, b: int) -> int:
        if "mul_table" in self.__dict__:
            return int(self.mul_table[a, b])
        return int(self._mul_vec(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        return int(self._neg_vec(np.int64(a)))

    def add_vec(self, a, b) -> np.ndarray:
        return self._add_vec(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def mul_vec(self, a, b) -> np.ndarray:
        return self._mul_vec(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def label(self, i: int) -> str:
        return self._label(int(i))

    def literal(self, i: int) -> ElementLit:
        return self._to_literal(int(i))

    def element(self, lit: ElementLit | str) -> int:
        """Index of an element literal (``int``, :class:`PolyLit`, tuple, or text)."""
        if isinstance(lit, str):
            lit = parse_element(lit)
        return self._from_literal(lit)

    # tables -----------------------------------------------------------------

    def _table(self, op: VecOp) -> np.ndarray:
        if self.size > TABLE_CAP:
            raise ResourceLimitError("IDEALSPACES_TABLE_CAP", TABLE_CAP,
                                     f"ring {self.key} has {self.size} elements")
        idx = np.arange(self.size, dtype=np.int64)
        return np.ascontiguousarray(op(idx[:, None], idx[None, :]), dtype=np.int32)

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self._add_vec)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self._mul_vec)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.ascontiguousarray(self._neg_vec(np.arange(self.size, dtype=np.int64)), dtype=np.int32)

    # axioms -------------------------------------------------------------------

    def verify_axioms(self, seed: int = 0) -> str:
        """Check the ring axioms; exhaustive up to 256 elements, sampled above.

        Returns ``"exhaustive"`` or ``"sampled"``; raises :class:`AxiomViolation`.
        """
        if self.zero == self.one:
            raise AxiomViolation("zero_neq_one", (self.zero,))
        if self.size <= EXHAUSTIVE_AXIOM_LIMIT:
            bad = kernels.check_ring_axioms(self.add_table, self.mul_table, self.neg_table,
                                            self.zero, self.one)
            if bad is not None:
                raise AxiomViolation(bad[0], tuple(int(v) for v in bad[1:]))
            return "exhaustive"
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, self.size, size=(3, SAMPLED_AXIOM_TRIPLES))
        A, M, N = self.add_vec, self.mul_vec, self._neg_vec
        checks = (
            ("add_identity", A(a, self.zero) != a),
            ("add_inverse", A(a, N(a)) != self.zero),
            ("mul_identity", M(a, self.one) != a),
            ("add_comm", A(a, b) != A(b, a)),
            ("mul_comm", M(a, b) != M(b, a)),
            ("add_assoc", A(A(a, b), c) != A(a, A(b, c))),
            ("mul_assoc", M(M(a, b), c) != M(a, M(b, c))),
            ("distributivity", M(a, A(b, c)) != A(M(a, b), M(a, c))),
        )
        for law, bad_flags in checks:
            hits = np.flatnonzero(bad_flags)
            if len(hits):
                i = hits[0]
                raise AxiomViolation(law, (int(a[i]), int(b[i]), int(c[i])))
        return "sampled"

    # units and zero-divisors ------------------------------------------------

    def _row(self, x: int, op: str) -> np.ndarray:
        table = f"{op}_table"
        if self.size <= TABLE_CAP:
            return getattr(self, table)[x]
        idx = np.arange(self.size, dtype=np.int64)
        return (self._mul_vec if op == "mul" else self._add_vec)(np.int64(x), idx)

    def is_unit(self, x: int, witness: bool = False):
        """Whether ``x`` has an inverse; with ``witness=True`` also return it (or ``None``)."""
        hits = np.flatnonzero(self._row(x, "mul") == self.one)
        inv = int(hits[0]) if len(hits) else None
        return (inv is not None, inv) if witness else inv is not None

    def is_regular_element(self, x: int) -> bool:
        """``x`` is not a zero-divisor: ``xy = 0`` forces ``y = 0``."""
        zeros = np.flatnonzero(self._row(x, "mul") == self.zero)
        return len(zeros) == 1 and int(zeros[0]) == self.zero

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return (self.mul_table == self.one).any(axis=1).astype(np.uint8)

    @cached_property
    def regular_mask(self) -> np.ndarray:
        return ((self.mul_table == self.zero).sum(axis=1) == 1).astype(np.uint8)

    @cached_property
    def nilpotent_mask(self) -> np.ndarray:
        zero = np.zeros(self.size, dtype=np.uint8)
        zero[self.zero] = 1
        return kernels.radical_mask(self.mul_table, zero)


# ---------------------------------------------------------------------------
# construction


def _build_zmod(spec: Zmod) -> FiniteRing:
    n = spec.n

    def from_lit(lit):
        if isinstance(lit, PolyLit):
            if any(lit.coeffs[1:]):
                raise RingSpecError(f"{lit} is not an element of Z/{n}")
            lit = lit.coeffs[0] if lit.coeffs else 0
        if isinstance(lit, tuple):
            raise RingSpecError(f"tuple {literal_to_text(lit)} is not an element of Z/{n}")
        return int(lit) % n

    return FiniteRing(
        spec, n, 0, 1 % n,
        lambda a, b: (a + b) % n,
        lambda a, b: (a * b) % n,
        lambda a: (-a) % n,
        str, int, from_lit,
    )


def _poly_reductions(p: int, f: tuple[int, ...], upto: int) -> np.ndarray:
    """Rows are the coefficient vectors of ``x**k mod f`` for ``k < upto``."""
    d = len(f) - 1
    red = np.zeros((max(upto, 1), d), dtype=np.int64)
    cur = np.zeros(d, dtype=np.int64)
    cur[0] = 1
    for k in range(upto):
        red[k] = cur
        carry = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        cur = (cur - carry * np.asarray(f[:-1], dtype=np.int64)) % p
    return red


def _build_polyquot(spec: PolyQuot) -> FiniteRing:
    p, f, d = spec.p, spec.coeffs, spec.degree
    size = p ** d
    weights = p ** np.arange(d, dtype=np.int64)
    red = _poly_reductions(p, f, 2 * d - 1)

    def digits(a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // weights) % p

    def compose(dig):
        return (dig % p) @ weights

    def mul(a, b):
        da, db = digits(a), digits(b)
        da, db = np.broadcast_arrays(da, db)
        conv = np.zeros(da.shape[:-1] + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                conv[..., i + j] += da[..., i] * db[..., j]
        return compose(conv @ red)

    def label(i):
        return poly_to_text(digits(i).tolist())

    def from_lit(lit):
        if isinstance(lit, tuple):
            raise RingSpecError(f"tuple {literal_to_text(lit)} is not an element of {spec.to_text()}")
        coeffs = lit.coeffs if isinstance(lit, PolyLit) else (int(lit),)
        r = _poly_reductions(p, f, max(len(coeffs), 1))
        vec = (np.asarray(coeffs, dtype=np.int64) @ r[: len(coeffs)]) % p
        return int(vec @ weights)

    def to_lit(i):
        c = tuple(int(v) for v in digits(i))
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        return c[0] if len(c) == 1 else PolyLit(c)

    return FiniteRing(
        spec, size, 0, 1,
        lambda a, b: compose(digits(a) + digits(b)),
        mul,
        lambda a: compose(-digits(a)),
        label, to_lit, from_lit,
    )


def _build_product(spec: Product) -> FiniteRing:
    rings = [build_ring(f, verify=False) for f in spec.factors]
    sizes = [r.size for r in rings]
    strides = []
    acc = 1
    for s in reversed(sizes):
        strides.append(acc)
        acc *= s
    strides.reverse()
    size = acc

    def split(a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // st) % sz for st, sz in zip(strides, sizes)]

    def join(parts):
        out = 0
        for part, st in zip(parts, strides):
            out = out + np.asarray(part, dtype=np.int64) * st
        return out

    def lift(op_name):
        def op(a, b):
            return join([getattr(r, op_name)(x, y) for r, x, y in zip(rings, split(a), split(b))])
        return op

    def label(i):
        return "(" + ",".join(r.label(int(x)) for r, x in zip(rings, split(i))) + ")"

    def to_lit(i):
        return tuple(r.literal(int(x)) for r, x in zip(rings, split(i)))

    def from_lit(lit):
        if isinstance(lit, tuple):
            if len(lit) != len(rings):
                raise RingSpecError(
                    f"element {literal_to_text(lit)} needs {len(rings)} components for {spec.to_text()}")
            return int(join([r.element(v) for r, v in zip(rings, lit)]))
        if len(rings) == 1:
            return rings[0].element(lit)
        if isinstance(lit, PolyLit):
            raise RingSpecError(f"polynomial {lit} is not an element of {spec.to_text()}")
        return int(join([r.element(int(lit)) for r in rings]))

    return FiniteRing(
        spec, size, int(join([r.zero for r in rings])), int(join([r.one for r in rings])),
        lift("add_vec"), lift("mul_vec"),
        lambda a: join([r._neg_vec(x) for r, x in zip(rings, split(a))]),
        label, to_lit, from_lit,
    )


def _ideal_mask_by_ops(ring: FiniteRing, gens: list[int]) -> np.ndarray:
    """Element mask of the ideal generated by ``gens`` (sum of principal ideals)."""
    n = ring.size
    idx = np.arange(n, dtype=np.int64)
    out = np.zeros(n, dtype=np.uint8)
    out[ring.zero] = 1
    for g in gens:
        principal = np.unique(ring.mul_vec(idx, g))
        cur_idx = np.flatnonzero(out)
        for y in principal:
            if not out[y]:
                out[ring.add_vec(cur_idx, y)] = 1
    return out


def _coset_projection(ring: FiniteRing, ideal_mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Least-index coset representatives and the element-to-coset map."""
    members = np.flatnonzero(ideal_mask).astype(np.int64)
    n = ring.size
    rep = np.empty(n, dtype=np.int64)
    chunk = max(1, 2_000_000 // max(len(members), 1))
    for start in range(0, n, chunk):
        xs = np.arange(start, min(n, start + chunk), dtype=np.int64)
        rep[start:start + len(xs)] = ring.add_vec(xs[:, None], members[None, :]).min(axis=1)
    reps = np.unique(rep)
    return reps, np.searchsorted(reps, rep)


def _quotient_from_mask(base: FiniteRing, spec: RingSpec, ideal_mask: np.ndarray):
    reps, proj = _coset_projection(base, ideal_mask)
    size = len(reps)
    if size * int(ideal_mask.sum()) != base.size:
        raise RingSpecError(f"coset count {size} inconsistent with ideal size {int(ideal_mask.sum())}")

    def lift(op):
        return lambda a, b: proj[op(reps[np.asarray(a, dtype=np.int64)], reps[np.asarray(b, dtype=np.int64)])]

    ring = FiniteRing(
        spec, size, int(proj[base.zero]), int(proj[base.one]),
        lift(base.add_vec), lift(base.mul_vec),
        lambda a: proj[base._neg_vec(reps[np.asarray(a, dtype=np.int64)])],
        lambda i: base.label(int(reps[i])),
        lambda i: base.literal(int(reps[i])),
        lambda lit: int(proj[base.element(lit)]),
    )
    return ring, proj


def _build_quotient(spec: Quotient) -> FiniteRing:
    base = build_ring(spec.base, verify=False)
    gens = [base.element(g) for g in spec.gens]
    mask = _ideal_mask_by_ops(base, gens)
    if mask.all():
        raise RingSpecError(f"{spec.to_text()}: generators span the whole ring (zero ring)")
    ring, proj = _quotient_from_mask(base, spec, mask)
    ring.base = base
    ring.projection = proj
    return ring


_BUILDERS = {Zmod: _build_zmod, PolyQuot: _build_polyquot, Product: _build_product, Quotient: _build_quotient}


def build_ring(spec: RingSpec | str, verify: bool = True) -> FiniteRing:
    """Realize a ring description; axioms are checked unless ``verify`` is false.

    Same spec gives identical tables.
    """
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    ring = _BUILDERS[type(spec)](spec)
    if verify:
        ring.verify_axioms()
    return ring


# ---------------------------------------------------------------------------
# quotients and localization


def _as_mask(ring: FiniteRing, ideal) -> np.ndarray:
    mask = getattr(ideal, "element_mask", ideal)
    mask = np.asarray(mask, dtype=np.uint8)
    if mask.shape != (ring.size,):
        raise PreconditionError("ideal mask does not match the ring size")
    return mask


def greedy_generators(ring: FiniteRing, mask: np.ndarray) -> list[int]:
    """A small generating set: repeatedly add the element enlarging the ideal most."""
    target = np.asarray(mask, dtype=np.uint8)
    goal = int(target.sum())
    idx = np.arange(ring.size, dtype=np.int64)
    gens: list[int] = []
    cur = np.zeros(ring.size, dtype=np.uint8)
    cur[ring.zero] = 1
    while int(cur.sum()) < goal:
        best, best_size, best_mask = -1, -1, None
        for x in np.flatnonzero(target & (1 - cur)):
            # principal ideal of x first: cheap lower bound filter
            cand = cur.copy()
            cur_idx = np.flatnonzero(cand)
            for y in np.unique(ring.mul_vec(idx, int(x))):
                if not cand[y]:
                    cand[ring.add_vec(cur_idx, int(y))] = 1
                    cur_idx = np.flatnonzero(cand)
            s = int(cand.sum())
            if s > best_size:
                best, best_size, best_mask = int(x), s, cand
                if s == goal:
                    break
        gens.append(best)
        cur = best_mask
    return gens


def quotient_ring(ring: FiniteRing, ideal, gens=None, verify: bool = True) -> tuple[FiniteRing, np.ndarray]:
    """``R/I`` together with the element-level projection ``R -> R/I``.

    ``gens`` (element indices generating ``I``) only names the quotient; when
    omitted a small generating set is searched for.
    """
    mask = _as_mask(ring, ideal)
    if mask.all():
        raise PreconditionError("quotient by the unit ideal is the zero ring")
    if gens is None:
        gens = greedy_generators(ring, mask)
    spec = Quotient(ring.spec, tuple(ring.literal(g) for g in gens))
    q, proj = _quotient_from_mask(ring, spec, mask)
    q.base = ring
    q.projection = proj
    if verify:
        q.verify_axioms()
    return q, proj


def is_maximal_mask(ring: FiniteRing, mask: np.ndarray) -> bool:
    """``m`` proper and ``m + Rx = R`` for every ``x`` outside ``m``."""
    if mask.all() or not mask[ring.zero]:
        return False
    idx = np.arange(ring.size, dtype=np.int64)
    members = np.flatnonzero(mask)
    for x in np.flatnonzero(mask == 0):
        principal = np.unique(ring.mul_vec(idx, int(x)))
        # m + Rx contains 1 iff some r*x lands in the coset 1 - m
        if not np.isin(ring.add_vec(members[:, None], principal[None, :]), [ring.one]).any():
            return False
    return True


def localization_kernel(ring: FiniteRing, mask: np.ndarray) -> np.ndarray:
    """``{x : sx = 0 for some s outside m}``."""
    outside = np.flatnonzero(mask == 0)
    return (ring.mul_table[outside] == ring.zero).any(axis=0).astype(np.uint8)


def localize_at_maximal(ring: FiniteRing, m, verify: bool = True) -> tuple[FiniteRing, np.ndarray]:
    """``R_m`` realized as ``R/k`` with ``k`` the kernel of ``R -> R_m``.

    For a finite ring the map to the localization is onto, so the quotient
    by its kernel is the localization itself.
    """
    mask = _as_mask(ring, m)
    if not is_maximal_mask(ring, mask):
        raise PreconditionError("localize_at_maximal needs a maximal ideal")
    return quotient_ring(ring, localization_kernel(ring, mask), verify=verify)
