"""Backend selection for the hot loops.

The compiled extension ``_kernels`` is used when it imports; otherwise the
pure-Python ``_pykernels`` is used.  Setting ``IDEALSPACES_PURE=1`` forces the
pure-Python backend.  Point-bitset kernels fall back to Python for spaces with
more than 64 points, where the compiled versions do not apply.
"""

from __future__ import annotations

import os

from . import _pykernels

AXIOM_LAWS = _pykernels.AXIOM_LAWS

_compiled = None
if os.environ.get("IDEALSPACES_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_MAX_POINTS = 64


def backend_module(name: str | None = None):
    """Return the kernel module for ``name`` (``"cython"``/``"python"``) or the active one."""
    if name is None:
        name = BACKEND
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def _pick(n_points: int | None = None):
    if _compiled is None or (n_points is not None and n_points > _MAX_POINTS):
        return _pykernels
    return _compiled


def check_ring_axioms(add, mul, neg, zero, one):
    return _pick().check_ring_axioms(add, mul, neg, zero, one)


def ideal_sum(add, a, b):
    return _pick().ideal_sum(add, a, b)


def radical_mask(mul, mask):
    return _pick().radical_mask(mul, mask)


def pair_witness(mul, in_ideal, allow_a, allow_b):
    return _pick().pair_witness(mul, in_ideal, allow_a, allow_b)


def enumerate_upsets(class_masks, required, cap, n_points):
    return _pick(n_points).enumerate_upsets(class_masks, required, cap)


def sober_scan(class_masks, required, above, below, cap):
    return _pick(len(above)).sober_scan(class_masks, required, above, below, cap)


def is_lower_directed_mask(mask, below):
    return _pick(len(below)).is_lower_directed_mask(mask, below)


def lower_directed_scan(strict_up, ideal_of, meet, in_space, max_size):
    mod = _pick(len(strict_up))
    if max_size > 4:
        mod = _pykernels
    return mod.lower_directed_scan(strict_up, ideal_of, meet, in_space, max_size)


def least_coprime_prime_pairs(bound, primes):
    return _pick().least_coprime_prime_pairs(bound, primes)
