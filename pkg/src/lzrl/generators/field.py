"""GF(2^k) arithmetic and the affine planes built on it."""

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from ..errors import UnsupportedOrder

# Irreducible polynomials, bit i = coefficient of x^i.
POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    4: 0b10011,
    8: 0b100011011,
}

SUPPORTED_ORDERS = (2, 4, 16, 256)


def _check_degree(k):
    if k not in POLYNOMIALS:
        raise UnsupportedOrder(f"GF(2^{k}) is not supported; use k in {sorted(POLYNOMIALS)}")


def gf_mul(k, a, b):
    _check_degree(k)
    poly = POLYNOMIALS[k]
    top = 1 << k
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return out


def gf_arith(k, op, a, b):
    """``a + b`` or ``a * b`` in GF(2^k)."""
    _check_degree(k)
    if not (0 <= a < 1 << k and 0 <= b < 1 << k):
        raise ValueError(f"operands must lie in [0, {1 << k})")
    if op == "add":
        return a ^ b
    if op == "mul":
        return gf_mul(k, a, b)
    raise ValueError(f"unknown field operation {op!r}")


@lru_cache(maxsize=None)
def mul_table(k):
    q = 1 << k
    table = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            table[a, b] = table[b, a] = gf_mul(k, a, b)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class AffinePlane:
    """Points ``x*q + y`` of GF(q)^2 and the ``q(q+1)`` lines through them.

    ``lines`` has shape ``(q*(q+1), q)``; each row lists point ids in
    ascending order.  Lines ``y = a*x + b`` come first (``a`` then ``b``
    ascending), then the verticals ``x = c``.
    """

    q: int
    lines: np.ndarray

    @property
    def points(self):
        return range(self.q * self.q)

    @property
    def line_count(self):
        return len(self.lines)

    def expected_line_count(self):
        q = self.q
        return comb(q * q, 2) // comb(q, 2)


@lru_cache(maxsize=None)
def affine_plane(q):
    if q not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"affine plane of order {q} is not supported; use one of {SUPPORTED_ORDERS}")
    k = q.bit_length() - 1
    mul = mul_table(k)
    xs = np.arange(q, dtype=np.int64)
    rows = []
    for a in range(q):
        ax = mul[a, xs]
        for b in range(q):
            rows.append(xs * q + (ax ^ b))
    for c in range(q):
        rows.append(c * q + xs)
    lines = np.sort(np.array(rows, dtype=np.int64), axis=1)
    lines.setflags(write=False)
    return AffinePlane(q, lines)
