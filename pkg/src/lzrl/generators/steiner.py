"""Steiner-system strings: greedy pays Omega(log n) per letter pair.

Letters: ``c = 0``, ``d = 1`` and the set ``A = {2 .. 2^(2^x) + 1}``.  The
text is ``r'(A) c^ell r(A)`` where ``r(S)`` lists ``q(S)`` (every letter of S
followed by d) and then recurses on the blocks of an S(2, sqrt|S|, |S|)
system over S, bottoming out at pairs ``b c b' c b c b' d d``.  ``r'`` ends
its pair strings with ``c`` instead of the final ``d``.
"""

from __future__ import annotations

import math
from math import comb

from ..errors import InstanceTooSmall, InvalidParams
from ..parser import Text, Variant
from .field import affine_plane
from .instance import LITERAL, GeneratedInstance, phrases_from_lengths

C_LETTER = 0
D_LETTER = 1
MAX_LEVEL = 4


def alphabet_size(x):
    """``|A| = 2^(2^x)``."""
    return 2 ** (2 ** x)


def steiner_length(i):
    """``L(i) = |r(S)|`` for ``|S| = 2^(2^i)``; ``L(0) = 9``."""
    if i < 0:
        raise ValueError("level must be non-negative")
    if i == 0:
        return 9
    size = alphabet_size(i)
    blocks = comb(size, 2) // comb(alphabet_size(i - 1), 2)
    return 2 * size + blocks * steiner_length(i - 1)


def natural_level(n):
    """Least ``x >= 1`` with ``2^(2^x) > sqrt(log2 n)``."""
    target = math.sqrt(math.log2(n))
    x = 1
    while alphabet_size(x) <= target:
        x += 1
    return x


def blocks_of(letters):
    """Blocks of the affine plane on ``letters`` (sorted), relabeled in ascending order."""
    q = math.isqrt(len(letters))
    plane = affine_plane(q)
    return [[letters[p] for p in line] for line in plane.lines.tolist()]


def _emit(letters, out, pieces, primed, top):
    """Append r(S) or r'(S) to ``out`` and its witness pieces to ``pieces``."""
    if len(letters) == 2:
        b, b2 = letters
        last = C_LETTER if primed else D_LETTER
        out += [b, C_LETTER, b2, C_LETTER, b, C_LETTER, b2, D_LETTER, last]
        pieces += [2, 2, 2, 2, 1]
        return
    for a in letters:
        out += [a, D_LETTER]
    if top:
        pieces += [(1, LITERAL), 1] * len(letters)
    else:
        pieces += [2] * len(letters)
    for block in blocks_of(letters):
        _emit(block, out, pieces, primed, False)


def _build(x):
    size = alphabet_size(x)
    letters = list(range(2, size + 2))
    primed, primed_pieces = [], []
    _emit(letters, primed, primed_pieces, True, True)
    plain, plain_pieces = [], []
    _emit(letters, plain, plain_pieces, False, True)
    return primed, primed_pieces, plain, plain_pieces


def _nc_pieces(pieces):
    # every phrase outside the run is one letter long
    out = []
    for piece in pieces:
        if isinstance(piece, tuple):
            out.append(piece)
        else:
            out += [1] * piece
    return out


def gen_steiner(n, x=None, variant=Variant.CLASSICAL):
    """Steiner-system instance of length exactly ``n``.

    ``x`` defaults to :func:`natural_level`; tests may force it.  Raises
    :class:`InstanceTooSmall` unless the c-run keeps at least half the text.
    """
    variant = Variant(variant)
    if n < 2:
        raise InstanceTooSmall("n must exceed 1")
    if x is None:
        x = natural_level(n)
    if not 1 <= x <= MAX_LEVEL:
        raise InvalidParams(f"level x={x} outside [1, {MAX_LEVEL}]")
    length = steiner_length(x)
    ell = n - 2 * length
    if 2 * ell < n:
        raise InstanceTooSmall(f"n={n} too small for level x={x}: need n >= {4 * length}")

    primed, primed_pieces, plain, plain_pieces = _build(x)
    letters = primed + [C_LETTER] * ell + plain
    text = Text(letters)
    run = [1, ell - 1]
    if variant is Variant.CLASSICAL:
        pieces = primed_pieces + run + plain_pieces
    else:
        pieces = _nc_pieces(primed_pieces) + run + _nc_pieces(plain_pieces)
    witness = phrases_from_lengths(text, pieces, variant)

    size = alphabet_size(x)
    family = "steiner" if variant is Variant.CLASSICAL else "steiner_nc"
    params = dict(n=n, sigma=size + 2, z=None, k=comb(size, 2), ell=ell, m=None, x=x, L=length)
    markers = {"r_prime": [0, length], "run": [length, ell], "r": [length + ell, length]}
    return GeneratedInstance(text, family, params, witness, markers)


def gen_steiner_nc(n, x=None):
    return gen_steiner(n, x, Variant.NONCLASSICAL)
