"""Bit-optimal and phrase-count-optimal LZ77 parsing.

Both solvers are shortest paths over positions ``0..n``: an edge ``i -> i+ell``
exists when a phrase of length ``ell`` may start at ``i``, and its weight is
the codeword cost using the rightmost source.  Codeword lengths are monotone
in the encoded value, so the rightmost source is always the cheapest one.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .bitcodec import TAG_BITS, CostModel, code_length, code_length_table
from .errors import InfeasibleEdge, InstanceTooLarge
from .parser import Parsing, Phrase, Text, Variant

BRUTE_FORCE_LIMIT = 20


def _as_text(s):
    return s if isinstance(s, Text) else Text(s)


def _walk(text, ell_choice, src_choice, nonclassical):
    letters = text.letters
    phrases = []
    i = 0
    n = text.n
    while i < n:
        ell = int(ell_choice[i])
        j = int(src_choice[i])
        if nonclassical:
            phrases.append(Phrase.literal(int(letters[i])) if j < 0 else Phrase.reference(i - 1 - j, ell))
        else:
            phrases.append(Phrase.triple(i - 1 - j if j >= 0 else 0, ell, int(letters[i + ell - 1])))
        i += ell
    return Parsing(phrases, Variant.NONCLASSICAL if nonclassical else Variant.CLASSICAL)


def _solve(text, len_d, len_l, len_c, nonclassical, tag_bits):
    total, ell_choice, src_choice = kernels.optimal_parse(
        text.letters,
        np.ascontiguousarray(len_d, dtype=np.int64),
        np.ascontiguousarray(len_l, dtype=np.int64),
        np.ascontiguousarray(len_c, dtype=np.int64),
        bool(nonclassical),
        int(tag_bits),
    )
    return int(total), _walk(text, ell_choice, src_choice, nonclassical)


def optimal_bits_parse(s, model):
    """Parsing of minimal encoded size under ``model``; returns ``(parsing, bits)``.

    Runs in O(n^2) time and O(n) memory.
    """
    text = _as_text(s)
    n = text.n
    nonclassical = model.variant is Variant.NONCLASSICAL
    len_d = code_length_table(model.distance_codec, max(n - 1, 0))
    len_l = code_length_table(model.length_codec, n)
    len_c = code_length_table(model.letter_codec, int(text.letters.max()))
    total, parsing = _solve(text, len_d, len_l, len_c, nonclassical, TAG_BITS)
    return parsing, total


def min_phrase_parse(s, variant=Variant.CLASSICAL):
    """A parsing with the fewest phrases (every phrase costs one unit)."""
    text = _as_text(s)
    n = text.n
    len_d = np.zeros(max(n, 1), dtype=np.int64)
    len_l = np.zeros(n + 1, dtype=np.int64)
    len_l[1:] = 1
    len_c = np.zeros(int(text.letters.max()) + 1, dtype=np.int64)
    nonclassical = Variant(variant) is Variant.NONCLASSICAL
    if nonclassical:
        # a literal then costs tag (0) + letter (1) = 1, a reference 0 + 0 + 1
        len_c[:] = 1
    _, parsing = _solve(text, len_d, len_l, len_c, nonclassical, 0)
    return parsing


def edge_cost(s, i, ell, model):
    """Bits of the cheapest phrase of length ``ell`` starting at ``i``.

    Raises :class:`InfeasibleEdge` when no such phrase is valid.
    """
    text = _as_text(s)
    n = text.n
    if i < 0 or ell < 1 or i + ell > n:
        raise InfeasibleEdge(f"phrase [{i}, {i + ell}) lies outside the text (n={n})")
    nonclassical = model.variant is Variant.NONCLASSICAL
    copied = ell if nonclassical else ell - 1
    letter = int(text.letters[i + ell - 1])
    if nonclassical and ell == 1:
        # a literal is always available; a length-1 reference may be cheaper
        best = TAG_BITS + code_length(model.letter_codec, letter)
    elif copied == 0:
        return (code_length(model.distance_codec, 0) + code_length(model.length_codec, 1)
                + code_length(model.letter_codec, letter))
    else:
        best = None
    src = int(text.index.rightmost_sources([i], [copied])[0])
    if src < 0:
        if best is None:
            raise InfeasibleEdge(f"text[{i}:{i + copied}] has no earlier occurrence")
        return best
    d = i - 1 - src
    if nonclassical:
        ref = TAG_BITS + code_length(model.distance_codec, d) + code_length(model.length_codec, ell)
        return ref if best is None else min(best, ref)
    return (code_length(model.distance_codec, d) + code_length(model.length_codec, ell)
            + code_length(model.letter_codec, letter))


def brute_force_optimal(s, model):
    """Minimum encoded size by enumerating every valid parsing (``n <= 20``).

    Shares no code with :func:`optimal_bits_parse`: feasibility and the minimal
    distance come from direct scans, codeword sizes from materialized
    codewords.  Suffix results are memoized, so each of the exponentially
    many parsings is still considered but shared tails are priced once.
    """
    from .bitcodec import encode_int

    letters = _as_text(s).tolist()
    n = len(letters)
    if n > BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(f"brute force supports n <= {BRUTE_FORCE_LIMIT}, got {n}")
    nonclassical = model.variant is Variant.NONCLASSICAL

    def bits(codec, x):
        return len(encode_int(codec, x))

    def min_distance(i, t):
        for j in range(i - 1, -1, -1):
            if letters[j : j + t] == letters[i : i + t]:
                return i - 1 - j
        return None

    memo = {}

    def best_from(i):
        if i == n:
            return 0
        if i in memo:
            return memo[i]
        options = []
        for ell in range(1, n - i + 1):
            if nonclassical:
                if ell == 1:
                    options.append(TAG_BITS + bits(model.letter_codec, letters[i]) + best_from(i + 1))
                d = min_distance(i, ell)
                if d is not None:
                    options.append(TAG_BITS + bits(model.distance_codec, d)
                                   + bits(model.length_codec, ell) + best_from(i + ell))
            else:
                if ell == 1:
                    d = 0
                else:
                    d = min_distance(i, ell - 1)
                    if d is None:
                        continue
                options.append(bits(model.distance_codec, d) + bits(model.length_codec, ell)
                               + bits(model.letter_codec, letters[i + ell - 1]) + best_from(i + ell))
        memo[i] = min(options)
        return memo[i]

    return best_from(0)


__all__ = [
    "BRUTE_FORCE_LIMIT",
    "CostModel",
    "brute_force_optimal",
    "edge_cost",
    "min_phrase_parse",
    "optimal_bits_parse",
]
