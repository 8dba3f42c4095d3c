"""Gray-code strings on which greedy parsing pays Theta(log n) bits per phrase.

Every family places k Gray-code words before a long run and then repeats
them after it.  Greedy must copy each repeated word from across the run,
while a cheaper parsing copies from the neighbouring word, which differs in
one position only.
"""

from __future__ import annotations

import math

from ..errors import InvalidParams
from ..parser import Text, Variant
from .gray import differing_position, gray_word
from .instance import LITERAL, GeneratedInstance, phrases_from_lengths

SEPARATOR = 1  # b
RUN_LETTER = 2  # a, the Gray terminal for alphabets of size >= 3


def _ceil_log(z, base):
    m, power = 0, 1
    while power < z:
        power *= base
        m += 1
    return m


def _words(tau, m, k, terminal):
    return [gray_word(tau, m, i, terminal) for i in range(k)]


def _splits(words):
    """Per word i >= 1, the 1-based position j where it differs from word i-1."""
    return [None] + [differing_position(words[i - 1], words[i]) + 1 for i in range(1, len(words))]


def _choose_k(z, tau, m, n, block, reserve):
    limit = (n / 2 - reserve) / block
    k = min(z, tau ** m - 1, math.floor(limit))
    if k < 1 or 4 * k < z:
        raise InvalidParams(
            f"n={n} too short for z={z}: at most k={max(k, 0)} blocks fit while keeping the run >= n/2"
        )
    return k


def _check_multi(n, sigma, z):
    if sigma < 3:
        raise InvalidParams("the multi-letter family needs sigma >= 3; use the binary family")
    if sigma > n:
        raise InvalidParams(f"sigma={sigma} exceeds n={n}")
    if n >= 2:
        cap = n / math.log(n, sigma)
        if not sigma <= z <= cap:
            raise InvalidParams(f"z={z} outside [{sigma}, {cap:.1f}]")
    elif z != 1:
        raise InvalidParams("n=1 admits only z=1")


def _check_binary(n, z):
    if n < 4:
        raise InvalidParams("the binary family needs n >= 4")
    cap = n / math.log2(n)
    if not 2 <= z <= cap:
        raise InvalidParams(f"z={z} outside [2, {cap:.1f}]")


def _degenerate(n, sigma, z, family):
    # sigma >= n/4: every encoding costs Theta(n log n), any text will do.
    letters = list(range(1, sigma + 1)) + [1] * (n - sigma)
    text = Text(letters)
    variant = Variant.NONCLASSICAL if family.endswith("_nc") else Variant.CLASSICAL
    witness = phrases_from_lengths(text, _greedy_lengths(text, variant), variant)
    params = dict(n=n, sigma=sigma, z=z, k=0, ell=n - sigma, m=0, x=None, degenerate=True)
    return GeneratedInstance(text, family, params, witness, {"run": [sigma, n - sigma]})


def _greedy_lengths(text, variant):
    from ..parser import greedy_parse

    return greedy_parse(text, variant).lengths()


def _unused(sigma, used):
    return [c for c in range(1, sigma + 1) if c not in used]


def _split_word(j, m):
    """Classical pieces of a word copied from its neighbour: s[1..j], s[j+1..m]."""
    return [j] + ([m - j] if m > j else [])


def gen_gray_multi(n, sigma, z):
    """``s_1 .. s_k a^ell b s_1 b .. s_k b`` over ``[1..sigma]`` plus unused letters."""
    _check_multi(n, sigma, z)
    if 4 * sigma >= n:
        return _degenerate(n, sigma, z, "gray_multi")
    tau = sigma - 1
    m = _ceil_log(z, tau)
    k = _choose_k(z, tau, m, n, 2 * m + 1, 1 + (sigma - 2))
    words = _words(tau, m, k, RUN_LETTER)
    used = {SEPARATOR, RUN_LETTER}.union(*map(set, words))
    tail = _unused(sigma, used)
    ell = n - k * (2 * m + 1) - 1 - len(tail)
    if ell <= m:
        raise InvalidParams(f"run length {ell} must exceed m={m}")

    letters = [c for w in words for c in w]
    run_start = len(letters)
    letters += [RUN_LETTER] * ell
    suffix_start = len(letters)
    letters.append(SEPARATOR)
    blocks = []
    for w in words:
        blocks.append(len(letters))
        letters += w + [SEPARATOR]
    letters += tail
    text = Text(letters)

    js = _splits(words)
    pieces = [1] * m
    for i in range(1, k):
        pieces += _split_word(js[i], m)
    pieces += [1, ell]  # a, then a^(ell-1) b
    pieces.append(m + 1)
    for i in range(1, k):
        pieces += [js[i], m - js[i] + 1]
    pieces += [1] * len(tail)
    witness = phrases_from_lengths(text, pieces, Variant.CLASSICAL)

    params = dict(n=n, sigma=sigma, z=z, k=k, ell=ell, m=m, x=None, tau=tau)
    markers = {
        "prefix_blocks": [i * m for i in range(k)],
        "run": [run_start, ell],
        "suffix_start": suffix_start,
        "suffix_blocks": blocks,
        "tail": [len(letters) - len(tail), len(tail)],
    }
    return GeneratedInstance(text, "gray_multi", params, witness, markers)


def gen_gray_binary(n, z):
    """``s_i 0^m 1`` blocks, ``0^ell 1``, then ``s_i 0^m 1 c_i`` blocks over {0, 1}."""
    _check_binary(n, z)
    m = max(_ceil_log(z, 2), 1)
    k = _choose_k(z, 2, m, n, 4 * m + 3, 1)
    ell = n - k * (4 * m + 3) - 1
    if ell <= 4 * m:
        raise InvalidParams(f"run length {ell} must exceed 4m={4 * m}")
    words = _words(2, m, k, 0)
    flags = [0 if words[i + 1][0] == 1 else 1 for i in range(k - 1)] + [1]
    zeros = [0] * m

    letters = []
    prefix_blocks = []
    for w in words:
        prefix_blocks.append(len(letters))
        letters += w + zeros + [1]
    run_start = len(letters)
    letters += [0] * ell + [1]
    suffix_blocks = []
    for w, c in zip(words, flags):
        suffix_blocks.append(len(letters))
        letters += w + zeros + [1, c]
    text = Text(letters)

    js = _splits(words)
    pieces = [1] * (2 * m + 1)
    for i in range(1, k):
        pieces += [js[i], 2 * m + 1 - js[i]]
    pieces += [1, ell]
    pieces.append(2 * m + 2)
    for i in range(1, k):
        pieces += [js[i], 2 * m + 2 - js[i]]
    witness = phrases_from_lengths(text, pieces, Variant.CLASSICAL)

    params = dict(n=n, sigma=2, z=z, k=k, ell=ell, m=m, x=None)
    markers = {
        "prefix_blocks": prefix_blocks,
        "run": [run_start, ell],
        "suffix_start": run_start + ell + 1,
        "suffix_blocks": suffix_blocks,
        "flags": flags,
    }
    return GeneratedInstance(text, "gray_binary", params, witness, markers)


def _nc_split(j, m, lead, trail):
    """Nonclassical pieces for ``lead + s_i + trail`` copied around position j."""
    pieces = [lead + j - 1] if lead + j - 1 > 0 else []
    pieces.append(1)
    rest = m - j + trail
    if rest:
        pieces.append(rest)
    return pieces


def gen_gray_multi_nc(n, sigma, z):
    """``b s_1 b .. b s_k b a^ell`` then ``b s_i b`` blocks, for nonclassical parsing."""
    _check_multi(n, sigma, z)
    if 4 * sigma >= n:
        return _degenerate(n, sigma, z, "gray_multi_nc")
    tau = sigma - 1
    m = _ceil_log(z, tau)
    k = _choose_k(z, tau, m, n, 2 * m + 3, 1 + (sigma - 2))
    words = _words(tau, m, k, RUN_LETTER)
    used = {SEPARATOR, RUN_LETTER}.union(*map(set, words))
    tail = _unused(sigma, used)
    ell = n - k * (2 * m + 3) - 1 - len(tail)
    if ell <= m:
        raise InvalidParams(f"run length {ell} must exceed m={m}")

    letters = []
    prefix_blocks = []
    for w in words:
        prefix_blocks.append(len(letters))
        letters += [SEPARATOR] + w
    letters.append(SEPARATOR)
    run_start = len(letters)
    letters += [RUN_LETTER] * ell
    suffix_blocks = []
    for w in words:
        suffix_blocks.append(len(letters))
        letters += [SEPARATOR] + w + [SEPARATOR]
    letters += tail
    text = Text(letters)

    js = _splits(words)
    pieces = [(1, LITERAL)] + [1] * m
    for i in range(1, k):
        pieces += _nc_split(js[i], m, 1, 0)
    pieces.append(1)
    pieces += [1, ell - 1]
    pieces.append(m + 2)
    for i in range(1, k):
        pieces += _nc_split(js[i], m, 1, 1)
    pieces += [1] * len(tail)
    witness = phrases_from_lengths(text, pieces, Variant.NONCLASSICAL)

    params = dict(n=n, sigma=sigma, z=z, k=k, ell=ell, m=m, x=None, tau=tau)
    markers = {
        "prefix_blocks": prefix_blocks,
        "run": [run_start, ell],
        "suffix_start": run_start + ell,
        "suffix_blocks": suffix_blocks,
        "tail": [len(letters) - len(tail), len(tail)],
    }
    return GeneratedInstance(text, "gray_multi_nc", params, witness, markers)


def gen_gray_binary_nc(n, z):
    """``1 0 s_i alpha`` blocks, ``0^ell``, then ``1 0 s_1 alpha 0 s_2 alpha .. 0``."""
    _check_binary(n, z)
    m = max(_ceil_log(z, 2), 1)
    k = _choose_k(z, 2, m, n, 4 * m + 7, 2)
    ell = n - k * (4 * m + 7) - 2
    if ell <= 4 * m:
        raise InvalidParams(f"run length {ell} must exceed 4m={4 * m}")
    words = _words(2, m, k, 0)
    alpha = [0] * (m + 1) + [1]

    letters = []
    prefix_blocks = []
    for w in words:
        prefix_blocks.append(len(letters))
        letters += [1, 0] + w + alpha
    run_start = len(letters)
    letters += [0] * ell
    suffix_start = len(letters)
    letters.append(1)
    suffix_blocks = []
    for w in words:
        suffix_blocks.append(len(letters))
        letters += [0] + w + alpha
    letters.append(0)
    text = Text(letters)

    js = _splits(words)
    pieces = [1] * (2 * m + 4)
    for i in range(1, k):
        pieces += _nc_split(js[i], m, 2, m + 2)
    pieces += [1, ell - 1]
    pieces.append(2 * m + 4)
    for i in range(1, k):
        pieces += _nc_split(js[i], m, 1, m + 2)
    pieces.append(1)
    witness = phrases_from_lengths(text, pieces, Variant.NONCLASSICAL)

    params = dict(n=n, sigma=2, z=z, k=k, ell=ell, m=m, x=None)
    markers = {
        "prefix_blocks": prefix_blocks,
        "run": [run_start, ell],
        "suffix_start": suffix_start,
        "suffix_blocks": suffix_blocks,
    }
    return GeneratedInstance(text, "gray_binary_nc", params, witness, markers)
