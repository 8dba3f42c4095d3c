"""Reflected tau-ary Gray codes, reversed so they end at the all-terminal word."""

from dataclasses import dataclass


def reflected_word(tau, m, index):
    """Digits of word ``index`` of the standard reflected code (starts at 0^m)."""
    digits = []
    block = tau ** m
    r = index
    for _ in range(m):
        block //= tau
        d, r = divmod(r, block)
        digits.append(d)
        if d % 2:
            r = block - 1 - r
    return digits


def gray_word(tau, m, i, terminal=0):
    """Word ``i`` (0-based) of the reversed code as a list of letters."""
    total = tau ** m
    if not 0 <= i < total:
        raise IndexError(f"Gray word index {i} outside [0, {total})")
    return [terminal + d for d in reflected_word(tau, m, total - 1 - i)]


@dataclass(frozen=True)
class GrayCodeSeq:
    tau: int
    m: int
    terminal: int
    words: tuple

    def __len__(self):
        return len(self.words)

    def __getitem__(self, i):
        return self.words[i]


def gray_sequence(tau, m, terminal=0):
    """All ``tau**m`` words; neighbours differ in one position, the last is terminal^m."""
    if tau < 2 or m < 1:
        raise ValueError("need tau >= 2 and m >= 1")
    words = tuple(tuple(gray_word(tau, m, i, terminal)) for i in range(tau ** m))
    return GrayCodeSeq(tau, m, terminal, words)


def differing_position(u, v):
    """The single 0-based position where two neighbouring words differ."""
    diff = [p for p, (a, b) in enumerate(zip(u, v)) if a != b]
    if len(diff) != 1:
        raise ValueError(f"words differ in {len(diff)} positions")
    return diff[0]
