"""Texts, LZ77 phrases and parsings; greedy parsing, validation, decoding.

Positions are 0-based throughout.  A phrase starting at ``i`` that copies
from ``j`` stores the distance ``d = i - 1 - j``, so ``d == 0`` means the
source starts right before the phrase.  Length-1 classical phrases and
nonclassical literals store ``d = 0`` as a sentinel.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DanglingReference, InvalidParsing
from .index import SubstringIndex


class Variant(str, enum.Enum):
    CLASSICAL = "classical"
    NONCLASSICAL = "nonclassical"


class PhraseKind(str, enum.Enum):
    TRIPLE = "classical_triple"
    LITERAL = "nc_literal"
    REFERENCE = "nc_reference"


class Text:
    """A non-empty string over the integer alphabet ``[0..n]``."""

    __slots__ = ("letters", "_index", "_sigma")

    def __init__(self, letters):
        arr = np.array(letters, dtype=np.int64).ravel()
        n = len(arr)
        if n == 0:
            raise ValueError("a text must contain at least one letter")
        lo, hi = int(arr.min()), int(arr.max())
        if lo < 0 or hi > n:
            raise ValueError(f"letters must lie in [0..{n}], got range [{lo}..{hi}]")
        self.letters = arr.astype(np.int32)
        self.letters.setflags(write=False)
        self._index = None
        self._sigma = None

    @classmethod
    def from_str(cls, chars):
        """Map the distinct characters of ``chars`` to codes 0, 1, ... in sorted order."""
        codes = {ch: k for k, ch in enumerate(sorted(set(chars)))}
        return cls([codes[ch] for ch in chars])

    @property
    def n(self):
        return len(self.letters)

    @property
    def sigma(self):
        """Number of distinct letters."""
        if self._sigma is None:
            self._sigma = int(np.count_nonzero(np.bincount(self.letters)))
        return self._sigma

    @property
    def index(self):
        if self._index is None:
            self._index = SubstringIndex(self.letters)
        return self._index

    def drop_index(self):
        self._index = None

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return self.letters[key]
        return int(self.letters[key])

    def __iter__(self):
        return iter(self.letters.tolist())

    def __eq__(self, other):
        if not isinstance(other, Text):
            return NotImplemented
        return np.array_equal(self.letters, other.letters)

    def __hash__(self):
        return hash(self.letters.tobytes())

    def tolist(self):
        return self.letters.tolist()

    def __repr__(self):
        head = " ".join(map(str, self.letters[:16].tolist()))
        more = " ..." if self.n > 16 else ""
        return f"Text(n={self.n}, [{head}{more}])"


@dataclass(frozen=True, slots=True)
class Phrase:
    kind: PhraseKind
    d: int
    ell: int
    c: int | None

    @classmethod
    def triple(cls, d, ell, c):
        return cls(PhraseKind.TRIPLE, d, ell, c)

    @classmethod
    def literal(cls, c):
        return cls(PhraseKind.LITERAL, 0, 1, c)

    @classmethod
    def reference(cls, d, ell):
        return cls(PhraseKind.REFERENCE, d, ell, None)

    @property
    def copied(self):
        """Number of letters taken from the earlier occurrence."""
        if self.kind is PhraseKind.TRIPLE:
            return self.ell - 1
        if self.kind is PhraseKind.REFERENCE:
            return self.ell
        return 0

    def source(self, start):
        return start - 1 - self.d

    def to_dict(self):
        return {"kind": self.kind.value, "d": self.d, "ell": self.ell, "c": self.c}

    @classmethod
    def from_dict(cls, obj):
        c = obj.get("c")
        return cls(PhraseKind(obj["kind"]), int(obj["d"]), int(obj["ell"]), None if c is None else int(c))


@dataclass
class Parsing:
    phrases: list[Phrase]
    variant: Variant = Variant.CLASSICAL
    _starts: list[int] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.variant = Variant(self.variant)

    @property
    def z(self):
        return len(self.phrases)

    @property
    def n(self):
        return sum(p.ell for p in self.phrases)

    def __len__(self):
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)

    def __getitem__(self, k):
        return self.phrases[k]

    def starts(self):
        """Start position of every phrase."""
        if self._starts is None or len(self._starts) != len(self.phrases):
            out, pos = [], 0
            for p in self.phrases:
                out.append(pos)
                pos += p.ell
            self._starts = out
        return self._starts

    def lengths(self):
        return [p.ell for p in self.phrases]

    def to_json(self):
        return json.dumps([p.to_dict() for p in self.phrases])

    @classmethod
    def from_json(cls, data, variant=None):
        phrases = [Phrase.from_dict(obj) for obj in json.loads(data)]
        if variant is None:
            nc = any(p.kind is not PhraseKind.TRIPLE for p in phrases)
            variant = Variant.NONCLASSICAL if nc else Variant.CLASSICAL
        return cls(phrases, Variant(variant))


class Violation(NamedTuple):
    index: int
    reason: str


def _as_text(s):
    return s if isinstance(s, Text) else Text(s)


def _build_phrases(text, lengths, sources, nonclassical):
    letters = text.letters
    phrases = []
    pos = 0
    for ell, src in zip(lengths.tolist(), sources.tolist()):
        if nonclassical:
            if src < 0:
                phrases.append(Phrase.literal(int(letters[pos])))
            else:
                phrases.append(Phrase.reference(pos - 1 - src, ell))
        else:
            d = pos - 1 - src if src >= 0 else 0
            phrases.append(Phrase.triple(d, ell, int(letters[pos + ell - 1])))
        pos += ell
    variant = Variant.NONCLASSICAL if nonclassical else Variant.CLASSICAL
    return Parsing(phrases, variant)


def greedy_parse_classical(s):
    """Greedy LZ77 parsing; every reference uses its rightmost source."""
    text = _as_text(s)
    lengths, sources = text.index.greedy(nonclassical=False)
    return _build_phrases(text, lengths, sources, nonclassical=False)


def greedy_parse_nonclassical(s):
    """Greedy parsing into literals and whole earlier-occurring strings."""
    text = _as_text(s)
    lengths, sources = text.index.greedy(nonclassical=True)
    return _build_phrases(text, lengths, sources, nonclassical=True)


def greedy_parse(s, variant=Variant.CLASSICAL):
    if Variant(variant) is Variant.NONCLASSICAL:
        return greedy_parse_nonclassical(s)
    return greedy_parse_classical(s)


def validate_parsing(s, p):
    """Return ``None`` when ``p`` is a valid parsing of ``s``, else the first
    :class:`Violation`."""
    text = _as_text(s)
    letters = text.letters
    n = text.n
    want = PhraseKind.TRIPLE if p.variant is Variant.CLASSICAL else None
    pos = 0
    for k, ph in enumerate(p.phrases):
        if want is not None and ph.kind is not want:
            return Violation(k, f"{ph.kind.value} phrase in a classical parsing")
        if want is None and ph.kind is PhraseKind.TRIPLE:
            return Violation(k, "classical triple in a nonclassical parsing")
        if ph.ell < 1:
            return Violation(k, "phrase length must be at least 1")
        if pos + ph.ell > n:
            return Violation(k, f"phrase runs past the end of the text (n={n})")
        if ph.d < 0:
            return Violation(k, "negative distance")
        if ph.kind is PhraseKind.LITERAL:
            if ph.ell != 1 or ph.d != 0:
                return Violation(k, "literal must have length 1 and d = 0")
            if ph.c != letters[pos]:
                return Violation(k, "literal letter does not match the text")
        elif ph.kind is PhraseKind.REFERENCE:
            if ph.c is not None:
                return Violation(k, "nonclassical reference carries no letter")
            j = pos - 1 - ph.d
            if j < 0:
                return Violation(k, "source starts before the text")
            if not np.array_equal(letters[j : j + ph.ell], letters[pos : pos + ph.ell]):
                return Violation(k, f"no occurrence of the phrase at source {j}")
        else:
            if ph.c != letters[pos + ph.ell - 1]:
                return Violation(k, "explicit letter does not match the text")
            if ph.ell == 1:
                if ph.d != 0:
                    return Violation(k, "length-1 phrase must store d = 0")
            else:
                j = pos - 1 - ph.d
                if j < 0:
                    return Violation(k, "source starts before the text")
                t = ph.ell - 1
                if not np.array_equal(letters[j : j + t], letters[pos : pos + t]):
                    return Violation(k, f"copied prefix does not occur at source {j}")
        pos += ph.ell
    if pos != n:
        return Violation(len(p.phrases), f"phrase lengths sum to {pos}, text has {n} letters")
    return None


def check_parsing(s, p):
    """Raise :class:`InvalidParsing` unless ``p`` validates against ``s``."""
    bad = validate_parsing(s, p)
    if bad is not None:
        raise InvalidParsing(f"phrase {bad.index}: {bad.reason}", bad.index)


def minimize_distances(s, p):
    """Same phrase boundaries, every reference moved to its rightmost source."""
    text = _as_text(s)
    check_parsing(text, p)
    starts = p.starts()
    refs = [k for k, ph in enumerate(p.phrases) if ph.copied > 0]
    if not refs:
        return Parsing(list(p.phrases), p.variant)
    positions = np.array([starts[k] for k in refs], dtype=np.int32)
    lengths = np.array([p.phrases[k].copied for k in refs], dtype=np.int32)
    sources = text.index.rightmost_sources(positions, lengths)
    phrases = list(p.phrases)
    for k, i, j in zip(refs, positions.tolist(), sources.tolist()):
        phrases[k] = _with_distance(phrases[k], i - 1 - j)
    return Parsing(phrases, p.variant)


def _with_distance(ph, d):
    return Phrase(ph.kind, d, ph.ell, ph.c)


def reconstruct(p):
    """Decode a parsing back into its text (left-to-right copy semantics)."""
    n = p.n
    out = np.zeros(n, dtype=np.int64)
    pos = 0
    for k, ph in enumerate(p.phrases):
        t = ph.copied
        if t:
            j = pos - 1 - ph.d
            if j < 0 or ph.d < 0:
                raise DanglingReference(f"phrase {k} copies from position {j}")
            if j + t <= pos:
                out[pos : pos + t] = out[j : j + t]
            else:
                # overlapping source: the copy repeats with period pos - j
                out[pos : pos + t] = np.resize(out[j:pos], t)
        if ph.kind is not PhraseKind.REFERENCE:
            out[pos + ph.ell - 1] = ph.c
        pos += ph.ell
    return Text(out)


def longest_previous_factor(s):
    """Per position ``i``: the longest ``L`` with ``s[i:i+L]`` starting at some
    ``j < i``, and the rightmost such ``j`` (``-1`` when ``L == 0``).

    Returns two int32 arrays ``(lengths, sources)``.
    """
    text = _as_text(s)
    lengths = text.index.factor_lengths()
    sources = text.index.rightmost_sources(np.arange(text.n, dtype=np.int32), lengths)
    return lengths, sources


def longest_previous_factor_naive(s):
    """Quadratic-scan reference for :func:`longest_previous_factor`."""
    letters = _as_text(s).tolist()
    n = len(letters)
    lengths, sources = [], []
    for i in range(n):
        best, src = 0, -1
        for j in range(i - 1, -1, -1):
            h = 0
            while i + h < n and letters[j + h] == letters[i + h]:
                h += 1
            if h > best:
                best, src = h, j
        lengths.append(best)
        sources.append(src)
    return np.array(lengths, dtype=np.int32), np.array(sources, dtype=np.int32)
