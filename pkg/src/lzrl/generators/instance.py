"""The instance record and the boundary-to-parsing helper used by witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..parser import Parsing, Phrase, Text, Variant, check_parsing

FAMILIES = ("gray_multi", "gray_binary", "gray_multi_nc", "gray_binary_nc", "steiner", "steiner_nc")
NONCLASSICAL_FAMILIES = {"gray_multi_nc", "gray_binary_nc", "steiner_nc"}


@dataclass
class GeneratedInstance:
    text: Text
    family: str
    params: dict
    witness: Parsing
    markers: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.text.n

    @property
    def variant(self):
        return Variant.NONCLASSICAL if self.family in NONCLASSICAL_FAMILIES else Variant.CLASSICAL

    def sidecar(self):
        """JSON-ready metadata: family, parameters and landmark positions."""
        out = {"family": self.family}
        for key in ("n", "sigma", "z", "k", "ell", "m", "x"):
            out[key] = self.params.get(key)
        out["markers"] = self.markers
        return out

    def sidecar_json(self):
        return json.dumps(self.sidecar(), sort_keys=True)


# A witness is described by its phrase lengths; ``LITERAL`` forces a
# nonclassical one-letter phrase to be stored as a literal.
LITERAL = "literal"


def phrases_from_lengths(text, pieces, variant):
    """Turn phrase lengths into a validated parsing with rightmost sources.

    ``pieces`` holds ints or ``(ell, LITERAL)`` pairs.  A nonclassical
    one-letter phrase becomes a reference when the letter occurred before
    and its code is at least 2, else a literal.
    """
    variant = Variant(variant)
    nonclassical = variant is Variant.NONCLASSICAL
    letters = text.letters
    lengths, forced = [], []
    for piece in pieces:
        if isinstance(piece, tuple):
            lengths.append(piece[0])
            forced.append(piece[1] == LITERAL)
        else:
            lengths.append(piece)
            forced.append(False)
    starts = np.concatenate(([0], np.cumsum(lengths[:-1]))).astype(np.int32) if lengths else np.zeros(0, np.int32)
    ells = np.array(lengths, dtype=np.int32)
    copied = ells if nonclassical else ells - 1
    sources = text.index.rightmost_sources(starts, copied)
    phrases = []
    for i, ell, j, lit in zip(starts.tolist(), ells.tolist(), sources.tolist(), forced):
        if nonclassical:
            if ell == 1 and (lit or j < 0 or letters[i] < 2):
                phrases.append(Phrase.literal(int(letters[i])))
            else:
                phrases.append(Phrase.reference(i - 1 - j, ell))
        else:
            d = i - 1 - j if ell > 1 else 0
            phrases.append(Phrase.triple(d, ell, int(letters[i + ell - 1])))
    parsing = Parsing(phrases, variant)
    check_parsing(text, parsing)
    return parsing
