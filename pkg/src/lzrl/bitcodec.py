"""Universal integer codes and bit-exact serialization of parsings.

Each codec maps a non-negative integer ``x`` to the classical codeword of
``x + 1`` (Elias gamma, Elias delta, Levenshtein), so ``0`` is encodable and
codeword length stays non-decreasing in ``x``.

Bits are written most-significant first within a codeword and codewords are
concatenated left to right.  Persisted payloads are zero-padded at the tail.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, MalformedCodeword, TruncatedCodeword
from .parser import Parsing, Phrase, PhraseKind, Variant

MAGIC = b"LZRL"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sBBBBBQQ")

# Nonclassical phrases start with one tag bit.
TAG_BITS = 1
TAG_LITERAL = "0"
TAG_REFERENCE = "1"


class Codec(enum.IntEnum):
    GAMMA = 0
    DELTA = 1
    LEVENSHTEIN = 2

    @classmethod
    def parse(cls, name):
        if isinstance(name, Codec):
            return name
        key = str(name).strip().lower()
        aliases = {
            "gamma": cls.GAMMA, "g": cls.GAMMA, "0": cls.GAMMA,
            "delta": cls.DELTA, "d": cls.DELTA, "1": cls.DELTA,
            "levenshtein": cls.LEVENSHTEIN, "lev": cls.LEVENSHTEIN, "l": cls.LEVENSHTEIN, "2": cls.LEVENSHTEIN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown codec {name!r}") from None

    @property
    def label(self):
        return self.name.lower()


class BitString:
    """An immutable sequence of bits."""

    __slots__ = ("bits",)

    def __init__(self, bits=""):
        if bits.strip("01"):
            raise ValueError("a BitString holds only '0' and '1'")
        self.bits = bits

    @classmethod
    def concat(cls, parts):
        return cls("".join(p.bits if isinstance(p, BitString) else p for p in parts))

    @property
    def length(self):
        return len(self.bits)

    def __len__(self):
        return len(self.bits)

    def __add__(self, other):
        return BitString(self.bits + other.bits)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return BitString(self.bits[key])
        return int(self.bits[key])

    def __eq__(self, other):
        if isinstance(other, BitString):
            return self.bits == other.bits
        if isinstance(other, str):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash(self.bits)

    def __str__(self):
        return self.bits

    def __repr__(self):
        return f"BitString({self.bits!r})"

    def startswith(self, prefix):
        return self.bits.startswith(str(prefix))

    def to_bytes(self):
        if not self.bits:
            return b""
        pad = -len(self.bits) % 8
        padded = self.bits + "0" * pad
        return int(padded, 2).to_bytes(len(padded) // 8, "big")

    @classmethod
    def from_bytes(cls, data, length=None):
        bits = "".join(format(b, "08b") for b in data)
        if length is not None:
            if length > len(bits):
                raise TruncatedCodeword(f"need {length} bits, payload holds {len(bits)}")
            bits = bits[:length]
        return cls(bits)


def _gamma_pos(v):
    return "0" * (v.bit_length() - 1) + format(v, "b")


def _levenshtein_pos(v):
    parts = []
    steps = 1
    m = v
    while True:
        tail = format(m, "b")[1:]
        parts.append(tail)
        if not tail:
            break
        steps += 1
        m = len(tail)
    return "1" * steps + "0" + "".join(reversed(parts))


def encode_int(codec, x):
    """Codeword of the non-negative integer ``x`` as a :class:`BitString`."""
    if x < 0:
        raise ValueError(f"cannot encode negative integer {x}")
    v = int(x) + 1
    codec = Codec(codec)
    if codec is Codec.GAMMA:
        return BitString(_gamma_pos(v))
    if codec is Codec.DELTA:
        width = v.bit_length() - 1
        return BitString(_gamma_pos(width + 1) + format(v, "b")[1:])
    return BitString(_levenshtein_pos(v))


def code_length(codec, x):
    """Length of ``encode_int(codec, x)`` without building it."""
    v = int(x) + 1
    codec = Codec(codec)
    if codec is Codec.GAMMA:
        return 2 * v.bit_length() - 1
    if codec is Codec.DELTA:
        width = v.bit_length() - 1
        return 2 * (width + 1).bit_length() - 1 + width
    total, steps = 1, 1
    m = v
    while m > 1:
        width = m.bit_length() - 1
        total += width
        steps += 1
        m = width
    return total + steps


def code_length_table(codec, upto):
    """``table[x] == code_length(codec, x)`` for ``0 <= x <= upto``."""
    return np.array([code_length(codec, x) for x in range(upto + 1)], dtype=np.int64)


def _read_gamma_pos(bits, offset):
    one = bits.find("1", offset)
    if one < 0:
        raise TruncatedCodeword(f"unterminated unary prefix at bit {offset}")
    width = one - offset
    end = one + width + 1
    if end > len(bits):
        raise TruncatedCodeword(f"gamma payload cut at bit {len(bits)}")
    return int(bits[one:end], 2), end


def decode_int(codec, bits, offset=0):
    """Decode one codeword starting at ``offset``; return ``(x, next_offset)``."""
    raw = bits.bits if isinstance(bits, BitString) else str(bits)
    if offset >= len(raw):
        raise TruncatedCodeword(f"no bits left at offset {offset}")
    codec = Codec(codec)
    if codec is Codec.GAMMA:
        v, end = _read_gamma_pos(raw, offset)
    elif codec is Codec.DELTA:
        w, pos = _read_gamma_pos(raw, offset)
        width = w - 1
        end = pos + width
        if end > len(raw):
            raise TruncatedCodeword(f"delta payload cut at bit {len(raw)}")
        v = int("1" + raw[pos:end], 2)
    else:
        zero = raw.find("0", offset)
        if zero < 0:
            raise TruncatedCodeword(f"unterminated step count at bit {offset}")
        steps = zero - offset
        if steps == 0:
            # Levenshtein "0" stands for 0, which encode_int never emits.
            raise MalformedCodeword(f"codeword for -1 at bit {offset}")
        pos = zero + 1
        v = 1
        for _ in range(steps - 1):
            end = pos + v
            if end > len(raw):
                raise TruncatedCodeword(f"levenshtein payload cut at bit {len(raw)}")
            v = int("1" + raw[pos:end], 2)
            pos = end
        end = pos
    return v - 1, end


@dataclass(frozen=True)
class CostModel:
    """The fixed encoder triple plus the parsing variant it serializes."""

    distance_codec: Codec = Codec.GAMMA
    length_codec: Codec = Codec.GAMMA
    letter_codec: Codec = Codec.GAMMA
    variant: Variant = Variant.CLASSICAL

    def __post_init__(self):
        object.__setattr__(self, "distance_codec", Codec.parse(self.distance_codec))
        object.__setattr__(self, "length_codec", Codec.parse(self.length_codec))
        object.__setattr__(self, "letter_codec", Codec.parse(self.letter_codec))
        object.__setattr__(self, "variant", Variant(self.variant))

    @classmethod
    def uniform(cls, codec, variant=Variant.CLASSICAL):
        codec = Codec.parse(codec)
        return cls(codec, codec, codec, variant)

    @classmethod
    def from_spec(cls, spec, variant=Variant.CLASSICAL):
        """Build from ``"gamma,delta,levenshtein"`` (distance, length, letter)."""
        names = [part for part in str(spec).split(",") if part.strip()]
        if len(names) == 1:
            names = names * 3
        if len(names) != 3:
            raise ValueError(f"codec triple needs 1 or 3 names, got {spec!r}")
        return cls(*names, variant=variant)

    @property
    def codecs(self):
        return (self.distance_codec, self.length_codec, self.letter_codec)

    @property
    def label(self):
        return ",".join(c.label for c in self.codecs)

    def phrase_bits(self, ph):
        if ph.kind is PhraseKind.TRIPLE:
            return (code_length(self.distance_codec, ph.d) + code_length(self.length_codec, ph.ell)
                    + code_length(self.letter_codec, ph.c))
        if ph.kind is PhraseKind.LITERAL:
            return TAG_BITS + code_length(self.letter_codec, ph.c)
        return TAG_BITS + code_length(self.distance_codec, ph.d) + code_length(self.length_codec, ph.ell)

    def parsing_bits(self, parsing):
        """Encoded size of ``parsing`` in bits, without materializing it."""
        return sum(self.phrase_bits(ph) for ph in parsing.phrases)


def _check_variant(parsing, model):
    if parsing.variant is not model.variant:
        raise ValueError(f"{parsing.variant.value} parsing under a {model.variant.value} model")


def encode_phrase(ph, model):
    if ph.kind is PhraseKind.TRIPLE:
        return (encode_int(model.distance_codec, ph.d).bits + encode_int(model.length_codec, ph.ell).bits
                + encode_int(model.letter_codec, ph.c).bits)
    if ph.kind is PhraseKind.LITERAL:
        return TAG_LITERAL + encode_int(model.letter_codec, ph.c).bits
    return (TAG_REFERENCE + encode_int(model.distance_codec, ph.d).bits
            + encode_int(model.length_codec, ph.ell).bits)


def encode_parsing(parsing, model):
    _check_variant(parsing, model)
    return BitString("".join(encode_phrase(ph, model) for ph in parsing.phrases))


def decode_parsing(bits, model, count=None):
    """Inverse of :func:`encode_parsing`.

    Without ``count`` the stream is read to its last bit; with ``count``
    exactly that many phrases are read and trailing bits are ignored.
    """
    raw = bits.bits if isinstance(bits, BitString) else str(bits)
    phrases = []
    pos = 0
    classical = model.variant is Variant.CLASSICAL
    while (pos < len(raw)) if count is None else (len(phrases) < count):
        if classical:
            d, pos = decode_int(model.distance_codec, raw, pos)
            ell, pos = decode_int(model.length_codec, raw, pos)
            c, pos = decode_int(model.letter_codec, raw, pos)
            if ell < 1:
                raise MalformedCodeword(f"phrase {len(phrases)} has length 0")
            if ell == 1 and d != 0:
                raise MalformedCodeword(f"phrase {len(phrases)}: length-1 phrase with d = {d}")
            phrases.append(Phrase.triple(d, ell, c))
        else:
            if pos >= len(raw):
                raise TruncatedCodeword(f"missing tag bit at {pos}")
            tag = raw[pos]
            pos += 1
            if tag == TAG_LITERAL:
                c, pos = decode_int(model.letter_codec, raw, pos)
                phrases.append(Phrase.literal(c))
            else:
                d, pos = decode_int(model.distance_codec, raw, pos)
                ell, pos = decode_int(model.length_codec, raw, pos)
                if ell < 1:
                    raise MalformedCodeword(f"phrase {len(phrases)} has length 0")
                phrases.append(Phrase.reference(d, ell))
    return Parsing(phrases, model.variant)


def pack(parsing, model, text_length=None):
    """Serialize to the ``LZRL`` container: header then padded bit payload."""
    bits = encode_parsing(parsing, model)
    if text_length is None:
        text_length = parsing.n
    header = _HEADER.pack(
        MAGIC, FORMAT_VERSION, 0 if model.variant is Variant.CLASSICAL else 1,
        int(model.distance_codec), int(model.length_codec), int(model.letter_codec),
        parsing.z, text_length,
    )
    return header + bits.to_bytes()


def unpack(data):
    """Inverse of :func:`pack`; returns ``(parsing, model, text_length)``."""
    if len(data) < _HEADER.size:
        raise FormatError("file shorter than the LZRL header")
    magic, version, variant, cd, cl, cc, count, text_length = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    if variant not in (0, 1):
        raise FormatError(f"bad variant byte {variant}")
    try:
        model = CostModel(Codec(cd), Codec(cl), Codec(cc),
                          Variant.CLASSICAL if variant == 0 else Variant.NONCLASSICAL)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    bits = BitString.from_bytes(data[_HEADER.size:])
    parsing = decode_parsing(bits, model, count=count)
    if parsing.n != text_length:
        raise FormatError(f"phrases cover {parsing.n} letters, header says {text_length}")
    return parsing, model, text_length
