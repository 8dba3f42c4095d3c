import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lzrl.bitcodec import (
    BitString,
    Codec,
    CostModel,
    code_length,
    code_length_table,
    decode_int,
    decode_parsing,
    encode_int,
    encode_parsing,
    pack,
    unpack,
)
from lzrl.errors import FormatError, MalformedCodeword, TruncatedCodeword
from lzrl.parser import Parsing, Phrase, Text, Variant, greedy_parse, greedy_parse_classical

from conftest import random_text


def gamma_reference(v):
    # v >= 1: floor(log2 v) zeros then v in binary
    b = bin(v)[2:]
    return "0" * (len(b) - 1) + b


def delta_reference(v):
    b = bin(v)[2:]
    return gamma_reference(len(b)) + b[1:]


def levenshtein_reference(v):
    # textbook form on v >= 0, with C(0) = "0"
    if v == 0:
        return "0"
    code, steps, m = "", 1, v
    while True:
        tail = bin(m)[3:]
        code = tail + code
        if not tail:
            break
        steps += 1
        m = len(tail)
    return "1" * steps + "0" + code


REFERENCE = {Codec.GAMMA: gamma_reference, Codec.DELTA: delta_reference, Codec.LEVENSHTEIN: levenshtein_reference}


@pytest.mark.parametrize(
    "codec,x,bits",
    [
        (Codec.GAMMA, 0, "1"),
        (Codec.GAMMA, 4, "00101"),
        (Codec.DELTA, 0, "1"),
        (Codec.DELTA, 3, "01100"),
        (Codec.LEVENSHTEIN, 0, "10"),
        (Codec.LEVENSHTEIN, 1, "1100"),
        (Codec.LEVENSHTEIN, 3, "1110000"),
    ],
)
def test_known_codewords(codec, x, bits):
    assert encode_int(codec, x) == bits


@pytest.mark.parametrize("codec", list(Codec))
def test_matches_textbook_definition_of_x_plus_one(codec):
    for x in range(5000):
        assert encode_int(codec, x).bits == REFERENCE[codec](x + 1)


def test_code_length_examples():
    assert code_length(Codec.GAMMA, 0) == 1
    assert code_length(Codec.GAMMA, 4) == 5
    assert code_length(Codec.DELTA, 16) == len(gamma_reference(5)) + 4 == 9


@pytest.mark.parametrize("codec", list(Codec))
def test_round_trip_full_range(codec):
    # one long stream covers [0..10^6] with shared offsets
    xs = range(0, 1_000_001)
    stream = "".join(encode_int(codec, x).bits for x in xs)
    pos = 0
    for x in xs:
        value, pos = decode_int(codec, stream, pos)
        assert value == x
    assert pos == len(stream)


@pytest.mark.parametrize("codec", list(Codec))
def test_prefix_free(codec):
    words = sorted(encode_int(codec, x).bits for x in range(2 ** 14 + 1))
    for a, b in zip(words, words[1:]):
        assert not b.startswith(a)


@pytest.mark.parametrize("codec", list(Codec))
def test_monotone_lengths_and_envelope(codec):
    table = code_length_table(codec, 1_000_000)
    assert np.all(np.diff(table) >= 0)
    x = np.arange(len(table))
    lower = np.floor(np.log2(x + 1)) + 1
    upper = 4 * np.log2(x + 2) + 4
    assert np.all(table >= lower)
    assert np.all(table <= upper)


def test_gamma_length_formula():
    for x in range(100_000):
        assert code_length(Codec.GAMMA, x) == 2 * int(math.floor(math.log2(x + 1))) + 1


@given(st.sampled_from(list(Codec)), st.integers(min_value=0, max_value=2 ** 70))
def test_code_length_agrees_with_encoding(codec, x):
    assert code_length(codec, x) == len(encode_int(codec, x))


@given(st.sampled_from(list(Codec)), st.integers(min_value=0, max_value=10 ** 9), st.text("01", max_size=20))
def test_decode_ignores_tail(codec, x, tail):
    word = encode_int(codec, x)
    assert decode_int(codec, BitString(word.bits + tail), 0) == (x, len(word))


def test_decode_errors():
    assert decode_int(Codec.GAMMA, "1", 0) == (0, 1)
    assert decode_int(Codec.GAMMA, "001011", 0) == (4, 5)
    with pytest.raises(TruncatedCodeword):
        decode_int(Codec.GAMMA, "00", 0)
    with pytest.raises(TruncatedCodeword):
        decode_int(Codec.DELTA, "0110", 0)
    with pytest.raises(TruncatedCodeword):
        decode_int(Codec.LEVENSHTEIN, "111", 0)
    with pytest.raises(MalformedCodeword):
        decode_int(Codec.LEVENSHTEIN, "0", 0)


def test_negative_rejected():
    with pytest.raises(ValueError):
        encode_int(Codec.GAMMA, -1)


def test_bitstring_basics():
    a, b, c = BitString("10"), BitString("0"), BitString("111")
    empty = BitString()
    assert (a + b) + c == a + (b + c)
    assert a + empty == a == empty + a
    assert len(a + c) == 5
    assert BitString("1").to_bytes() == b"\x80"
    assert BitString.from_bytes(b"\x80", 3) == "100"
    with pytest.raises(ValueError):
        BitString("102")


def test_codec_names():
    assert Codec.parse("Levenshtein") is Codec.LEVENSHTEIN
    assert CostModel.from_spec("delta").codecs == (Codec.DELTA,) * 3
    with pytest.raises(ValueError):
        Codec.parse("rice")


def test_encode_single_phrase_and_empty():
    model = CostModel()
    p = Parsing([Phrase.triple(0, 1, 0)])
    assert encode_parsing(p, model) == "1" + "010" + "1"
    assert encode_parsing(Parsing([]), model) == ""
    assert decode_parsing(BitString(), model) == Parsing([])


def test_encode_example_length():
    text = Text.from_str("abababbbaba")
    p = greedy_parse_classical(text)
    model = CostModel()
    expected = sum(code_length(Codec.GAMMA, ph.d) + code_length(Codec.GAMMA, ph.ell) + code_length(Codec.GAMMA, ph.c) for ph in p)
    bits = encode_parsing(p, model)
    assert len(bits) == expected == model.parsing_bits(p)
    assert decode_parsing(bits, model) == p


def test_nonclassical_tags():
    model = CostModel(variant=Variant.NONCLASSICAL)
    p = Parsing([Phrase.literal(0), Phrase.reference(0, 3)], Variant.NONCLASSICAL)
    assert encode_parsing(p, model) == "0" + "1" + "1" + "1" + "00100"


def test_truncated_stream():
    text = Text.from_str("abababbbaba")
    bits = encode_parsing(greedy_parse_classical(text), CostModel())
    with pytest.raises(TruncatedCodeword):
        decode_parsing(bits[:-1], CostModel())


@pytest.mark.parametrize("variant", list(Variant))
def test_parsing_round_trip_random(variant):
    rng = random.Random(7)
    models = [CostModel(*triple, variant=variant) for triple in
              [(Codec.GAMMA,) * 3, (Codec.DELTA,) * 3, (Codec.LEVENSHTEIN,) * 3, (Codec.DELTA, Codec.GAMMA, Codec.LEVENSHTEIN)]]
    for i in range(1000):
        text = random_text(rng, rng.randint(1, 200), rng.randint(1, 8))
        model = models[i % len(models)]
        p = greedy_parse(text, variant)
        bits = encode_parsing(p, model)
        assert len(bits) == model.parsing_bits(p)
        assert decode_parsing(bits, model) == p


def test_container_round_trip():
    text = Text.from_str("abracadabra abracadabra")
    for variant in Variant:
        model = CostModel(Codec.DELTA, Codec.LEVENSHTEIN, Codec.GAMMA, variant)
        p = greedy_parse(text, variant)
        data = pack(p, model)
        assert data[:4] == b"LZRL"
        assert data[4] == 1
        assert data[5] == (0 if variant is Variant.CLASSICAL else 1)
        assert tuple(data[6:9]) == (1, 2, 0)
        assert int.from_bytes(data[9:17], "little") == p.z
        assert int.from_bytes(data[17:25], "little") == text.n
        assert len(data) == 25 + (model.parsing_bits(p) + 7) // 8
        q, m2, n = unpack(data)
        assert (q, m2, n) == (p, model, text.n)


def test_container_errors():
    with pytest.raises(FormatError):
        unpack(b"NOPE" + bytes(30))
    with pytest.raises(FormatError):
        unpack(b"LZ")
