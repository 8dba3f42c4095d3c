import itertools
import math
from math import comb

import pytest

from lzrl.analysis import check_structure, pair_phrase_count
from lzrl.bitcodec import CostModel
from lzrl.errors import InstanceTooSmall, InvalidParams, UnsupportedOrder
from lzrl.generators import (
    FAMILIES,
    affine_plane,
    alphabet_size,
    blocks_of,
    gen_gray_binary,
    gen_gray_binary_nc,
    gen_gray_multi,
    gen_gray_multi_nc,
    gen_steiner,
    gen_steiner_nc,
    generate,
    gf_arith,
    gray_sequence,
    natural_level,
    steiner_length,
    witness_parse,
)
from lzrl.optimal import optimal_bits_parse
from lzrl.parser import Variant, greedy_parse, validate_parsing


def hamming(u, v):
    return sum(a != b for a, b in zip(u, v))


def test_gray_small_examples():
    assert [list(w) for w in gray_sequence(2, 2, 0)] == [[1, 0], [1, 1], [0, 1], [0, 0]]
    assert [list(w) for w in gray_sequence(2, 1, 0)] == [[1], [0]]


@pytest.mark.parametrize("tau,m", [(2, 1), (2, 5), (3, 2), (3, 4), (4, 3), (7, 2)])
def test_gray_invariants(tau, m):
    seq = gray_sequence(tau, m, terminal=5)
    assert len(seq) == tau ** m == len(set(seq.words))
    assert all(hamming(u, v) == 1 for u, v in zip(seq.words, seq.words[1:]))
    assert seq[-1] == (5,) * m
    assert all(5 <= c < 5 + tau for w in seq.words for c in w)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_field_axioms_exhaustive(k):
    q = 1 << k
    for a in range(q):
        assert gf_arith(k, "add", a, a) == 0
        assert gf_arith(k, "mul", 1, a) == a
        for b, c in itertools.product(range(q), repeat=2):
            left = gf_arith(k, "mul", a, gf_arith(k, "add", b, c))
            right = gf_arith(k, "add", gf_arith(k, "mul", a, b), gf_arith(k, "mul", a, c))
            assert left == right
        if a:
            assert sum(gf_arith(k, "mul", a, b) == 1 for b in range(q)) == 1


def test_gf256_inverses():
    for a in range(1, 256):
        assert sum(gf_arith(8, "mul", a, b) == 1 for b in range(256)) == 1


def test_field_errors():
    with pytest.raises(UnsupportedOrder):
        gf_arith(3, "mul", 1, 1)
    with pytest.raises(ValueError):
        gf_arith(2, "mul", 4, 1)


@pytest.mark.parametrize("q", [2, 4, 16, 256])
def test_affine_plane_is_steiner(q):
    plane = affine_plane(q)
    assert plane.line_count == q * (q + 1) == plane.expected_line_count() == comb(q * q, 2) // comb(q, 2)
    if q > 16:
        return
    seen = {}
    for idx, line in enumerate(plane.lines.tolist()):
        assert len(set(line)) == q
        for pair in itertools.combinations(line, 2):
            assert pair not in seen
            seen[pair] = idx
    assert len(seen) == comb(q * q, 2)


def test_affine_plane_order_two_is_all_pairs():
    lines = sorted(map(tuple, affine_plane(2).lines.tolist()))
    assert lines == list(itertools.combinations(range(4), 2))


def test_affine_plane_rejects_other_orders():
    with pytest.raises(UnsupportedOrder):
        affine_plane(8)


def test_steiner_lengths():
    assert [steiner_length(i) for i in range(3)] == [9, 62, 1272]
    for x in range(1, 4):
        size = alphabet_size(x)
        assert steiner_length(x) == 2 * size + comb(size, 2) // comb(alphabet_size(x - 1), 2) * steiner_length(x - 1)
        # the recursion stays within a small multiple of C(|A|, 2); 10 is slightly too tight
        assert steiner_length(x) <= 11 * comb(size, 2)


def test_natural_level():
    assert natural_level(2 ** 10) == 1
    assert natural_level(2 ** 15) == 1
    # 2^2 = sqrt(16) is not strictly larger
    assert natural_level(2 ** 16) == 2
    assert alphabet_size(natural_level(2 ** 24)) > math.sqrt(24)


def _lowest_pairs(letters):
    if len(letters) == 2:
        return [tuple(letters)]
    return [p for b in blocks_of(letters) for p in _lowest_pairs(b)]


@pytest.mark.parametrize("x", [1, 2, 3])
def test_every_pair_is_a_lowest_block_once(x):
    letters = list(range(2, alphabet_size(x) + 2))
    pairs = _lowest_pairs(letters)
    assert sorted(pairs) == list(itertools.combinations(letters, 2))


@pytest.mark.parametrize("x", [1, 2])
def test_blocks_form_steiner_system_at_every_level(x):
    stack = [list(range(2, alphabet_size(x) + 2))]
    while stack:
        letters = stack.pop()
        if len(letters) == 2:
            continue
        blocks = blocks_of(letters)
        covered = [p for b in blocks for p in itertools.combinations(b, 2)]
        assert sorted(covered) == list(itertools.combinations(letters, 2))
        stack += blocks


@pytest.mark.parametrize("x,n", [(1, 400), (2, 6000)])
def test_steiner_instance(x, n):
    inst = gen_steiner(n, x=x)
    letters = inst.text.tolist()
    size = alphabet_size(x)
    L = steiner_length(x)
    assert inst.n == n and inst.params["ell"] == n - 2 * L >= n / 2
    assert set(letters) <= set(range(size + 2)) and inst.text.sigma == size + 2
    assert letters[L : L + inst.params["ell"]] == [0] * inst.params["ell"]
    assert validate_parsing(inst.text, inst.witness) is None
    # each b c b' c b c b' d occurs once in r'(A) and once in r(A)
    for b, b2 in itertools.combinations(range(2, size + 2), 2):
        needle = [b, 0, b2, 0, b, 0, b2, 1]
        hits = [i for i in range(n - 7) if letters[i : i + 8] == needle]
        assert len(hits) == 2 and hits[0] < L <= L + inst.params["ell"] <= hits[1]
    assert pair_phrase_count(inst.text, greedy_parse(inst.text)) == comb(size, 2)
    assert check_structure(inst) is None


def test_steiner_witness_phrase_lengths():
    for inst, limit in ((gen_steiner(400, x=1), 2), (gen_steiner_nc(400, x=1), 1)):
        run_start, run_len = inst.markers["run"]
        for a, ph in zip(inst.witness.starts(), inst.witness):
            if not run_start <= a < run_start + run_len:
                assert ph.ell <= limit


def test_steiner_too_small():
    with pytest.raises(InstanceTooSmall):
        gen_steiner(200, x=1)
    with pytest.raises(InvalidParams):
        gen_steiner(10 ** 6, x=7)


GRAY_CASES = [
    ("gray_multi", dict(n=300, sigma=4, z=9)),
    ("gray_multi", dict(n=300, sigma=4, z=4)),
    ("gray_multi", dict(n=10 ** 4, sigma=4, z=64)),
    ("gray_multi", dict(n=2000, sigma=7, z=30)),
    ("gray_multi", dict(n=30, sigma=8, z=8)),
    ("gray_binary", dict(n=4096, z=32)),
    ("gray_binary", dict(n=4096, z=2)),
    ("gray_binary", dict(n=2 ** 16, z=64)),
    ("gray_multi_nc", dict(n=300, sigma=4, z=9)),
    ("gray_multi_nc", dict(n=5000, sigma=5, z=50)),
    ("gray_binary_nc", dict(n=4096, z=32)),
    ("gray_binary_nc", dict(n=4096, z=2)),
    ("gray_binary_nc", dict(n=500, z=3)),
    ("steiner", dict(n=300, x=1)),
    ("steiner_nc", dict(n=300, x=1)),
]


@pytest.mark.parametrize("family,kw", GRAY_CASES)
def test_instance_contract(family, kw):
    inst = generate(family, **kw)
    assert inst.family == family and inst.n == kw["n"]
    assert witness_parse(inst).variant is inst.variant
    assert validate_parsing(inst.text, inst.witness) is None
    assert check_structure(inst) is None
    if not inst.params.get("degenerate") and family.startswith("gray"):
        assert 4 * inst.params["k"] >= kw["z"]
        assert inst.params["ell"] >= kw["n"] / 2


def test_gray_multi_layout():
    inst = gen_gray_multi(300, 4, 9)
    m, k, ell = (inst.params[key] for key in ("m", "k", "ell"))
    assert ell == 300 - k * (2 * m + 1) - 1 - inst.markers["tail"][1]
    letters = inst.text.tolist()
    words = gray_sequence(3, m, terminal=2).words[:k]
    assert letters[: k * m] == [c for w in words for c in w]
    for start, w in zip(inst.markers["suffix_blocks"], words):
        assert letters[start : start + m + 1] == list(w) + [1]
    g = greedy_parse(inst.text)
    starts = g.starts()
    for start in inst.markers["suffix_blocks"]:
        assert start in starts


def test_gray_binary_flags():
    inst = gen_gray_binary(4096, 32)
    m, k = inst.params["m"], inst.params["k"]
    words = gray_sequence(2, m, 0).words[:k]
    flags = inst.markers["flags"]
    assert flags[-1] == 1
    for i in range(k - 1):
        assert flags[i] == (0 if words[i + 1][0] == 1 else 1)
    letters = inst.text.tolist()
    for start, w, c in zip(inst.markers["suffix_blocks"], words, flags):
        assert letters[start : start + 2 * m + 2] == list(w) + [0] * m + [1, c]


def test_nonclassical_suffix_phrases():
    inst = gen_gray_multi_nc(300, 4, 9)
    m = inst.params["m"]
    g = greedy_parse(inst.text, Variant.NONCLASSICAL)
    text = inst.text.tolist()
    by_start = dict(zip(g.starts(), g.phrases))
    for start in inst.markers["suffix_blocks"]:
        ph = by_start[start]
        assert ph.ell == m + 2
        assert text[start] == 1 and text[start + m + 1] == 1
    inst = gen_gray_binary_nc(4096, 32)
    m = inst.params["m"]
    g = greedy_parse(inst.text, Variant.NONCLASSICAL)
    by_start = dict(zip(g.starts(), g.phrases))
    first = inst.markers["suffix_start"]
    assert by_start[first].ell == 2 * m + 4
    letters = inst.text.tolist()
    assert letters[first : first + 2] == [1, 0]


@pytest.mark.parametrize(
    "call",
    [
        lambda: gen_gray_multi(300, 2, 9),
        lambda: gen_gray_multi(300, 4, 3),
        lambda: gen_gray_multi(300, 4, 200),
        lambda: gen_gray_binary(3, 2),
        lambda: gen_gray_binary(4096, 1),
        lambda: gen_gray_binary(4096, 4000),
        lambda: gen_gray_multi_nc(300, 5, 2),
        lambda: gen_gray_binary_nc(4096, 10 ** 5),
        lambda: generate("nope", 100),
    ],
)
def test_invalid_params(call):
    with pytest.raises(InvalidParams):
        call()


def test_degenerate_branch():
    inst = gen_gray_multi(20, 8, 8)
    assert inst.params["degenerate"] and inst.n == 20
    assert validate_parsing(inst.text, inst.witness) is None


def test_generation_is_deterministic():
    for family in FAMILIES:
        kw = dict(n=1200, z=12, sigma=4, x=1)
        a, b = generate(family, **kw), generate(family, **kw)
        assert a.text == b.text and a.witness == b.witness and a.sidecar_json() == b.sidecar_json()


@pytest.mark.parametrize("family,kw", [c for c in GRAY_CASES if c[1]["n"] <= 5000])
def test_witness_dominates_optimum(family, kw):
    inst = generate(family, **kw)
    model = CostModel(variant=inst.variant)
    assert optimal_bits_parse(inst.text, model)[1] <= model.parsing_bits(inst.witness)


def test_sidecar_fields():
    side = gen_gray_binary(4096, 32).sidecar()
    assert {"family", "n", "sigma", "z", "k", "ell", "m", "x", "markers"} <= set(side)
