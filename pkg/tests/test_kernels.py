"""Both kernel backends against naive definitions and against each other."""

import random
import subprocess
import sys

import numpy as np
import pytest

from lzrl import kernels
from lzrl.bitcodec import Codec, code_length_table

BACKENDS = kernels.available_backends()


def naive_sa(s):
    return sorted(range(len(s)), key=lambda i: s[i:])


def lcp(s, i, j):
    h = 0
    while i + h < len(s) and j + h < len(s) and s[i + h] == s[j + h]:
        h += 1
    return h


def corpus(seed=3, count=150):
    rng = random.Random(seed)
    out = [[0], [0, 0], [1, 0], [0] * 50, [0, 1] * 20]
    for _ in range(count):
        n = rng.randint(1, 120)
        sigma = rng.choice([1, 2, 3, 5, 30])
        out.append([rng.randrange(sigma) for _ in range(n)])
    return out


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def test_compiled_backend_is_default():
    assert kernels.BACKEND in BACKENDS
    if "cython" in BACKENDS:
        assert kernels.BACKEND == "cython"


def test_suffix_array_and_lcp(backend):
    for s in corpus():
        arr = np.array(s, dtype=np.int32)
        sa = backend.suffix_array(arr, max(s) + 1)
        assert sa.tolist() == naive_sa(s)
        rank, lcp_arr = backend.lcp_array(arr, sa)
        assert all(rank[p] == r for r, p in enumerate(sa.tolist()))
        assert lcp_arr.tolist() == [0] + [lcp(s, sa[r - 1], sa[r]) for r in range(1, len(s))]


def test_factor_lengths_and_sources(backend):
    for s in corpus():
        arr = np.array(s, dtype=np.int32)
        sa = backend.suffix_array(arr, max(s) + 1)
        rank, lcp_arr = backend.lcp_array(arr, sa)
        prev_src, next_src = backend.smaller_neighbours(sa)
        lengths = backend.factor_lengths(arr, prev_src, next_src)
        want = [max([lcp(s, i, j) for j in range(i)], default=0) for i in range(len(s))]
        assert lengths.tolist() == want
        pos = np.arange(len(s), dtype=np.int32)
        src = backend.rightmost_sources(sa, rank, lcp_arr, pos, lengths)
        for i, (t, j) in enumerate(zip(want, src.tolist())):
            if t == 0:
                assert j == -1
            else:
                assert j == max(j2 for j2 in range(i) if lcp(s, i, j2) >= t)


def _optimal_inputs(s):
    arr = np.array(s, dtype=np.int32)
    n = len(s)
    return (arr, code_length_table(Codec.GAMMA, n), code_length_table(Codec.DELTA, n + 1),
            code_length_table(Codec.LEVENSHTEIN, max(s)))


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@pytest.mark.parametrize("nonclassical", [False, True])
def test_backends_agree(nonclassical):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for s in corpus(seed=11, count=200):
        arr = np.array(s, dtype=np.int32)
        out = []
        for mod in (py, cy):
            sa = mod.suffix_array(arr, max(s) + 1)
            rank, lcp_arr = mod.lcp_array(arr, sa)
            prev_src, next_src = mod.smaller_neighbours(sa)
            greedy = mod.greedy_factorize(arr, sa, rank, lcp_arr, prev_src, next_src, nonclassical)
            opt = mod.optimal_parse(*_optimal_inputs(s), nonclassical, 1)
            out.append((sa.tolist(), lcp_arr.tolist(), prev_src.tolist(), next_src.tolist(),
                        [g.tolist() for g in greedy], opt[0], opt[1].tolist(), opt[2].tolist()))
        assert out[0] == out[1]


def test_pure_python_flag_selects_fallback():
    code = "import lzrl.kernels as k; print(k.BACKEND)"
    env = {"LZRL_PURE_PYTHON": "1", "PATH": ""}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
