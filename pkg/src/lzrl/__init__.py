"""Greedy versus bit-optimal LZ77 parsing under universal integer codes."""

__version__ = "0.1.0"

from .bitcodec import BitString, Codec, CostModel, code_length, decode_int, decode_parsing, encode_int, encode_parsing
from .errors import LZRLError
from .kernels import BACKEND
from .optimal import brute_force_optimal, edge_cost, min_phrase_parse, optimal_bits_parse
from .parser import (
    Parsing,
    Phrase,
    PhraseKind,
    Text,
    Variant,
    greedy_parse,
    greedy_parse_classical,
    greedy_parse_nonclassical,
    longest_previous_factor,
    minimize_distances,
    reconstruct,
    validate_parsing,
)

__all__ = [
    "BACKEND",
    "BitString",
    "Codec",
    "CostModel",
    "LZRLError",
    "Parsing",
    "Phrase",
    "PhraseKind",
    "Text",
    "Variant",
    "brute_force_optimal",
    "code_length",
    "decode_int",
    "decode_parsing",
    "edge_cost",
    "encode_int",
    "encode_parsing",
    "greedy_parse",
    "greedy_parse_classical",
    "greedy_parse_nonclassical",
    "longest_previous_factor",
    "min_phrase_parse",
    "minimize_distances",
    "optimal_bits_parse",
    "reconstruct",
    "validate_parsing",
]
