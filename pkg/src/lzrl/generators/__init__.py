"""Adversarial string families with their cheap witness parsings."""

from ..errors import InvalidParams
from .field import POLYNOMIALS, SUPPORTED_ORDERS, AffinePlane, affine_plane, gf_arith, gf_mul
from .gray import GrayCodeSeq, differing_position, gray_sequence, gray_word
from .gray_families import gen_gray_binary, gen_gray_binary_nc, gen_gray_multi, gen_gray_multi_nc
from .instance import FAMILIES, NONCLASSICAL_FAMILIES, GeneratedInstance, phrases_from_lengths
from .steiner import alphabet_size, blocks_of, gen_steiner, gen_steiner_nc, natural_level, steiner_length


def witness_parse(inst):
    """The explicit cheap parsing built alongside ``inst``; its size bounds the optimum."""
    return inst.witness


def generate(family, n, z=None, sigma=None, x=None):
    """Dispatch on the family name; unused parameters are ignored."""
    if family == "gray_multi":
        return gen_gray_multi(n, sigma, z)
    if family == "gray_multi_nc":
        return gen_gray_multi_nc(n, sigma, z)
    if family == "gray_binary":
        return gen_gray_binary(n, z)
    if family == "gray_binary_nc":
        return gen_gray_binary_nc(n, z)
    if family == "steiner":
        return gen_steiner(n, x)
    if family == "steiner_nc":
        return gen_steiner_nc(n, x)
    raise InvalidParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


__all__ = [
    "FAMILIES",
    "NONCLASSICAL_FAMILIES",
    "POLYNOMIALS",
    "SUPPORTED_ORDERS",
    "AffinePlane",
    "GeneratedInstance",
    "GrayCodeSeq",
    "affine_plane",
    "alphabet_size",
    "blocks_of",
    "differing_position",
    "gen_gray_binary",
    "gen_gray_binary_nc",
    "gen_gray_multi",
    "gen_gray_multi_nc",
    "gen_steiner",
    "gen_steiner_nc",
    "generate",
    "gf_arith",
    "gf_mul",
    "gray_sequence",
    "gray_word",
    "natural_level",
    "phrases_from_lengths",
    "steiner_length",
    "witness_parse",
]
