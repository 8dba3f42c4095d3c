"""Suffix-array index answering previous-occurrence queries on one text."""

import numpy as np

from . import kernels


class SubstringIndex:
    """Suffix array, inverse, LCP and smaller-neighbour arrays of a text.

    Built once per text in O(n) with the compiled backend.  A rightmost
    occurrence query scans the suffix-array interval of its pattern, so it
    costs O(occurrences) rather than O(log n).
    """

    def __init__(self, letters):
        self.letters = np.ascontiguousarray(letters, dtype=np.int32)
        self.n = len(self.letters)
        self.sa = kernels.suffix_array(self.letters, int(self.letters.max()) + 1)
        self.rank, self.lcp = kernels.lcp_array(self.letters, self.sa)
        self.prev_src, self.next_src = kernels.smaller_neighbours(self.sa)

    def factor_lengths(self):
        """Longest ``L`` such that ``text[i:i+L]`` starts earlier, per ``i``."""
        return kernels.factor_lengths(self.letters, self.prev_src, self.next_src)

    def rightmost_sources(self, positions, lengths):
        positions = np.ascontiguousarray(positions, dtype=np.int32)
        lengths = np.ascontiguousarray(lengths, dtype=np.int32)
        return kernels.rightmost_sources(self.sa, self.rank, self.lcp, positions, lengths)

    def greedy(self, nonclassical=False):
        return kernels.greedy_factorize(
            self.letters, self.sa, self.rank, self.lcp, self.prev_src, self.next_src, nonclassical
        )
