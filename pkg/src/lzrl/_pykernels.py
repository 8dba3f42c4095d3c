"""Pure-Python implementations of the hot loops.

Every function here has a compiled twin in ``_ckernels.pyx`` with the same
signature and the same results.  Arrays going in and out are numpy ``int32``
(``int64`` for cost tables); positions are 0-based and ``-1`` marks "none".
"""

import numpy as np

BACKEND = "python"


def suffix_array(s, alphabet_size):
    """Suffix array of ``s`` by prefix doubling (O(n log^2 n), numpy sorts)."""
    n = len(s)
    if n == 0:
        return np.empty(0, dtype=np.int32)
    _, rank = np.unique(np.asarray(s), return_inverse=True)
    rank = rank.astype(np.int64).ravel()
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        first_sorted = rank[sa]
        second_sorted = second[sa]
        step = np.empty(n, dtype=np.int64)
        step[0] = 0
        step[1:] = (first_sorted[1:] != first_sorted[:-1]) | (second_sorted[1:] != second_sorted[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(step)
        rank = new_rank
        if rank[sa[-1]] == n - 1 or k >= n:
            break
        k *= 2
    return sa.astype(np.int32)


def lcp_array(s, sa):
    """Return ``(rank, lcp)`` with ``lcp[r] = lcp(sa[r-1], sa[r])`` (Kasai)."""
    n = len(s)
    text = s.tolist()
    sal = sa.tolist()
    rank = [0] * n
    for r, p in enumerate(sal):
        rank[p] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sal[r - 1]
            while i + h < n and j + h < n and text[i + h] == text[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return np.array(rank, dtype=np.int32), np.array(lcp, dtype=np.int32)


def smaller_neighbours(sa):
    """For every text position p, the text positions of the nearest suffixes
    before and after p in suffix-array order that start left of p."""
    n = len(sa)
    sal = sa.tolist()
    prev_src = [-1] * n
    next_src = [-1] * n
    stack = []
    for p in sal:
        while stack and stack[-1] > p:
            stack.pop()
        prev_src[p] = stack[-1] if stack else -1
        stack.append(p)
    stack = []
    for p in reversed(sal):
        while stack and stack[-1] > p:
            stack.pop()
        next_src[p] = stack[-1] if stack else -1
        stack.append(p)
    return np.array(prev_src, dtype=np.int32), np.array(next_src, dtype=np.int32)


def _lcp_direct(text, n, i, j):
    if j < 0:
        return 0
    h = 0
    while i + h < n and text[i + h] == text[j + h]:
        h += 1
    return h


def _rightmost(sal, lcpl, n, r, i, t):
    best = -1
    k = r
    while k > 0 and lcpl[k] >= t:
        k -= 1
        p = sal[k]
        if best < p < i:
            best = p
    k = r + 1
    while k < n and lcpl[k] >= t:
        p = sal[k]
        if best < p < i:
            best = p
        k += 1
    return best


def factor_lengths(s, prev_src, next_src):
    """Longest previous factor length at every position."""
    n = len(s)
    text = s.tolist()
    prev_l = prev_src.tolist()
    next_l = next_src.tolist()
    out = [0] * n
    for i in range(n):
        out[i] = max(_lcp_direct(text, n, i, prev_l[i]), _lcp_direct(text, n, i, next_l[i]))
    return np.array(out, dtype=np.int32)


def rightmost_sources(sa, rank, lcp, positions, lengths):
    """For each query ``(i, t)`` the largest ``j < i`` with ``lcp(j, i) >= t``.

    Scans the suffix-array interval of the pattern, so one query costs
    O(occurrences).  Returns -1 where no such ``j`` exists or ``t == 0``.
    """
    n = len(sa)
    sal = sa.tolist()
    lcpl = lcp.tolist()
    rankl = rank.tolist()
    out = []
    for i, t in zip(positions.tolist(), lengths.tolist()):
        out.append(_rightmost(sal, lcpl, n, rankl[i], i, t) if t > 0 else -1)
    return np.array(out, dtype=np.int32)


def greedy_factorize(s, sa, rank, lcp, prev_src, next_src, nonclassical):
    """Greedy LZ77 factorization with rightmost sources.

    Returns ``(lengths, sources)``; ``sources[k] == -1`` marks a phrase with
    nothing copied (classical length-1 phrase or nonclassical literal).
    """
    n = len(s)
    text = s.tolist()
    sal = sa.tolist()
    lcpl = lcp.tolist()
    rankl = rank.tolist()
    prev_l = prev_src.tolist()
    next_l = next_src.tolist()
    lengths = []
    sources = []
    i = 0
    while i < n:
        longest = max(_lcp_direct(text, n, i, prev_l[i]), _lcp_direct(text, n, i, next_l[i]))
        if nonclassical:
            if longest == 0:
                ell, copied = 1, 0
            else:
                ell = copied = longest
        else:
            ell = min(longest + 1, n - i)
            copied = ell - 1
        src = _rightmost(sal, lcpl, n, rankl[i], i, copied) if copied else -1
        lengths.append(ell)
        sources.append(src)
        i += ell
    return np.array(lengths, dtype=np.int32), np.array(sources, dtype=np.int32)


def optimal_parse(s, len_d, len_l, len_c, nonclassical, tag_bits):
    """Cheapest parsing by a backward shortest-path sweep over positions.

    ``len_d[d]``, ``len_l[ell]`` and ``len_c[c]`` are codeword lengths.  The
    row ``row[j] = lcp(j, i)`` for all ``j < i`` is rolled from ``i + 1`` to
    ``i`` in place, giving every feasible edge out of ``i`` with its
    rightmost source.  Ties prefer the longer phrase.

    Returns ``(total, lengths, sources)`` indexed by phrase start.
    """
    n = len(s)
    text = s.tolist()
    ld = len_d.tolist()
    ll = len_l.tolist()
    lc = len_c.tolist()
    dist = [0] * (n + 1)
    ell_choice = [0] * n
    src_choice = [-1] * n
    row = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        c = text[i]
        for j in range(i):
            row[j] = row[j + 1] + 1 if text[j] == c else 0
        rem = n - i
        if nonclassical:
            best = tag_bits + lc[c] + dist[i + 1]
            cap = rem
        else:
            best = ld[0] + ll[1] + lc[c] + dist[i + 1]
            cap = rem - 1
        best_ell, best_src = 1, -1
        m = 0
        if cap > 0:
            for j in range(i - 1, -1, -1):
                v = row[j]
                if v > m:
                    if v > cap:
                        v = cap
                    d = i - 1 - j
                    for t in range(m + 1, v + 1):
                        if nonclassical:
                            ell = t
                            cost = tag_bits + ld[d] + ll[ell] + dist[i + ell]
                        else:
                            ell = t + 1
                            cost = ld[d] + ll[ell] + lc[text[i + ell - 1]] + dist[i + ell]
                        if cost < best or (cost == best and ell > best_ell):
                            best, best_ell, best_src = cost, ell, j
                    m = v
                    if m >= cap:
                        break
        dist[i] = best
        ell_choice[i] = best_ell
        src_choice[i] = best_src
    return dist[0], np.array(ell_choice, dtype=np.int32), np.array(src_choice, dtype=np.int32)
