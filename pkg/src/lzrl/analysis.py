"""Bound formulas, lemma validators, structural checks and measurement reports.

All logarithms are base 2.
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import math
from dataclasses import dataclass

from .bitcodec import CostModel
from .errors import DomainError, InstanceTooLarge, InvalidParams
from .generators import GeneratedInstance
from .optimal import optimal_bits_parse
from .parser import Text, Variant, greedy_parse, greedy_parse_classical, minimize_distances, reconstruct

EXACT_OPT_LIMIT = 20_000
MODES = ("exact_opt", "witness", "both")


def count_z(s):
    """Number of phrases in the greedy classical parsing."""
    return greedy_parse_classical(s).z


def _check_domain(n, sigma, z):
    if n < 2 or sigma < 2 or z < sigma:
        raise DomainError(f"bounds need n >= 2, sigma >= 2, z >= sigma (got n={n}, sigma={sigma}, z={z})")


def _loglog(sigma, z):
    # log2(log_sigma z), or None when log_sigma z <= 2 (formula edge)
    inner = math.log(z, sigma)
    if inner <= 2:
        return None
    return math.log2(inner)


def bound_upper(n, sigma, z):
    """``min(z, log n / log log_sigma z)``."""
    _check_domain(n, sigma, z)
    ll = _loglog(sigma, z)
    if ll is None:
        return float(z)
    return min(float(z), math.log2(n) / ll)


def bound_lower(n, sigma, z):
    """``min(z, log n / (log log_sigma z + log sigma))``."""
    _check_domain(n, sigma, z)
    ll = _loglog(sigma, z)
    if ll is None:
        return float(z)
    return min(float(z), math.log2(n) / (ll + math.log2(sigma)))


def min_log_sum(t, k):
    """Least possible ``sum(log t_i)`` over k positive integers summing to at least t."""
    if t < 1 or k < 1:
        raise DomainError("t and k must be positive")
    if k > t:
        raise DomainError(f"k={k} exceeds t={t}")
    return math.log2(t - k + 1)


def _phrase_strings(p, text):
    letters = (text if text is not None else reconstruct(p)).letters
    starts = p.starts()
    return letters, starts


def check_distinct_phrases(p, text=None):
    """``None`` when the greedy distinctness property holds, else a duplicate pair.

    Classical: all phrases but the last are distinct strings.  Nonclassical:
    the strings ``f_i + f_{i+1}[0]`` are distinct.
    """
    if text is not None and not isinstance(text, Text):
        text = Text(text)
    letters, starts = _phrase_strings(p, text)
    seen = {}
    nonclassical = p.variant is Variant.NONCLASSICAL
    count = p.z - 1
    for i in range(count):
        a = starts[i]
        b = a + p.phrases[i].ell + (1 if nonclassical else 0)
        key = letters[a:b].tobytes()
        if key in seen:
            return (seen[key], i)
        seen[key] = i
    return None


def check_overlap_bound(p, g):
    """``None`` when each phrase of ``p`` overlaps at most two phrases of ``g``,
    else the index of the first phrase that overlaps more."""
    gstarts = g.starts()
    for idx, (a, ph) in enumerate(zip(p.starts(), p.phrases)):
        b = a + ph.ell
        first = bisect.bisect_right(gstarts, a) - 1
        last = bisect.bisect_left(gstarts, b) - 1
        if last - first + 1 > 2:
            return idx
    return None


def long_phrase_threshold(z, sigma):
    return 0.5 * math.log(z, sigma) if z > 1 else 0.0


def check_long_phrases(g, sigma):
    """``None`` when at least ``z - 2 sqrt(z)`` phrases reach ``0.5 log_sigma z``
    letters, else the deficit (how many phrases are missing)."""
    z = g.z
    need = z - 2 * math.sqrt(z)
    if need <= 0:
        return None
    if sigma < 2:
        raise DomainError("the long-phrase property needs sigma >= 2")
    threshold = long_phrase_threshold(z, sigma)
    have = sum(1 for ph in g.phrases if ph.ell >= threshold)
    if have >= need:
        return None
    return math.ceil(need - have)


def _region_lengths(parsing, lo, hi):
    starts = parsing.starts()
    i = bisect.bisect_left(starts, lo)
    if i == len(starts) or starts[i] != lo:
        return None
    out = []
    while i < len(starts) and starts[i] < hi:
        out.append(parsing.phrases[i].ell)
        i += 1
    return out


def pair_phrase_count(text, parsing):
    """Phrases ending in ``b c b' d d`` with ``2 <= b < b'``."""
    letters = text.letters
    count = 0
    for a, ph in zip(parsing.starts(), parsing.phrases):
        end = a + ph.ell
        if ph.ell < 5:
            continue
        b, c, b2, d1, d2 = letters[end - 5 : end].tolist()
        if c == 0 and d1 == 1 and d2 == 1 and 2 <= b < b2:
            count += 1
    return count


def expected_suffix_lengths(inst):
    """Phrase lengths greedy should produce over the repeated section, as
    ``(start, lengths)``; ``None`` for families without such a claim."""
    p = inst.params
    if p.get("degenerate"):
        return None
    k, m = p.get("k"), p.get("m")
    blocks = inst.markers.get("suffix_blocks")
    if inst.family == "gray_multi":
        return blocks[0], [m + 1] * k
    if inst.family == "gray_binary":
        return blocks[0], [2 * m + 2] * k
    if inst.family == "gray_multi_nc":
        return blocks[0], [m + 2] * k
    if inst.family == "gray_binary_nc":
        # the trailing 0 joins the last phrase: "0 s_k alpha 0" occurs before the run
        if k == 1:
            return inst.markers["suffix_start"], [2 * m + 5]
        return inst.markers["suffix_start"], [2 * m + 4] + [2 * m + 3] * (k - 2) + [2 * m + 4]
    return None


def check_structure(inst, parsing=None):
    """``None`` when greedy parsing of ``inst`` has the predicted shape,
    else a description of the mismatch."""
    if parsing is None:
        parsing = greedy_parse(inst.text, inst.variant)
    fam = inst.family
    if fam in ("steiner", "steiner_nc"):
        if fam == "steiner":
            want = inst.params["k"]
            got = pair_phrase_count(inst.text, parsing)
            if got != want:
                return f"{got} phrases end in b c b' d d, expected {want}"
        run_start, run_len = inst.markers["run"]
        for a, ph in zip(inst.witness.starts(), inst.witness.phrases):
            inside = run_start <= a < run_start + run_len
            limit = 1 if fam == "steiner_nc" else 2
            if not inside and ph.ell > limit:
                return f"witness phrase at {a} has length {ph.ell} > {limit}"
        return None
    spec = expected_suffix_lengths(inst)
    if spec is None:
        return None
    start, want = spec
    got = _region_lengths(parsing, start, start + sum(want))
    if got != want:
        return f"suffix phrases {got[:8] if got else got} differ from expected {want[:8]}"
    return None


@dataclass
class Report:
    n: int
    sigma: int
    z: int
    variant: str
    codec_d: str
    codec_l: str
    codec_c: str
    bits_greedy: int
    bits_opt: int | None
    bits_witness: int | None
    denominator: str | None
    ratio_lb: float | None
    bound_upper: float | None
    bound_lower: float | None
    family: str | None = None

    COLUMNS = (
        "n", "sigma", "z", "variant", "codec_d", "codec_l", "codec_c", "bits_greedy", "bits_opt",
        "bits_witness", "denominator", "ratio_lb", "bound_upper", "bound_lower",
    )

    def row(self):
        return {key: getattr(self, key) for key in self.COLUMNS}

    def to_json(self):
        return json.dumps(self.row(), sort_keys=False)

    def csv_row(self):
        buf = io.StringIO()
        csv.DictWriter(buf, fieldnames=self.COLUMNS, lineterminator="\n").writerow(
            {k: "" if v is None else v for k, v in self.row().items()}
        )
        return buf.getvalue()


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=Report.COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow({k: "" if v is None else v for k, v in r.row().items()})
    return buf.getvalue()


def _safe_bound(fn, n, sigma, z):
    try:
        return fn(n, sigma, z)
    except DomainError:
        return None


def measure(obj, model=None, mode="both"):
    """Measure greedy, optimal and witness sizes of an instance or a text."""
    if mode not in MODES:
        raise InvalidParams(f"mode must be one of {MODES}")
    inst = obj if isinstance(obj, GeneratedInstance) else None
    text = inst.text if inst else (obj if isinstance(obj, Text) else Text(obj))
    if model is None:
        model = CostModel(variant=inst.variant if inst else Variant.CLASSICAL)
    if mode in ("exact_opt", "both") and text.n > EXACT_OPT_LIMIT and (mode == "exact_opt" or inst is None):
        raise InstanceTooLarge(f"exact optimal parsing is limited to n <= {EXACT_OPT_LIMIT}")

    greedy = greedy_parse(text, model.variant)
    bits_greedy = model.parsing_bits(greedy)
    bits_opt = None
    if mode in ("exact_opt", "both") and text.n <= EXACT_OPT_LIMIT:
        _, bits_opt = optimal_bits_parse(text, model)
    bits_witness = None
    if inst is not None and mode in ("witness", "both") and inst.variant is model.variant:
        bits_witness = model.parsing_bits(minimize_distances(text, inst.witness))

    candidates = [(b, name) for b, name in ((bits_opt, "opt"), (bits_witness, "witness")) if b is not None]
    if candidates:
        denom, denominator = min(candidates)
        ratio = bits_greedy / denom if denom else None
    else:
        denominator, ratio = None, None

    z = greedy.z if model.variant is Variant.CLASSICAL else count_z(text)
    sigma = text.sigma
    return Report(
        n=text.n,
        sigma=sigma,
        z=z,
        variant=model.variant.value,
        codec_d=model.distance_codec.label,
        codec_l=model.length_codec.label,
        codec_c=model.letter_codec.label,
        bits_greedy=bits_greedy,
        bits_opt=bits_opt,
        bits_witness=bits_witness,
        denominator=denominator,
        ratio_lb=ratio,
        bound_upper=_safe_bound(bound_upper, text.n, sigma, z),
        bound_lower=_safe_bound(bound_lower, text.n, sigma, z),
        family=inst.family if inst else None,
    )
