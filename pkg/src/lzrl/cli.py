"""Command-line interface: ``lzrl <command> [options]``."""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .analysis import (
    check_distinct_phrases,
    check_long_phrases,
    check_overlap_bound,
    check_structure,
    measure,
    min_log_sum,
    reports_to_csv,
)
from .bitcodec import CostModel, pack, unpack
from .errors import InvalidParams, LZRLError
from .generators import FAMILIES, generate
from .optimal import brute_force_optimal, min_phrase_parse, optimal_bits_parse
from .parser import Text, Variant, check_parsing, greedy_parse, reconstruct

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


class CheckFailed(Exception):
    pass


def parse_int(token):
    """Accept ``4096``, ``2^12`` or ``2**12``."""
    token = token.strip()
    for sep in ("**", "^"):
        if sep in token:
            base, exp = token.split(sep, 1)
            return int(base) ** int(exp)
    return int(token)


def parse_n_list(value):
    values = [parse_int(tok) for tok in value.split(",") if tok.strip()]
    if not values:
        raise argparse.ArgumentTypeError("need at least one n")
    return values


def resolve_z(rule, n):
    if rule is None:
        return None
    if rule == "log":
        return math.ceil(math.log2(n))
    if rule == "sqrt":
        return math.isqrt(n - 1) + 1 if n > 1 else 1
    return parse_int(rule)


def thread_cap():
    raw = os.environ.get("LZRL_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InvalidParams(f"LZRL_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def read_text(path, as_bytes=False):
    if as_bytes:
        data = Path(path).read_bytes()
        return Text(list(data))
    tokens = Path(path).read_text().split()
    try:
        return Text([int(tok) for tok in tokens])
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def format_text(text):
    return " ".join(map(str, text.tolist())) + "\n"


def write_text(text, path, as_bytes=False):
    if as_bytes:
        if int(text.letters.max()) > 255:
            raise ValueError("letters above 255 cannot be written as bytes")
        _write(path, bytes(text.tolist()))
    else:
        _write(path, format_text(text))


def _write(path, payload):
    if path in (None, "-"):
        if isinstance(payload, bytes):
            sys.stdout.buffer.write(payload)
        else:
            sys.stdout.write(payload)
        return
    mode = "wb" if isinstance(payload, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(payload)


def model_from(args):
    return CostModel.from_spec(args.codec, variant=args.variant)


def _parse_with(text, variant, how, model=None):
    if how == "greedy":
        return greedy_parse(text, variant)
    if how == "optimal":
        return optimal_bits_parse(text, model or CostModel(variant=variant))[0]
    if how == "min_phrases":
        return min_phrase_parse(text, variant)
    raise InvalidParams(f"unknown parser {how!r}")


def _instance(args, n):
    return generate(args.family, n, z=resolve_z(args.z, n), sigma=args.sigma, x=args.x)


def cmd_gen(args):
    inst = _instance(args, args.n[0])
    check_parsing(inst.text, inst.witness)
    write_text(inst.text, args.out)
    if args.out not in (None, "-"):
        Path(str(args.out) + ".json").write_text(inst.sidecar_json() + "\n")
    return EXIT_OK


def cmd_parse(args):
    text = read_text(args.input, args.bytes)
    parsing = _parse_with(text, Variant(args.variant), args.parser, model_from(args))
    check_parsing(text, parsing)
    _write(args.out, parsing.to_json() + "\n")
    return EXIT_OK


def cmd_encode(args):
    text = read_text(args.input, args.bytes)
    model = model_from(args)
    parsing = _parse_with(text, model.variant, args.parser, model)
    check_parsing(text, parsing)
    data = pack(parsing, model, text.n)
    if args.out in (None, "-"):
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    return EXIT_OK


def cmd_decode(args):
    data = Path(args.input).read_bytes()
    parsing, _model, _n = unpack(data)
    write_text(reconstruct(parsing), args.out, args.bytes)
    return EXIT_OK


def _emit_reports(reports, args):
    if args.json:
        _write(args.out, json.dumps([r.row() for r in reports], indent=2) + "\n")
    else:
        _write(args.out, reports_to_csv(reports))


def cmd_measure(args):
    model = model_from(args)
    if args.input:
        target = read_text(args.input, args.bytes)
    elif args.family:
        target = _instance(args, args.n[0])
    else:
        raise InvalidParams("measure needs an input file or --family")
    _emit_reports([measure(target, model, args.mode)], args)
    return EXIT_OK


def _sweep_one(job):
    family, n, z, sigma, x, codec, variant, mode = job
    inst = generate(family, n, z=z, sigma=sigma, x=x)
    return measure(inst, CostModel.from_spec(codec, variant=variant), mode)


def cmd_sweep(args):
    if not args.family:
        raise InvalidParams("sweep needs --family")
    ns = sorted(args.n)
    jobs = [(args.family, n, resolve_z(args.z, n), args.sigma, args.x, args.codec, args.variant, args.mode) for n in ns]
    workers = min(thread_cap(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_sweep_one, jobs))
    else:
        reports = [_sweep_one(job) for job in jobs]
    _emit_reports(reports, args)
    return EXIT_OK


def _random_text(rng, n, sigma):
    sigma = max(1, min(sigma, n + 1))
    return Text([rng.randrange(sigma) for _ in range(n)])


def run_verify(count, max_n, seed, sigmas=(2, 4, 16, 64), instances=()):
    """Run every lemma validator; returns ``(checked, failures)``."""
    rng = random.Random(seed)
    failures = []
    checked = 0

    def check(label, text, extra=None):
        nonlocal checked
        checked += 1
        g = greedy_parse(text, Variant.CLASSICAL)
        gn = greedy_parse(text, Variant.NONCLASSICAL)
        if reconstruct(g) != text or reconstruct(gn) != text:
            failures.append(f"{label}: round trip")
        if check_distinct_phrases(g, text) is not None:
            failures.append(f"{label}: distinct phrases (classical)")
        if check_distinct_phrases(gn, text) is not None:
            failures.append(f"{label}: distinct phrases (nonclassical)")
        if check_long_phrases(g, max(text.sigma, 2)) is not None:
            failures.append(f"{label}: long phrases")
        if text.n <= 2000:
            opt = optimal_bits_parse(text, CostModel())[0]
            if check_overlap_bound(opt, g) is not None:
                failures.append(f"{label}: overlap bound")
        if extra is not None:
            bad = check_structure(extra, None)
            if bad:
                failures.append(f"{label}: {bad}")

    for i in range(count):
        n = rng.randint(1, max_n)
        check(f"random[{i}]", _random_text(rng, n, sigmas[i % len(sigmas)]))
    for inst in instances:
        check(inst.family, inst.text, inst)
    for t in range(1, 21):
        for k in range(1, t + 1):
            if not math.isclose(min_log_sum(t, k), _brute_min_log_sum(t, k)):
                failures.append(f"min_log_sum({t}, {k})")
    return checked, failures


def _brute_min_log_sum(t, k):
    # every composition of t into k positive parts
    best = math.inf

    def walk(left, parts, acc):
        nonlocal best
        if parts == 1:
            best = min(best, acc + math.log2(left))
            return
        for first in range(1, left - parts + 2):
            walk(left - first, parts - 1, acc + math.log2(first))

    walk(t, k, 0.0)
    return best


def cmd_verify(args):
    instances = [
        generate("gray_multi", 2000, z=16, sigma=4),
        generate("gray_binary", 4096, z=12),
        generate("gray_multi_nc", 2000, z=16, sigma=4),
        generate("gray_binary_nc", 4096, z=12),
        generate("steiner", 4096),
        generate("steiner_nc", 4096),
    ]
    checked, failures = run_verify(args.count, args.max_n, args.seed, instances=instances)
    for line in failures:
        print(f"FAIL {line}")
    print(f"lemma checks on {checked} texts, {len(failures)} failures")
    if failures:
        raise CheckFailed(f"{len(failures)} lemma check failures")
    return EXIT_OK


def run_selftest(count, seed, max_n=14, max_sigma=4):
    """Compare optimal parsing with the brute-force oracle; returns ``(runs, mismatches)``."""
    rng = random.Random(seed)
    runs, mismatches = 0, []
    models = [CostModel.uniform(c, v) for v in Variant for c in ("gamma", "delta", "levenshtein")]
    for i in range(count):
        n = rng.randint(1, max_n)
        text = _random_text(rng, n, rng.randint(1, max_sigma))
        for model in models:
            runs += 1
            parsing, bits = optimal_bits_parse(text, model)
            check_parsing(text, parsing)
            if bits != brute_force_optimal(text, model):
                mismatches.append((text.tolist(), model.label, model.variant.value))
    return runs, mismatches


def cmd_selftest(args):
    runs, mismatches = run_selftest(args.count, args.seed)
    print(f"optimal=oracle on {runs} instances, {len(mismatches)} mismatches")
    if mismatches:
        raise CheckFailed(f"{len(mismatches)} oracle mismatches")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--codec", default="gamma,gamma,gamma", help="distance,length,letter codecs")
    common.add_argument("--variant", default="classical", choices=[v.value for v in Variant])
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--bytes", action="store_true", help="texts are raw bytes, one letter each")
    common.add_argument("--seed", type=int, default=0)

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", choices=FAMILIES)
    family.add_argument("--n", type=parse_n_list, default=[4096], help="length or comma list, e.g. 2^12,2^16")
    family.add_argument("--z", default="log", help="int, 'log' (ceil log2 n) or 'sqrt'")
    family.add_argument("--sigma", type=int, default=4)
    family.add_argument("--x", type=int, default=None, help="force the Steiner level")

    parser = argparse.ArgumentParser(prog="lzrl", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lzrl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common, family], help="generate an adversarial text")
    p.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("parse", cmd_parse, "print a parsing as JSON"),
        ("encode", cmd_encode, "write an LZRL container"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        p.add_argument("--parser", default="greedy", choices=["greedy", "optimal", "min_phrases"])
        p.set_defaults(func=func)

    p = sub.add_parser("decode", parents=[common], help="rebuild the text of an LZRL container")
    p.add_argument("input")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("measure", parents=[common, family], help="one report row")
    p.add_argument("input", nargs="?")
    p.add_argument("--mode", default="both", choices=["exact_opt", "witness", "both"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", parents=[common, family], help="report rows over several n")
    p.add_argument("--mode", default="witness", choices=["exact_opt", "witness", "both"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run the lemma validators")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--max-n", type=int, default=300)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", parents=[common], help="optimal parser vs brute force")
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"error: CheckFailed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (LZRLError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
