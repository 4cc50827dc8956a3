"""Command-line workbench wiring the codecs and the brute-force oracles."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import delsub, deltrans, edit4, oracle
from .errors import SyncodecError
from .sketches import vt
from .words import (
    DelAndSub,
    Deletion,
    ErrorModel,
    Insertion,
    Substitution,
    Transposition,
    Word,
    apply,
    patterns,
)


def _read_word(args) -> Word:
    text = args.word if args.word is not None else sys.stdin.read().strip()
    return Word.parse(text, q=args.q)


def _emit(payload) -> None:
    print(json.dumps(payload))


def _pattern_from_text(text: str) -> object:
    kind, _, rest = text.partition(":")
    parts = [int(p) for p in rest.split(":") if p != ""] if rest else []
    if kind == "del":
        return Deletion(parts[0])
    if kind == "ins":
        return Insertion(parts[0], parts[1])
    if kind == "sub":
        return Substitution(parts[0], parts[1])
    if kind == "trans":
        return Transposition(parts[0])
    if kind == "delsub":
        new = parts[2] if len(parts) > 2 else None
        return DelAndSub(parts[0], parts[1], new)
    raise SyncodecError(f"unknown pattern {text!r}")


def _pattern_to_dict(pattern) -> dict:
    out = {"kind": type(pattern).__name__.lower()}
    out.update({k: v for k, v in vars(pattern).items() if v is not None})
    return out


def _cmd_corrupt(args) -> int:
    word = _read_word(args)
    if args.pattern:
        pattern = _pattern_from_text(args.pattern)
    else:
        model = ErrorModel(args.model)
        choices = list(patterns(word, model))
        if not choices:
            raise SyncodecError("no applicable corruption pattern")
        pattern = random.Random(args.seed).choice(choices)
    corrupted = apply(word, pattern)
    _emit({"model": args.model, "input": str(word), "output": str(corrupted),
           "pattern": _pattern_to_dict(pattern)})
    return 0


def _cmd_sketch(args) -> int:
    word = _read_word(args)
    if args.code == "vt":
        modulus = args.modulus or 2 * len(word) + 1
        value = vt(word, modulus)
        _emit({"f": {"value": value.value, "modulus": value.modulus}})
    elif args.code == "edit4":
        params = edit4.Edit4Params.for_length(len(word))
        _emit(edit4.sketches(word, params).as_dict(params))
    elif args.code == "delsub":
        params = delsub.DelSubParams(len(word))
        _emit(delsub.sketches(word, params).as_dict(params))
    else:
        h = deltrans.desk_hash(args.delta)
        params = deltrans.DeltransParams.desk(len(word), args.delta, h.hash_range)
        sk, hashes = deltrans.segment_sketches(word, params, h)
        payload = sk.as_dict(params)
        payload["hash_multiset"] = list(hashes)
        _emit(payload)
    return 0


def _cmd_encode(args) -> int:
    if args.code == "edit4":
        word = _read_word(args)
        print(edit4.Edit4Code(len(word)).encode(Word(word.symbols, 4)))
    elif args.code == "delsub":
        word = _read_word(args)
        print(delsub.DelSubCode(len(word)).encode(word))
    else:
        if args.profile == "paper":
            raise SyncodecError(
                "the paper profile proves existence only; encoding is desk-scale")
        code = deltrans.DeltransDeskCode.build(args.n, args.delta)
        print(code.encode(args.index))
    return 0


def _cmd_decode(args) -> int:
    word = _read_word(args)
    if args.code in ("edit4", "delsub") and args.m is None:
        raise SyncodecError(f"decoding {args.code} needs --m (message length)")
    if args.code == "edit4":
        print(edit4.Edit4Code(args.m).decode(Word(word.symbols, 4)))
    elif args.code == "delsub":
        candidates = delsub.DelSubCode(args.m).decode(word)
        _emit([str(c) for c in candidates])
    else:
        code = deltrans.DeltransDeskCode.build(args.n, args.delta)
        print(code.decode(word))
    return 0


def _cmd_verify_code(args) -> int:
    model = {
        "vt": ErrorModel.SINGLE_EDIT,
        "edit4": ErrorModel.SINGLE_EDIT,
        "delsub": ErrorModel.ONE_DEL_ONE_SUB,
        "deltrans": ErrorModel.ONE_DEL_OR_ONE_TRANSPOSITION,
    }[args.code]
    if args.code == "vt":
        modulus = 2 * args.n + 1
        best, size = None, -1
        for a in range(modulus):
            members = [w for w in oracle.all_words(args.n, 2)
                       if vt(w, modulus).value == a]
            if len(members) > size:
                best, size = members, len(members)
        report = oracle.verify_code(best, model, 1)
    elif args.code == "edit4":
        target, _ = edit4.search_best_target(args.n)
        members = edit4.codewords_for_target(args.n, target)
        report = oracle.verify_code(members, model, 1)
    elif args.code == "delsub":
        target, _ = delsub.search_best_target(args.n)
        params = delsub.DelSubParams(args.n)
        members = [w for w in oracle.all_words(args.n, 2)
                   if delsub.sketches(w, params) == target]
        report = oracle.verify_code(members, model, 2)
    else:
        code = deltrans.DeltransDeskCode.build(args.n, args.delta)
        report = oracle.verify_code(code.codewords, model, 1)
    print(report.to_json())
    return 0 if report.ok else 1


def _cmd_search_params(args) -> int:
    if args.code == "edit4":
        target, size = edit4.search_best_target(args.n)
        _emit({"n": args.n, "target": target.as_dict(
            edit4.Edit4Params.for_length(args.n)), "bucket_size": size})
    else:
        target, size = delsub.search_best_target(args.n)
        _emit({"n": args.n, "target": target.as_dict(
            delsub.DelSubParams(args.n)), "bucket_size": size})
    return 0


def _cmd_search_inner(args) -> int:
    model = ErrorModel(args.model)
    code = oracle.search_inner_code(model, args.length, q=args.q)
    report = oracle.verify_code(code, model, 1) if code else None
    _emit({
        "model": args.model,
        "length": args.length,
        "code": [str(w) for w in code],
        "size": len(code),
        "verified_list_bound": report.max_list_size if report else 0,
    })
    return 0


def _cmd_measure(args) -> int:
    if args.code == "delsub":
        sizes = {}
        for m in args.m:
            sizes[str(m)] = delsub.DelSubCode(m).redundancy
        _emit({"code": "delsub", "tail_bits": sizes})
    elif args.code == "edit4":
        if args.m:
            sizes = {str(m): edit4.Edit4Code(m).redundancy for m in args.m}
            _emit({"code": "edit4", "tail_symbols": sizes})
        else:
            target, size = edit4.search_best_target(args.n)
            _emit({"code": "edit4", "n": args.n, "bucket_size": size,
                   "redundancy_bits": oracle.measure_redundancy(size, args.n, 4)})
    else:
        modulus = 2 * args.n + 1
        size = max(
            sum(1 for w in oracle.all_words(args.n, 2)
                if vt(w, modulus).value == a)
            for a in range(modulus))
        _emit({"code": "vt", "n": args.n, "bucket_size": size,
               "redundancy_bits": oracle.measure_redundancy(size, args.n, 2)})
    return 0


def _cmd_build_hash(args) -> int:
    table = deltrans.GreedyHash.build(args.cap, args.range)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(table.to_json())
    _emit({"cap": args.cap, "range": table.hash_range,
           "entries": len(table.table), "out": args.out})
    return 0


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    rows = []
    for m in args.sizes:
        if args.code == "edit4":
            codec = edit4.Edit4Code(m)
            z = Word(tuple(rng.randrange(4) for _ in range(m)), 4)
        else:
            codec = delsub.DelSubCode(m)
            z = Word(tuple(rng.randrange(2) for _ in range(m)), 2)
        t0 = time.perf_counter()
        x = codec.encode(z)
        t1 = time.perf_counter()
        y = apply(x, Deletion(rng.randrange(len(x)) + 1))
        t2 = time.perf_counter()
        decoded = codec.decode(y)
        t3 = time.perf_counter()
        ok = decoded == z if args.code == "edit4" else z in decoded
        rows.append({"m": m, "n": len(x), "encode_s": t1 - t0,
                     "decode_s": t3 - t2, "ok": ok})
    _emit({"code": args.code, "seed": args.seed, "rows": rows})
    return 0 if all(r["ok"] for r in rows) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncodec",
        description="codecs and oracles for synchronization-error channels")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_word_args(p):
        p.add_argument("--word", help="ASCII digit string (defaults to stdin)")
        p.add_argument("--q", type=int, default=None, help="alphabet size")

    p = sub.add_parser("corrupt", help="apply one error pattern")
    add_word_args(p)
    p.add_argument("--model", default="single-edit",
                   choices=[m.value for m in ErrorModel])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pattern", help="e.g. del:3, ins:2:1, sub:4:2, trans:7")
    p.set_defaults(func=_cmd_corrupt)

    p = sub.add_parser("sketch", help="print the sketches of a word")
    add_word_args(p)
    p.add_argument("--code", required=True,
                   choices=["vt", "edit4", "delsub", "deltrans"])
    p.add_argument("--modulus", type=int)
    p.add_argument("--delta", type=int, default=5)
    p.set_defaults(func=_cmd_sketch)

    p = sub.add_parser("encode", help="encode a message word")
    add_word_args(p)
    p.add_argument("--code", required=True, choices=["edit4", "delsub", "deltrans"])
    p.add_argument("--n", type=int, default=24)
    p.add_argument("--delta", type=int, default=5)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--profile", default="desk", choices=["desk", "paper"])
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="decode a corrupted word")
    add_word_args(p)
    p.add_argument("--code", required=True, choices=["edit4", "delsub", "deltrans"])
    p.add_argument("--m", type=int, help="message length (edit4, delsub)")
    p.add_argument("--n", type=int, default=24)
    p.add_argument("--delta", type=int, default=5)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("verify-code", help="exhaustive decodability check")
    p.add_argument("--code", required=True,
                   choices=["vt", "edit4", "delsub", "deltrans"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, default=5)
    p.set_defaults(func=_cmd_verify_code)

    p = sub.add_parser("search-params", help="best sketch target at small n")
    p.add_argument("--code", required=True, choices=["edit4", "delsub"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_search_params)

    p = sub.add_parser("search-inner", help="greedy small code for a model")
    p.add_argument("--model", required=True,
                   choices=[m.value for m in ErrorModel])
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(func=_cmd_search_inner)

    p = sub.add_parser("measure", help="redundancy measurements")
    p.add_argument("--code", required=True, choices=["vt", "edit4", "delsub"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, nargs="*", default=[])
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("build-hash", help="greedy segment hash table")
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--range", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build_hash)

    p = sub.add_parser("bench", help="encode/decode wall time across sizes")
    p.add_argument("--code", required=True, choices=["edit4", "delsub"])
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SyncodecError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
