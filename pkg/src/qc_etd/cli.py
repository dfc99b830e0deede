"""Command-line interface: ``qc-etd <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from .codec import (
    EncodingError,
    encode_etd,
    encode_etd_binary,
    encode_traditional,
    total_ops,
    verify_parity,
)
from .formats import (
    FormatError,
    detect_format,
    read_array,
    read_dbm,
    read_vectors,
    write_dbm,
    write_qca,
    write_qcpc,
    write_vectors,
)
from .galois import FieldError, build_field, poly_to_str
from .qcldpc import build_transformed_generator, random_full_rank_code
from .transform import conjugacy_partition, inverse_transform_array, transform_array


class CLIError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _emit_json(args, payload: dict) -> None:
    if args.json is None:
        return
    _write(args.json, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _poly(args) -> int | None:
    return int(args.poly, 16) if getattr(args, "poly", None) else None


def _load_generator(path: str, poly: int | None):
    """Returns (Gd, classes, G); G is None when blocks have unequal heights."""
    text = _read(path)
    kind = detect_format(text)
    if kind == "DBM":
        Gd, classes = read_dbm(text, path, poly)
        try:
            G = inverse_transform_array(Gd)
        except ValueError:
            G = None
    elif kind == "QCA":
        G = read_array(text, path, poly)
        Gd = transform_array(G)
        classes = None
    else:
        raise CLIError(f"{path}: expected a DBM or QCA generator, found {kind!r}")
    if classes is None and Gd.satisfies_conjugacy():
        classes = conjugacy_partition(Gd.e, Gd.field)
    return Gd, classes, G


def _classes_json(classes) -> list[dict]:
    return [{"rep": c.rep, "eta": c.eta, "members": c.members, "basis": [format(b, "x") for b in c.basis]}
            for c in classes]


# --- commands -------------------------------------------------------------

def cmd_field_info(args) -> int:
    f = build_field(args.r, _poly(args))
    classes = conjugacy_partition(f.e, f)
    info = {"r": f.r, "q": f.q, "e": f.e, "poly": format(f.poly, "x"), "poly_str": poly_to_str(f.poly),
            "lambda": classes.size, "classes": _classes_json(classes)}
    if args.json is None:
        print(f"GF(2^{f.r}): q={f.q} e={f.e} poly={f.poly:x} ({poly_to_str(f.poly)})")
        print(f"conjugacy classes: {classes.size}")
        for c in classes:
            print(f"  t={c.rep:<4d} eta={c.eta} members={c.members} basis={[format(b, 'x') for b in c.basis]}")
    _emit_json(args, info)
    return 0


def cmd_gen_random(args) -> int:
    f = build_field((args.e + 1).bit_length() - 1, _poly(args))
    if f.e != args.e:
        raise CLIError(f"e={args.e} is not of the form 2^r - 1")
    rng = np.random.default_rng(args.seed)
    H, Gd, prof, classes = random_full_rank_code(f, args.k, args.n, rng, binary=args.binary,
                                                 weight=args.weight, aligned=True)
    text = write_qcpc(H) if args.format == "qcpc" else write_qca(H)
    _write(args.out, text)
    if args.gen_out:
        _write(args.gen_out, write_qca(inverse_transform_array(Gd)))
    if args.dbm_out:
        _write(args.dbm_out, write_dbm(Gd, classes if args.binary else None))
    if args.msgs:
        hi = 2 if args.binary else f.q
        msgs = [[int(x) for x in rng.integers(0, hi, size=Gd.K)] for _ in range(args.msgs)]
        _write(args.msg_out, write_vectors(msgs))
    _emit_json(args, {"e": f.e, "k": args.k, "n": args.n, "binary": args.binary, "seed": args.seed,
                      "profile": prof.to_dict()})
    return 0


def cmd_transform(args) -> int:
    text = _read(args.input)
    poly = _poly(args)
    if args.inverse:
        D, _ = read_dbm(text, args.input, poly)
        try:
            G = inverse_transform_array(D)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        _write(args.out, write_qca(G))
        _emit_json(args, {"rows": G.rows, "cols": G.cols, "e": G.e})
    else:
        G = read_array(text, args.input, poly)
        D = transform_array(G)
        classes = conjugacy_partition(D.e, D.field) if args.compact else None
        _write(args.out, write_dbm(D, classes))
        _emit_json(args, {"e": D.e, "n": D.n, "sigma": D.sigma, "conjugacy": D.satisfies_conjugacy()})
    return 0


def cmd_ldpc_gen(args) -> int:
    H = read_array(_read(args.pc), args.pc, _poly(args))
    Gd, prof, classes = build_transformed_generator(H)
    binary = H.is_binary()
    _write(args.out, write_dbm(Gd, classes if (binary and args.compact) else None))
    profile = {**prof.to_dict(), "lambda": classes.size, "binary": binary,
               "classes": _classes_json(classes)}
    if args.profile:
        _write(args.profile, json.dumps(profile, indent=2, sort_keys=True) + "\n")
    _emit_json(args, profile)
    return 0


def cmd_encode(args) -> int:
    Gd, classes, G = _load_generator(args.gen, _poly(args))
    msgs = read_vectors(_read(args.msg), args.msg, Gd.field.q)
    ops: dict = {}
    out = []
    for m in msgs:
        if args.mode == "traditional":
            if G is None:
                raise CLIError("traditional encoding needs equal-height generator blocks")
            out.append(encode_traditional(m, G, ops))
        elif args.mode == "etd":
            out.append(encode_etd(m, Gd, ops))
        else:
            if classes is None:
                raise CLIError("generator blocks do not satisfy the conjugacy constraint")
            out.append(encode_etd_binary(m, Gd, classes, ops))
    _write(args.out, write_vectors(out))
    summary = {"mode": args.mode, "messages": len(msgs), "K": Gd.K, "N": Gd.e * Gd.n}
    if args.count_ops:
        summary["ops"] = {name: c.as_dict() for name, c in sorted(ops.items())}
        summary["ops_total"] = total_ops(ops).as_dict()
        if args.json is None:
            for name, c in sorted(ops.items()):
                print(f"{name}: adds={c.additions} muls={c.multiplications}", file=sys.stderr)
    _emit_json(args, summary)
    return 0


def cmd_verify(args) -> int:
    H = read_array(_read(args.pc), args.pc, _poly(args))
    cws = read_vectors(_read(args.cw), args.cw, H.field.q)
    results = [verify_parity(c, H) for c in cws]
    failed = [i for i, ok in enumerate(results) if not ok]
    if args.json is None:
        print(f"{len(results) - len(failed)}/{len(results)} codewords satisfy c H^T = 0")
        for i in failed:
            print(f"  line {i + 1}: parity check failed")
    _emit_json(args, {"checked": len(results), "failed": failed})
    return 0 if not failed else 1


def cmd_bench(args) -> int:
    poly = _poly(args)
    if args.pc:
        H = read_array(_read(args.pc), args.pc, poly)
        Gd, _, classes = build_transformed_generator(H)
        binary = H.is_binary()
        try:
            G = inverse_transform_array(Gd)
        except ValueError:
            G = None
    else:
        Gd, classes, G = _load_generator(args.gen, poly)
        binary = classes is not None
    modes = bench_mod.MODES if args.modes == "all" else tuple(args.modes.split(","))
    inst = bench_mod.CodeInstance(Gd, classes if binary else None, G, binary)
    report = bench_mod.bench(inst, modes, args.trials, args.seed).to_dict()
    if args.json != "-":
        print(f"e={Gd.e} n={Gd.n} K={Gd.K} trials={args.trials} seed={args.seed}")
        for mode, m in report["measured"].items():
            print(f"  {mode:12s} adds={m['adds']:<10d} muls={m['muls']:<10d} "
                  f"(excluding inverse transform: muls={m['excluding_inverse_transform']['muls']})")
        for mode, r in report["ratios"].get("measured", {}).items():
            print(f"  traditional/{mode} muls: {r['muls_excluding_inverse_transform']:.2f} "
                  f"(with inverse transform {r['muls_including_inverse_transform']:.2f})")
        for i in sorted(bench_mod.REPORTED_EXAMPLES):
            rep = bench_mod.example_report(i)
            ref = rep.paper_reference_values
            extra = f" step1-only R={rep.ratios['R_step1']:.2f}" if "R_step1" in rep.ratios else ""
            print(f"  example {i}: R={rep.ratios['R']:.2f} ({rep.ratios['percent']:.2f}%){extra}"
                  f"  reported R={ref['R']} ({ref['percent']}%)")
    _emit_json(args, report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qc-etd", description="Transform-domain encoding of QC codes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--poly", help="primitive polynomial in hex (overrides defaults)")
        sp.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="write a JSON summary to PATH (stdout if omitted)")
        return sp

    sp = add("field-info", cmd_field_info, "describe GF(2^r), its conjugacy classes and subfield bases")
    sp.add_argument("--r", type=int, required=True)

    sp = add("gen-random", cmd_gen_random, "random full-rank QC parity-check array")
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--binary", action="store_true")
    sp.add_argument("--weight", type=int, help="ones per circulant (binary only)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("qca", "qcpc"), default="qca")
    sp.add_argument("--out", help="parity-check output (stdout if omitted)")
    sp.add_argument("--gen-out", help="also write the circulant generator [I | P] as QCA")
    sp.add_argument("--dbm-out", help="also write the transformed generator as DBM")
    sp.add_argument("--msgs", type=int, default=0, help="number of random messages to write")
    sp.add_argument("--msg-out", help="message output path")

    sp = add("transform", cmd_transform, "circulant array <-> transformed block matrix")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--compact", action="store_true", help="store only class representatives")

    sp = add("ldpc-gen", cmd_ldpc_gen, "transformed generator from a parity-check array")
    sp.add_argument("--pc", required=True)
    sp.add_argument("--out")
    sp.add_argument("--profile")
    sp.add_argument("--compact", action="store_true", help="store only class representatives")

    sp = add("encode", cmd_encode, "encode messages")
    sp.add_argument("--mode", choices=bench_mod.MODES, required=True)
    sp.add_argument("--gen", required=True)
    sp.add_argument("--msg", required=True)
    sp.add_argument("--out")
    sp.add_argument("--count-ops", action="store_true")

    sp = add("verify", cmd_verify, "check codewords against a parity-check array")
    sp.add_argument("--pc", required=True)
    sp.add_argument("--cw", required=True)

    sp = add("bench", cmd_bench, "operation counts and complexity ratios")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--pc")
    src.add_argument("--gen")
    sp.add_argument("--modes", default="all")
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CLIError, FormatError, FieldError, EncodingError, ValueError) as exc:
        print(f"qc-etd {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
