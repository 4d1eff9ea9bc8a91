"""Command-line front end.

Exit status: 0 when every requested check passes, 1 on a verification
failure, 2 on bad input or an enumeration guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import golden
from .codes import (
    CodeError,
    LinearCode,
    code_from_generator,
    code_from_json,
    decomposition_enumerator,
    dual_code,
    dual_code_standard,
    enumerator_from_json,
    standard_form,
    weight_enumerator_direct,
)
from .cyclotomic import CycInt
from .guards import GuardExceeded
from .identity import NonIntegerResult, counterexample_search, verify_identity
from .krawtchouk import NotFourierInvariant, kraw_matrix
from .lp import SymmetryError, lp_bound
from .partitions import PartitionError, build_partition
from .ring import RingError, RingSpec, build_ring, ring_from_json
from .weights import WeightError, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


# -- input parsing --------------------------------------------------------------


def parse_ring(text: str) -> RingSpec:
    """``Z/9``, ``F8``, ``GR(4,2)``, ``p,r,s`` or a JSON object / file with p, r, s, h."""
    t = text.strip()
    if t.startswith("{"):
        return ring_from_json(json.loads(t))
    if t.endswith(".json") or Path(t).is_file():
        return ring_from_json(json.loads(Path(t).read_text()))
    compact = t.replace(" ", "").replace("_", "")
    if m := re.fullmatch(r"(?:Z/?|Z/Z?)(\d+)(?:Z)?", compact, flags=re.I):
        return _ring_of_order(int(m.group(1)), 1)
    if m := re.fullmatch(r"(?:F|GF)\(?(\d+)\)?", compact, flags=re.I):
        q = int(m.group(1))
        p, r = _prime_power(q)
        return build_ring(p, r, 1)
    if m := re.fullmatch(r"GR\((\d+),(\d+)\)", compact, flags=re.I):
        return _ring_of_order(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"(\d+),(\d+),(\d+)", compact):
        return build_ring(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    raise ConfigError(f"cannot parse ring {text!r}")


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise ConfigError(f"{q} is not a prime power")
            return p, k
    raise ConfigError(f"{q} is not a prime power")


def _ring_of_order(ps: int, r: int) -> RingSpec:
    p, s = _prime_power(ps)
    return build_ring(p, r, s)


def parse_generator(text: str) -> list:
    """``3 2 8`` or ``3,2,8`` for r = 1, JSON rows like ``[[1,0],[0,1]]`` for r > 1."""
    t = text.strip()
    if t.startswith("["):
        return json.loads(t)
    return [int(v) for v in re.split(r"[,\s]+", t) if v]


def load_code(args) -> LinearCode:
    if getattr(args, "code", None):
        return code_from_json(_read_json(args.code))
    if not getattr(args, "ring", None) or not getattr(args, "generator", None):
        raise ConfigError("give --code FILE, or --ring with at least one --generator")
    ring = parse_ring(args.ring)
    return code_from_generator(ring, [parse_generator(g) for g in args.generator])


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


# -- output -----------------------------------------------------------------------


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, CycInt):
        return str(v.coeffs[0]) if v.is_rational() else exact_str(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def exact_str(c: CycInt) -> str:
    terms = [f"{v}*xi^{e}" if e else str(v) for e, v in enumerate(c.coeffs) if v]
    return " + ".join(terms) or "0"


def emit(obj, fmt: str, table: list[list] | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json" or (fmt == "csv" and table is None):
        out.write(json.dumps(_plain(obj), indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(table)
        out.write(buf.getvalue())
    else:
        if table is not None:
            widths = [max(len(str(row[i])) for row in table) for i in range(len(table[0]))]
            for row in table:
                out.write("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")
        else:
            out.write(_pretty(_plain(obj)))


def _pretty(obj, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str)) for x in (v if isinstance(v, list) else [])):
                lines.append(f"{pad}{k}:\n{_pretty(v, indent + 2)}")
            else:
                lines.append(f"{pad}{k}: {v}\n")
        return "".join(lines)
    if isinstance(obj, list):
        return "".join(f"{pad}- {x}\n" if not isinstance(x, (dict, list)) else f"{pad}-\n{_pretty(x, indent + 2)}" for x in obj)
    return f"{pad}{obj}\n"


def _dec(pi) -> str:
    return "(" + ",".join(str(v) for v in pi) + ")"


# -- subcommands ------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    code = load_code(args)
    part = build_partition(args.partition, code.ring)
    enum = decomposition_enumerator(code, part)
    obj = enum.to_json()
    table = [["pi", "count"]] + [[_dec(d), c] for d, c in enum.items()]
    if args.weight:
        kind = parse_weight(args.weight)
        obj["weights"] = [{"weight": str(w), "count": c} for w, c in weight_enumerator_direct(code, kind).items()]
    emit(obj, args.format, table)
    return EXIT_OK


def cmd_dual(args) -> int:
    code = load_code(args)
    dual = dual_code_standard(code) if args.method == "standard" else dual_code(code)
    sf = standard_form(code)
    obj = {"code": dual.to_json(), "size": dual.size, "primal_size": code.size, "primal_subtype": list(sf.subtype)}
    if args.list:
        obj["codewords"] = dual.codewords.tolist()
    emit(obj, args.format)
    return EXIT_OK


def cmd_krawtchouk(args) -> int:
    ring = parse_ring(args.ring)
    part = build_partition(args.partition, ring)
    decs, K = kraw_matrix(part, args.n)
    table = [["pi", "rho", "K"]]
    entries = []
    for pi, row in zip(decs, K):
        for rho, v in zip(decs, row):
            table.append([_dec(pi), _dec(rho), _plain(v)])
            entries.append({"pi": list(pi), "rho": list(rho), "K": _plain(v)})
    emit({"partition": part.kind, "ring": ring.name, "n": args.n, "entries": entries}, args.format, table)
    return EXIT_OK


def cmd_verify(args) -> int:
    code = load_code(args)
    part = build_partition(args.partition, code.ring)
    if args.precomputed:
        enum = enumerator_from_json(_read_json(args.precomputed))
        if enum.partition != part.kind:
            raise ConfigError(f"precomputed enumerator is for {enum.partition!r}, not {part.kind!r}")
        report = verify_identity(code, part, enum=enum, jobs=args.jobs)
    else:
        report = verify_identity(code, part, jobs=args.jobs)
    table = [["rho", "predicted", "observed", "match"]] + [[_dec(r[0]), r[1], r[2], r[3]] for r in report.rows]
    emit(report.to_json(), args.format, table)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_counterexample(args) -> int:
    if args.reference:
        res = golden.f8_counterexample()
        from .identity import reproduce_subfield_counterexample

        rep = reproduce_subfield_counterexample()
        obj = rep.to_json()
        obj["checks"] = res.to_json()["checks"]
        emit(obj, args.format)
        return EXIT_OK if res.passed else EXIT_FAIL
    ring = parse_ring(args.ring)
    kind = parse_weight(args.weight)
    pair = counterexample_search(ring, kind, args.n, budget=args.budget, seed=args.seed)
    if pair is None:
        emit({"found": False, "ring": ring.name, "weight": str(kind), "n": args.n, "budget": args.budget}, args.format)
        return EXIT_OK
    c1, c2 = pair
    obj = {"found": True, "weight": str(kind), "codes": []}
    for c in pair:
        obj["codes"].append({
            "code": c.to_json(),
            "weights": {str(w): n for w, n in weight_enumerator_direct(c, kind).items()},
            "dual_weights": {str(w): n for w, n in weight_enumerator_direct(dual_code(c), kind).items()},
        })
    emit(obj, args.format)
    return EXIT_OK


def cmd_lp_bound(args) -> int:
    ring = parse_ring(args.ring)
    kind = parse_weight(args.weight)
    part = build_partition(args.partition, ring) if args.partition else None
    res = lp_bound(ring, kind, args.n, Fraction(args.d), lee_symmetry=args.lee_symmetry, partition=part)
    emit(res.to_json(), args.format)
    return EXIT_OK if res.certificate.optimal else EXIT_FAIL


def cmd_paper_examples(args) -> int:
    results = golden.run_all()
    if args.format in ("json", "csv"):
        emit({"cases": [r.to_json() for r in results], "passed": all(r.passed for r in results)}, "json")
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.case}  ({sum(c.ok for c in r.checks)}/{len(r.checks)} checks)")
            for c in r.checks:
                if not c.ok:
                    print(f"      {c.name}: expected {_plain(c.expected)}, got {_plain(c.got)}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_partition(args) -> int:
    ring = parse_ring(args.ring)
    part = build_partition(args.partition, ring)
    table = [["block", "label", "elements"]] + [[d["block"], d["label"], " ".join(d["elements"])] for d in part.describe()]
    emit({"ring": ring.name, "partition": part.kind, "blocks": part.describe()}, args.format, table)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default=None, help="default: json (pretty for paper-examples)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for rho-parallel work")

    code_args = argparse.ArgumentParser(add_help=False)
    code_args.add_argument("--code", help="code JSON file ('-' for stdin)")
    code_args.add_argument("--ring", help="ring, e.g. Z/9, F8, GR(4,2), 3,1,2")
    code_args.add_argument("--generator", "-g", action="append", help="generator row, repeatable")

    p = argparse.ArgumentParser(prog="macwilliams", description="Decomposition enumerators and MacWilliams-type identities over Galois rings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common, code_args], help="decomposition (and weight) enumerator of a code")
    s.add_argument("--partition", default="lee")
    s.add_argument("--weight", help="also tally this weight directly")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("dual", parents=[common, code_args], help="dual code")
    s.add_argument("--method", choices=("brute", "standard"), default="brute")
    s.add_argument("--list", action="store_true", help="include every dual codeword")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("krawtchouk", parents=[common], help="Krawtchouk matrix over all decomposition pairs")
    s.add_argument("--ring", required=True)
    s.add_argument("--partition", default="lee")
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_krawtchouk)

    s = sub.add_parser("verify", parents=[common, code_args], help="predicted vs brute-force dual enumerator")
    s.add_argument("--partition", default="lee")
    s.add_argument("--precomputed", help="enumerator JSON to use instead of recounting the code")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("counterexample", parents=[common], help="codes with equal weight enumerators but different dual enumerators")
    s.add_argument("--ring")
    s.add_argument("--weight", default="lee")
    s.add_argument("-n", type=int, default=2)
    s.add_argument("--budget", type=int, default=2000)
    s.add_argument("--reference", action="store_true", help="rebuild the F_8 subfield pair instead of searching")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("lp-bound", parents=[common], help="linear-programming bound on code size")
    s.add_argument("--ring", required=True)
    s.add_argument("--weight", default="lee")
    s.add_argument("--partition")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-d", required=True, help="minimum distance (rational allowed)")
    s.add_argument("--lee-symmetry", action="store_true")
    s.set_defaults(func=cmd_lp_bound)

    s = sub.add_parser("paper-examples", parents=[common], help="run the built-in worked examples")
    s.set_defaults(func=cmd_paper_examples)

    s = sub.add_parser("partition", parents=[common], help="list the blocks of a partition")
    s.add_argument("--ring", required=True)
    s.add_argument("--partition", default="lee")
    s.set_defaults(func=cmd_partition)
    return p


CONFIG_ERRORS = (ConfigError, RingError, CodeError, WeightError, PartitionError, SymmetryError, NotFourierInvariant, json.JSONDecodeError, KeyError, ValueError)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if args.command == "counterexample" and not args.reference and not args.ring:
        print("error: counterexample needs --ring (or --reference)", file=sys.stderr)
        return EXIT_CONFIG
    if args.format is None:
        args.format = "pretty" if args.command == "paper-examples" else "json"
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc.what} = {exc.size} > {exc.limit}", file=sys.stderr)
        return EXIT_CONFIG
    except NonIntegerResult as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
