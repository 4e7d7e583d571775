"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 internal predicate inconsistency,
3 suite failure.  Every command honors --json with schema-stable output,
including on error paths.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .chartable import table_of
from .classify import classification_report, counting_formulas
from .errors import InternalInconsistencyError, ParseError
from .presentation import parse_presentation, presentation_text
from .verify import (
    default_threads,
    run_ingested_census,
    run_paper_suite,
    suite_to_json_text,
)


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _read_presentation(path: str):
    if path == "-":
        text = sys.stdin.read()
        return parse_presentation(text, name="stdin")
    p = Path(path)
    return parse_presentation(p.read_text(encoding="utf-8"), name=p.stem)


def cmd_classify(args) -> int:
    P = _read_presentation(args.file)
    rep = classification_report(P)
    if args.json:
        _emit_json(rep.to_json())
    else:
        print(f"group {rep.label}: order {rep.order} = {rep.p}^{_plog(rep)}")
        print(f"  nilpotency class : {rep.nilpotency_class}")
        print(f"  degrees          : {rep.cd}")
        print(f"  gvz              : {rep.is_gvz}")
        print(f"  flat             : {rep.is_flat}")
        print(f"  nested gvz       : {rep.is_nested}")
        vz = f"{rep.is_vz}" + (f"  ({rep.vz_note})" if rep.vz_note else "")
        print(f"  vz               : {vz}")
        print(f"  camina (G,Z)     : {rep.camina_pair_with_center}")
        print(f"  gen. camina (G,Z): {rep.gen_camina_pair_with_center}")
        print(f"  |Z(chi)| chain   : {list(rep.center_chain)}"
              f" (chain: {rep.center_chain_is_chain})")
    return 0


def _plog(rep) -> int:
    n, m = 0, rep.order
    while m > 1:
        m //= rep.p
        n += 1
    return n


def cmd_chartable(args) -> int:
    P = _read_presentation(args.file)
    T = table_of(P)
    if args.json:
        _emit_json(T.to_json())
    else:
        k = T.count
        print(f"group {P.name}: {k} classes, field prime {T.field_prime}")
        print("degrees:", dict(T.cd_multiset()))
        if k <= 24:
            for i, r in enumerate(T.rows):
                vals = " ".join(str(r.value(j)) for j in range(k))
                print(f"  X{i + 1} (deg {r.degree}): {vals}")
        else:
            print(f"  ({k} rows; use --json for the full table)")
    return 0


def cmd_count(args) -> int:
    exp = {"p5": 5, "p6": 6}[args.order]
    result = counting_formulas(args.p, exp)
    if args.json:
        _emit_json(result.to_json())
    else:
        print(f"order {args.p}^{exp}: gvz {result.gvz_count}, nested {result.nested_count}")
    return 0


def cmd_corpus(args) -> int:
    if args.action == "list":
        rows = []
        for label, entry in corpus.REGISTRY.items():
            rows.append(
                {
                    "label": label,
                    "order": f"p^{entry.order_exp}",
                    "primes": f"p >= {entry.min_p}",
                    "expected": entry.expected,
                    "citation": entry.note,
                }
            )
        if args.json:
            _emit_json(rows)
        else:
            for r in rows:
                print(f"{r['label']:26s} {r['order']:5s} {r['primes']:8s} {r['citation']}")
        return 0
    # emit
    P = corpus.build(args.label, args.p)
    text = presentation_text(P)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    primes = tuple(int(x) for x in args.primes.split(","))
    res = run_paper_suite(primes=primes, threads=args.threads)
    if args.json:
        Path(args.json).write_text(suite_to_json_text(res), encoding="utf-8")
    print(res.render_text())
    return 0 if res.ok else 3


def cmd_census(args) -> int:
    res = run_ingested_census(
        args.directory,
        expected_nested_nonabelian=args.expect_nested_nonabelian,
        expected_total=args.expect_total,
        threads=args.threads,
    )
    if args.json:
        Path(args.json).write_text(suite_to_json_text(res), encoding="utf-8")
    print(res.render_text())
    return 0 if res.ok else 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pgclass",
        description="exact classification of finite p-groups by character-vanishing structure",
    )
    ap.add_argument("--threads", type=int, default=default_threads(),
                    help="worker pool size for batch commands")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one presentation file")
    c.add_argument("file", help="presentation file, or - for stdin")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("chartable", help="print the character table")
    c.add_argument("file", help="presentation file, or - for stdin")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_chartable)

    c = sub.add_parser("count", help="closed-form counts for p^5 / p^6")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--order", choices=("p5", "p6"), required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("corpus", help="list or emit built-in presentations")
    csub = c.add_subparsers(dest="action", required=True)
    cl = csub.add_parser("list")
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_corpus, action="list")
    ce = csub.add_parser("emit")
    ce.add_argument("label")
    ce.add_argument("--p", type=int, required=True)
    ce.add_argument("-o", "--output", default=None)
    ce.set_defaults(func=cmd_corpus, action="emit")

    c = sub.add_parser("verify", help="run the built-in verification suite")
    c.add_argument("--suite", choices=("paper",), default="paper")
    c.add_argument("--primes", default="3,5,7")
    c.add_argument("--json", default=None, help="write the JSON report here")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="classify a directory of presentations")
    c.add_argument("directory")
    c.add_argument("--expect-nested-nonabelian", type=int, default=None)
    c.add_argument("--expect-total", type=int, default=None)
    c.add_argument("--json", default=None, help="write the JSON report here")
    c.set_defaults(func=cmd_census)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    wants_json = bool(getattr(args, "json", False)) and args.command in (
        "classify",
        "chartable",
        "count",
    )
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        if wants_json:
            _emit_json({"error": str(exc)})
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistencyError as exc:
        if wants_json:
            _emit_json({"error": str(exc), "internal": True})
        else:
            print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
