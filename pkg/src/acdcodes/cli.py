"""Command-line front end: analyze, dual, wimage, verify-paper, search."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from .code_model import (
    DEFAULT_CAP,
    AdditiveCode,
    CodeType,
    EnumerationCapExceeded,
    code_from_rows,
    compute_type,
    is_separable,
    puncture_x,
    puncture_y,
)
from .codefile import CodeFile, CodeFileError, format_row, load_code_file
from .duality import (
    classify_three_cases,
    dual_code,
    gram_matrix,
    is_acd,
    is_acd_hull,
    is_lcd_linear,
    is_self_orthogonal,
)
from .field_core import F4_SYMBOLS, MixedWord, det_f2
from .metrics_search import FILTERS, BestKnownTable, SearchSpec, default_table, min_distance, search
from .wmap import (
    equivalence_condition,
    image_gram,
    predicate_prop_th30,
    predicate_th44,
    th44_matrix,
    w_map_code,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def default_corpus() -> Path:
    return Path(str(resources.files("acdcodes").joinpath("corpus")))


def schema_path() -> Path:
    return Path(str(resources.files("acdcodes").joinpath("data/report.schema.json")))


# ---------------------------------------------------------------------------
# report


def _bits(v) -> str:
    return "".join(str(int(b)) for b in v)


def _f4_row(row) -> str:
    return "".join(F4_SYMBOLS[v] for v in row)


def _yn(flag: Optional[bool]) -> str:
    return "n/a" if flag is None else ("yes" if flag else "no")


def _cx_summary(cx: AdditiveCode) -> dict:
    return {"k": cx.k, "lcd": is_lcd_linear(cx), "self_orthogonal": is_self_orthogonal(cx)}


def _cy_summary(cy: AdditiveCode) -> dict:
    return {"k": cy.k, "acd": is_acd_hull(cy), "self_orthogonal": is_self_orthogonal(cy)}


def build_report(c: AdditiveCode, cap: int = DEFAULT_CAP, table: Optional[BestKnownTable] = None) -> dict:
    """Every value is recomputed from the library; text and JSON render this dict."""
    cert = is_acd(c, cap)
    dual = dual_code(c)
    image = w_map_code(c)
    gram = image_gram(image) if image.k else None
    dist = min_distance(image.image, cap, table)
    wdual = w_map_code(dual)
    return {
        "alpha": c.alpha,
        "beta": c.beta,
        "k": c.k,
        "size": c.size,
        "rows": [str(r) for r in c.rows],
        "type": str(compute_type(c)),
        "gram": [_f4_row(r) for r in gram_matrix(c).as_lists()],
        "three_case": classify_three_cases(c),
        "acd": cert.to_dict(),
        "trivial": c.k == 0,
        "dual": {"k": dual.k, "size": dual.size, "rows": [str(r) for r in dual.rows]},
        "punctured": {
            "C_X": _cx_summary(puncture_x(c)),
            "C_Y": _cy_summary(puncture_y(c)),
            "separable": is_separable(c),
        },
        "wimage": {
            "n": image.n,
            "k": image.k,
            "rows": [_bits(r.x) for r in image.image.rows],
            "gram": [_bits(r) for r in gram] if gram is not None else [],
            "gram_det": int(det_f2(gram)) if gram is not None else 1,
            "lcd": image.k == 0 or bool(det_f2(gram)),
            "dual_image_rows": [_bits(r.x) for r in wdual.image.rows],
            "dual_image_size": wdual.image.size,
            "image_dual_size": 2 ** (image.n - image.k),
            "split_matrix": [_bits(r) for r in th44_matrix(c)] if c.k else [],
            "sufficient": {
                "self_orthogonal_gx_nonsingular_split": predicate_th44(c),
                "self_orthogonal_gx_identity_omega_stack": predicate_prop_th30(c),
            },
            "equivalence_condition": equivalence_condition(c),
        },
        "distance": dist.to_dict(),
    }


def _acd_line(rep: dict) -> str:
    acd = rep["acd"]
    if rep["trivial"]:
        return "ACD: yes (trivially)"
    if acd["verdict"] == "ACD":
        matched = ", ".join(acd["matched_conditions"]) or "none"
        return f"ACD: yes; matched: {matched}"
    line = f"ACD: no; witness: {acd['witness']}"
    if acd["refuting_conditions"]:
        line += "; refuted by: " + ", ".join(acd["refuting_conditions"])
    return line


def render_text(rep: dict) -> str:
    p = rep["punctured"]
    out = [
        f"code: alpha={rep['alpha']} beta={rep['beta']} k={rep['k']} size={rep['size']}",
        f"type: {rep['type']}",
        _acd_line(rep),
        f"hull_dim: {rep['acd']['hull_dim']}",
        f"three_case: {rep['three_case'] or 'none'}",
        "gram:",
    ]
    out += [f"  {' '.join(r)}" for r in rep["gram"]]
    out.append(f"dual: k={rep['dual']['k']} size={rep['dual']['size']}")
    out += [f"  {r}" for r in rep["dual"]["rows"]]
    cx, cy = p["C_X"], p["C_Y"]
    out.append(f"C_X: k={cx['k']} lcd={_yn(cx['lcd'])} self_orthogonal={_yn(cx['self_orthogonal'])}")
    out.append(f"C_Y: k={cy['k']} acd={_yn(cy['acd'])} self_orthogonal={_yn(cy['self_orthogonal'])}")
    out.append(f"separable: {_yn(p['separable'])}")
    out += _wimage_lines(rep)
    out.append(f"weight_distribution: {' '.join(str(x) for x in rep['distance']['weight_distribution'])}")
    return "\n".join(out)


def _wimage_lines(rep: dict) -> list[str]:
    w, d = rep["wimage"], rep["distance"]
    bk = "-" if d["best_known"] is None else d["best_known"]
    dd = "-" if d["d"] is None else d["d"]
    out = [
        f"W image: [{w['n']},{w['k']},{dd}] lcd={_yn(w['lcd'])} gram_det={w['gram_det']} "
        f"best_known={bk} optimality={d['optimality']}",
        "  rows:",
    ]
    out += [f"    {r}" for r in w["rows"]]
    out.append("  gram:")
    out += [f"    {r}" for r in w["gram"]]
    out.append(f"  |W(C-perp)|={w['dual_image_size']} |W(C)-perp|={w['image_dual_size']}")
    eq = w["equivalence_condition"]
    out.append(f"  ACD iff image LCD: {'condition ' + str(eq) if eq else 'not established'}")
    return out


# ---------------------------------------------------------------------------
# expectations


def _word_span(alpha: int, beta: int, text: str) -> AdditiveCode:
    words = [MixedWord.parse(t, alpha) for t in text.split(";") if t]
    return code_from_rows(alpha, beta, words)


def _bin_span(text: str, n: int) -> AdditiveCode:
    words = [MixedWord(tuple(int(ch) for ch in t), ()) for t in text.split(";") if t]
    return code_from_rows(n, 0, words)


def _names(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def _check(key: str, expected: str, rep: dict, c: AdditiveCode) -> tuple[bool, str]:
    w, d, p = rep["wimage"], rep["distance"], rep["punctured"]
    simple: dict[str, Callable[[], object]] = {
        "type": lambda: rep["type"],
        "acd": lambda: _yn(rep["acd"]["verdict"] == "ACD"),
        "case": lambda: rep["three_case"] or "none",
        "witness": lambda: rep["acd"]["witness"],
        "gram": lambda: ";".join(",".join(r) for r in rep["gram"]),
        "size": lambda: str(rep["size"]),
        "dual_size": lambda: str(rep["dual"]["size"]),
        "wdual_size": lambda: str(w["dual_image_size"]),
        "wperp_size": lambda: str(w["image_dual_size"]),
        "wimage": lambda: ";".join(w["rows"]),
        "image_gram": lambda: ";".join(w["gram"]),
        "image_det": lambda: str(w["gram_det"]),
        "image_lcd": lambda: _yn(w["lcd"]),
        "image_n": lambda: str(w["n"]),
        "image_k": lambda: str(w["k"]),
        "image_d": lambda: str(d["d"]),
        "best_known": lambda: str(d["best_known"]),
        "optimality": lambda: d["optimality"].split("(")[0],
        "gap": lambda: str(max(d["best_known"] - d["d"], 0)) if d["best_known"] is not None else "None",
        "cx_lcd": lambda: _yn(p["C_X"]["lcd"]),
        "cx_self_orthogonal": lambda: _yn(p["C_X"]["self_orthogonal"]),
        "cy_acd": lambda: _yn(p["C_Y"]["acd"]),
        "cy_self_orthogonal": lambda: _yn(p["C_Y"]["self_orthogonal"]),
        "split_matrix": lambda: ";".join(w["split_matrix"]),
        "equivalence": lambda: str(w["equivalence_condition"]),
    }
    if key in simple:
        actual = simple[key]()
        return str(actual) == expected, str(actual)
    if key in ("matched", "refuted"):
        field = "matched_conditions" if key == "matched" else "refuting_conditions"
        have = rep["acd"][field]
        return all(n in have for n in _names(expected)), ",".join(have) or "none"
    if key == "dual":
        want = _word_span(c.alpha, c.beta, expected)
        got = dual_code(c)
        return got == want, ";".join(rep["dual"]["rows"])
    if key == "wdual":
        want = _bin_span(expected, w["n"])
        got = _bin_span(";".join(w["dual_image_rows"]), w["n"])
        return got == want, ";".join(w["dual_image_rows"])
    if key == "image_sufficient":
        have = [n for n, v in w["sufficient"].items() if v]
        return all(n in have for n in _names(expected)), ",".join(have) or "none"
    return False, f"unknown expectation key {key!r}"


def verify_file(cf: CodeFile, cap: int = DEFAULT_CAP) -> list[str]:
    """Failure messages for one corpus file (empty when it passes)."""
    if not cf.expectations:
        return ["no expectations"]
    c = cf.code()
    if c.k != len(cf.rows):
        return [f"rows are dependent: rank {c.k} of {len(cf.rows)}"]
    rep = build_report(c, cap)
    fails = []
    for e in cf.expectations:
        ok, actual = _check(e.key, e.value, rep, c)
        if not ok:
            fails.append(f"line {e.line}: {e.key} expected {e.value}, got {actual}")
    return fails


def read_manifest(corpus: Path) -> list[str]:
    manifest = corpus / "MANIFEST"
    ids = []
    for line in manifest.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            ids.append(line)
    return ids


def verify_corpus(corpus: Path, cap: int = DEFAULT_CAP) -> dict[str, list[str]]:
    results = {}
    for ex_id in read_manifest(corpus):
        path = corpus / f"{ex_id}.code"
        try:
            cf = load_code_file(path)
            results[ex_id] = verify_file(cf, cap)
        except FileNotFoundError:
            results[ex_id] = [f"missing file {path}"]
        except (CodeFileError, ValueError) as exc:
            results[ex_id] = [f"parse error: {exc}"]
    return results


# ---------------------------------------------------------------------------
# commands


def _load(path: str) -> AdditiveCode:
    cf = load_code_file(path)
    c = cf.code()
    if c.k != len(cf.rows):
        print(f"note: {len(cf.rows) - c.k} dependent row(s) dropped", file=sys.stderr)
    return c


def _table(args) -> BestKnownTable:
    table = BestKnownTable(dict(default_table().entries))
    if getattr(args, "table", None):
        table.load(args.table)
    return table


def cmd_analyze(args) -> int:
    rep = build_report(_load(args.path), args.cap, _table(args))
    if args.format == "json":
        print(json.dumps(rep, indent=2))
    else:
        print(render_text(rep))
    return EXIT_OK


def cmd_dual(args) -> int:
    c = _load(args.path)
    dual = dual_code(c)
    if args.format == "json":
        print(json.dumps({"alpha": dual.alpha, "beta": dual.beta, "k": dual.k, "size": dual.size,
                          "rows": [str(r) for r in dual.rows]}, indent=2))
    else:
        print(f"# dual: k={dual.k} size={dual.size}")
        print(f"alpha={dual.alpha} beta={dual.beta}")
        for r in dual.rows:
            print(format_row(r))
    return EXIT_OK


def cmd_wimage(args) -> int:
    rep = build_report(_load(args.path), args.cap, _table(args))
    if args.format == "json":
        print(json.dumps({"wimage": rep["wimage"], "distance": rep["distance"]}, indent=2))
    else:
        print("\n".join(_wimage_lines(rep)))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    corpus = Path(args.corpus) if args.corpus else default_corpus()
    if not (corpus / "MANIFEST").is_file():
        print(f"error: no corpus MANIFEST under {corpus}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    results = verify_corpus(corpus, args.cap)
    failed = [k for k, v in results.items() if v]
    if args.format == "json":
        print(json.dumps({"examples": results, "failed": failed, "passed": len(results) - len(failed)}, indent=2))
    else:
        for ex_id, fails in results.items():
            print(f"{'PASS' if not fails else 'FAIL'} {ex_id}")
            for f in fails:
                print(f"     {f}")
        print(f"{len(results) - len(failed)}/{len(results)} examples pass ({time.perf_counter() - t0:.2f}s)")
        if failed:
            print("failing: " + ", ".join(failed))
    return EXIT_FAIL if failed else EXIT_OK


def _hit_dict(hit) -> dict:
    return {
        "trial": hit.trial,
        "alpha": hit.code.alpha,
        "beta": hit.code.beta,
        "rows": [str(r) for r in hit.code.rows],
        "type": str(hit.code_type),
        "acd": hit.certificate.to_dict(),
        "distance": hit.distance.to_dict(),
    }


def cmd_search(args) -> int:
    try:
        # --filter may repeat, each value a comma list
        filters = {f.strip() for arg in args.filter or [] for f in arg.split(",") if f.strip()}
        trials = args.trials if args.trials == "exhaustive" else int(args.trials)
        spec = SearchSpec(
            alpha=args.alpha,
            beta=args.beta,
            k=args.k,
            target_type=CodeType.parse(args.type) if args.type else None,
            trials=trials,
            filters=frozenset(filters),
            min_d=args.min_d,
            seed=args.seed,
            cap=args.cap,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    count = 0
    for hit in search(spec):
        if args.format == "json":
            print(json.dumps(_hit_dict(hit)))
        else:
            conds = ", ".join(hit.certificate.matched_conditions) or "none"
            print(f"trial {hit.trial}: type {hit.code_type} {hit.certificate.label} "
                  f"[{conds}] image {hit.distance.params()} {hit.distance.optimality} "
                  f"rows {'; '.join(str(r) for r in hit.code.rows)}")
        count += 1
        if args.limit and count >= args.limit:
            break
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _trials(text: str):
    if text == "exhaustive":
        return text
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a count or 'exhaustive'")
    if v < 0:
        raise argparse.ArgumentTypeError("trials must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help=f"max words any brute-force step may enumerate (default {DEFAULT_CAP})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="acdcodes", parents=[common],
                                description="ACD codes over F2^alpha x F4^beta and their binary images.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full report for a code file")
    a.add_argument("path")
    a.add_argument("--table", help="extra best-known table ('n k d' lines)")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("dual", parents=[common], help="generators of the dual code")
    d.add_argument("path")
    d.set_defaults(func=cmd_dual)

    w = sub.add_parser("wimage", parents=[common], help="binary image under W")
    w.add_argument("path")
    w.add_argument("--table", help="extra best-known table ('n k d' lines)")
    w.set_defaults(func=cmd_wimage)

    v = sub.add_parser("verify-paper", parents=[common], help="check the embedded example corpus")
    v.add_argument("--corpus", help="corpus directory (default: the packaged one)")
    v.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("search", parents=[common], help="randomized or exhaustive code search")
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--beta", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--type", help="target type, e.g. '(3,2;1,0,1)'")
    s.add_argument("--trials", type=_trials, default=1000, help="count or 'exhaustive'")
    s.add_argument("--filter", action="append", help=f"comma list from {','.join(FILTERS)}")
    s.add_argument("--min-d", type=int, dest="min_d")
    s.add_argument("--limit", type=int, default=0, help="stop after this many hits")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name, default in (("format", "text"), ("cap", DEFAULT_CAP), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except CodeFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # output piped into e.g. head; silence the interpreter's flush at exit
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
