"""Acceptance suite: one test and one reported PASS/FAIL line per criterion.

Tolerances are pinned below; every numeric check is exact.
"""

import shutil
import time

import numpy as np

import oracles
from acdcodes.cli import EXIT_FAIL, EXIT_OK, default_corpus, main, read_manifest, verify_corpus
from acdcodes.code_model import code_from_packed, code_from_rows, enumerate_codewords, puncture_x, puncture_y
from acdcodes.duality import (
    check_cardinality_bound,
    classify_three_cases,
    dual_by_enumeration,
    dual_code,
    gram_matrix,
    hull,
    is_acd,
    is_acd_double_loop,
    is_acd_hull,
    is_lcd_linear,
    is_self_orthogonal,
)
from acdcodes.field_core import MixedWord, det_f2
from acdcodes.metrics_search import canonical_generators, min_distance
from acdcodes.wmap import (
    check_lemma30_identities,
    check_w_dual_containment,
    image_gram,
    is_image_lcd,
    predicate_prop_th30,
    predicate_th44,
    predicate_the41,
    w_map_code,
)
from conftest import ACCEPTANCE_LOG, example_code

# pinned tolerances
C1_SECONDS = 1.0
C4_SECONDS = 5.0
C5_MIN_CODES = 10_000
C5_MAX_ALPHA, C5_MAX_BETA, C5_MAX_K = 6, 4, 8
C5_SEED = 20240601
C6_MAX_NBITS = 8
C6_SECONDS = 60.0
MAX_VIOLATIONS = 0


def report(n, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {n}: {status}  {title}"
    if detail:
        line += f"  ({detail})"
    if failures:
        line += "  failures: " + "; ".join(failures[:5])
    print(line)
    ACCEPTANCE_LOG.append(line)
    assert not failures, line


def words_of(c):
    return {(w.x, w.y) for w in enumerate_codewords(c)}


# --- 1 --------------------------------------------------------------------------


def test_criterion_1_dual_example():
    fails = []
    t0 = time.perf_counter()
    c = code_from_rows(2, 2, ["11|w1", "01|Ww"])
    d = dual_code(c)
    want = words_of(code_from_rows(2, 2, ["00|1w", "00|wW"]))
    if words_of(d) != want or len(want) != 4:
        fails.append("dual codeword set")
    if words_of(d) != oracles.dual([(r.x, r.y) for r in c.rows], 2, 2):
        fails.append("dual disagrees with ambient scan")
    wd = w_map_code(d).image.size
    wperp = dual_code(w_map_code(c).image).size
    if (wd, wperp) != (4, 16):
        fails.append(f"|W(C-perp)|, |W(C)-perp| = {wd}, {wperp}")
    if not check_w_dual_containment(c):
        fails.append("containment")
    dt = time.perf_counter() - t0
    if dt >= C1_SECONDS:
        fails.append(f"runtime {dt:.3f}s")
    report(1, "dual example reproduced, |W(C-perp)|=4 < |W(C)-perp|=16", fails, f"{dt:.3f}s < {C1_SECONDS}s")


# --- 2 --------------------------------------------------------------------------


def test_criterion_2_classifiers():
    fails = []
    for name, want in (("case1", "CaseI"), ("case2", "CaseII"), ("case3", "CaseIII")):
        got = classify_three_cases(example_code(name))
        if got != want:
            fails.append(f"{name}: {got}")
        if not is_acd(example_code(name)).verdict:
            fails.append(f"{name} not ACD")
    c = example_code("nocase")
    cert = is_acd(c)
    if not cert.verdict or classify_three_cases(c) is not None:
        fails.append("no-case example")
    if any(n.startswith("Case") for n in cert.matched_conditions):
        fails.append("no-case example matched a case")
    if gram_matrix(example_code("identity_gram")).as_lists() != [[1, 0], [0, 1]]:
        fails.append("Gram != I2")
    report(2, "three cases, no-case ACD, Gram = I2", fails)


# --- 3 --------------------------------------------------------------------------


def test_criterion_3_verdicts():
    fails = []
    positive = {"exa11": "Th23", "prop29": "Prop29", "th27": "Th27", "cor35": "Cor35",
                "th37": "Th37", "prop38": "Prop38"}
    for name, cond in positive.items():
        cert = is_acd(example_code(name))
        if not cert.verdict or cond not in cert.matched_conditions:
            fails.append(f"{name}: {cert.label} {cert.matched_conditions}")
    for name, cond in (("cor25", "Cor25"), ("cor33", "Cor33")):
        cert = is_acd(example_code(name))
        if cert.verdict or cond not in cert.refuting_conditions:
            fails.append(f"{name}: {cert.label} {cert.refuting_conditions}")
    c = example_code("counterexample")
    cert = is_acd(c)
    if cert.verdict or cert.witness != MixedWord.parse("11|00ww"):
        fails.append(f"counterexample witness {cert.witness}")
    if not is_lcd_linear(puncture_x(c)) or not is_acd_hull(puncture_y(c)):
        fails.append("counterexample punctured codes")
    report(3, "ACD verdicts with named conditions; three not-ACD examples", fails)


# --- 4 --------------------------------------------------------------------------


def test_criterion_4_images():
    fails = []
    t0 = time.perf_counter()
    w = w_map_code(example_code("good_image"))
    rep = min_distance(w.image)
    got = (det_f2(image_gram(w)), rep.n, rep.k, rep.d, rep.best_known, rep.gap, rep.optimality)
    if got != (1, 16, 6, 5, 6, 1, "near-optimal(gap 1)"):
        fails.append(f"(4,6;2,2,0): {got}")
    w = w_map_code(example_code("optimal_lcd"))
    rep = min_distance(w.image)
    got = (is_image_lcd(w), rep.d, rep.best_known, rep.optimality)
    if got != (True, 4, 4, "optimal"):
        fails.append(f"(3,2;1,0,1): {got}")
    c = example_code("optimal_not_lcd")
    w = w_map_code(c)
    rep = min_distance(w.image)
    got = (det_f2(image_gram(w)), is_image_lcd(w), rep.d, is_acd_hull(c))
    if got != (0, False, 4, True):
        fails.append(f"(3,2;0,1,0): {got}")
    dt = time.perf_counter() - t0
    if dt >= C4_SECONDS:
        fails.append(f"runtime {dt:.3f}s")
    report(4, "image Gram dets, [16,6,5] gap 1, [7,2,4] optimal LCD / not LCD", fails,
           f"{dt:.3f}s < {C4_SECONDS}s")


# --- 5 --------------------------------------------------------------------------


def random_codes(rng, count):
    made = 0
    while made < count:
        alpha = int(rng.integers(0, C5_MAX_ALPHA + 1))
        beta = int(rng.integers(0, C5_MAX_BETA + 1))
        if alpha + beta == 0:
            continue
        nbits = alpha + 2 * beta
        k = int(rng.integers(1, min(C5_MAX_K, nbits) + 1))
        rows = [int(v) for v in rng.integers(0, 1 << nbits, size=k)]
        made += 1
        yield code_from_packed(alpha, beta, rows)


def test_criterion_5_theorem_properties():
    rng = np.random.default_rng(C5_SEED)
    fails = []
    n = fired = lcd_images = so_checked = so_nonzero = 0
    for c in random_codes(rng, C5_MIN_CODES):
        n += 1
        trivial_hull = hull(c).k == 0
        cert = is_acd(c)
        # (a) fired sufficient conditions, including the image-side ones
        image_side = [predicate_th44(c), predicate_prop_th30(c), predicate_the41(c) and trivial_hull]
        if cert.matched_conditions:
            fired += 1
            if not trivial_hull:
                fails.append(f"(a) {c.rows} {cert.matched_conditions}")
        w = w_map_code(c)
        if any(image_side) and not is_image_lcd(w):
            fails.append(f"(a) image-side condition without LCD image: {c.rows}")
        # (b)
        if not check_w_dual_containment(c):
            fails.append(f"(b) {c.rows}")
        # (c)
        if not check_cardinality_bound(c) or c.size * dual_code(c).size > 2 ** c.nbits:
            fails.append(f"(c) {c.rows}")
        # (d)
        if is_image_lcd(w):
            lcd_images += 1
            if not trivial_hull:
                fails.append(f"(d) {c.rows}")
        # (e) self-orthogonal quaternary codes: the hull of C_Y, and C_Y itself when self-orthogonal
        if c.beta:
            cy = puncture_y(c)
            for so in (hull(cy), cy):
                if is_self_orthogonal(so):
                    so_checked += 1
                    so_nonzero += so.k > 0
                    if not check_lemma30_identities(so):
                        fails.append(f"(e) {so.rows}")
    if n < C5_MIN_CODES:
        fails.append(f"only {n} codes")
    report(5, "(a)-(e) over random codes", fails,
           f"{n} codes, {fired} with fired conditions, {lcd_images} LCD images, "
           f"{so_checked} self-orthogonal codes ({so_nonzero} nonzero), violations {len(fails)} <= {MAX_VIOLATIONS}")


# --- 6 --------------------------------------------------------------------------


def test_criterion_6_oracle_equivalence():
    fails = []
    t0 = time.perf_counter()
    checked = 0
    for nbits in range(1, C6_MAX_NBITS + 1):
        for beta in range(0, nbits // 2 + 1):
            alpha = nbits - 2 * beta
            for k in (1, 2):
                for rows in canonical_generators(nbits, k):
                    c = code_from_packed(alpha, beta, rows)
                    checked += 1
                    if dual_code(c) != dual_by_enumeration(c):
                        fails.append(f"dual ({alpha},{beta}) {c.rows}")
                    if is_acd_hull(c) != is_acd_double_loop(c):
                        fails.append(f"acd ({alpha},{beta}) {c.rows}")
    dt = time.perf_counter() - t0
    if dt >= C6_SECONDS:
        fails.append(f"runtime {dt:.1f}s")
    report(6, "kernel dual = enumeration dual, hull ACD = double-loop ACD", fails,
           f"{checked} codes with alpha+2beta <= {C6_MAX_NBITS}, {dt:.1f}s < {C6_SECONDS}s")


# --- 7 --------------------------------------------------------------------------

QUATERNARY_NEXT = {"0": "1", "1": "w", "w": "W", "W": "0"}


def symbol_positions(text):
    """(line index, char index, replacement) for every generator symbol of a code file."""
    out = []
    lines = text.split("\n")
    header_seen = False
    alpha = None
    for li, line in enumerate(lines):
        body = line.split("#", 1)[0]
        if not body.strip() or body.lstrip().startswith("expect:"):
            continue
        if not header_seen:
            header_seen = True
            alpha = int(body.split("alpha=")[1].split()[0])
            continue
        seen = 0
        for ci, ch in enumerate(body):
            if ch in "01wW":
                repl = ("1" if ch == "0" else "0") if seen < alpha else QUATERNARY_NEXT[ch]
                out.append((li, ci, repl))
                seen += 1
    return out


def test_criterion_7_verify_paper(tmp_path, capsys):
    fails = []
    src = default_corpus()
    if main(["verify-paper"]) != EXIT_OK:
        fails.append("fresh corpus does not verify")
    capsys.readouterr()
    ids = read_manifest(src)
    dst = tmp_path / "corpus"
    shutil.copytree(src, dst)
    perturbations = 0
    for ex_id in ids:
        path = dst / f"{ex_id}.code"
        original = path.read_text()
        positions = symbol_positions(original)
        if not positions:
            fails.append(f"{ex_id}: no symbols found")
        for li, ci, repl in positions:
            lines = original.split("\n")
            lines[li] = lines[li][:ci] + repl + lines[li][ci + 1:]
            path.write_text("\n".join(lines))
            results = verify_corpus(dst)
            failing = sorted(k for k, v in results.items() if v)
            perturbations += 1
            if failing != [ex_id]:
                fails.append(f"{ex_id} line {li + 1} col {ci + 1}: failing {failing}")
        # one perturbation per file through the command itself
        li, ci, repl = positions[0]
        lines = original.split("\n")
        lines[li] = lines[li][:ci] + repl + lines[li][ci + 1:]
        path.write_text("\n".join(lines))
        code = main(["verify-paper", "--corpus", str(dst)])
        out = capsys.readouterr().out
        if code != EXIT_FAIL or f"failing: {ex_id}\n" not in out:
            fails.append(f"{ex_id}: verify-paper exit {code}")
        path.write_text(original)
    report(7, "verify-paper exits 0; each single-symbol perturbation fails exactly its example", fails,
           f"{len(ids)} examples, {perturbations} perturbations")
