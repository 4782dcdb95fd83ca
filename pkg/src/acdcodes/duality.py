"""Inner product <.,.>_4, dual codes, hulls and complementary-duality tests.

For u = (a | c + wq) and v = (a' | c' + wq') the product splits as

    <u, v>_4 = s + w t,   s = c.c' + q.q',   t = a.a' + c.q' + q.c' + q.q'

with every dot product taken mod 2. Both ``s`` and ``t`` are symmetric
F2-bilinear forms, so duals and hulls are kernels of GF(2) systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .code_model import (
    AdditiveCode,
    DEFAULT_CAP,
    code_from_packed,
    enumerate_packed,
    puncture_x,
    puncture_y,
    is_separable,
    x_mask,
)
from .field_core import (
    ONE,
    W,
    W2,
    ZERO,
    MixedWord,
    combine_packed,
    det_f4,
    echelon_packed,
    f4_dot,
    kernel_packed,
    left_kernel_packed,
    pack_word,
    popcount,
    rank_packed,
    rref_f4,
    unpack_word,
)

CONDITION_NAMES = (
    "CaseI",
    "CaseII",
    "CaseIII",
    "ZeroOffDiagonal",
    "InvertibleDiagonalGram",
    "Th23",
    "Th27",
    "Prop28",
    "Prop29",
    "Cor35",
    "Th37",
    "Prop38",
    "ImageLCD",
)
REFUTATION_NAMES = ("Cor25", "Cor33")


class InapplicableError(ValueError):
    """An operation's hypotheses do not hold for the given code."""


def _check_shapes(u: MixedWord, v: MixedWord) -> None:
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")


def decompose_inner_product(u: MixedWord, v: MixedWord) -> tuple[int, int]:
    """Return the bits ``(s, t)`` with ``<u, v>_4 = s + w t``."""
    _check_shapes(u, v)
    return _st_packed(pack_word(u), pack_word(v), u.alpha, u.beta)


def inner_product4(u: MixedWord, v: MixedWord) -> int:
    """w * sum(a_i c_i) + sum(b_j d_j), binary sum reduced mod 2 first."""
    _check_shapes(u, v)
    s = f4_dot(u.y, v.y)
    if popcount(_bits(u.x) & _bits(v.x)) & 1:
        s ^= W
    return s


def _bits(xs: Sequence[int]) -> int:
    v = 0
    for i, a in enumerate(xs):
        v |= a << i
    return v


def _st_packed(u: int, v: int, alpha: int, beta: int) -> tuple[int, int]:
    xm = x_mask(alpha, beta)
    cu = (u >> alpha) & ((1 << beta) - 1)
    qu = u >> (alpha + beta)
    cv = (v >> alpha) & ((1 << beta) - 1)
    qv = v >> (alpha + beta)
    s = popcount(cu & cv) + popcount(qu & qv)
    t = popcount(u & v & xm) + popcount(cu & qv) + popcount(qu & cv) + popcount(qu & qv)
    return s & 1, t & 1


def _constraint_rows(u: int, alpha: int, beta: int) -> tuple[int, int]:
    """Packed rows ``(rs, rt)`` with s(u, v) = <rs, v> and t(u, v) = <rt, v> as GF(2) dots."""
    xm = x_mask(alpha, beta)
    c = (u >> alpha) & ((1 << beta) - 1)
    q = u >> (alpha + beta)
    rs = (c << alpha) | (q << (alpha + beta))
    # t = a.a' + c.q' + q.c' + q.q'  ->  x-part a, b-plane q, q-plane c ^ q
    rt = (u & xm) | (q << alpha) | ((c ^ q) << (alpha + beta))
    return rs, rt


def constraint_system(c: AdditiveCode) -> list[int]:
    """The 2k GF(2) rows whose common kernel is C-perp."""
    out = []
    for g in c.packed:
        out.extend(_constraint_rows(g, c.alpha, c.beta))
    return out


def st_matrices(c: AdditiveCode) -> tuple[list[int], list[int]]:
    """Packed k x k matrices S, T with Gram = S + wT (row i packs column j at bit j)."""
    k = c.k
    S, T = [], []
    for i in range(k):
        srow = trow = 0
        for j in range(k):
            s, t = _st_packed(c.packed[i], c.packed[j], c.alpha, c.beta)
            srow |= s << j
            trow |= t << j
        S.append(srow)
        T.append(trow)
    return S, T


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(self.size) for j in range(self.size))

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j] == ZERO for i in range(self.size) for j in range(self.size) if i != j)

    def det(self) -> int:
        return det_f4(self.entries) if self.entries else ONE

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def gram_matrix(c: AdditiveCode) -> GramMatrix:
    rows = c.rows
    return GramMatrix(tuple(tuple(inner_product4(u, v) for v in rows) for u in rows))


def dual_code(c: AdditiveCode) -> AdditiveCode:
    """C-perp as the GF(2) kernel of the s/t constraint rows of every generator."""
    basis = kernel_packed(constraint_system(c), c.nbits)
    return code_from_packed(c.alpha, c.beta, basis)


def hull_packed(c: AdditiveCode) -> list[int]:
    """Echelon basis (packed) of C ∩ C-perp.

    A codeword lam.G lies in C-perp iff lam [S | T] = 0.
    """
    S, T = st_matrices(c)
    k = c.k
    system = [S[i] | (T[i] << k) for i in range(k)]
    lams = left_kernel_packed(system, 2 * k)
    return echelon_packed(combine_packed(lam, c.packed) for lam in lams)


def hull(c: AdditiveCode) -> AdditiveCode:
    return code_from_packed(c.alpha, c.beta, hull_packed(c))


def _lex_smallest_nonzero(basis: Sequence[int]) -> int:
    """Lexicographically smallest nonzero vector of a span (coordinate 0 compared first).

    With leftmost-coordinate pivots and a fully reduced basis, it is the basis
    vector whose pivot lies furthest right.
    """
    ech = echelon_packed(basis)
    return max(ech, key=lambda r: (r & -r).bit_length())


@dataclass
class AcdCertificate:
    verdict: bool
    witness: Optional[MixedWord] = None
    matched_conditions: list[str] = field(default_factory=list)
    refuting_conditions: list[str] = field(default_factory=list)
    hull_dim: int = 0

    @property
    def label(self) -> str:
        return "ACD" if self.verdict else "not-ACD"

    def to_dict(self) -> dict:
        return {
            "verdict": "ACD" if self.verdict else "not-ACD",
            "witness": str(self.witness) if self.witness is not None else None,
            "matched_conditions": list(self.matched_conditions),
            "refuting_conditions": list(self.refuting_conditions),
            "hull_dim": self.hull_dim,
        }


def hull_witness(c: AdditiveCode) -> Optional[MixedWord]:
    basis = hull_packed(c)
    if not basis:
        return None
    return unpack_word(_lex_smallest_nonzero(basis), c.alpha, c.beta)


def is_acd_hull(c: AdditiveCode) -> bool:
    return not hull_packed(c)


def is_acd(c: AdditiveCode, cap: int = DEFAULT_CAP) -> AcdCertificate:
    """Hull-based verdict, annotated with every sufficient condition that holds."""
    from .wmap import is_image_lcd, w_map_code  # wmap builds on this module

    basis = hull_packed(c)
    cert = AcdCertificate(verdict=not basis, hull_dim=len(basis))
    if basis:
        cert.witness = unpack_word(_lex_smallest_nonzero(basis), c.alpha, c.beta)

    case = classify_three_cases(c)
    if case:
        cert.matched_conditions.append(case)
    checks = [
        ("ZeroOffDiagonal", classify_zero_offdiagonal),
        ("InvertibleDiagonalGram", classify_invertible_diagonal_gram),
        ("Th23", lambda x: predicate_th23(x, cap)),
        ("Th27", lambda x: predicate_th27(x, cap)),
        ("Prop28", predicate_prop28),
        ("Prop29", predicate_prop29),
        ("Cor35", lambda x: predicate_cor35(x, cap)),
        ("Th37", predicate_th37),
        ("Prop38", predicate_prop38),
        ("ImageLCD", lambda x: is_image_lcd(w_map_code(x))),
    ]
    for name, fn in checks:
        if fn(c):
            cert.matched_conditions.append(name)
    for name, fn in (("Cor25", predicate_cor25), ("Cor33", predicate_cor33)):
        if fn(c):
            cert.refuting_conditions.append(name)
    return cert


# ---------------------------------------------------------------------------
# Gram-matrix classifiers

_CASE_SETS = {
    "CaseI": frozenset({ZERO, ONE}),
    "CaseII": frozenset({ZERO, W}),
    "CaseIII": frozenset({ZERO, W2}),
}


def classify_three_cases(c: AdditiveCode) -> Optional[str]:
    """First of CaseI/II/III whose off-diagonal set contains every cross product
    and excludes every self product; None if no case applies."""
    if c.k == 0:
        return None
    g = gram_matrix(c)
    k = g.size
    diag = {g[i, i] for i in range(k)}
    off = {g[i, j] for i in range(k) for j in range(k) if i != j}
    for name, allowed in _CASE_SETS.items():
        if off <= allowed and not (diag & allowed):
            return name
    return None


def classify_zero_offdiagonal(c: AdditiveCode) -> bool:
    if c.k == 0:
        return False
    g = gram_matrix(c)
    return g.is_diagonal() and all(g[i, i] != ZERO for i in range(g.size))


def classify_invertible_diagonal_gram(c: AdditiveCode) -> bool:
    if c.k == 0:
        return False
    g = gram_matrix(c)
    return g.is_diagonal() and g.det() != ZERO


# ---------------------------------------------------------------------------
# orthogonality of codes


def is_self_orthogonal(c: AdditiveCode) -> bool:
    """Every pair of generators (i = j included) has zero product."""
    for i, u in enumerate(c.packed):
        for v in c.packed[i:]:
            if _st_packed(u, v, c.alpha, c.beta) != (0, 0):
                return False
    return True


def _is_f4_linear(c: AdditiveCode) -> bool:
    if c.alpha:
        return False
    for r in c.rows:
        if MixedWord((), tuple(_times_w(v) for v in r.y)) not in c:
            return False
    return True


def _times_w(v: int) -> int:
    return (ZERO, W, W2, ONE)[v]


def is_lcd_linear(c: AdditiveCode) -> bool:
    """Massey's test: det(G G^t) != 0 over the code's own field.

    Only for binary codes (beta = 0) and GF(4)-linear codes (alpha = 0 and
    closed under multiplication by w).
    """
    if c.beta == 0:
        g = [[r.x[j] for j in range(c.alpha)] for r in c.rows]
        k = len(g)
        gram = [[sum(a & b for a, b in zip(g[i], g[j])) & 1 for j in range(k)] for i in range(k)]
        return rank_packed(sum(v << j for j, v in enumerate(row)) for row in gram) == k
    if not _is_f4_linear(c):
        raise InapplicableError("code is not linear over its field; use the hull test (is_acd)")
    basis, _ = rref_f4([list(r.y) for r in c.rows])
    gram = [[f4_dot(u, v) for v in basis] for u in basis]
    return (det_f4(gram) if gram else ONE) != ZERO


def _xrows(c: AdditiveCode) -> list[int]:
    return [p & x_mask(c.alpha, c.beta) for p in c.packed]


def _gx_gram(c: AdditiveCode) -> list[int]:
    xs = _xrows(c)
    return [sum((popcount(u & v) & 1) << j for j, v in enumerate(xs)) for u in xs]


def gx_self_orthogonal(c: AdditiveCode) -> bool:
    """G_X G_X^t = 0: the binary parts of the generators span a self-orthogonal code."""
    return not any(_gx_gram(c))


def gy_self_orthogonal(c: AdditiveCode) -> bool:
    ys = [r.y for r in c.rows]
    return all(f4_dot(u, v) == ZERO for u in ys for v in ys)


def gy_gram(c: AdditiveCode) -> list[list[int]]:
    ys = [r.y for r in c.rows]
    return [[f4_dot(u, v) for v in ys] for u in ys]


def _is_acd_code(c: AdditiveCode) -> bool:
    return is_acd_hull(c)


def _binary_parts_nonzero(c: AdditiveCode) -> bool:
    # no nonzero codeword with zero binary part  <=>  projection to X is injective
    return puncture_x(c).k == c.k


def _quaternary_parts_nonzero(c: AdditiveCode) -> bool:
    return puncture_y(c).k == c.k


def _is_lcd_binary(c: AdditiveCode) -> bool:
    return is_lcd_linear(c)


def predicate_th23(c: AdditiveCode, cap: int = DEFAULT_CAP) -> bool:
    """C_X binary LCD, C_Y self-orthogonal, every nonzero codeword has a nonzero binary part."""
    if c.k == 0 or c.alpha == 0:
        return False
    return _binary_parts_nonzero(c) and _is_lcd_binary(puncture_x(c)) and is_self_orthogonal(puncture_y(c))


def predicate_th27(c: AdditiveCode, cap: int = DEFAULT_CAP) -> bool:
    """C_X self-orthogonal, C_Y ACD, every nonzero codeword has a nonzero quaternary part."""
    if c.k == 0 or c.beta == 0:
        return False
    return (
        _quaternary_parts_nonzero(c)
        and is_self_orthogonal(puncture_x(c))
        and _is_acd_code(puncture_y(c))
    )


def predicate_cor35(c: AdditiveCode, cap: int = DEFAULT_CAP) -> bool:
    """Th27 with C_X self-dual."""
    if c.alpha == 0 or c.alpha % 2:
        return False
    cx = puncture_x(c)
    return 2 * cx.k == c.alpha and predicate_th27(c, cap)


def predicate_prop28(c: AdditiveCode) -> bool:
    """G_X G_X^t = I and G_Y self-orthogonal (Gram = w I)."""
    if c.k == 0:
        return False
    g = _gx_gram(c)
    return all(row == 1 << i for i, row in enumerate(g)) and gy_self_orthogonal(c)


def predicate_prop29(c: AdditiveCode) -> bool:
    """G = (I_alpha | G_Y) with G_Y self-orthogonal."""
    if c.k == 0 or c.k != c.alpha:
        return False
    ident = all(r.x == tuple(int(i == j) for j in range(c.alpha)) for i, r in enumerate(c.rows))
    return ident and gy_self_orthogonal(c)


def predicate_th37(c: AdditiveCode) -> bool:
    """G_X self-orthogonal and G_Y G_Y^t an invertible diagonal matrix."""
    if c.k == 0 or not gx_self_orthogonal(c):
        return False
    gy = gy_gram(c)
    k = len(gy)
    if any(gy[i][j] for i in range(k) for j in range(k) if i != j):
        return False
    return all(gy[i][i] for i in range(k))


def is_identity_omega_stack(c: AdditiveCode) -> bool:
    """G_Y equals (I_beta ; w I_beta) row for row."""
    b = c.beta
    if b == 0 or c.k != 2 * b:
        return False
    for i, r in enumerate(c.rows):
        val = ONE if i < b else W
        col = i % b
        if r.y != tuple(val if j == col else ZERO for j in range(b)):
            return False
    return True


def predicate_prop38(c: AdditiveCode) -> bool:
    """G_X self-orthogonal and G_Y = (I_beta ; w I_beta)."""
    return is_identity_omega_stack(c) and gx_self_orthogonal(c)


def predicate_cor25(c: AdditiveCode) -> bool:
    """C_X not LCD and C_Y self-orthogonal; when true, C is not ACD."""
    if c.k == 0:
        return False
    return not _is_lcd_binary(puncture_x(c)) and is_self_orthogonal(puncture_y(c))


def predicate_cor33(c: AdditiveCode) -> bool:
    """C_X self-orthogonal and C_Y not ACD; when true, C is not ACD."""
    if c.k == 0:
        return False
    return is_self_orthogonal(puncture_x(c)) and not _is_acd_code(puncture_y(c))


# ---------------------------------------------------------------------------
# structural checks that must always hold


def check_cardinality_bound(c: AdditiveCode) -> bool:
    """|C| |C-perp| <= 2^(alpha + 2 beta)."""
    return c.k + dual_code(c).k <= c.nbits


def euclidean_dual_y(cy: AdditiveCode) -> AdditiveCode:
    """Euclidean GF(4) dual of a quaternary code (alpha = 0)."""
    return dual_code(cy)


def check_separable_containment(c: AdditiveCode) -> bool:
    """C_X-perp x C_Y-perp lies inside C-perp (separable codes only)."""
    if not is_separable(c):
        raise InapplicableError("code is not separable")
    cx, cy = puncture_x(c), puncture_y(c)
    dx = dual_code(cx)
    dy = euclidean_dual_y(cy)
    gens = [MixedWord(r.x, (0,) * c.beta) for r in dx.rows]
    gens += [MixedWord((0,) * c.alpha, r.y) for r in dy.rows]
    return all(inner_product4(v, u) == ZERO for v in gens for u in c.rows)


# ---------------------------------------------------------------------------
# brute-force oracles (tests and small-scale cross checks)


def dual_by_enumeration(c: AdditiveCode) -> AdditiveCode:
    """C-perp by scanning the whole ambient space."""
    alpha, beta = c.alpha, c.beta
    vs = np.arange(1 << c.nbits, dtype=np.uint64)
    ym = np.uint64((1 << beta) - 1)
    xv = vs & np.uint64(x_mask(alpha, beta))
    cv = (vs >> np.uint64(alpha)) & ym
    qv = vs >> np.uint64(alpha + beta)
    keep = np.ones(len(vs), dtype=bool)
    for g in c.packed:
        s, t = _st_packed_parts(g, alpha, beta)
        # same s/t formulas as _st_packed, one generator against every ambient word
        sv = np.bitwise_count(cv & s[0]) + np.bitwise_count(qv & s[1])
        tv = (np.bitwise_count(xv & t[0]) + np.bitwise_count(qv & t[1])
              + np.bitwise_count(cv & t[2]) + np.bitwise_count(qv & t[3]))
        keep &= ((sv & 1) == 0) & ((tv & 1) == 0)
    hits = [int(v) for v in vs[keep]]
    return code_from_packed(alpha, beta, hits)


def _st_packed_parts(u: int, alpha: int, beta: int):
    c = (u >> alpha) & ((1 << beta) - 1)
    q = u >> (alpha + beta)
    s = (np.uint64(c), np.uint64(q))
    t = (np.uint64(u & x_mask(alpha, beta)), np.uint64(c), np.uint64(q), np.uint64(q))
    return s, t


def is_acd_double_loop(c: AdditiveCode, cap: int = DEFAULT_CAP) -> bool:
    """ACD by testing every codeword against every codeword."""
    words = list(enumerate_packed(c, cap))
    for u in words[1:]:
        if all(_st_packed(u, v, c.alpha, c.beta) == (0, 0) for v in words):
            return False
    return True
