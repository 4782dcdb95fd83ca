"""The map W: F2^alpha F4^beta -> F2^(alpha + 2 beta) and binary-image tests.

W(a | b + wq) = (a | b + q | q). Images are ordinary AdditiveCodes with
beta = 0, so the duality toolkit applies to them unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .code_model import AdditiveCode, code_from_rows, puncture_x
from .duality import (
    InapplicableError,
    dual_code,
    gx_self_orthogonal,
    gy_self_orthogonal,
    is_identity_omega_stack,
    is_lcd_linear,
    is_self_orthogonal,
)
from .field_core import MixedWord, det_f2, gram_f2, matmul_f2


def w_map_word(u: MixedWord) -> tuple[int, ...]:
    b = tuple(v & 1 for v in u.y)
    q = tuple(v >> 1 for v in u.y)
    return u.x + tuple(x ^ y for x, y in zip(b, q)) + q


@dataclass(frozen=True)
class WImage:
    source: AdditiveCode
    image: AdditiveCode

    @property
    def n(self) -> int:
        return self.image.alpha

    @property
    def k(self) -> int:
        return self.image.k

    def generator_matrix(self) -> np.ndarray:
        return np.array([r.x for r in self.image.rows], dtype=np.uint8).reshape(self.k, self.n)


def w_map_code(c: AdditiveCode) -> WImage:
    """Row i of the image is W(row i of the source)."""
    n = c.alpha + 2 * c.beta
    rows = [MixedWord(w_map_word(r), ()) for r in c.rows]
    image = AdditiveCode(n, 0, tuple(rows))
    return WImage(c, image)


def image_gram(w: WImage) -> np.ndarray:
    """k x k binary Gram matrix of the image generators."""
    return gram_f2(w.generator_matrix())


def is_image_lcd(w: WImage) -> bool:
    if w.k == 0:
        return True
    return bool(det_f2(image_gram(w)))


def check_w_dual_containment(c: AdditiveCode) -> bool:
    """W(C-perp) is orthogonal to W(C) generator by generator."""
    left = w_map_code(dual_code(c)).generator_matrix()
    right = w_map_code(c).generator_matrix()
    if left.size == 0 or right.size == 0:
        return True
    return not matmul_f2(left, right.T).any()


def split_quaternary_generators(c: AdditiveCode) -> tuple[np.ndarray, np.ndarray]:
    """(G1, G2) with G_Y = G1 + w G2 entrywise."""
    y = np.array([r.y for r in c.rows], dtype=np.uint8).reshape(c.k, c.beta)
    return y & 1, y >> 1


def _lemma30_parts(c: AdditiveCode) -> tuple[np.ndarray, np.ndarray]:
    g1, g2 = split_quaternary_generators(c)
    first = (matmul_f2(g1, g1.T) + matmul_f2(g2, g2.T)) & 1
    second = (matmul_f2(g1, g2.T) + matmul_f2(g2, g1.T) + matmul_f2(g2, g2.T)) & 1
    return first, second


def check_lemma30_identities(c: AdditiveCode) -> bool:
    """G1 G1^t + G2 G2^t = 0 and G1 G2^t + G2 G1^t + G2 G2^t = 0 for self-orthogonal C (alpha = 0)."""
    if c.alpha:
        raise InapplicableError("expects a purely quaternary code (alpha = 0)")
    if not is_self_orthogonal(c):
        raise InapplicableError("code is not self-orthogonal")
    first, second = _lemma30_parts(c)
    return not first.any() and not second.any()


def th44_matrix(c: AdditiveCode) -> np.ndarray:
    """G1 G1^t + G1 G2^t + G2 G1^t over GF(2)."""
    g1, g2 = split_quaternary_generators(c)
    return (matmul_f2(g1, g1.T) + matmul_f2(g1, g2.T) + matmul_f2(g2, g1.T)) & 1


def predicate_th44(c: AdditiveCode, reasons: Optional[list] = None) -> bool:
    """G_X self-orthogonal and det(G1 G1^t + G1 G2^t + G2 G1^t) != 0; implies W(C) is LCD."""
    if c.k == 0:
        _note(reasons, "zero code")
        return False
    if not gx_self_orthogonal(c):
        _note(reasons, "G_X does not generate a self-orthogonal binary code")
        return False
    if not det_f2(th44_matrix(c)):
        _note(reasons, "det(G1 G1^t + G1 G2^t + G2 G1^t) = 0")
        return False
    return True


def predicate_prop_th30(c: AdditiveCode, reasons: Optional[list] = None) -> bool:
    """G_X self-orthogonal and G_Y = (I_beta ; w I_beta); image Gram is (I I ; I 0)."""
    if not is_identity_omega_stack(c):
        _note(reasons, "G_Y is not (I_beta ; w I_beta)")
        return False
    if not gx_self_orthogonal(c):
        _note(reasons, "G_X does not generate a self-orthogonal binary code")
        return False
    return True


def predicate_the41(c: AdditiveCode, reasons: Optional[list] = None) -> bool:
    """C_X binary LCD, G_Y self-orthogonal, every nonzero codeword has a nonzero binary part."""
    if c.k == 0 or c.alpha == 0:
        _note(reasons, "no binary block")
        return False
    if puncture_x(c).k != c.k:
        _note(reasons, "some nonzero codeword has a zero binary part")
        return False
    if not is_lcd_linear(puncture_x(c)):
        _note(reasons, "G_X does not generate a binary LCD code")
        return False
    if not gy_self_orthogonal(c):
        _note(reasons, "G_Y does not generate a self-orthogonal code")
        return False
    return True


def _note(reasons: Optional[list], msg: str) -> None:
    if reasons is not None:
        reasons.append(msg)


def equivalence_condition(c: AdditiveCode) -> Optional[int]:
    """Which of the four listed structures (1-4) makes 'ACD iff image LCD' hold, if any."""
    if c.k == 0:
        return None
    if predicate_the41(c):
        return 1
    gx = np.array([r.x for r in c.rows], dtype=np.uint8).reshape(c.k, c.alpha)
    if c.alpha and np.array_equal(gram_f2(gx), np.eye(c.k, dtype=np.uint8)) and gy_self_orthogonal(c):
        return 2
    if c.k == c.alpha and np.array_equal(gx, np.eye(c.alpha, dtype=np.uint8)) and gy_self_orthogonal(c):
        return 3
    if predicate_prop_th30(c):
        return 4
    return None


def infer_acd_from_image(c: AdditiveCode) -> Optional[bool]:
    """True when W(C) is LCD (then C is ACD); None otherwise, never False."""
    return True if is_image_lcd(w_map_code(c)) else None


def binary_code(rows, n: Optional[int] = None) -> AdditiveCode:
    """A beta = 0 code from 0/1 rows."""
    rows = [MixedWord(tuple(int(v) for v in r), ()) for r in rows]
    if n is None:
        n = len(rows[0].x) if rows else 0
    return code_from_rows(n, 0, rows)
