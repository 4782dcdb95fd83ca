"""F2F4-additive codes: generators, enumeration, standard form and type."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .field_core import (
    MixedWord,
    combine_packed,
    echelon_packed,
    independent_subset,
    left_kernel_packed,
    pack_word,
    reduce_packed,
    unpack_word,
)

DEFAULT_CAP = 1 << 24


class EnumerationCapExceeded(RuntimeError):
    """A brute-force operation would need more than ``cap`` words."""

    def __init__(self, required: int, cap: int, what: str = "enumeration"):
        self.required = required
        self.cap = cap
        super().__init__(f"{what} needs {required} words but the cap is {cap}; raise --cap to at least {required}")


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """F2-span of independent generator rows in F2^alpha x F4^beta.

    Equality and hashing compare the spanned sets, not the generator lists.
    """

    alpha: int
    beta: int
    rows: tuple[MixedWord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        for i, r in enumerate(self.rows):
            if r.shape != (self.alpha, self.beta):
                raise ValueError(f"row {i} has shape {r.shape}, expected {(self.alpha, self.beta)}")
        if len(independent_subset(self.packed)) != len(self.rows):
            raise ValueError("generator rows are not F2-independent; use code_from_rows")

    @cached_property
    def packed(self) -> tuple[int, ...]:
        return tuple(pack_word(r) for r in self.rows)

    @cached_property
    def echelon(self) -> tuple[int, ...]:
        return tuple(echelon_packed(self.packed))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return self.alpha + self.beta

    @property
    def nbits(self) -> int:
        return self.alpha + 2 * self.beta

    @property
    def size(self) -> int:
        return 1 << self.k

    def contains_packed(self, v: int) -> bool:
        return reduce_packed(v, self.echelon) == 0

    def __contains__(self, word: MixedWord) -> bool:
        if word.shape != (self.alpha, self.beta):
            return False
        return self.contains_packed(pack_word(word))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdditiveCode):
            return NotImplemented
        return (self.alpha, self.beta, self.echelon) == (other.alpha, other.beta, other.echelon)

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta, self.echelon))

    def __repr__(self) -> str:
        rows = ", ".join(str(r) for r in self.rows)
        return f"AdditiveCode(alpha={self.alpha}, beta={self.beta}, rows=[{rows}])"

    def word(self, lam: int) -> MixedWord:
        """Codeword sum of rows[i] over the set bits i of ``lam``."""
        return unpack_word(combine_packed(lam, self.packed), self.alpha, self.beta)

    def codewords(self, cap: int = DEFAULT_CAP) -> Iterator[MixedWord]:
        return enumerate_codewords(self, cap)


@dataclass(frozen=True)
class CodeType:
    alpha: int
    beta: int
    k1: int
    k2p: int
    k2pp: int

    @property
    def k(self) -> int:
        return self.k1 + 2 * self.k2p + self.k2pp

    @property
    def k2(self) -> int:
        return self.k2pp + 2 * self.k2p

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return self.alpha, self.beta, self.k1, self.k2p, self.k2pp

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta};{self.k1},{self.k2p},{self.k2pp})"

    @classmethod
    def parse(cls, text: str) -> "CodeType":
        s = text.strip().strip("()").replace(";", ",")
        vals = [int(t) for t in s.split(",")]
        if len(vals) != 5:
            raise ValueError(f"bad code type {text!r}")
        return cls(*vals)


@dataclass(frozen=True)
class StandardForm:
    """Block-reduced generator matrix, in permuted coordinates.

    ``perm_x[i]`` / ``perm_y[j]`` give the original column placed at position
    ``i`` / ``j``. Rows are ordered: ``k1`` binary-pivot rows, ``k2p`` rows
    with a 1-pivot, ``k2p`` rows with an w-pivot on the same columns, then
    ``k2pp`` single-pivot rows.
    """

    matrix: tuple[MixedWord, ...]
    perm_x: tuple[int, ...]
    perm_y: tuple[int, ...]
    k1: int
    k2p: int
    k2pp: int
    alpha: int = field(default=0)
    beta: int = field(default=0)

    def permute(self, word: MixedWord) -> MixedWord:
        return MixedWord(
            tuple(word.x[i] for i in self.perm_x),
            tuple(word.y[j] for j in self.perm_y),
        )

    def code(self) -> AdditiveCode:
        return AdditiveCode(self.alpha, self.beta, self.matrix)

    @property
    def blocks(self) -> dict[str, tuple[MixedWord, ...]]:
        a, b = self.k1, self.k1 + self.k2p
        c = b + self.k2p
        return {
            "binary": self.matrix[:a],
            "one": self.matrix[a:b],
            "omega": self.matrix[b:c],
            "single": self.matrix[c:],
        }


def code_from_rows(alpha: int, beta: int, rows: Sequence[MixedWord | str]) -> AdditiveCode:
    """Build a code from possibly dependent rows, keeping the earliest independent ones."""
    words = []
    for i, r in enumerate(rows):
        if isinstance(r, str):
            try:
                r = MixedWord.parse(r, alpha)
            except ValueError as exc:
                raise ValueError(f"row {i}: {exc}") from exc
        if r.shape != (alpha, beta):
            raise ValueError(f"row {i} has shape {r.shape}, expected {(alpha, beta)}")
        words.append(r)
    keep = independent_subset([pack_word(w) for w in words])
    return AdditiveCode(alpha, beta, tuple(words[i] for i in keep))


def code_from_packed(alpha: int, beta: int, vectors: Sequence[int]) -> AdditiveCode:
    keep = independent_subset(list(vectors))
    return AdditiveCode(alpha, beta, tuple(unpack_word(vectors[i], alpha, beta) for i in keep))


def zero_code(alpha: int, beta: int) -> AdditiveCode:
    return AdditiveCode(alpha, beta, ())


def ambient_code(alpha: int, beta: int) -> AdditiveCode:
    n = alpha + 2 * beta
    return code_from_packed(alpha, beta, [1 << i for i in range(n)])


def enumerate_codewords(c: AdditiveCode, cap: int = DEFAULT_CAP) -> Iterator[MixedWord]:
    """All 2^k codewords, zero first, in Gray-code order of the coefficients."""
    if c.size > cap:
        raise EnumerationCapExceeded(c.size, cap)
    for v in _gray_walk(c.packed):
        yield unpack_word(v, c.alpha, c.beta)


def enumerate_packed(c: AdditiveCode, cap: int = DEFAULT_CAP) -> Iterator[int]:
    if c.size > cap:
        raise EnumerationCapExceeded(c.size, cap)
    return _gray_walk(c.packed)


def _gray_walk(rows: Sequence[int]) -> Iterator[int]:
    v = 0
    yield v
    for i in range(1, 1 << len(rows)):
        v ^= rows[(i & -i).bit_length() - 1]
        yield v


# ---------------------------------------------------------------------------
# coordinate masks on the linearized layout (x | b-plane | q-plane)


def x_mask(alpha: int, beta: int) -> int:
    return (1 << alpha) - 1


def b_mask(alpha: int, beta: int) -> int:
    return ((1 << beta) - 1) << alpha


def q_mask(alpha: int, beta: int) -> int:
    return ((1 << beta) - 1) << (alpha + beta)


def y_mask(alpha: int, beta: int) -> int:
    return b_mask(alpha, beta) | q_mask(alpha, beta)


def vanishing_subcode(c: AdditiveCode, mask: int) -> list[int]:
    """Echelon basis (packed) of the codewords that are zero on every bit of ``mask``."""
    restricted = [r & mask for r in c.packed]
    lams = left_kernel_packed(restricted, c.nbits)
    return echelon_packed(combine_packed(lam, c.packed) for lam in lams)


def puncture_x(c: AdditiveCode) -> AdditiveCode:
    """C_X: the binary code of the first alpha coordinates."""
    return code_from_rows(c.alpha, 0, [MixedWord(r.x, ()) for r in c.rows])


def puncture_y(c: AdditiveCode) -> AdditiveCode:
    """C_Y: the GF(4)-additive code of the last beta coordinates."""
    return code_from_rows(0, c.beta, [MixedWord((), r.y) for r in c.rows])


def binary_subcode(c: AdditiveCode) -> AdditiveCode:
    """C_b: codewords whose quaternary coordinates all lie in {0, 1}."""
    return code_from_packed(c.alpha, c.beta, vanishing_subcode(c, q_mask(c.alpha, c.beta)))


def is_separable(c: AdditiveCode) -> bool:
    """C = C_X x C_Y, decided by |C| = |C_X| |C_Y|."""
    return c.k == puncture_x(c).k + puncture_y(c).k


def separable_product(cx: AdditiveCode, cy: AdditiveCode) -> AdditiveCode:
    rows = [MixedWord(r.x, (0,) * cy.beta) for r in cx.rows]
    rows += [MixedWord((0,) * cx.alpha, r.y) for r in cy.rows]
    return code_from_rows(cx.alpha, cy.beta, rows)


# ---------------------------------------------------------------------------
# standard form


def _ycol_value(v: int, alpha: int, beta: int, j: int) -> int:
    return ((v >> (alpha + j)) & 1) | (((v >> (alpha + beta + j)) & 1) << 1)


def _lowest_ycol(v: int, alpha: int, beta: int) -> int:
    for j in range(beta):
        if _ycol_value(v, alpha, beta, j):
            return j
    raise AssertionError("row has a zero quaternary part")


def standard_form(c: AdditiveCode) -> StandardForm:
    """Reduce ``c`` to the binary / paired / single block layout.

    Only F2 row additions and column permutations inside each block are used;
    rows are never scaled by w. Block assignment is greedy:

    1. codewords with zero quaternary part (binary pivots);
    2. codewords with nonzero quaternary part in {0,1}^beta (single rows);
    3. codewords with quaternary part in {0,w}^beta whose binary parts extend
       the binary pivots;
    4. the remaining quotient, column by column: a column whose values span
       GF(4) gives a (1, w) pivot pair, one spanning a line gives a single row.
    """
    alpha, beta = c.alpha, c.beta
    xm = x_mask(alpha, beta)

    binary_rows: list[int] = list(vanishing_subcode(c, y_mask(alpha, beta)))
    chosen = echelon_packed(binary_rows)

    single_rows: list[int] = []
    for v in vanishing_subcode(c, q_mask(alpha, beta)):
        if reduce_packed(v, chosen):
            single_rows.append(v)
            chosen = echelon_packed(list(chosen) + [v])

    x_span = echelon_packed(r & xm for r in binary_rows)
    for v in vanishing_subcode(c, b_mask(alpha, beta)):
        if reduce_packed(v & xm, x_span):
            binary_rows.append(v)
            x_span = echelon_packed(list(x_span) + [v & xm])
            chosen = echelon_packed(list(chosen) + [v])

    rest = []
    for g in c.packed:
        r = reduce_packed(g, chosen)
        if r:
            rest.append(r)
            chosen = echelon_packed(list(chosen) + [r])

    one_rows: list[int] = []
    omega_rows: list[int] = []
    pair_cols: list[int] = []
    single_cols: list[int] = []
    live = list(rest)
    for j in range(beta):
        if not live:
            break
        val = lambda v: _ycol_value(v, alpha, beta, j)  # noqa: E731
        ia = next((i for i, v in enumerate(live) if val(v)), None)
        if ia is None:
            continue
        ra = live[ia]
        others = [v ^ ra if val(v) == val(ra) else v for i, v in enumerate(live) if i != ia]
        ib = next((i for i, v in enumerate(others) if val(v)), None)
        if ib is None:
            single_rows.append(ra)
            single_cols.append(j)
            live = others
            continue
        rb = others.pop(ib)
        by_value = {val(ra): ra, val(rb): rb, val(ra ^ rb): ra ^ rb}
        one, om = by_value[1], by_value[2]
        one_rows.append(one)
        omega_rows.append(om)
        pair_cols.append(j)
        fixed = []
        for v in others:
            t = val(v)
            if t & 1:
                v ^= one
            if t & 2:
                v ^= om
            fixed.append(v)
        live = fixed
    assert not live, "quotient rows without a quaternary pivot"

    # clear every pair column in the other quotient rows; pair rows vanish on
    # all earlier columns, so this never disturbs a pivot already placed
    n_step2 = len(single_rows) - len(single_cols)
    for t, j in enumerate(pair_cols):
        one, om = one_rows[t], omega_rows[t]

        def clear(v: int) -> int:
            val = _ycol_value(v, alpha, beta, j)
            if val & 1:
                v ^= one
            if val & 2:
                v ^= om
            return v

        one_rows = [r if i == t else clear(r) for i, r in enumerate(one_rows)]
        omega_rows = [r if i == t else clear(r) for i, r in enumerate(omega_rows)]
        single_rows = single_rows[:n_step2] + [clear(r) for r in single_rows[n_step2:]]

    binary_rows = echelon_packed(binary_rows)
    x_pivots = [(r & -r).bit_length() - 1 for r in binary_rows]
    perm_x = tuple(x_pivots + [i for i in range(alpha) if i not in x_pivots])

    step2_cols = []
    used = set(pair_cols) | set(single_cols)
    for v in single_rows[: len(single_rows) - len(single_cols)]:
        j = _lowest_ycol(v, alpha, beta)
        if j not in used and j not in step2_cols:
            step2_cols.append(j)
    lead = pair_cols + step2_cols + single_cols
    perm_y = tuple(lead + [j for j in range(beta) if j not in lead])

    ordered = binary_rows + one_rows + omega_rows + single_rows
    sf_rows = []
    for v in ordered:
        w = unpack_word(v, alpha, beta)
        sf_rows.append(MixedWord(tuple(w.x[i] for i in perm_x), tuple(w.y[j] for j in perm_y)))
    return StandardForm(
        matrix=tuple(sf_rows),
        perm_x=perm_x,
        perm_y=perm_y,
        k1=len(binary_rows),
        k2p=len(one_rows),
        k2pp=len(single_rows),
        alpha=alpha,
        beta=beta,
    )


def compute_type(c: AdditiveCode) -> CodeType:
    sf = standard_form(c)
    t = CodeType(c.alpha, c.beta, sf.k1, sf.k2p, sf.k2pp)
    assert t.k == c.k, f"standard form block sizes {t} disagree with k={c.k}"
    return t


def alternative_type_quantities(c: AdditiveCode) -> dict[str, int]:
    """Quantities that also describe the type in some readings: dim C_X and dim (C_b)_X."""
    cb = binary_subcode(c)
    return {
        "dim_CX": puncture_x(c).k,
        "dim_CY": puncture_y(c).k,
        "dim_Cb": cb.k,
        "dim_Cb_X": puncture_x(cb).k,
    }
