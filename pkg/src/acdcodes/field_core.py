"""GF(2) / GF(4) scalar, vector and matrix arithmetic.

A GF(4) element is stored as a 2-bit integer ``c1 | (cw << 1)`` over the
basis {1, w}, so that::

    0 -> 0      1 -> 1      2 -> w      3 -> w^2 = 1 + w

Addition is XOR of the codes. Binary vectors used by the elimination
routines are packed into Python ints, coordinate ``i`` at bit ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ZERO, ONE, W, W2 = 0, 1, 2, 3

F4_ELEMENTS = (ZERO, ONE, W, W2)
F4_SYMBOLS = {ZERO: "0", ONE: "1", W: "w", W2: "W"}
F4_FROM_SYMBOL = {v: k for k, v in F4_SYMBOLS.items()}
F4_NAMES = {ZERO: "0", ONE: "1", W: "ω", W2: "ω²"}

# w*w = w^2, w*w^2 = 1, w^2*w^2 = w
_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_INV = (None, 1, 3, 2)


def f4_add(a: int, b: int) -> int:
    return a ^ b


def f4_mul(a: int, b: int) -> int:
    """Product in GF(4) = F2[x]/(x^2 + x + 1)."""
    return _MUL[a][b]


def f4_inv(a: int) -> int:
    if a == ZERO:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return _INV[a]


def f4_parts(a: int) -> tuple[int, int]:
    """Return ``(c1, cw)`` with ``a = c1 + cw*w``."""
    return a & 1, a >> 1


def f4_from_parts(c1: int, cw: int) -> int:
    return (c1 & 1) | ((cw & 1) << 1)


def f4_dot(u: Sequence[int], v: Sequence[int]) -> int:
    """Euclidean product sum u_j v_j over GF(4)."""
    acc = 0
    for a, b in zip(u, v):
        acc ^= _MUL[a][b]
    return acc


@dataclass(frozen=True)
class MixedWord:
    """A word of F2^alpha x F4^beta: binary part ``x`` then quaternary part ``y``."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(a) for a in self.x))
        object.__setattr__(self, "y", tuple(int(b) for b in self.y))
        if any(a not in (0, 1) for a in self.x):
            raise ValueError(f"binary part must be 0/1, got {self.x}")
        if any(b not in F4_ELEMENTS for b in self.y):
            raise ValueError(f"quaternary part must be in 0..3, got {self.y}")

    @property
    def alpha(self) -> int:
        return len(self.x)

    @property
    def beta(self) -> int:
        return len(self.y)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.x), len(self.y)

    @classmethod
    def zero(cls, alpha: int, beta: int) -> "MixedWord":
        return cls((0,) * alpha, (0,) * beta)

    @classmethod
    def parse(cls, text: str, alpha: int | None = None) -> "MixedWord":
        """Parse ``"1 1 | w 1"`` or ``"(1,1|w,W)"``; ``w`` is ω and ``W`` is ω²."""
        s = text.strip().strip("()")
        if "|" in s:
            left, right = s.split("|", 1)
            xs = _tokens(left)
            ys = _tokens(right)
        else:
            if alpha is None:
                raise ValueError(f"no '|' in {text!r} and alpha not given")
            toks = _tokens(s)
            xs, ys = toks[:alpha], toks[alpha:]
        try:
            x = tuple(int(t) for t in xs)
            y = tuple(F4_FROM_SYMBOL[t] for t in ys)
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad symbol in {text!r}") from exc
        return cls(x, y)

    def __add__(self, other: "MixedWord") -> "MixedWord":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return MixedWord(
            tuple(a ^ b for a, b in zip(self.x, other.x)),
            tuple(a ^ b for a, b in zip(self.y, other.y)),
        )

    __sub__ = __add__

    def is_zero(self) -> bool:
        return not any(self.x) and not any(self.y)

    def __str__(self) -> str:
        xs = ",".join(str(a) for a in self.x)
        ys = ",".join(F4_SYMBOLS[b] for b in self.y)
        return f"({xs}|{ys})"

    def pretty(self) -> str:
        xs = ",".join(str(a) for a in self.x)
        ys = ",".join(F4_NAMES[b] for b in self.y)
        return f"({xs}|{ys})"


def _tokens(s: str) -> list[str]:
    # every symbol is one character, so "11w1" and "1 1 w 1" tokenize alike
    return [c for c in s.replace(",", " ") if not c.isspace()]


def linearize_word(w: MixedWord) -> tuple[int, ...]:
    """(a | b + wq) -> (a_0..a_{alpha-1}, b_0..b_{beta-1}, q_0..q_{beta-1})."""
    return w.x + tuple(v & 1 for v in w.y) + tuple(v >> 1 for v in w.y)


def delinearize(bits: Sequence[int], alpha: int, beta: int) -> MixedWord:
    if len(bits) != alpha + 2 * beta:
        raise ValueError(f"expected {alpha + 2 * beta} bits, got {len(bits)}")
    b = bits[alpha:alpha + beta]
    q = bits[alpha + beta:]
    return MixedWord(tuple(bits[:alpha]), tuple(f4_from_parts(c, d) for c, d in zip(b, q)))


def pack(bits: Iterable[int]) -> int:
    v = 0
    for i, bit in enumerate(bits):
        if bit & 1:
            v |= 1 << i
    return v


def unpack(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


def pack_word(w: MixedWord) -> int:
    return pack(linearize_word(w))


def unpack_word(v: int, alpha: int, beta: int) -> MixedWord:
    return delinearize(unpack(v, alpha + 2 * beta), alpha, beta)


def popcount(v: int) -> int:
    return bin(v).count("1")


# ---------------------------------------------------------------------------
# GF(2) elimination on packed rows


def _lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


def echelon_packed(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span of packed rows.

    Pivots are the lowest set bit (leftmost coordinate); the result is sorted
    by pivot position and fully reduced.
    """
    basis: dict[int, int] = {}
    for r in rows:
        for p, b in basis.items():
            if (r >> p) & 1:
                r ^= b
        if r:
            p = _lowbit(r)
            for q in list(basis):
                if (basis[q] >> p) & 1:
                    basis[q] ^= r
            basis[p] = r
    return [basis[p] for p in sorted(basis)]


def reduce_packed(v: int, echelon: Sequence[int]) -> int:
    """Reduce ``v`` modulo a fully reduced echelon basis."""
    for b in echelon:
        if (v >> _lowbit(b)) & 1:
            v ^= b
    return v


def independent_subset(rows: Sequence[int]) -> list[int]:
    """Indices of the earliest F2-independent rows, in input order."""
    keep = []
    basis: dict[int, int] = {}
    for i, r in enumerate(rows):
        v = r
        for p, b in basis.items():
            if (v >> p) & 1:
                v ^= b
        if v:
            p = _lowbit(v)
            for q in list(basis):
                if (basis[q] >> p) & 1:
                    basis[q] ^= v
            basis[p] = v
            keep.append(i)
    return keep


def rank_packed(rows: Iterable[int]) -> int:
    return len(echelon_packed(rows))


def kernel_packed(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {v : popcount(r & v) even for every r}, one vector per free column."""
    ech = echelon_packed(rows)
    pivots = [_lowbit(r) for r in ech]
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, r in zip(pivots, ech):
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def left_kernel_packed(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {lam : XOR of rows[i] with lam_i = 1 is zero}; bit i of lam selects row i."""
    cols = transpose_packed(rows, ncols)
    return kernel_packed(cols, len(rows))


def transpose_packed(rows: Sequence[int], ncols: int) -> list[int]:
    cols = [0] * ncols
    for i, r in enumerate(rows):
        while r:
            j = _lowbit(r)
            cols[j] |= 1 << i
            r &= r - 1
    return cols


def combine_packed(lam: int, rows: Sequence[int]) -> int:
    v = 0
    i = 0
    while lam:
        if lam & 1:
            v ^= rows[i]
        lam >>= 1
        i += 1
    return v


# ---------------------------------------------------------------------------
# Public BinaryMatrix API: anything array-like of 0/1 entries


def _as_binary(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1 and a.size == 0:
        a = a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a & 1


def _pack_rows(a: np.ndarray) -> list[int]:
    return [pack(row) for row in a.tolist()]


def rank_f2(m) -> int:
    """Row rank over GF(2)."""
    a = _as_binary(m)
    return rank_packed(_pack_rows(a))


def kernel_f2(m, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the right kernel {v : m v = 0} over GF(2)."""
    a = _as_binary(m)
    n = a.shape[1] if ncols is None else ncols
    return [unpack(v, n) for v in kernel_packed(_pack_rows(a), n)]


def rref_f2(m) -> np.ndarray:
    a = _as_binary(m)
    n = a.shape[1]
    ech = echelon_packed(_pack_rows(a))
    return np.array([unpack(v, n) for v in ech], dtype=np.uint8).reshape(len(ech), n)


def det_f2(m) -> int:
    a = _as_binary(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got {a.shape}")
    return int(rank_f2(a) == a.shape[0])


def matmul_f2(a, b) -> np.ndarray:
    a = _as_binary(a)
    b = _as_binary(b)
    return ((a @ b) & 1).astype(np.uint8)


def gram_f2(m) -> np.ndarray:
    a = _as_binary(m)
    return matmul_f2(a, a.T)


# ---------------------------------------------------------------------------
# F4Matrix: nested sequences of 2-bit codes


def matmul_f4(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("inner dimensions differ")
        out.append([f4_dot(row, [b[t][j] for t in range(inner)]) for j in range(cols)])
    return out


def transpose_f4(a: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*a)] if a else []


def rref_f4(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(4); returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in a]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = f4_inv(m[r][c])
        m[r] = [f4_mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [v ^ f4_mul(f, p) for v, p in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_f4(a: Sequence[Sequence[int]]) -> int:
    return len(rref_f4(a)[0])


def det_f4(a: Sequence[Sequence[int]]) -> int:
    """Determinant over GF(4) by elimination (characteristic 2, so no sign)."""
    m = [list(r) for r in a]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    det = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return ZERO
        m[c], m[pr] = m[pr], m[c]
        piv = m[c][c]
        det = f4_mul(det, piv)
        inv = f4_inv(piv)
        for i in range(c + 1, n):
            if m[i][c]:
                f = f4_mul(m[i][c], inv)
                m[i] = [v ^ f4_mul(f, p) for v, p in zip(m[i], m[c])]
    return det


def format_f4_matrix(a: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(F4_SYMBOLS[v] for v in row) for row in a)
