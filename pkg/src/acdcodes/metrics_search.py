"""Minimum distance of binary images, best-known lookup, and code search."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from .code_model import (
    DEFAULT_CAP,
    AdditiveCode,
    CodeType,
    EnumerationCapExceeded,
    code_from_packed,
    compute_type,
)
from .duality import AcdCertificate, is_acd, is_acd_hull
from .field_core import echelon_packed, popcount
from .wmap import is_image_lcd, w_map_code

FILTERS = ("acd", "image-lcd", "min-d")


@dataclass
class DistanceReport:
    n: int
    k: int
    d: Optional[int]
    weight_distribution: list[int]
    best_known: Optional[int] = None

    @property
    def optimality(self) -> str:
        if self.best_known is None or self.d is None:
            return "unknown"
        if self.d >= self.best_known:
            return "optimal"
        return f"near-optimal(gap {self.best_known - self.d})"

    @property
    def gap(self) -> Optional[int]:
        if self.best_known is None or self.d is None:
            return None
        return max(self.best_known - self.d, 0)

    def params(self) -> str:
        d = "-" if self.d is None else str(self.d)
        return f"[{self.n},{self.k},{d}]"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "weight_distribution": list(self.weight_distribution),
            "best_known": self.best_known,
            "optimality": self.optimality,
        }


def weight_distribution(c: AdditiveCode, cap: int = DEFAULT_CAP) -> list[int]:
    """Hamming weight counts of a binary code (beta = 0), by full enumeration."""
    if c.beta:
        raise ValueError("weights are defined on binary codes; map with W first")
    if c.size > cap:
        raise EnumerationCapExceeded(c.size, cap, "minimum distance")
    n = c.alpha
    dist = np.zeros(n + 1, dtype=np.int64)
    if n <= 63:
        words = np.zeros(1, dtype=np.uint64)
        for r in c.packed:
            words = np.concatenate([words, words ^ np.uint64(r)])
        dist += np.bincount(np.bitwise_count(words), minlength=n + 1)[: n + 1]
    else:
        words = [0]
        for r in c.packed:
            words += [w ^ r for w in words]
        for w in words:
            dist[popcount(w)] += 1
    return dist.tolist()


def min_distance(
    c: AdditiveCode,
    cap: int = DEFAULT_CAP,
    table: Optional["BestKnownTable"] = None,
) -> DistanceReport:
    """Exact minimum weight (= distance, the code being linear) with the weight distribution."""
    dist = weight_distribution(c, cap)
    d = next((w for w in range(1, len(dist)) if dist[w]), None)
    table = table or default_table()
    return DistanceReport(c.alpha, c.k, d, dist, table.lookup(c.alpha, c.k))


def min_distance_pairwise(c: AdditiveCode) -> Optional[int]:
    """Oracle: smallest Hamming distance over all pairs of distinct codewords."""
    words = [0]
    for r in c.packed:
        words += [w ^ r for w in words]
    best = None
    for u, v in itertools.combinations(words, 2):
        d = popcount(u ^ v)
        if best is None or d < best:
            best = d
    return best


class BestKnownTable:
    """Best known minimum distances of binary [n, k] codes, one "n k d" per line."""

    def __init__(self, entries: Optional[dict[tuple[int, int], int]] = None):
        self.entries: dict[tuple[int, int], int] = dict(entries or {})

    @classmethod
    def parse(cls, text: str) -> "BestKnownTable":
        t = cls()
        t.update_from_text(text)
        return t

    def update_from_text(self, text: str) -> None:
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'n k d', got {line!r}")
            n, k, d = (int(p) for p in parts)
            self.entries[(n, k)] = d

    def load(self, path: str | Path) -> None:
        self.update_from_text(Path(path).read_text())

    def lookup(self, n: int, k: int) -> Optional[int]:
        return self.entries.get((n, k))


_DEFAULT: Optional[BestKnownTable] = None


def default_table() -> BestKnownTable:
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("acdcodes").joinpath("data/best_known.txt").read_text()
        _DEFAULT = BestKnownTable.parse(text)
    return _DEFAULT


def best_known_lookup(n: int, k: int, table: Optional[BestKnownTable] = None) -> Optional[int]:
    return (table or default_table()).lookup(n, k)


# ---------------------------------------------------------------------------
# search


@dataclass
class SearchSpec:
    alpha: int
    beta: int
    k: Optional[int] = None
    target_type: Optional[CodeType] = None
    trials: int | str = 1000
    filters: frozenset[str] = field(default_factory=frozenset)
    min_d: Optional[int] = None
    seed: int = 0
    cap: int = DEFAULT_CAP
    exhaustive_cap: int = 1 << 20

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.alpha + self.beta == 0:
            raise ValueError("need alpha + beta > 0 with both nonnegative")
        self.filters = frozenset(self.filters)
        unknown = self.filters - set(FILTERS)
        if unknown:
            raise ValueError(f"unknown filters {sorted(unknown)}; choose from {FILTERS}")
        if self.min_d is not None:
            self.filters = self.filters | {"min-d"}
        if self.target_type is not None:
            if (self.target_type.alpha, self.target_type.beta) != (self.alpha, self.beta):
                raise ValueError("target type lengths differ from alpha/beta")
            if self.k is not None and self.k != self.target_type.k:
                raise ValueError("k disagrees with the target type")
            self.k = self.target_type.k
        if self.k is not None and not 0 <= self.k <= self.nbits:
            raise ValueError(f"k must lie in [0, {self.nbits}]")
        if self.trials != "exhaustive" and (not isinstance(self.trials, int) or self.trials < 0):
            raise ValueError("trials must be a nonnegative integer or 'exhaustive'")

    @property
    def nbits(self) -> int:
        return self.alpha + 2 * self.beta


@dataclass
class SearchHit:
    trial: int
    code: AdditiveCode
    certificate: AcdCertificate
    distance: DistanceReport
    code_type: CodeType


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator per (seed, trial); trials can run in any order."""
    return np.random.default_rng([seed, trial])


def _random_code(spec: SearchSpec, trial: int) -> AdditiveCode:
    rng = trial_rng(spec.seed, trial)
    nbits = spec.nbits
    if spec.k is None:
        # random dimension; dependent draws are simply re-reduced
        k = int(rng.integers(1, nbits + 1))
        return code_from_packed(spec.alpha, spec.beta, _draw_rows(rng, k, nbits))
    # fixed dimension: redraw from the same stream until the rows are independent
    while True:
        rows = _draw_rows(rng, spec.k, nbits)
        if len(echelon_packed(rows)) == spec.k:
            return code_from_packed(spec.alpha, spec.beta, rows)


def _draw_rows(rng: np.random.Generator, k: int, nbits: int) -> list[int]:
    bits = rng.integers(0, 2, size=(k, nbits))
    return [sum(1 << i for i in np.flatnonzero(row).tolist()) for row in bits]


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F2^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def canonical_generators(nbits: int, k: int) -> Iterator[list[int]]:
    """Every k-dimensional subspace of F2^nbits once, as its reduced echelon basis."""
    for pivots in itertools.combinations(range(nbits), k):
        free_slots = []
        for r, p in enumerate(pivots):
            later = [j for j in range(p + 1, nbits) if j not in pivots]
            free_slots.append(later)
        sizes = [len(s) for s in free_slots]
        for choice in itertools.product(*(range(1 << s) for s in sizes)):
            rows = []
            for p, slots, bits in zip(pivots, free_slots, choice):
                v = 1 << p
                for t, j in enumerate(slots):
                    if (bits >> t) & 1:
                        v |= 1 << j
                rows.append(v)
            yield rows


def _passes(spec: SearchSpec, code: AdditiveCode) -> Optional[SearchHit]:
    # cheap filters first; the annotated certificate is built only for hits
    if "acd" in spec.filters and not is_acd_hull(code):
        return None
    image = w_map_code(code)
    if "image-lcd" in spec.filters and not is_image_lcd(image):
        return None
    report = min_distance(image.image, spec.cap)
    if spec.min_d is not None and (report.d is None or report.d < spec.min_d):
        return None
    ctype = compute_type(code)
    if spec.target_type is not None and ctype != spec.target_type:
        return None
    return SearchHit(-1, code, is_acd(code, spec.cap), report, ctype)


def search(spec: SearchSpec) -> Iterator[SearchHit]:
    """Yield every candidate passing the filters, in trial order; deterministic in ``spec``."""
    if spec.min_d is not None and spec.min_d > spec.nbits:
        return
    if spec.trials == "exhaustive":
        if spec.k is None:
            raise ValueError("exhaustive search needs k (or a target type)")
        size = gaussian_binomial(spec.nbits, spec.k)
        if size > spec.exhaustive_cap:
            raise EnumerationCapExceeded(size, spec.exhaustive_cap, "exhaustive search")
        for trial, rows in enumerate(canonical_generators(spec.nbits, spec.k)):
            hit = _passes(spec, code_from_packed(spec.alpha, spec.beta, rows))
            if hit is not None:
                hit.trial = trial
                yield hit
        return
    for trial in range(spec.trials):
        code = _random_code(spec, trial)
        if code.k == 0:
            continue
        hit = _passes(spec, code)
        if hit is not None:
            hit.trial = trial
            yield hit


def count_space(nbits: int, k: int) -> int:
    return gaussian_binomial(nbits, k)


def log2_size(n: int) -> float:
    return math.log2(n) if n else 0.0


def distinct_codes(hits: Iterable[SearchHit]) -> list[AdditiveCode]:
    seen = {}
    for h in hits:
        key = (h.code.alpha, h.code.beta, tuple(echelon_packed(h.code.packed)))
        seen.setdefault(key, h.code)
    return list(seen.values())
