"""Plain-text code files.

Grammar::

    alpha=<int> beta=<int>        header, first non-comment line
    1 1 | w 1                     one generator row per line
    # comment                     anywhere; runs to end of line
    expect: acd=yes image_d=5     expectation block (corpus files only)

Symbols are single characters from {0, 1, w, W} (w = ω, W = ω²); spaces and
the "|" separator are cosmetic. Binary positions accept only 0/1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .code_model import AdditiveCode, code_from_rows
from .field_core import F4_FROM_SYMBOL, F4_SYMBOLS, MixedWord

_HEADER = re.compile(r"^\s*alpha\s*=\s*(\d+)\s+beta\s*=\s*(\d+)\s*$")
_EXPECT = "expect:"


class CodeFileError(ValueError):
    """Parse failure with a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        self.line = line
        self.column = column
        self.source = source
        self.message = message
        super().__init__(f"{source}:{line}:{column}: {message}")


@dataclass
class Expectation:
    key: str
    value: str
    line: int


@dataclass
class CodeFile:
    alpha: int
    beta: int
    rows: list[MixedWord] = field(default_factory=list)
    expectations: list[Expectation] = field(default_factory=list)
    name: str = "<input>"

    def code(self) -> AdditiveCode:
        """The spanned code; dependent rows are dropped."""
        return code_from_rows(self.alpha, self.beta, self.rows)

    def expected(self) -> dict[str, str]:
        return {e.key: e.value for e in self.expectations}


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _parse_row(text: str, lineno: int, alpha: int, beta: int, source: str) -> MixedWord:
    x: list[int] = []
    y: list[int] = []
    bar_at = None
    for col, ch in enumerate(text, 1):
        if ch.isspace() or ch == ",":
            continue
        if ch == "|":
            if bar_at is not None:
                raise CodeFileError("second '|' separator", lineno, col, source)
            if len(x) != alpha or y:
                raise CodeFileError(
                    f"'|' after {len(x) + len(y)} symbols, expected {alpha}", lineno, col, source
                )
            bar_at = col
            continue
        if ch not in F4_FROM_SYMBOL:
            raise CodeFileError(f"unknown symbol {ch!r}; use 0, 1, w or W", lineno, col, source)
        if len(x) < alpha:
            if ch not in "01":
                raise CodeFileError(
                    f"symbol {ch!r} in binary position {len(x) + 1}; only 0/1 allowed",
                    lineno, col, source,
                )
            x.append(int(ch))
        else:
            if len(y) == beta:
                raise CodeFileError(
                    f"too many symbols; expected alpha + beta = {alpha + beta}", lineno, col, source
                )
            y.append(F4_FROM_SYMBOL[ch])
    if len(x) + len(y) != alpha + beta:
        raise CodeFileError(
            f"row has {len(x) + len(y)} symbols, expected alpha + beta = {alpha + beta}",
            lineno, len(text.rstrip()) + 1, source,
        )
    return MixedWord(tuple(x), tuple(y))


def _parse_expect(body: str, lineno: int, offset: int, source: str) -> list[Expectation]:
    out = []
    for m in re.finditer(r"\S+", body):
        tok = m.group(0)
        if "=" not in tok or tok.startswith("="):
            raise CodeFileError(f"expectation {tok!r} is not key=value", lineno, offset + m.start() + 1, source)
        key, value = tok.split("=", 1)
        out.append(Expectation(key, value, lineno))
    return out


def parse_code_file(text: str, source: str = "<input>") -> CodeFile:
    header = None
    rows: list[MixedWord] = []
    expectations: list[Expectation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        stripped = line.lstrip()
        if stripped.startswith(_EXPECT):
            offset = len(line) - len(stripped) + len(_EXPECT)
            expectations += _parse_expect(line[offset:], lineno, offset, source)
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise CodeFileError("expected header 'alpha=<int> beta=<int>'", lineno, 1, source)
            header = int(m.group(1)), int(m.group(2))
            continue
        rows.append(_parse_row(line, lineno, header[0], header[1], source))
    if header is None:
        raise CodeFileError("missing header 'alpha=<int> beta=<int>'", 1, 1, source)
    return CodeFile(header[0], header[1], rows, expectations, source)


def load_code_file(path: str | Path) -> CodeFile:
    path = Path(path)
    return parse_code_file(path.read_text(), str(path))


def format_row(w: MixedWord) -> str:
    xs = " ".join(str(a) for a in w.x)
    ys = " ".join(F4_SYMBOLS[b] for b in w.y)
    if not w.x:
        return f"| {ys}"
    if not w.y:
        return f"{xs} |"
    return f"{xs} | {ys}"


def format_code_file(cf: CodeFile | AdditiveCode) -> str:
    """Canonical text; parse(format(f)) reproduces header, rows and expectations."""
    lines = [f"alpha={cf.alpha} beta={cf.beta}"]
    lines += [format_row(r) for r in cf.rows]
    for e in getattr(cf, "expectations", ()):
        lines.append(f"expect: {e.key}={e.value}")
    return "\n".join(lines) + "\n"
