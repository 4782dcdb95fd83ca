from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from acdcodes.code_model import code_from_rows  # noqa: E402
from acdcodes.field_core import MixedWord  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# generator rows as printed in the source examples: name -> (alpha, beta, rows)
EXAMPLES = {
    "dual_example": (2, 2, ["11|w1", "01|Ww"]),
    "case1": (2, 2, ["11|w1", "01|Ww"]),
    "case2": (2, 1, ["10|1", "01|w"]),
    "case3": (4, 2, ["1010|1w", "0101|wW"]),
    "nocase": (2, 3, ["10|00w", "01|1w0", "00|ww0"]),
    "zero_offdiag": (2, 3, ["10|wW1", "01|W1w"]),
    "identity_gram": (2, 1, ["11|1", "01|w"]),
    "exa11": (2, 2, ["11|11", "01|ww"]),
    "cor25": (3, 2, ["101|11", "010|ww"]),
    "prop29": (2, 2, ["10|11", "01|ww"]),
    "th27": (4, 1, ["1111|1", "1100|w"]),
    "cor33": (4, 3, ["1111|1wW", "0101|wW1"]),
    "cor35": (4, 2, ["1010|wW", "0101|W1"]),
    "th37": (2, 3, ["11|00w", "00|1w0", "00|w10"]),
    "prop38": (6, 2, ["111111|10", "110000|01", "001100|w0", "111100|0w"]),
    "counterexample": (2, 4, ["11|00ww", "01|1w10", "00|w000"]),
    "split_matrix": (2, 2, ["11|wW", "00|01"]),
    "converse": (2, 3, ["11|00w", "01|1w1", "00|w00"]),
    "good_image": (4, 6, ["1011|0000w0", "0101|0000ww", "0010|10w011",
                          "0001|010w10", "0000|w0ww10", "0000|0ww001"]),
    "optimal_lcd": (3, 2, ["111|wW", "000|ww"]),
    "optimal_not_lcd": (3, 2, ["111|1W", "111|W1"]),
}


def example_code(name: str):
    alpha, beta, rows = EXAMPLES[name]
    return code_from_rows(alpha, beta, rows)


@st.composite
def mixed_words(draw, alpha: int, beta: int):
    x = draw(st.lists(st.integers(0, 1), min_size=alpha, max_size=alpha))
    y = draw(st.lists(st.integers(0, 3), min_size=beta, max_size=beta))
    return MixedWord(tuple(x), tuple(y))


@st.composite
def codes(draw, max_alpha: int = 4, max_beta: int = 3, max_k: int = 6, min_k: int = 0):
    alpha = draw(st.integers(0, max_alpha))
    beta = draw(st.integers(0 if alpha else 1, max_beta))
    k = draw(st.integers(min_k, max_k))
    rows = [draw(mixed_words(alpha, beta)) for _ in range(k)]
    return code_from_rows(alpha, beta, rows)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LOG: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LOG):
            terminalreporter.write_line(line)
