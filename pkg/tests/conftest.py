import numpy as np
import pytest

from sqtrace.harness.generators import gen_hermitian, gen_psd

EX_A = np.array([[2.0, 1.0], [1.0, 2.0]])
EX_B = np.diag([2.0, 0.0])

# acceptance results keyed by criterion number: list of (passed, detail)
CRITERIA: dict = {}


def record(k: int, passed: bool, detail: str) -> None:
    CRITERIA.setdefault(k, []).append((bool(passed), detail))


def criterion_lines() -> list:
    lines = []
    for k in sorted(CRITERIA):
        results = CRITERIA[k]
        ok = all(p for p, _ in results)
        shown = [d for p, d in results if not p] or [d for _, d in results]
        lines.append(f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  {'; '.join(shown)}")
    return lines


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def psd_pairs():
    def make(count, dims=(2, 3, 4, 6), seed=0):
        return [(gen_psd(dims[i % len(dims)], 2 * i + seed), gen_psd(dims[i % len(dims)], 2 * i + 1 + seed))
                for i in range(count)]
    return make


@pytest.fixture
def hermitian():
    return gen_hermitian


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in criterion_lines():
            terminalreporter.write_line(line)
