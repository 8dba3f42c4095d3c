import random

import pytest

from lzrl.parser import Text

_RESULTS = {}


class AcceptanceRecorder:
    """Collects one verdict per acceptance criterion (sub-checks are ANDed)."""

    def record(self, number, title, ok, detail=""):
        prev = _RESULTS.get(number)
        if prev is not None:
            ok = ok and prev[1]
            detail = "; ".join(part for part in (prev[2], detail) if part)
        _RESULTS[number] = (title, ok, detail)
        return ok


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, detail = _RESULTS[number]
        verdict = "PASS" if ok else "FAIL"
        line = f"criterion {number} [{verdict}] {title}"
        if detail:
            line += f" :: {detail}"
        terminalreporter.write_line(line)


def random_text(rng, n, sigma):
    sigma = max(1, min(sigma, n + 1))
    return Text([rng.randrange(sigma) for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(20240611)
