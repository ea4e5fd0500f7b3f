import time

import pytest

LINES: dict[int, str] = {}


class Criterion:
    def __init__(self, number: int, title: str, limit: float | None):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""
        self.start = time.perf_counter()

    def check_time(self) -> float:
        elapsed = time.perf_counter() - self.start
        if self.limit is not None:
            assert elapsed < self.limit, f"took {elapsed:.1f}s, limit {self.limit:.0f}s"
        return elapsed


@pytest.fixture
def criterion(request):
    made = []

    def make(number, title, limit=None):
        c = Criterion(number, title, limit)
        made.append(c)
        return c

    yield make
    failed = request.node.stash.get(FAILED, False)
    for c in made:
        elapsed = time.perf_counter() - c.start
        status = "FAIL" if failed else "PASS"
        LINES[c.number] = f"criterion {c.number:>2} {status}  {c.title}  [{elapsed:.1f}s] {c.detail}".rstrip()


FAILED = pytest.StashKey[bool]()


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call" and rep.failed:
        item.stash[FAILED] = True
    return rep


def pytest_terminal_summary(terminalreporter):
    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(LINES):
        terminalreporter.write_line(LINES[number])
