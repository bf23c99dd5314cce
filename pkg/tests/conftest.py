import random

import pytest
from hypothesis import settings, strategies as st

from magnus_kernel import Word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def letters(rank, max_size=30):
    return st.lists(
        st.integers(1, rank).flatmap(lambda g: st.sampled_from([g, -g])), max_size=max_size
    )


def words(rank, max_size=30):
    return letters(rank, max_size).map(lambda ls: Word.from_letters(rank, ls))


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the outcome is FAIL unless the test body finishes."""
    state = {}

    def start(number, title):
        state.update(number=number, title=title, detail="")

    def note(detail):
        state["detail"] = detail

    yield type("Criterion", (), {"start": staticmethod(start), "note": staticmethod(note)})
    if state:
        rep = getattr(request.node, "rep_call", None)
        passed = rep is not None and rep.passed
        line = f"{'PASS' if passed else 'FAIL'} criterion {state['number']}: {state['title']}"
        if state["detail"]:
            line += f" ({state['detail']})"
        _ACCEPTANCE[state["number"]] = line
        print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
