import pytest
from hypothesis import settings, strategies as st

from picx import kernels
from picx.lattice import DivisorClass
from picx.weyl import e_standardness

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    """Each available kernel module in turn (compiled and python)."""
    return kernels.backends()[request.param]


@st.composite
def classes(draw, r_min=0, r_max=10, bound=12):
    r = draw(st.integers(r_min, r_max))
    d = draw(st.integers(-bound, bound))
    m = draw(st.lists(st.integers(-bound, bound), min_size=r, max_size=r))
    return DivisorClass(d, tuple(m))


@st.composite
def class_pairs(draw, r_min=0, r_max=10, bound=12):
    r = draw(st.integers(r_min, r_max))
    a = draw(classes(r, r, bound))
    b = draw(classes(r, r, bound))
    return a, b


@st.composite
def standard_classes(draw, r_min=3, r_max=9, d_max=15):
    """E-standard classes built directly from the defining inequalities."""
    r = draw(st.integers(r_min, r_max))
    d = draw(st.integers(0, d_max))
    m: list[int] = []
    cap = d
    for i in range(r):
        if i == 2:
            cap = min(cap, d - m[0] - m[1])
        elif i == 1:
            cap = min(cap, d - m[0])
        x = draw(st.integers(0, max(cap, 0)))
        m.append(x)
        cap = min(cap, x)
    h = DivisorClass(d, tuple(m))
    assert e_standardness(h) == "standard"
    return h


def weyl_words(r, max_len=30):
    lo = 0 if r >= 3 else 1
    if r - 1 < lo:
        return st.just(())
    return st.lists(st.integers(lo, r - 1), max_size=max_len).map(tuple)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    The test body calls ``acceptance(name, detail)`` once it has computed its
    evidence; the line is marked FAIL unless the test then finishes cleanly.
    """
    entry = {}

    def record(name: str, detail: str) -> None:
        entry["name"], entry["detail"] = name, detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    name = entry.get("name", request.node.name)
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {entry.get('detail', '')}")
    print(ACCEPTANCE_LINES[-1])


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
