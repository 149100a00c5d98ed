import pytest

from ybx.curves import JacobiQuartic, WeierstrassCurve
from ybx.fields import DEFAULT_FIELD, RationalField
from ybx.maps import make_map
from ybx.rng import stream


@pytest.fixture
def F():
    return DEFAULT_FIELD


@pytest.fixture
def Q():
    return RationalField()


@pytest.fixture
def jq(F):
    return JacobiQuartic(F, 5)


@pytest.fixture
def wc(F):
    return WeierstrassCurve(F, 2, 3)


@pytest.fixture
def maps(F, jq, wc):
    return {
        "adler": make_map("adler", F),
        "f3": make_map("f3", F),
        "kdv_lift": make_map("kdv_lift", F),
        "kn": make_map("kn", F, jq),
        "ll": make_map("ll", F, wc),
    }


@pytest.fixture
def rng(request):
    return stream(2024, request.node.name)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
