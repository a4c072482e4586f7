import numpy as np
import pytest

from grayvss import GrayImage

# Worked 3x3 block and the binary blocks printed alongside it.
PAPER_BLOCK = [[111, 159, 20], [254, 10, 198], [40, 215, 100]]
PAPER_BITBLOCKS = [
    ["01101111", "10011111", "00010100"],
    ["11111110", "00001010", "11000110"],
    ["00101000", "11010111", "01100100"],
]

# Halves for the value 254 (Table 1): share -> (1st half, 2nd half).
TABLE1 = {
    1: ("01010100", "11011010"),
    2: ("10101010", "11101110"),
    3: ("00100100", "10010100"),
}


def bitstr(s):
    return tuple(int(c) for c in s)


@pytest.fixture
def paper_block():
    return GrayImage.from_rows(PAPER_BLOCK)


@pytest.fixture
def random_image():
    def make(seed, width=64, height=64):
        return GrayImage(np.random.default_rng(seed).integers(0, 256, (height, width), dtype=np.uint8))
    return make


ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: PASS if the test body finishes, FAIL otherwise."""
    entry = {"name": request.node.name, "detail": "", "ok": False}
    ACCEPTANCE_RESULTS.append(entry)

    def note(detail):
        entry["detail"] = detail
    yield note
    entry["ok"] = True


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed:
        for entry in ACCEPTANCE_RESULTS:
            if entry["name"] == item.name:
                entry["failed"] = True


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for entry in ACCEPTANCE_RESULTS:
        ok = entry["ok"] and not entry.get("failed")
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {entry['name']}  {entry['detail']}")
