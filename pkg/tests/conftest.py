import json
import os
import sys

import pytest

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)


def _intkeys(d):
    if isinstance(d, dict):
        out = {}
        for k, v in d.items():
            try:
                k = int(k)
            except ValueError:
                pass
            out[k] = _intkeys(v)
        return out
    return d


@pytest.fixture(scope="session")
def oracle():
    with open(os.path.join(HERE, "fixtures", "oracles.json")) as fh:
        return _intkeys(json.load(fh))


# acceptance criteria report one line each; printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
        ACCEPTANCE[n] = line
        print(line)
        assert ok, line

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
