import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}

THEOREM_FUNCTIONS = ("absx", "absx_pow(1.5)", "step_smooth")
THEOREM_PARAMS = ((1.0, 0.75), (2.0, 1.0), (math.inf, 1.2))


@pytest.fixture(scope="session")
def record():
    """record(criterion, passed, detail): prints one line now and again in the summary."""

    def _record(k, passed, detail=""):
        _ACCEPTANCE[k] = (bool(passed), detail)
        print(f"\nacceptance {k}: {'PASS' if passed else 'FAIL'}  {detail}")

    return _record


@pytest.fixture(scope="session")
def theorem_reports():
    """verify_theorem at n_max = 32 for the 3 x 3 acceptance grid (several minutes)."""
    from gensmooth.funcspace import SpaceParams, lookup
    from gensmooth.verifier import verify_theorem

    return {
        (fid, p, a): verify_theorem(lookup(fid), SpaceParams(p, a), 32)
        for fid in THEOREM_FUNCTIONS
        for p, a in THEOREM_PARAMS
    }


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
