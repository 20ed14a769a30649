import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cattsu.elaborate import Environment  # noqa: E402
from cattsu.typecheck import Mode  # noqa: E402

CORPUS = Path(__file__).resolve().parents[1] / "src" / "cattsu" / "corpus"

# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE: dict = {}


def corpus_env(mode=Mode.SU) -> Environment:
    env = Environment.with_prelude(mode)
    for f in sorted(CORPUS.glob("*.catt")):
        env.load_file(f)
    return env


@pytest.fixture(scope="session")
def env():
    return corpus_env()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
