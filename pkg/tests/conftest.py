import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

FIXTURES = ROOT / "fixtures" / "synthetic"
GOLDEN = ROOT / "tests" / "golden"

# (criterion number, description, passed) filled in by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, ok in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {description}")


@pytest.fixture(scope="session")
def fixture_paths():
    return {
        "danmaku": FIXTURES / "danmaku.xml",
        "transcript": FIXTURES / "transcript.srt",
        "meta": FIXTURES / "meta.json",
        "study": FIXTURES / "study.json",
    }


@pytest.fixture(scope="session")
def corpus(fixture_paths):
    from ck.ingest import load_corpus

    return load_corpus(fixture_paths["danmaku"], fixture_paths["transcript"], fixture_paths["meta"])


@pytest.fixture(scope="session")
def bundle(corpus):
    from ck.config import load_config
    from ck.pipeline import run_pipeline

    return run_pipeline(corpus, load_config())


@pytest.fixture(scope="session")
def bundle_dir(bundle, tmp_path_factory):
    from ck.bundle import save_bundle

    path = tmp_path_factory.mktemp("bundles")
    save_bundle(bundle, path / f"{bundle.meta.video_id}.json")
    return path


@pytest.fixture(scope="session")
def api_client(bundle_dir):
    from fastapi.testclient import TestClient

    from ck.server import create_app

    with TestClient(create_app(bundle_dir)) as client:
        yield client
