import pytest

from pgclass.verify import bundle


@pytest.fixture(scope="session")
def corpus_bundle():
    """Session-cached (label, p) -> {group, table, report, timings}."""
    return bundle
