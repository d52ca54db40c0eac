import pytest

from cycletrace.cli.corpus import CORPUS_DIR
from cycletrace.cli.famfile import load_family

_CACHE = {}


def corpus_family(name):
    """Parsed corpus family; cached so coverings keep their algebras."""
    if name not in _CACHE:
        _CACHE[name] = load_family(CORPUS_DIR / f"{name}.fam")
    return _CACHE[name]


@pytest.fixture
def family():
    return corpus_family
