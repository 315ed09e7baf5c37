import pytest

from twistgrade import specs

STANDARD_GROUPS = ["c2c2", "c3c3", "c4c4", "c9sc9", "c8sc4c2", "c4sc2c2"]


def load(name):
    G = specs.load_group(f"bundled:{name}")
    doc = specs.load_document(f"bundled:{name}")
    c = specs.load_cocycle(f"bundled:{name}", G) if "cocycle" in doc else None
    return G, c


@pytest.fixture(scope="session")
def bundled():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load(name)
        return cache[name]

    return get
