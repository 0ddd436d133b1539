import pytest

from sympint import catalog


@pytest.fixture(scope="session")
def entries():
    return catalog()


@pytest.fixture(scope="session")
def table_entries(entries):
    """The ten published 77-digit sets, name -> coefficients."""
    from sympint.coefficients import Provenance

    return {name: cs for name, cs in entries.items()
            if cs.provenance is Provenance.PUBLISHED_TABLE}


def pass_line(name: str, detail: str = ""):
    print(f"[PASS] {name}" + (f": {detail}" if detail else ""))
