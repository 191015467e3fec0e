import pytest

from heckelpf.eigenform import eigenform_table

SIX_FORMS = ("delta", "weight16", "weight18", "weight20", "weight22", "weight26")


@pytest.fixture(scope="session")
def delta_table():
    """Delta coefficients up to 10^5 (built once; feeds the big scans)."""
    return eigenform_table("delta", 100_000)


@pytest.fixture(scope="session")
def delta_small():
    return eigenform_table("delta", 10_000)


@pytest.fixture(scope="session")
def all_forms_small():
    """All six forms up to 10^4, keyed by name."""
    return {name: eigenform_table(name, 10_000) for name in SIX_FORMS}
