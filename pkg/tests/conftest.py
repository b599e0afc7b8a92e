import pytest


@pytest.fixture(scope="session")
def full_sweeps():
    """The [3, 296] lattice sweeps for both signs, shared by the
    acceptance criteria that need them (they take ~20 s per sign)."""
    from muldep.dioph import sit_sweep

    return {sign: sit_sweep(sign, (3, 296)) for sign in ("+", "-")}
