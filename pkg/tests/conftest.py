import numpy as np
import pytest

from rnmw import aarset, backend_name, set_backend


@pytest.fixture
def aarset_ds():
    return aarset()


@pytest.fixture
def keep_backend():
    """Restore whichever kernel backend was active before the test."""
    before = backend_name()
    yield
    set_backend(before)
