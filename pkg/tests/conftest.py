import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sumprod import PrimeField, field_set  # noqa: E402


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def S():
    """S(q, values) -> FieldSet."""
    return field_set
