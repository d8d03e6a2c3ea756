import pytest

pytestmark = pytest.mark.contract
