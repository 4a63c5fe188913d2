import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conway_genera.conway import bundled_data


@pytest.fixture(scope="session")
def data():
    return bundled_data()
