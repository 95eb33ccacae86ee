import sys
from pathlib import Path

import pytest

from sternpoly.poly import get_term_cap, set_term_cap

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def _restore_term_cap():
    # The cap is global configuration; keep tests from leaking it.
    saved = get_term_cap()
    yield
    set_term_cap(saved)
