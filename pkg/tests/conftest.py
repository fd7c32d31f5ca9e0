import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def _quiet_truncation_warnings():
    """Tail warnings are expected at the deliberately tight cutoffs used here."""
    import warnings

    from esvsim import TruncationWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        yield
