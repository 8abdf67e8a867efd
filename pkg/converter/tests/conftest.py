import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from rawdist import write_mini_raw  # noqa: E402


@pytest.fixture
def mini_raw_dir(tmp_path):
    expected = write_mini_raw(tmp_path / "raw")
    return tmp_path / "raw", expected
