import pytest

from randassign import parse_profile

from helpers import EXAMPLE1_TEXT


@pytest.fixture
def example1():
    return parse_profile(EXAMPLE1_TEXT)


@pytest.fixture
def example1_path(tmp_path):
    path = tmp_path / "example1.txt"
    path.write_text(EXAMPLE1_TEXT)
    return path
