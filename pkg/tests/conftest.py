import pytest

from motifrank.graph import parse_edge_text

DIAMOND_TEXT = "% diamond\n1 3\n1 4\n2 3\n2 4\n3 4\n"


@pytest.fixture
def diamond():
    """Nodes 1..4, edges 13 14 23 24 34; (1,2) is the only non-edge."""
    return parse_edge_text(DIAMOND_TEXT.splitlines())


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.txt"
    path.write_text(DIAMOND_TEXT)
    return path
