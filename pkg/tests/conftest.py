import pytest

from plumbweave import order_tree, parse_tree

# running example: a six-vertex tree whose input ids happen to coincide
# with their canonical order labels
EX_TEXT = """\
root v0 e0
edge e0 v0 v1
edge e1 v1 v2
edge e2 v1 v3
edge e3 v1 v4
edge e4 v0 v5
rot v0 e0 e4
rot v1 e1 e2 e3 e0
"""

A2_TEXT = "root v0 e0\nedge e0 v0 v1\n"

PATH3_TEXT = """\
root v0 a
edge a v0 v1
edge b v1 v2
"""


@pytest.fixture
def ex_tree():
    return parse_tree(EX_TEXT)


@pytest.fixture
def ex_ordered(ex_tree):
    return order_tree(ex_tree)


@pytest.fixture
def a2_tree():
    return parse_tree(A2_TEXT)


@pytest.fixture
def a2_ordered(a2_tree):
    return order_tree(a2_tree)


@pytest.fixture
def path3_ordered():
    return order_tree(parse_tree(PATH3_TEXT))


@pytest.fixture
def ex_file(tmp_path):
    p = tmp_path / "ex.tree"
    p.write_text(EX_TEXT, encoding="utf-8")
    return str(p)
