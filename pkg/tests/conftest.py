import numpy as np
import pytest

from nct.bp import BPTree
from nct.treefile import random_parents

T1_BP = "(((())(()))(()()))"
T1_COLORS = [1, 2, 3, 1, 2, 3, 2, 1, 3]


@pytest.fixture
def t1():
    return BPTree(T1_BP)


def random_tree(n, seed):
    """Uniform-attachment tree in preorder."""
    return BPTree.from_parents(random_parents(n, np.random.default_rng(seed)))


def path_tree(n):
    return BPTree("(" * n + ")" * n)


def caterpillar(n):
    """A spine of ceil(n/2) nodes, each (but possibly the last) with one extra leaf."""
    parent = [0, 0]
    spine = 1
    while len(parent) - 1 < n:
        parent.append(spine)  # leaf
        if len(parent) - 1 < n:
            parent.append(spine)
            spine = len(parent) - 1
    # leaves were appended before the next spine node, so preorder holds
    return BPTree.from_parents(parent)


def random_colors(n, sigma, seed):
    return np.random.default_rng(seed).integers(1, sigma + 1, size=n).tolist()


# one line per acceptance criterion, echoed after the run
ACCEPTANCE = {}


def record(num, title, ok, detail=""):
    line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE[num] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])
