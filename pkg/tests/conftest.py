from __future__ import annotations

import numpy as np
import pytest

from kerdock_design.f2linalg import BitMatrix

# Matrices of GF(16) with p(x) = x^4 + x + 1 (rows are 0/1 strings, column 0 leftmost)
W4 = BitMatrix.from_strings(["0001", "0010", "0100", "1001"])
W4_INV = BitMatrix.from_strings(["1001", "0010", "0100", "1000"])
R4 = BitMatrix.from_strings(["1000", "0010", "1100", "0011"])
A4 = BitMatrix.from_strings(["0100", "0010", "0001", "1100"])

# Symplectic matrix of the element (a, b, c, d) = (a^3, a^8, a^7, 0) at m = 4
F_ABCD = BitMatrix.from_strings([
    "00000010", "00000100", "00001001", "00000011",
    "10110110", "01000101", "10001010", "10011101",
])

CKT1 = """\
Permute [4,1,2,3]
CNOT [1,2]
Permute [4,3,2,1]
CNOT [1,4]
H [1,2,3,4]
P [1,2,3,4]
CZ [1,3]
CZ [2,4]
CZ [3,4]
"""

CKT2 = """\
Permute [3,2,1,4]
CNOT [4,3]
CNOT [1,4]
H [1,2,3,4]
P [1,2,3,4]
CZ [1,3]
CZ [2,4]
CZ [3,4]
"""

CKT3 = """\
Permute [1,6,3,5,4,2]
CNOT [3,1]
CNOT [4,1]
CNOT [5,1]
CNOT [6,1]
CNOT [6,4]
CNOT [6,5]
CNOT [4,5]
CNOT [3,6]
CNOT [2,3]
H [1,2,3,4,5,6]
P [3,4,5]
CZ [1,3]
CZ [1,4]
CZ [1,5]
CZ [2,6]
CZ [3,5]
CZ [4,5]
CZ [4,6]
CZ [5,6]
H [1,2]
CNOT [2,3]
CNOT [2,4]
CNOT [2,5]
CNOT [2,6]
Z [2,6]
"""


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def ctx4():
    from kerdock_design.gf2m import make_context
    return make_context(4)


@pytest.fixture
def element_abcd(ctx4):
    from kerdock_design.design import PSLElement
    a = ctx4.alpha_power
    return PSLElement(ctx4, a(3), a(8), a(7), 0)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
