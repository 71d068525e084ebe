"""Fixtures shared across the test suite."""

import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from ifp import parse

DATA = pathlib.Path(__file__).parent / "data"

# The goal of the six-step worked proof, with two two-member clusters.
GOAL_TEXT = "((q|1 r)&(p|2 ~p))|1((p|2 ~p)&(s|1 ~q))"

# A valid cirquent with clusters 1 and 3 shared across the conjunction.
E1_TEXT = "((p|1 ~p)&(p|1 ~p))|2((q|3 r)&(p|3 ~q))"

# One cluster spanning both conjuncts, nothing valid about it.
E4_TEXT = "(p|1 q)&((r|1 s)&q)"

# False everywhere, yet its all-singleton variant is satisfiable.
X_TEXT = "(p|1 q)&(~p|1 ~q)"
X_FREE_TEXT = "(p|q)&(~p|~q)"

# The worked proof's axiom: a classical tautology in four disjuncts.
A0_TEXT = "((q&p)|(p&~q))|((q&~p)|(~p&~q))"

# The goal after clearing its same-cluster nesting.
C1_TEXT = "(q&(p|2 ~p))|1((p|2 ~p)&~q)"


@pytest.fixture
def goal():
    return parse(GOAL_TEXT)


@pytest.fixture
def e1():
    return parse(E1_TEXT)


@pytest.fixture
def e4():
    return parse(E4_TEXT)


@pytest.fixture
def x_pair():
    return parse(X_TEXT)


@pytest.fixture
def x_free():
    return parse(X_FREE_TEXT)


@pytest.fixture
def a0():
    return parse(A0_TEXT)


@pytest.fixture
def c1():
    return parse(C1_TEXT)


@pytest.fixture
def worked_proof_text():
    return (DATA / "worked_proof.ifp").read_text(encoding="utf-8")
