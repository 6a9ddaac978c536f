import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nfacanon.automata import Nfa


@pytest.fixture
def ends_in_a() -> Nfa:
    """Two-state NFA over {a=0, b=1} accepting words that end in a."""
    return Nfa(2, 2, [(0, 0, 0), (0, 0, 1), (0, 1, 0)], [0], [1])


@pytest.fixture
def ends_in_a_dfa_min():
    """Minimal total DFA for 'ends in a'."""
    from nfacanon.automata import Dfa

    d = Dfa(2, 2, 0, final={1}, explored={0, 1})
    d.set_transition(0, 0, 1)
    d.set_transition(0, 1, 0)
    d.set_transition(1, 0, 1)
    d.set_transition(1, 1, 0)
    return d


@pytest.fixture
def ends_in_a_dfa_redundant():
    """Non-minimal 3-state variant with a duplicated accepting state."""
    from nfacanon.automata import Dfa

    d = Dfa(3, 2, 0, final={1, 2}, explored={0, 1, 2})
    d.set_transition(0, 0, 1)
    d.set_transition(0, 1, 0)
    d.set_transition(1, 0, 2)
    d.set_transition(1, 1, 0)
    d.set_transition(2, 0, 1)
    d.set_transition(2, 1, 0)
    return d
