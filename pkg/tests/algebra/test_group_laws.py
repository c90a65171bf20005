"""
Randomized checks of the group laws of the pulse-domain addition
"""
import itertools
import pytest

from pulsal.algebra import add_n, corollary_counts, identity
from pulsal.harness.generators import (
    SHAPED_CONFIGURATIONS, corollary_operands, random_train)
from pulsal.pulse import negate
from tests.utils import seeded

TRIALS = 500

@pytest.fixture
def trains():
    rng = seeded(4)

    def make(count):
        return [random_train(rng, int(rng.integers(1, 21)))
                for _ in range(count)]
    return make

@pytest.mark.timeout(60)
def test_identity(trains):
    for _ in range(TRIALS):
        p, = trains(1)
        assert add_n([p, identity()]) == p
        assert add_n([identity(), p]) == p

@pytest.mark.timeout(60)
def test_inverse(trains):
    for _ in range(TRIALS):
        p, = trains(1)
        assert add_n([p, negate(p)]) == identity()
        assert negate(negate(p)) == p

@pytest.mark.timeout(60)
def test_commutativity(trains):
    for _ in range(TRIALS):
        p, q = trains(2)
        assert add_n([p, q]) == add_n([q, p])

@pytest.mark.timeout(60)
def test_permutation_invariance(trains):
    for _ in range(TRIALS // 5):
        triple = trains(3)
        reference = add_n(triple)
        for order in itertools.permutations(triple):
            assert add_n(list(order)) == reference

@pytest.mark.timeout(60)
@pytest.mark.parametrize("configuration", sorted(SHAPED_CONFIGURATIONS))
def test_count_laws(configuration):
    rng = seeded(5)
    for _ in range(100):
        augend, addend, expected = corollary_operands(rng, configuration)
        assert tuple(corollary_counts(augend, addend)[1:]) == expected
        assert add_n([augend, addend]).counts() == expected
