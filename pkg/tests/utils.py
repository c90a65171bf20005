from fractions import Fraction

import numpy as np
import pytest

from pulsal.pulse import PulseTrain

# pytest marker that is used to mark benchmarks, these must be run explicitly
skipbenchmark = pytest.mark.skipbenchmark


def ms(*times):
    """Exact train from times in milliseconds."""
    return PulseTrain([Fraction(t) / 1000 for t in times])


def ms_times(train):
    """Pulse times of a train in milliseconds."""
    return [t * 1000 for t in train.times]


def seeded(seed):
    return np.random.default_rng(seed)
