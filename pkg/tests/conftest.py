"""Shared fixtures: a couple of hand-picked domains plus seeded random scenes."""
import random

import pytest
from hypothesis import settings

from hilbert_voronoi import MetricKind, Point, build_domain
from hilbert_voronoi.scenegen import random_scene

settings.register_profile("pkg", deadline=None, max_examples=50)
settings.load_profile("pkg")

ALL_METRICS = list(MetricKind)


@pytest.fixture
def square():
    return build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def heptagon():
    return build_domain(
        [(2.3, 0.1), (4.1, 0.9), (4.8, 2.6), (3.9, 4.4),
         (2.0, 4.9), (0.4, 3.4), (0.2, 1.4)]
    )


@pytest.fixture
def heptagon_sites():
    return (Point(2.4, 2.5), Point(1.3, 1.7), Point(3.5, 3.2),
            Point(2.9, 1.2), Point(1.8, 3.8))


@pytest.fixture
def triangle():
    return build_domain([(0, 0), (4, 0), (1, 3)])


def seeded_scenes(seed, count, n_lo, n_hi, m_lo, m_hi):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        m = rng.randint(m_lo, m_hi)
        out.append(random_scene(rng.randrange(1 << 30), n, m))
    return out


@pytest.fixture
def small_scenes():
    return seeded_scenes(11, 6, 3, 6, 3, 8)
