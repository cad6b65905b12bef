"""Seeded random scenes for tests and benchmarks.

Domains are jittered circle samples retried until they pass validation;
sites are rejection-sampled with a boundary margin and a pairwise
separation so the generated scenes stay clear of the degeneracies the
tolerances guard against.
"""

from __future__ import annotations

import math
import random

from .geometry import ConvexDomain, Point, build_domain
from .errors import GeometryError

SITE_BOUNDARY_MARGIN = 0.08   # fraction of the domain diameter
SITE_PAIR_MARGIN = 0.05


def random_domain(rng: random.Random, m: int) -> ConvexDomain:
    # radial jitter must shrink with m: a vertex pulled inward between two
    # neighbors turns reflex once it dips below their chord, and the chord
    # sagitta scales with the squared angular gap
    gap = 2.0 * math.pi / m
    lo = max(0.55, 1.0 - 0.3 * gap * gap)
    while True:
        base = rng.uniform(0.0, 2.0 * math.pi)
        angles = sorted(base + 2.0 * math.pi * (i + rng.uniform(0.1, 0.9)) / m
                        for i in range(m))
        cx, cy = rng.uniform(-2, 2), rng.uniform(-2, 2)
        scale = rng.uniform(1.0, 4.0)
        verts = [(cx + scale * rng.uniform(lo, 1.0) * math.cos(a),
                  cy + scale * rng.uniform(lo, 1.0) * math.sin(a))
                 for a in angles]
        try:
            return build_domain(verts)
        except GeometryError:
            continue


def random_sites(rng: random.Random, domain: ConvexDomain, n: int,
                 boundary_margin: float = SITE_BOUNDARY_MARGIN,
                 pair_margin: float = SITE_PAIR_MARGIN) -> list:
    minx, maxx = min(domain._xs), max(domain._xs)
    miny, maxy = min(domain._ys), max(domain._ys)
    keep_out = boundary_margin * domain.diameter
    spread = pair_margin * domain.diameter
    sites = []
    tries = 0
    while len(sites) < n:
        tries += 1
        if tries > 20000:
            # margins unsatisfiable for this n; relax the pairwise spread
            spread *= 0.5
            tries = 0
        x = rng.uniform(minx, maxx)
        y = rng.uniform(miny, maxy)
        if domain.boundary_distance(x, y) < keep_out:
            continue
        if any(math.hypot(x - s.x, y - s.y) < spread for s in sites):
            continue
        sites.append(Point(x, y))
    return sites


def random_scene(seed: int, n: int, m: int):
    rng = random.Random(seed)
    domain = random_domain(rng, m)
    return domain, random_sites(rng, domain, n)
