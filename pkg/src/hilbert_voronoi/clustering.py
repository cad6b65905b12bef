"""K-means and single-linkage clustering of sites under the scene metric.

Both methods are deterministic: k-means seeds by farthest-first traversal
from the site nearest the global Fréchet mean (no RNG), and single
linkage breaks distance ties by the smallest pair of cluster
representatives, where a cluster's representative is its lowest site
index.  Asymmetric metrics are symmetrized by the smaller of the two
directions for linkage; k-means always measures site-to-center.

Single linkage retains the full dendrogram; the count or height stop only
selects which level the assignments report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import EmptyInput, OutOfRange
from .geometry import ConvexDomain, MetricKind, Point, distance
from . import fastdist
from .mosaic import frechet_mean

KMEANS = "kmeans"
SINGLE_LINKAGE = "single-linkage"


@dataclass(frozen=True)
class ClusteringState:
    method: str
    assignments: tuple          # site index -> cluster id
    centers: tuple = ()         # k-means only
    merge_history: tuple = ()   # single linkage: (rep_a, rep_b, height)
    step: int = 0
    objective: float = 0.0
    converged: bool = False


def _site_to_center(domain, metric, site, center, tol):
    return distance(domain, metric, Point(*site), Point(*center), tol)


def _assign(domain, metric, sites, centers, tol):
    out = []
    for s in sites:
        ds = [_site_to_center(domain, metric, s, c, tol) for c in centers]
        out.append(min(range(len(centers)), key=lambda i: (ds[i], i)))
    return out


def _objective_of(domain, metric, sites, centers, assign, tol):
    return sum(_site_to_center(domain, metric, s, centers[a], tol)
               for s, a in zip(sites, assign))


def kmeans_init(domain: ConvexDomain, metric: MetricKind, sites, k: int,
                tol: Tolerances = DEFAULT_TOL) -> ClusteringState:
    sites = [Point(*s) for s in sites]
    if not sites:
        raise EmptyInput("no sites to cluster")
    if not 1 <= k <= len(sites):
        raise OutOfRange(f"cluster count {k} outside 1..{len(sites)}")
    gm = frechet_mean(domain, metric, sites, tol).point
    first = min(range(len(sites)),
                key=lambda i: (_site_to_center(domain, metric, sites[i],
                                               gm, tol), i))
    chosen = [first]
    while len(chosen) < k:
        def gap(i):
            return min(_site_to_center(domain, metric, sites[i],
                                       sites[c], tol) for c in chosen)
        nxt = max((i for i in range(len(sites)) if i not in chosen),
                  key=lambda i: (gap(i), -i))
        chosen.append(nxt)
    centers = tuple(sites[i] for i in chosen)
    assign = _assign(domain, metric, sites, centers, tol)
    obj = _objective_of(domain, metric, sites, centers, assign, tol)
    return ClusteringState(KMEANS, tuple(assign), centers, (), 0, obj, False)


def kmeans_step(state: ClusteringState, domain: ConvexDomain,
                metric: MetricKind, sites,
                tol: Tolerances = DEFAULT_TOL) -> ClusteringState:
    if state.method != KMEANS:
        raise OutOfRange("kmeans_step on a non-kmeans state")
    if state.converged:
        return state
    sites = [Point(*s) for s in sites]
    centers = list(state.centers)
    assign = _assign(domain, metric, sites, centers, tol)

    for c in range(len(centers)):
        if c in assign:
            continue
        # reseed an emptied cluster at the site farthest from its center
        far = max(range(len(sites)),
                  key=lambda i: (_site_to_center(domain, metric, sites[i],
                                                 centers[assign[i]], tol), -i))
        centers[c] = sites[far]
        assign[far] = c

    for c in range(len(centers)):
        members = [sites[i] for i in range(len(sites)) if assign[i] == c]
        centers[c] = frechet_mean(domain, metric, members, tol).point

    obj = _objective_of(domain, metric, sites, centers, assign, tol)
    moved = max(math.hypot(a.x - b[0], a.y - b[1])
                for a, b in zip(centers, state.centers))
    converged = (tuple(assign) == state.assignments
                 and moved <= 1e-12 * domain.diameter)
    return ClusteringState(KMEANS, tuple(assign), tuple(centers), (),
                           state.step + 1, obj, converged)


def kmeans_run(domain, metric, sites, k, steps,
               tol: Tolerances = DEFAULT_TOL) -> ClusteringState:
    state = kmeans_init(domain, metric, sites, k, tol)
    for _ in range(steps):
        state = kmeans_step(state, domain, metric, sites, tol)
        if state.converged:
            break
    return state


def linkage_matrix(domain: ConvexDomain, metric: MetricKind, sites,
                   tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    pts = np.array([(s[0], s[1]) for s in sites], float)
    dm = fastdist.distance_matrix(domain, metric,
                                  pts, [Point(*s) for s in sites])
    return np.minimum(dm, dm.T)


def single_linkage(domain: ConvexDomain, metric: MetricKind, sites, *,
                   count: int = None, height: float = None,
                   tol: Tolerances = DEFAULT_TOL) -> ClusteringState:
    sites = [Point(*s) for s in sites]
    n = len(sites)
    if n == 0:
        raise EmptyInput("no sites to cluster")
    if count is not None and not 1 <= count <= n:
        raise OutOfRange(f"cluster count {count} outside 1..{n}")

    dm = linkage_matrix(domain, metric, sites, tol)
    members = {i: {i} for i in range(n)}      # representative -> site set
    link = dm.copy()
    np.fill_diagonal(link, np.inf)

    merges = []
    while len(members) > 1:
        reps = sorted(members)
        sub = link[np.ix_(reps, reps)]
        h = float(sub.min())
        pair = None
        for ia, a in enumerate(reps):        # smallest (a, b) among ties
            for b in reps[ia + 1:]:
                if link[a, b] == h:
                    pair = (a, b)
                    break
            if pair:
                break
        a, b = pair
        merges.append((a, b, h))
        members[a] |= members.pop(b)
        for c in members:
            if c != a:
                link[a, c] = link[c, a] = min(link[a, c], link[b, c])

    stop = len(merges)
    if count is not None:
        stop = n - count
    elif height is not None:
        stop = sum(1 for m in merges if m[2] <= height)

    rep = list(range(n))
    for a, b, _ in merges[:stop]:
        for i in range(n):
            if rep[i] == b:
                rep[i] = a
    ids = {r: j for j, r in enumerate(sorted(set(rep)))}
    assign = tuple(ids[r] for r in rep)
    return ClusteringState(SINGLE_LINKAGE, assign, (), tuple(merges),
                           stop, 0.0, len(ids) == 1)
