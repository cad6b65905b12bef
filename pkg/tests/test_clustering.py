"""Site clustering: k-means in the metric, and single linkage."""
import random

import pytest

from hilbert_voronoi import (
    ClusteringState, MetricKind, Point, build_domain, distance, kmeans_init,
    kmeans_run, kmeans_step, single_linkage,
)
from hilbert_voronoi.errors import EmptyInput, OutOfRange
from hilbert_voronoi.scenegen import random_sites


def two_blobs():
    dom = build_domain([(0, 0), (10, 0), (10, 10), (0, 10)])
    pts = [Point(1 + i * 0.2, 1 + j * 0.2) for i in range(2) for j in range(2)]
    pts += [Point(8 + i * 0.2, 8 + j * 0.2) for i in range(2) for j in range(2)]
    return dom, tuple(pts)


def test_kmeans_two_blobs():
    dom, sites = two_blobs()
    st = kmeans_run(dom, MetricKind.HILBERT, sites, 2, 50)
    assert st.converged
    assert st.step <= 5
    groups = {st.assignments[:4], st.assignments[4:]}
    assert groups == {(0, 0, 0, 0), (1, 1, 1, 1)} or \
        groups == {(1, 1, 1, 1), (0, 0, 0, 0)}


def test_kmeans_objective_monotone():
    dom, sites = two_blobs()
    st = kmeans_init(dom, MetricKind.HILBERT, sites, 3)
    prev = st.objective
    for _ in range(12):
        st = kmeans_step(st, dom, MetricKind.HILBERT, sites)
        assert st.objective <= prev + 1e-9
        prev = st.objective
        if st.converged:
            break
    assert st.converged


def test_kmeans_k_equals_n_zero_objective():
    dom, sites = two_blobs()
    st = kmeans_run(dom, MetricKind.HILBERT, sites, len(sites), 20)
    assert st.objective == pytest.approx(0.0, abs=1e-9)
    assert sorted(st.assignments) == list(range(len(sites)))


def test_kmeans_converged_state_is_fixed_point():
    dom, sites = two_blobs()
    st = kmeans_run(dom, MetricKind.HILBERT, sites, 2, 50)
    assert st.converged
    again = kmeans_step(st, dom, MetricKind.HILBERT, sites)
    assert again is st


def test_kmeans_reseeds_empty_cluster():
    dom, sites = two_blobs()
    # hand-built state: both centers on the first blob starves cluster 1
    bad = ClusteringState(
        method="kmeans",
        assignments=tuple(0 for _ in sites),
        centers=(Point(1.1, 1.1), Point(1.1, 1.1)),
        step=0, objective=float("inf"))
    st = bad
    for _ in range(20):
        st = kmeans_step(st, dom, MetricKind.HILBERT, sites)
        if st.converged:
            break
    assert st.converged
    assert len(set(st.assignments)) == 2


def test_kmeans_bad_k():
    dom, sites = two_blobs()
    with pytest.raises(OutOfRange):
        kmeans_init(dom, MetricKind.HILBERT, sites, 0)
    with pytest.raises(OutOfRange):
        kmeans_init(dom, MetricKind.HILBERT, sites, len(sites) + 1)
    with pytest.raises(EmptyInput):
        kmeans_init(dom, MetricKind.HILBERT, (), 1)


def naive_single_linkage(dom, metric, sites, count):
    # textbook greedy merge, O(n^3), kept deliberately simple
    n = len(sites)
    dm = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                dm[i][j] = distance(dom, metric, sites[i], sites[j])
    for i in range(n):
        for j in range(i + 1, n):
            d = min(dm[i][j], dm[j][i])
            dm[i][j] = dm[j][i] = d
    clusters = [{i} for i in range(n)]
    while len(clusters) > count:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                d = min(dm[i][j] for i in clusters[a] for j in clusters[b])
                key = (d, min(clusters[a]), min(clusters[b]))
                if best is None or key < best[0]:
                    best = (key, a, b)
        _, a, b = best
        clusters[a] |= clusters[b]
        del clusters[b]
    return {frozenset(c) for c in clusters}


def partition_of(assignments):
    groups = {}
    for i, a in enumerate(assignments):
        groups.setdefault(a, set()).add(i)
    return {frozenset(g) for g in groups.values()}


@pytest.mark.parametrize("metric", [MetricKind.HILBERT, MetricKind.FUNK])
def test_single_linkage_matches_naive_oracle(metric):
    dom = build_domain([(0, 0), (10, 0), (10, 10), (0, 10)])
    rng = random.Random(46)
    sites = random_sites(rng, dom, 30)
    for count in (2, 5, 11):
        st = single_linkage(dom, metric, sites, count=count)
        want = naive_single_linkage(dom, metric, sites, count)
        assert partition_of(st.assignments) == want


def test_single_linkage_heights_nondecreasing():
    dom, sites = two_blobs()
    st = single_linkage(dom, MetricKind.HILBERT, sites, count=1)
    hs = [m[2] for m in st.merge_history]
    assert len(hs) == len(sites) - 1
    assert all(a <= b + 1e-12 for a, b in zip(hs, hs[1:]))


def test_single_linkage_height_stop():
    dom, sites = two_blobs()
    # cut below the blob gap: the two blobs stay separate
    st = single_linkage(dom, MetricKind.HILBERT, sites, height=1.0)
    assert partition_of(st.assignments) == {
        frozenset(range(4)), frozenset(range(4, 8))}


def test_single_linkage_trivial_stops():
    dom, sites = two_blobs()
    every = single_linkage(dom, MetricKind.HILBERT, sites, count=len(sites))
    assert len(partition_of(every.assignments)) == len(sites)
    one = single_linkage(dom, MetricKind.HILBERT, sites, count=1)
    assert len(partition_of(one.assignments)) == 1


def test_single_linkage_permutation_invariant():
    dom = build_domain([(0, 0), (10, 0), (10, 10), (0, 10)])
    rng = random.Random(9)
    sites = random_sites(rng, dom, 12)
    st = single_linkage(dom, MetricKind.HILBERT, sites, count=3)
    base = {frozenset(sites[i] for i in g)
            for g in partition_of(st.assignments)}
    perm = list(range(12))
    rng.shuffle(perm)
    shuffled = tuple(sites[i] for i in perm)
    st2 = single_linkage(dom, MetricKind.HILBERT, shuffled, count=3)
    got = {frozenset(shuffled[i] for i in g)
           for g in partition_of(st2.assignments)}
    assert got == base
