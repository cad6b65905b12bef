"""Acceptance gate: one test per contract line, at the stated scale.

Each test prints a single summary line with the measured numbers so a
verbose run reads as a checklist.
"""
import json
import math
import random
import time

import numpy as np
import pytest
import shapely
from shapely.geometry import Polygon
from shapely.ops import unary_union

from hilbert_voronoi import (
    DEFAULT_TOL, MetricKind, Point, build_domain, circumcenter_events,
    distance, infinite_balls, kmeans_init, kmeans_step, label_all_orders,
    outer_region, overlap_region, single_linkage, trace_bisector, verify_all,
)
from hilbert_voronoi.cli import main
from hilbert_voronoi.polyops import kernel
from hilbert_voronoi.scenegen import random_domain, random_scene, random_sites
from hilbert_voronoi.svg_export import render_svg


def test_criterion_metric_axioms():
    t0 = time.perf_counter()
    rng = random.Random(101)
    worst_sym = worst_tri = 0.0
    asym_seen = 0.0
    for _ in range(100):
        dom = random_domain(rng, rng.randint(3, 20))
        pts = random_sites(rng, dom, 6)
        for _ in range(100):
            p, q, r = rng.sample(pts, 3)
            jig = 0.35 * rng.random()
            p = Point(p.x + jig * (q.x - p.x), p.y + jig * (q.y - p.y))
            for metric in (MetricKind.HILBERT, MetricKind.THOMPSON):
                dpq = distance(dom, metric, p, q)
                dqp = distance(dom, metric, q, p)
                dpr = distance(dom, metric, p, r)
                drq = distance(dom, metric, r, q)
                worst_sym = max(worst_sym, abs(dpq - dqp))
                worst_tri = max(worst_tri, dpq - dpr - drq)
            f = distance(dom, MetricKind.FUNK, p, q)
            b = distance(dom, MetricKind.FUNK, q, p)
            asym_seen = max(asym_seen, abs(f - b))
    took = time.perf_counter() - t0
    print(f"[metric axioms] sym {worst_sym:.2e} tri {worst_tri:.2e} "
          f"asym {asym_seen:.3f} in {took:.1f}s")
    assert worst_sym < 1e-9
    assert worst_tri < 1e-9
    assert asym_seen > 0.01
    assert took < 30.0


def test_criterion_cross_ratio_spot_values():
    sq = build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    p, q = Point(0.5, 0.5), Point(0.75, 0.5)
    h = distance(sq, MetricKind.HILBERT, p, q)
    f = distance(sq, MetricKind.FUNK, p, q)
    t = distance(sq, MetricKind.THOMPSON, p, q)
    print(f"[spot values] hilbert {h:.17g} funk {f:.17g} thompson {t:.17g}")
    assert abs(h - 0.5 * math.log(3)) < 1e-9
    assert abs(f - math.log(2)) < 1e-9
    assert abs(t - math.log(2)) < 1e-9


def _fifty_scenes():
    rng = random.Random(20260823)
    out = []
    for _ in range(50):
        n = rng.randint(3, 8)
        m = rng.randint(3, 10)
        out.append(random_scene(rng.randrange(1 << 30), n, m))
    return out


@pytest.fixture(scope="module")
def labeled_fifty():
    return [(dom, sites, label_all_orders(dom, MetricKind.HILBERT, sites))
            for dom, sites in _fifty_scenes()]


def test_criterion_lemma1_events_are_vertices_of_two_orders(labeled_fifty):
    events = violations = 0
    for dom, sites, res in labeled_fifty:
        for cid, info in res.clusters.items():
            events += 1
            ks = {tuple(sorted(lp)) for lp in info["label_pairs"].values()}
            if len(ks) != 1:
                violations += 1
                continue
            lo, hi = ks.pop()
            if hi != lo + 1 or len(info["label_pairs"]) != 3:
                violations += 1
    print(f"[lemma 1] {events} events, {violations} violations on 50 scenes")
    assert violations == 0


def test_criterion_lemma2_portions_single_label(labeled_fifty):
    portions = violations = 0
    for dom, sites, res in labeled_fifty:
        n = len(sites)
        for pair, lb in res.bisectors.items():
            ps = lb.portions
            portions += len(ps)
            if abs(ps[0].t_lo) > 1e-12 or abs(ps[-1].t_hi - 1.0) > 1e-12:
                violations += 1
            for a, b in zip(ps, ps[1:]):
                if abs(a.t_hi - b.t_lo) > 1e-12 or abs(a.k - b.k) != 1:
                    violations += 1
            for p in ps:
                if not 1 <= p.k <= n - 1:
                    violations += 1
    print(f"[lemma 2] {portions} portions, {violations} violations")
    assert violations == 0


def test_criterion_raster_oracle_equivalence():
    rng = random.Random(7)
    worst = 0.0
    slowest = 0.0
    for trial in range(25):
        n = rng.randint(2, 6)
        m = rng.randint(3, 10)
        dom, sites = random_scene(rng.randrange(1 << 30), n, m)
        t0 = time.perf_counter()
        res = label_all_orders(dom, MetricKind.HILBERT, sites)
        reports = verify_all(dom, MetricKind.HILBERT, sites,
                             res.diagrams, 400)
        took = time.perf_counter() - t0
        slowest = max(slowest, took)
        worst = max(worst, max(r["fraction"] for r in reports))
    print(f"[raster oracle] worst {100 * worst:.4f}% slowest {slowest:.1f}s "
          f"over 25 scenes")
    assert worst < 0.005
    assert slowest < 120.0


def test_criterion_non_star_shaped_cell():
    dom = build_domain([(100, 100), (300, 100), (300, 300), (100, 300)])
    sites = (Point(160, 284.9), Point(140, 170), Point(130, 165),
             Point(180, 285))
    res = label_all_orders(dom, MetricKind.HILBERT, sites)
    cells = res.diagrams[1].cells
    assert (0, 1) in cells
    shell = [(p[0], p[1]) for p in cells[(0, 1)][0][0]]
    ker = kernel(shell, require_simple=False)
    ker_area = Polygon(ker).area if len(ker) >= 3 else 0.0
    controls = {}
    for key, cell in cells.items():
        if key == (0, 1):
            continue
        cshell = [(p[0], p[1]) for p in cell[0][0]]
        cker = kernel(cshell, require_simple=False)
        controls[key] = Polygon(cker).area if len(cker) >= 3 else 0.0
    print(f"[non-star cell] cell (0,1) kernel area {ker_area:.3g}; "
          f"controls {sorted((k, round(v, 1)) for k, v in controls.items())}")
    assert ker_area < 1e-9
    assert max(controls.values()) > 1.0


def test_criterion_region_partition():
    rng = random.Random(31)
    sq = build_domain([(0, 0), (1, 0), (1, 1), (0, 1)])
    omega = Polygon(sq.vertex_list())
    worst_gap = 0.0
    site_misses = 0
    nocc_hits = nocc_trials = 0
    soft_failures = []
    for trial in range(50):
        s1, s2 = random_sites(rng, sq, 2)
        bis = trace_bisector(sq, MetricKind.HILBERT, s1, s2)
        pair = infinite_balls(sq, bis, DEFAULT_TOL)
        b0 = Polygon([(p.x, p.y) for p in pair.b0.boundary]).buffer(0)
        b1 = Polygon([(p.x, p.y) for p in pair.b1.boundary]).buffer(0)
        z = overlap_region(sq, MetricKind.HILBERT, s1, s2, balls=pair)
        w = outer_region(sq, MetricKind.HILBERT, s1, s2, balls=pair)
        zp = Polygon([(p.x, p.y) for p in z.polygon]) if z.polygon \
            else Polygon()
        wp = unary_union([
            Polygon([(p.x, p.y) for p in shell],
                    [[(p.x, p.y) for p in h] for h in holes])
            for shell, holes in w.components]) if w.components else Polygon()
        ring = b0.union(b1).intersection(omega).difference(zp)
        # Monte-Carlo the partition identity
        pts = np.column_stack([
            np.asarray([rng.random() for _ in range(4000)]),
            np.asarray([rng.random() for _ in range(4000)])])
        in_z = shapely.contains_xy(zp, pts[:, 0], pts[:, 1])
        in_w = shapely.contains_xy(wp, pts[:, 0], pts[:, 1])
        in_r = shapely.contains_xy(ring, pts[:, 0], pts[:, 1])
        covered = (in_z.astype(int) + in_w.astype(int) + in_r.astype(int))
        gap = abs(covered.sum() - len(pts)) / len(pts)
        worst_gap = max(worst_gap, gap)
        near = 1e-3
        for s in (s1, s2):
            if not zp.buffer(near).covers(shapely.geometry.Point(s.x, s.y)):
                site_misses += 1
        # third sites well inside the lens should admit no circumcenter
        if not zp.is_empty:
            tries = 0
            while nocc_trials < (trial + 1) * 3 and tries < 200:
                tries += 1
                cand = shapely.geometry.Point(rng.random(), rng.random())
                if not zp.contains(cand):
                    continue
                if zp.exterior.distance(cand) < 0.02:
                    continue
                cp = Point(cand.x, cand.y)
                if cp == s1 or cp == s2:
                    continue
                nocc_trials += 1
                evs = circumcenter_events(sq, MetricKind.HILBERT, s1, s2, cp)
                if evs:
                    soft_failures.append((trial, (cand.x, cand.y)))
                else:
                    nocc_hits += 1
    rate = nocc_hits / max(1, nocc_trials)
    print(f"[region partition] worst area gap {100 * worst_gap:.2f}% "
          f"site misses {site_misses} no-circumcenter {nocc_hits}/"
          f"{nocc_trials} ({100 * rate:.1f}%)")
    if soft_failures:
        print(f"[region partition] soft failures: {soft_failures[:5]}")
    assert worst_gap < 0.02
    assert site_misses == 0
    assert rate >= 0.95


def _naive_single_linkage(dom, metric, sites, count):
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
    merges = []
    while len(clusters) > count:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                d = min(dm[i][j] for i in clusters[a] for j in clusters[b])
                key = (d, min(clusters[a]), min(clusters[b]))
                if best is None or key < best[0]:
                    best = (key, a, b)
        (d, ra, rb), a, b = best
        merges.append((ra, rb, d))
        clusters[a] |= clusters[b]
        del clusters[b]
    return merges, {frozenset(c) for c in clusters}


def test_criterion_clustering():
    # k-means objective is monotone on 20 random scenes
    rng = random.Random(88)
    worst_rise = 0.0
    for _ in range(20):
        n = rng.randint(4, 10)
        dom, sites = random_scene(rng.randrange(1 << 30), n, rng.randint(3, 8))
        k = rng.randint(2, max(2, n - 1))
        st = kmeans_init(dom, MetricKind.HILBERT, sites, k)
        prev = st.objective
        for _ in range(25):
            st = kmeans_step(st, dom, MetricKind.HILBERT, sites)
            worst_rise = max(worst_rise, st.objective - prev)
            prev = st.objective
            if st.converged:
                break

    # single linkage agrees with the O(n^3) oracle on 30 sites
    dom = build_domain([(0, 0), (10, 0), (10, 10), (0, 10)])
    sites = random_sites(random.Random(46), dom, 30)
    st = single_linkage(dom, MetricKind.HILBERT, sites, count=1)
    want_merges, _ = _naive_single_linkage(dom, MetricKind.HILBERT, sites, 1)
    got_merges = [(a, b, h) for a, b, h in st.merge_history]
    merge_ok = len(got_merges) == len(want_merges) and all(
        ga == wa and gb == wb and abs(gh - wh) < 1e-9
        for (ga, gb, gh), (wa, wb, wh) in zip(got_merges, want_merges))

    # 120 sites cut at 38 clusters renders
    big = random_sites(random.Random(120), dom, 120)
    st38 = single_linkage(dom, MetricKind.HILBERT, big, count=38)
    n_clusters = len(set(st38.assignments))
    svg = render_svg(dom, sites=big, clusters=st38.assignments,
                     timestamp=False)
    print(f"[clustering] kmeans worst rise {worst_rise:.2e}; slink oracle "
          f"{'match' if merge_ok else 'MISMATCH'}; 120 sites -> "
          f"{n_clusters} clusters, svg {len(svg)}B")
    assert worst_rise <= 1e-9
    assert merge_ok
    assert n_clusters == 38
    assert svg.startswith("<?xml")


def _timed_all_orders(seed, n, m):
    dom, sites = random_scene(seed, n, m)
    t0 = time.perf_counter()
    label_all_orders(dom, MetricKind.HILBERT, sites)
    return time.perf_counter() - t0


def test_criterion_complexity_smoke():
    # doubling n at fixed m
    base_n = min(_timed_all_orders(4242, 6, 8) for _ in range(2))
    big_n = min(_timed_all_orders(4242, 12, 8) for _ in range(2))
    # doubling m at fixed n
    base_m = min(_timed_all_orders(515, 6, 8) for _ in range(2))
    big_m = min(_timed_all_orders(515, 6, 16) for _ in range(2))
    fn = big_n / base_n
    fm = big_m / base_m
    print(f"[complexity] n 6->12 at m=8: {base_n:.2f}s -> {big_n:.2f}s "
          f"(x{fn:.1f}); m 8->16 at n=6: {base_m:.2f}s -> {big_m:.2f}s "
          f"(x{fm:.1f})")
    assert fn <= 10.0
    assert fm <= 4.0


def test_criterion_byte_identical_output(tmp_path, capsys):
    scene = {
        "schema": "hilbert-voronoi-scene/1",
        "domain": [[0, 0], [1, 0], [1, 1], [0, 1]],
        "sites": [[0.32, 0.37], [0.66, 0.33], [0.52, 0.7], [0.48, 0.52]],
    }
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(scene))
    runs = []
    for _ in range(2):
        rc = main(["--scene", str(path), "voronoi", "--all"])
        out, _ = capsys.readouterr()
        assert rc == 0
        runs.append(out)
    same = runs[0] == runs[1]
    print(f"[determinism] two runs identical: {same} "
          f"({len(runs[0])} bytes)")
    assert same
