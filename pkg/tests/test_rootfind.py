"""Bracketed root solving."""
import math

import pytest
from hypothesis import given, strategies as st

from hilbert_voronoi.rootfind import illinois, scan_brackets


def test_illinois_linear():
    f = lambda x: 2 * x - 1
    r = illinois(f, 0.0, 1.0, f(0.0), f(1.0), 1e-14, 1e-14)
    assert r == pytest.approx(0.5, abs=1e-12)


def test_illinois_transcendental():
    f = math.cos
    r = illinois(f, 1.0, 2.0, f(1.0), f(2.0), 1e-14, 1e-15)
    assert r == pytest.approx(math.pi / 2, abs=1e-12)


def test_illinois_flat_function_stays_bracketed():
    # x^9 is so flat the iteration may hit max_iter; the answer must at
    # least stay inside the bracket
    f = lambda x: x ** 9
    r = illinois(f, -1.0, 1.5, f(-1.0), f(1.5), 1e-13, 1e-12)
    assert -1.0 <= r <= 1.5
    assert abs(f(r)) <= 1e-12 or abs(r) < 0.8


def test_illinois_exact_endpoint_roots():
    f = lambda x: x - 2.0
    assert illinois(f, 2.0, 3.0, 0.0, 1.0, 1e-12, 0.0) == 2.0
    assert illinois(f, 1.0, 2.0, -1.0, 0.0, 1e-12, 0.0) == 2.0


@given(st.floats(-5, 5), st.floats(0.1, 5))
def test_illinois_random_roots(root, slope):
    # monotone with nonzero slope at the root: two-sided convergence
    f = lambda x: slope * (x - root) + 0.3 * (x - root) ** 3
    a, b = root - 1.7, root + 2.3
    r = illinois(f, a, b, f(a), f(b), 1e-13, 0.0)
    assert r == pytest.approx(root, abs=1e-9)


def test_scan_brackets_finds_all_sign_changes():
    xs = [0.25 + i * 0.5 for i in range(20)]  # 0.25 .. 9.75
    brs = scan_brackets(math.sin, xs)
    # sin crosses at pi, 2pi, 3pi inside the grid span
    assert len(brs) == 3
    for (a, fa), (b, fb) in brs:
        assert fa * fb < 0
        assert a < b


def test_scan_brackets_skips_nan_runs():
    f = lambda x: float("nan") if 1.2 < x < 2.2 else x - 3.0
    brs = scan_brackets(f, [0, 1, 2, 2.5, 3.5])
    assert len(brs) == 1
    (a, _), (b, _) = brs[0]
    assert (a, b) == (2.5, 3.5)


def test_scan_brackets_none():
    assert scan_brackets(lambda x: 1.0, [0, 1, 2]) == []
