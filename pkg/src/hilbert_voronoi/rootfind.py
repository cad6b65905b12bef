"""Small 1-D root helpers shared by the tracing and event-location code."""

from __future__ import annotations


def illinois(f, a: float, b: float, fa: float, fb: float,
             xtol: float, ftol: float, max_iter: int = 80) -> float:
    """Root of f on a bracketing interval via the Illinois variant of
    regula falsi.  Requires fa * fb <= 0; returns the best abscissa."""
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    side = 0
    for _ in range(max_iter):
        x = (a * fb - b * fa) / (fb - fa)
        # guard against stagnation at an endpoint
        if not (min(a, b) < x < max(a, b)):
            x = 0.5 * (a + b)
        fx = f(x)
        if abs(fx) <= ftol or abs(b - a) <= xtol:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb = x, fx
            if side == 1:
                fa *= 0.5
            side = 1
    return 0.5 * (a + b)


def scan_brackets(f, xs):
    """Evaluate f on the grid xs and return ((x0, f0), (x1, f1)) sign-change
    pairs, skipping non-finite values."""
    out = []
    prev = None
    for x in xs:
        v = f(x)
        if v != v:  # NaN
            prev = None
            continue
        if prev is not None and (v == 0.0 or (prev[1] > 0.0) != (v > 0.0)):
            out.append((prev, (x, v)))
        prev = (x, v)
    return out
