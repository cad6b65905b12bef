"""Deterministic SVG rendering of scenes and computed layers.

Output depends only on the geometry passed in, except for one generation
timestamp comment that can be suppressed (or pinned) for byte-stable
artifacts.  Every order-k diagram lands in its own ``<g id="order-K">``
group so viewers can toggle layers.
"""

from __future__ import annotations

import datetime

PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b4", "#59a14f",
           "#edc949", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ab")


def _f(v: float) -> str:
    return format(float(v), ".8g")


def _pts(points) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in points)


def _path(shell, holes=()) -> str:
    parts = ["M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in shell) + " Z"]
    for hole in holes:
        parts.append("M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in hole)
                     + " Z")
    return " ".join(parts)


def render_svg(domain, sites=(), diagrams=(), bisectors=(), balls=(),
               regions=None, mosaic=None, clusters=None, width=640,
               timestamp=True) -> str:
    minx, maxx = min(v[0] for v in domain.vertices), max(v[0] for v in domain.vertices)
    miny, maxy = min(v[1] for v in domain.vertices), max(v[1] for v in domain.vertices)
    span_x, span_y = maxx - minx, maxy - miny
    pad = 0.03 * max(span_x, span_y)
    lw = 0.0025 * max(span_x, span_y)
    r_site = 0.008 * max(span_x, span_y)
    height = int(round(width * (span_y + 2 * pad) / (span_x + 2 * pad)))

    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    if timestamp is True:
        now = datetime.datetime.now(datetime.timezone.utc)
        out.append(f"<!-- generated {now.strftime('%Y-%m-%dT%H:%M:%SZ')} -->")
    elif isinstance(timestamp, str):
        out.append(f"<!-- generated {timestamp} -->")
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_f(minx - pad)} {_f(miny - pad)} '
        f'{_f(span_x + 2 * pad)} {_f(span_y + 2 * pad)}" '
        f'width="{width}" height="{height}">')
    out.append(
        f'<defs><pattern id="hatch-z" width="{_f(8 * lw)}" height="{_f(8 * lw)}"'
        f' patternUnits="userSpaceOnUse" patternTransform="rotate(45)">'
        f'<line x1="0" y1="0" x2="0" y2="{_f(8 * lw)}"'
        f' stroke="#59a14f" stroke-width="{_f(2 * lw)}"/></pattern>'
        f'<pattern id="hatch-w" width="{_f(8 * lw)}" height="{_f(8 * lw)}"'
        f' patternUnits="userSpaceOnUse" patternTransform="rotate(-45)">'
        f'<line x1="0" y1="0" x2="0" y2="{_f(8 * lw)}"'
        f' stroke="#e15759" stroke-width="{_f(2 * lw)}"/></pattern></defs>')
    out.append(f'<g transform="matrix(1 0 0 -1 0 {_f(miny + maxy)})">')
    out.append(f'<polygon points="{_pts(domain.vertices)}" fill="#fdfdf8" '
               f'stroke="#333333" stroke-width="{_f(2 * lw)}"/>')

    for diagram in diagrams:
        k = diagram.k
        color = PALETTE[(k - 1) % len(PALETTE)]
        out.append(f'<g id="order-{k}">')
        for idx, key in enumerate(sorted(diagram.cells)):
            fill = PALETTE[idx % len(PALETTE)]
            for shell, holes in diagram.cells[key]:
                out.append(f'<path d="{_path(shell, holes)}" fill="{fill}" '
                           f'fill-opacity="0.30" fill-rule="evenodd" '
                           f'stroke="none"/>')
        for edge in diagram.edges:
            out.append(f'<polyline points="{_pts(edge.polyline)}" '
                       f'fill="none" stroke="{color}" '
                       f'stroke-width="{_f(1.5 * lw)}"/>')
        for _, (vx, vy) in diagram.vertices:
            out.append(f'<circle cx="{_f(vx)}" cy="{_f(vy)}" '
                       f'r="{_f(0.6 * r_site)}" fill="{color}"/>')
        out.append('</g>')

    if bisectors:
        out.append('<g id="bisectors">')
        for bis in bisectors:
            out.append(f'<polyline points="{_pts(bis.points)}" fill="none" '
                       f'stroke="#555555" stroke-width="{_f(lw)}" '
                       f'stroke-dasharray="{_f(4 * lw)} {_f(3 * lw)}"/>')
        out.append('</g>')

    if balls:
        out.append('<g id="balls">')
        for b in balls:
            out.append(f'<polygon points="{_pts(b.boundary)}" fill="none" '
                       f'stroke="#b07aa1" stroke-width="{_f(lw)}"/>')
        out.append('</g>')

    if regions is not None:
        out.append('<g id="regions">')
        z, w = regions
        if z is not None and z.polygon:
            out.append(f'<path d="{_path(z.polygon)}" fill="url(#hatch-z)" '
                       f'stroke="#59a14f" stroke-width="{_f(lw)}"/>')
        if w is not None:
            for shell, holes in w.components:
                out.append(f'<path d="{_path(shell, holes)}" '
                           f'fill="url(#hatch-w)" fill-rule="evenodd" '
                           f'stroke="#e15759" stroke-width="{_f(lw)}"/>')
        out.append('</g>')

    if mosaic is not None:
        out.append('<g id="mosaic">')
        for a, b in mosaic.edges:
            pa, pb = mosaic.nodes[a].point, mosaic.nodes[b].point
            out.append(f'<line x1="{_f(pa.x)}" y1="{_f(pa.y)}" '
                       f'x2="{_f(pb.x)}" y2="{_f(pb.y)}" '
                       f'stroke="#333333" stroke-width="{_f(lw)}"/>')
        for key in sorted(mosaic.nodes):
            p = mosaic.nodes[key].point
            out.append(f'<circle cx="{_f(p.x)}" cy="{_f(p.y)}" '
                       f'r="{_f(0.7 * r_site)}" fill="#333333"/>')
        out.append('</g>')

    if sites:
        out.append('<g id="sites">')
        for i, s in enumerate(sites):
            fill = (PALETTE[clusters[i] % len(PALETTE)]
                    if clusters is not None else "#222222")
            out.append(f'<circle cx="{_f(s[0])}" cy="{_f(s[1])}" '
                       f'r="{_f(r_site)}" fill="{fill}" stroke="#ffffff" '
                       f'stroke-width="{_f(0.5 * lw)}"/>')
        out.append('</g>')

    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
