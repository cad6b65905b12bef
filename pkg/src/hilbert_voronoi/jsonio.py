"""JSON views of computed geometry, shared by the CLI and the session
service.  Pure converters: every function maps one result object to
plain dicts/lists ready for the canonical writer."""

from __future__ import annotations


def point_json(p):
    return [float(p[0]), float(p[1])]


def ring_json(points):
    return [point_json(p) for p in points]


def poly_json(shell, holes=()):
    return {"shell": ring_json(shell),
            "holes": [ring_json(h) for h in holes]}


def ball_json(b):
    return {"center": point_json(b.center), "radius": b.radius,
            "metric": b.metric.value, "boundary": ring_json(b.boundary)}


def bisector_json(bis):
    return {
        "s1": point_json(bis.s1),
        "s2": point_json(bis.s2),
        "metric": bis.metric.value,
        "points": ring_json(bis.points),
        "t": [float(t) for t in bis.t],
        "pieces": [{"t_lo": p.t_lo, "t_hi": p.t_hi} for p in bis.pieces],
        "endpoint_edges": list(bis.endpoint_edges),
        "length": bis.length,
    }


def hosted_event_json(ev):
    return {"third": ev.third, "t": ev.t, "point": point_json(ev.point),
            "radius": ev.radius, "id": ev.cid,
            "near_boundary": ev.near_boundary, "recovered": ev.recovered}


def labeled_json(lb):
    return {
        "pair": list(lb.pair),
        "bisector": bisector_json(lb.bisector),
        "events": [hosted_event_json(e) for e in lb.events],
        "portions": [{"t_lo": p.t_lo, "t_hi": p.t_hi, "order": p.k}
                     for p in lb.portions],
    }


def circumcenter_json(ev, host_pair):
    return {"sites": list(ev.sites), "host": list(host_pair), "t": ev.t,
            "point": point_json(ev.point), "radius": ev.radius,
            "near_boundary": ev.near_boundary}


def diagram_json(diagram):
    return {
        "order": diagram.k,
        "edges": [{"pair": list(e.pair), "t_lo": e.t_lo, "t_hi": e.t_hi,
                   "polyline": ring_json(e.polyline)}
                  for e in diagram.edges],
        "cells": [{"sites": list(key),
                   "polygons": [poly_json(s, h)
                                for s, h in diagram.cells[key]]}
                  for key in sorted(diagram.cells)],
        "vertices": [{"id": cid, "point": point_json(p)}
                     for cid, p in diagram.vertices],
    }


def mosaic_json(mosaic):
    return {
        "order": mosaic.k,
        "nodes": [{"sites": list(key),
                   "point": point_json(n.point),
                   "objective": n.objective,
                   "iterations": n.iterations,
                   "converged": n.converged,
                   "clamped": n.clamped}
                  for key, n in sorted(mosaic.nodes.items())],
        "edges": [[list(a), list(b)] for a, b in mosaic.edges],
    }


def regions_json(z, w, pair_balls):
    return {
        "pair": list(z.site_pair),
        "overlap": {"polygon": ring_json(z.polygon)},
        "outer": {"components": [poly_json(s, h) for s, h in w.components]},
        "b0": ball_json(pair_balls.b0),
        "b1": ball_json(pair_balls.b1),
        "limit_inset": pair_balls.t_inset,
    }


def clustering_json(state):
    out = {"method": state.method,
           "assignments": list(state.assignments),
           "step": state.step,
           "converged": state.converged}
    if state.centers:
        out["centers"] = [point_json(c) for c in state.centers]
        out["objective"] = state.objective
    if state.merge_history:
        out["merges"] = [[a, b, h] for a, b, h in state.merge_history]
    return out
