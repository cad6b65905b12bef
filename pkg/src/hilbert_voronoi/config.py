"""Named tolerance constants, collected in one configuration record.

Distance-space tolerances (suffix on metric values, which are logs of
cross-ratios) are scale-free because the metric is projectively invariant.
Scene-space tolerances are in scene units; marching internals additionally
scale their step sizes by the domain diameter.
"""

from dataclasses import dataclass, replace, fields


@dataclass(frozen=True)
class Tolerances:
    # scene-space
    boundary_eps: float = 1e-9        # hard-error band around the domain boundary
    flatness: float = 1e-4            # polyline deviation cap, fraction of domain diameter
    kernel_area_rel: float = 1e-9     # kernel counts as nonempty above this fraction of area(domain)

    # distance-space
    bisector_eq: float = 1e-8         # |d(x,s1)-d(x,s2)| at accepted bisector samples
    circumcenter_eq: float = 1e-8     # |d(x,si)-radius| at circumcenter events
    ball_eq: float = 1e-7             # |d(center,v)-radius| at ball boundary vertices
    opt_eps: float = 1e-7             # improvement threshold for the mean optimizer

    # parameter-space
    infinite_ball_t: float = 1e-4     # bisector parameter inset for limit balls
    event_merge_t: float = 1e-8       # events closer than this in t are merged

    # iteration caps
    max_piece_samples: int = 64
    mean_max_iter: int = 200

    def override(self, **kw):
        """Return a copy with the given fields replaced; unknown names rejected."""
        valid = {f.name for f in fields(self)}
        bad = set(kw) - valid
        if bad:
            raise KeyError(f"unknown tolerance fields: {sorted(bad)}")
        return replace(self, **kw)


DEFAULT_TOL = Tolerances()
