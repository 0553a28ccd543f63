"""Section charts: forward, inverse, equivariance, transitions.

Each section carries a chart onto C* x C: the first coordinate is the
equivariant product function times a multiplier whose zeros and poles
match the section's divisor, the second is the base point.  Charts over
deviated fibers are computed by the exact cancellation of the multiplier
against the product's zero or pole.
"""
import cmath

from ainfty import (act, base_section, canonical_multiplier, chart_forward,
                    chart_inverse, class_of, gauge_point, power_law,
                    transition)

cfg = power_law(2.0)
o = base_section(cfg)
one = canonical_multiplier(cfg, o)

pt = gauge_point(cfg, 0.0, 0j, 0.0)
print("base chart at the gauge origin:", chart_forward(cfg, o, one, pt))

# A section through the gap (-4, -1) over the axis fiber; its canonical
# multiplier is q^(-1), and the chart stays finite on the deviated fiber.
gap = class_of(cfg, (-2.5, 0j))
s = o.deviate(0j, gap)
m = canonical_multiplier(cfg, s)
print("\nsection divisor:", m.divisor.as_dict())

pt = gauge_point(cfg, -2.5, 0j, 0.3)
p, q = chart_forward(cfg, s, m, pt)
print(f"chart of the deviated-fiber point: p={p!r}, q={q!r}")

back = chart_inverse(cfg, s, m, (p, q))
print(f"inverse: t={back.zeta.t!r}, z={back.zeta.z}, theta={back.theta!r}")

# Equivariance: the scalar action multiplies the chart coordinate exactly.
g = cmath.rect(1.7, 0.9)
moved = act(cfg, pt, g)
p_moved, _ = chart_forward(cfg, s, m, moved)
print(f"\nequivariance defect: {abs(p_moved - g * p):.2e}")

# Transitions between overlapping charts multiply by the multiplier ratio.
pt2 = gauge_point(cfg, 1.0, 2 + 0j, 0.0)       # on both sections
p1, q1 = chart_forward(cfg, o, one, pt2)
p2, q2 = chart_forward(cfg, s, m, pt2)
glued = transition(one, m, (p1, q1))
print(f"transition consistency: {abs(glued[0] - p2):.2e} at q={q1}")
