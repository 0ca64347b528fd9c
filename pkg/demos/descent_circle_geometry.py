"""Descent circles and the two-step zig-zag.

A descent circle C(p) is the great circle whose northernmost (or
southernmost) point is p.  Its latitude along longitude is
theta(phi) = arctan(tan(theta_p) cos(phi - phi_p)), it crosses the equator
a quarter turn away from the apex, and a two-step zig-zag along descent
circles moves you straight down your own meridian: the azimuth offset per
step is arccos(sqrt(tan(theta_q) / tan(theta_p))).
"""

import math

import numpy as np

from kswitness import (
    DescentAwayFromEquator,
    DescentCircle,
    SphPoint,
    descent_theta,
    equator_crossings,
    perp_of_apex,
    to_cartesian,
    two_step_chain,
    two_step_delta_phi,
)

apex = SphPoint(math.pi / 4, 0.0)
circle = DescentCircle(apex)

print("=== the latitude profile of C(p), apex at (pi/4, 0) ===")
for phi in np.linspace(0.0, math.pi, 7):
    theta = descent_theta(circle, phi)
    point = to_cartesian(SphPoint(theta, phi))
    residual = abs(np.dot(point, perp_of_apex(apex)))
    print(f"  phi = {phi:6.3f}   theta(phi) = {theta:+7.4f}   "
          f"|<x, p_perp>| = {residual:.1e}")

print("\n=== equator crossings sit a quarter turn from the apex ===")
s1, s2 = equator_crossings(circle)
print(f"  s = {np.round(s1, 12)} and {np.round(s2, 12)}")
print(f"  theta(phi_p + pi/2) = {descent_theta(circle, math.pi / 2):.2e}")

print("\n=== two-step descent: straight down the meridian ===")
p = SphPoint(1.2, 0.3)
for target in (1.0, 0.7, 0.3, 0.05):
    delta = two_step_delta_phi(p.theta, target)
    r, q = two_step_chain(p, target)
    print(f"  {p.theta:.2f} -> {target:.2f}: zig-zag {delta:.4f} rad per step, "
          f"via r = ({r.theta:.4f}, {r.phi:.4f}), "
          f"arriving q = ({q.theta:.2f}, {q.phi:.1f})")

print("\n=== moving away from the equator has no real solution ===")
try:
    two_step_delta_phi(0.3, 0.9)
except DescentAwayFromEquator as exc:
    print(f"  rejected as expected: {exc}")
