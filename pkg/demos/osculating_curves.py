#!/usr/bin/env python3
"""Osculating planes of the twisted cubic and the shift maps.

The family of tangent lines of a space curve is an isotropic curve in
the Grassmannian: its tangent direction is a single rank-one map whose
kernel is the curve point and whose image is the osculating plane.
Taking kernels/images walks the whole osculating flag up and down, and
the top osculating family is the dual curve.
"""

from fractions import Fraction

from grassgeo.fields import QQ
from grassgeo.osc import (
    ParamCurve,
    dual_curve,
    osc_family_space,
    osc_tangent_hom,
    osculating_space,
    sigma_shift,
)
from grassgeo.poly import PolyRing

ring = PolyRing(QQ, ("t",))
t = ring.var(0)
cubic = ParamCurve(QQ, [ring.one(), t, t**2, t**3])
print("C: twisted cubic t -> (1 : t : t^2 : t^3)")

tv = Fraction(2)
h = osc_tangent_hom(cubic, tv, 1)
print("\nAt t = 2, the tangent-line family moves by a rank-%d map." % h.rank())
print("kernel (the curve point):    ", [str(c) for c in h.kernel_subspace().basis.rows[0]])
print("image grows to the osculating plane of dimension", h.image_subspace().ell)

samples = [(osculating_space(cubic, tv, 1).subspace, osc_family_space(cubic, tv, 1))]
down = sigma_shift(samples, "-")[0]
up = sigma_shift(samples, "+")[0]
print("\nshift down recovers the curve point: ", down.same_as(osculating_space(cubic, tv, 0).subspace))
print("shift up recovers the osculating plane:", up.same_as(osculating_space(cubic, tv, 2).subspace))

dual = dual_curve(cubic)
print("\ndual curve coordinates:", [p.format() for p in dual.coords])
dd = dual_curve(dual)
print("dual of the dual at t = 2:", [str(c) for c in dd.point(tv)])
print("original curve at t = 2:  ", [str(c) for c in cubic.point(tv)])
