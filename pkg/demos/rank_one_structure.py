#!/usr/bin/env python3
"""Rank-one conormal structure across the levels of the Segre 2x4.

For the variety of rank-one 2x4 matrices in P^7, every level of
"planes meeting X non-transversely" has rank-one conormal directions:
the low levels share an image line (beta), levels 2..4 are
hypersurfaces, and the high levels share a kernel hyperplane (alpha).
Tangent spaces come from exact jet probes of the incidence chart, so
the conormal dimensions below are computed, not assumed.
"""

from grassgeo.associated import associated_tangent_pushforward, sample_associated
from grassgeo.fields import GF
from grassgeo.grassmann import trace_annihilator
from grassgeo.isoclass import alpha_beta_type, classify
from grassgeo.varieties import segre as make_segre

F = GF(32003)
segre = make_segre(F, 2, 4)
print("X = Segre 2x4 in P^7, dim %d, degree %d" % (segre.dimension(), segre.degree()))

for ell in range(7):
    sample = sample_associated(segre, ell, seed=101 + ell)
    push = associated_tangent_pushforward(sample, segre, seed=11)
    con = trace_annihilator(push)
    rep = classify(con, "coisotropic", family_dim=push.dim)
    tag = rep.type_tag
    if con.dim >= 2:
        tag, _ = alpha_beta_type(con)
    print(
        "level %d: family dim %2d, conormal dim %d, type %-12s verdict %s"
        % (ell, push.dim, con.dim, tag, rep.verdict)
    )
