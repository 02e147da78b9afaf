"""Contact-line families of a hypersurface: lines with m-fold tangency.

For a line L meeting Z(f) at a smooth point p with multiplicity m, the
affine chart centered at p (with the line direction as first chart
vector) splits f into graded pieces f_1 + f_2 + ...; the cones cut out
by (f_1, ..., f_{k-1}) carry the tangent flag along L.  The family's
tangent space at L is computed from the kernel of the Jacobian of the
coefficient system of f(a + t*b), pushed along the row-space chart,
and its trace annihilator gives the conormal space whose rank-one
structure the verification checks point by point.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import NonGeneralConfiguration, SamplingError
from .grassmann import (
    Subspace,
    adapted_basis,
    stiefel_differential,
    subspace_from_rows,
    trace_annihilator,
    HomSpace,
    TANGENT,
)
from .hilbert import hilbert_dim_degree
from .isoclass import (
    ClassificationReport,
    affine_points_zero_dim,
    classify,
    rank_one_locus,
    segre_tangency_certificate,
)
from .linalg import Matrix
from .poly import Ideal, PolyRing
from .projvar import ProjVariety, sample_smooth_point
from .rng import Stream

CONTACT_RETRIES = 120


@dataclass
class ContactConfig:
    variety: ProjVariety
    m: int
    point: tuple  # p, the contact point
    direction_point: tuple  # q, a second point of the line
    line: Subspace
    frame: Matrix  # rows: p, q, then unit completion
    chart_parts: dict  # degree -> graded piece of f in chart coordinates
    flag: list  # [T_L C_k for k = 2..m], nested subspaces of P^n
    tangent_at_p: Subspace


def _chart_frame(field, p, q):
    """Invertible frame with rows p, q and deterministic unit completion."""
    line = subspace_from_rows(field, len(p) - 1, [p, q])
    a = adapted_basis(line)
    return line, a.full


def _chart_parts(v: ProjVariety, frame: Matrix):
    """Graded pieces of f in the affine chart x = p + sum y_i * frame_i."""
    n = v.n
    field = v.field
    yring = PolyRing(field, tuple("y%d" % i for i in range(1, n + 1)))
    images = []
    for j in range(n + 1):
        acc = yring.const(frame[0, j])
        for i in range(1, n + 1):
            acc = acc + yring.var(i - 1) * yring.const(frame[i, j])
        images.append(acc)
    f = v.gens[0]
    chart = f.substitute(yring, images)
    return yring, chart.homogeneous_parts()


def line_contact_order(v: ProjVariety, p, q):
    """Intersection multiplicity of span(p, q) with Z(f) at p.

    Infinite contact (line inside the hypersurface) returns None.
    """
    field = v.field
    tring = PolyRing(field, ("t",))
    t = tring.var(0)
    images = [tring.const(pi) + t * tring.const(qi) for pi, qi in zip(p, q)]
    g = v.gens[0].substitute(tring, images)
    if not g:
        return None
    return min(e[0] for e in g.terms)


def taylor_cone_flag(v: ProjVariety, p, q, m) -> ContactConfig:
    """Chart expansion and the tangent flag of the contact cones.

    Verifies: contact order of the line at p is exactly m; each flag
    member is a hyperplane in the previous one.
    """
    if len(v.gens) != 1:
        raise ValueError("contact machinery works on hypersurfaces")
    d = v.gens[0].total_degree()
    if not (2 <= m <= min(v.n, d)):
        raise ValueError("need 2 <= m <= min(n, deg f)")
    field = v.field
    p = tuple(field.of(c) for c in p)
    q = tuple(field.of(c) for c in q)
    smooth, _ = v.is_smooth_point(p)
    if not smooth:
        raise NonGeneralConfiguration("contact point must be smooth")
    order = line_contact_order(v, p, q)
    if order != m:
        raise NonGeneralConfiguration("line has contact order %r, wanted %d" % (order, m))
    line, frame = _chart_frame(field, p, q)
    yring, parts = _chart_parts(v, frame)
    n = v.n
    e1 = [field.one] + [field.zero] * (n - 1)
    # gradient rows: grad f_1, grad f_2(e_1), ..., grad f_{m-1}(e_1)
    grad_rows = []
    for k in range(1, m):
        fk = parts.get(k, yring.zero())
        grad_rows.append([fk.diff(i).evaluate(e1) for i in range(n)])
    flag = []
    for k in range(2, m + 1):
        rows = Matrix(field, grad_rows[: k - 1])
        if rows.rank() != k - 1:
            raise NonGeneralConfiguration("non-general configuration, reseed (flag rank)")
        ker = rows.nullspace()
        sub_rows = [list(p)]
        for yvec in ker.rows:
            vec = [field.zero] * (n + 1)
            for i, c in enumerate(yvec):
                for j in range(n + 1):
                    vec[j] = vec[j] + c * frame[i + 1, j]
            sub_rows.append(vec)
        flag.append(Subspace(field, n, Matrix(field, sub_rows).row_space_basis(), check=False))
    for a, b in zip(flag, flag[1:]):
        if not (a.contains(b) and a.ell == b.ell + 1):
            raise NonGeneralConfiguration("non-general configuration, reseed (flag step)")
    for sub in flag:
        if not sub.contains(line):
            raise NonGeneralConfiguration("flag member lost the line")
    tangent = v.embedded_tangent_space(p)
    if not flag[0].same_as(tangent):
        raise NonGeneralConfiguration("chart tangent disagrees with Jacobian tangent")
    return ContactConfig(
        variety=v,
        m=m,
        point=p,
        direction_point=q,
        line=line,
        frame=frame,
        chart_parts=parts,
        flag=flag,
        tangent_at_p=tangent,
    )


def sample_contact_line(v: ProjVariety, m, seed, height=10) -> ContactConfig:
    """Seeded point + direction with contact order exactly m.

    Directions solve f_1 = ... = f_{m-1} = 0 inside seeded linear
    slices; no base-field solution triggers a retry with a new point.
    """
    if len(v.gens) != 1:
        raise ValueError("contact sampling works on hypersurfaces")
    d = v.gens[0].total_degree()
    if not (2 <= m <= min(v.n, d)):
        raise ValueError("need 2 <= m <= min(n, deg f)")
    field = v.field
    n = v.n
    stream = Stream(seed, "contact", m)
    for k in range(CONTACT_RETRIES):
        s = stream.spawn(k)
        try:
            p = sample_smooth_point(v, s.spawn("pt").seed, height=height)
        except SamplingError:
            continue
        # chart at p with unit completion
        psub = subspace_from_rows(field, n, [p])
        frame = adapted_basis(psub).full
        yring, parts = _chart_parts(v, frame)
        # linear constraints: grad f_1 plus n-m seeded slices
        g1 = parts.get(1)
        rows = [[g1.diff(i).constant_coeff() for i in range(n)]]
        slicer = s.spawn("slice")
        for _ in range(n - m):
            rows.append([field.of(c) for c in slicer.vector(field, n, height)])
        lin = Matrix(field, rows)
        if lin.rank() != len(rows):
            continue
        span = lin.nullspace()  # (m-1) rows spanning candidate directions
        if span.nrows != m - 1:
            continue
        y = _solve_direction(parts, span, m, field, s.spawn("solve"))
        if y is None:
            continue
        fm = parts.get(m, yring.zero())
        if not fm.evaluate(list(y)):
            continue
        q = [field.zero] * (n + 1)
        for i, c in enumerate(y):
            for j in range(n + 1):
                q[j] = q[j] + c * frame[i + 1, j]
        if not any(q):
            continue
        try:
            return taylor_cone_flag(v, p, tuple(q), m)
        except NonGeneralConfiguration:
            continue
    raise SamplingError("no rational contact line found within budget")


def _solve_direction(parts, span, m, field, stream):
    """A direction y in the sliced span with f_1(y) = ... = f_{m-1}(y) = 0."""
    k = span.nrows  # = m - 1
    if k == 1:
        return tuple(span.rows[0])
    aring = PolyRing(field, tuple("a%d" % i for i in range(k)))
    images = []
    for j in range(span.ncols):
        acc = aring.zero()
        for i in range(k):
            acc = acc + aring.var(i) * aring.const(span.rows[i][j])
        images.append(acc)
    gens = []
    for deg in range(2, m):
        g = parts.get(deg)
        if g is None:
            continue
        gg = g.substitute(aring, images)
        if gg:
            gens.append(gg)
    # projective solutions in P^{k-1}: try charts with the last coord 1 first
    for chart in range(k - 1, -1, -1):
        rest = [aring.vars[i] for i in range(k) if i != chart]
        small = PolyRing(field, tuple(rest), aring.order)
        sub_imgs = []
        pos = 0
        for i in range(k):
            if i == chart:
                sub_imgs.append(small.one())
            else:
                sub_imgs.append(small.var(rest[pos]))
                pos += 1
        sub = [g.substitute(small, sub_imgs) for g in gens]
        sub = [g for g in sub if g]
        if any(g.is_constant() for g in sub):
            continue
        try:
            pts, _ = affine_points_zero_dim(Ideal(small, sub))
        except Exception:
            continue
        for cp in pts:
            lam = []
            pos = 0
            for i in range(k):
                if i == chart:
                    lam.append(field.one)
                else:
                    lam.append(cp[pos])
                    pos += 1
            y = [sum((c * span.rows[i][j] for i, c in enumerate(lam)), field.zero) for j in range(span.ncols)]
            if any(y):
                return tuple(y)
    return None


def contact_tangent_space(cfg: ContactConfig) -> HomSpace:
    """Tangent space of the contact family at the sampled line.

    Kernel of the Jacobian of {t^j-coefficients of f(a + t b)}_{j<m}
    at (p, q), pushed along the row-space chart; its dimension must be
    2(n-1) - (m-1).
    """
    v = cfg.variety
    field = v.field
    n = v.n
    m = cfg.m
    p, q = cfg.point, cfg.direction_point
    tring = PolyRing(field, ("t",))
    t = tring.var(0)
    line_imgs = [tring.const(pi) + t * tring.const(qi) for pi, qi in zip(p, q)]
    partials = [v.gens[0].diff(kk).substitute(tring, line_imgs) for kk in range(n + 1)]

    def coeff(poly, j):
        return poly.coeff((j,)) if j >= 0 else field.zero

    rows = []
    for j in range(m):
        row = [coeff(partials[kk], j) for kk in range(n + 1)]
        row += [coeff(partials[kk], j - 1) for kk in range(n + 1)]
        rows.append(row)
    jac = Matrix(field, rows)
    if jac.rank() != m:
        raise NonGeneralConfiguration("non-general configuration, reseed (Jacobian rank)")
    ker = jac.nullspace()
    a = adapted_basis(cfg.line)
    mats = []
    for vrow in ker.rows:
        mrows = [vrow[: n + 1], vrow[n + 1 :]]
        mats.append(stiefel_differential(a, Matrix(field, mrows)).matrix)
    space = HomSpace(TANGENT, a, mats)
    expected = 2 * (n - 1) - (m - 1)
    if space.dim != expected:
        raise NonGeneralConfiguration(
            "tangent dimension %d, expected %d" % (space.dim, expected)
        )
    return space


def structural_kernel_homs(cfg: ContactConfig) -> HomSpace:
    """Tangent directions fixing p with image inside T_L C_m / L."""
    from .grassmann import tangent_from_action

    a = adapted_basis(cfg.line)
    field = cfg.variety.field
    top = cfg.flag[-1]  # T_L C_m
    qrows = Matrix(field, [a.quotient_coords(r) for r in top.basis.rows]).row_space_basis()
    domain = Matrix(field, [cfg.point, cfg.direction_point])
    zero_row = [field.zero] * (a.n + 1)
    mats = []
    for w in qrows.rows:
        images = Matrix(field, [zero_row, list(a.lift_quotient(w))])
        mats.append(tangent_from_action(a, domain, images).matrix)
    return HomSpace(TANGENT, a, mats)


def cone_ideal(cfg: ContactConfig) -> Ideal:
    """(f_1, ..., f_{m-1}) in the chart coordinates."""
    some = next(iter(cfg.chart_parts.values()))
    yring = some.ring
    gens = [cfg.chart_parts[k] for k in range(1, cfg.m) if k in cfg.chart_parts]
    return Ideal(yring, gens)


def cone_dim_degree(cfg: ContactConfig):
    """(codimension in P^n, degree) of the cone: (m-1, (m-1)!) when general.

    The graded pieces live in the n direction variables; the
    projectivized direction variety sits in P^{n-1} and the cone over
    it (with vertex p) has the same codimension inside P^n.
    """
    ideal = cone_ideal(cfg)
    dim, deg = hilbert_dim_degree(ideal)
    n = cfg.variety.n
    return (n - 1) - dim, deg


def verify_contact_theorem(cfg: ContactConfig) -> ClassificationReport:
    """Point-by-point verification of the contact-line structure.

    Checks recorded in the report: conormal dimension m-1; a unique
    rank-one conormal direction with image the contact point and
    kernel the tangent hyperplane; Segre intersection multiplicity
    m-1; structural kernel directions inside the tangent space.
    """
    v = cfg.variety
    m = cfg.m
    tangent = contact_tangent_space(cfg)
    conormal = trace_annihilator(tangent)
    rep = classify(conormal, "coisotropic", family_dim=(tangent.dim))
    rep.check("conormal dimension = m-1", conormal.dim == m - 1, "dim %d" % conormal.dim)
    locus = rank_one_locus(conormal)
    rep.check("unique rank-one conormal", len(locus.points) == 1 and locus.complete)
    if len(locus.points) == 1:
        lam, matr, _ = locus.points[0]
        from .grassmann import CONORMAL, Hom

        h = Hom(CONORMAL, matr, conormal.adapted)
        rep.check("rank-one image is the contact point", h.image_subspace().same_as(
            subspace_from_rows(v.field, v.n, [cfg.point])
        ))
        rep.check("rank-one kernel is the tangent hyperplane", h.kernel_subspace().same_as(
            cfg.tangent_at_p
        ))
    try:
        cert = segre_tangency_certificate(conormal)
        rep.check("Segre multiplicity = m-1", cert.multiplicity == m - 1,
                  "mult %r" % (cert.multiplicity,))
        rep.check("Segre Bezout total", cert.bezout_total_ok)
        rep.flags["segre_tangency"] = cert.multiplicity == m - 1 and cert.unique_point
        if rep.flags["segre_tangency"]:
            rep.verdict = "coisotropic"
    except Exception as exc:  # recorded, not thrown
        rep.check("Segre certificate", False, str(exc))
    struct = structural_kernel_homs(cfg)
    ok = all(tangent.contains(h) for h in struct.homs())
    rep.check("kernel-direction homs inside the tangent space", ok)
    return rep
