"""Rank-one structure classifier for tangent/conormal Hom spaces.

The verdict "coisotropic"/"isotropic" is only ever issued through one
of the implemented certificates: a rank-one hypersurface conormal, a
strong space (every combination rank <= 1), an explicit rank-one
spanning set, the low-dimension fallback, or (for contact-line
families, via the contact module) the Segre tangency certificate.
Anything else is reported as inconclusive, never as a refutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CertificateNotApplicable
from .fields import Fp
from .grassmann import HomSpace
from .groebner import groebner
from .hilbert import hilbert_dim_degree, local_multiplicity
from .linalg import Matrix
from .poly import Ideal, PolyRing


# ---------------------------------------------------------------------------
# small exact solvers


def univariate_roots(poly):
    """((root, multiplicity) list, fully_split flag) over the base field."""
    ring = poly.ring
    fld = ring.field
    if not poly:
        raise ValueError("zero polynomial has every root")
    roots = []
    work = poly
    # strip the root at 0 first
    v = min(e[0] for e in work.terms)
    if v:
        roots.append((fld.zero, v))
        work = ring.from_terms([((e[0] - v,), c) for e, c in work.terms.items()])
    candidates = _root_candidates(work)
    for r in candidates:
        mult = 0
        while True:
            q = _deflate(work, r)
            if q is None:
                break
            mult += 1
            work = q
        if mult:
            roots.append((r, mult))
    return roots, work.total_degree() <= 0


def _root_candidates(poly):
    ring = poly.ring
    fld = ring.field
    if poly.total_degree() <= 0:
        return []
    if fld.kind == "fp":
        p = fld.p
        coeffs = [0] * (poly.total_degree() + 1)
        for e, c in poly.terms.items():
            coeffs[e[0]] = c.v
        out = []
        for t in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * t + c) % p
            if acc == 0:
                out.append(Fp(t, p))
        return out
    # rationals: clear denominators, rational root theorem
    den = 1
    for c in poly.terms.values():
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = {e[0]: int(c * den) for e, c in poly.terms.items()}
    d = max(ints)
    lead = ints[d]
    const = ints.get(0, 0)
    if const == 0:
        return [Fraction(0)]
    out = []
    for p_ in _divisors(abs(const)):
        for q_ in _divisors(abs(lead)):
            for s in (1, -1):
                cand = Fraction(s * p_, q_)
                if not poly.evaluate([cand]):
                    if cand not in out:
                        out.append(cand)
    return sorted(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _deflate(poly, r):
    """poly / (u - r) by synthetic division if r is a root, else None."""
    ring = poly.ring
    if poly.evaluate([r]):
        return None
    d = poly.total_degree()
    coeffs = [ring.field.zero] * (d + 1)
    for e, c in poly.terms.items():
        coeffs[e[0]] = c
    out = []
    acc = ring.field.zero
    for k in range(d, -1, -1):
        acc = coeffs[k] + acc * r
        if k:
            out.append(((k - 1,), acc))
    return ring.from_terms(out)


def affine_points_zero_dim(ideal: Ideal):
    """Rational points of a zero-dimensional affine ideal in <= 2 vars.

    Returns (points, complete flag); complete is False when roots fall
    outside the base field.
    """
    ring = ideal.ring
    nv = ring.nvars
    if nv == 0:
        ok = all(not g.constant_coeff() for g in ideal.gens)
        return ([()] if ok else []), True
    from .poly import LEX

    gb = groebner(ideal, order=LEX)
    if not gb.gens:
        raise ValueError("zero ideal is not zero-dimensional")
    if nv == 1:
        roots, split = univariate_roots(gb.gens[0])
        return [(r,) for r, _ in roots], split
    if nv != 2:
        raise CertificateNotApplicable("point solver limited to 2 variables")
    # lex with u > v: the last basis element is univariate in v
    univ = [g for g in gb.gens if all(e[0] == 0 for e in g.terms)]
    if not univ:
        raise CertificateNotApplicable("unexpected lex basis shape")
    vring = PolyRing(ring.field, (ring.vars[1],), ring.order)
    gv = univ[0].map_to(vring)
    roots, split = univariate_roots(gv)
    pts = []
    complete = split
    uring = PolyRing(ring.field, (ring.vars[0],), ring.order)
    for r, _ in roots:
        # substitute v = r, solve for u
        subbed = []
        for g in gb.gens:
            img = g.substitute(ring, [ring.var(0), ring.const(r)])
            if img:
                subbed.append(img.map_to(uring))
        if not subbed:
            raise CertificateNotApplicable("fiber not finite")
        acc = None
        for g in subbed:
            acc = g if acc is None else _poly_gcd_univ(acc, g)
        uroots, usplit = univariate_roots(acc)
        complete = complete and usplit
        for u, _ in uroots:
            pts.append((u, r))
    return pts, complete


def _poly_gcd_univ(f, g):
    while g:
        f, g = g, _poly_mod_univ(f, g)
    return f.monic()


def _poly_mod_univ(f, g):
    ring = f.ring
    dg = g.degree_in(0)
    r = f
    while r and r.degree_in(0) >= dg:
        dr = r.degree_in(0)
        m = ring.monomial((dr - dg,), r.coeff((dr,)) / g.coeff((dg,)))
        r = r - m * g
    return r


# ---------------------------------------------------------------------------
# rank-one locus of a projectivized span


@dataclass
class RankOneLocus:
    points: list  # (lambda tuple, Hom matrix, multiplicity or None)
    positive_dimensional: bool = False
    complete: bool = True  # False when solutions exist outside the field
    ideal: Ideal = None


def _lambda_ring(field, k):
    return PolyRing(field, tuple("l%d" % i for i in range(k)))


def _minor_ideal(space: HomSpace):
    ring = _lambda_ring(space.adapted.field, space.dim)
    rows = space.generic_element_poly_matrix(ring)
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    gens = []
    for i1 in range(nr):
        for i2 in range(i1 + 1, nr):
            for j1 in range(nc):
                for j2 in range(j1 + 1, nc):
                    m = rows[i1][j1] * rows[i2][j2] - rows[i1][j2] * rows[i2][j1]
                    if m:
                        gens.append(m)
    return Ideal(ring, gens)


def _combo_matrix(space: HomSpace, lam):
    fld = space.adapted.field
    nr, nc = space.shape()
    rows = [[fld.zero] * nc for _ in range(nr)]
    for c, m in zip(lam, space.mats):
        if not c:
            continue
        for i in range(nr):
            for j in range(nc):
                rows[i][j] = rows[i][j] + c * m[i, j]
    return Matrix(fld, rows)


def rank_one_locus(space: HomSpace) -> RankOneLocus:
    """Projective rank-one elements of the span over the base field.

    Spans of dimension >= 4 with a zero-dimensional locus are out of
    the solver's scope and raise CertificateNotApplicable.
    """
    k = space.dim
    fld = space.adapted.field
    if k == 0:
        return RankOneLocus(points=[])
    ideal = _minor_ideal(space)
    if not ideal.gens:
        # the whole span is rank <= 1
        if k == 1:
            return RankOneLocus(points=[((fld.one,), space.mats[0], 1)], ideal=ideal)
        return RankOneLocus(points=[], positive_dimensional=True, ideal=ideal)
    if k == 1:
        # single projective point: rank-one iff all minors vanish (they don't here)
        return RankOneLocus(points=[], ideal=ideal)
    dim, deg = hilbert_dim_degree(ideal)
    if dim >= 1:
        return RankOneLocus(points=[], positive_dimensional=True, ideal=ideal)
    if dim == -1:
        return RankOneLocus(points=[], ideal=ideal)
    pts = []
    complete = True
    for chart in range(k):
        # canonical representatives: first nonzero coordinate = chart position
        sub_vars = [v for v in ideal.ring.vars[chart + 1 :]]
        small = PolyRing(fld, tuple(sub_vars), ideal.ring.order)
        images = []
        for i in range(k):
            if i < chart:
                images.append(small.zero())
            elif i == chart:
                images.append(small.one())
            else:
                images.append(small.var(ideal.ring.vars[i]))
        sub_gens = [g.substitute(small, images) for g in ideal.gens]
        sub_gens = [g for g in sub_gens if g]
        if any(g.is_constant() for g in sub_gens):
            continue
        if len(small.vars) > 2:
            raise CertificateNotApplicable("rank-one solver limited to spans of dimension <= 3")
        try:
            chart_pts, chart_complete = affine_points_zero_dim(Ideal(small, sub_gens))
        except ValueError:
            # zero ideal on this chart: positive dimensional after all
            return RankOneLocus(points=[], positive_dimensional=True, ideal=ideal)
        complete = complete and chart_complete
        for cp in chart_pts:
            lam = [fld.zero] * chart + [fld.one] + list(cp)
            pts.append(tuple(lam))
    out = []
    for lam in pts:
        mult = _point_multiplicity(ideal, lam)
        out.append((lam, _combo_matrix(space, lam), mult))
    return RankOneLocus(points=out, ideal=ideal, complete=complete)


def _point_multiplicity(ideal: Ideal, lam):
    """Local multiplicity of the minor scheme at a projective point."""
    k = len(lam)
    chart = next(i for i, c in enumerate(lam) if c)
    fld = ideal.ring.field
    inv = fld.one / lam[chart]
    rest_vars = [ideal.ring.vars[i] for i in range(k) if i != chart]
    if len(rest_vars) > 2:
        return None
    small = PolyRing(fld, tuple(rest_vars), ideal.ring.order)
    images = []
    j = 0
    for i in range(k):
        if i == chart:
            images.append(small.one())
        else:
            images.append(small.var(rest_vars[j]))
            j += 1
    gens = [g.substitute(small, images) for g in ideal.gens]
    gens = [g for g in gens if g]
    point = [lam[i] * inv for i in range(k) if i != chart]
    try:
        return local_multiplicity(Ideal(small, gens), point)
    except Exception:
        return None


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationReport:
    mode: str
    space_dim: int
    ell: int
    n: int
    flags: dict = field(default_factory=dict)
    type_tag: str = "none"
    verdict: str = "inconclusive"
    witnesses: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def check(self, name, ok, detail=""):
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail})
        return ok

    def passed(self):
        return all(c["ok"] for c in self.checks)

    def to_jsonable(self, field_desc=None):
        def fmt(x):
            if field_desc is not None:
                return field_desc.format(x)
            return str(x)

        return {
            "mode": self.mode,
            "space_dim": self.space_dim,
            "ambient": {"ell": self.ell, "n": self.n},
            "flags": {k: bool(v) for k, v in sorted(self.flags.items())},
            "type": self.type_tag,
            "verdict": self.verdict,
            "witnesses": [
                {
                    "lambda": [fmt(c) for c in w["lambda"]],
                    "rank": w["rank"],
                    "multiplicity": w["multiplicity"],
                }
                for w in self.witnesses
            ],
            "checks": self.checks,
        }


def is_strong(space: HomSpace) -> bool:
    """Every combination rank <= 1: all 2x2 minors of the generic
    element vanish identically."""
    if space.dim == 0:
        return True
    return not _minor_ideal(space).gens


def alpha_beta_type(space: HomSpace):
    """("alpha", hyperplane) | ("beta", line) for a strong span of dim >= 2.

    The returned subspace is in P^n terms: for alpha, the common
    kernel as a subspace (tangent: inside L; conormal: containing L);
    for beta, the common image (tangent: an (ell+1)-plane over L;
    conormal: a point of L).
    """
    if space.dim < 2:
        raise ValueError("type detection needs dimension >= 2")
    if not is_strong(space):
        raise ValueError("rank-2 element present")
    homs = space.homs()
    kernels = [h.kernel_subspace() for h in homs]
    if all(k.same_as(kernels[0]) for k in kernels[1:]):
        return "alpha", kernels[0]
    images = [h.image_subspace() for h in homs]
    if all(im.same_as(images[0]) for im in images[1:]):
        return "beta", images[0]
    raise AssertionError("strong span with neither common kernel nor common image")


def classify(space: HomSpace, mode: str, family_dim=None) -> ClassificationReport:
    """Certificate-based verdict for the family behind a Hom space.

    mode "coisotropic" expects a conormal space, "isotropic" a tangent
    space.  family_dim (the dimension of the family inside the
    Grassmannian) defaults to the value implied by the span dimension.
    """
    if mode not in ("coisotropic", "isotropic"):
        raise ValueError("mode must be 'coisotropic' or 'isotropic'")
    a = space.adapted
    ell, n = a.ell, a.n
    total = (ell + 1) * (n - ell)
    if family_dim is None:
        family_dim = total - space.dim if mode == "coisotropic" else space.dim
    rep = ClassificationReport(mode=mode, space_dim=space.dim, ell=ell, n=n)
    strong = is_strong(space)
    rep.flags["strong"] = strong
    if mode == "coisotropic":
        rep.flags["low_dim_fallback"] = family_dim <= n - 1
    else:
        rep.flags["low_dim_fallback"] = total - family_dim <= n - 1
    hyp = space.dim == 1 and space.homs()[0].rank() <= 1
    rep.flags["hypersurface_rank_one"] = hyp
    spanned = False
    if strong:
        spanned = True
        for h in space.homs():
            rep.witnesses.append(
                {"lambda": (), "rank": h.rank(), "multiplicity": None}
            )
    else:
        try:
            locus = rank_one_locus(space)
        except CertificateNotApplicable:
            locus = None
        if locus is not None:
            if locus.positive_dimensional:
                rep.check("rank-one locus positive dimensional", True, "flagged")
            flat = []
            for lam, matr, mult in locus.points:
                flat.append([x for r in matr.rows for x in r])
                rep.witnesses.append({"lambda": lam, "rank": matr.rank(), "multiplicity": mult})
            if flat and Matrix(a.field, flat).rank() == space.dim:
                spanned = True
            if not locus.complete:
                rep.check("rank-one locus rational", False, "irrational locus")
    rep.flags["rank_one_spanned"] = spanned
    # type tag
    if space.dim == 1 and hyp:
        rep.type_tag = "hypersurface"
    elif strong and space.dim >= 2:
        tag, witness_sub = alpha_beta_type(space)
        rep.type_tag = tag
        rep.check("alpha/beta witness dimension", witness_sub.ell >= -1)
    elif spanned and not strong:
        rep.type_tag = "mixed"
    else:
        rep.type_tag = "none"
    if strong or hyp or spanned or rep.flags["low_dim_fallback"]:
        rep.verdict = mode
    else:
        rep.verdict = "inconclusive"
    return rep


# ---------------------------------------------------------------------------
# Segre tangency certificate


@dataclass
class SegreCertificate:
    points: list  # (lambda, multiplicity)
    unique_point: bool
    multiplicity: int
    segre_degree: int
    bezout_total_ok: bool
    reduced_shape: tuple
    kernel_quotient_dim: int


def _common_kernel_rows(space: HomSpace):
    """Intersection of the kernels of all generators (domain coords)."""
    mats = space.mats
    if not mats:
        raise ValueError("empty span")
    stacked_cols = []
    for m in mats:
        stacked_cols.extend(m.transpose().rows)
    return Matrix(space.adapted.field, stacked_cols).nullspace()


def segre_tangency_certificate(space: HomSpace) -> SegreCertificate:
    """Unique-rank-one-point certificate with intersection multiplicity.

    The generators' common kernel is quotiented out first; the
    projectivized span must then have dimension equal to the reduced
    Segre codimension.  Multiplicity comes from the local quotient at
    the unique point (spans of dim <= 3), with the Bezout total
    cross-checked against the Segre degree.
    """
    k = space.dim
    if k == 0:
        raise CertificateNotApplicable("empty span")
    fld = space.adapted.field
    common = _common_kernel_rows(space)
    reduced = []
    for m in space.mats:
        # restrict to a complement of the common kernel
        compl = _complement_rows(common, m.nrows, fld)
        reduced.append(compl @ m)
    nr = reduced[0].nrows
    nc = reduced[0].ncols
    seg_codim = (nr - 1) * (nc - 1)
    if k - 1 != seg_codim:
        raise CertificateNotApplicable(
            "span dimension %d != reduced Segre codimension %d" % (k - 1, seg_codim)
        )
    from math import comb

    seg_degree = comb((nr - 1) + (nc - 1), nr - 1)
    red_space = HomSpace(space.direction, space.adapted, reduced, reduce=False)
    if seg_codim == 0:
        # everything is rank <= 1: single generator case
        if k != 1:
            raise CertificateNotApplicable("ambient Segre with a positive-dimensional span")
        mat = reduced[0]
        if mat.rank() > 1:
            raise CertificateNotApplicable("generator has rank >= 2 after reduction")
        return SegreCertificate(
            points=[((fld.one,), 1)],
            unique_point=True,
            multiplicity=1,
            segre_degree=seg_degree,
            bezout_total_ok=seg_degree == 1,
            reduced_shape=(nr, nc),
            kernel_quotient_dim=common.nrows,
        )
    ideal = _minor_ideal(red_space)
    dim, deg = hilbert_dim_degree(ideal)
    if dim != 0:
        raise CertificateNotApplicable("minor scheme not zero-dimensional (dim %d)" % dim)
    locus = rank_one_locus(red_space)
    pts = [(lam, mult) for lam, _, mult in locus.points]
    unique = len(pts) == 1 and locus.complete
    mult = pts[0][1] if pts else 0
    if mult is None:
        # Bezout fallback: proper dimension + unique support
        mult = deg if unique else None
    total_ok = deg == seg_degree and unique and mult == deg
    return SegreCertificate(
        points=pts,
        unique_point=unique,
        multiplicity=mult if mult is not None else -1,
        segre_degree=seg_degree,
        bezout_total_ok=bool(total_ok),
        reduced_shape=(nr, nc),
        kernel_quotient_dim=common.nrows,
    )


def _complement_rows(kernel_rows: Matrix, dim, fld):
    """Rows completing the kernel to the full domain (unit vectors)."""
    piv = set()
    if kernel_rows.nrows:
        piv = set(kernel_rows.rref()[0])
    rows = []
    z, o = fld.zero, fld.one
    for j in range(dim):
        if j not in piv:
            r = [z] * dim
            r[j] = o
            rows.append(r)
    return Matrix(fld, rows)
