"""Osculating spaces of rational curves and strongly isotropic families.

A parametrized curve carries, at each non-stationary parameter value,
the flag of osculating k-planes (row spaces of derivative matrices).
The tangent direction of the osculating family is a single rank-one
map whose kernel/image are the neighbouring osculating planes; the
shift maps recover those neighbours from any isotropic curve sample.
Families of dimension >= 2 with rank-one tangent spaces are pinned to
a unique alpha/beta variety, whose center the classifier returns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonGeneralConfiguration
from .grassmann import (
    TANGENT,
    Hom,
    HomSpace,
    Subspace,
    adapted_basis,
    empty_subspace,
    stiefel_differential,
)
from .isoclass import alpha_beta_type, is_strong
from .linalg import Matrix
from .poly import PolyRing


class ParamCurve:
    """A polynomial map t -> (c_0(t) : ... : c_n(t))."""

    def __init__(self, field, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("empty coordinate list")
        ring = coords[0].ring
        if ring.nvars != 1:
            raise ValueError("coordinates must be univariate")
        for c in coords:
            if c.ring != ring:
                raise ValueError("mixed coordinate rings")
        if all(not c for c in coords):
            raise ValueError("identically zero curve")
        self.field = field
        self.ring = ring
        self.coords = coords
        self.n = len(coords) - 1

    @classmethod
    def from_coeff_rows(cls, field, rows):
        """Curve with coords[j] = sum_k rows[k][j] t^k."""
        ring = PolyRing(field, ("t",))
        coords = []
        ncols = len(rows[0])
        for j in range(ncols):
            coords.append(ring.from_terms([((k,), rows[k][j]) for k in range(len(rows))]))
        return cls(field, coords)

    def coefficient_rows(self):
        d = max(c.total_degree() for c in self.coords)
        rows = []
        for k in range(d + 1):
            rows.append([c.coeff((k,)) for c in self.coords])
        return Matrix(self.field, rows)

    def span(self) -> Subspace:
        """Projective linear span of the curve."""
        return Subspace(self.field, self.n, self.coefficient_rows().row_space_basis(), check=False)

    def span_dim(self):
        return self.span().ell

    def point(self, t):
        tv = [self.field.of(t)]
        return tuple(c.evaluate(tv) for c in self.coords)

    def derivative_rows(self, t, k):
        """Rows c(t), c'(t), ..., c^{(k)}(t)."""
        tv = [self.field.of(t)]
        rows = []
        ds = list(self.coords)
        for r in range(k + 1):
            rows.append([c.evaluate(tv) for c in ds])
            ds = [c.diff(0) for c in ds]
        return Matrix(self.field, rows)

    def __repr__(self):
        return "ParamCurve(n=%d)" % self.n


@dataclass
class OscSample:
    t: object
    k: int
    subspace: Subspace
    prev: Subspace
    next: Subspace  # None when k = n-1 has no defined successor


def osculating_space(c: ParamCurve, t, k) -> OscSample:
    """Osculating k-plane at c(t); raises at stationary points."""
    if not (0 <= k <= c.n - 1):
        raise ValueError("need 0 <= k <= n-1")
    rows = c.derivative_rows(t, k + 1)
    top = rows.submatrix(range(k + 1), range(c.n + 1))
    if top.rank() != k + 1:
        raise NonGeneralConfiguration("stationary/hyperosculating point")
    sub = Subspace(c.field, c.n, top, check=False)
    prev = (
        Subspace(c.field, c.n, rows.submatrix(range(k), range(c.n + 1)), check=False)
        if k >= 1
        else empty_subspace(c.field, c.n)
    )
    nxt = None
    if rows.rank() == k + 2:
        nxt = Subspace(c.field, c.n, rows.row_space_basis(), check=False)
    return OscSample(t=t, k=k, subspace=sub, prev=prev, next=nxt)


def osc_tangent_hom(c: ParamCurve, t, k) -> Hom:
    """Rank-one tangent of the osculating family: kernel the previous
    plane, image the next one."""
    sample = osculating_space(c, t, k)
    if sample.next is None and k <= c.n - 2:
        raise NonGeneralConfiguration("stationary point at order k+1")
    a = adapted_basis(sample.subspace)
    tv = [c.field.of(t)]
    ds = list(c.coords)
    deriv_rows = []
    for _ in range(k + 1):
        ds = [p.diff(0) for p in ds]
        deriv_rows.append([p.evaluate(tv) for p in ds])
    m = Matrix(c.field, deriv_rows)
    return stiefel_differential(a, m)


def osc_family_space(c: ParamCurve, t, k) -> HomSpace:
    h = osc_tangent_hom(c, t, k)
    return HomSpace(TANGENT, h.adapted, [h.matrix])


def sigma_shift(samples, direction):
    """Shift isotropic-curve samples: '-' takes kernels, '+' images.

    samples: list of (Subspace, HomSpace) with one-dimensional
    rank-one tangent spaces.
    """
    if direction not in ("+", "-"):
        raise ValueError("direction must be '+' or '-'")
    out = []
    for sub, space in samples:
        if space.dim != 1:
            raise ValueError("shift needs one-dimensional tangent spaces")
        h = space.homs()[0]
        if h.rank() != 1:
            raise NonGeneralConfiguration("not isotropic at sample")
        out.append(h.kernel_subspace() if direction == "-" else h.image_subspace())
    return out


def dual_curve(c: ParamCurve) -> ParamCurve:
    """The moving hyperplane of top osculating spaces, as a curve in
    the dual space.

    Degenerate curves are rewritten inside their span first; the
    result then lives in the dual of the span and carries the span
    basis in .span_basis.
    """
    span = c.span()
    if span.ell < 1:
        raise ValueError("curve is a point")
    if span.ell < c.n:
        gamma = _rewrite_in_span(c, span)
        d = dual_curve(gamma)
        d.span_basis = span.basis
        return d
    ring = c.ring
    n = c.n
    ds = list(c.coords)
    rows = [list(c.coords)]
    for _ in range(n - 1):
        ds = [p.diff(0) for p in ds]
        rows.append(list(ds))
    # cofactor vector: signed maximal minors of the n x (n+1) matrix
    coords = []
    for j in range(n + 1):
        cols = [jj for jj in range(n + 1) if jj != j]
        minor = _poly_det([[rows[i][jj] for jj in cols] for i in range(n)])
        coords.append(minor if j % 2 == 0 else -minor)
    # clear content: divide by gcd of supports? keep as-is (projective)
    out = ParamCurve(c.field, coords)
    out.span_basis = None
    return out


def _rewrite_in_span(c: ParamCurve, span: Subspace) -> ParamCurve:
    b = span.basis
    coeffs = c.coefficient_rows()
    bt = b.transpose()
    gamma_rows = []
    for row in coeffs.rows:
        x = bt.solve(row)
        if x is None:
            raise ValueError("span computation inconsistent")
        gamma_rows.append(list(x))
    return ParamCurve.from_coeff_rows(c.field, gamma_rows)


def _poly_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    acc = ring.zero()
    for i in range(n):
        minor = _poly_det([r[1:] for r in rows[:i] + rows[i + 1 :]])
        term = rows[i][0] * minor
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def projective_equal_points(x, y):
    """Projective equality of coordinate tuples."""
    pivot = None
    for i, (a, b) in enumerate(zip(x, y)):
        if a or b:
            if not (a and b):
                return False
            if pivot is None:
                pivot = (a, b)
                continue
            if a * pivot[1] != b * pivot[0]:
                return False
    return pivot is not None


def classify_strongly_isotropic_family(samples):
    """("alpha", P) | ("beta", P2) | ("curve", None) | ("inconclusive", None).

    samples: list of (Subspace, tangent HomSpace).  Every sample must
    be strongly isotropic (all ranks <= 1); mixed alpha/beta structure
    across samples of a >= 2-dimensional family contradicts the
    classification and raises.
    """
    if not samples:
        raise ValueError("no samples")
    for _, space in samples:
        if not is_strong(space):
            raise ValueError("sample tangent space has a rank-2 element")
    dims = {space.dim for _, space in samples}
    if dims == {1}:
        return "curve", None
    if len(dims) != 1:
        return "inconclusive", None
    results = []
    for _, space in samples:
        results.append(alpha_beta_type(space))
    tags = {tag for tag, _ in results}
    if len(tags) != 1:
        raise AssertionError("mixed alpha/beta structure across samples")
    tag = tags.pop()
    witness = results[0][1]
    for _, w in results[1:]:
        if not w.same_as(witness):
            raise AssertionError("witness subspace varies across samples")
    return tag, witness


def project_away(subspace: Subspace, center_adapted) -> Subspace:
    """Image of a subspace containing the center under the projection
    away from the center (coordinates: the adapted quotient)."""
    a = center_adapted
    rows = [a.quotient_coords(r) for r in subspace.basis.rows]
    m = Matrix(a.field, rows).row_space_basis()
    return Subspace(a.field, a.n - a.ell - 1, m, check=False)
