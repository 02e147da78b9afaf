"""Projective varieties as homogeneous ideals.

Smooth-point tests via Jacobian rank, embedded tangent spaces, exact
point sampling (parametrizations over any field, line scanning over
prime fields for hypersurfaces), tangent-hyperplane witnesses, and
dual varieties of complete intersections by Lagrange elimination.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SamplingError
from .grassmann import Subspace, hyperplane_subspace, point_subspace
from .groebner import eliminate, normal_form
from .hilbert import hilbert_dim_degree
from .linalg import Matrix
from .poly import DEGREVLEX, Ideal, PolyRing, standard_ring
from .rng import Stream

SAMPLE_RETRIES = 200


class ProjVariety:
    """Z(gens) in P^n, optionally with a polynomial parametrization."""

    def __init__(self, ring, gens, parametrization=None, check=True):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator outside the ambient ring")
            if check and not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")
        self.ring = ring
        self.gens = gens
        self.ideal = Ideal(ring, gens)
        self.parametrization = parametrization
        if parametrization is not None:
            pring, coords = parametrization
            if len(coords) != ring.nvars:
                raise ValueError("parametrization needs %d coordinates" % ring.nvars)
            if check:
                for g in gens:
                    if g.substitute(pring, list(coords)):
                        raise ValueError("parametrization does not satisfy the ideal")
        self._dim_deg = None
        self._dual = None

    @property
    def n(self):
        return self.ring.nvars - 1

    @property
    def field(self):
        return self.ring.field

    def dim_degree(self):
        if self._dim_deg is None:
            if len(self.gens) == 1:
                # hypersurface shortcut
                self._dim_deg = (self.n - 1, self.gens[0].total_degree())
            else:
                self._dim_deg = hilbert_dim_degree(self.ideal)
        return self._dim_deg

    def dimension(self):
        return self.dim_degree()[0]

    def degree(self):
        return self.dim_degree()[1]

    def codim(self):
        return self.n - self.dimension()

    def contains_point(self, x) -> bool:
        pt = [self.field.of(v) for v in x]
        return all(not g.evaluate(pt) for g in self.gens)

    def jacobian_at(self, x):
        pt = [self.field.of(v) for v in x]
        rows = [[g.diff(i).evaluate(pt) for i in range(self.ring.nvars)] for g in self.gens]
        return Matrix(self.field, rows)

    def is_smooth_point(self, x):
        """(smooth?, tangent dimension); raises if x is off the variety."""
        if not self.contains_point(x):
            raise ValueError("point is not on the variety")
        rank = self.jacobian_at(x).rank()
        tangent_dim = self.n - rank
        return rank == self.codim(), tangent_dim

    def embedded_tangent_space(self, x) -> Subspace:
        smooth, _ = self.is_smooth_point(x)
        if not smooth:
            raise ValueError("singular point")
        ker = self.jacobian_at(x).nullspace()
        return Subspace(self.field, self.n, ker, check=False)

    def parametrize(self, theta):
        pring, coords = self.parametrization
        pt = [pring.field.of(v) for v in theta]
        return tuple(c.evaluate(pt) for c in coords)

    def __repr__(self):
        return "ProjVariety(n=%d, %d gens)" % (self.n, len(self.gens))


@dataclass
class ConormalWitness:
    """A smooth point x together with a tangent hyperplane H."""

    x: Subspace
    h: Subspace
    point: tuple
    normal: tuple


def sample_smooth_point(v: ProjVariety, seed, height=12):
    """A verified smooth point, deterministic in the seed.

    Parametrized varieties draw parameter values; otherwise, over a
    prime field, hypersurfaces are sliced with random lines and the
    restricted univariate is scanned for roots.
    """
    stream = Stream(seed, "smooth-point")
    if v.parametrization is not None:
        pring, _ = v.parametrization
        for k in range(SAMPLE_RETRIES):
            s = stream.spawn("try%d" % k)
            theta = [pring.field.of(x) for x in s.vector(pring.field, pring.nvars, height)]
            x = v.parametrize(theta)
            if all(not c for c in x):
                continue
            smooth, _ = v.is_smooth_point(x)
            if smooth:
                return x
        raise SamplingError("no smooth point found within budget")
    if v.field.kind != "fp":
        raise SamplingError("sampling needs a parametrization or a prime field")
    if len(v.gens) != 1:
        raise SamplingError("line scanning supports hypersurfaces only")
    f = v.gens[0]
    p = v.field.p
    # scan f(a + t b) over t in F_p with raw int arithmetic
    for k in range(SAMPLE_RETRIES):
        s = stream.spawn("line%d" % k)
        a = [s.randrange(p) for _ in range(v.n + 1)]
        b = [s.randrange(p) for _ in range(v.n + 1)]
        coeffs = _restrict_int_coeffs(f, a, b, p)
        for t in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * t + c) % p
            if acc == 0:
                x = tuple(v.field.of((ai + t * bi) % p) for ai, bi in zip(a, b))
                if any(x) and v.is_smooth_point(x)[0]:
                    return x
    raise SamplingError("no smooth point found within budget")


def _restrict_int_coeffs(f, a, b, p):
    """Coefficients (ints) of t |-> f(a + t*b) over F_p."""
    d = f.total_degree()
    coeffs = [0] * (d + 1)
    for e, c in f.terms.items():
        cv = c.v
        # expand prod_i (a_i + t b_i)^{e_i} as a dense poly in t
        poly = [cv]
        for ai, bi, k in zip(a, b, e):
            for _ in range(k):
                nxt = [0] * (len(poly) + 1)
                for j, q in enumerate(poly):
                    nxt[j] = (nxt[j] + q * ai) % p
                    nxt[j + 1] = (nxt[j + 1] + q * bi) % p
                poly = nxt
        for j, q in enumerate(poly):
            coeffs[j] = (coeffs[j] + q) % p
    return coeffs


def tangent_hyperplanes_basis(v: ProjVariety, x):
    """Rows spanning the normals of hyperplanes containing T_{X,x}."""
    t = v.embedded_tangent_space(x)
    return t.basis.nullspace()


def conormal_witness_sample(v: ProjVariety, seed, height=12) -> ConormalWitness:
    """(x, H) with the tangent space at x inside H, seeded choice of H."""
    stream = Stream(seed, "witness")
    x = sample_smooth_point(v, stream.spawn("pt").seed, height=height)
    normals = tangent_hyperplanes_basis(v, x)
    s = stream.spawn("hyp")
    for _ in range(SAMPLE_RETRIES):
        coeffs = s.vector(v.field, normals.nrows, height)
        h = normals.apply_row(coeffs)
        if any(h):
            return ConormalWitness(
                x=point_subspace(v.field, x),
                h=hyperplane_subspace(v.field, h),
                point=tuple(x),
                normal=tuple(h),
            )
    raise SamplingError("no tangent hyperplane found (degenerate tangent?)")


def dual_variety(v: ProjVariety, budget=None) -> ProjVariety:
    """Projectively dual variety of a smooth complete intersection.

    Encodes y ~ sum_j lambda_j grad f_j(x) on X with a Rabinowitsch
    factor keeping the multipliers nontrivial, then eliminates the
    point, multiplier and scaling variables.  The result is cached.
    """
    if v._dual is not None:
        return v._dual
    c = v.codim()
    if len(v.gens) != c:
        raise ValueError("dual variety implemented for complete intersections only")
    n = v.n
    field = v.field
    xs = ["x%d" % i for i in range(n + 1)]
    ls = ["l%d" % j for j in range(c)]
    ys = ["y%d" % i for i in range(n + 1)]
    big = PolyRing(field, tuple(xs + ls + ["s"] + ys), DEGREVLEX)
    xv = [big.var(nm) for nm in xs]
    lv = [big.var(nm) for nm in ls]
    sv = big.var("s")
    yv = [big.var(nm) for nm in ys]
    gens = [g.substitute(big, xv) for g in v.gens]
    for i in range(n + 1):
        expr = big.zero()
        for j, g in enumerate(v.gens):
            expr = expr + lv[j] * g.diff(i).substitute(big, xv)
        gens.append(sv * yv[i] - expr)
    mu = big.zero()
    for j in range(c):
        mu = mu + big.const(j + 1) * lv[j]
    gens.append(big.one() - sv * mu)
    kwargs = {} if budget is None else {"budget": budget}
    elim = eliminate(Ideal(big, gens), ys, **kwargs)
    dual_ring = standard_ring(field, n + 1)
    out = []
    for g in elim.gens:
        moved = g.substitute(dual_ring, list(dual_ring.gens()))
        for part in moved.homogeneous_parts().values():
            if part and not part.is_constant():
                out.append(part.monic())
    seen = set()
    uniq = []
    for g in sorted(out, key=lambda q: (q.total_degree(), dual_ring.order.key(q.lead()[0]))):
        key = frozenset(g.terms.items())
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    dual = ProjVariety(dual_ring, uniq)
    v._dual = dual
    return dual


def on_variety(v: ProjVariety, x) -> bool:
    return v.contains_point(x)


def ideal_vanishes_at(ideal: Ideal, x) -> bool:
    pt = [ideal.ring.field.of(c) for c in x]
    return all(not g.evaluate(pt) for g in ideal.gens)


def reduce_mod(p, ideal: Ideal):
    return normal_form(p, ideal)
