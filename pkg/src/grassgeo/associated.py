"""Higher associated varieties: planes meeting a variety non-transversely.

A sample of the level-ell family is an ell-plane L through a smooth
point x of X inside a tangent hyperplane H.  Conormal spaces come in
closed form (all maps kill (T+L)/L and send the quotient into the
span of x); tangent spaces are produced independently by
differentiating the (x, H, L) incidence construction with first-order
jets and pushing along the row-space chart.  Chow/Hurwitz forms are
computed by eliminating the point variables from Pluecker-linear
incidence equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NonGeneralConfiguration, SamplingError
from .grassmann import (
    CONORMAL,
    TANGENT,
    AdaptedBasis,
    HomSpace,
    Subspace,
    adapted_basis,
    hyperplane_subspace,
    perp_dual,
    perp_dual_space,
    pluecker_relations,
    pluecker_ring,
    pluecker_var_name,
    point_subspace,
    stiefel_differential,
    _sorted_index_sign,
)
from .groebner import eliminate, groebner, normal_form
from .hilbert import hilbert_dim_degree
from .jets import JetRing
from .linalg import Matrix
from .poly import DEGREVLEX, Ideal, PolyRing
from .projvar import ConormalWitness, ProjVariety
from .rng import Stream

SAMPLE_RETRIES = 60


@dataclass
class WitnessConfig:
    """Seeded free data behind one (x, H, L) configuration."""

    theta: tuple
    h_coeffs: tuple
    l_coeffs: tuple  # ell rows of coefficients over the hyperplane basis


@dataclass
class AssociatedSample:
    ell: int
    subspace: Subspace
    witness: ConormalWitness
    config: WitnessConfig
    tangent_at_x: Subspace


def _build_configuration(v: ProjVariety, ell, ring, cfg: WitnessConfig):
    """Evaluate the configuration over a field or jet ring.

    Returns (x, tangent rows, h, hyperplane basis rows, L rows).
    Raises NonGeneralConfiguration when ranks degenerate.
    """
    pring, coords = v.parametrization
    theta = [ring.of(c) for c in cfg.theta]
    x = tuple(c.evaluate(theta) for c in coords)
    if not any(x):
        raise NonGeneralConfiguration("parametrization hit the base locus")
    nv = v.ring.nvars
    jac = Matrix(ring, [[g.diff(i).evaluate(x) for i in range(nv)] for g in v.gens])
    tangent = jac.nullspace()
    if tangent.nrows != v.dimension() + 1:
        raise NonGeneralConfiguration("tangent rank drop at sample")
    normals = tangent.nullspace()
    h = normals.apply_row([ring.of(c) for c in cfg.h_coeffs])
    if not any(h):
        raise NonGeneralConfiguration("degenerate tangent hyperplane choice")
    hbasis = Matrix(ring, [h]).nullspace()
    l_rows = [list(x)]
    for row in cfg.l_coeffs:
        l_rows.append(list(hbasis.apply_row([ring.of(c) for c in row])))
    lmat = Matrix(ring, l_rows)
    return x, tangent, h, hbasis, lmat


def sample_associated(v: ProjVariety, ell, seed, height=10) -> AssociatedSample:
    """Seeded L = span(x, ell directions inside H); invariants verified."""
    n = v.n
    if not (0 <= ell <= n - 1):
        raise ValueError("need 0 <= ell <= n-1")
    if v.parametrization is None:
        raise SamplingError("associated sampling needs a parametrized variety")
    pring, _ = v.parametrization
    field = v.field
    stream = Stream(seed, "associated", ell)
    for k in range(SAMPLE_RETRIES):
        s = stream.spawn(k)
        theta = tuple(field.of(c) for c in s.vector(field, pring.nvars, height))
        h_coeffs = tuple(field.of(c) for c in s.vector(field, n - v.dimension(), height))
        l_coeffs = tuple(
            tuple(field.of(c) for c in s.vector(field, n, height)) for _ in range(ell)
        )
        cfg = WitnessConfig(theta, h_coeffs, l_coeffs)
        try:
            x, tangent, h, hbasis, lmat = _build_configuration(v, ell, field, cfg)
        except NonGeneralConfiguration:
            continue
        if lmat.rank() != ell + 1:
            continue
        if not v.is_smooth_point(x)[0]:
            continue
        sub = Subspace(field, n, lmat, check=False)
        hsub = hyperplane_subspace(field, h)
        witness = ConormalWitness(
            x=point_subspace(field, x),
            h=hsub,
            point=tuple(x),
            normal=tuple(h),
        )
        tsub = Subspace(field, n, tangent, check=False)
        assert hsub.contains(tsub) and hsub.contains(sub) and sub.contains_point(x)
        return AssociatedSample(ell, sub, witness, cfg, tsub)
    raise SamplingError("no general associated sample found")


def _rank_one_conormals(adapted: AdaptedBasis, kernel_quotient_rows, image_point):
    """Conormal maps c (x) x_A with the given quotient rows in the kernel."""
    a = adapted
    x_a = a.subspace_coords(image_point)
    kq = Matrix(a.field, kernel_quotient_rows)
    cs = kq.nullspace() if kq.nrows else Matrix.identity(a.field, a.n - a.ell)
    mats = []
    for c in cs.rows:
        mats.append(Matrix(a.field, [[ci * xj for xj in x_a] for ci in c]))
    return HomSpace(CONORMAL, a, mats)


def associated_conormal(sample: AssociatedSample, v: ProjVariety, dual: ProjVariety = None) -> HomSpace:
    """Conormal space of the level-ell family at the sampled plane.

    Low range (ell <= codim-1): every map kills (T+L)/L and maps into
    the span of x; dimension n - ell - dim X, all ranks <= 1.  The
    hypersurface range uses the sample's witness (assumed unique at a
    general sample).  Above the dual dimension the computation runs on
    the dual variety and transports back; when no dual is supplied and
    none is computable, the witness formula is used, which is only
    valid through the hypersurface range (levels up to the dual
    dimension) - pass `dual` explicitly beyond it.
    """
    ell = sample.ell
    c = v.codim()
    a = adapted_basis(sample.subspace)
    if ell <= c - 1:
        rows = [a.quotient_coords(r) for r in sample.tangent_at_x.basis.rows]
        return _rank_one_conormals(a, rows, sample.witness.point)
    dual_dim = None
    if dual is not None:
        dual_dim = dual.dimension()
    else:
        try:
            from .projvar import dual_variety

            dual = dual_variety(v)
            dual_dim = dual.dimension()
        except ValueError:
            dual = None
    if dual_dim is None or ell <= dual_dim:
        # hypersurface range: single witness (x, H)
        rows = [a.quotient_coords(r) for r in sample.witness.h.basis.rows]
        return _rank_one_conormals(a, rows, sample.witness.point)
    # alpha range: run the beta formula on the dual side and pull back
    n = v.n
    field = v.field
    lperp = perp_dual(sample.subspace)
    xprime = sample.witness.normal  # H as a point of the dual space
    if not dual.contains_point(xprime):
        raise NonGeneralConfiguration("dual witness point off the dual variety")
    smooth, _ = dual.is_smooth_point(xprime)
    if not smooth:
        raise NonGeneralConfiguration("dual witness point singular")
    tprime = dual.embedded_tangent_space(xprime)
    ad = adapted_basis(lperp)
    rows = [ad.quotient_coords(r) for r in tprime.basis.rows]
    dual_space = _rank_one_conormals(ad, rows, xprime)
    back = perp_dual_space(dual_space)
    # re-express over the sample's own adapted basis
    from .grassmann import rebase_hom

    rebased = [rebase_hom(h, a).matrix for h in back.homs()]
    return HomSpace(CONORMAL, a, rebased)


def associated_tangent_pushforward(
    sample: AssociatedSample, v: ProjVariety, probe_count=None, seed=0
) -> HomSpace:
    """Span of tangent vectors from jet probes of the (x, H, L) chart.

    Each probe perturbs all free data (parameters, hyperplane choice,
    plane choice) to first order and pushes the moving row matrix along
    the row-space chart.  Probing stops when the span is stable for
    three extra probes; exhausting the budget first raises.
    """
    field = v.field
    jr = JetRing(field)
    a = adapted_basis(sample.subspace)
    cfg = sample.config
    pring, _ = v.parametrization
    total = (sample.ell + 1) * (v.n - sample.ell)
    cap = probe_count if probe_count is not None else 4 * total + 8
    stream = Stream(seed, "pushforward", sample.ell)
    mats = []
    rank = 0
    stable = 0
    for k in range(cap):
        s = stream.spawn(k)
        theta = tuple(
            jr.variable(c, d) for c, d in zip(cfg.theta, s.vector(field, len(cfg.theta)))
        )
        h_coeffs = tuple(
            jr.variable(c, d) for c, d in zip(cfg.h_coeffs, s.vector(field, len(cfg.h_coeffs)))
        )
        l_coeffs = tuple(
            tuple(jr.variable(c, d) for c, d in zip(row, s.vector(field, len(row))))
            for row in cfg.l_coeffs
        )
        jcfg = WitnessConfig(theta, h_coeffs, l_coeffs)
        try:
            _, _, _, _, lmat = _build_configuration(v, sample.ell, jr, jcfg)
        except NonGeneralConfiguration:
            continue
        values = Matrix(field, [[e.a for e in row] for row in lmat.rows])
        if values != sample.subspace.basis:
            raise NonGeneralConfiguration("jet replay drifted from the base sample")
        slopes = Matrix(field, [[e.b for e in row] for row in lmat.rows])
        mats.append(stiefel_differential(a, slopes).matrix)
        space = HomSpace(TANGENT, a, mats)
        if space.dim == rank:
            stable += 1
            if stable >= 3:
                return space
        else:
            rank = space.dim
            stable = 0
        mats = list(space.mats)
    raise NonGeneralConfiguration("probe budget too small: span did not stabilize")


def point_in_plane_contractions(big_ring, x_polys, ell, n, pvar_of):
    """x in L as Pluecker-linear equations: one per (ell+2)-subset."""
    out = []
    for j_set in combinations(range(n + 1), ell + 2):
        acc = big_ring.zero()
        for pos, jj in enumerate(j_set):
            rest = tuple(t for t in j_set if t != jj)
            term = x_polys[jj] * pvar_of[rest]
            acc = acc + term if pos % 2 == 0 else acc - term
        if acc:
            out.append(acc)
    return out


def plane_in_hyperplane_contractions(big_ring, w_polys, ell, n, pvar_of):
    """L inside Z(w) as Pluecker-linear equations: one per ell-subset."""
    out = []
    for i_set in combinations(range(n + 1), ell):
        acc = big_ring.zero()
        for j in range(n + 1):
            if j in i_set:
                continue
            sign, sorted_idx = _sorted_index_sign(i_set + (j,))
            if sign == 0:
                continue
            term = w_polys[j] * pvar_of[sorted_idx]
            acc = acc + term if sign > 0 else acc - term
        if acc:
            out.append(acc)
    return out


def chow_hurwitz_ideal(v: ProjVariety, ell, budget=None) -> Ideal:
    """Chow (ell = codim-1) or Hurwitz (ell = codim) ideal in Pluecker
    coordinates, reduced modulo the Pluecker relations.

    The tangency condition is encoded with the gradient hyperplane for
    hypersurfaces and with tangent-line containment for curves; other
    shapes are out of scope.
    """
    n = v.n
    c = v.codim()
    if ell not in (c - 1, c) or not (0 <= ell <= n - 1):
        raise ValueError("supported levels are codim-1 (Chow) and codim (Hurwitz)")
    field = v.field
    pring = pluecker_ring(field, ell, n)
    pnames = pring.vars
    hurwitz = ell == c

    if v.parametrization is not None:
        par, coords = v.parametrization
        big = PolyRing(field, par.vars + pnames, DEGREVLEX)
        x_polys = [g.map_to(big) for g in coords]
        base_gens = []
        drop = par.vars
    else:
        big = PolyRing(field, v.ring.vars + pnames, DEGREVLEX)
        x_polys = [big.var(nm) for nm in v.ring.vars]
        base_gens = [g.map_to(big) for g in v.gens]
        drop = v.ring.vars

    pvar_of = {}
    for idxs in combinations(range(n + 1), ell + 1):
        pvar_of[idxs] = big.var(pluecker_var_name(idxs))

    gens = list(base_gens)
    gens += point_in_plane_contractions(big, x_polys, ell, n, pvar_of)
    if hurwitz:
        if v.dimension() == n - 1:
            if v.parametrization is not None:
                w_polys = [v.gens[0].diff(i).substitute(big, x_polys) for i in range(n + 1)]
            else:
                w_polys = [v.gens[0].diff(i).map_to(big) for i in range(n + 1)]
            gens += plane_in_hyperplane_contractions(big, w_polys, ell, n, pvar_of)
        elif v.dimension() == 1 and v.parametrization is not None:
            # tangent line = span(x(t), x'(t)) inside L
            dx = [g.diff(0).map_to(big) for g in v.parametrization[1]]
            gens += point_in_plane_contractions(big, dx, ell, n, pvar_of)
        else:
            raise ValueError("tangency encoding needs a hypersurface or a parametrized curve")

    kwargs = {} if budget is None else {"budget": budget}
    elim = eliminate(Ideal(big, gens), pnames, **kwargs)
    rel = pluecker_relations(field, ell, n)
    rel_gb = groebner(rel, **kwargs) if rel.gens else rel
    out = []
    seen = set()
    for g in elim.gens:
        moved = g.map_to(pring)
        red = normal_form(moved, rel_gb, **kwargs) if rel.gens else moved
        if red and not red.is_constant():
            red = red.monic()
            key = frozenset(red.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(red)
    out.sort(key=lambda g: (g.total_degree(), pring.order.key(g.lead()[0])))
    return Ideal(pring, out)


def hypersurface_range(v: ProjVariety, dual: ProjVariety = None):
    """(codim-1, dim of the dual variety): the levels with positive polar degree."""
    c = v.codim()
    if dual is not None:
        return c - 1, dual.dimension()
    try:
        from .projvar import dual_variety

        return c - 1, dual_variety(v).dimension()
    except ValueError:
        pass
    if v.dimension() == 1:
        ideal = chow_hurwitz_ideal(v, v.n - 1)
        full = Ideal(ideal.ring, list(ideal.gens))
        dim, _ = hilbert_dim_degree(full)
        return c - 1, dim
    raise ValueError("cannot determine the dual dimension for this variety")


def polar_degree(v: ProjVariety, ell, dual: ProjVariety = None):
    """Degree of the level-ell associated form; 0 outside the
    hypersurface range."""
    lo, hi = hypersurface_range(v, dual)
    if not (lo <= ell <= hi):
        return 0
    c = v.codim()
    if ell in (c - 1, c):
        ideal = chow_hurwitz_ideal(v, ell)
        if not ideal.gens:
            raise NonGeneralConfiguration("empty associated ideal")
        return ideal.gens[0].total_degree()
    if ell == v.n - 1:
        if dual is None:
            from .projvar import dual_variety

            dual = dual_variety(v)
        return dual.degree()
    raise ValueError("polar degree at interior levels beyond codim is out of scope")


def transported_dual_sample(sample: AssociatedSample, v: ProjVariety, dual: ProjVariety):
    """Dual-side sample (L-perp with witness (H-dual, x-dual)) + checks.

    Returns (subspace, witness, checks) where checks is a list of
    (name, bool) verifying it is a valid associated sample of the dual
    variety at level n - ell - 1.
    """
    field = v.field
    n = v.n
    lperp = perp_dual(sample.subspace)
    xprime = sample.witness.normal
    hprime = hyperplane_subspace(field, sample.witness.point)
    checks = []
    on_dual = dual.contains_point(xprime)
    checks.append(("dual point on dual variety", on_dual))
    smooth = False
    tangent_ok = False
    if on_dual:
        smooth, _ = dual.is_smooth_point(xprime)
        checks.append(("dual point smooth", smooth))
        if smooth:
            tprime = dual.embedded_tangent_space(xprime)
            tangent_ok = hprime.contains(tprime)
            checks.append(("dual tangent inside dual witness hyperplane", tangent_ok))
    checks.append(("perp contains dual point", lperp.contains_point(xprime)))
    checks.append(("perp inside dual hyperplane", hprime.contains(lperp)))
    checks.append(("level", lperp.ell == n - sample.ell - 1))
    witness = ConormalWitness(
        x=point_subspace(field, xprime),
        h=hprime,
        point=tuple(xprime),
        normal=tuple(sample.witness.point),
    )
    return lperp, witness, checks
