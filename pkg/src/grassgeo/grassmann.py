"""Grassmannian model: Pluecker coordinates, adapted bases, Hom tangents.

Conventions (fixed once, recorded here so reports are bit-stable):

* A projective ell-plane L in P^n is the row space of a full-rank
  (ell+1) x (n+1) matrix.  Pluecker coordinates are the maximal minors
  taken over column subsets in lexicographic order.
* An adapted basis extends the rows of L by unit vectors at the
  lexicographically first column set that completes them to a basis
  of K^{n+1}; the classes of those unit vectors are the working basis
  of the quotient K^{n+1}/L.
* A tangent vector at L is a map L -> K^{n+1}/L stored as an
  (ell+1) x (n-ell) matrix (rows: basis of L, columns: quotient
  classes).  A conormal vector is a map K^{n+1}/L -> L stored as an
  (n-ell) x (ell+1) matrix.  The two sides pair by the trace:
  <phi, psi> = tr(psi o phi) = sum_ij Mphi[i,j] * Mpsi[j,i].
* The empty subspace has projective dimension -1 (0 x (n+1) basis).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import FieldMismatch
from .linalg import Matrix, row_space_contains
from .poly import Ideal, PolyRing


class Subspace:
    """A projective subspace of P^n with cached Pluecker coordinates."""

    __slots__ = ("field", "n", "ell", "basis", "_pluecker")

    def __init__(self, field, n, basis: Matrix, check=True):
        if basis.nrows and basis.ncols != n + 1:
            raise ValueError("basis must have n+1 columns")
        if check and basis.nrows and basis.rank() != basis.nrows:
            raise ValueError("basis matrix is rank deficient")
        self.field = field
        self.n = n
        self.ell = basis.nrows - 1
        self.basis = basis
        self._pluecker = None

    @property
    def pluecker(self):
        if self._pluecker is None:
            k = self.ell + 1
            if k == 0:
                self._pluecker = (self.field.one,)
            else:
                self._pluecker = tuple(
                    self.basis.submatrix(range(k), cols).det()
                    for cols in combinations(range(self.n + 1), k)
                )
        return self._pluecker

    def column_sets(self):
        return tuple(combinations(range(self.n + 1), self.ell + 1))

    def contains_point(self, v) -> bool:
        return row_space_contains(self.basis, [self.field.of(x) for x in v])

    def contains(self, other: "Subspace") -> bool:
        if other.ell == -1:
            return True
        return self.basis.stack(other.basis).rank() == self.basis.rank()

    def same_as(self, other: "Subspace") -> bool:
        if self.n != other.n or self.ell != other.ell:
            return False
        if self.ell == -1:
            return True
        return self.basis.row_space_basis() == other.basis.row_space_basis()

    def reduced(self) -> "Subspace":
        if self.ell == -1:
            return self
        return Subspace(self.field, self.n, self.basis.row_space_basis(), check=False)

    def __repr__(self):
        return "Subspace(ell=%d, n=%d)" % (self.ell, self.n)


def subspace_from_rows(field, n, rows) -> Subspace:
    return Subspace(field, n, Matrix(field, rows))


def point_subspace(field, v) -> Subspace:
    return Subspace(field, len(v) - 1, Matrix(field, [v]))


def hyperplane_subspace(field, normal) -> Subspace:
    """Z(normal . x) as a subspace of dimension n-1."""
    m = Matrix(field, [normal])
    return Subspace(field, len(normal) - 1, m.nullspace(), check=False)


def empty_subspace(field, n) -> Subspace:
    return Subspace(field, n, Matrix(field, []), check=False)


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ell == -1:
        return b.reduced()
    if b.ell == -1:
        return a.reduced()
    return Subspace(a.field, a.n, a.basis.stack(b.basis).row_space_basis(), check=False)


def intersect_subspaces(a: Subspace, b: Subspace) -> Subspace:
    """Row-space intersection: solve x*A = y*B."""
    if a.ell == -1 or b.ell == -1:
        return empty_subspace(a.field, a.n)
    stacked = a.basis.stack(b.basis).transpose()  # columns: A rows then B rows
    ker = stacked.nullspace()  # rows (x, -y) with x*A = y*B
    rows = []
    for v in ker.rows:
        x = v[: a.basis.nrows]
        rows.append(list(a.basis.apply_row(x)))
    if not rows:
        return empty_subspace(a.field, a.n)
    m = Matrix(a.field, rows).row_space_basis()
    if m.nrows == 0:
        return empty_subspace(a.field, a.n)
    return Subspace(a.field, a.n, m, check=False)


def pluecker_embed(field, basis_matrix: Matrix) -> Subspace:
    """Subspace with Pluecker vector from a full-row-rank matrix."""
    n = basis_matrix.ncols - 1
    s = Subspace(field, n, basis_matrix)
    _ = s.pluecker
    return s


def pluecker_var_name(idxs) -> str:
    return "p" + "_".join(str(i) for i in idxs)


@lru_cache(maxsize=None)
def _pluecker_ring_cached(field, ell, n, order_name):
    from .poly import DEGREVLEX, LEX

    order = DEGREVLEX if order_name == "degrevlex" else LEX
    names = tuple(pluecker_var_name(c) for c in combinations(range(n + 1), ell + 1))
    return PolyRing(field, names, order)


def pluecker_ring(field, ell, n, order_name="degrevlex") -> PolyRing:
    return _pluecker_ring_cached(field, ell, n, order_name)


def _sorted_index_sign(idxs):
    """(sign, sorted tuple) of an index sequence; sign 0 on repeats."""
    idxs = list(idxs)
    sign = 1
    for i in range(len(idxs)):
        for j in range(len(idxs) - 1 - i):
            if idxs[j] == idxs[j + 1]:
                return 0, ()
            if idxs[j] > idxs[j + 1]:
                idxs[j], idxs[j + 1] = idxs[j + 1], idxs[j]
                sign = -sign
    return sign, tuple(idxs)


def pluecker_relations(field, ell, n) -> Ideal:
    """Three-term/shuffle quadrics cutting out Gr(ell, P^n).

    Not claimed minimal; every pluecker_embed output is a common zero.
    """
    if not (0 <= ell <= n):
        raise ValueError("need 0 <= ell <= n")
    ring = pluecker_ring(field, ell, n)
    k = ell + 1
    rels = set()
    out = []
    idx_of = {c: i for i, c in enumerate(combinations(range(n + 1), k))}
    nv = ring.nvars
    for alpha in combinations(range(n + 1), k - 1):
        for beta in combinations(range(n + 1), k + 1):
            terms = {}
            for pos, b in enumerate(beta):
                s1, left = _sorted_index_sign(alpha + (b,))
                if s1 == 0:
                    continue
                right = tuple(x for x in beta if x != b)
                coeff = s1 * (-1) ** pos
                e = [0] * nv
                e[idx_of[left]] += 1
                e[idx_of[right]] += 1
                e = tuple(e)
                terms[e] = terms.get(e, 0) + coeff
            poly = ring.from_terms(list(terms.items()))
            if poly:
                poly = poly.monic()
                key = frozenset(poly.terms.items())
                if key not in rels:
                    rels.add(key)
                    out.append(poly)
    out.sort(key=lambda g: ring.order.key(g.lead()[0]))
    return Ideal(ring, out)


def evaluate_pluecker(poly, subspace: Subspace):
    """Evaluate a Pluecker-variable polynomial at a subspace's coordinates."""
    return poly.evaluate(list(subspace.pluecker))


class AdaptedBasis:
    """Rows of L completed by unit vectors at complement columns."""

    __slots__ = ("subspace", "complement_columns", "full", "full_inv")

    def __init__(self, subspace, complement_columns, full, full_inv):
        self.subspace = subspace
        self.complement_columns = complement_columns
        self.full = full
        self.full_inv = full_inv

    @property
    def ell(self):
        return self.subspace.ell

    @property
    def n(self):
        return self.subspace.n

    @property
    def field(self):
        return self.subspace.field

    def quotient_coords(self, v):
        """Coordinates of v + L in the unit-class basis of K^{n+1}/L."""
        x = Matrix(self.field, [v]) @ self.full_inv
        return tuple(x.rows[0][self.ell + 1 :])

    def subspace_coords(self, v):
        """Coordinates of v in the rows of L; v must lie in L."""
        x = (Matrix(self.field, [v]) @ self.full_inv).rows[0]
        if any(c for c in x[self.ell + 1 :]):
            raise ValueError("vector not in the subspace")
        return tuple(x[: self.ell + 1])

    def lift_quotient(self, qcoords):
        """A representative in K^{n+1} of the class with these coordinates."""
        z = self.field.zero
        v = [z] * (self.n + 1)
        for c, col in zip(qcoords, self.complement_columns):
            v[col] = v[col] + c
        return tuple(v)

    def __repr__(self):
        return "AdaptedBasis(ell=%d, n=%d, complement=%r)" % (
            self.ell,
            self.n,
            self.complement_columns,
        )


def adapted_basis(s: Subspace) -> AdaptedBasis:
    """Deterministic adapted basis: lexicographically first completion."""
    k = s.ell + 1
    n = s.n
    field = s.field
    piv, _ = s.basis.rref()
    for comp in combinations(range(n + 1), n + 1 - k):
        kept = tuple(c for c in range(n + 1) if c not in comp)
        if s.basis.submatrix(range(k), kept).det():
            unit_rows = []
            z, o = field.zero, field.one
            for col in comp:
                r = [z] * (n + 1)
                r[col] = o
                unit_rows.append(r)
            full = s.basis.stack(Matrix(field, unit_rows)) if k else Matrix(field, unit_rows)
            return AdaptedBasis(s, comp, full, full.inverse())
    raise ValueError("no completion found (rank-deficient basis?)")


TANGENT = "tangent"
CONORMAL = "conormal"


class Hom:
    """A tangent or conormal vector at L, as a matrix in an adapted basis."""

    __slots__ = ("direction", "matrix", "adapted")

    def __init__(self, direction, matrix: Matrix, adapted: AdaptedBasis):
        ell, n = adapted.ell, adapted.n
        want = (ell + 1, n - ell) if direction == TANGENT else (n - ell, ell + 1)
        if (matrix.nrows, matrix.ncols) != want:
            raise ValueError("hom matrix shape %r, expected %r" % ((matrix.nrows, matrix.ncols), want))
        self.direction = direction
        self.matrix = matrix
        self.adapted = adapted

    def rank(self):
        return self.matrix.rank()

    def is_zero(self):
        return self.matrix.is_zero()

    def kernel_in_domain(self):
        """Left null space of the matrix: coordinates in the domain basis."""
        return self.matrix.left_nullspace()

    def kernel_subspace(self) -> Subspace:
        """Tangent: kernel inside L.  Conormal: preimage in P^n of the
        quotient kernel (a subspace containing L)."""
        a = self.adapted
        ker = self.kernel_in_domain()
        if self.direction == TANGENT:
            rows = [a.subspace.basis.apply_row(v) for v in ker.rows]
            if not rows:
                return empty_subspace(a.field, a.n)
            return Subspace(a.field, a.n, Matrix(a.field, rows).row_space_basis(), check=False)
        rows = [a.lift_quotient(v) for v in ker.rows]
        base = a.subspace.basis
        m = base if not rows else base.stack(Matrix(a.field, rows))
        return Subspace(a.field, a.n, m.row_space_basis(), check=False)

    def image_in_codomain(self):
        """Row space of the matrix: coordinates in the codomain basis."""
        return self.matrix.row_space_basis()

    def image_subspace(self) -> Subspace:
        """Tangent: preimage in P^n of the quotient image (contains L).
        Conormal: image inside L."""
        a = self.adapted
        img = self.image_in_codomain()
        if self.direction == TANGENT:
            rows = [a.lift_quotient(v) for v in img.rows]
            base = a.subspace.basis
            m = base if not rows else base.stack(Matrix(a.field, rows))
            return Subspace(a.field, a.n, m.row_space_basis(), check=False)
        rows = [a.subspace.basis.apply_row(v) for v in img.rows]
        if not rows:
            return empty_subspace(a.field, a.n)
        return Subspace(a.field, a.n, Matrix(a.field, rows).row_space_basis(), check=False)

    def flatten(self):
        return tuple(x for r in self.matrix.rows for x in r)

    def __repr__(self):
        return "Hom(%s, %d x %d)" % (self.direction, self.matrix.nrows, self.matrix.ncols)


class HomSpace:
    """A linear space of Homs over one adapted basis (canonical basis)."""

    __slots__ = ("direction", "adapted", "mats")

    def __init__(self, direction, adapted, mats, reduce=True):
        shape = None
        for m in mats:
            if shape is None:
                shape = (m.nrows, m.ncols)
            elif (m.nrows, m.ncols) != shape:
                raise ValueError("mixed hom shapes")
        self.direction = direction
        self.adapted = adapted
        if reduce and mats:
            flat = Matrix(adapted.field, [[x for r in m.rows for x in r] for m in mats])
            red = flat.row_space_basis()
            nr, nc = shape
            mats = [
                Matrix(adapted.field, [row[i * nc : (i + 1) * nc] for i in range(nr)])
                for row in red.rows
            ]
        self.mats = tuple(mats)

    @property
    def dim(self):
        return len(self.mats)

    def homs(self):
        return [Hom(self.direction, m, self.adapted) for m in self.mats]

    def shape(self):
        if self.mats:
            return (self.mats[0].nrows, self.mats[0].ncols)
        ell, n = self.adapted.ell, self.adapted.n
        return (ell + 1, n - ell) if self.direction == TANGENT else (n - ell, ell + 1)

    def contains(self, hom: Hom) -> bool:
        if not self.mats:
            return hom.is_zero()
        flat = Matrix(
            self.adapted.field,
            [[x for r in m.rows for x in r] for m in self.mats],
        )
        v = [x for r in hom.matrix.rows for x in r]
        return row_space_contains(flat, v)

    def same_span(self, other: "HomSpace") -> bool:
        return self.direction == other.direction and self.mats == other.mats

    def generic_element_poly_matrix(self, ring):
        """Matrix of linear forms sum_i lambda_i * mats[i] over ring."""
        nr, nc = self.shape()
        rows = []
        for i in range(nr):
            row = []
            for j in range(nc):
                p = ring.zero()
                for k, m in enumerate(self.mats):
                    p = p + ring.var(k) * ring.const(m[i, j])
                row.append(p)
            rows.append(row)
        return rows

    def __repr__(self):
        return "HomSpace(%s, dim=%d)" % (self.direction, self.dim)


def stiefel_differential(adapted: AdaptedBasis, m: Matrix) -> Hom:
    """Tangent vector sending each basis row A_i to the class of m's row i.

    The kernel of this assignment is exactly the matrices whose row
    space lies inside the subspace.
    """
    if (m.nrows, m.ncols) != (adapted.ell + 1, adapted.n + 1):
        raise ValueError("direction matrix must be (ell+1) x (n+1)")
    if m.field != adapted.field:
        raise FieldMismatch("field mismatch in stiefel differential")
    rows = [adapted.quotient_coords(r) for r in m.rows]
    return Hom(TANGENT, Matrix(adapted.field, rows), adapted)


def tangent_from_action(adapted: AdaptedBasis, domain_rows: Matrix, image_rows: Matrix) -> Hom:
    """Tangent hom defined by row_i(domain) |-> class of row_i(image).

    domain_rows must span the subspace; the action is rewritten on the
    adapted rows by solving a change of basis.
    """
    a = adapted
    coeff_rows = []
    dt = domain_rows.transpose()
    for arow in a.subspace.basis.rows:
        x = dt.solve(arow)
        if x is None:
            raise ValueError("domain rows do not span the subspace")
        coeff_rows.append(x)
    lifts = Matrix(a.field, coeff_rows) @ image_rows
    return stiefel_differential(a, lifts)


def conormal_from_action(adapted: AdaptedBasis, domain_lifts: Matrix, image_rows: Matrix) -> Hom:
    """Conormal hom defined on quotient classes of the given lifts.

    domain_lifts: (n-ell) vectors of K^{n+1} whose classes span the
    quotient; image_rows: their images inside the subspace.
    """
    a = adapted
    r = Matrix(a.field, [a.quotient_coords(v) for v in domain_lifts.rows])
    e = r.inverse()  # unit class j = sum_k e[j,k] * class(domain_k)
    imgs = e @ image_rows
    n_rows = [a.subspace_coords(v) for v in imgs.rows]
    return Hom(CONORMAL, Matrix(a.field, n_rows), adapted)


def rebase_hom(h: Hom, target: AdaptedBasis) -> Hom:
    """Re-express a hom over another adapted basis of the same subspace."""
    src = h.adapted
    if not src.subspace.same_as(target.subspace):
        raise ValueError("rebase requires equal subspaces")
    if h.direction == TANGENT:
        lifts = Matrix(src.field, [src.lift_quotient(r) for r in h.matrix.rows])
        return tangent_from_action(target, src.subspace.basis, lifts)
    lifts = Matrix(
        src.field,
        [src.lift_quotient(v) for v in Matrix.identity(src.field, src.n - src.ell).rows],
    )
    images = h.matrix @ src.subspace.basis
    return conormal_from_action(target, lifts, images)


def trace_pairing(phi: Hom, psi: Hom):
    """tr(psi o phi) for a tangent/conormal pair at the same L."""
    if phi.direction == psi.direction:
        raise ValueError("trace pairing needs opposite directions")
    t, c = (phi, psi) if phi.direction == TANGENT else (psi, phi)
    acc = t.adapted.field.zero
    for i in range(t.matrix.nrows):
        for j in range(t.matrix.ncols):
            acc = acc + t.matrix[i, j] * c.matrix[j, i]
    return acc


def trace_annihilator(space: HomSpace) -> HomSpace:
    """Full annihilator under the trace pairing, in the other direction.

    dim(space) + dim(annihilator) = (ell+1)(n-ell); applying the
    operation twice returns the original span.
    """
    a = space.adapted
    ell, n = a.ell, a.n
    total = (ell + 1) * (n - ell)
    out_dir = CONORMAL if space.direction == TANGENT else TANGENT
    out_shape = ((n - ell), (ell + 1)) if out_dir == CONORMAL else ((ell + 1), (n - ell))
    if not space.mats:
        z = a.field.zero
        full = []
        for k in range(total):
            flat = [z] * total
            flat[k] = a.field.one
            full.append(flat)
        mats = [
            Matrix(a.field, [row[i * out_shape[1] : (i + 1) * out_shape[1]] for i in range(out_shape[0])])
            for row in full
        ]
        return HomSpace(out_dir, a, mats)
    rows = []
    for m in space.mats:
        # coefficient of unknown[j,i] (row-major in the output shape) is m[i,j]
        mt = m.transpose()
        rows.append([x for r in mt.rows for x in r])
    ker = Matrix(a.field, rows).nullspace()
    mats = [
        Matrix(a.field, [v[i * out_shape[1] : (i + 1) * out_shape[1]] for i in range(out_shape[0])])
        for v in ker.rows
    ]
    return HomSpace(out_dir, a, mats)


def homs_with_kernel_containing(adapted: AdaptedBasis, inner: Subspace) -> HomSpace:
    """All tangent homs vanishing on a subspace of L (an alpha-space
    when inner is a hyperplane of L)."""
    a = adapted
    pc = Matrix(a.field, [a.subspace_coords(r) for r in inner.basis.rows])
    left = pc.nullspace() if pc.nrows else Matrix.identity(a.field, a.ell + 1)
    z = a.field.zero
    mats = []
    for u in left.rows:
        for j in range(a.n - a.ell):
            rows = []
            for i in range(a.ell + 1):
                r = [z] * (a.n - a.ell)
                if u[i]:
                    r[j] = u[i]
                rows.append(r)
            mats.append(Matrix(a.field, rows))
    return HomSpace(TANGENT, a, mats)


def homs_with_image_in(adapted: AdaptedBasis, outer: Subspace) -> HomSpace:
    """All tangent homs with image inside (outer + L)/L (a beta-space
    when outer has dimension ell+1 and contains L)."""
    a = adapted
    q = Matrix(a.field, [a.quotient_coords(r) for r in outer.basis.rows]).row_space_basis()
    z = a.field.zero
    mats = []
    for i in range(a.ell + 1):
        for w in q.rows:
            rows = []
            for k in range(a.ell + 1):
                rows.append(list(w) if k == i else [z] * (a.n - a.ell))
            mats.append(Matrix(a.field, rows))
    return HomSpace(TANGENT, a, mats)


def perp_dual(s: Subspace) -> Subspace:
    """Annihilator subspace in the dual space: L |-> Ann(L).

    perp_dual(perp_dual(s)) has the same row space as s; the perp of
    the full space is the empty subspace (dimension -1).
    """
    if s.ell == s.n:
        return empty_subspace(s.field, s.n)
    if s.ell == -1:
        return Subspace(s.field, s.n, Matrix.identity(s.field, s.n + 1), check=False)
    return Subspace(s.field, s.n, s.basis.nullspace(), check=False)


def perp_dual_hom(h: Hom) -> Hom:
    """Transport of a tangent/conormal vector along L |-> Ann(L).

    Tangent vectors go to tangent vectors of the dual Grassmannian,
    conormal to conormal; rank is preserved, and kernels/images swap:
    an alpha-structure becomes a beta-structure.
    """
    a = h.adapted
    field = a.field
    ell, n = a.ell, a.n
    ga = a.full_inv.transpose()  # rows: dual basis of the adapted rows
    dual_sub_rows = [ga.rows[i] for i in range(ell + 1, n + 1)]  # basis of Ann(L)
    dual_quot_rows = [ga.rows[i] for i in range(ell + 1)]  # classes spanning K*/Ann(L)
    perp = Subspace(field, n, Matrix(field, dual_sub_rows), check=False)
    pa = adapted_basis(perp)
    m = h.matrix
    if h.direction == TANGENT:
        # phi*(dual of quotient class j) = sum_i M[i,j] * (dual of A_i)
        domain = Matrix(field, dual_sub_rows)
        images = m.transpose() @ Matrix(field, dual_quot_rows)
        return tangent_from_action(pa, domain, images)
    # conormal: psi*(class of dual A_i) = sum_j M[j,i] * (dual of quotient class j)
    domain = Matrix(field, dual_quot_rows)
    images = m.transpose() @ Matrix(field, dual_sub_rows)
    return conormal_from_action(pa, domain, images)


def perp_dual_space(space: HomSpace) -> HomSpace:
    homs = [perp_dual_hom(h) for h in space.homs()]
    if not homs:
        ell, n = space.adapted.ell, space.adapted.n
        perp = perp_dual(space.adapted.subspace)
        return HomSpace(space.direction, adapted_basis(perp), [])
    return HomSpace(homs[0].direction, homs[0].adapted, [h.matrix for h in homs])
