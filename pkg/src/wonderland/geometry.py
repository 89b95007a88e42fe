"""Points and charts of the wonderful compactification.

Two models:

* the explicit projective model P(M_2) for PGL_2, whose boundary is the
  rank-one (determinant zero) locus, factoring through the Segre embedding of
  P^1 x P^1; and
* the Grassmannian model for general sl_n: points are n-dimensional subspaces
  of the double d = g (+) g, stored as canonically echelonized row spans, with
  the group pair acting through the adjoint representation on each summand.

Charts are affine: for P(M_2) the chart normalizing one matrix entry to 1,
for the Grassmannian the [I | C] chart after a column permutation.  The
infinitesimal action gives exact polynomial vector fields on both.
"""

from fractions import Fraction
from math import gcd

from wonderland.lie import sl_coords, sl_matrix_of
from wonderland.linalg import Matrix, qstr
from wonderland.poly import MultiPoly

Q = Fraction


class ChartDomainError(ValueError):
    """A point fell outside a chart (normalizing entry vanished)."""


def _primitive(values):
    """Scale a rational vector to a primitive integer vector, first nonzero
    entry positive.  Canonical representative for projective points."""
    fr = [Fraction(v) for v in values]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no projective class")
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


class ProjLinePoint:
    """A point [u0 : u1] of the projective line, canonically scaled."""

    __slots__ = ("vec",)

    def __init__(self, values):
        self.vec = _primitive(values)
        if len(self.vec) != 2:
            raise ValueError("projective line point needs two coordinates")

    def __eq__(self, other):
        return isinstance(other, ProjLinePoint) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        return "[%d:%d]" % self.vec


class ProjMatrixPoint:
    """A point [A] of P(M_2): a nonzero 2x2 matrix up to scale.

    The canonical representative is a primitive integer vector over the flat
    entry order (a, b, c, d) with positive first nonzero entry.
    """

    __slots__ = ("vec",)

    def __init__(self, values):
        if isinstance(values, Matrix):
            values = [x for row in values.data for x in row]
        values = list(values)
        if len(values) != 4:
            raise ValueError("P(M_2) point needs four coordinates")
        self.vec = _primitive(values)

    @property
    def matrix(self):
        a, b, c, d = self.vec
        return Matrix([[a, b], [c, d]])

    def det(self):
        a, b, c, d = self.vec
        return Fraction(a * d - b * c)

    def is_boundary(self):
        return self.det() == 0

    def chart_index(self):
        """Index of the largest-magnitude entry of the primitive
        representative (ties break to the earliest position)."""
        best, arg = -1, 0
        for i, v in enumerate(self.vec):
            if abs(v) > best:
                best, arg = abs(v), i
        return arg

    def __eq__(self, other):
        return isinstance(other, ProjMatrixPoint) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        return "[%s]" % ":".join(str(v) for v in self.vec)

    def to_json(self):
        return {"entries": [qstr(Fraction(v)) for v in self.vec]}

    @classmethod
    def from_json(cls, obj):
        return cls([Fraction(s) for s in obj["entries"]])


class GroupPair:
    """An element (g, h) of G x G carried by SL_n representatives."""

    __slots__ = ("g", "h")

    def __init__(self, g, h):
        g = g if isinstance(g, Matrix) else Matrix(g)
        h = h if isinstance(h, Matrix) else Matrix(h)
        if g.det() != 1 or h.det() != 1:
            raise ValueError("group pair entries must have determinant 1")
        self.g = g
        self.h = h

    @classmethod
    def identity(cls, n=2):
        return cls(Matrix.identity(n), Matrix.identity(n))

    def __repr__(self):
        return "GroupPair(%r, %r)" % (self.g, self.h)


class LagrangianPoint:
    """A point of Gr(n, d): the row span of an n x 2n matrix, stored in
    reduced row echelon form so equality is syntactic."""

    __slots__ = ("mat", "pivots")

    def __init__(self, rows):
        m = rows if isinstance(rows, Matrix) else Matrix(rows)
        red, rank, pivots = m.rref()
        if rank != m.rows:
            raise ValueError("rows are not independent")
        self.mat = red
        self.pivots = tuple(pivots)

    @property
    def n(self):
        return self.mat.rows

    def __eq__(self, other):
        return isinstance(other, LagrangianPoint) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return "LagrangianPoint(%r)" % self.mat

    def to_json(self):
        return self.mat.to_json()


FLAT_NAMES = ("a", "b", "c", "d")


class ProjChart:
    """Affine chart of P(M_2) normalizing entry ``norm_index`` to 1.

    Coordinates are offsets from the chart's center, so the parametrization
    at the origin reproduces the center representative exactly.
    """

    def __init__(self, norm_index, center_offsets=None, prefix=""):
        self.norm_index = norm_index
        self.positions = [i for i in range(4) if i != norm_index]
        self.variables = tuple(prefix + FLAT_NAMES[i] for i in self.positions)
        if center_offsets is None:
            center_offsets = [Fraction(0)] * 3
        self.center_offsets = [Fraction(x) for x in center_offsets]

    @property
    def dim(self):
        return 3

    def center_point(self):
        return self.point_at([Fraction(0)] * 3)

    def ambient_polys(self, variables=None, var_offset=0):
        """The four matrix entries as polynomials in the chart coordinates."""
        variables = variables or self.variables
        out = [None] * 4
        out[self.norm_index] = MultiPoly.const(variables, 1)
        for m, pos in enumerate(self.positions):
            e = [0] * len(variables)
            e[var_offset + m] = 1
            out[pos] = MultiPoly(variables, {tuple(e): Fraction(1)}) + MultiPoly.const(
                variables, self.center_offsets[m]
            )
        return out

    def coords_of(self, point):
        """Chart coordinates of a point; raises ChartDomainError off-chart."""
        vec = [Fraction(v) for v in point.vec]
        piv = vec[self.norm_index]
        if piv == 0:
            raise ChartDomainError("point lies outside chart %d" % self.norm_index)
        return [vec[p] / piv - off for p, off in zip(self.positions, self.center_offsets)]

    def point_at(self, coords):
        return ProjMatrixPoint(self.rep_at(coords))

    def rep_at(self, coords):
        """Ambient representative with the normalizing entry equal to 1."""
        vec = [Fraction(0)] * 4
        vec[self.norm_index] = Fraction(1)
        for m, pos in enumerate(self.positions):
            vec[pos] = self.center_offsets[m] + Fraction(coords[m])
        return vec

    def tangent_project(self, rep, vec):
        """Project an ambient tangent ``vec`` at representative ``rep`` to
        chart coordinates: the derivative of t -> [rep + t*vec]."""
        pk = Fraction(rep[self.norm_index])
        if pk == 0:
            raise ChartDomainError("base point outside chart")
        vk = Fraction(vec[self.norm_index])
        return [
            Fraction(vec[p]) / pk - vk * Fraction(rep[p]) / (pk * pk)
            for p in self.positions
        ]

    def det_poly(self):
        """det of the parametrized matrix: the boundary divisor in this chart."""
        amb = self.ambient_polys()
        return amb[0] * amb[3] - amb[1] * amb[2]


class GrassChart:
    """The [I | C] chart of Gr(n, 2n) with a given pivot column set.

    Coordinates are the free-column entries, as offsets from the center
    block, row-major.
    """

    def __init__(self, pivots, ambient_cols, center_block=None, prefix=""):
        self.pivots = tuple(pivots)
        self.ambient_cols = ambient_cols
        self.n = len(self.pivots)
        self.free = [j for j in range(ambient_cols) if j not in set(self.pivots)]
        self.variables = tuple(
            "%sc%d_%d" % (prefix, i, j) for i in range(self.n) for j in self.free
        )
        if center_block is None:
            center_block = [[Fraction(0)] * len(self.free) for _ in range(self.n)]
        self.center_block = [[Fraction(x) for x in row] for row in center_block]

    @property
    def dim(self):
        return self.n * len(self.free)

    def center_point(self):
        return self.point_at([Fraction(0)] * self.dim)

    def ambient_polys(self, variables=None, var_offset=0):
        """The n x 2n span matrix with polynomial entries (row-major list)."""
        variables = variables or self.variables
        rows = []
        for i in range(self.n):
            row = [MultiPoly.zero(variables) for _ in range(self.ambient_cols)]
            row[self.pivots[i]] = MultiPoly.const(variables, 1)
            for m, j in enumerate(self.free):
                e = [0] * len(variables)
                e[var_offset + i * len(self.free) + m] = 1
                row[j] = MultiPoly(variables, {tuple(e): Fraction(1)}) + MultiPoly.const(
                    variables, self.center_block[i][m]
                )
            rows.append(row)
        return rows

    def coords_of(self, point):
        if point.pivots != self.pivots:
            raise ChartDomainError("point has pivots %r, chart %r" % (point.pivots, self.pivots))
        out = []
        for i in range(self.n):
            for m, j in enumerate(self.free):
                out.append(point.mat.data[i][j] - self.center_block[i][m])
        return out

    def point_at(self, coords):
        return LagrangianPoint(self.rep_rows_at(coords))

    def rep_rows_at(self, coords):
        rows = []
        it = iter(coords)
        for i in range(self.n):
            row = [Fraction(0)] * self.ambient_cols
            row[self.pivots[i]] = Fraction(1)
            for m, j in enumerate(self.free):
                row[j] = self.center_block[i][m] + Fraction(next(it))
            rows.append(row)
        return rows

    def tangent_project(self, base_rows, vel_rows):
        """Project row-velocities at a chart-normalized base to coordinates.

        ``vel_rows`` is d/dt of the span rows; subtracting the pivot-column
        component keeps the curve in [I | C] form.
        """
        vp = [[Fraction(vel_rows[i][p]) for p in self.pivots] for i in range(self.n)]
        out = []
        for i in range(self.n):
            corrected = [
                Fraction(vel_rows[i][j])
                - sum(
                    (vp[i][k] * Fraction(base_rows[k][j]) for k in range(self.n)),
                    Fraction(0),
                )
                for j in range(self.ambient_cols)
            ]
            out.extend(corrected[j] for j in self.free)
        return out

    def tangent_project_general(self, rep_rows, vel_rows):
        """Projection for an arbitrary representative of the span.

        For N(t) = P(t) R(t) with P the inverse pivot block, the coordinate
        velocity is P (dR - dR_piv N) on the free columns.
        """
        rep = Matrix([[Fraction(x) for x in row] for row in rep_rows])
        vel = Matrix([[Fraction(x) for x in row] for row in vel_rows])
        piv = Matrix(
            [[rep.data[i][p] for p in self.pivots] for i in range(self.n)]
        )
        pinv = piv.inverse()
        norm = pinv * rep
        vpiv = Matrix(
            [[vel.data[i][p] for p in self.pivots] for i in range(self.n)]
        )
        corrected = pinv * (vel - vpiv * norm)
        out = []
        for i in range(self.n):
            out.extend(corrected.data[i][j] for j in self.free)
        return out


class ProductChart:
    """Chart of a product of factors; coordinates are concatenated with
    per-factor prefixes so variable names stay unique."""

    def __init__(self, factors):
        self.factors = list(factors)
        names = []
        self.offsets = []
        for idx, f in enumerate(self.factors):
            self.offsets.append(len(names))
            names.extend("p%d_%s" % (idx, v) for v in f.variables)
        self.variables = tuple(names)

    @property
    def dim(self):
        return len(self.variables)

    def factor_slice(self, idx):
        start = self.offsets[idx]
        return slice(start, start + self.factors[idx].dim)

    def lift(self, idx, p):
        """Re-index a factor polynomial into the product variables."""
        off = self.offsets[idx]
        terms = {}
        for e, c in p.terms.items():
            ne = [0] * len(self.variables)
            ne[off : off + len(e)] = list(e)
            terms[tuple(ne)] = c
        return MultiPoly(self.variables, terms)

    def ambient_polys(self, idx):
        return self.factors[idx].ambient_polys(self.variables, self.offsets[idx])

    def coords_of(self, points):
        out = []
        for f, p in zip(self.factors, points):
            out.extend(f.coords_of(p))
        return out

    def tangent_project(self, reps, vecs):
        """Per-factor projection of an ambient tangent tuple."""
        out = []
        for f, rep, vec in zip(self.factors, reps, vecs):
            out.extend(f.tangent_project(rep, vec))
        return out


def mat2_from_flat(flat):
    return Matrix([[flat[0], flat[1]], [flat[2], flat[3]]])


def flat_from_mat2(m):
    return [m.data[0][0], m.data[0][1], m.data[1][0], m.data[1][1]]


class Pgl2Model:
    """The PGL_2 wonderful compactification as P(M_2) with its pair action."""

    def __init__(self, sl2):
        if getattr(sl2, "matrix_size", None) != 2:
            raise ValueError("Pgl2Model needs the sl_2 algebra from build_sl(2)")
        self.alg = sl2
        self.basis_mats = [sl_matrix_of(2, sl2._basis_vec(i)) for i in range(3)]

    # -- group action ---------------------------------------------------
    def act(self, pair, point):
        """(g, h) . [A] = [g A h^{-1}]."""
        return ProjMatrixPoint(pair.g * point.matrix * pair.h.inverse())

    def conjugate(self, g, point):
        return self.act(GroupPair(g, g), point)

    # -- elements of the double ------------------------------------------
    def elem_matrices(self, elem6):
        """A 6-vector in sl2 (+) sl2 coordinates as a pair of 2x2 matrices."""
        a = sl_matrix_of(2, elem6[:3])
        b = sl_matrix_of(2, elem6[3:])
        return a, b

    def flow_tangent(self, elem6, rep_flat):
        """Ambient derivative of exp(ta) A exp(-tb) at t = 0: aA - Ab."""
        a, b = self.elem_matrices(elem6)
        A = mat2_from_flat(rep_flat)
        return flat_from_mat2(a * A - A * b)

    # -- charts -----------------------------------------------------------
    def standard_chart(self, k):
        return ProjChart(k)

    def chart_at(self, point):
        k = point.chart_index()
        chart = ProjChart(k)
        offsets = chart.coords_of(point)
        return ProjChart(k, offsets)

    def infinitesimal_field(self, chart, elem6, variables=None, var_offset=0):
        """Polynomial field of the one-parameter flow of ``elem6`` on a chart.

        Components are quadratic: the flow derivative aA(z) - A(z)b corrected
        by the projective normalization.
        """
        amb = chart.ambient_polys(variables, var_offset)
        a, b = self.elem_matrices(elem6)
        A = [[amb[0], amb[1]], [amb[2], amb[3]]]
        vr = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                acc = MultiPoly.zero(amb[0].variables)
                for m in range(2):
                    if a.data[i][m] != 0:
                        acc = acc + A[m][j] * a.data[i][m]
                    if b.data[m][j] != 0:
                        acc = acc - A[i][m] * b.data[m][j]
                vr[i][j] = acc
        vflat = [vr[0][0], vr[0][1], vr[1][0], vr[1][1]]
        vk = vflat[chart.norm_index]
        return [vflat[p] - vk * amb[p] for p in chart.positions]

    # -- boundary structure -----------------------------------------------
    def boundary_detect(self, point):
        return point.is_boundary()

    def segre_factor(self, point):
        """Write a boundary point as [u v^T]; round-trips through segre()."""
        if not point.is_boundary():
            raise ValueError("segre factorization needs det = 0")
        m = point.matrix
        u = None
        for j in range(2):
            col = [m.data[0][j], m.data[1][j]]
            if any(x != 0 for x in col):
                u = col
                break
        v = None
        for i in range(2):
            row = [m.data[i][0], m.data[i][1]]
            if any(x != 0 for x in row):
                v = row
                break
        up, vp = ProjLinePoint(u), ProjLinePoint(v)
        if segre(up, vp) != point:
            raise ValueError("rank-one factorization failed")
        return up, vp

    # -- the Lagrangian correspondence --------------------------------------
    def lagrangian_of(self, point, double=None, form=None):
        """[A] -> the subspace {(x, y) : x A = A y}, checked Lagrangian."""
        A = point.matrix
        cols = []
        for i in range(3):
            bi = self.basis_mats[i]
            cols.append(flat_from_mat2(bi * A))
        for i in range(3):
            bi = self.basis_mats[i]
            cols.append([-x for x in flat_from_mat2(A * bi)])
        system = Matrix([[cols[k][r] for k in range(6)] for r in range(4)])
        basis = system.kernel_basis()
        if len(basis) != 3:
            raise ValueError(
                "correspondence space has dimension %d, expected 3" % len(basis)
            )
        lp = LagrangianPoint(basis)
        if double is not None and form is not None:
            from wonderland.lie import is_lagrangian

            ok, cert = is_lagrangian(double, form, [lp.mat.row(i) for i in range(3)])
            if not ok:
                raise ValueError("correspondence is not Lagrangian: %r" % cert)
        return lp


def segre(u, v):
    """The Segre image of ([u], [v]): the rank-one class [u v^T]."""
    return ProjMatrixPoint(
        [u.vec[0] * v.vec[0], u.vec[0] * v.vec[1], u.vec[1] * v.vec[0], u.vec[1] * v.vec[1]]
    )


class GrassmannModel:
    """Gr(n, d) for the double of a semisimple algebra, with the pair action
    through Ad (+) Ad and the induced infinitesimal vector fields."""

    def __init__(self, alg, double, form):
        self.alg = alg
        self.double = double
        self.form = form
        self.n = alg.dim

    def diagonal_point(self):
        ident = Matrix.identity(self.n)
        return LagrangianPoint(Matrix([ident.row(i) + ident.row(i) for i in range(self.n)]))

    def elem_matrices(self, elem):
        """A double element as its pair of matrix-size representatives."""
        n = self.alg.matrix_size
        half = self.alg.dim
        a = sl_matrix_of(n, [Fraction(x) for x in elem[:half]])
        b = sl_matrix_of(n, [Fraction(x) for x in elem[half:]])
        return a, b

    def adjoint_matrix(self, g):
        """Ad_g on the algebra in its basis (g an SL_n representative)."""
        n = self.alg.matrix_size
        ginv = g.inverse()
        cols = []
        for i in range(self.alg.dim):
            bi = sl_matrix_of(n, self.alg._basis_vec(i))
            cols.append(sl_coords(n, g * bi * ginv))
        return Matrix([[cols[j][m] for j in range(self.alg.dim)] for m in range(self.alg.dim)])

    def pair_block(self, pair):
        """blockdiag(Ad_g, Ad_h) on the double's coordinates."""
        ag = self.adjoint_matrix(pair.g)
        ah = self.adjoint_matrix(pair.h)
        n = self.n
        block = Matrix.zero(2 * n, 2 * n)
        for i in range(n):
            for j in range(n):
                block.data[i][j] = ag.data[i][j]
                block.data[n + i][n + j] = ah.data[i][j]
        return block

    def act(self, pair, point):
        return LagrangianPoint(point.mat * self.pair_block(pair).transpose())

    def d_adjoint(self, g, U):
        """Derivative of the adjoint representation at g in the tangent
        direction U: the matrix of x -> [U g^{-1}, g x g^{-1}]."""
        n = self.alg.matrix_size
        w = U * g.inverse()
        wc = sl_coords(n, w)
        return self.alg.ad(wc) * self.adjoint_matrix(g)

    def d_pair_block(self, pair, U, V):
        """Derivative of pair_block along the pair tangent (U, V)."""
        dg = self.d_adjoint(pair.g, U)
        dh = self.d_adjoint(pair.h, V)
        n = self.n
        block = Matrix.zero(2 * n, 2 * n)
        for i in range(n):
            for j in range(n):
                block.data[i][j] = dg.data[i][j]
                block.data[n + i][n + j] = dh.data[i][j]
        return block

    def chart_at(self, point):
        chart = GrassChart(point.pivots, 2 * self.n)
        center = chart.coords_of(point)
        block = []
        it = iter(center)
        for i in range(self.n):
            block.append([next(it) for _ in chart.free])
        return GrassChart(point.pivots, 2 * self.n, block)

    def infinitesimal_field(self, chart, elem6, variables=None, var_offset=0):
        """Field of elem on the [I | C] chart: row velocity ad_elem(row)
        corrected to keep the pivot block constant; quadratic in C."""
        amb = chart.ambient_polys(variables, var_offset)
        variables = amb[0][0].variables
        ad = self.double.ad([Fraction(x) for x in elem6])
        vel = []
        for i in range(chart.n):
            row = []
            for j in range(2 * self.n):
                acc = MultiPoly.zero(variables)
                for m in range(2 * self.n):
                    if ad.data[j][m] != 0:
                        acc = acc + amb[i][m] * ad.data[j][m]
                row.append(acc)
            vel.append(row)
        vp = [[vel[i][p] for p in chart.pivots] for i in range(chart.n)]
        out = []
        for i in range(chart.n):
            for j in chart.free:
                corr = vel[i][j]
                for k in range(chart.n):
                    corr = corr - vp[i][k] * amb[k][j]
                out.append(corr)
        return out

    def orbit_dimension(self, point):
        """Rank of the infinitesimal-action map into the tangent space at
        the point: the dimension of the G x G orbit."""
        chart = self.chart_at(point)
        base = chart.rep_rows_at([Fraction(0)] * chart.dim)
        rows = []
        for i in range(self.double.dim):
            ad = self.double.ad(self.double._basis_vec(i))
            vel = [ad.apply_to(base[r]) for r in range(chart.n)]
            rows.append(chart.tangent_project(base, vel))
        return Matrix(rows).rank()

    def stabilizer_basis(self, point):
        chart = self.chart_at(point)
        base = chart.rep_rows_at([Fraction(0)] * chart.dim)
        rows = []
        for i in range(self.double.dim):
            ad = self.double.ad(self.double._basis_vec(i))
            vel = [ad.apply_to(base[r]) for r in range(chart.n)]
            rows.append(chart.tangent_project(base, vel))
        return Matrix(rows).transpose().kernel_basis()
