"""The compactification models: points, charts, actions, boundary."""

from fractions import Fraction as Q

import pytest

from wonderland.geometry import (
    ChartDomainError,
    GrassmannModel,
    GroupPair,
    LagrangianPoint,
    Pgl2Model,
    ProjChart,
    ProjLinePoint,
    ProjMatrixPoint,
    segre,
)
from wonderland.lie import build_sl, double_algebra, is_lagrangian, sl_coords, sl_matrix_of
from wonderland.linalg import Matrix
from wonderland.poly import MultiPoly, RationalFn
from wonderland.sampling import RationalStream


@pytest.fixture(scope="module")
def ctx():
    sl2 = build_sl(2)
    double, form = double_algebra(sl2)
    return {
        "sl2": sl2,
        "double": double,
        "form": form,
        "model": Pgl2Model(sl2),
        "gr": GrassmannModel(sl2, double, form),
    }


class TestProjPoints:
    def test_canonical_rep(self):
        p = ProjMatrixPoint([Q(-1, 2), Q(0), Q(0), Q(-3, 2)])
        assert p.vec == (1, 0, 0, 3)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjMatrixPoint([0, 0, 0, 0])

    def test_boundary_detect(self):
        assert not ProjMatrixPoint([1, 0, 0, 1]).is_boundary()
        assert ProjMatrixPoint([1, 0, 0, 0]).is_boundary()

    def test_boundary_of_rank_one_product(self):
        st = RationalStream(21)
        for _ in range(5):
            assert ProjMatrixPoint(st.rank_one2()).is_boundary()

    def test_json_round_trip(self):
        p = ProjMatrixPoint([1, 2, 3, 4])
        assert ProjMatrixPoint.from_json(p.to_json()) == p


class TestDiagonalPoint:
    def test_shape(self, ctx):
        d = ctx["gr"].diagonal_point()
        assert d.mat == Matrix(
            [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]]
        )

    def test_isotropic(self, ctx):
        d = ctx["gr"].diagonal_point()
        ok, cert = is_lagrangian(ctx["double"], ctx["form"], d.mat.data)
        assert ok, cert

    def test_stabilizer_is_diagonal(self, ctx):
        stab = ctx["gr"].stabilizer_basis(ctx["gr"].diagonal_point())
        assert len(stab) == 3
        for v in stab:
            assert v[:3] == v[3:]


class TestAction:
    def test_identity_pair_fixes(self, ctx):
        st = RationalStream(31)
        p = ctx["gr"].act(GroupPair(st.sl2(), st.sl2()), ctx["gr"].diagonal_point())
        assert ctx["gr"].act(GroupPair.identity(), p) == p

    def test_diagonal_pair_stabilizes_diagonal(self, ctx):
        st = RationalStream(32)
        g = st.sl2()
        d = ctx["gr"].diagonal_point()
        assert ctx["gr"].act(GroupPair(g, g), d) == d

    def test_g_e_gives_graph_of_ad_inverse(self, ctx):
        g = Matrix([[2, 0], [0, Q(1, 2)]])
        moved = ctx["gr"].act(GroupPair(g, Matrix.identity(2)), ctx["gr"].diagonal_point())
        rows = []
        for i in range(3):
            x = sl_matrix_of(2, ctx["sl2"]._basis_vec(i))
            rows.append(sl_coords(2, x) + sl_coords(2, g.inverse() * x * g))
        assert moved == LagrangianPoint(rows)


class TestCorrespondence:
    def test_identity_gives_diagonal(self, ctx):
        L = ctx["model"].lagrangian_of(ProjMatrixPoint([1, 0, 0, 1]))
        assert L == ctx["gr"].diagonal_point()

    def test_boundary_point_meets_diagonal_in_dim_1(self, ctx):
        L = ctx["model"].lagrangian_of(
            ProjMatrixPoint([1, 0, 0, 0]), ctx["double"], ctx["form"]
        )
        d = ctx["gr"].diagonal_point()
        stacked = Matrix([L.mat.row(i) for i in range(3)] + [d.mat.row(i) for i in range(3)])
        assert 3 + 3 - stacked.rank() == 1

    def test_invertible_gives_conjugation_graph(self, ctx):
        st = RationalStream(41)
        A = st.invertible2()
        L = ctx["model"].lagrangian_of(ProjMatrixPoint(A), ctx["double"], ctx["form"])
        rows = []
        Ainv = A.inverse()
        for i in range(3):
            x = sl_matrix_of(2, ctx["sl2"]._basis_vec(i))
            rows.append(sl_coords(2, x) + sl_coords(2, Ainv * x * A))
        assert L == LagrangianPoint(rows)

    def test_lagrangian_at_seeded_interior_and_boundary(self, ctx):
        st = RationalStream(43)
        for _ in range(6):
            p = ProjMatrixPoint(st.nonzero_vector(4))
            ctx["model"].lagrangian_of(p, ctx["double"], ctx["form"])
        for _ in range(6):
            p = ProjMatrixPoint(st.rank_one2())
            ctx["model"].lagrangian_of(p, ctx["double"], ctx["form"])

    def test_equivariance(self, ctx):
        """L((g,h).[A]) = (g,h).L([A]) exactly."""
        st = RationalStream(47)
        for _ in range(4):
            pair = GroupPair(st.sl2(), st.sl2())
            p = ProjMatrixPoint(st.nonzero_vector(4))
            lhs = ctx["model"].lagrangian_of(ctx["model"].act(pair, p))
            rhs = ctx["gr"].act(pair, ctx["model"].lagrangian_of(p))
            assert lhs == rhs

    def test_boundary_invariant_under_action(self, ctx):
        st = RationalStream(53)
        for _ in range(5):
            pair = GroupPair(st.sl2(), st.sl2())
            p = ProjMatrixPoint(st.rank_one2())
            assert ctx["model"].act(pair, p).is_boundary()


class TestOrbitDimension:
    def test_open_orbit(self, ctx):
        assert ctx["gr"].orbit_dimension(ctx["gr"].diagonal_point()) == 3

    def test_boundary_orbit(self, ctx):
        L = ctx["model"].lagrangian_of(ProjMatrixPoint([1, 0, 0, 0]))
        assert ctx["gr"].orbit_dimension(L) == 2

    def test_orbit_count_sweep(self, ctx):
        """Representative sweep sees exactly the two orbit dimensions."""
        st = RationalStream(59)
        dims = set()
        for _ in range(6):
            p = ProjMatrixPoint(st.nonzero_vector(4))
            if p.is_boundary():
                continue
            dims.add(ctx["gr"].orbit_dimension(ctx["model"].lagrangian_of(p)))
        for _ in range(6):
            p = ProjMatrixPoint(st.rank_one2())
            dims.add(ctx["gr"].orbit_dimension(ctx["model"].lagrangian_of(p)))
        assert dims == {3, 2}

    def test_sl3_open_orbit_dimension(self):
        """The generic model at the diagonal of the sl3 double: the open
        orbit has the full group dimension."""
        from wonderland.lie import build_sl, double_algebra

        sl3 = build_sl(3)
        double, form = double_algebra(sl3)
        gr = GrassmannModel(sl3, double, form)
        d = gr.diagonal_point()
        assert gr.orbit_dimension(d) == 8
        assert len(gr.stabilizer_basis(d)) == 8

    def test_orbit_dimension_semicontinuous_on_fixed_samples(self, ctx):
        """Special boundary points (a vanishing line coordinate, and the
        corner where the two line factors meet) never exceed the generic
        boundary orbit dimension."""
        generic = ctx["gr"].orbit_dimension(
            ctx["model"].lagrangian_of(ProjMatrixPoint([1, 2, 3, 6]))
        )
        fixed = [
            ProjMatrixPoint([1, 0, 0, 0]),   # left and right lines at [1:0]
            ProjMatrixPoint([0, 0, 0, 1]),   # the distinguished corner
            ProjMatrixPoint([0, 1, 0, 0]),
            ProjMatrixPoint([1, 1, 1, 1]),
        ]
        for p in fixed:
            assert p.is_boundary()
            d = ctx["gr"].orbit_dimension(ctx["model"].lagrangian_of(p))
            assert d <= generic == 2


class TestSegre:
    def test_e11(self, ctx):
        u, v = ctx["model"].segre_factor(ProjMatrixPoint([1, 0, 0, 0]))
        assert u == ProjLinePoint([1, 0]) and v == ProjLinePoint([1, 0])

    def test_distinguished_corner(self, ctx):
        u, v = ctx["model"].segre_factor(ProjMatrixPoint([0, 0, 0, 1]))
        assert u == ProjLinePoint([0, 1]) and v == ProjLinePoint([0, 1])

    def test_round_trip_random(self, ctx):
        st = RationalStream(61)
        for _ in range(8):
            p = ProjMatrixPoint(st.rank_one2())
            u, v = ctx["model"].segre_factor(p)
            assert segre(u, v) == p

    def test_interior_rejected(self, ctx):
        with pytest.raises(ValueError):
            ctx["model"].segre_factor(ProjMatrixPoint([1, 0, 0, 1]))


class TestCharts:
    def test_chart_at_identity(self, ctx):
        I = ProjMatrixPoint([1, 0, 0, 1])
        ch = ctx["model"].chart_at(I)
        assert ch.norm_index == 0
        assert ch.variables == ("b", "c", "d")
        assert ch.center_offsets == [Q(0), Q(0), Q(1)]
        assert ch.point_at([0, 0, 0]) == I
        assert ch.coords_of(I) == [Q(0), Q(0), Q(0)]

    def test_grass_chart_at_diagonal(self, ctx):
        d = ctx["gr"].diagonal_point()
        ch = ctx["gr"].chart_at(d)
        assert ch.pivots == (0, 1, 2)
        assert ch.dim == 9
        assert ch.point_at([Q(0)] * 9) == d

    def test_chart_domain_error(self, ctx):
        ch = ProjChart(0)
        with pytest.raises(ChartDomainError):
            ch.coords_of(ProjMatrixPoint([0, 1, 0, 0]))

    def test_chart_transition_is_rational(self, ctx):
        """Compose chart 0 coordinates with chart 3 coordinates on overlap."""
        ch0, ch3 = ProjChart(0), ProjChart(3)
        st = RationalStream(67)
        for _ in range(5):
            z = st.vector(3)
            p = ch0.point_at(z)
            if p.vec[3] == 0:
                continue
            w = ch3.coords_of(p)
            # transition formula: ambient of chart0 divided by its d-entry
            amb = ch0.ambient_polys()
            den = amb[3]
            assert den.eval(z) != 0
            for target_pos, wi in zip(ch3.positions, w):
                fn = RationalFn(amb[target_pos], den)
                assert fn.eval(z) == wi

    def test_tangent_projection_scale_invariant(self, ctx):
        ch = ProjChart(0)
        st = RationalStream(71)
        rep = [Q(2), st.take(), st.take(), st.take()]
        vec = st.vector(4)
        a = ch.tangent_project(rep, vec)
        c = Q(3, 7)
        b = ch.tangent_project([c * x for x in rep], [c * x for x in vec])
        assert a == b


class TestInfinitesimalField:
    def test_zero_element_zero_field(self, ctx):
        ch = ProjChart(0)
        fld = ctx["model"].infinitesimal_field(ch, [Q(0)] * 6)
        assert all(f.is_zero() for f in fld)

    def test_linearity_in_element(self, ctx):
        ch = ProjChart(1)
        st = RationalStream(73)
        u, v = st.vector(6), st.vector(6)
        fu = ctx["model"].infinitesimal_field(ch, u)
        fv = ctx["model"].infinitesimal_field(ch, v)
        fuv = ctx["model"].infinitesimal_field(ch, [a + b for a, b in zip(u, v)])
        for p, q, r in zip(fu, fv, fuv):
            assert p + q == r

    def test_diagonal_vanishes_at_identity_center(self, ctx):
        I = ProjMatrixPoint([1, 0, 0, 1])
        ch = ctx["model"].chart_at(I)
        st = RationalStream(79)
        x = st.vector(3)
        fld = ctx["model"].infinitesimal_field(ch, x + x)
        assert [f.eval([0, 0, 0]) for f in fld] == [Q(0)] * 3

    def test_flow_consistency_first_order(self, ctx):
        """Oracle: differentiate the exact curve [(1+ta) A (1-tb)] in t as a
        rational function and compare with the field value."""
        st = RationalStream(83)
        ch = ProjChart(0)
        model = ctx["model"]
        for _ in range(4):
            z = st.vector(3)
            elem = st.vector(6)
            a, b = model.elem_matrices(elem)
            A = ch.rep_at(z)
            Am = Matrix([[A[0], A[1]], [A[2], A[3]]])
            tvars = ("t",)
            t = MultiPoly.var(tvars, "t")
            one = MultiPoly.const(tvars, 1)

            def tmat(m):
                return [[one * m.data[i][j] for j in range(2)] for i in range(2)]

            def tmul(x, y):
                return [
                    [
                        x[i][0] * y[0][j] + x[i][1] * y[1][j]
                        for j in range(2)
                    ]
                    for i in range(2)
                ]

            ga = [[one + t * a.data[0][0], t * a.data[0][1]],
                  [t * a.data[1][0], one + t * a.data[1][1]]]
            gb = [[one - t * b.data[0][0], -t * b.data[0][1]],
                  [-t * b.data[1][0], one - t * b.data[1][1]]]
            curve = tmul(tmul(ga, tmat(Am)), gb)
            flat = [curve[0][0], curve[0][1], curve[1][0], curve[1][1]]
            den = flat[0]
            fld = model.infinitesimal_field(ch, elem)
            for pos, f in zip(ch.positions, fld):
                frac = RationalFn(flat[pos], den)
                deriv_at_0 = frac.diff("t").eval([Q(0)])
                assert deriv_at_0 == f.eval(z)

    def test_grassmann_field_matches_pointwise_projection(self, ctx):
        gr = ctx["gr"]
        d = gr.diagonal_point()
        ch = gr.chart_at(d)
        st = RationalStream(89)
        elem = st.vector(6)
        fld = gr.infinitesimal_field(ch, elem)
        z = st.vector(9, 3)
        base = ch.rep_rows_at(z)
        ad = ctx["double"].ad(elem)
        vel = [ad.apply_to(r) for r in base]
        want = ch.tangent_project(base, vel)
        assert [f.eval(z) for f in fld] == want
