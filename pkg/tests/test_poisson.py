"""The bivector engine: field constructions and exact identity residuals."""

from fractions import Fraction as Q

import pytest

from wonderland.geometry import (
    GroupPair,
    Pgl2Model,
    ProductChart,
    ProjChart,
    ProjMatrixPoint,
    GrassmannModel,
)
from wonderland.lie import _dualize, build_sl, double_algebra, standard_splitting
from wonderland.poisson import (
    action_map_identities,
    pair_group_field,
    diagonal_action_residual,
    splitting_bivector_field,
    splitting_wedges,
    jacobi_sweep,
    jacobiator,
    mixed_product_field,
    multiplicativity_residual,
    pi_wedges,
    poisson_action_residual,
    project_wedges,
    tangency_check,
)
from wonderland.poly import MultiPoly
from wonderland.sampling import RationalStream

# frozen regression fixture: the mixed two-factor field on the chart a=1,
# evaluated at ((1,2,3),(1/2,-1,2)); first full computation, kept thereafter
MIXED_FIXTURE_POINT = [Q(1), Q(2), Q(3), Q(1, 2), Q(-1), Q(2)]
MIXED_FIXTURE_VALUE = [
    ["0", "-3/2", "-3", "7/16", "3/8", "3/8"],
    ["3/2", "0", "6", "1/8", "-3/4", "3/4"],
    ["3", "-6", "0", "9/4", "-3/2", "9/2"],
    ["-7/16", "-1/8", "-9/4", "0", "1", "-3/4"],
    ["-3/8", "3/4", "3/2", "-1", "0", "-3/2"],
    ["-3/8", "-3/4", "-9/2", "3/4", "3/2", "0"],
]


@pytest.fixture(scope="module")
def ctx():
    sl2 = build_sl(2)
    double, form = double_algebra(sl2)
    model = Pgl2Model(sl2)
    split = standard_splitting(sl2)
    ch0 = ProjChart(0)
    return {
        "sl2": sl2,
        "double": double,
        "form": form,
        "model": model,
        "split": split,
        "ch0": ch0,
        "field0": splitting_bivector_field(model, ch0, split),
        "gr": GrassmannModel(sl2, double, form),
    }


class TestSplittingField:
    def test_vanishes_at_identity(self, ctx):
        I = ProjMatrixPoint([1, 0, 0, 1])
        z = ctx["ch0"].coords_of(I)
        assert ctx["field0"].value_at(z).is_zero()

    def test_entries_antisymmetric(self, ctx):
        f = ctx["field0"]
        for i in range(3):
            for j in range(3):
                assert (f.entries[i][j] + f.entries[j][i]).is_zero()

    def test_basis_independence(self, ctx):
        """Re-mixed dual pair gives the identical polynomial field."""
        st = RationalStream(91)
        while True:
            mix = st.matrix(3, 3, 3)
            if mix.det() != 0:
                break
        s = ctx["split"]
        new_x = []
        for i in range(3):
            v = [Q(0)] * 6
            for k in range(3):
                for m in range(6):
                    v[m] += mix.data[i][k] * s.x_basis[k][m]
            new_x.append(v)
        remixed = _dualize(ctx["sl2"], s.double, s.form, new_x, s.y_basis)
        f2 = splitting_bivector_field(ctx["model"], ctx["ch0"], remixed)
        for i in range(3):
            for j in range(3):
                assert f2.entries[i][j] == ctx["field0"].entries[i][j]

    def test_polynomial_equals_pointwise(self, ctx):
        st = RationalStream(93)
        ch = ctx["ch0"]
        for _ in range(4):
            z = st.vector(3)
            rep = ch.rep_at(z)
            pt = project_wedges(
                [ch], [rep], splitting_wedges(ctx["model"], ctx["split"], rep)
            )
            assert ctx["field0"].value_at(z).entries == pt.entries


class TestJacobi:
    def test_jacobi_sweep_all_charts(self, ctx):
        st = RationalStream(42)
        for k in range(4):
            ch = ProjChart(k)
            fld = splitting_bivector_field(ctx["model"], ch, ctx["split"])
            for _ in range(5):
                z = st.vector(3)
                for triple, val in jacobi_sweep(fld, z):
                    assert val == 0, (k, z, triple)

    def test_jacobiator_repeated_arguments(self, ctx):
        x, y, z = MultiPoly.gens(ctx["ch0"].variables)
        pt = [Q(1), Q(2), Q(-1)]
        f = x * y + z
        assert jacobiator(ctx["field0"], f, f, f, pt) == 0

    def test_jacobiator_random_polynomials(self, ctx):
        """Derivation property: vanishing on coordinates extends to all
        polynomial triples; checked directly on random cubics."""
        st = RationalStream(97)
        names = ctx["ch0"].variables
        for _ in range(3):
            polys = []
            for _ in range(3):
                terms = {}
                for _ in range(4):
                    e = tuple(abs(st.take(9).numerator) % 3 for _ in range(3))
                    terms[e] = terms.get(e, Q(0)) + st.take()
                polys.append(MultiPoly(names, terms))
            pt = st.vector(3)
            assert jacobiator(ctx["field0"], *polys, pt) == 0

    def test_general_jacobiator_matches_sweep_formula_on_control_field(self, ctx):
        """Two independent formulas for the coordinate-triple Jacobiator must
        agree even where they are nonzero, so build a field that is NOT
        Poisson and compare them there."""
        from wonderland.poisson import BivectorField, jacobi_triple_value

        ch = ProjChart(0)
        names = ch.variables
        st = RationalStream(181)

        def rnd():
            terms = {}
            for _ in range(3):
                e = tuple(abs(st.take(9).numerator) % 3 for _ in range(3))
                terms[e] = terms.get(e, Q(0)) + st.take()
            return MultiPoly(names, terms)

        zero = MultiPoly.zero(names)
        a, b, c = rnd(), rnd(), rnd()
        control = BivectorField(
            ch,
            [[zero, a, b], [-a, zero, c], [-b, -c, zero]],
        )
        x, y, z = MultiPoly.gens(names)
        found_nonzero = False
        for _ in range(4):
            pt = st.vector(3)
            L = control.value_at(pt).entries
            dL = control.deriv_values(pt)
            sweep = jacobi_triple_value(L, dL, 0, 1, 2)
            general = jacobiator(control, x, y, z, pt)
            assert sweep == general
            if sweep != 0:
                found_nonzero = True
        assert found_nonzero

    def test_constant_symplectic_field(self, ctx):
        ch = ProjChart(0)
        names = ch.variables
        one = MultiPoly.const(names, 1)
        zero = MultiPoly.zero(names)
        from wonderland.poisson import BivectorField

        f = BivectorField(ch, [[zero, one, zero], [-one, zero, zero], [zero, zero, zero]])
        st = RationalStream(99)
        for _ in range(3):
            assert all(v == 0 for _, v in jacobi_sweep(f, st.vector(3)))

    def test_grassmann_jacobi_on_boundary_chart(self, ctx):
        """The subspace model has charts beyond the big cell; the identity
        holds on the chart at a boundary correspondence point, at points of
        its orbit."""
        gr = ctx["gr"]
        L0 = ctx["model"].lagrangian_of(ProjMatrixPoint([1, 0, 0, 0]))
        assert L0.pivots != (0, 1, 2)
        chart = gr.chart_at(L0)
        fld = splitting_bivector_field(gr, chart, ctx["split"])
        st = RationalStream(101)
        checked = 0
        while checked < 2:
            pair = GroupPair(st.sl2(), st.sl2())
            L = gr.act(pair, L0)
            if L.pivots != chart.pivots:
                continue
            z = chart.coords_of(L)
            assert all(v == 0 for _, v in jacobi_sweep(fld, z))
            checked += 1

    def test_grassmann_jacobi_at_lagrangian_points(self, ctx):
        gr = ctx["gr"]
        dpt = gr.diagonal_point()
        ch = gr.chart_at(dpt)
        fld = splitting_bivector_field(gr, ch, ctx["split"])
        assert fld.value_at([Q(0)] * 9).is_zero()
        st = RationalStream(103)
        checked = 0
        while checked < 3:
            pair = GroupPair(st.sl2(), st.sl2())
            L = gr.act(pair, dpt)
            if L.pivots != ch.pivots:
                continue
            z = ch.coords_of(L)
            for triple, val in jacobi_sweep(fld, z):
                assert val == 0, (triple, val)
            checked += 1


class TestPiField:
    def test_vanishes_at_identity(self, ctx):
        fI = [Q(1), Q(0), Q(0), Q(1)]
        val = project_wedges(
            [ProjChart(0), ProjChart(0)],
            [fI, fI],
            pi_wedges(ctx["model"], ctx["split"], fI, fI),
        )
        assert val.is_zero()

    def test_polynomial_equals_pointwise(self, ctx):
        pc = ProductChart([ProjChart(0), ProjChart(0)])
        fld = pair_group_field(ctx["model"], pc, ctx["split"])
        st = RationalStream(107)
        from wonderland.geometry import flat_from_mat2

        for _ in range(3):
            g, h = st.sl2(), st.sl2()
            fg, fh = flat_from_mat2(g), flat_from_mat2(h)
            if fg[0] == 0 or fh[0] == 0:
                continue
            zg = [x / fg[0] for x in fg[1:]]
            zh = [x / fh[0] for x in fh[1:]]
            want = project_wedges(
                [ProjChart(0), ProjChart(0)], [fg, fh], pi_wedges(ctx["model"], ctx["split"], fg, fh)
            )
            assert fld.value_at(zg + zh).entries == want.entries

    def test_multiplicativity_random_pairs(self, ctx):
        st = RationalStream(109)
        for _ in range(5):
            p1 = GroupPair(st.sl2(), st.sl2())
            p2 = GroupPair(st.sl2(), st.sl2())
            assert multiplicativity_residual(ctx["model"], ctx["split"], p1, p2).passed

    def test_pi_field_jacobi(self, ctx):
        """The pair-group bivector is itself Poisson."""
        pc = ProductChart([ProjChart(0), ProjChart(0)])
        fld = pair_group_field(ctx["model"], pc, ctx["split"])
        st = RationalStream(111)
        for _ in range(2):
            z = st.vector(6)
            for triple, val in jacobi_sweep(fld, z):
                assert val == 0, triple


class TestActionIdentity:
    def test_identity_pair_trivial(self, ctx):
        st = RationalStream(113)
        p = ProjMatrixPoint(st.nonzero_vector(4))
        res = poisson_action_residual(ctx["model"], ctx["split"], GroupPair.identity(), p)
        assert res.passed

    def test_random_pairs_interior_and_boundary(self, ctx):
        st = RationalStream(127)
        for _ in range(4):
            pair = GroupPair(st.sl2(), st.sl2())
            p = ProjMatrixPoint(st.nonzero_vector(4))
            assert poisson_action_residual(ctx["model"], ctx["split"], pair, p).passed
            b = ProjMatrixPoint(st.rank_one2())
            assert poisson_action_residual(ctx["model"], ctx["split"], pair, b).passed

    def test_action_map_identities(self, ctx):
        st = RationalStream(131)
        pair = GroupPair(st.sl2(), st.sl2())
        p = ProjMatrixPoint(st.nonzero_vector(4))
        args = [(st.sl2(), st.sl2()) for _ in range(3)]
        assert action_map_identities(ctx["model"], pair, p, args).passed

    def test_grassmann_model_action_identity(self, ctx):
        """The same identity holds in the subspace model, at orbit points
        and at boundary correspondence points."""
        st = RationalStream(133)
        gr = ctx["gr"]
        for k in range(4):
            pair = GroupPair(st.sl2(), st.sl2())
            if k % 2 == 0:
                src = gr.act(GroupPair(st.sl2(), st.sl2()), gr.diagonal_point())
            else:
                src = ctx["model"].lagrangian_of(ProjMatrixPoint(st.rank_one2()))
            res = poisson_action_residual(gr, ctx["split"], pair, src)
            assert res.passed, res.residual

    def test_sl3_action_identity_full_rank(self):
        """Generic rank two: the identity in Gr(8,16) for the sl3 double
        with the standard splitting, exactly."""
        from wonderland.lie import build_sl, double_algebra, standard_splitting

        sl3 = build_sl(3)
        double, form = double_algebra(sl3)
        gr = GrassmannModel(sl3, double, form)
        split = standard_splitting(sl3)
        st = RationalStream(2025)
        src = gr.act(GroupPair(st.sl(3, 3), st.sl(3, 3)), gr.diagonal_point())
        pair = GroupPair(st.sl(3, 3), st.sl(3, 3))
        res = poisson_action_residual(gr, split, pair, src)
        assert res.passed, res.residual

    def test_grassmann_general_tangent_projection(self, ctx):
        """Scaling-row-mixing a representative does not change the
        projected tangent."""
        gr = ctx["gr"]
        st = RationalStream(135)
        src = gr.act(GroupPair(st.sl2(), st.sl2()), gr.diagonal_point())
        chart = gr.chart_at(src)
        rows = src.mat.data
        from wonderland.poisson import grass_flow_velocity

        from wonderland.linalg import Matrix

        vel = grass_flow_velocity(gr, st.vector(6), rows)
        direct = chart.tangent_project(rows, vel)
        while True:
            mix = st.matrix(3, 3, 2)
            if mix.det() != 0:
                break
        mixed_rows = (mix * src.mat).data
        mixed_vel = (mix * Matrix(vel)).data
        assert chart.tangent_project_general(mixed_rows, mixed_vel) == direct


class TestMixedField:
    def test_n1_equals_base_polynomials(self, ctx):
        m1 = mixed_product_field(ctx["model"], ctx["split"], ctx["ch0"], 1)
        for i in range(3):
            for j in range(3):
                assert (
                    m1.entries[i][j].terms
                    == ctx["field0"].entries[i][j].rename(m1.chart.variables).terms
                )

    def test_cross_block_oracle(self, ctx):
        """Term-by-term reconstruction of the cross block at a random point."""
        st = RationalStream(137)
        m2 = mixed_product_field(ctx["model"], ctx["split"], ctx["ch0"], 2)
        z = st.vector(6)
        val = m2.value_at(z)
        ch = ctx["ch0"]
        repA, repB = ch.rep_at(z[:3]), ch.rep_at(z[3:])
        model, s = ctx["model"], ctx["split"]
        for a in range(3):
            for b in range(3):
                want = Q(0)
                for i in range(3):
                    Yj = ch.tangent_project(repA, model.flow_tangent(s.y_basis[i], repA))
                    Xk = ch.tangent_project(repB, model.flow_tangent(s.x_basis[i], repB))
                    want += -Yj[a] * Xk[b]
                assert val.entries[a][3 + b] == want

    def test_value_at_identity_pair_fixture(self, ctx):
        """Frozen: at ([I],[I]) every block vanishes (the x-fields die at I)."""
        m2 = mixed_product_field(ctx["model"], ctx["split"], ctx["ch0"], 2)
        zI = ctx["ch0"].coords_of(ProjMatrixPoint([1, 0, 0, 1]))
        assert m2.value_at(zI + zI).is_zero()

    def test_generic_point_regression_fixture(self, ctx):
        m2 = mixed_product_field(ctx["model"], ctx["split"], ctx["ch0"], 2)
        val = m2.value_at(MIXED_FIXTURE_POINT)
        got = [[str(x) for x in row] for row in val.entries]
        assert got == MIXED_FIXTURE_VALUE

    def test_mixed_jacobi(self, ctx):
        m2 = mixed_product_field(ctx["model"], ctx["split"], ctx["ch0"], 2)
        st = RationalStream(139)
        z = st.vector(6)
        for triple, val in jacobi_sweep(m2, z):
            assert val == 0, triple


class TestDiagonalAction:
    def test_identity_trivial(self, ctx):
        st = RationalStream(149)
        pts = (ProjMatrixPoint(st.nonzero_vector(4)), ProjMatrixPoint(st.nonzero_vector(4)))
        res = diagonal_action_residual(ctx["model"], ctx["split"], GroupPair.identity(), pts)
        assert res.passed

    def test_n1_matches_action_residual(self, ctx):
        st = RationalStream(151)
        g = st.sl2()
        p = ProjMatrixPoint(st.nonzero_vector(4))
        r1 = diagonal_action_residual(ctx["model"], ctx["split"], GroupPair(g, g), (p,))
        r2 = poisson_action_residual(ctx["model"], ctx["split"], GroupPair(g, g), p)
        assert r1.passed and r2.passed

    def test_random_samples_exact(self, ctx):
        st = RationalStream(157)
        for _ in range(3):
            g = st.sl2()
            pts = (
                ProjMatrixPoint(st.nonzero_vector(4)),
                ProjMatrixPoint(st.nonzero_vector(4)),
            )
            res = diagonal_action_residual(ctx["model"], ctx["split"], GroupPair(g, g), pts)
            assert res.passed
            assert res.details["conjugation_action"]

    def test_general_pair_action_also_poisson(self, ctx):
        st = RationalStream(163)
        pair = GroupPair(st.sl2(), st.sl2())
        pts = (
            ProjMatrixPoint(st.nonzero_vector(4)),
            ProjMatrixPoint(st.nonzero_vector(4)),
        )
        assert diagonal_action_residual(ctx["model"], ctx["split"], pair, pts).passed

    def test_three_factors(self, ctx):
        """The cross terms couple every factor pair on a triple product."""
        st = RationalStream(165)
        g = st.sl2()
        pts = tuple(ProjMatrixPoint(st.nonzero_vector(4)) for _ in range(3))
        res = diagonal_action_residual(ctx["model"], ctx["split"], GroupPair(g, g), pts)
        assert res.passed

    def test_boundary_tuple(self, ctx):
        """The identity extends to tuples with boundary factors, where the
        conjugation action degenerates to the induced line actions."""
        st = RationalStream(169)
        for _ in range(3):
            g = st.sl2()
            pts = (
                ProjMatrixPoint(st.rank_one2()),
                ProjMatrixPoint(st.nonzero_vector(4)),
            )
            res = diagonal_action_residual(ctx["model"], ctx["split"], GroupPair(g, g), pts)
            assert res.passed

    def test_mixed_field_on_three_factor_chart_jacobi(self, ctx):
        m3 = mixed_product_field(ctx["model"], ctx["split"], ctx["ch0"], 3)
        st = RationalStream(171)
        z = st.vector(9)
        for triple, val in jacobi_sweep(m3, z):
            assert val == 0, triple

    def test_wrong_cross_sign_fails(self, ctx):
        """Negative control: the opposite cross-term sign breaks the identity."""
        st = RationalStream(167)
        g = st.sl2()
        pts = (
            ProjMatrixPoint(st.nonzero_vector(4)),
            ProjMatrixPoint(st.nonzero_vector(4)),
        )
        res = diagonal_action_residual(
            ctx["model"], ctx["split"], GroupPair(g, g), pts, cross_sign=1
        )
        assert not res.passed


class TestOppositeSplitting:
    """The machinery accepts any validated splitting, not just the standard
    one: the opposite complement (negative roots in the first summand) gives
    a different field that satisfies all the same exact identities."""

    @pytest.fixture()
    def opposite(self, ctx):
        from wonderland.lie import splitting_from_l2

        z3 = [Q(0)] * 3
        e, h, f = ctx["sl2"].basis_vectors()
        l2 = [
            list(f) + z3,                      # (f, 0)
            list(h) + [-x for x in h],         # (h, -h)
            z3 + list(e),                      # (0, e)
        ]
        return splitting_from_l2(ctx["sl2"], l2)

    def test_field_differs_from_standard(self, ctx, opposite):
        f_std = ctx["field0"]
        f_opp = splitting_bivector_field(ctx["model"], ctx["ch0"], opposite)
        assert any(
            f_std.entries[i][j] != f_opp.entries[i][j]
            for i in range(3)
            for j in range(3)
        )

    def test_jacobi_still_exact(self, ctx, opposite):
        f_opp = splitting_bivector_field(ctx["model"], ctx["ch0"], opposite)
        st = RationalStream(191)
        for _ in range(4):
            assert all(v == 0 for _, v in jacobi_sweep(f_opp, st.vector(3)))

    def test_action_identity_still_exact(self, ctx, opposite):
        st = RationalStream(193)
        for _ in range(3):
            pair = GroupPair(st.sl2(), st.sl2())
            p = ProjMatrixPoint(st.nonzero_vector(4))
            assert poisson_action_residual(ctx["model"], opposite, pair, p).passed

    def test_diagonal_action_still_exact(self, ctx, opposite):
        st = RationalStream(197)
        g = st.sl2()
        pts = (
            ProjMatrixPoint(st.nonzero_vector(4)),
            ProjMatrixPoint(st.nonzero_vector(4)),
        )
        assert diagonal_action_residual(ctx["model"], opposite, GroupPair(g, g), pts).passed

    def test_non_complement_rejected(self, ctx):
        """A Lagrangian subalgebra meeting the diagonal is not a splitting."""
        from wonderland.lie import splitting_from_l2

        z3 = [Q(0)] * 3
        e, h, f = ctx["sl2"].basis_vectors()
        bad = [
            list(e) + z3,
            list(h) + [-x for x in h],
            z3 + list(e),
        ]
        with pytest.raises(ValueError):
            splitting_from_l2(ctx["sl2"], bad)


class TestTangency:
    def test_divisor_tangent_at_boundary(self, ctx):
        ch = ctx["ch0"]
        div = ch.det_poly()
        st = RationalStream(173)
        done = 0
        while done < 5:
            p = ProjMatrixPoint(st.rank_one2())
            if p.vec[0] == 0:
                continue
            res = tangency_check(ctx["field0"], [div], ch.coords_of(p))
            assert res.passed
            done += 1

    def test_empty_defining_set_vacuous(self, ctx):
        st = RationalStream(179)
        res = tangency_check(ctx["field0"], [], st.vector(3))
        assert res.passed

    def test_hyperplane_negative_control(self, ctx):
        ch = ctx["ch0"]
        hyper = MultiPoly.var(ch.variables, "b") - 1
        st = RationalStream(181)
        z = [Q(1), st.take(), st.take()]
        res = tangency_check(ctx["field0"], [hyper], z)
        assert not res.passed

    def test_off_subvariety_rejected(self, ctx):
        ch = ctx["ch0"]
        div = ch.det_poly()
        with pytest.raises(ValueError):
            tangency_check(ctx["field0"], [div], [Q(0), Q(0), Q(1)])
