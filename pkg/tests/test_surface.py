import numpy as np
import pytest

from twistcheck import gf2 as g
from twistcheck import scenarios as sc
from twistcheck import surface as sf


def polygon_surface(genus):
    word = []
    for i in range(genus):
        word += [f"a{i}", f"b{i}", f"a{i}'", f"b{i}'"]
    return sf.Surface([word])


class TestBuild:
    def test_octagon_genus2(self):
        s = polygon_surface(2)
        assert s.euler() == -2 and s.genus() == 2
        assert (s.n_vertices, s.n_edges, s.n_faces) == (1, 4, 1)

    def test_square_torus(self):
        s = sf.Surface([["a", "b", "a'", "b'"]])
        assert s.genus() == 1

    def test_nonorientable_rejected(self):
        with pytest.raises(sf.NonOrientableError):
            sf.Surface([["a", "a", "b", "b'"]])

    def test_bad_edge_count_rejected(self):
        with pytest.raises(sf.NonSurfaceError):
            sf.Surface([["a", "b", "a'"]])

    def test_disconnected_rejected(self):
        with pytest.raises(sf.DisconnectedError):
            sf.Surface([["a", "b", "a'", "b'"], ["c", "d", "c'", "d'"]])

    def test_corpus_cell_counts(self):
        s2 = sc.genus2_scenario().surface
        assert s2.euler() == -2 and s2.genus() == 2
        s3 = sc.genus3_scenario().surface
        assert s3.euler() == -4 and s3.genus() == 3
        sx = sc.genus2_crossing_scenario().surface
        assert sx.genus() == 2


class TestSubdivide:
    def test_chi_invariant(self):
        s = sc.genus2_scenario().surface
        assert sf.subdivide(s, 1).euler() == -2

    def test_strictly_finer(self):
        t1 = sf.subdivide(sf.Surface([["a", "b", "a'", "b'"]]), 1)
        t2 = sf.subdivide(sf.Surface([["a", "b", "a'", "b'"]]), 2)
        assert t1.genus() == t2.genus() == 1
        assert t2.n_edges > t1.n_edges

    def test_zero_is_identity(self):
        s = sc.genus2_scenario().surface
        assert sf.subdivide(s, 0) is s

    def test_curve_transport(self):
        scen = sc.genus2_scenario()
        fine, emap = scen.surface.refined(1)
        S2 = scen.s_curve.mapped(fine, emap)
        assert len(S2) == 2 * len(scen.s_curve)
        cut = sf.cut_along(fine, [S2])
        assert len(cut.components) == 2


class TestCohomology:
    def test_closed_genus_g(self):
        for genus in range(1, 6):
            h = sf.cellular_cohomology(polygon_surface(genus))
            assert h.dims == {0: 1, 1: 2 * genus, 2: 1}

    def test_genus2_cut(self):
        scen = sc.genus2_scenario()
        cut = sf.cut_along(scen.surface, [scen.s_curve])
        h = sf.cellular_cohomology(cut)
        assert h.dims == {0: 2, 1: 4}

    def test_torus_cut_annulus(self):
        scen = sc.torus_scenario()
        cut = sf.cut_along(scen.surface, [scen.s_curve])
        assert len(cut.components) == 1
        assert cut.components[0].is_annulus()
        h = sf.cellular_cohomology(cut)
        assert h.dims == {0: 1, 1: 1}


class TestCut:
    def test_genus2_separating(self):
        scen = sc.genus2_scenario()
        cut = sf.cut_along(scen.surface, [scen.s_curve])
        assert sorted(c.euler() for c in cut.components) == [-1, -1]
        assert all(len(c.boundary) == 1 for c in cut.components)

    def test_genus3_unequal_pieces(self):
        scen = sc.genus3_scenario()
        cut = sf.cut_along(scen.surface, [scen.s_curve])
        assert sorted(c.euler() for c in cut.components) == [-3, -1]

    def test_chi_additivity_on_grid(self):
        s = sc.grid_torus(4)
        row = sc.grid_row(s, 4, 0)
        cut = sf.cut_along(s, [row])
        assert sum(c.euler() for c in cut.components) == 0

    def test_nonseparating_on_genus2(self):
        scen = sc.genus2_scenario()
        cut = sf.cut_along(scen.surface, [scen.curve("beta1")])
        assert len(cut.components) == 1
        assert cut.components[0].euler() == -2

    def test_contractibility(self):
        s = sc.grid_torus(4)
        square = sc.grid_path_curve(s, 4, [(0, 0), (1, 0), (1, 1), (0, 1)])
        assert square.is_contractible()
        assert not sc.grid_row(s, 4, 0).is_contractible()
        assert not sc.torus_scenario().s_curve.is_contractible()


class TestCurveValidation:
    def test_broken_curve(self):
        s = sc.grid_torus(3)
        with pytest.raises(sf.CurveError):
            sf.Curve.from_symbols(s, ["h0_0", "h0_1", "h1_0", "h2_0"])

    def test_repeated_edge(self):
        s = sf.Surface([["a", "b", "a'", "b'"]])
        with pytest.raises(sf.CurveError):
            sf.Curve.from_symbols(s, ["a", "a"])

    def test_vertex_revisit(self):
        s = sc.grid_torus(4)
        # figure eight through (0,0)
        path = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (3, 0), (3, 3),
                (0, 3)]
        with pytest.raises(sf.CurveError):
            sc.grid_path_curve(s, 4, path)

    def test_reversal(self):
        scen = sc.genus2_scenario()
        r = scen.s_curve.reversed()
        assert r.edges == scen.s_curve.edges
        assert r.darts != scen.s_curve.darts


class TestInvolution:
    def test_genus2_swap_valid(self):
        scen = sc.genus2_scenario()
        ok, diag = sf.validate_involution(scen.surface, scen.involution)
        assert ok, diag

    def test_identity_rejected(self):
        s = sf.Surface([["a", "b", "a'", "b'"]])
        ident = sf.Involution.from_cycles(s, [])
        ok, diag = sf.validate_involution(s, ident)
        assert not ok and any("orientation" in d for d in diag)

    def test_quarter_rotation_rejected(self):
        s = sf.Surface([["a", "b", "a'", "b'"]])
        rot = sf.Involution.from_cycles(s, [["a", "b", "a'", "b'"]])
        ok, diag = sf.validate_involution(s, rot)
        assert not ok and any("order" in d for d in diag)

    def test_corpus_involutions_valid(self):
        for scen in (sc.torus_scenario(), sc.genus2_scenario(),
                     sc.genus2_scenario(component_preserving=True),
                     sc.genus3_scenario()):
            assert scen.involution.is_valid(), scen.description
            assert scen.involution.preserves_curve(scen.s_curve)

    def test_swap_induced_degree0(self):
        scen = sc.genus2_scenario()
        ind, _ = sf.involution_induced_map(scen.surface, scen.s_curve,
                                           scen.involution)
        assert (ind[0] == g.gf2([[0, 1], [1, 0]])).all()

    def test_component_preserving_degree0(self):
        scen = sc.genus2_scenario(component_preserving=True)
        ind, _ = sf.involution_induced_map(scen.surface, scen.s_curve,
                                           scen.involution)
        assert (ind[0] == g.eye(2)).all()

    def test_torus_degree0(self):
        scen = sc.torus_scenario()
        ind, _ = sf.involution_induced_map(scen.surface, scen.s_curve,
                                           scen.involution)
        assert (ind[0] == g.eye(1)).all()

    def test_induced_squares_to_identity(self):
        for scen in (sc.torus_scenario(), sc.genus2_scenario(),
                     sc.genus2_scenario(component_preserving=True),
                     sc.genus3_scenario()):
            ind, _ = sf.involution_induced_map(scen.surface, scen.s_curve,
                                               scen.involution)
            for k, m in ind.items():
                assert (g.matmul(m, m) == g.eye(m.shape[0])).all(), \
                    (scen.description, k)

    def test_curve_not_preserved_rejected(self):
        scen = sc.genus2_scenario()
        with pytest.raises(sf.InvolutionError):
            sf.involution_induced_map(scen.surface, scen.curve("beta1"),
                                      scen.involution)
