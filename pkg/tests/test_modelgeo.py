import numpy as np
import pytest

from twistcheck import modelgeo as mg

from oracles import (oracle_geodesic_flow, oracle_norm_hamiltonian_time1,
                     oracle_suspension_flow)


def sample(q, p):
    return mg.CotangentSample(np.asarray(q, float), np.asarray(p, float))


def unit(i, dim=3):
    v = np.zeros(dim)
    v[i] = 1.0
    return v


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


class TestSamples:
    def test_valid(self):
        s = sample(unit(0), 0.7 * unit(1))
        assert s.norm == pytest.approx(0.7)

    def test_off_sphere_rejected(self):
        with pytest.raises(mg.ModelError):
            sample(1.1 * unit(0), unit(1))

    def test_non_orthogonal_rejected(self):
        with pytest.raises(mg.ModelError):
            sample(unit(0), unit(0) + unit(1))

    def test_negation_is_fiberwise(self):
        s = sample(unit(0), 0.5 * unit(1))
        m = s.negated()
        assert np.allclose(m.q, s.q) and np.allclose(m.p, -s.p)

    def test_random_batch_invariants(self, rng):
        q, p = mg.random_batch(2, 500, rng, 0.2, 1.5)
        assert np.max(np.abs(np.linalg.norm(q, axis=1) - 1)) < 1e-12
        assert np.max(np.abs(np.sum(q * p, axis=1))) < 1e-12
        norms = np.linalg.norm(p, axis=1)
        assert norms.min() >= 0.2 and norms.max() <= 1.5


class TestProfiles:
    def test_dehn_exact_linear_head(self):
        nu = mg.ProfileFunction("dehn", epsilon=0.8)
        r = np.linspace(0.0, 0.2, 101)
        assert np.array_equal(nu(r), np.pi - r)

    def test_dehn_strictly_decreasing_and_cutoff(self):
        nu = mg.ProfileFunction("dehn", epsilon=0.8)
        r = np.linspace(1e-6, 0.8 - 1e-6, 1000)
        v = nu(r)
        d = np.diff(v)
        assert np.all(d <= 0)
        # strict except where the tail has underflowed to zero at
        # double precision (the profile is exponentially flat there)
        assert np.all(d[v[1:] > 1e-9] < 0)
        assert np.all(v >= 0) and np.all(v < np.pi)
        assert np.all(nu(np.linspace(0.8, 3.0, 50)) == 0.0)

    def test_admissible_contract(self):
        nu = mg.ProfileFunction("admissible", epsilon=0.5, lam=2.0)
        assert float(nu(0.0)) == 2.0
        r = np.linspace(1e-4, 0.5 - 1e-4, 1000)
        v = nu(r)
        d = np.diff(v)
        assert np.all(d <= 0)
        # strict away from the two exponentially flat plateaus
        mid = (v[1:] > 1e-9) & (v[1:] < 2.0 - 1e-9)
        assert mid.sum() > 500 and np.all(d[mid] < 0)
        assert np.all(nu(np.linspace(0.5, 2.0, 20)) == 0.0)

    def test_admissible_flat_ends(self):
        nu = mg.ProfileFunction("admissible", epsilon=0.5, lam=1.0)
        assert nu.flatness_certificate(0.0) < 1e-12
        assert nu.flatness_certificate(0.5) < 1e-12

    def test_derivative_matches_finite_differences(self):
        h = 1e-6
        for nu in (mg.ProfileFunction("dehn", epsilon=0.7),
                   mg.ProfileFunction("admissible", epsilon=0.7, lam=2.5)):
            r = np.linspace(0.05, 0.65, 40)
            fd = (nu(r + h) - nu(r - h)) / (2 * h)
            assert np.max(np.abs(nu.derivative(r) - fd)) < 1e-7

    def test_invalid_parameters(self):
        with pytest.raises(mg.ModelError):
            mg.ProfileFunction("dehn", epsilon=-1.0)
        with pytest.raises(mg.ModelError):
            mg.ProfileFunction("admissible", epsilon=1.0, lam=4.0)
        with pytest.raises(mg.ModelError):
            mg.ProfileFunction("dehn", epsilon=1.0, lam=1.0)
        with pytest.raises(mg.ModelError):
            mg.ProfileFunction("bogus", epsilon=1.0)


class TestGeodesicFlow:
    def test_quarter_great_circle(self):
        out = mg.geodesic_flow(sample(unit(0), unit(1)), np.pi / 2)
        assert np.allclose(out.q, unit(1), atol=1e-15)
        assert np.allclose(out.p, -unit(0), atol=1e-15)

    def test_periodicity(self, rng):
        s = mg.random_sample(2, rng)
        out = mg.geodesic_flow(s, 2 * np.pi)
        assert s.distance(out) < 1e-12

    def test_zero_section_rejected(self):
        with pytest.raises(mg.ModelError):
            mg.geodesic_flow(sample(unit(0), np.zeros(3)), 0.3)

    def test_matches_rk4_oracle(self, rng):
        for dim in (1, 2):
            q, p = mg.random_batch(dim, 60, rng, 0.1, 2.0)
            t = rng.uniform(-3.0, 3.0, size=60)
            q1, p1 = mg._flow(q, p, t)
            q2, p2 = oracle_geodesic_flow(q, p, t)
            assert np.max(np.abs(q1 - q2)) < 1e-8
            assert np.max(np.abs(p1 - p2)) < 1e-8

    def test_invariants(self, rng):
        q, p = mg.random_batch(3, 300, rng, 0.05, 2.5)
        t = rng.uniform(-5, 5, size=300)
        q1, p1 = mg._flow(q, p, t)
        assert np.max(np.abs(np.linalg.norm(q1, axis=1) - 1)) < 1e-10
        assert np.max(np.abs(np.sum(q1 * p1, axis=1))) < 1e-10
        assert np.max(np.abs(np.linalg.norm(p1, axis=1)
                             - np.linalg.norm(p, axis=1))) < 1e-10

    def test_flow_property(self, rng):
        q, p = mg.random_batch(2, 200, rng, 0.1, 2.0)
        s = rng.uniform(-2, 2, size=200)
        t = rng.uniform(-2, 2, size=200)
        qa, pa = mg._flow(*mg._flow(q, p, t), s)
        qb, pb = mg._flow(q, p, s + t)
        assert np.max(np.abs(qa - qb)) < 1e-9
        assert np.max(np.abs(pa - pb)) < 1e-9


class TestModelTwist:
    def setup_method(self):
        self.nu = mg.ProfileFunction("dehn", epsilon=0.5)

    def test_zero_section_antipode_exact(self):
        s = sample(unit(2), np.zeros(3))
        out = mg.model_dehn_twist(s, self.nu)
        assert np.array_equal(out.q, -s.q)
        assert np.array_equal(out.p, s.p)

    def test_identity_outside_support(self):
        s = sample(unit(0), 0.6 * unit(1))
        out = mg.model_dehn_twist(s, self.nu)
        assert s.distance(out) == 0.0

    def test_continuity_across_zero_section(self):
        prev = None
        for delta in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
            s = sample(unit(0), delta * unit(1))
            out = mg.model_dehn_twist(s, self.nu)
            resid = max(np.max(np.abs(out.q + unit(0))),
                        np.max(np.abs(out.p)))
            if prev is not None:
                assert resid < prev
            prev = resid
        assert prev < 1e-5

    def test_inverse_round_trip(self, rng):
        s = mg.random_sample(2, rng, 0.05, 0.45)
        out = mg.model_dehn_twist_inverse(mg.model_dehn_twist(s, self.nu),
                                          self.nu)
        assert s.distance(out) < 1e-12

    @pytest.mark.parametrize("dim", [1, 2])
    def test_report(self, dim):
        rep = mg.verify_model_twist(self.nu, dim, samples=2000, seed=7,
                                    tolerance=1e-5)
        assert rep.passed, rep.as_dict()
        assert rep.residuals["zero_section_antipode"] == 0.0
        assert rep.residuals["identity_region"] == 0.0
        assert rep.residuals["symplectic"] < 1e-5
        assert rep.details["continuity_monotone"]


class TestC0Star:
    def test_id_kind(self):
        s = sample(unit(0), 0.4 * unit(1))
        out = mg.c0_star(s, "id")
        assert np.array_equal(out.q, s.q) and np.array_equal(out.p, -s.p)

    def test_r_kind(self):
        out = mg.c0_star(sample(unit(0), unit(1)), "r")
        assert np.array_equal(out.q, -unit(0))
        assert np.array_equal(out.p, -unit(1))

    def test_involution_exact(self, rng):
        for kind in mg.KINDS:
            q, p = mg.random_batch(2, 500, rng, 0.0, 2.0)
            q2, p2 = mg._c0(*mg._c0(q, p, kind), kind)
            assert np.array_equal(q2, q) and np.array_equal(p2, p)

    def test_unknown_kind(self):
        with pytest.raises(mg.ModelError):
            mg.c0_star(sample(unit(0), unit(1)), "swap")


class TestLemmaIdentities:
    @pytest.mark.parametrize("kind", ["id", "r"])
    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_residuals(self, kind, dim):
        rep = mg.verify_lemma_identities(kind, dim, samples=3000, seed=11,
                                         tolerance=1e-9)
        assert rep.passed, rep.as_dict()

    def test_zero_time_reduction(self, rng):
        # at s = 0 the conjugation identity collapses to c = c
        s = mg.random_sample(2, rng)
        c = mg.c0_star(s, "id")
        inner = mg.c0_star(s.negated().negated(), "id")
        assert c.distance(inner) == 0.0


class TestHandle:
    def setup_method(self):
        self.nu = mg.ProfileFunction("admissible", epsilon=0.5, lam=2.0)

    def test_p_zero_reduces_to_flow_handle(self, rng):
        xi = mg.random_sample(2, rng, 0.1, 0.4)
        hp = mg.handle_point(xi, 0.0, 0.3, self.nu)
        direct = mg.geodesic_flow(xi.negated(), float(self.nu(xi.norm)))
        assert hp.xi1.distance(xi) == 0.0
        assert hp.xi2.distance(direct) < 1e-12
        assert hp.z == pytest.approx(0.3)

    def test_zero_fiber_flows_time_zero(self):
        xi = sample(unit(0), np.zeros(3))
        hp = mg.handle_point(xi, 0.2, 0.0, self.nu)
        assert np.array_equal(hp.xi2.q, xi.q)
        assert np.array_equal(hp.xi2.p, np.zeros(3))
        assert hp.z.imag == pytest.approx(-0.2)

    def test_domain_enforced(self, rng):
        xi = mg.random_sample(2, rng, 0.4, 0.45)
        with pytest.raises(mg.ModelError):
            mg.handle_point(xi, 0.4, 0.0, self.nu)
        with pytest.raises(mg.ModelError):
            mg.handle_point(sample(unit(0), np.zeros(3)), 0.0, 0.1, self.nu)

    @pytest.mark.parametrize("kind", ["id", "r"])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_symmetry(self, kind, dim):
        rep = mg.verify_handle_symmetry(kind, self.nu, dim, samples=3000,
                                        seed=13, tolerance=1e-9)
        assert rep.passed, rep.as_dict()


class TestSuspension:
    def setup_method(self):
        self.nu0 = mg.ProfileFunction("admissible", epsilon=0.5, lam=1.5)

    def test_zero_hamiltonian_reduces_to_handle(self):
        rep = mg.verify_suspension_symmetry(
            "id", self.nu0, mg.NormHamiltonian.zero(), 2, samples=2000,
            seed=17, tolerance=1e-9)
        assert rep.passed, rep.as_dict()

    @pytest.mark.parametrize("kind", ["id", "r"])
    def test_bump_closed_form(self, kind):
        rep = mg.verify_suspension_symmetry(
            kind, self.nu0, mg.NormHamiltonian.bump_squared(), 2,
            samples=2000, seed=19, tolerance=1e-9)
        assert rep.passed, rep.as_dict()
        # K vanishes at the endpoints, so z stays real there
        assert rep.residuals["z"] < 1e-9

    def test_bump_ode_oracle_path(self):
        rep = mg.verify_suspension_symmetry(
            "id", self.nu0, mg.NormHamiltonian.bump_squared(), 1,
            samples=1000, seed=23, tolerance=1e-6,
            flow=oracle_suspension_flow, t_chunks=10)
        assert rep.passed, rep.as_dict()

    def test_ode_matches_closed_form(self, rng):
        K = mg.NormHamiltonian.bump_squared(scale=0.8)
        q, p = mg.random_batch(2, 40, rng, 0.05, 0.4)
        a = mg._suspension_flow(q, p, 0.7, self.nu0, K)
        b = oracle_suspension_flow(q, p, 0.7, self.nu0, K)
        for x, y in zip(a, b):
            assert np.max(np.abs(x - y)) < 1e-6

    def test_norm_contract_accepts_and_rejects(self):
        good = mg.NormHamiltonian.from_pointwise(
            lambda t, x1, x2: t * (1 - t) * x1.norm ** 2, dim=2)
        assert abs(float(good.value(0.5, 0.3, 1.0)) - 0.25 * 0.09) < 1e-12
        with pytest.raises(mg.ModelError):
            mg.NormHamiltonian.from_pointwise(
                lambda t, x1, x2: float(x1.q[0]), dim=2)

    def test_endpoint_vanishing_enforced(self):
        one = lambda t, n1, n2: np.ones_like(np.asarray(n1, float))
        K = mg.NormHamiltonian(value=one, d1=one, d2=one)
        with pytest.raises(mg.ModelError):
            mg.verify_suspension_symmetry("id", self.nu0, K, 1,
                                          samples=100, seed=1)


class TestSplitting:
    @pytest.mark.parametrize("kind", ["id", "r"])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_report(self, kind, dim):
        nu = mg.ProfileFunction("dehn", epsilon=0.5)
        rep = mg.verify_involution_splitting(kind, nu, dim, samples=2000,
                                             seed=29)
        assert rep.residuals["involution"] < 1e-10, rep.as_dict()
        assert rep.residuals["conjugation"] < 1e-8
        assert rep.residuals["antisymplectic_c"] < 1e-5
        assert rep.residuals["antisymplectic_ctilde"] < 1e-5


class TestMoser:
    def test_identity_fixed_point(self, rng):
        ident = lambda xi: xi
        resc = mg.moser_rescale(ident, 0.25, dim=2)
        s = mg.random_sample(2, rng)
        assert resc(s).distance(s) < 1e-12

    def test_t_one_returns_map(self):
        ident = lambda xi: xi
        assert mg.moser_rescale(ident, 1.0, dim=2) is ident

    def test_invalid_t(self):
        with pytest.raises(mg.ModelError):
            mg.moser_rescale(lambda xi: xi, 0.0, dim=2)

    def test_zero_section_violation_rejected(self):
        rot = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])

        def psi(xi):
            return mg.CotangentSample(rot @ xi.q, rot @ xi.p)

        with pytest.raises(mg.ModelError):
            mg.moser_rescale(psi, 0.5, dim=2)

    def test_richardson_limit_of_compact_flow(self, rng):
        # psi = time-1 flow of H = g(|p|), g compactly supported and
        # quadratic near the zero section, evaluated by the ODE oracle
        big_r = 1.2

        def gprime(r):
            x = r / big_r
            return (2 * r * (1.0 - mg.smooth_step(x))
                    - r ** 2 * mg.smooth_step_derivative(x) / big_r)

        def psi(xi):
            q, p = oracle_norm_hamiltonian_time1(
                gprime, xi.q[None, :], xi.p[None, :])
            return mg.CotangentSample(q[0], p[0])

        s = mg.random_sample(2, rng, 0.4, 0.8)
        images = []
        for t in (1e-1, 1e-2, 1e-3, 1e-4):
            out = mg.moser_rescale(psi, t, dim=2)(s)
            images.append(np.concatenate([out.q, out.p]))
        # one Richardson sweep with step ratio 10 kills the O(t) term
        extrap = [(10 * b - a) / 9 for a, b in zip(images, images[1:])]
        target = np.concatenate([s.q, s.p])
        assert np.max(np.abs(extrap[-1] - target)) < 1e-6
        raw_err = np.max(np.abs(images[-1] - target))
        assert np.max(np.abs(extrap[-1] - target)) < raw_err
