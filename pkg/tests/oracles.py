"""Independent brute-force oracles used by the test suite.

Everything here is deliberately naive and shares no code with the package:
row reduction is a fresh textbook elimination, homology ranks come from
rank-nullity, induced maps on homology from explicit coset enumeration.
"""

from __future__ import annotations

import itertools

import numpy as np


def naive_rank_gf2(rows) -> int:
    """Gaussian elimination on python ints, one bit per column."""
    m = [int("".join(str(int(x)) for x in row), 2) if len(row) else 0
         for row in rows]
    width = len(rows[0]) if len(rows) else 0
    rank = 0
    for col in range(width):
        bit = 1 << (width - 1 - col)
        pivot = None
        for i in range(rank, len(m)):
            if m[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and (m[i] & bit):
                m[i] ^= m[rank]
        rank += 1
    return rank


def oracle_homology_ranks(dims: dict[int, int],
                          diffs: dict[int, np.ndarray]) -> dict[int, int]:
    """dim H^k = nullity(d_k) - rank(d_{k-1}) via the naive eliminator."""
    out = {}
    for k, n in dims.items():
        dk = diffs.get(k)
        rk = naive_rank_gf2(dk.tolist()) if dk is not None and dk.size else 0
        dprev = diffs.get(k - 1)
        rprev = (naive_rank_gf2(dprev.tolist())
                 if dprev is not None and dprev.size else 0)
        out[k] = (n - rk) - rprev
    return out


def enumerate_space(basis_cols: np.ndarray):
    """All vectors of the GF(2) span of the given columns."""
    n, k = basis_cols.shape
    vecs = set()
    for coeffs in itertools.product((0, 1), repeat=k):
        v = np.zeros(n, dtype=np.uint8)
        for c, j in zip(coeffs, range(k)):
            if c:
                v ^= basis_cols[:, j]
        vecs.add(tuple(int(x) for x in v))
    return vecs


def oracle_induced_matrix(ker_s, img_s, ker_t, img_t, f_mat,
                          reps_s, reps_t) -> np.ndarray:
    """Induced map on H = ker/img by explicit coset arithmetic.

    For each source representative, finds the unique target representative
    combination whose coset contains the mapped vector, by enumerating the
    target image subspace.  Feasible for dims <= 8.
    """
    img_span = enumerate_space(img_t)
    n_t = reps_t.shape[1]
    n_s = reps_s.shape[1]
    out = np.zeros((n_t, n_s), dtype=np.uint8)
    for j in range(n_s):
        v = (f_mat @ reps_s[:, j]) % 2
        found = False
        for coeffs in itertools.product((0, 1), repeat=n_t):
            w = np.zeros_like(v)
            for c, t in zip(coeffs, range(n_t)):
                if c:
                    w ^= reps_t[:, t]
            if tuple(int(x) for x in (v ^ w)) in img_span:
                out[:, j] = coeffs
                found = True
                break
        if not found:
            raise AssertionError("mapped class not found in any coset")
    return out


def flat_torus_crossings(a, b, c, d):
    """Minimal crossing number of flat-torus lines of classes (a, b) and
    (c, d): the absolute value of the determinant."""
    return abs(a * d - b * c)


# ---------------------------------------------------------------------------
# ODE integration oracles for the model geometry.  These integrate the
# relevant Hamiltonian vector fields numerically and never touch the
# closed-form trigonometric solutions they are used to certify.


def rk4(field, y0, t0, t1, steps):
    """Classical fixed-step Runge-Kutta 4 for dy/dt = field(t, y).

    y may be an arbitrary-shape numpy array (batched states welcome).
    """
    y = np.array(y0, dtype=float)
    h = (t1 - t0) / steps
    t = t0
    for _ in range(steps):
        k1 = field(t, y)
        k2 = field(t + h / 2, y + h / 2 * k1)
        k3 = field(t + h / 2, y + h / 2 * k2)
        k4 = field(t + h, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def _geodesic_field(q, p):
    """Hamiltonian vector field of (q, p) -> |p| on T*S^n, written in
    ambient coordinates with the sphere constraint eliminated by a
    Lagrange multiplier: dq = p/|p|, dp = -|p| q."""
    norms = np.linalg.norm(p, axis=-1, keepdims=True)
    return p / norms, -norms * q


def oracle_geodesic_flow(q, p, t, steps=800):
    """Integrate the normalized geodesic flow by RK4.

    q, p are batches of shape (rows, n+1); per-row flow times are
    handled by rescaling the field.
    """
    q = np.atleast_2d(np.asarray(q, dtype=float))
    p = np.atleast_2d(np.asarray(p, dtype=float))
    tarr = np.broadcast_to(np.asarray(t, dtype=float), (q.shape[0],))

    def field(_, y):
        qq, pp = y[0], y[1]
        dq, dp = _geodesic_field(qq, pp)
        return np.stack([tarr[:, None] * dq, tarr[:, None] * dp])

    out = rk4(field, np.stack([q, p]), 0.0, 1.0, steps)
    return out[0], out[1]


def oracle_suspension_flow(q, p, t, nu0, K, steps=600):
    """ODE path for the suspension: seed the nu0-handle points from the
    batch xi = (q, p), then integrate the Hamiltonian vector field of
    K_t(|p1|, |p2|) on the product, tracking the accumulated per-factor
    flow times a and b as extra state.

    Matches the signature of the closed-form evaluator inside
    twistcheck.modelgeo.verify_suspension_symmetry.
    """
    q = np.atleast_2d(np.asarray(q, dtype=float))
    p = np.atleast_2d(np.asarray(p, dtype=float))
    n = np.linalg.norm(p, axis=1)
    q2, p2 = oracle_geodesic_flow(q, -p, nu0(n), steps=steps)
    a = np.zeros_like(n)
    b = np.zeros_like(n)
    if t == 0.0:
        return q.copy(), p.copy(), q2, p2, a, b

    rows = q.shape[0]
    dim = q.shape[1]

    def field(s, y):
        q1, p1, q2, p2 = y[0], y[1], y[2], y[3]
        n1 = np.linalg.norm(p1, axis=-1)
        n2 = np.linalg.norm(p2, axis=-1)
        s1 = np.asarray(K.d1(s, n1, n2), dtype=float)
        s2 = np.asarray(K.d2(s, n1, n2), dtype=float)
        dq1, dp1 = _geodesic_field(q1, p1)
        dq2, dp2 = _geodesic_field(q2, p2)
        out = np.zeros_like(y)
        out[0] = s1[:, None] * dq1
        out[1] = s1[:, None] * dp1
        out[2] = s2[:, None] * dq2
        out[3] = s2[:, None] * dp2
        out[4, :, 0] = s1
        out[5, :, 0] = s2
        return out

    state = np.zeros((6, rows, dim))
    state[0], state[1], state[2], state[3] = q, p, q2, p2
    out = rk4(field, state, 0.0, t, steps)
    return (out[0], out[1], out[2], out[3],
            out[4][:, 0], out[5][:, 0])


def oracle_norm_hamiltonian_time1(gprime, q, p, steps=400):
    """Time-1 flow of a Hamiltonian H(q, p) = g(|p|) by RK4.

    gprime is the derivative of g; the field is
    (g'(|p|)/|p|) p for q and -g'(|p|) |p| q for p, with the zero
    section held fixed.
    """
    q = np.atleast_2d(np.asarray(q, dtype=float))
    p = np.atleast_2d(np.asarray(p, dtype=float))

    def field(_, y):
        qq, pp = y[0], y[1]
        norms = np.linalg.norm(pp, axis=-1, keepdims=True)
        safe = np.where(norms > 0, norms, 1.0)
        speed = np.where(norms > 0, gprime(safe) / safe, 0.0)
        return np.stack([speed * pp, -speed * safe ** 2 * qq])

    out = rk4(field, np.stack([q, p]), 0.0, 1.0, steps)
    return out[0], out[1]
