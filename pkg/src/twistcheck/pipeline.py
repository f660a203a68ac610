"""The headline computation pipeline.

Ties the layers together for a TwistScenario (a surface, a twist curve
S, an orientation-reversing cell involution preserving S, and optional
test curves Q, N):

  * hf_inverse_twist: the rank surrogate for HF*(tau_S^{-1}), namely
    the cellular cohomology of the surface cut along S, with the
    distinguished degree-0 basis of component indicators;
  * distinguished_element: the class A, the image of the unit under
    restriction to the complement -- always the all-ones component
    vector, and in particular nonzero;
  * involution_action: the matrices of c* on the cut cohomology;
  * verify_theorem_A: c*(A) = A and the supporting sanity verdicts;
  * les_rank_check: the rank-level shadow of the twist long exact
    sequence on a triple (S, Q, N).  One triangle governs one twist:
    with r1 = rank hf(S,N) * rank hf(Q,S) (Kunneth, the same at every
    power because tau_S fixes S), exactness forces, for consecutive
    ranks a = rank hf(Q, tau^{j-1} N) and b = rank hf(Q, tau^j N),
    |b - a| <= r1,  b >= r1 - a,  and chi2(b) = chi2(r1) + chi2(a)
    where chi2 is the mod-2 Euler characteristic.  These inequalities,
    together with the parity identity, are the complete rank-level
    consequence of exactness: a three-periodic exact triangle with
    corner ranks (r1, a, b) exists precisely when all three hold.  A
    power k is audited as |k| consecutive steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from . import floer as fl
from . import gf2 as g
from . import surface as sf
from .report import VerificationReport, emit_report, graded, matrix
from .scenarios import TwistScenario

__all__ = [
    "PipelineError",
    "AClass",
    "hf_inverse_twist",
    "distinguished_element",
    "involution_action",
    "verify_theorem_A",
    "les_rank_check",
    "emit_report",
    "chi2",
]


class PipelineError(ValueError):
    """Invalid scenario or unusable curve configuration."""


@dataclass(frozen=True)
class AClass:
    """The distinguished degree-0 class in the component basis."""

    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.uint8)
        object.__setattr__(self, "vector", v)
        if not v.any():
            raise PipelineError("the distinguished class must be nonzero")

    def as_list(self):
        return [int(x) for x in self.vector]


def _check_scenario(scenario: TwistScenario, need_involution: bool = False):
    if scenario.s_curve.is_contractible():
        raise PipelineError("the twist curve S must be noncontractible")
    if need_involution:
        if scenario.involution is None:
            raise PipelineError("scenario has no involution")
        scenario.involution.require_valid()
        if not scenario.involution.preserves_curve(scenario.s_curve):
            raise PipelineError("the involution must preserve S")


def hf_inverse_twist(scenario: TwistScenario
                     ) -> Tuple[g.GradedDims, sf.CutResult]:
    """Graded ranks of the HF*(tau_S^{-1}) surrogate.

    Returns the cellular cohomology of the surface cut along S together
    with the cut itself, whose component list is the distinguished
    degree-0 basis.
    """
    _check_scenario(scenario)
    cut = sf.cut_along(scenario.surface, [scenario.s_curve])
    return sf.cellular_cohomology(cut), cut


def distinguished_element(scenario: TwistScenario) -> AClass:
    """The class A: restriction of the unit to the complement of S.

    In the component-indicator basis of degree 0 this is the all-ones
    vector, one entry per connected component of the cut surface; it is
    never zero.
    """
    _, cut = hf_inverse_twist(scenario)
    return AClass(np.ones(len(cut.components), dtype=np.uint8))


def involution_action(scenario: TwistScenario) -> Dict[int, np.ndarray]:
    """Matrices of c* on the cut cohomology, per degree."""
    _check_scenario(scenario, need_involution=True)
    ind, _ = sf.involution_induced_map(scenario.surface, scenario.s_curve,
                                       scenario.involution)
    return ind


def _is_permutation(m: np.ndarray) -> bool:
    return bool((m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 1).all())


def verify_theorem_A(scenario: TwistScenario) -> VerificationReport:
    """The fixed-point statement: c* fixes the distinguished class A.

    Since c permutes the components of the cut surface and A is the
    all-ones component vector, the verdict must pass for every valid
    scenario; a failure indicates an implementation bug.
    """
    dims, cut = hf_inverse_twist(scenario)
    a = distinguished_element(scenario)
    ind = involution_action(scenario)
    m0 = ind[0]
    image = (m0 @ a.vector) % 2

    verdicts = {
        "a_nonzero": bool(a.vector.any()),
        "c_star_fixes_a": bool((image == a.vector).all()),
        "degree0_is_permutation": _is_permutation(m0),
        "c_star_squares_to_identity": all(
            bool((g.matmul(m, m) == g.eye(m.shape[0])).all())
            for m in ind.values()),
    }
    data = {
        "ranks": graded(dims),
        "components": len(cut.components),
        "a": a.as_list(),
        "c_star": {str(k): matrix(m) for k, m in sorted(ind.items())},
    }
    return VerificationReport("theorem-A check", scenario.description,
                              data=data, verdicts=verdicts)


def chi2(dims: g.GradedDims) -> int:
    """Mod-2 Euler characteristic of a mod-2 graded rank vector."""
    return dims.total() % 2


def _kunneth(a: g.GradedDims, b: g.GradedDims) -> g.GradedDims:
    """Graded ranks of the tensor product, via an honest tensor of
    zero-differential complexes."""
    ca = g.ChainComplex(a, {}, mod2=True)
    cb = g.ChainComplex(b, {}, mod2=True)
    return g.tensor_complex(ca, cb).homology()


def les_rank_check(scenario: TwistScenario) -> VerificationReport:
    """Rank bookkeeping of the twist exact sequence on (S, Q, N)."""
    _check_scenario(scenario)
    S, Q, N = scenario.s_curve, scenario.q_curve, scenario.n_curve
    if Q is None or N is None:
        raise PipelineError("les_rank_check needs both test curves Q and N")
    for curve, label in ((Q, "Q"), (N, "N")):
        if curve.is_contractible():
            raise PipelineError(f"test curve {label} must be "
                                "noncontractible")
    k = scenario.twist_power

    try:
        hf_sn = fl.rank_hf(S, N)
        hf_qs = fl.rank_hf(Q, S)
        hf_qn = fl.rank_hf(Q, N)
        crossings = ([] if N.edges == S.edges
                     else fl.find_intersections(N, S))
    except fl.NonTransverseError as exc:
        raise PipelineError(f"curve pair not transversalizable: {exc}")

    r1g = _kunneth(hf_sn, hf_qs)

    # One exact triangle governs one twist, so a power k is audited as
    # |k| consecutive steps comparing HF(Q, tau^j N) with
    # HF(Q, tau^{j-1} N); the Kunneth corner is the same at every step
    # because tau_S fixes S.
    sequence = [hf_qn]
    step = 1 if k > 0 else -1
    if k != 0 and N.edges != S.edges and crossings:
        for j in range(1, abs(k) + 1):
            try:
                out = fl.dehn_twist(scenario.surface, S, j * step,
                                    twist=[N], carry=[Q])
                sequence.append(fl.rank_hf(out.carried[0], out.twisted[0]))
            except fl.NonTransverseError as exc:
                raise PipelineError("transversality unachievable for the "
                                    f"twisted configuration: {exc}")
        twisted_class = f"tau^{k}(N)"
    else:
        # the class of N is fixed (k = 0, N = S, or N disjoint from S)
        sequence.extend(hf_qn for _ in range(abs(k)))
        twisted_class = "unchanged"
    hf_qtn = sequence[-1]

    r1, r2, r3 = r1g.total(), hf_qn.total(), hf_qtn.total()
    steps = list(zip(sequence, sequence[1:]))
    verdicts = {
        "upper_bound": all(abs(b.total() - a.total()) <= r1
                           for a, b in steps),
        "lower_bound": all(b.total() >= r1 - a.total() for a, b in steps),
        "chi2_additivity": all(
            chi2(b) == (chi2(r1g) + chi2(a)) % 2 for a, b in steps),
        "zero_r1_forces_equality": (r1 != 0) or all(
            b.total() == a.total() for a, b in steps),
    }
    data = {
        "twist_power": k,
        "twisted": twisted_class,
        "hf_S_N": graded(hf_sn),
        "hf_Q_S": graded(hf_qs),
        "r1_graded": graded(r1g),
        "r2_graded": graded(hf_qn),
        "r3_graded": graded(hf_qtn),
        "r1": r1,
        "r2": r2,
        "r3": r3,
        "rank_sequence": [d.total() for d in sequence],
    }
    return VerificationReport("LES rank check", scenario.description,
                              data=data, verdicts=verdicts)
