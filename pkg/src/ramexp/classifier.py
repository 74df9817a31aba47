"""Where a multiplicative coefficient G sits relative to the cloud of the null function.

Three cases, read off the fixed-point sets:

* C1: F(G) empty. G is in the cloud iff sum_q G(q) mu(q) = 0.
* C2: F0(G) non-empty. A p-factor vanishes for every a, so G is in the cloud.
* C3: F(G) non-empty, F0(G) empty. Membership is tied to the vanishing of
  sum_{(r, F(G)) = 1} G(r) mu(r); that equivalence is not proved here and
  every C3 report says so.

Verdicts are three-valued. "out" needs a truncation whose modulus exceeds a
certified tail bound; slow series (e.g. sum mu(q)/q) stay "uncertified".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .arith import _require_positive
from .coefficients import CoefficientSpec, FixedPointReport, Scalar, fixed_point_report
from .euler import p_factor_is_null
from .expansions import (
    AbsConvergenceReport,
    MobiusIdentityReport,
    NonvanishingReport,
    _Coprime,
    _normalize_checkpoints,
    _rounding,
    _series,
    abs_convergence_report,
    decade_checkpoints,
    direct_partial_sum,
    mobius_identity_check,
    nonvanishing_product_check,
    tail_majorant,
)

CONDITIONAL_NOTE = (
    "C3: in-cloud iff the co-finite Mobius series over (r, F(G)) = 1 vanishes; "
    "this equivalence is stated without proof and is not relied on"
)
SIDE_BY_SIDE_A = (1, 2, 3, 6)
CONVERGENCE_ASSUMPTION = (
    "pointwise convergence of sum_{(r,a)=1} G(r) mu(r) for every a is assumed, not checked"
)


@dataclass(frozen=True)
class EvidenceRow:
    description: str
    Q: int
    value: Scalar
    tail_bound: Optional[float]
    certified: bool


@dataclass(frozen=True)
class CloudClassification:
    case: str
    fixed_points: FixedPointReport
    membership: str
    verdict: str
    evidence: list
    governing_series: Optional[str] = None
    conditional_note: Optional[str] = None
    caveats: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)


def _series_evidence(spec, Q, primes, label) -> tuple[list, str]:
    cps = _normalize_checkpoints(decade_checkpoints(Q), Q)
    keep = _Coprime(primes) if primes else None
    res = _series(spec, 1, Q, cps, "auto", keep, "mu")
    # dropping terms from sum |G(q) mu(q)| keeps the a = 1 majorant valid
    tail = tail_majorant(spec, 1, Q)
    rows = []
    for q, v in zip(cps, res.values):
        rows.append(EvidenceRow(label, q, v, tail if q == Q else None, tail is not None and q == Q))
    value = res.values[-1]
    if tail is not None:
        slack = tail + (_rounding(res.abs_mass) if res.mode == "float" else 0.0)
        verdict = "out" if abs(float(value)) > slack else "uncertified"
    else:
        verdict = "uncertified"
    return rows, verdict


def classify(
    spec: CoefficientSpec,
    p_max: int = 1000,
    k_max: int = 16,
    Q: int = 100_000,
) -> CloudClassification:
    for name, v in (("p_max", p_max), ("k_max", k_max), ("Q", Q)):
        _require_positive(v, name)
    fp = fixed_point_report(spec, max(p_max, 2), k_max)
    caveats = []
    if not fp.exhaustive:
        caveats.append(f"bounded scan: F0 membership checked for K <= {k_max} only")
    assumptions = [CONVERGENCE_ASSUMPTION]
    if spec.family == "custom" or not spec.is_inspectable:
        assumptions.append("co-finite series convergence for custom rules is not decided")

    if fp.F0_of_G:
        evidence = []
        for p in sorted(fp.F0_of_G):
            nv = p_factor_is_null(spec, p, k_max)
            evidence.append(
                EvidenceRow(f"{p}-factor vanishes ({nv.kind})", k_max, 0, None, nv.kind == "null_exhaustive")
            )
        certain = all(row.certified for row in evidence)
        return CloudClassification(
            case="C2",
            fixed_points=fp,
            membership="in_cloud_certain" if certain else "undetermined",
            verdict="in" if certain else "uncertified",
            evidence=evidence,
            caveats=caveats,
            assumptions=assumptions,
        )

    if not fp.F_of_G:
        label = "sum_q G(q) mu(q)"
        rows, verdict = _series_evidence(spec, Q, (), label)
        case, note = "C1", None
    else:
        primes = sorted(fp.F_of_G)
        label = f"sum_(r,{primes})=1 G(r) mu(r)"
        rows, verdict = _series_evidence(spec, Q, primes, label)
        case, note = "C3", CONDITIONAL_NOTE
    if verdict == "uncertified":
        first, last = abs(float(rows[0].value)), abs(float(rows[-1].value))
        if last < first:
            caveats.append("truncations trend toward 0: consistent with in-cloud, not certified")
        else:
            caveats.append("truncation not bounded away from 0 by a certified tail; no membership claim")
    if not fp.exhaustive:
        membership = "undetermined"
    elif verdict == "out" and case == "C1":
        membership = "not_in_cloud"
    else:
        membership = "in_cloud_iff_series_vanishes"
    if case == "C3":
        # both sides of the conditional equivalence, reported without linking them
        for a in SIDE_BY_SIDE_A:
            d = direct_partial_sum(spec, a, Q, mode="auto" if Q <= 10_000 else "float")
            rows.append(
                EvidenceRow(f"sum_q G(q) c_q({a})", Q, d.value, d.tail_bound, d.tail_bound is not None)
            )
    return CloudClassification(
        case=case,
        fixed_points=fp,
        membership=membership,
        verdict=verdict,
        evidence=rows,
        governing_series=label,
        conditional_note=note,
        caveats=caveats,
        assumptions=assumptions,
    )


@dataclass(frozen=True)
class Fact2Row:
    d: int
    identity: MobiusIdentityReport
    expected_ratio: Optional[float]
    ratio: Optional[float]


@dataclass(frozen=True)
class Fact2Report:
    Q: int
    rows: list
    all_within_bound: bool


def fact2_transfer_check(
    spec: CoefficientSpec, d_set: Iterable[int], Q: int, mode: str = "auto"
) -> Fact2Report:
    """Compare sum G(q) mu(q) with the co-finite Mobius series for each d.

    With F(G) empty the factor prod_{p|d} (1 - G(p)) never vanishes, so the
    two series vanish together. ``ratio`` is rhs / lhs at the truncation;
    ``expected_ratio`` is 1 / factor.
    """
    fp = fixed_point_report(spec, 1000, 1)
    if fp.F_of_G:
        raise ValueError(f"needs F(G) empty (case C1), got F(G) = {sorted(fp.F_of_G)}")
    rows = []
    for d in sorted(set(int(x) for x in d_set)):
        rep = mobius_identity_check(spec, d, Q, mode)
        lhs = float(rep.lhs)
        ratio = float(rep.rhs) / lhs if lhs != 0 else None
        rows.append(Fact2Row(d, rep, 1.0 / float(rep.product_factor), ratio))
    return Fact2Report(Q=int(Q), rows=rows, all_within_bound=all(r.identity.within_bound for r in rows))


@dataclass(frozen=True)
class ExclusionReport:
    case: str
    status: str
    reason: str
    abs_report: Optional[AbsConvergenceReport] = None
    product_report: Optional[NonvanishingReport] = None


def absolute_convergence_exclusion(
    spec: CoefficientSpec, Q: int = 10_000, p_max: int = 100_000
) -> ExclusionReport:
    """Rule G out of the cloud via absolute convergence and a non-vanishing product.

    Applies to C1 (product over all primes) and C3 (primes outside F(G)). C2
    coefficients can be absolutely convergent and still in the cloud.
    """
    fp = fixed_point_report(spec, max(p_max, 2), 16)
    if fp.F0_of_G:
        return ExclusionReport(
            case="C2",
            status="not_applicable",
            reason="F0(G) non-empty: in the cloud whether or not the expansion converges absolutely",
        )
    case = "C3" if fp.F_of_G else "C1"
    absrep = abs_convergence_report(spec, 1, Q)
    prod = nonvanishing_product_check(spec, fp.F_of_G, p_max)
    if absrep.certified and prod.verdict == "bounded_away_from_zero":
        status = "excluded"
        reason = (
            f"absolutely convergent (majorant {absrep.tail_bound:.3g} at Q={Q}); "
            f"prime product stays >= {prod.min_modulus:.6g} for p <= {p_max}"
        )
    else:
        status = "no_exclusion"
        parts = []
        if not absrep.certified:
            parts.append(absrep.note)
        if prod.verdict != "bounded_away_from_zero":
            parts.append(f"product check: {prod.verdict}")
        reason = "; ".join(parts)
    return ExclusionReport(case=case, status=status, reason=reason, abs_report=absrep, product_report=prod)
