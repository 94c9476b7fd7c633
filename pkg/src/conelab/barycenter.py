"""Barycenters computed through the upper powercone.

Given a valuation ``nu`` on a cone ``C``:

1. push ``nu`` forward along ``x -> up x`` into the powercone ``S(C)``;
2. take the barycenter ``Q`` of the pushed valuation in ``S(C)``, which is
   itself a semilattice cone, so its barycenter is the join of the support;
3. check that ``Q`` is principal, ``Q = up x``, and return ``x``.

Every run also cross-checks ``x`` against the closed form (join of the
support in ``C``) and the definition (the dual-cone integral test).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cone import SemilatticeCone, all_barycenters, barycenter_support_sup, is_barycenter
from .errors import ConelabError, InvariantViolation, NonPrincipalError, NotUpsetError
from .powercone import ConvexUpset, JiaVerdict, SmythCone, box_membership, enumerate_smyth, jia_check
from .report import Report
from .valuation import Valuation, image_valuation


@dataclass(frozen=True)
class PipelineTrace:
    nu: Valuation
    pushed: Valuation
    alpha_result: ConvexUpset
    verdict: JiaVerdict | None
    witness: int | None


def powercone_image(cone: SemilatticeCone, nu: Valuation, smyth: SmythCone | None = None) -> tuple[Valuation, ConvexUpset]:
    """The pushed valuation on ``S(C)`` and its barycenter ``Q``."""
    if nu.poset != cone.lattice:
        raise ConelabError("valuation does not live on the cone's lattice")
    smyth = smyth or enumerate_smyth(cone)
    pushed = image_valuation(smyth.unit_map, nu)
    q_index = barycenter_support_sup(smyth.as_cone, pushed)
    return pushed, smyth.elements[q_index]


def pipeline_barycenter(
    cone: SemilatticeCone, nu: Valuation, smyth: SmythCone | None = None
) -> tuple[int, PipelineTrace]:
    pushed, q = powercone_image(cone, nu, smyth)
    verdict = jia_check(cone, q)
    if verdict.principal is None:
        trace = PipelineTrace(nu, pushed, q, verdict, None)
        raise NonPrincipalError(f"powercone barycenter {q!r} of {nu!r} is not principal", trace)
    x = verdict.principal
    if cone.lattice.up[x] != q.members:
        raise NonPrincipalError(f"{q!r} is not the upward closure of its witness", PipelineTrace(nu, pushed, q, verdict, x))
    check = is_barycenter(cone, nu, x)
    if not check:
        raise InvariantViolation(
            f"pipeline result {cone.names[x]!r} fails the barycenter test at {check.certificate!r}"
        )
    closed_form = barycenter_support_sup(cone, nu)
    if closed_form != x:
        raise InvariantViolation(
            f"pipeline gives {cone.names[x]!r} but the support join is {cone.names[closed_form]!r}"
        )
    return x, PipelineTrace(nu, pushed, q, verdict, x)


def beta(cone: SemilatticeCone, nu: Valuation) -> int:
    """The barycenter map, via the pipeline."""
    return pipeline_barycenter(cone, nu)[0]


def beta_continuity_check(
    cone: SemilatticeCone, u: Iterable[int], sample: Sequence[Valuation]
) -> Report:
    """``beta(nu) in U`` iff the powercone barycenter lies in ``box U``, for each sample."""
    u = frozenset(u)
    if not cone.lattice.is_upset(u):
        raise NotUpsetError(f"{cone.lattice.label(u)} is not open")
    report = Report("beta-continuity")
    for nu in sample:
        x, trace = pipeline_barycenter(cone, nu)
        left = x in u
        right = box_membership(trace.alpha_result, u)
        report.require(left == right, "box-preimage", nu=nu, U=u, beta_in_U=left, Q_in_box=right)
    return report


def uniqueness_sweep(cone: SemilatticeCone, valuations: Iterable[Valuation]) -> Report:
    """For each valuation, the definitional barycenters form exactly ``{pipeline result}``."""
    report = Report("sweep")
    count = 0
    for nu in valuations:
        count += 1
        found = all_barycenters(cone, nu)
        x, _ = pipeline_barycenter(cone, nu)
        report.require(found == [x], "unique-barycenter", nu=nu, barycenters=found, pipeline=x)
    report.stats["valuations"] = count
    return report
