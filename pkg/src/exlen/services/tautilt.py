"""
Θ-projectives, Θ-injectives and support τ-tilting subcategories.

Support is certified by the finite-case criterion T = Fac_Θ(P(T)) (and
dually F = Sub_Θ(I(F))); classes failing it are reported, never silently
reclassified.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from ..errors import PreconditionError
from ..models import CheckReport, TauTiltRow, Violation
from .presentation import CategoryPresentation, Subcat
from .torsion import (
    enumerate_torf,
    enumerate_tors,
    fac_theta,
    is_torsion_class,
    is_torsionfree_class,
    perp_left,
    perp_right,
    sub_theta,
)

logger = logging.getLogger(__name__)

FINITE_CASE = "support (finite-case criterion)"


def theta_projectives(p: CategoryPresentation, scope: Subcat) -> Subcat:
    """Members of scope with no extension into scope."""
    return Subcat.of(m for m in scope if not p.ext_out[m] & scope.mask)


def theta_injectives(p: CategoryPresentation, scope: Subcat) -> Subcat:
    """Members of scope with no extension out of scope."""
    return Subcat.of(m for m in scope if not p.ext_in[m] & scope.mask)


def enough_projectives_check(p: CategoryPresentation) -> bool:
    return fac_theta(p, theta_projectives(p, p.full)) == p.full


def enough_injectives_check(p: CategoryPresentation) -> bool:
    return sub_theta(p, theta_injectives(p, p.full)) == p.full


def tau_rigid_check(p: CategoryPresentation, s: Subcat) -> bool:
    generated = fac_theta(p, s).mask
    return all(not p.ext_out[x] & generated for x in s)


def tau_inverse_rigid_check(p: CategoryPresentation, s: Subcat) -> bool:
    cogenerated = sub_theta(p, s).mask
    return all(not p.ext_in[x] & cogenerated for x in s)


@dataclass(frozen=True)
class TauTiltRecord:
    """A torsion class with its Θ-projectives and the support verdict."""
    tors: Subcat
    ptors: Subcat
    support: bool


@dataclass(frozen=True)
class CoTauTiltRecord:
    """A torsion-free class with its Θ-injectives and the cosupport verdict."""
    torf: Subcat
    itorf: Subcat
    cosupport: bool


def support_tors(p: CategoryPresentation, t: Subcat) -> TauTiltRecord:
    if not is_torsion_class(p, t):
        raise PreconditionError(f"{p.format(t)} is not a torsion class")
    if not enough_projectives_check(p):
        raise PreconditionError(f"{p.name} does not have enough Θ-projectives")
    ptors = theta_projectives(p, t)
    support = fac_theta(p, ptors) == t
    if not support:
        logger.warning(f"{p.name}: {p.format(t)} is not generated by its Θ-projectives {p.format(ptors)}")
    return TauTiltRecord(tors=t, ptors=ptors, support=support)


def support_torf(p: CategoryPresentation, f: Subcat) -> CoTauTiltRecord:
    if not is_torsionfree_class(p, f):
        raise PreconditionError(f"{p.format(f)} is not a torsion-free class")
    if not enough_injectives_check(p):
        raise PreconditionError(f"{p.name} does not have enough Θ-injectives")
    itorf = theta_injectives(p, f)
    cosupport = sub_theta(p, itorf) == f
    if not cosupport:
        logger.warning(f"{p.name}: {p.format(f)} is not cogenerated by its Θ-injectives {p.format(itorf)}")
    return CoTauTiltRecord(torf=f, itorf=itorf, cosupport=cosupport)


def stau_tilt_check(p: CategoryPresentation, s: Subcat) -> bool:
    """τ-rigid, equal to the Θ-projectives of its Fac, and Fac(s) a support torsion class."""
    if not tau_rigid_check(p, s):
        return False
    generated = fac_theta(p, s)
    if not is_torsion_class(p, generated) or theta_projectives(p, generated) != s:
        return False
    return support_tors(p, generated).support


def stau_inverse_tilt_check(p: CategoryPresentation, s: Subcat) -> bool:
    if not tau_inverse_rigid_check(p, s):
        return False
    cogenerated = sub_theta(p, s)
    if not is_torsionfree_class(p, cogenerated) or theta_injectives(p, cogenerated) != s:
        return False
    return support_torf(p, cogenerated).cosupport


def to_inverse_tilting(p: CategoryPresentation, s: Subcat) -> Subcat:
    """S ↦ I(Fac_Θ(S)^⊥)."""
    return theta_injectives(p, perp_right(p, fac_theta(p, s)))


def from_inverse_tilting(p: CategoryPresentation, s: Subcat) -> Subcat:
    """S ↦ P(^⊥Sub_Θ(S))."""
    return theta_projectives(p, perp_left(p, sub_theta(p, s)))


def markings_report(p: CategoryPresentation) -> CheckReport:
    """Θ-projectives and Θ-injectives of the whole category, with enough-ness."""
    report = CheckReport(name="projectives and injectives")
    projectives = theta_projectives(p, p.full)
    injectives = theta_injectives(p, p.full)
    report.data = {
        "projectives": p.names(projectives),
        "injectives": p.names(injectives),
        "enough_projectives": enough_projectives_check(p),
        "enough_injectives": enough_injectives_check(p),
    }
    if not report.data["enough_projectives"]:
        report.violations.append(Violation(rule="enough projectives", location=p.format(projectives),
                                           detail="Θ-projectives do not generate the category"))
    if not report.data["enough_injectives"]:
        report.violations.append(Violation(rule="enough injectives", location=p.format(injectives),
                                           detail="Θ-injectives do not cogenerate the category"))
    for cf in p.conflations:
        if cf.stable and not cf.split and cf.c.total == 1 and cf.a.total == 1 and cf.c.support.issubset(projectives):
            report.violations.append(Violation(rule="projective consistency", location=cf.location,
                                               detail=f"Θ-projective ends {p.format_conflation(cf)}"))
    return report


def bijection_check(p: CategoryPresentation, tors: Optional[List[Subcat]] = None,
                    torf: Optional[List[Subcat]] = None) -> CheckReport:
    """Fac ∘ P, P ∘ Fac and their duals, and the composite between the two tilting sides."""
    tors = enumerate_tors(p) if tors is None else tors
    torf = enumerate_torf(p) if torf is None else torf
    report = CheckReport(name="tau tilting bijections", notes=[FINITE_CASE])
    if not (enough_projectives_check(p) and enough_injectives_check(p)):
        report.notes.append("skipped: not enough Θ-projectives or Θ-injectives")
        return report

    tilting = []
    for t in tors:
        record = support_tors(p, t)
        if not record.support:
            report.violations.append(Violation(rule="support", location=p.format(t),
                                               detail=f"Fac(P(T)) = {p.format(fac_theta(p, record.ptors))}"))
            continue
        if theta_projectives(p, fac_theta(p, record.ptors)) != record.ptors:
            report.violations.append(Violation(rule="projectives of Fac", location=p.format(record.ptors),
                                               detail="P(Fac(S)) differs from S"))
        if not stau_tilt_check(p, record.ptors):
            report.violations.append(Violation(rule="support tau tilting", location=p.format(record.ptors),
                                               detail="P(T) is not support τ-tilting"))
        tilting.append(record.ptors)

    cotilting = []
    for f in torf:
        record = support_torf(p, f)
        if not record.cosupport:
            report.violations.append(Violation(rule="cosupport", location=p.format(f),
                                               detail=f"Sub(I(F)) = {p.format(sub_theta(p, record.itorf))}"))
            continue
        if theta_injectives(p, sub_theta(p, record.itorf)) != record.itorf:
            report.violations.append(Violation(rule="injectives of Sub", location=p.format(record.itorf),
                                               detail="I(Sub(S)) differs from S"))
        cotilting.append(record.itorf)

    cotilting_masks = {s.mask for s in cotilting}
    images = set()
    for s in tilting:
        image = to_inverse_tilting(p, s)
        if image.mask not in cotilting_masks:
            report.violations.append(Violation(rule="composite bijection", location=p.format(s),
                                               detail=f"image {p.format(image)} is not support τ⁻¹-tilting"))
        elif from_inverse_tilting(p, image) != s:
            report.violations.append(Violation(rule="composite bijection", location=p.format(s),
                                               detail=f"inverse sends {p.format(image)} elsewhere"))
        images.add(image.mask)
    if len(images) != len(tilting) or images != cotilting_masks:
        report.violations.append(Violation(rule="composite bijection", location=p.name,
                                           detail=f"{len(tilting)} support τ-tilting, {len(cotilting)} support τ⁻¹-tilting"))
    if len(tilting) != len(tors):
        report.violations.append(Violation(rule="support count", location=p.name,
                                           detail=f"{len(tilting)} support classes of {len(tors)} torsion classes"))
    report.data = {"support": len(tilting), "stau": len(tilting), "stau_inverse": len(cotilting),
                   "tors": len(tors)}
    return report


def tautilt_rows(p: CategoryPresentation, tors: List[Subcat]) -> List[TauTiltRow]:
    """One row per torsion pair: P(T), I(F) and both finite-case verdicts."""
    rows = []
    for t in tors:
        f = perp_right(p, t)
        projectives = theta_projectives(p, t)
        injectives = theta_injectives(p, f)
        rows.append(TauTiltRow(
            tors=p.names(t),
            torf=p.names(f),
            projectives=p.names(projectives),
            injectives=p.names(injectives),
            support=fac_theta(p, projectives) == t,
            cosupport=sub_theta(p, injectives) == f,
        ))
    return rows


def tautilt_reports(p: CategoryPresentation, tors: List[Subcat], torf: Optional[List[Subcat]] = None) -> List[CheckReport]:
    torf = torf if torf is not None else [perp_right(p, t) for t in tors]
    return [markings_report(p), bijection_check(p, tors, torf)]
