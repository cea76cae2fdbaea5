"""
Torsion and torsion-free classes: closure operators, perpendicular
categories, torsion pairs and exhaustive enumeration.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Tuple

from ..errors import ContractViolation, EnumerationLimitError, PreconditionError
from ..models import CheckReport, Violation
from .filt import cached_closure, fixpoint
from .presentation import CategoryPresentation, Subcat

logger = logging.getLogger(__name__)

# A torsion class is a Subcat closed under Θ-quotients and stable extensions.
TorsClass = Subcat


def fac_theta(p: CategoryPresentation, s: Subcat, transitive: bool = True) -> Subcat:
    """Θ-quotients of members of s; one conflation deep when not transitive."""
    if transitive:
        return cached_closure(p, "fac", p.quotient_rules, s)
    return _single_step(s, p.quotient_rules)


def sub_theta(p: CategoryPresentation, s: Subcat, transitive: bool = True) -> Subcat:
    """Θ-subobjects of members of s; one conflation deep when not transitive."""
    if transitive:
        return cached_closure(p, "sub", p.subobject_rules, s)
    return _single_step(s, p.subobject_rules)


def _single_step(s: Subcat, rules) -> Subcat:
    mask = s.mask
    for need, gain in rules:
        if not need & ~s.mask:
            mask |= gain
    return Subcat(mask)


def t_closure(p: CategoryPresentation, s: Subcat) -> TorsClass:
    """Smallest torsion class containing s."""
    return cached_closure(p, "tors", p.quotient_rules + p.stable_extension_rules, s)


def f_closure(p: CategoryPresentation, s: Subcat) -> Subcat:
    """Smallest torsion-free class containing s."""
    return cached_closure(p, "torf", p.subobject_rules + p.stable_extension_rules, s)


def is_torsion_class(p: CategoryPresentation, s: Subcat) -> bool:
    return t_closure(p, s) == s


def is_torsionfree_class(p: CategoryPresentation, s: Subcat) -> bool:
    return f_closure(p, s) == s


def perp_right(p: CategoryPresentation, s: Subcat) -> Subcat:
    """Indecs receiving no nonzero map from s."""
    reached = 0
    for i in s:
        reached |= p.hom_out[i]
    return p.full - Subcat(reached)


def perp_left(p: CategoryPresentation, s: Subcat) -> Subcat:
    """Indecs with no nonzero map into s."""
    reached = 0
    for j in s:
        reached |= p.hom_in[j]
    return p.full - Subcat(reached)


def torsion_pair_of(p: CategoryPresentation, t: TorsClass) -> Tuple[TorsClass, Subcat]:
    if not is_torsion_class(p, t):
        raise PreconditionError(f"{p.format(t)} is not a torsion class")
    f = perp_right(p, t)
    if perp_left(p, f) != t:
        raise ContractViolation(
            f"torsion pair round trip fails for {p.format(t)}: ^⊥(T^⊥) = {p.format(perp_left(p, f))}"
        )
    return t, f


def torsionfree_pair_of(p: CategoryPresentation, f: Subcat) -> Tuple[TorsClass, Subcat]:
    if not is_torsionfree_class(p, f):
        raise PreconditionError(f"{p.format(f)} is not a torsion-free class")
    t = perp_left(p, f)
    if perp_right(p, t) != f:
        raise ContractViolation(
            f"torsion pair round trip fails for {p.format(f)}: (^⊥F)^⊥ = {p.format(perp_right(p, t))}"
        )
    return t, f


def _enumerate(
    p: CategoryPresentation,
    closure: Callable[[Subcat], Subcat],
    max_indecs: int,
    jobs: int,
    exhaustive: bool,
) -> List[Subcat]:
    if p.n > max_indecs:
        raise EnumerationLimitError(p.n, max_indecs)

    found: Dict[int, Subcat] = {}
    if exhaustive:
        def close_range(bounds: Tuple[int, int]) -> List[Subcat]:
            return [closure(Subcat(mask)) for mask in range(*bounds)]

        total = 1 << p.n
        step = max(1, total // max(jobs, 1))
        chunks = [(start, min(start + step, total)) for start in range(0, total, step)]
        for result in _map(close_range, chunks, jobs):
            for s in result:
                found.setdefault(s.mask, s)
    else:
        # Every class is a join of singleton closures: grow from the bottom.
        singles = [closure(Subcat.of([i])) for i in range(p.n)]

        def expand(x: Subcat) -> List[Subcat]:
            return [closure(x | g) for g in singles if not g.issubset(x)]

        bottom = closure(Subcat())
        found[bottom.mask] = bottom
        frontier = [bottom]
        while frontier:
            fresh = []
            for result in _map(expand, frontier, jobs):
                for s in result:
                    if s.mask not in found:
                        found[s.mask] = s
                        fresh.append(s)
            frontier = fresh

    return sorted(found.values(), key=lambda s: s.sort_key)


def _map(fn, items: Iterable, jobs: int):
    if jobs <= 1:
        return map(fn, items)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def enumerate_tors(
    p: CategoryPresentation,
    max_indecs: int = 22,
    jobs: int = 1,
    exhaustive: bool = False,
) -> List[TorsClass]:
    """All torsion classes, sorted by (size, canonical key)."""
    elements = _enumerate(p, lambda s: t_closure(p, s), max_indecs, jobs, exhaustive)
    logger.info(f"{p.name}: {len(elements)} torsion classes over {p.n} indecomposables")
    return elements


def enumerate_torf(
    p: CategoryPresentation,
    max_indecs: int = 22,
    jobs: int = 1,
    exhaustive: bool = False,
) -> List[Subcat]:
    """All torsion-free classes, sorted by (size, canonical key)."""
    elements = _enumerate(p, lambda s: f_closure(p, s), max_indecs, jobs, exhaustive)
    logger.info(f"{p.name}: {len(elements)} torsion-free classes over {p.n} indecomposables")
    return elements


def torsion_report(p: CategoryPresentation, tors: List[TorsClass], torf: List[Subcat]) -> CheckReport:
    """Torsion pair round trips and the perpendicular bijection between the two enumerations."""
    report = CheckReport(name="torsion pairs")
    torf_masks = {f.mask for f in torf}
    images = set()
    for t in tors:
        if not is_torsion_class(p, t):
            report.violations.append(Violation(rule="torsion class", location=p.format(t),
                                               detail="enumerated class is not closed"))
        try:
            _, f = torsion_pair_of(p, t)
        except ContractViolation as e:
            logger.warning(str(e))
            report.violations.append(Violation(rule="torsion pair round trip", location=p.format(t), detail=str(e)))
            continue
        if f.mask not in torf_masks:
            report.violations.append(Violation(rule="perpendicular bijection", location=p.format(t),
                                               detail=f"T^⊥ = {p.format(f)} is not an enumerated torsion-free class"))
        images.add(f.mask)
    for f in torf:
        if f.mask not in images:
            try:
                torsionfree_pair_of(p, f)
            except ContractViolation as e:
                report.violations.append(Violation(rule="torsion pair round trip", location=p.format(f),
                                                   detail=str(e)))
                continue
            report.violations.append(Violation(rule="perpendicular bijection", location=p.format(f),
                                               detail="torsion-free class is not the perpendicular of a torsion class"))
    report.data = {"tors_count": len(tors), "torf_count": len(torf)}
    return report


def closure_agreement(p: CategoryPresentation, s: Subcat) -> bool:
    """Joint fixpoint equals the stable filtration closure of the quotient closure."""
    two_pass = fixpoint(fac_theta(p, s).mask, p.stable_extension_rules)
    return t_closure(p, s).mask == two_pass
