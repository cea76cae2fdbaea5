"""
Filtration closures, filtration lengths, Θ-strata and simple objects.
"""

import dataclasses
import logging
from collections import deque
from typing import Callable, List, Optional, Sequence, Tuple

from ..errors import ContractViolation, PreconditionError
from ..models import CheckReport, Violation
from .cache import ClosureCache
from .presentation import CategoryPresentation, Conflation, ObjClass, Rule, Subcat

logger = logging.getLogger(__name__)

Stability = Callable[[Conflation], bool]


def fixpoint(mask: int, rules: Sequence[Rule]) -> int:
    """Least superset of mask closed under every (need ⊆ S ⟹ gain ⊆ S) rule."""
    changed = True
    while changed:
        changed = False
        for need, gain in rules:
            if not need & ~mask and gain & ~mask:
                mask |= gain
                changed = True
    return mask


def cached_closure(p: CategoryPresentation, operator: str, rules: Sequence[Rule], s: Subcat) -> Subcat:
    value = p.closures.get(operator, s.mask)
    if value is None:
        value = fixpoint(s.mask, rules)
        p.closures.set(operator, s.mask, value)
    return Subcat(value)


def filt_closure(p: CategoryPresentation, x: Subcat, stable_only: bool = True) -> Subcat:
    """Summand closure of Filt(x), over stable conflations only or over all of them."""
    if stable_only:
        return cached_closure(p, "filt_stable", p.stable_extension_rules, x)
    return cached_closure(p, "filt", p.extension_rules, x)


def filt_length(
    p: CategoryPresentation,
    x: Subcat,
    m: ObjClass,
    stable_only: bool = True,
    mult_cap: int = 3,
) -> Optional[int]:
    """
    Minimal length of an x-filtration of m, or None when m is not filtered by x.

    Breadth-first over objects: each step peels one member of x off as the
    first term of a conflation x_i → m → m'.
    """
    if m.is_zero():
        return 0
    memo_key = (x.mask, m.mult, stable_only, mult_cap)
    cached = p.closures.get("filt_length", memo_key)
    if cached is not None:
        return cached if cached >= 0 else None

    result = _shortest_filtration(p, x, m, stable_only, mult_cap)
    p.closures.set("filt_length", memo_key, -1 if result is None else result)
    return result


def _shortest_filtration(p, x, m, stable_only, mult_cap) -> Optional[int]:
    if not m.support.issubset(filt_closure(p, x, stable_only)):
        return None
    steps = [
        cf for cf in p.conflations
        if (cf.stable or not stable_only) and cf.a.total == 1 and cf.a.support.issubset(x)
    ]
    units = [ObjClass.unit(p.n, i) for i in x]

    frontier = deque([(m, 0)])
    seen = {m}
    capped = False
    while frontier:
        current, depth = frontier.popleft()
        successors = [current - u for u in units if current.contains(u)]
        successors += [current - cf.b + cf.c for cf in steps if current.contains(cf.b)]
        for nxt in successors:
            if nxt.is_zero():
                return depth + 1
            if max(nxt.mult) > mult_cap:
                capped = True
                continue
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, depth + 1))

    if capped:
        logger.warning(
            f"{p.name}: filtration search for {p.format_obj(m)} hit multiplicity cap {mult_cap}"
        )
    return None


def semibrick_check(p: CategoryPresentation, x: Subcat) -> bool:
    if not x.issubset(p.bricks):
        return False
    return all((p.hom_out[i] & x.mask) == 1 << i for i in x)


def sms_check(p: CategoryPresentation, x: Subcat) -> bool:
    """Semibrick whose filtration closure is everything."""
    return semibrick_check(p, x) and filt_closure(p, x, stable_only=False) == p.full


def enumerate_semibricks(p: CategoryPresentation) -> List[Subcat]:
    """Every semibrick, grown by adding hom-orthogonal bricks in declaration order."""
    orthogonal = {
        i: Subcat.of(j for j in p.bricks if j != i and not p.hom_out[i] >> j & 1 and not p.hom_in[i] >> j & 1)
        for i in p.bricks
    }
    found = [Subcat()]

    def grow(current: Subcat, allowed: Subcat, start: int) -> None:
        for i in allowed:
            if i < start:
                continue
            nxt = current | Subcat.of([i])
            found.append(nxt)
            grow(nxt, allowed & orthogonal[i], i + 1)

    grow(Subcat(), p.bricks, 0)
    return sorted(found, key=lambda s: s.sort_key)


@dataclasses.dataclass(frozen=True)
class Strata:
    theta1: Subcat
    strata: Tuple[Tuple[int, Subcat], ...]
    theta_inf: Subcat

    @property
    def length_wide(self) -> bool:
        return self.theta1 == self.theta_inf


def strata(p: CategoryPresentation) -> Strata:
    """
    Θ₁ and the levels Θ'_n built on it.

    Levels are Θ shifted so the minimum is 1; the presentation's own Θ values
    are never rewritten.
    """
    if p.n == 0:
        raise PreconditionError("strata need at least one indecomposable")
    low = min(p.thetas)
    levels = [t - low + 1 for t in p.thetas]
    theta1 = Subcat.of(i for i in range(p.n) if levels[i] == 1)

    current = theta1
    found = [(1, theta1)]
    for level in range(2, max(levels) + 1):
        fresh = Subcat.of(
            i for i in range(p.n)
            if levels[i] == level and p.is_brick(i) and i not in current
            and not p.hom_out[i] & current.mask and not p.hom_in[i] & current.mask
        )
        if fresh:
            found.append((level, fresh))
            current = current | fresh
    return Strata(theta1=theta1, strata=tuple(found), theta_inf=current)


def _inside(p: CategoryPresentation, c: Subcat) -> List[Conflation]:
    return [cf for cf in p.conflations if cf.support.issubset(c)]


def simples(p: CategoryPresentation, c: Subcat, stability: Optional[Stability] = None) -> Subcat:
    """Members of c that are not the middle of a stable conflation with nonzero ends in c."""
    stable = stability or (lambda cf: cf.stable)
    for cf in p.conflations:
        ends = cf.a.support | cf.c.support
        if stable(cf) and ends.issubset(c) and not cf.b.support.issubset(c):
            raise PreconditionError(
                f"{p.format(c)} is not closed under stable extensions: {p.format_conflation(cf)}"
            )
    composite = set()
    for cf in _inside(p, c):
        if stable(cf) and not cf.a.is_zero() and not cf.c.is_zero() and cf.b.total == 1:
            composite.add(cf.b.support.key[0])
    return Subcat.of(i for i in c if i not in composite)


def lx_stability(p: CategoryPresentation, x: Subcat, mult_cap: int = 3) -> Stability:
    """Stability with respect to the x-filtration length over all conflations."""
    def stable(cf: Conflation) -> bool:
        lengths = [filt_length(p, x, m, stable_only=False, mult_cap=mult_cap) for m in (cf.a, cf.b, cf.c)]
        if None in lengths:
            return False
        la, lb, lc = lengths
        return lb == la + lc
    return stable


def length_wide_roundtrip(p: CategoryPresentation, x: Subcat, mult_cap: int = 3) -> bool:
    """Whether the simples of (Filt(x), l_x) are exactly x."""
    if not semibrick_check(p, x):
        raise PreconditionError(f"{p.format(x)} is not a semibrick")
    closure = filt_closure(p, x, stable_only=False)
    return simples(p, closure, stability=lx_stability(p, x, mult_cap)) == x


def proper_semibrick_check(p: CategoryPresentation, x: Subcat, mult_cap: int = 3) -> CheckReport:
    """Length additivity of l_x on every listed conflation inside Filt(x)."""
    report = CheckReport(name="proper semibrick", notes=["proper relative to presentation"])
    if not semibrick_check(p, x):
        report.violations.append(Violation(rule="semibrick", location=p.format(x), detail="not a semibrick"))
        return report
    stable = lx_stability(p, x, mult_cap)
    for cf in _inside(p, filt_closure(p, x, stable_only=False)):
        if not stable(cf):
            report.violations.append(Violation(
                rule="proper semibrick", location=cf.location,
                detail=f"{p.format_conflation(cf)} is not additive for the filtration length over {p.format(x)}",
            ))
    return report


def relabel_by_length(p: CategoryPresentation, x: Subcat, mult_cap: int = 3) -> CategoryPresentation:
    """
    The same category with Θ replaced by l_x and stability flags recomputed.

    Hom and ext tables are carried over unchanged.
    """
    lengths = []
    for i in range(p.n):
        value = filt_length(p, x, ObjClass.unit(p.n, i), stable_only=False, mult_cap=mult_cap)
        if value is None:
            raise ContractViolation(f"{p.ids[i]} is not filtered by {p.format(x)}")
        lengths.append(value)

    def length(m: ObjClass) -> int:
        return sum(k * t for k, t in zip(m.mult, lengths))

    conflations = tuple(
        dataclasses.replace(cf, stable=length(cf.b) == length(cf.a) + length(cf.c))
        for cf in p.conflations
    )
    return dataclasses.replace(
        p,
        name=f"{p.name}[l{p.format(x)}]",
        thetas=tuple(lengths),
        conflations=conflations,
        closures=ClosureCache(),
    )


def strata_report(p: CategoryPresentation, mult_cap: int = 3, stable_only: bool = True) -> CheckReport:
    """Semibrick and simple-minded checks on the strata, plus the length identity when wide."""
    report = CheckReport(name="strata")
    if p.n == 0:
        report.notes.append("skipped: empty presentation")
        return report
    st = strata(p)
    report.data = {
        "theta1": p.names(st.theta1),
        "levels": [[level, p.names(s)] for level, s in st.strata],
        "theta_inf": p.names(st.theta_inf),
        "length_wide": st.length_wide,
    }
    if not semibrick_check(p, st.theta_inf):
        report.violations.append(Violation(rule="strata semibrick", location=p.format(st.theta_inf),
                                           detail="Θ_∞ is not a semibrick"))
    if not sms_check(p, st.theta_inf):
        report.violations.append(Violation(rule="simple-minded system", location=p.format(st.theta_inf),
                                           detail="Θ_∞ does not generate the category"))
    if st.length_wide:
        for i in range(p.n):
            length = filt_length(p, st.theta1, ObjClass.unit(p.n, i), stable_only=stable_only, mult_cap=mult_cap)
            if length != p.thetas[i] - min(p.thetas) + 1:
                report.violations.append(Violation(
                    rule="length identity", location=p.ids[i],
                    detail=f"Θ level {p.thetas[i] - min(p.thetas) + 1} but filtration length {length}",
                ))
        sim = simples(p, p.full)
        if sim != st.theta1:
            report.violations.append(Violation(rule="simples", location=p.format(p.full),
                                               detail=f"simples {p.format(sim)} differ from Θ₁"))
    else:
        report.notes.append("not length wide: length identity not applicable")
    return report


def semibrick_report(p: CategoryPresentation, mult_cap: int = 3) -> CheckReport:
    """Round trip semibrick → length wide → simples for every semibrick."""
    report = CheckReport(name="semibricks", notes=["proper relative to presentation"])
    rows = []
    for x in enumerate_semibricks(p):
        roundtrip = length_wide_roundtrip(p, x, mult_cap)
        proper = proper_semibrick_check(p, x, mult_cap).passed
        rows.append({"members": p.names(x), "sms": sms_check(p, x), "roundtrip": roundtrip, "proper": proper})
        if not roundtrip:
            report.violations.append(Violation(rule="semibrick round trip", location=p.format(x),
                                               detail="simples of the filtration closure differ"))
    report.data = {"count": len(rows), "semibricks": rows}
    return report
