"""
Lattice structure on torsion and torsion-free classes.

Covers, join and meet tables, semidistributivity and algebraicity checks,
interval and brick-label checks, irreducible elements, Jbrick/Mbrick
and standardness.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Literal, NamedTuple, Optional, Tuple

import numpy as np

from ..errors import AmbiguousLabelError, ContractViolation, NoLabelError, PreconditionError
from ..models import BrickRow, CheckReport, Violation
from .filt import relabel_by_length, strata
from .presentation import CategoryPresentation, Subcat
from .torsion import (
    enumerate_torf,
    enumerate_tors,
    f_closure,
    fac_theta,
    perp_left,
    perp_right,
    sub_theta,
    t_closure,
)

logger = logging.getLogger(__name__)

Kind = Literal["tors", "torf"]
Arrow = Tuple[int, int]

SUBSET_BUDGET = 200_000


class Side(NamedTuple):
    """Closure and perpendiculars of one side of the tors/torf duality."""
    closure: Callable[[CategoryPresentation, Subcat], Subcat]
    away: Callable[[CategoryPresentation, Subcat], Subcat]
    toward: Callable[[CategoryPresentation, Subcat], Subcat]


SIDES: Dict[str, Side] = {
    "tors": Side(t_closure, perp_right, perp_left),
    "torf": Side(f_closure, perp_left, perp_right),
}


@dataclass(frozen=True, eq=False)
class TorsLattice:
    """
    Finite lattice of torsion (or torsion-free) classes ordered by inclusion.

    Arrows are (upper, lower) index pairs of Hasse covers; labels map each
    arrow to the index of its brick label.
    """
    presentation: CategoryPresentation
    kind: Kind
    elements: Tuple[Subcat, ...]
    leq: np.ndarray
    covers: Tuple[Arrow, ...]
    labels: Dict[Arrow, int] = field(default_factory=dict)
    label_errors: List[Violation] = field(default_factory=list)

    @property
    def side(self) -> Side:
        return SIDES[self.kind]

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def _positions(self) -> Dict[int, int]:
        return {s.mask: i for i, s in enumerate(self.elements)}

    def position(self, s: Subcat) -> int:
        try:
            return self._positions[s.mask]
        except KeyError:
            raise PreconditionError(
                f"{self.presentation.format(s)} is not an element of the {self.kind} lattice"
            ) from None

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    def lower_covers(self, i: int) -> List[int]:
        return [lower for upper, lower in self.covers if upper == i]

    def upper_covers(self, i: int) -> List[int]:
        return [upper for upper, lower in self.covers if lower == i]

    @cached_property
    def join_table(self) -> np.ndarray:
        """join[i, j] = closure(x ∪ y), or -1 when the closure is not enumerated."""
        table = np.full((self.size, self.size), -1, dtype=np.int64)
        for i, j in itertools.combinations_with_replacement(range(self.size), 2):
            joined = self.side.closure(self.presentation, self.elements[i] | self.elements[j])
            table[i, j] = table[j, i] = self._positions.get(joined.mask, -1)
        return table

    @cached_property
    def meet_table(self) -> np.ndarray:
        """meet[i, j] = x ∩ y, or -1 when the intersection is not enumerated."""
        table = np.full((self.size, self.size), -1, dtype=np.int64)
        for i, j in itertools.combinations_with_replacement(range(self.size), 2):
            met = self.elements[i] & self.elements[j]
            table[i, j] = table[j, i] = self._positions.get(met.mask, -1)
        return table

    def join(self, i: int, j: int) -> int:
        return int(self.join_table[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def format_arrow(self, arrow: Arrow) -> str:
        upper, lower = arrow
        p = self.presentation
        return f"{p.format(self.elements[upper])} → {p.format(self.elements[lower])}"


def build_lattice(p: CategoryPresentation, elements: List[Subcat], kind: Kind = "tors") -> TorsLattice:
    """Containment order, Hasse covers and brick labels over enumerated classes."""
    masks = np.array([[s.mask >> k & 1 for k in range(p.n)] for s in elements], dtype=np.int64).reshape(
        len(elements), p.n
    )
    # x ⊆ y iff x has no member outside y
    leq = (masks @ (1 - masks).T) == 0
    lt = leq & ~np.eye(len(elements), dtype=bool)
    lt_int = lt.astype(np.int64)
    cover = lt & ~((lt_int @ lt_int) > 0)
    covers = tuple(sorted((int(upper), int(lower)) for lower, upper in zip(*np.nonzero(cover))))

    lattice = TorsLattice(presentation=p, kind=kind, elements=tuple(elements), leq=leq, covers=covers)
    for arrow in covers:
        try:
            lattice.labels[arrow] = brick_label(p, lattice, arrow)
        except ContractViolation as e:
            logger.warning(str(e))
            lattice.label_errors.append(
                Violation(rule="brick label", location=lattice.format_arrow(arrow), detail=str(e))
            )
    logger.info(f"{p.name}: {kind} lattice with {len(elements)} elements and {len(covers)} arrows")
    return lattice


def bricks_in(p: CategoryPresentation, u: Subcat, t: Subcat, kind: Kind = "tors") -> Subcat:
    """Bricks of U^⊥ ∩ T (for torf, of ^⊥F ∩ V)."""
    return p.bricks & SIDES[kind].away(p, u) & t


def _generates(p: CategoryPresentation, side: Side, lower: Subcat, upper: Subcat, s: int) -> bool:
    single = Subcat.of([s])
    return upper == side.closure(p, lower | single) and lower == upper & side.toward(p, single)


def _dominated(p: CategoryPresentation, s: int, bricks: Subcat) -> bool:
    """s is a Θ-subobject and a Θ-quotient of every brick in the set."""
    return all(s in sub_theta(p, Subcat.of([b])) and s in fac_theta(p, Subcat.of([b])) for b in bricks)


def _label(p: CategoryPresentation, kind: Kind, upper: Subcat, lower: Subcat) -> Tuple[List[int], List[int]]:
    """Minimal-Θ candidates and those passing the generation and domination conditions."""
    side = SIDES[kind]
    bricks = bricks_in(p, lower, upper, kind)
    if not bricks:
        return [], []
    low = min(p.thetas[i] for i in bricks)
    candidates = sorted((i for i in bricks if p.thetas[i] == low), key=lambda i: (p.thetas[i], i))
    passing = [i for i in candidates if _generates(p, side, lower, upper, i) and _dominated(p, i, bricks)]
    return candidates, passing


def brick_label(p: CategoryPresentation, l: TorsLattice, arrow: Arrow) -> int:
    """Index of the unique minimal-Θ brick labelling a Hasse arrow."""
    if arrow not in l.covers:
        raise PreconditionError(f"{l.format_arrow(arrow)} is not a Hasse arrow")
    upper, lower = (l.elements[k] for k in arrow)
    candidates, passing = _label(p, l.kind, upper, lower)
    if not passing:
        tried = p.format(Subcat.of(candidates))
        raise NoLabelError(f"no brick labels {l.format_arrow(arrow)} (minimal candidates {tried})")
    if len(passing) > 1:
        raise AmbiguousLabelError(
            f"{l.format_arrow(arrow)} has several labels {p.format(Subcat.of(passing))}"
        )
    return passing[0]


def check_labels(l: TorsLattice) -> CheckReport:
    report = CheckReport(name=f"{l.kind} labels", violations=list(l.label_errors))
    p = l.presentation
    counts = {ident: 0 for ident in p.ids}
    for label in l.labels.values():
        counts[p.ids[label]] += 1
    report.data = {"arrows": len(l.covers), "labelled": len(l.labels), "label_counts": counts}
    return report


def check_bounds(l: TorsLattice) -> CheckReport:
    """Join and meet formulas against least upper and greatest lower bounds found by scan."""
    p = l.presentation
    report = CheckReport(name=f"{l.kind} bounds")
    if l.elements[l.bottom] or l.elements[l.top] != p.full:
        report.violations.append(Violation(rule="bounds", location=l.kind,
                                           detail="bottom is not ∅ or top is not everything"))
    side = l.side
    for i, j in itertools.combinations(range(l.size), 2):
        x, y = l.elements[i], l.elements[j]
        location = f"{p.format(x)}, {p.format(y)}"
        upper = np.flatnonzero(l.leq[i] & l.leq[j])
        least = [k for k in upper if l.leq[k, upper].all()]
        if len(least) != 1 or l.join(i, j) != least[0]:
            report.violations.append(Violation(rule="join formula", location=location,
                                               detail="closure of the union is not the least upper bound"))
        lower = np.flatnonzero(l.leq[:, i] & l.leq[:, j])
        greatest = [k for k in lower if l.leq[lower, k].all()]
        if len(greatest) != 1 or l.meet(i, j) != greatest[0]:
            report.violations.append(Violation(rule="meet formula", location=location,
                                               detail="intersection is not the greatest lower bound"))
        via_perp = side.toward(p, side.away(p, x) & side.away(p, y))
        if l.join(i, j) < 0 or via_perp != l.elements[l.join(i, j)]:
            report.violations.append(Violation(rule="perpendicular join", location=location,
                                               detail=f"perpendicular formula gives {p.format(via_perp)}"))
    return report


def check_semidistributive(l: TorsLattice, sd_bound: int = 4) -> CheckReport:
    """
    SD∧ and SD∨ over all triples, vectorised over join/meet tables.

    The complete form is checked per meet (join) group: every family with a
    common meet against x is checked through the join of its whole group,
    and subsets up to sd_bound are spot-checked directly.
    """
    p = l.presentation
    report = CheckReport(name=f"{l.kind} semidistributive", notes=[f"subset bound {sd_bound}"])
    J, M = l.join_table, l.meet_table
    if (J < 0).any() or (M < 0).any():
        report.violations.append(Violation(rule="closed operations", location=l.kind,
                                           detail="join or meet leaves the enumerated elements"))
        return report

    for x in range(l.size):
        mx, jx = M[x], J[x]
        same_meet = mx[:, None] == mx[None, :]
        bad_meet = same_meet & (mx[J] != mx[:, None])
        same_join = jx[:, None] == jx[None, :]
        bad_join = same_join & (jx[M] != jx[:, None])
        for rule, bad in (("SD meet", bad_meet), ("SD join", bad_join)):
            for y, z in zip(*np.nonzero(bad)):
                if y < z:
                    report.violations.append(Violation(
                        rule=rule, location=p.format(l.elements[x]),
                        detail=f"fails for {p.format(l.elements[y])} and {p.format(l.elements[z])}",
                    ))

    checked = 0
    for x in range(l.size):
        for table, dual, rule in ((M, J, "complete SD meet"), (J, M, "complete SD join")):
            groups: Dict[int, List[int]] = {}
            for y in range(l.size):
                groups.setdefault(int(table[x, y]), []).append(y)
            for value, members in groups.items():
                combined = members[0]
                for y in members[1:]:
                    combined = int(dual[combined, y])
                if table[x, combined] != value:
                    report.violations.append(Violation(
                        rule=rule, location=p.format(l.elements[x]),
                        detail=f"group of {len(members)} elements breaks the identity",
                    ))
                for size in range(3, min(sd_bound, len(members)) + 1):
                    for family in itertools.combinations(members, size):
                        if checked >= SUBSET_BUDGET:
                            break
                        checked += 1
                        combined = family[0]
                        for y in family[1:]:
                            combined = int(dual[combined, y])
                        if table[x, combined] != value:
                            report.violations.append(Violation(
                                rule=rule, location=p.format(l.elements[x]),
                                detail=f"family of {size} elements breaks the identity",
                            ))
    if checked >= SUBSET_BUDGET:
        report.notes.append(f"subset spot check stopped after {SUBSET_BUDGET} families")
    report.data = {"subsets_checked": checked}
    return report


def check_algebraic(l: TorsLattice) -> CheckReport:
    """Every element is the join of its singleton closures, with a greedy compactness witness."""
    p = l.presentation
    report = CheckReport(name=f"{l.kind} algebraic", notes=["compactness witnessed by singleton generators"])
    closure = l.side.closure
    generators = {i: closure(p, Subcat.of([i])) for i in range(p.n)}
    widest = 0
    for x in l.elements:
        joined = closure(p, Subcat.of(j for i in x for j in generators[i]))
        if joined != x:
            report.violations.append(Violation(rule="join of singleton closures", location=p.format(x),
                                               detail=f"singleton closures join to {p.format(joined)}"))
        for i in x:
            target = generators[i]
            current, witness = closure(p, Subcat()), []
            for m in x:
                if target.issubset(current):
                    break
                if not generators[m].issubset(current):
                    witness.append(m)
                    current = closure(p, current | generators[m])
            if not target.issubset(current):
                report.violations.append(Violation(rule="compactness", location=p.format(x),
                                                   detail=f"no finite witness for {p.ids[i]}"))
            widest = max(widest, len(witness))
    report.data = {"largest_witness": widest}
    return report


def _interval(l: TorsLattice, u: int, t: int) -> List[int]:
    return [k for k in range(l.size) if l.leq[u, k] and l.leq[k, t]]


def interval_check(p: CategoryPresentation, l: TorsLattice, u: Subcat, t: Subcat) -> CheckReport:
    """Interval size against the bricks of the interval, and the labelling conditions at size two."""
    report = CheckReport(name="interval")
    ui, ti = l.position(u), l.position(t)
    if not l.leq[ui, ti]:
        raise PreconditionError(f"{p.format(u)} is not contained in {p.format(t)}")
    location = f"[{p.format(u)}, {p.format(t)}]"
    size = len(_interval(l, ui, ti))
    bricks = bricks_in(p, u, t, l.kind)
    report.data = {"size": size, "bricks": p.names(bricks)}

    if (size == 1) != (not bricks):
        report.violations.append(Violation(rule="trivial interval", location=location,
                                           detail=f"size {size} with bricks {p.format(bricks)}"))
    if len(bricks) == 1 and size != 2:
        report.violations.append(Violation(rule="single brick interval", location=location,
                                           detail=f"one brick but size {size}"))
    if size == 2:
        _, passing = _label(p, l.kind, t, u)
        if len(passing) != 1:
            report.violations.append(Violation(rule="unique label", location=location,
                                               detail=f"{len(passing)} bricks satisfy the labelling conditions"))
        else:
            report.data["label"] = p.ids[passing[0]]
    return report


def check_intervals(l: TorsLattice) -> CheckReport:
    p = l.presentation
    report = CheckReport(name=f"{l.kind} intervals")
    count = 0
    for ui, ti in zip(*np.nonzero(l.leq)):
        count += 1
        report.violations.extend(interval_check(p, l, l.elements[ui], l.elements[ti]).violations)
    report.data = {"intervals": count}
    return report


def irr_elements(l: TorsLattice) -> Tuple[List[Subcat], List[Subcat]]:
    """Join-irreducibles (one lower cover) and meet-irreducibles (one upper cover)."""
    jirr = [l.elements[i] for i in range(l.size) if len(l.lower_covers(i)) == 1]
    mirr = [l.elements[i] for i in range(l.size) if len(l.upper_covers(i)) == 1]
    return jirr, mirr


def jbrick_mbrick(p: CategoryPresentation, l: TorsLattice, u: Subcat, t: Subcat) -> Tuple[Subcat, Subcat]:
    side = l.side
    jbrick, mbrick = [], []
    for s in bricks_in(p, u, t, l.kind):
        single = Subcat.of([s])
        if _closed(p, side, t & side.toward(p, single)):
            mbrick.append(s)
        if _closed(p, side, side.closure(p, u | single) & side.toward(p, single)):
            jbrick.append(s)
    return Subcat.of(jbrick), Subcat.of(mbrick)


def _closed(p: CategoryPresentation, side: Side, s: Subcat) -> bool:
    return side.closure(p, s) == s


def standard_check(p: CategoryPresentation) -> bool:
    return standard_report(p).passed


def standard_report(p: CategoryPresentation) -> CheckReport:
    """Sub_Θ(S) ∩ Fac_Θ(S) = {S} for every brick S."""
    report = CheckReport(name="standard")
    for s in p.bricks:
        single = Subcat.of([s])
        overlap = sub_theta(p, single) & fac_theta(p, single)
        if overlap != single:
            report.violations.append(Violation(rule="standard", location=p.ids[s],
                                               detail=f"Sub ∩ Fac is {p.format(overlap)}"))
    return report


def irreducible_bijection_check(p: CategoryPresentation, l: TorsLattice, u: Subcat, t: Subcat) -> CheckReport:
    """
    Jbrick → join-irreducibles and Mbrick → meet-irreducibles of [u, t].

    S ↦ T(u ∪ S) must hit a join-irreducible whose lower cover is T_S ∩ ^⊥S;
    S ↦ t ∩ ^⊥S a meet-irreducible whose upper cover is T(U_S ∪ S).
    """
    if l.kind != "tors":
        raise PreconditionError("irreducible bijections are checked on the tors lattice")
    if not standard_check(p):
        raise PreconditionError(f"{p.name} is not standard")
    report = CheckReport(name="irreducible bijection")
    ui, ti = l.position(u), l.position(t)
    location = f"[{p.format(u)}, {p.format(t)}]"
    inside = set(_interval(l, ui, ti))
    jirr = {k for k in inside if k != ui and len([c for c in l.lower_covers(k) if c in inside]) == 1}
    mirr = {k for k in inside if k != ti and len([c for c in l.upper_covers(k) if c in inside]) == 1}
    jbrick, mbrick = jbrick_mbrick(p, l, u, t)

    images = set()
    for s in jbrick:
        single = Subcat.of([s])
        ts = t_closure(p, u | single)
        k = l._positions.get(ts.mask)
        lower = ts & perp_left(p, single)
        if k not in jirr or [c for c in l.lower_covers(k) if c in inside] != [l._positions.get(lower.mask)]:
            report.violations.append(Violation(rule="Jbrick bijection", location=location,
                                               detail=f"{p.ids[s]} generates {p.format(ts)}"))
        images.add(k)
    if images != jirr:
        report.violations.append(Violation(rule="Jbrick bijection", location=location,
                                           detail=f"{len(jbrick)} bricks for {len(jirr)} join-irreducibles"))

    images = set()
    for s in mbrick:
        single = Subcat.of([s])
        us = t & perp_left(p, single)
        k = l._positions.get(us.mask)
        upper = t_closure(p, us | single)
        if k not in mirr or [c for c in l.upper_covers(k) if c in inside] != [l._positions.get(upper.mask)]:
            report.violations.append(Violation(rule="Mbrick bijection", location=location,
                                               detail=f"{p.ids[s]} cuts out {p.format(us)}"))
        images.add(k)
    if images != mirr:
        report.violations.append(Violation(rule="Mbrick bijection", location=location,
                                           detail=f"{len(mbrick)} bricks for {len(mirr)} meet-irreducibles"))

    if len(inside) == 2:
        bricks = bricks_in(p, u, t)
        if not any(_generates(p, SIDES["tors"], u, t, s) for s in bricks):
            report.violations.append(Violation(rule="two element interval", location=location,
                                               detail="no brick generates both ends"))
    report.data = {"jbrick": p.names(jbrick), "mbrick": p.names(mbrick), "jirr": len(jirr), "mirr": len(mirr)}
    return report


def check_irreducible_bijections(l: TorsLattice) -> CheckReport:
    p = l.presentation
    report = CheckReport(name="irreducible bijections")
    if not standard_check(p):
        report.notes.append("skipped: presentation is not standard")
        return report
    for ui, ti in zip(*np.nonzero(l.leq)):
        report.violations.extend(
            irreducible_bijection_check(p, l, l.elements[ui], l.elements[ti]).violations
        )
    jirr, mirr = irr_elements(l)
    jbrick, mbrick = jbrick_mbrick(p, l, l.elements[l.bottom], l.elements[l.top])
    report.data = {"jirr": len(jirr), "mirr": len(mirr), "jbrick": len(jbrick), "mbrick": len(mbrick)}
    return report


def top_bottom_arrows_check(p: CategoryPresentation, l: TorsLattice, mult_cap: int = 3) -> CheckReport:
    """
    Arrows out of the top are A → ^⊥X and arrows into ∅ are T(X) → ∅, for X in Θ₁.

    When Θ₁ ≠ Θ_∞ the check runs on the presentation relabelled by l_{Θ_∞}.
    """
    report = CheckReport(name="top and bottom arrows")
    if p.n == 0:
        report.notes.append("skipped: empty presentation")
        return report
    st = strata(p)
    q = p
    if not st.length_wide:
        try:
            q = relabel_by_length(p, st.theta_inf, mult_cap)
        except ContractViolation as e:
            report.violations.append(Violation(rule="relabel", location=p.format(st.theta_inf), detail=str(e)))
            return report
        l = build_lattice(q, enumerate_tors(q), "tors")
        st = strata(q)
        report.notes.append(f"relabelled by the filtration length over {p.format(st.theta1)}")

    top, bottom = l.elements[l.top], l.elements[l.bottom]
    actual_top = {(l.elements[lower].mask, l.labels.get((upper, lower), -1))
                  for upper, lower in l.covers if upper == l.top}
    actual_bottom = {(l.elements[upper].mask, l.labels.get((upper, lower), -1))
                     for upper, lower in l.covers if lower == l.bottom}
    predicted_top = {((top & perp_left(q, Subcat.of([x]))).mask, x) for x in st.theta1}
    predicted_bottom = {(t_closure(q, Subcat.of([x])).mask, x) for x in st.theta1}

    for rule, actual, predicted in (("top arrows", actual_top, predicted_top),
                                    ("bottom arrows", actual_bottom, predicted_bottom)):
        for mask, label in sorted(actual ^ predicted):
            side = "unexpected" if (mask, label) in actual else "missing"
            name = q.ids[label] if label >= 0 else "?"
            report.violations.append(Violation(rule=rule, location=q.format(Subcat(mask)),
                                               detail=f"{side} arrow labelled {name}"))
    report.data = {
        "top_arrows": [[q.ids[x], q.names(top & perp_left(q, Subcat.of([x])))] for x in st.theta1],
        "bottom_arrows": [[q.ids[x], q.names(t_closure(q, Subcat.of([x])))] for x in st.theta1],
    }
    if bottom:
        report.violations.append(Violation(rule="bottom arrows", location=q.format(bottom),
                                           detail="bottom element is not ∅"))
    return report


def dual_lattice_check(p: CategoryPresentation, tors: Optional[TorsLattice] = None,
                       torf: Optional[TorsLattice] = None) -> CheckReport:
    """T ↦ T^⊥ is an order-reversing bijection carrying labelled covers to labelled covers."""
    tors = build_lattice(p, enumerate_tors(p), "tors") if tors is None else tors
    torf = build_lattice(p, enumerate_torf(p), "torf") if torf is None else torf
    report = CheckReport(name="tors/torf duality")
    image: Dict[int, Optional[int]] = {
        i: torf._positions.get(perp_right(p, t).mask) for i, t in enumerate(tors.elements)
    }
    missing = [i for i, k in image.items() if k is None]
    for i in missing:
        report.violations.append(Violation(rule="duality bijection", location=p.format(tors.elements[i]),
                                           detail="T^⊥ is not an enumerated torsion-free class"))
    if missing or len(set(image.values())) != torf.size or tors.size != torf.size:
        report.violations.append(Violation(rule="duality bijection", location=p.name,
                                           detail=f"{tors.size} torsion classes, {torf.size} torsion-free classes"))
        return report

    phi = np.array([image[i] for i in range(tors.size)])
    if not (tors.leq == torf.leq[np.ix_(phi, phi)].T).all():
        report.violations.append(Violation(rule="order reversing", location=p.name,
                                           detail="perpendicular map does not reverse inclusion"))
    if not (phi[tors.join_table] == torf.meet_table[np.ix_(phi, phi)]).all():
        report.violations.append(Violation(rule="joins to meets", location=p.name,
                                           detail="perpendicular of a join is not the meet of perpendiculars"))
    torf_labels = dict(torf.labels)
    for (upper, lower), label in tors.labels.items():
        dual = (int(phi[lower]), int(phi[upper]))
        if dual not in torf.covers:
            report.violations.append(Violation(rule="covers preserved", location=tors.format_arrow((upper, lower)),
                                               detail="dual pair is not a torsion-free cover"))
        elif torf_labels.get(dual) != label:
            report.violations.append(Violation(rule="labels preserved", location=tors.format_arrow((upper, lower)),
                                               detail=f"label {p.ids[label]} becomes "
                                                      f"{p.ids[torf_labels[dual]] if dual in torf_labels else 'none'}"))
    return report


def brick_table(p: CategoryPresentation, l: TorsLattice) -> List[BrickRow]:
    """Per brick: T({S}) and ^⊥S, for bricks in Jbrick or Mbrick of the whole lattice."""
    jbrick, mbrick = jbrick_mbrick(p, l, l.elements[l.bottom], l.elements[l.top])
    rows = []
    for s in jbrick | mbrick:
        single = Subcat.of([s])
        rows.append(BrickRow(brick=p.ids[s], jirr=p.names(t_closure(p, single)),
                             mirr=p.names(perp_left(p, single))))
    return rows


def hasse_stats(l: TorsLattice) -> Dict[str, object]:
    p = l.presentation
    jirr, mirr = irr_elements(l)
    return {
        "elements": l.size,
        "arrows": len(l.covers),
        "jirr": [p.names(s) for s in jirr],
        "mirr": [p.names(s) for s in mirr],
        "label_counts": check_labels(l).data["label_counts"],
    }


def lattice_reports(p: CategoryPresentation, max_indecs: int = 22, jobs: int = 1,
                    sd_bound: int = 4, mult_cap: int = 3) -> List[CheckReport]:
    """Every lattice check over both the tors and the torf lattice."""
    tors = build_lattice(p, enumerate_tors(p, max_indecs, jobs), "tors")
    torf = build_lattice(p, enumerate_torf(p, max_indecs, jobs), "torf")
    reports = []
    for l in (tors, torf):
        reports += [check_bounds(l), check_labels(l), check_semidistributive(l, sd_bound),
                    check_algebraic(l), check_intervals(l)]
    reports += [
        standard_report(p),
        check_irreducible_bijections(tors),
        top_bottom_arrows_check(p, tors, mult_cap),
        dual_lattice_check(p, tors, torf),
    ]
    return reports
