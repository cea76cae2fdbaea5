"""
Finite presentations of extriangulated length categories.

A presentation lists the indecomposables with their Θ values, the Hom
dimensions between them, the nonvanishing stable extensions, and the
recorded conflations. Objects are multisets of indecomposables; subcategories
are bitmasks over declaration order.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..errors import PreconditionError, PresentationError
from ..models import PresentationDocument, ValidationReport, Violation
from .cache import ClosureCache

logger = logging.getLogger(__name__)

Rule = Tuple[int, int]  # (needed mask, gained mask)


def _mask(indices: Iterable) -> int:
    return Subcat.of(int(i) for i in indices).mask


@dataclass(frozen=True)
class Subcat:
    """add(members) for a set of indecomposables, stored as a bitmask."""
    mask: int = 0

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Subcat":
        mask = 0
        for index in indices:
            mask |= 1 << index
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "Subcat":
        return cls((1 << n) - 1)

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        mask, index = self.mask, 0
        while mask:
            if mask & 1:
                yield index
            mask >>= 1
            index += 1

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __or__(self, other: "Subcat") -> "Subcat":
        return Subcat(self.mask | other.mask)

    def __and__(self, other: "Subcat") -> "Subcat":
        return Subcat(self.mask & other.mask)

    def __sub__(self, other: "Subcat") -> "Subcat":
        return Subcat(self.mask & ~other.mask)

    def issubset(self, other: "Subcat") -> bool:
        return not self.mask & ~other.mask

    @property
    def key(self) -> Tuple[int, ...]:
        """Canonical key: member indices in declaration order."""
        return tuple(self)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self), self.key)


@dataclass(frozen=True)
class ObjClass:
    """Isomorphism class of an object: multiplicity per indecomposable."""
    mult: Tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "ObjClass":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, index: int) -> "ObjClass":
        return cls(tuple(1 if i == index else 0 for i in range(n)))

    @property
    def support(self) -> Subcat:
        return Subcat.of(i for i, k in enumerate(self.mult) if k)

    @property
    def total(self) -> int:
        return sum(self.mult)

    def is_zero(self) -> bool:
        return not any(self.mult)

    def contains(self, other: "ObjClass") -> bool:
        """Whether other is a direct summand of self."""
        return all(x >= y for x, y in zip(self.mult, other.mult))

    def __add__(self, other: "ObjClass") -> "ObjClass":
        return ObjClass(tuple(x + y for x, y in zip(self.mult, other.mult)))

    def __sub__(self, other: "ObjClass") -> "ObjClass":
        return ObjClass(tuple(x - y for x, y in zip(self.mult, other.mult)))


@dataclass(frozen=True)
class Conflation:
    """A recorded conflation a → b → c."""
    a: ObjClass
    b: ObjClass
    c: ObjClass
    stable: bool
    split: bool = False
    index: int = -1  # position in the source document

    @property
    def location(self) -> str:
        return f"conflations[{self.index}]"

    @property
    def support(self) -> Subcat:
        return self.a.support | self.b.support | self.c.support


@dataclass(frozen=True, eq=False)
class CategoryPresentation:
    """Immutable finite model of a length category."""
    name: str
    ids: Tuple[str, ...]
    thetas: Tuple[int, ...]
    hom: np.ndarray  # hom[i, j] = dim Hom(X_i, X_j)
    ext: np.ndarray  # ext[c, a] = E_Θ(X_c, X_a) != 0
    conflations: Tuple[Conflation, ...] = ()
    closures: ClosureCache = field(default_factory=ClosureCache, repr=False)

    def __post_init__(self):
        self.hom.setflags(write=False)
        self.ext.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.ids)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {ident: i for i, ident in enumerate(self.ids)}

    def index(self, ident: str) -> int:
        try:
            return self._positions[ident]
        except KeyError:
            raise PresentationError(f"unknown indecomposable '{ident}'") from None

    @property
    def full(self) -> Subcat:
        return Subcat.full(self.n)

    def subcat(self, idents: Iterable[str]) -> Subcat:
        return Subcat.of(self.index(ident) for ident in idents)

    def obj(self, idents: Iterable[str]) -> ObjClass:
        mult = [0] * self.n
        for ident in idents:
            mult[self.index(ident)] += 1
        return ObjClass(tuple(mult))

    def names(self, s: Subcat) -> List[str]:
        return [self.ids[i] for i in s]

    def format(self, s: Subcat) -> str:
        return "{" + ",".join(self.names(s)) + "}"

    def format_obj(self, m: ObjClass) -> str:
        if m.is_zero():
            return "0"
        parts = []
        for i, k in enumerate(m.mult):
            if k:
                parts.append(self.ids[i] if k == 1 else f"{self.ids[i]}^{k}")
        return "⊕".join(parts)

    def format_conflation(self, cf: Conflation) -> str:
        return f"{self.format_obj(cf.a)} → {self.format_obj(cf.b)} → {self.format_obj(cf.c)}"

    # Object-level queries

    def _sized(self, m: ObjClass) -> ObjClass:
        if len(m.mult) != self.n:
            raise PreconditionError(f"{self.name}: object class has {len(m.mult)} multiplicities, expected {self.n}")
        return m

    def theta(self, m: ObjClass) -> int:
        return int(sum(k * t for k, t in zip(self._sized(m).mult, self.thetas)))

    def hom_dim(self, m: ObjClass, other: ObjClass) -> int:
        m, other = self._sized(m), self._sized(other)
        return int(np.asarray(m.mult) @ self.hom @ np.asarray(other.mult)) if self.n else 0

    def is_brick(self, index: Union[int, str]) -> bool:
        if isinstance(index, str):
            index = self.index(index)
        return int(self.hom[index, index]) == 1

    @cached_property
    def bricks(self) -> Subcat:
        return Subcat.of(i for i in range(self.n) if self.is_brick(i))

    # Bitmask tables

    @cached_property
    def hom_out(self) -> Tuple[int, ...]:
        """hom_out[i]: indecs receiving a nonzero map from X_i."""
        return tuple(_mask(np.flatnonzero(self.hom[i] > 0)) for i in range(self.n))

    @cached_property
    def hom_in(self) -> Tuple[int, ...]:
        """hom_in[j]: indecs with a nonzero map into X_j."""
        return tuple(_mask(np.flatnonzero(self.hom[:, j] > 0)) for j in range(self.n))

    @cached_property
    def ext_out(self) -> Tuple[int, ...]:
        """ext_out[m]: indecs t with E_Θ(X_m, X_t) != 0."""
        return tuple(_mask(np.flatnonzero(self.ext[m])) for m in range(self.n))

    @cached_property
    def ext_in(self) -> Tuple[int, ...]:
        """ext_in[m]: indecs c with E_Θ(X_c, X_m) != 0."""
        return tuple(_mask(np.flatnonzero(self.ext[:, m])) for m in range(self.n))

    # Closure rules derived from the conflation list. Split conflations need no
    # rule: subcategories are summand-closed, so closing {a, c} already holds a⊕c.

    def _rules(self, pairs: Iterable[Rule]) -> Tuple[Rule, ...]:
        seen = []
        for need, gain in pairs:
            if need and gain & ~need and (need, gain) not in seen:
                seen.append((need, gain))
        return tuple(seen)

    @cached_property
    def extension_rules(self) -> Tuple[Rule, ...]:
        return self._rules((cf.a.support.mask | cf.c.support.mask, cf.b.support.mask)
                           for cf in self.conflations)

    @cached_property
    def stable_extension_rules(self) -> Tuple[Rule, ...]:
        return self._rules((cf.a.support.mask | cf.c.support.mask, cf.b.support.mask)
                           for cf in self.conflations if cf.stable)

    @cached_property
    def quotient_rules(self) -> Tuple[Rule, ...]:
        return self._rules((cf.b.support.mask, cf.c.support.mask)
                           for cf in self.conflations if cf.stable)

    @cached_property
    def subobject_rules(self) -> Tuple[Rule, ...]:
        return self._rules((cf.b.support.mask, cf.a.support.mask)
                           for cf in self.conflations if cf.stable)

    @cached_property
    def digest(self) -> str:
        """Content hash used to key cached artifacts."""
        payload = json.dumps({
            "name": self.name,
            "ids": self.ids,
            "thetas": self.thetas,
            "hom": self.hom.tolist(),
            "ext": self.ext.tolist(),
            "conflations": [(cf.a.mult, cf.b.mult, cf.c.mult, cf.stable, cf.split)
                            for cf in self.conflations],
        }, sort_keys=True)
        return hashlib.md5(payload.encode()).hexdigest()


# Loading

def _format_loc(loc: Sequence[Union[str, int]]) -> str:
    text = ""
    for part in loc:
        text += f"[{part}]" if isinstance(part, int) else (f".{part}" if text else str(part))
    return text


def _obj_from_ids(idents: List[str], positions: Dict[str, int], n: int, location: str) -> ObjClass:
    mult = [0] * n
    for k, ident in enumerate(idents):
        if ident not in positions:
            raise PresentationError(f"unknown indecomposable '{ident}'", location=f"{location}[{k}]")
        mult[positions[ident]] += 1
    return ObjClass(tuple(mult))


def from_document(document: PresentationDocument, source: str = "<document>") -> CategoryPresentation:
    """Build a presentation from a schema-checked document."""
    positions: Dict[str, int] = {}
    for k, entry in enumerate(document.indecs):
        if entry.id in positions:
            raise PresentationError(f"duplicate id '{entry.id}'", location=f"{source}:indecs[{k}].id")
        positions[entry.id] = k
    n = len(positions)

    def resolve(ident: str, location: str) -> int:
        if ident not in positions:
            raise PresentationError(f"unknown indecomposable '{ident}'", location=f"{source}:{location}")
        return positions[ident]

    hom = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(hom, 1)
    seen_hom = set()
    for k, entry in enumerate(document.hom):
        i = resolve(entry.from_, f"hom[{k}].from")
        j = resolve(entry.to, f"hom[{k}].to")
        if (i, j) in seen_hom:
            raise PresentationError(f"duplicate hom entry {entry.from_} → {entry.to}", location=f"{source}:hom[{k}]")
        seen_hom.add((i, j))
        hom[i, j] = entry.dim

    ext = np.zeros((n, n), dtype=bool)
    for k, entry in enumerate(document.ext):
        ext[resolve(entry.from_, f"ext[{k}].from"), resolve(entry.to, f"ext[{k}].to")] = True

    conflations = []
    for k, entry in enumerate(document.conflations):
        parts = {
            name: _obj_from_ids(getattr(entry, name), positions, n, f"{source}:conflations[{k}].{name}")
            for name in ("a", "b", "c")
        }
        conflations.append(Conflation(stable=entry.stable, split=entry.split, index=k, **parts))

    presentation = CategoryPresentation(
        name=document.name,
        ids=tuple(entry.id for entry in document.indecs),
        thetas=tuple(entry.theta for entry in document.indecs),
        hom=hom,
        ext=ext,
        conflations=tuple(conflations),
    )
    logger.info(f"Loaded {presentation.name}: {n} indecomposables, {len(conflations)} conflations")
    return presentation


def parse_presentation(text: str, source: str = "<string>") -> CategoryPresentation:
    """Parse a JSON corpus document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(e.msg, location=f"{source}:{e.lineno}:{e.colno}") from e
    try:
        document = PresentationDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise PresentationError(first["msg"], location=f"{source}:{_format_loc(first['loc'])}") from e
    return from_document(document, source)


def load(source: Union[str, Path]) -> CategoryPresentation:
    """Load a presentation from a corpus file."""
    path = Path(source)
    return parse_presentation(path.read_text(encoding="utf-8"), source=path.name)


# Validation

def validate(p: CategoryPresentation) -> ValidationReport:
    """Check every object-level invariant of the presentation; never raises."""
    violations: List[Violation] = []

    for i, ident in enumerate(p.ids):
        if p.thetas[i] < 1:
            violations.append(Violation(
                rule="theta positive", location=f"indecs[{i}]",
                detail=f"Θ({ident}) = {p.thetas[i]}",
            ))
        if p.hom[i, i] < 1:
            violations.append(Violation(
                rule="identity morphism", location=f"indecs[{i}]",
                detail=f"dim Hom({ident}, {ident}) = {int(p.hom[i, i])}",
            ))

    for cf in p.conflations:
        ta, tb, tc = p.theta(cf.a), p.theta(cf.b), p.theta(cf.c)
        shown = p.format_conflation(cf)
        if tb > ta + tc:
            violations.append(Violation(
                rule="subadditivity", location=cf.location,
                detail=f"{shown}: Θ(b) = {tb} > {ta} + {tc}",
            ))
        if cf.stable and tb != ta + tc:
            violations.append(Violation(
                rule="stability equality", location=cf.location,
                detail=f"{shown}: marked stable but Θ(b) = {tb}, Θ(a) + Θ(c) = {ta + tc}",
            ))
        if cf.split and (not cf.stable or cf.b != cf.a + cf.c):
            violations.append(Violation(
                rule="split shape", location=cf.location,
                detail=f"{shown}: a split conflation must be stable with b = a ⊕ c",
            ))
        if cf.stable and not cf.split and cf.a.total == 1 and cf.c.total == 1:
            (a,), (c,) = cf.a.support.key, cf.c.support.key
            if not p.ext[c, a]:
                violations.append(Violation(
                    rule="ext consistency", location=cf.location,
                    detail=f"{shown}: non-split stable conflation but E_Θ({p.ids[c]}, {p.ids[a]}) is not marked",
                ))

    if violations:
        logger.warning(f"{p.name}: {len(violations)} validation violations")
    return ValidationReport(name=p.name, violations=violations)


# Module-level forms of the object queries

def theta(p: CategoryPresentation, m: ObjClass) -> int:
    return p.theta(m)


def hom_dim(p: CategoryPresentation, m: ObjClass, other: ObjClass) -> int:
    return p.hom_dim(m, other)


def is_brick(p: CategoryPresentation, index: Union[int, str]) -> bool:
    return p.is_brick(index)
