"""
Pydantic models for exlen.

Defines the corpus document schema, the report structures every check
returns, and the run configuration of the command-line front end.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


# Corpus document schema. Key names are normative so corpus files stay portable.

class IndecEntry(BaseModel):
    """One indecomposable object and its length."""
    model_config = ConfigDict(extra="forbid")

    id: str = Field(..., min_length=1, description="Unique identifier")
    theta: int = Field(..., description="Value of the length function")


class HomEntry(BaseModel):
    """Dimension of Hom(from, to); absent pairs are 0 off the diagonal and 1 on it."""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    from_: str = Field(..., alias="from", description="Source indecomposable")
    to: str = Field(..., description="Target indecomposable")
    dim: int = Field(..., ge=0, description="Hom dimension")


class ExtEntry(BaseModel):
    """Marks E_Θ(from, to) as nonzero."""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    from_: str = Field(..., alias="from", description="Third term of the extension")
    to: str = Field(..., description="First term of the extension")


class ConflationEntry(BaseModel):
    """A recorded conflation a → b → c; repeated ids encode multiplicity."""
    model_config = ConfigDict(extra="forbid")

    a: List[str] = Field(default_factory=list, description="First term")
    b: List[str] = Field(default_factory=list, description="Middle term")
    c: List[str] = Field(default_factory=list, description="Third term")
    stable: bool = Field(..., description="Θ(b) = Θ(a) + Θ(c)")
    split: bool = Field(default=False, description="b = a ⊕ c and the extension vanishes")


class PresentationDocument(BaseModel):
    """A finite presentation of an extriangulated length category."""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Presentation name")
    indecs: List[IndecEntry] = Field(default_factory=list)
    hom: List[HomEntry] = Field(default_factory=list)
    ext: List[ExtEntry] = Field(default_factory=list)
    conflations: List[ConflationEntry] = Field(default_factory=list)


# Reports

class Violation(BaseModel):
    """A single failed rule, pinpointed to a location in the input or lattice."""
    rule: str = Field(..., description="Name of the violated rule")
    location: str = Field(..., description="Where the violation was found")
    detail: str = Field(default="", description="Human-readable explanation")


class ValidationReport(BaseModel):
    """Result of validating a presentation; empty means pass."""
    name: str
    violations: List[Violation] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations


class CheckReport(BaseModel):
    """Result of one structural check over a presentation or lattice."""
    name: str = Field(..., description="Check name")
    violations: List[Violation] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list, description="Scope notes and skipped parts")
    data: Dict[str, Any] = Field(default_factory=dict, description="Computed values")

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations


class BrickRow(BaseModel):
    """One row of the brick table: a brick, its join-irreducible and its meet-irreducible."""
    brick: str
    jirr: List[str]
    mirr: List[str]


class TauTiltRow(BaseModel):
    """A torsion pair with its Θ-projectives and Θ-injectives."""
    tors: List[str]
    torf: List[str]
    projectives: List[str] = Field(..., description="P(T)")
    injectives: List[str] = Field(..., description="I(F)")
    support: bool = Field(..., description="T = Fac(P(T)) (finite-case criterion)")
    cosupport: bool = Field(..., description="F = Sub(I(F)) (finite-case criterion)")


class ExpectedOutcome(BaseModel):
    """Committed expectation for one bundled corpus file."""
    model_config = ConfigDict(extra="forbid")

    corpus: str = Field(..., description="Corpus file name under corpus/")
    exit_code: int = Field(default=0, ge=0, le=4)
    facts: Dict[str, Any] = Field(default_factory=dict, description="Subset of computed facts")
    rules: List[str] = Field(default_factory=list, description="Violation rules that must appear")


# Run configuration

Command = Literal[
    "validate", "strata", "simples", "semibricks", "tors", "hasse",
    "check", "intervals", "tautilt", "report", "selftest",
]


class RunConfig(BaseModel):
    """Parsed command line plus environment defaults."""
    command: Command
    input: Optional[Path] = Field(default=None, description="Corpus document")
    output: Optional[Path] = Field(default=None, description="Write stdout text here instead")
    dot: Optional[Path] = Field(default=None, description="DOT file for hasse")
    corpus_dir: Optional[Path] = Field(default=None, description="Corpus root for selftest")
    count: bool = False
    pairs: bool = False
    table: bool = False
    json_output: bool = Field(default=False, description="Emit structured output")
    sub: Optional[List[str]] = Field(default=None, description="Subcategory ids for simples")
    jobs: int = Field(default=1, ge=1, description="Parallel enumeration workers")
    max_indecs: int = Field(default=22, ge=1, description="Enumeration bound")
    mult_cap: int = Field(default=3, ge=1, description="Multiplicity cap for filtration search")
    sd_bound: int = Field(default=4, ge=1, description="Subset bound for complete semidistributivity")
    stable_only: bool = Field(default=True, description="Use only stable conflations in Filt")


class CommandOutput(BaseModel):
    """What one command produced: text for stdout plus the structured form behind it."""
    command: str
    name: str = ""
    exit_code: int = 0
    text: str = Field(default="", exclude=True, description="Line-oriented stdout text")
    data: Dict[str, Any] = Field(default_factory=dict)
    reports: List[CheckReport] = Field(default_factory=list)
