import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exlen.errors import ContractViolation, EnumerationLimitError, PreconditionError
from exlen.models import PresentationDocument
from exlen.services import filt, tautilt, torsion
from exlen.services.presentation import Subcat, from_document


@st.composite
def presentations(draw):
    """Small random presentations; only the closure rules matter here, not validity."""
    n = draw(st.integers(min_value=1, max_value=5))
    ids = [f"X{i}" for i in range(n)]
    members = st.lists(st.sampled_from(ids), min_size=0, max_size=2)
    hom = draw(st.lists(st.tuples(st.sampled_from(ids), st.sampled_from(ids)), max_size=6, unique=True))
    conflations = draw(st.lists(
        st.fixed_dictionaries({"a": members, "b": members, "c": members, "stable": st.booleans()}),
        max_size=5,
    ))
    document = PresentationDocument.model_validate({
        "name": "random",
        "indecs": [{"id": ident, "theta": 1} for ident in ids],
        "hom": [{"from": i, "to": j, "dim": 1} for i, j in hom if i != j],
        "conflations": conflations,
    })
    return from_document(document)


@st.composite
def presentation_and_subcats(draw):
    p = draw(presentations())
    masks = st.integers(min_value=0, max_value=(1 << p.n) - 1)
    return p, Subcat(draw(masks)), Subcat(draw(masks))


@settings(max_examples=60, deadline=None)
@given(presentation_and_subcats())
def test_t_closure_is_a_closure_operator(case):
    p, s, r = case
    closed = torsion.t_closure(p, s)
    assert s.issubset(closed)
    assert torsion.t_closure(p, closed) == closed
    assert torsion.t_closure(p, s & r).issubset(closed)
    assert torsion.is_torsion_class(p, closed)


@settings(max_examples=60, deadline=None)
@given(presentation_and_subcats())
def test_f_closure_is_a_closure_operator(case):
    p, s, r = case
    closed = torsion.f_closure(p, s)
    assert s.issubset(closed)
    assert torsion.f_closure(p, closed) == closed
    assert torsion.f_closure(p, s & r).issubset(closed)


CLOSURES = {
    "fac": lambda p, s: torsion.fac_theta(p, s),
    "sub": lambda p, s: torsion.sub_theta(p, s),
    "filt_stable": lambda p, s: filt.filt_closure(p, s),
    "filt_all": lambda p, s: filt.filt_closure(p, s, stable_only=False),
}


@pytest.mark.parametrize("operator", sorted(CLOSURES))
@settings(max_examples=40, deadline=None)
@given(case=presentation_and_subcats())
def test_generating_operators_are_closures(operator, case):
    p, s, r = case
    close = CLOSURES[operator]
    closed = close(p, s)
    assert s.issubset(closed)
    assert close(p, closed) == closed
    assert close(p, s & r).issubset(closed)


@settings(max_examples=60, deadline=None)
@given(presentation_and_subcats())
def test_perpendiculars_form_a_galois_connection(case):
    p, s, _ = case
    assert torsion.perp_right(p, torsion.perp_left(p, torsion.perp_right(p, s))) == torsion.perp_right(p, s)
    assert torsion.perp_left(p, torsion.perp_right(p, torsion.perp_left(p, s))) == torsion.perp_left(p, s)
    assert s.issubset(torsion.perp_left(p, torsion.perp_right(p, s)))


@settings(max_examples=40, deadline=None)
@given(presentations())
def test_bottom_up_enumeration_matches_exhaustive_scan(p):
    assert torsion.enumerate_tors(p) == torsion.enumerate_tors(p, exhaustive=True)
    assert torsion.enumerate_torf(p) == torsion.enumerate_torf(p, exhaustive=True)


@settings(max_examples=20, deadline=None)
@given(presentations())
def test_parallel_enumeration_matches_serial(p):
    assert torsion.enumerate_tors(p, jobs=3) == torsion.enumerate_tors(p)
    assert torsion.enumerate_tors(p, jobs=2, exhaustive=True) == torsion.enumerate_tors(p)


def test_fac_and_sub(ka2):
    assert ka2.names(torsion.fac_theta(ka2, ka2.subcat(["P1"]))) == ["S1", "P1"]
    assert ka2.names(torsion.sub_theta(ka2, ka2.subcat(["P1"]))) == ["S2", "P1"]
    assert ka2.names(torsion.fac_theta(ka2, ka2.subcat(["S2"]))) == ["S2"]


def test_single_step_fac_stops_after_one_conflation(a327):
    s = a327.subcat(["P2"])
    one_step = torsion.fac_theta(a327, s, transitive=False)
    assert s.issubset(one_step)
    assert one_step.issubset(torsion.fac_theta(a327, s))


def test_torsion_classes_of_ka2(ka2):
    tors = torsion.enumerate_tors(ka2)
    assert [ka2.names(t) for t in tors] == [[], ["S1"], ["S2"], ["S1", "P1"], ["S1", "S2", "P1"]]
    assert len(torsion.enumerate_torf(ka2)) == 5


def test_counts_on_the_bundled_corpus(a327, dual_numbers, load_corpus):
    assert len(torsion.enumerate_tors(a327)) == 14
    assert len(torsion.enumerate_torf(a327)) == 14
    assert [dual_numbers.names(t) for t in torsion.enumerate_tors(dual_numbers)] == [[], ["S", "P"]]
    assert len(torsion.enumerate_tors(load_corpus("shift_pair"))) == 4
    assert [t.mask for t in torsion.enumerate_tors(load_corpus("empty"))] == [0]


def test_enumeration_bound(a327):
    with pytest.raises(EnumerationLimitError) as info:
        torsion.enumerate_tors(a327, max_indecs=5)
    assert info.value.count == 6 and info.value.bound == 5
    assert "--max-indecs" in str(info.value)


def test_torsion_pairs(ka2):
    t, f = torsion.torsion_pair_of(ka2, ka2.subcat(["S1"]))
    assert ka2.names(f) == ["S2", "P1"]
    t, f = torsion.torsionfree_pair_of(ka2, ka2.subcat(["S2", "P1"]))
    assert ka2.names(t) == ["S1"]


def test_torsion_pair_needs_a_torsion_class(ka2):
    with pytest.raises(PreconditionError):
        torsion.torsion_pair_of(ka2, ka2.subcat(["P1"]))


def test_missing_conflation_breaks_the_round_trip(load_corpus):
    p = load_corpus("missing_conflation")
    t = p.subcat(["S1m", "P1"])
    assert torsion.is_torsion_class(p, t)
    with pytest.raises(ContractViolation):
        torsion.torsion_pair_of(p, t)
    report = torsion.torsion_report(p, torsion.enumerate_tors(p), torsion.enumerate_torf(p))
    assert "torsion pair round trip" in {v.rule for v in report.violations}


def test_torsion_report_passes_on_a327(a327):
    report = torsion.torsion_report(a327, torsion.enumerate_tors(a327), torsion.enumerate_torf(a327))
    assert report.passed, report.violations
    assert report.data == {"tors_count": 14, "torf_count": 14}


def test_two_pass_closure_agrees(ka2, dual_numbers, a327):
    for p in (ka2, dual_numbers, a327):
        for mask in range(1 << p.n):
            assert torsion.closure_agreement(p, Subcat(mask))


def test_tau_rigid_sets_generate_their_quotient_closure(ka2, dual_numbers):
    rigid = {}
    for p in (ka2, dual_numbers):
        rigid[p.name] = [Subcat(mask) for mask in range(1 << p.n) if tautilt.tau_rigid_check(p, Subcat(mask))]
        for s in rigid[p.name]:
            assert torsion.t_closure(p, s) == torsion.fac_theta(p, s)
    assert [ka2.names(s) for s in rigid["mod_kA2"]] == [[], ["S1"], ["S2"], ["P1"], ["S1", "P1"], ["S2", "P1"]]
    assert [dual_numbers.names(s) for s in rigid["dual_numbers"]] == [[], ["P"]]


def test_closures_are_memoised(ka2):
    s = ka2.subcat(["S1", "S2"])
    torsion.t_closure(ka2, s)
    hits = ka2.closures.hits
    assert torsion.t_closure(ka2, s) == ka2.full
    assert ka2.closures.hits == hits + 1
