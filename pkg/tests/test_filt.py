import pytest

from exlen.errors import PreconditionError
from exlen.models import PresentationDocument
from exlen.services import filt
from exlen.services.presentation import ObjClass, from_document


def test_filt_closure_of_simples_is_everything(ka2):
    assert filt.filt_closure(ka2, ka2.subcat(["S1", "S2"])) == ka2.full
    assert filt.filt_closure(ka2, ka2.subcat(["S1"])) == ka2.subcat(["S1"])


def test_filt_length_counts_composition_factors(ka2):
    x = ka2.subcat(["S1", "S2"])
    assert filt.filt_length(ka2, x, ka2.obj(["P1"])) == 2
    assert filt.filt_length(ka2, x, ka2.obj(["P1", "S1"])) == 3
    assert filt.filt_length(ka2, x, ObjClass.zero(3)) == 0
    assert filt.filt_length(ka2, ka2.subcat(["S1"]), ka2.obj(["P1"])) is None


def test_strata_of_a_length_wide_category(ka2):
    st = filt.strata(ka2)
    assert ka2.names(st.theta1) == ["S1", "S2"]
    assert st.theta_inf == st.theta1
    assert st.length_wide


def test_strata_of_a_weighted_category(load_corpus):
    p = load_corpus("ka2_weighted")
    st = filt.strata(p)
    assert p.names(st.theta1) == ["S1"]
    assert [(level, p.names(s)) for level, s in st.strata] == [(1, ["S1"]), (2, ["S2"])]
    assert p.names(st.theta_inf) == ["S1", "S2"]
    assert not st.length_wide


def test_strata_need_objects(load_corpus):
    with pytest.raises(PreconditionError):
        filt.strata(load_corpus("empty"))


def test_simples(a327, ka2):
    assert ka2.names(filt.simples(ka2, ka2.full)) == ["S1", "S2"]
    assert a327.names(filt.simples(a327, a327.full)) == ["S2m", "S1m", "P1"]
    assert ka2.names(filt.simples(ka2, ka2.subcat(["S1"]))) == ["S1"]


def test_simples_need_an_extension_closed_scope(ka2):
    with pytest.raises(PreconditionError):
        filt.simples(ka2, ka2.subcat(["S1", "S2"]))


def test_semibricks(ka2):
    found = [ka2.names(x) for x in filt.enumerate_semibricks(ka2)]
    assert found == [[], ["S1"], ["S2"], ["P1"], ["S1", "S2"]]
    assert filt.sms_check(ka2, ka2.subcat(["S1", "S2"]))
    assert not filt.semibrick_check(ka2, ka2.subcat(["S2", "P1"]))


def test_dual_numbers_have_one_brick(dual_numbers):
    assert [dual_numbers.names(x) for x in filt.enumerate_semibricks(dual_numbers)] == [[], ["S"]]


def test_length_wide_roundtrip(a327):
    for x in filt.enumerate_semibricks(a327):
        assert filt.length_wide_roundtrip(a327, x)


def test_roundtrip_requires_a_semibrick(ka2):
    with pytest.raises(PreconditionError):
        filt.length_wide_roundtrip(ka2, ka2.subcat(["S2", "P1"]))


def test_relabel_by_length(load_corpus):
    p = load_corpus("ka2_weighted")
    q = filt.relabel_by_length(p, p.subcat(["S1", "S2"]))
    assert q.thetas == (1, 1, 2)
    assert p.thetas == (1, 2, 3)
    assert all(cf.stable for cf in q.conflations)
    assert filt.strata(q).length_wide


def test_relabelled_theta_is_the_filtration_length_over_all_conflations(load_corpus):
    p = load_corpus("nonstandard")
    x = p.subcat(["M"])
    q = filt.relabel_by_length(p, x)
    expected = tuple(filt.filt_length(p, x, ObjClass.unit(p.n, i), stable_only=False) for i in range(p.n))
    assert q.thetas == expected == (1, 2)


def test_relabel_filters_through_unstable_conflations():
    p = from_document(PresentationDocument.model_validate({
        "name": "unstable_middle",
        "indecs": [{"id": "A", "theta": 1}, {"id": "B", "theta": 1}, {"id": "E", "theta": 5}],
        "conflations": [{"a": ["A"], "b": ["E"], "c": ["B"], "stable": False}],
    }))
    x = p.subcat(["A", "B"])
    assert filt.filt_length(p, x, p.obj(["E"])) is None
    q = filt.relabel_by_length(p, x)
    assert q.thetas == (1, 1, 2)
    assert all(cf.stable for cf in q.conflations)


def test_proper_semibricks_of_an_unstable_presentation(load_corpus):
    p = load_corpus("shift_pair")
    report = filt.semibrick_report(p)
    assert report.data["count"] == 4
    assert sum(row["proper"] for row in report.data["semibricks"]) == 3


def test_strata_report_on_a_length_wide_category(a327):
    report = filt.strata_report(a327)
    assert report.passed, report.violations
    assert report.data["length_wide"]
    assert report.data["theta1"] == ["S2m", "S1m", "P1"]


def test_strata_report_without_wide_strata_notes_it(load_corpus):
    report = filt.strata_report(load_corpus("ka2_weighted"))
    assert any("not length wide" in note for note in report.notes)
