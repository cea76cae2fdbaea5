import json

import pytest

from exlen.errors import PreconditionError, PresentationError
from exlen.services.presentation import ObjClass, Subcat, parse_presentation, validate


def doc(**overrides):
    base = {
        "name": "tiny",
        "indecs": [{"id": "S1", "theta": 1}, {"id": "S2", "theta": 1}, {"id": "P1", "theta": 2}],
        "hom": [{"from": "S2", "to": "P1", "dim": 1}, {"from": "P1", "to": "S1", "dim": 1}],
        "ext": [{"from": "S1", "to": "S2"}],
        "conflations": [{"a": ["S2"], "b": ["P1"], "c": ["S1"], "stable": True}],
    }
    base.update(overrides)
    return json.dumps(base)


def test_subcat_set_operations():
    s = Subcat.of([0, 2])
    t = Subcat.of([2, 3])
    assert list(s | t) == [0, 2, 3]
    assert list(s & t) == [2]
    assert list(s - t) == [0]
    assert len(s) == 2
    assert 2 in s and 1 not in s
    assert Subcat.of([2]).issubset(s)
    assert Subcat.full(3).key == (0, 1, 2)
    assert Subcat.of([1]).sort_key < Subcat.of([0, 1]).sort_key


def test_object_classes(ka2):
    m = ka2.obj(["S1", "S1", "P1"])
    assert m.mult == (2, 0, 1)
    assert ka2.theta(m) == 4
    assert ka2.format_obj(m) == "S1^2⊕P1"
    assert ka2.format_obj(ObjClass.zero(3)) == "0"
    assert m.contains(ka2.obj(["S1"]))
    assert not m.contains(ka2.obj(["S2"]))


def test_hom_dimensions_default_to_identity(ka2):
    assert ka2.hom_dim(ka2.obj(["S1"]), ka2.obj(["S1"])) == 1
    assert ka2.hom_dim(ka2.obj(["S1"]), ka2.obj(["S2"])) == 0
    assert ka2.hom_dim(ka2.obj(["S2", "S2"]), ka2.obj(["P1"])) == 2


def test_object_classes_must_match_the_presentation(ka2):
    short = ObjClass((1, 0))
    with pytest.raises(PreconditionError):
        ka2.theta(short)
    with pytest.raises(PreconditionError):
        ka2.hom_dim(ka2.obj(["S1"]), short)


def test_bricks(ka2, dual_numbers):
    assert ka2.names(ka2.bricks) == ["S1", "S2", "P1"]
    assert dual_numbers.is_brick("S")
    assert not dual_numbers.is_brick("P")


def test_corpus_documents_validate(load_corpus):
    for name in ("a327", "mod_ka2", "ka2_weighted", "single", "dual_numbers", "shift_pair", "empty"):
        assert validate(load_corpus(name)).passed, name


def test_stability_equality_violation(load_corpus):
    report = validate(load_corpus("broken_stability"))
    assert not report.passed
    assert {v.rule for v in report.violations} == {"stability equality"}


def test_subadditivity_violation():
    p = parse_presentation(doc(conflations=[{"a": ["S2"], "b": ["P1", "P1"], "c": ["S1"], "stable": False}]))
    rules = [v.rule for v in validate(p).violations]
    assert rules == ["subadditivity"]


def test_ext_consistency_violation():
    p = parse_presentation(doc(ext=[]))
    report = validate(p)
    assert [v.rule for v in report.violations] == ["ext consistency"]
    assert report.violations[0].location == "conflations[0]"


def test_split_shape_violation():
    p = parse_presentation(doc(conflations=[
        {"a": ["S2"], "b": ["P1"], "c": ["S1"], "stable": True, "split": True},
    ]))
    assert "split shape" in [v.rule for v in validate(p).violations]


def test_theta_must_be_positive():
    p = parse_presentation(doc(indecs=[{"id": "S1", "theta": 0}, {"id": "S2", "theta": 1}, {"id": "P1", "theta": 1}],
                               conflations=[]))
    assert [v.location for v in validate(p).violations] == ["indecs[0]"]


@pytest.mark.parametrize("text, where", [
    (doc(conflations=[{"a": ["S9"], "b": ["P1"], "c": ["S1"], "stable": True}]), "conflations[0].a[0]"),
    (doc(hom=[{"from": "S1", "to": "Q", "dim": 1}]), "hom[0].to"),
    (doc(indecs=[{"id": "S1", "theta": 1}, {"id": "S1", "theta": 1}], hom=[], ext=[], conflations=[]),
     "indecs[1].id"),
    ('{"name": "x", "indecs": [', "<string>:1"),
])
def test_malformed_documents_point_at_the_problem(text, where):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    assert where in str(info.value)


def test_unknown_keys_rejected():
    with pytest.raises(PresentationError):
        parse_presentation(json.dumps({"name": "x", "indecs": [], "extra": 1}))


def test_negative_hom_dimension_rejected():
    with pytest.raises(PresentationError):
        parse_presentation(doc(hom=[{"from": "S1", "to": "S2", "dim": -1}]))


def test_digest_depends_on_content():
    assert parse_presentation(doc()).digest == parse_presentation(doc()).digest
    assert parse_presentation(doc()).digest != parse_presentation(doc(name="other")).digest


def test_split_conflations_add_no_closure_rules():
    p = parse_presentation(doc(conflations=[
        {"a": ["S1"], "b": ["S1", "S2"], "c": ["S2"], "stable": True, "split": True},
    ]))
    assert validate(p).passed
    assert p.extension_rules == ()
    assert p.quotient_rules == () and p.subobject_rules == ()
