import json

import pytest

from mbtikit import labels as la
from mbtikit.labels import Granularity, InvalidTypeCode


def codes(t):
    return la.function_stack(la.parse_type(t)).codes()


def test_parse_basic():
    t = la.parse_type("INTP")
    assert (t.attitude, t.perceiving, t.judging, t.orientation) == ("I", "N", "T", "P")


def test_parse_case_insensitive_and_whitespace():
    assert la.parse_type("esfj").code == "ESFJ"
    assert la.parse_type("  EnFp  ").code == "ENFP"


@pytest.mark.parametrize("bad", ["INXP", "", "INT", "INTPP", "I.N.T.P", "IN TP", "ABCD"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidTypeCode):
        la.parse_type(bad)


def test_parse_diagnostic_names_position():
    with pytest.raises(InvalidTypeCode, match="letter 3 must be T or F"):
        la.parse_type("INXP")


def test_roundtrip_all_16():
    assert len(la.ALL_TYPES) == 16
    assert len(set(la.ALL_TYPES)) == 16
    for t in la.ALL_TYPES:
        assert la.parse_type(t.code) == t
        assert la.parse_type(t.code.lower()) == t


def test_stack_table_rows():
    # the two worked examples: ESFJ and INTP, opposite types
    assert codes("ESFJ") == ("Fe", "Si", "Ne", "Ti")
    assert codes("INTP") == ("Ti", "Ne", "Si", "Fe")


def test_stack_derived_by_hand():
    # ENFP: P-type, so the extroverted slot takes N (Ne); introverted Fi;
    # E leads with Ne; tertiary opposite of Fi is Te; inferior opposite of Ne is Si.
    assert codes("ENFP") == ("Ne", "Fi", "Te", "Si")
    assert codes("ISTJ") == ("Si", "Te", "Fi", "Ne")
    assert codes("ENTJ") == ("Te", "Ni", "Se", "Fi")


def test_all_stacks_satisfy_invariants():
    for t in la.ALL_TYPES:
        stack = la.function_stack(t)
        stack.validate()
        assert len({f.code for f in stack.functions}) == 4


def test_cognitive_function_set():
    seen = {f.code for t in la.ALL_TYPES for f in la.function_stack(t).functions}
    assert seen == {"Ti", "Te", "Fi", "Fe", "Si", "Se", "Ni", "Ne"}


def test_project_examples():
    intp = la.parse_type("INTP")
    assert la.project(intp, Granularity.DOMINANT8) == "Ti"
    assert la.project(intp, Granularity.AXIS_IE) == "I"
    enfp, infp = la.parse_type("ENFP"), la.parse_type("INFP")
    assert la.project(enfp, Granularity.FIRST_TWO8) == la.project(infp, Granularity.FIRST_TWO8)
    assert la.project(enfp, Granularity.FULL16) == "ENFP"


def test_label_space_counts():
    wanted = {
        Granularity.FULL16: 16,
        Granularity.DOMINANT8: 8,
        Granularity.FIRST_TWO8: 8,
        Granularity.AXIS_IE: 2,
        Granularity.AXIS_NS: 2,
        Granularity.AXIS_TF: 2,
        Granularity.AXIS_PJ: 2,
    }
    for granularity, n in wanted.items():
        space = la.label_space(granularity)
        assert len(space.labels) == n
        assert len(set(space.labels)) == n
        # every type projects to exactly one label of the space
        for t in la.ALL_TYPES:
            assert la.project(t, granularity) in space.labels


def test_dominant8_and_firsttwo8_partition_into_pairs():
    for granularity in (Granularity.DOMINANT8, Granularity.FIRST_TWO8):
        groups = la.group_members(granularity)
        assert len(groups) == 8
        assert all(len(members) == 2 for members in groups.values())


def test_axis_ie_matches_dominant_direction():
    for t in la.ALL_TYPES:
        dominant = la.function_stack(t).dominant
        letter = "I" if dominant.direction == "i" else "E"
        assert la.project(t, Granularity.AXIS_IE) == letter


def test_opposite_examples():
    assert la.opposite_type(la.parse_type("INTP")).code == "ESFJ"
    assert la.opposite_type(la.parse_type("ENFJ")).code == "ISTP"


def test_opposite_is_involution():
    for t in la.ALL_TYPES:
        assert la.opposite_type(la.opposite_type(t)) == t


def test_opposite_reverses_stack_and_moves_group():
    for t in la.ALL_TYPES:
        opp = la.opposite_type(t)
        assert la.function_stack(opp).codes() == tuple(reversed(la.function_stack(t).codes()))
        assert la.first_two_key(opp) != la.first_two_key(t)


def test_export_label_spaces(tmp_path):
    path = tmp_path / "label_spaces.json"
    la.write_label_spaces(path)
    doc = json.loads(path.read_text())
    assert set(doc["spaces"]) == {g.value for g in Granularity}
    full = doc["spaces"]["full16"]
    assert full["labels"] == sorted(t.code for t in la.ALL_TYPES)
    assert full["mapping"]["INTP"] == "INTP"
    assert doc["spaces"]["dominant8"]["mapping"]["INTP"] == "Ti"
    assert doc["spaces"]["axis-pj"]["mapping"]["ESFJ"] == "J"
    for space in doc["spaces"].values():
        assert sorted(set(space["mapping"].values())) == sorted(space["labels"])


def test_assemble_code():
    assert la.assemble_code(["I", "N", "T", "P"]) == "INTP"
    with pytest.raises(InvalidTypeCode):
        la.assemble_code(["N", "I", "T", "P"])
