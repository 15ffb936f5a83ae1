from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from olog import dsl
from olog.core import Fact, Graph, Path, Specification, identity_path
from olog.errors import OlogError

from . import strategies as sts
from .conftest import FIXTURES, load_olog

FAMILY_TEXT = (FIXTURES / "family.olog").read_text()


def errors(diags):
    return [d for d in diags if d.severity == dsl.ERROR]


def test_parse_family_shape():
    spec, diags = dsl.parse_olog(FAMILY_TEXT, "family.olog")
    assert spec is not None and not errors(diags)
    assert len(spec.graph.types) == 3
    assert len(spec.graph.aspects) == 3
    assert spec.facts == (
        Fact(Path("person", ("parents", "w")), Path("person", ("mother",))),
    )


def test_parse_empty_file():
    spec, diags = dsl.parse_olog("", "empty.olog")
    assert spec == Specification(Graph())
    assert diags == []
    spec2, diags2 = dsl.parse_olog("# only a comment\n\n", "empty.olog")
    assert spec2 == Specification(Graph())
    assert diags2 == []


def test_parse_ill_typed_fact_has_span():
    text = FAMILY_TEXT.replace("fact parents;w = mother", "fact parents;w = parents")
    spec, diags = dsl.parse_olog(text, "family.olog")
    assert spec is None
    errs = errors(diags)
    assert errs and "different types" in errs[0].message
    assert errs[0].at.file == "family.olog"
    assert errs[0].at.line == 9  # the fact line
    assert errs[0].at.column >= 8


def test_parse_unknown_aspect_span():
    text = FAMILY_TEXT.replace("parents;w", "parents;nope")
    spec, diags = dsl.parse_olog(text, "family.olog")
    assert spec is None
    (err,) = [d for d in errors(diags) if "nope" in d.message]
    assert err.at.line == 9
    assert err.at.column > 8


def test_parse_duplicate_declaration():
    text = FAMILY_TEXT.replace(
        'type woman "a woman"', 'type woman "a woman"\n  type woman "a woman"'
    )
    spec, diags = dsl.parse_olog(text)
    assert spec is None
    assert any("duplicate declaration" in d.message for d in errors(diags))


def test_parse_reserved_word_rejected():
    text = 'olog X {\n  type fact "a fact"\n}\n'
    spec, diags = dsl.parse_olog(text)
    assert spec is None
    assert any("reserved" in d.message for d in errors(diags))


def test_empty_type_label_is_error():
    spec, diags = dsl.parse_olog('olog X {\n  type x ""\n}\n')
    assert spec is None
    assert any("empty label" in d.message for d in errors(diags))


def test_parsed_specs_pass_structural_validation():
    from olog.core import validate_specification

    for name in ROUNDTRIP_FIXTURES:
        assert validate_specification(load_olog(name)) == []


def test_style_lints_are_warnings_not_errors():
    text = 'olog X {\n  type x "the thing."\n}\n'
    spec, diags = dsl.parse_olog(text)
    assert spec is not None
    warnings = [d for d in diags if d.severity == dsl.WARNING]
    assert {"label-article", "label-punctuation"} == set(
        flag for t in spec.graph.types for flag in t.lint_flags
    )
    assert len(warnings) == 2


def test_missing_square_fact_is_lint():
    text = (
        "olog X {\n"
        '  type a "an apex"\n'
        '  type b "a left leg"\n'
        '  type c "a right leg"\n'
        '  type d "a base"\n'
        '  aspect pb : a -> b "has"\n'
        '  aspect pc : a -> c "has"\n'
        '  aspect f : b -> d "has"\n'
        '  aspect g : c -> d "has"\n'
        "  pullback a = b *_d c via (f,g) legs (pb,pc)\n"
        "}\n"
    )
    spec, diags = dsl.parse_olog(text)
    assert spec is not None
    assert any(
        d.severity == dsl.WARNING and "commuting fact" in d.message for d in diags
    )


def test_parse_totality_on_garbage():
    for text in ("}{", "olog {", "olog X {", "olog X { type }", "olog X {}\nextra",
                 "\x00\x01??", "olog X {\n  aspect a : -> b\n}"):
        spec, diags = dsl.parse_olog(text)
        assert spec is None or not errors(diags)


@given(st.text(max_size=120))
@settings(max_examples=80, deadline=None)
def test_parse_never_crashes(text):
    dsl.parse_olog(text)


def test_unicode_labels_roundtrip():
    text = 'olog X {\n  type x "a möbius band"\n}\n'
    spec, diags = dsl.parse_olog(text)
    assert spec is not None
    assert dsl.parse_olog(dsl.print_olog(spec))[0] == spec


# --- printing ----------------------------------------------------------------

ROUNDTRIP_FIXTURES = [
    "family.olog", "employee.olog", "factorial.olog", "metric.olog", "duck.olog",
    "community.olog", "portal.olog", "ground.olog", "left.olog",
]


@pytest.mark.parametrize("name", ROUNDTRIP_FIXTURES)
def test_print_parse_print_stable(name):
    spec = load_olog(name)
    once = dsl.print_olog(spec)
    spec2, diags = dsl.parse_olog(once, name)
    assert spec2 is not None and not errors(diags)
    assert spec2 == spec
    assert dsl.print_olog(spec2) == once


def test_print_canonicalizes_unordered_input():
    shuffled = (
        "olog Family {\n"
        '  type woman "a woman"\n'
        '  type person "a person"\n'
        '  type pair "a pair (w,m) where w is a woman and m is a man"\n'
        '  aspect w : pair -> woman "yields, via the value of w, a woman"\n'
        '  aspect parents : person -> pair "has as parents"\n'
        '  aspect mother : person -> woman "has as mother"\n'
        "  fact parents;w = mother\n"
        "}\n"
    )
    spec, _ = dsl.parse_olog(shuffled)
    canonical = load_olog("family.olog")
    assert spec == canonical
    assert dsl.print_olog(spec) == dsl.print_olog(canonical)
    lines = dsl.print_olog(spec).splitlines()
    assert lines.index('  type pair "a pair (w,m) where w is a woman and m is a man"') < \
        lines.index('  type person "a person"')


def test_factorial_print_matches_golden(factorial_spec):
    golden = (FIXTURES / "golden" / "factorial_print.olog").read_text()
    assert dsl.print_olog(factorial_spec) == golden


@given(data=st.data(), graph=sts.graphs(max_types=3, max_aspects=4))
@settings(max_examples=40, deadline=None)
def test_print_parse_print_random(data, graph):
    spec = data.draw(sts.specs_on(graph, max_facts=2, max_len=2))
    once = dsl.print_olog(spec)
    reparsed, diags = dsl.parse_olog(once)
    assert reparsed is not None and not errors(diags)
    assert dsl.print_olog(reparsed) == once


# --- fact text ---------------------------------------------------------------


def test_parse_fact_text(family_spec):
    f = dsl.parse_fact_text("parents;w = mother", family_spec.graph)
    assert f == Fact(Path("person", ("parents", "w")), Path("person", ("mother",)))
    f2 = dsl.parse_fact_text("id(person) = id(person)", family_spec.graph)
    assert f2 == Fact(identity_path("person"), identity_path("person"))
    with pytest.raises(OlogError):
        dsl.parse_fact_text("parents = mother", family_spec.graph)
    with pytest.raises(OlogError):
        dsl.parse_fact_text("parents;w", family_spec.graph)


# --- morphism files ----------------------------------------------------------


def test_parse_identity_morphism(family_spec):
    text = "\n".join(
        [f"type {t.id} => {t.id}" for t in family_spec.graph.types]
        + [f"aspect {a.id} => {a.id}" for a in family_spec.graph.aspects]
    )
    h, diags = dsl.parse_morphism(text, family_spec, family_spec)
    assert h is not None and not errors(diags)
    from olog.flow import identity_morphism

    assert h == identity_morphism(family_spec.graph)


def test_parse_w_portal_link():
    community = load_olog("community.olog")
    portal = load_olog("portal.olog")
    text = (FIXTURES / "community_to_portal.omap").read_text()
    h, diags = dsl.parse_morphism(text, community, portal, "community_to_portal.omap")
    assert h is not None and not errors(diags)
    assert h.type_map["event"] == "event"
    assert h.aspect_map["going"] == Path("event", ("going",))


def test_parse_morphism_endpoint_error(family_spec, employee_spec):
    text = (
        "type person => employee\ntype pair => department\ntype woman => string\n"
        "aspect parents => works_in\naspect mother => first_name\n"
        "aspect w => name;name\n"  # name;name does not compose
    )
    h, diags = dsl.parse_morphism(text, family_spec, employee_spec)
    assert h is None
    assert any("name" in d.message for d in errors(diags))


def test_parse_morphism_two_step_image_wrong_target(family_spec, employee_spec):
    text = (
        "type person => employee\ntype pair => employee\ntype woman => department\n"
        "aspect parents => manager\n"
        "aspect mother => manager;works_in\n"
        "aspect w => manager;first_name\n"  # ends at string, mapped target is department
    )
    h, diags = dsl.parse_morphism(text, family_spec, employee_spec)
    assert h is None
    assert any("ends at" in d.message for d in errors(diags))


def test_parse_morphism_unmapped(family_spec):
    h, diags = dsl.parse_morphism("type person => person", family_spec, family_spec)
    assert h is None
    assert any("is not mapped" in d.message for d in errors(diags))


def test_parse_morphism_identity_image(family_spec):
    text = (
        "type person => person\ntype pair => person\ntype woman => person\n"
        "aspect parents => id(person)\naspect mother => id(person)\n"
        "aspect w => id(person)\n"
    )
    h, diags = dsl.parse_morphism(text, family_spec, family_spec)
    assert h is not None and not errors(diags)
    assert h.aspect_map["parents"].is_identity


# --- system files ------------------------------------------------------------


def test_parse_w_system():
    sysm, diags = dsl.parse_system(FIXTURES / "w.osys", bound=6)
    assert sysm is not None and not errors(diags)
    assert len(sysm.shape.nodes) == 5
    assert len(sysm.shape.edges) == 4
    assert sysm.shape.final_nodes() == ("portal", "portal2")


def test_parse_span_system():
    sysm, diags = dsl.parse_system(FIXTURES / "span.osys", bound=4)
    assert sysm is not None and not errors(diags)
    assert len(sysm.shape.nodes) == 3
    assert len(sysm.shape.edges) == 2


def test_parse_single_node_system(tmp_path):
    import shutil

    shutil.copy(FIXTURES / "family.olog", tmp_path / "family.olog")
    (tmp_path / "solo.osys").write_text("node only = family.olog\n")
    sysm, diags = dsl.parse_system(tmp_path / "solo.osys", bound=3)
    assert sysm is not None and not errors(diags)
    assert sysm.shape.nodes == ("only",)
    assert sysm.shape.edges == ()


def test_parse_system_missing_file(tmp_path):
    (tmp_path / "bad.osys").write_text("node x = nowhere.olog\n")
    sysm, diags = dsl.parse_system(tmp_path / "bad.osys", bound=3)
    assert sysm is None
    assert any("cannot read" in d.message for d in errors(diags))


def test_parse_system_rejects_non_preserving_edge(tmp_path):
    import shutil

    for f in ("left.olog", "right.olog", "ground_to_left.omap"):
        shutil.copy(FIXTURES / f, tmp_path / f)
    # Use left (which declares a fact) as the source of a link into right
    # (which declares none): the fact is not preserved.
    (tmp_path / "l2r.omap").write_text(
        "type end1 => end2\ntype mid1 => mid2\ntype start1 => start2\n"
        "aspect u1 => u2\naspect v1 => v2\naspect w1 => w2\n"
    )
    (tmp_path / "bad.osys").write_text(
        "node l = left.olog\nnode r = right.olog\nedge e : l -> r = l2r.omap\n"
    )
    sysm, diags = dsl.parse_system(tmp_path / "bad.osys", bound=3)
    assert sysm is None
    assert any("not preserved" in d.message for d in errors(diags))
