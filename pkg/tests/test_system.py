from __future__ import annotations

import pytest

from olog import dsl
from olog.core import Fact, Path, Specification, format_fact
from olog.entail import consequence
from olog.errors import OlogError, UnsupportedLinkError
from olog.flow import GraphMorphism, graph_morphism, identity_morphism
from olog.system import (
    Channel,
    InformationSystem,
    SystemMorphism,
    check_channel_cover,
    check_refinement,
    check_system_morphism,
    fusion,
    induced_refinement,
    optimal_channel,
    system_consequence,
    validate_system,
)

from .conftest import FIXTURES
from .oracles import colimit_classes


@pytest.fixture(scope="module")
def w_system():
    sysm, diags = dsl.parse_system(FIXTURES / "w.osys", bound=6)
    assert sysm is not None, [str(d) for d in diags]
    return sysm


@pytest.fixture(scope="module")
def span_system():
    sysm, diags = dsl.parse_system(FIXTURES / "span.osys", bound=4)
    assert sysm is not None, [str(d) for d in diags]
    return sysm


@pytest.fixture(scope="module")
def constant_system():
    sysm, diags = dsl.parse_system(FIXTURES / "constant.osys", bound=4)
    assert sysm is not None, [str(d) for d in diags]
    return sysm


@pytest.fixture(scope="module")
def discrete_system():
    sysm, diags = dsl.parse_system(FIXTURES / "discrete.osys", bound=3)
    assert sysm is not None, [str(d) for d in diags]
    return sysm


# --- optimal channel ----------------------------------------------------------


def test_constant_core_is_shared_graph(constant_system):
    ds = constant_system.distributed()
    ch = optimal_channel(ds)
    shared = constant_system.specs["n1"].graph
    assert len(ch.core.types) == len(shared.types)
    assert len(ch.core.aspects) == len(shared.aspects)
    # links act as bijective renamings
    for n, link in ch.links.items():
        assert len(set(link.type_map.values())) == len(shared.types)


def test_discrete_core_is_disjoint_union(discrete_system):
    ds = discrete_system.distributed()
    ch = optimal_channel(ds)
    total_types = sum(len(g.types) for g in ds.graphs.values())
    total_aspects = sum(len(g.aspects) for g in ds.graphs.values())
    assert len(ch.core.types) == total_types
    assert len(ch.core.aspects) == total_aspects


def test_span_core_matches_pushout_oracle(span_system):
    ds = span_system.distributed()
    ch = optimal_channel(ds)
    type_classes, aspect_classes = colimit_classes(ds)
    assert len(ch.core.types) == len(type_classes)
    assert len(ch.core.aspects) == len(aspect_classes)
    # each core id is the least member tag of its class
    got_type_ids = {t.id for t in ch.core.types}
    want_type_ids = {f"{min(c)[0]}__{min(c)[1]}" for c in type_classes}
    assert got_type_ids == want_type_ids
    got_aspect_ids = {a.id for a in ch.core.aspects}
    want_aspect_ids = {f"{min(c)[0]}__{min(c)[1]}" for c in aspect_classes}
    assert got_aspect_ids == want_aspect_ids


def test_w_core_merges_reference_through_both_portals(w_system):
    ch = optimal_channel(w_system.distributed())
    # one process type shared by all five nodes
    process_images = {
        ch.links[n].type_map[tid]
        for n, tid in [
            ("community", "process"),
            ("reference", "process"),
            ("portal", "process"),
            ("community2", "process2"),
            ("portal2", "process2"),
        ]
    }
    assert len(process_images) == 1


def test_optimal_channel_rejects_path_valued_links(span_system):
    ds = span_system.distributed()
    bad_link = GraphMorphism(
        src=ds.graphs["ground"],
        tgt=ds.graphs["left"],
        type_map=dict(ds.links["gl"].type_map),
        aspect_map={
            **dict(ds.links["gl"].aspect_map),
            "w0": Path("start1", ("u1", "v1")),
        },
    )
    from olog.system import DistributedSystem

    broken = DistributedSystem(
        shape=ds.shape, graphs=ds.graphs, links={**dict(ds.links), "gl": bad_link}
    )
    with pytest.raises(UnsupportedLinkError):
        optimal_channel(broken)


# --- covering and refinement ----------------------------------------------------


def test_optimal_channel_covers(span_system, w_system, constant_system):
    for sysm in (span_system, w_system, constant_system):
        ds = sysm.distributed()
        ok, violations = check_channel_cover(ds, optimal_channel(ds))
        assert ok and not violations


def test_perturbed_channel_does_not_cover(span_system):
    ds = span_system.distributed()
    ch = optimal_channel(ds)
    # break the ground link by swapping two type images
    link = ch.links["ground"]
    tm = dict(link.type_map)
    tm["start0"], tm["mid0"] = tm["mid0"], tm["start0"]
    am = {
        aid: Path(tm[ds.graphs["ground"].aspect_by_id[aid].src], p.edges)
        for aid, p in link.aspect_map.items()
    }
    bad = Channel(
        core=ch.core,
        links={**dict(ch.links), "ground": GraphMorphism(link.src, link.tgt, tm, am)},
    )
    ok, violations = check_channel_cover(ds, bad)
    assert not ok
    assert set(violations) <= {"gl", "gr"} and violations


def manual_span_channel(span_system):
    """Covering channel whose core is the left graph itself."""
    ds = span_system.distributed()
    left = ds.graphs["left"]
    right = ds.graphs["right"]
    ground = ds.graphs["ground"]
    r2l = graph_morphism(
        right,
        left,
        {t.id: t.id.replace("2", "1") for t in right.types},
        {a.id: Path(a.src.replace("2", "1"), (a.id.replace("2", "1"),)) for a in right.aspects},
    )
    return Channel(
        core=left,
        links={
            "left": identity_morphism(left),
            "right": r2l,
            "ground": ds.links["gl"],
        },
    )


def test_manual_constant_core_channel_covers(span_system):
    ds = span_system.distributed()
    ch = manual_span_channel(span_system)
    ok, violations = check_channel_cover(ds, ch)
    assert ok, violations


def test_refinement_identity_and_induced(span_system):
    ds = span_system.distributed()
    opt = optimal_channel(ds)
    ident = identity_morphism(opt.core)
    assert check_refinement(ident, opt, opt)

    other = manual_span_channel(span_system)
    induced = induced_refinement(opt, other)
    assert check_refinement(induced, opt, other)

    # a wrong core map fails
    tm = dict(induced.type_map)
    ids = sorted(tm)
    tm[ids[0]], tm[ids[1]] = tm[ids[1]], tm[ids[0]]
    wrong = GraphMorphism(induced.src, induced.tgt, tm, dict(induced.aspect_map))
    assert not check_refinement(wrong, opt, other)


# --- fusion ---------------------------------------------------------------------


def test_fusion_single_node(tmp_path):
    import shutil

    shutil.copy(FIXTURES / "employee.olog", tmp_path / "employee.olog")
    (tmp_path / "solo.osys").write_text("node only = employee.olog\n")
    sysm, _ = dsl.parse_system(tmp_path / "solo.osys", bound=3)
    fused = fusion(sysm, 3)
    emp = sysm.specs["only"]
    assert len(fused.graph.types) == len(emp.graph.types)
    assert len(fused.facts) == len(emp.facts)
    # renamed copies of the two declared facts
    assert {f"only__{a.id}" for a in emp.graph.aspects} == {
        a.id for a in fused.graph.aspects
    }


def test_fusion_constant_is_union(constant_system):
    fused = fusion(constant_system, 4)
    assert len(fused.facts) == 2
    lhss = {f.lhs.edges for f in fused.facts}
    assert ("n1__manager", "n1__works_in") in lhss
    assert ("n1__secretary", "n1__works_in") in lhss


def test_fusion_span_is_direct_image_union(span_system):
    fused = fusion(span_system, 4)
    assert [format_fact(f) for f in fused.facts] == [
        "ground__u0;ground__v0 = ground__w0"
    ]


def test_fusion_rejects_invalid_system(span_system):
    bad = InformationSystem(
        shape=span_system.shape,
        specs={
            **dict(span_system.specs),
            "right": Specification(
                graph=span_system.specs["right"].graph,
                facts=(),
                name="Right",
            ),
        },
        constraints={
            # reversed edge: left's fact is not preserved by fact-free ground
            "gl": span_system.constraints["gl"],
            "gr": span_system.constraints["gr"],
        },
    )
    # make ground declare something the others do not entail
    g = span_system.specs["ground"].graph
    chatty_ground = Specification(
        graph=g,
        facts=(Fact(Path("start0", ("u0", "v0")), Path("start0", ("w0",))),),
        name="Ground",
    )
    worse = InformationSystem(
        shape=span_system.shape,
        specs={**dict(bad.specs), "ground": chatty_ground},
        constraints=bad.constraints,
    )
    # gl is fine (left declares the fact) but gr is not (right declares nothing)
    with pytest.raises(OlogError):
        fusion(worse, 4)


# --- system consequence ----------------------------------------------------------


def test_consequence_discrete_is_componentwise(discrete_system):
    out = system_consequence(discrete_system, 3)
    for node in discrete_system.shape.nodes:
        assert set(out[node].facts) == set(
            consequence(discrete_system.specs[node], 3)
        )


def test_consequence_constant_every_node_gets_union(constant_system):
    out = system_consequence(constant_system, 3)
    shared_graph = constant_system.specs["n1"].graph
    union = Specification(
        graph=shared_graph,
        facts=tuple(
            {f for spec in constant_system.specs.values() for f in spec.facts}
        ),
    )
    want = set(consequence(union, 3))
    for node in constant_system.shape.nodes:
        assert set(out[node].facts) == want


def test_consequence_span_right_learns(span_system):
    out = system_consequence(span_system, 4)
    learned = dsl.parse_fact_text("u2;v2 = w2", span_system.specs["right"].graph)
    assert learned in out["right"].facts
    own = set(consequence(span_system.specs["right"], 4))
    assert own < set(out["right"].facts)  # strictly more than the parts


def test_consequence_increasing_and_monotone(span_system):
    out = system_consequence(span_system, 4)
    for node in span_system.shape.nodes:
        declared = set(span_system.specs[node].facts)
        assert declared <= set(out[node].facts)
        assert set(consequence(span_system.specs[node], 4)) <= set(out[node].facts)

    # add a fact at the left node; no node's output shrinks
    left = span_system.specs["left"]
    extra = Fact(Path("mid1", ("v1",)), Path("mid1", ("v1",)))
    richer = InformationSystem(
        shape=span_system.shape,
        specs={
            **dict(span_system.specs),
            "left": Specification(graph=left.graph, facts=left.facts + (extra,)),
        },
        constraints=span_system.constraints,
    )
    out2 = system_consequence(richer, 4)
    for node in span_system.shape.nodes:
        assert set(out[node].facts) <= set(out2[node].facts)


def test_consequence_idempotent_on_fixtures(span_system, constant_system):
    for sysm, bound in ((span_system, 4), (constant_system, 3)):
        once = system_consequence(sysm, bound)
        closed = InformationSystem(
            shape=sysm.shape, specs=once, constraints=sysm.constraints
        )
        twice = system_consequence(closed, bound)
        for node in sysm.shape.nodes:
            assert set(once[node].facts) == set(twice[node].facts)


def test_final_parts_suffice(w_system, constant_system):
    for sysm, bound in ((w_system, 6), (constant_system, 3)):
        finals = set(sysm.shape.final_nodes())
        trimmed = InformationSystem(
            shape=sysm.shape,
            specs={
                n: (
                    s
                    if n in finals
                    else Specification(graph=s.graph, facts=(), name=s.name)
                )
                for n, s in sysm.specs.items()
            },
            constraints=sysm.constraints,
        )
        full = system_consequence(sysm, bound)
        thin = system_consequence(trimmed, bound)
        for node in sysm.shape.nodes:
            assert set(full[node].facts) == set(thin[node].facts)


def test_w_community_learns_portal_fact(w_system):
    out = system_consequence(w_system, 6)
    comm = w_system.specs["community"]
    fact = dsl.parse_fact_text("going;is_go = proc", comm.graph)
    assert fact not in comm.facts  # not declared locally
    assert fact in out["community"].facts  # learned through the system


# --- system morphisms -------------------------------------------------------------


def test_system_morphism_identity(span_system):
    theta = SystemMorphism(
        components={
            n: identity_morphism(s.graph) for n, s in span_system.specs.items()
        }
    )
    ok, violations = check_system_morphism(theta, span_system, span_system, 4)
    assert ok, violations


def test_system_morphism_pointwise_order(span_system):
    # a pointwise-more-general system maps into the specialized one with
    # identity components; the reverse direction drops a fact and fails
    weaker = InformationSystem(
        shape=span_system.shape,
        specs={
            **dict(span_system.specs),
            "left": Specification(graph=span_system.specs["left"].graph, facts=()),
        },
        constraints=span_system.constraints,
    )
    theta = SystemMorphism(
        components={
            n: identity_morphism(s.graph) for n, s in span_system.specs.items()
        }
    )
    ok, violations = check_system_morphism(theta, weaker, span_system, 4)
    assert ok, violations
    ok_rev, violations_rev = check_system_morphism(theta, span_system, weaker, 4)
    assert not ok_rev
    assert any("left" in v for v in violations_rev)


def test_system_morphism_naturality_violation(span_system):
    comps = {n: identity_morphism(s.graph) for n, s in span_system.specs.items()}
    right = span_system.specs["right"].graph
    tm = {t.id: t.id for t in right.types}
    swapped = dict(tm)
    swapped["start2"], swapped["mid2"] = "mid2", "start2"
    # not even a valid morphism endpointwise, so build unchecked
    comps["right"] = GraphMorphism(
        src=right,
        tgt=right,
        type_map=swapped,
        aspect_map={a.id: Path(a.src, (a.id,)) for a in right.aspects},
    )
    theta = SystemMorphism(components=comps)
    ok, violations = check_system_morphism(theta, span_system, span_system, 4)
    assert not ok
    assert any("gr" in v or "naturality" in v for v in violations)


def test_validate_system_reports_unpreserved_edge(span_system):
    g = span_system.specs["ground"].graph
    chatty = Specification(
        graph=g,
        facts=(Fact(Path("start0", ("u0", "v0")), Path("start0", ("w0",))),),
    )
    bad = InformationSystem(
        shape=span_system.shape,
        specs={**dict(span_system.specs), "ground": chatty},
        constraints=span_system.constraints,
    )
    problems = validate_system(bad, 4)
    assert any("gr" in p and "not preserved" in p for p in problems)
    assert not any("gl" in p for p in problems)


def test_fused_and_consequence_ologs_reparse(span_system, constant_system, w_system):
    for sysm, bound in ((span_system, 4), (constant_system, 3), (w_system, 6)):
        fused = fusion(sysm, bound)
        text = dsl.print_olog(fused)
        reparsed, diags = dsl.parse_olog(text)
        assert reparsed is not None
        assert not [d for d in diags if d.severity == dsl.ERROR]
        assert dsl.print_olog(reparsed) == text
        for node, spec in system_consequence(sysm, bound).items():
            out = dsl.print_olog(spec)
            again, diags = dsl.parse_olog(out, node)
            assert again is not None
            assert not [d for d in diags if d.severity == dsl.ERROR]


def test_system_consequence_is_per_node_inverse_flow(span_system):
    from olog.flow import inv_flow
    from olog.system import optimal_channel

    bound = 4
    fused = fusion(span_system, bound)
    channel = optimal_channel(span_system.distributed())
    out = system_consequence(span_system, bound)
    for node in span_system.shape.nodes:
        assert out[node].facts == inv_flow(channel.links[node], fused.facts, bound)
