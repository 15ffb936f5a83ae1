"""Networks of ologs: shaped diagrams, channels, fusion, system consequence.

An information system indexes specifications by the nodes of a finite shape
graph, with a constraint morphism per edge. The underlying distributed system
keeps only the languages (graphs) and translations. A channel gives every
node a link into one core graph; the optimal channel's core is the colimit of
the graph diagram, computed as a quotient of the tagged disjoint union. The
fusion collects every node's facts on that core, and system consequence flows
the fused facts back down to each node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import Aspect, Fact, Graph, Path, Specification, TypeNode, format_fact
from .entail import DEFAULT_BOUND, enumerate_equations, saturate
from .errors import GraphMismatchError, OlogError, UnsupportedLinkError
from .flow import (
    GraphMorphism,
    compose_morphisms,
    dir_flow,
    is_spec_morphism,
    translate_fact,
)


@dataclass(frozen=True)
class Shape:
    """Finite index graph: node ids plus directed edges (id, src, tgt)."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    def final_nodes(self) -> tuple[str, ...]:
        """Nodes with no outgoing edges (ignoring loops onto themselves)."""
        out = {e[1] for e in self.edges if e[1] != e[2]}
        return tuple(n for n in self.nodes if n not in out)


@dataclass(frozen=True)
class DistributedSystem:
    shape: Shape
    graphs: Mapping[str, Graph]
    links: Mapping[str, GraphMorphism]


@dataclass(frozen=True)
class InformationSystem:
    shape: Shape
    specs: Mapping[str, Specification]
    constraints: Mapping[str, GraphMorphism]

    def distributed(self) -> DistributedSystem:
        return DistributedSystem(
            shape=self.shape,
            graphs={n: s.graph for n, s in self.specs.items()},
            links=dict(self.constraints),
        )


@dataclass(frozen=True)
class Channel:
    core: Graph
    links: Mapping[str, GraphMorphism]


@dataclass(frozen=True)
class SystemMorphism:
    components: Mapping[str, GraphMorphism]


def validate_system(sys: InformationSystem, bound: int = DEFAULT_BOUND) -> list[str]:
    """Structural problems plus constraint edges that fail entailment preservation."""
    problems: list[str] = []
    for n in sys.shape.nodes:
        if n not in sys.specs:
            problems.append(f"node '{n}' has no specification")
    for eid, src, tgt in sys.shape.edges:
        h = sys.constraints.get(eid)
        if h is None:
            problems.append(f"edge '{eid}' has no morphism")
            continue
        if src not in sys.specs or tgt not in sys.specs:
            problems.append(f"edge '{eid}' references unknown nodes")
            continue
        if h.src != sys.specs[src].graph or h.tgt != sys.specs[tgt].graph:
            problems.append(f"edge '{eid}': morphism endpoints do not match the node graphs")
            continue
        ok, offenders = is_spec_morphism(h, sys.specs[src], sys.specs[tgt], bound)
        if not ok:
            for f in offenders:
                problems.append(
                    f"edge '{eid}': fact {format_fact(f)} is not preserved"
                )
    return problems


class _TagUF:
    def __init__(self):
        self.parent: dict[tuple[str, str], tuple[str, str]] = {}

    def add(self, x: tuple[str, str]):
        self.parent.setdefault(x, x)

    def find(self, x: tuple[str, str]) -> tuple[str, str]:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: tuple[str, str], b: tuple[str, str]):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _core_id(tag: tuple[str, str]) -> str:
    return f"{tag[0]}__{tag[1]}"


def optimal_channel(ds: DistributedSystem) -> Channel:
    """Colimit of the graph diagram, with the induced link per node.

    Types and aspects of all node graphs are tagged by node and quotiented by
    the link identifications; the class id is the least (node, id) tag joined
    with a double underscore, so cores print deterministically and survive a
    round trip through the text format. Links whose aspect images are not
    single aspects cannot be quotiented and are rejected.
    """
    for eid, src, tgt in ds.shape.edges:
        h = ds.links[eid]
        for aid, img in h.aspect_map.items():
            if len(img.edges) != 1:
                raise UnsupportedLinkError(
                    f"edge '{eid}' maps aspect '{aid}' to a path of length "
                    f"{len(img.edges)}; the core colimit needs single-aspect images"
                )

    types_uf, aspects_uf = _TagUF(), _TagUF()
    for n in ds.shape.nodes:
        g = ds.graphs[n]
        for t in g.types:
            types_uf.add((n, t.id))
        for a in g.aspects:
            aspects_uf.add((n, a.id))
    for eid, src, tgt in ds.shape.edges:
        h = ds.links[eid]
        for tid, img in h.type_map.items():
            types_uf.union((src, tid), (tgt, img))
        for aid, img in h.aspect_map.items():
            aspects_uf.union((src, aid), (tgt, img.edges[0]))

    type_class: dict[tuple[str, str], str] = {}
    type_members: dict[str, list[tuple[str, str]]] = {}
    for tag in types_uf.parent:
        rep = types_uf.find(tag)
        cid = _core_id(rep)
        type_class[tag] = cid
        type_members.setdefault(cid, []).append(tag)

    aspect_class: dict[tuple[str, str], str] = {}
    aspect_members: dict[str, list[tuple[str, str]]] = {}
    for tag in aspects_uf.parent:
        rep = aspects_uf.find(tag)
        cid = _core_id(rep)
        aspect_class[tag] = cid
        aspect_members.setdefault(cid, []).append(tag)

    core_types = []
    for cid, members in sorted(type_members.items()):
        rep = min(members)
        label = ds.graphs[rep[0]].type_by_id[rep[1]].label
        core_types.append(TypeNode(id=cid, label=label))

    core_aspects = []
    for cid, members in sorted(aspect_members.items()):
        rep = min(members)
        rep_aspect = ds.graphs[rep[0]].aspect_by_id[rep[1]]
        modifiers = frozenset().union(
            *(ds.graphs[n].aspect_by_id[a].modifiers for n, a in members)
        )
        core_aspects.append(
            Aspect(
                id=cid,
                src=type_class[(rep[0], rep_aspect.src)],
                tgt=type_class[(rep[0], rep_aspect.tgt)],
                label=rep_aspect.label,
                modifiers=modifiers,
            )
        )

    core = Graph(types=tuple(core_types), aspects=tuple(core_aspects))
    links = {}
    for n in ds.shape.nodes:
        g = ds.graphs[n]
        links[n] = GraphMorphism(
            src=g,
            tgt=core,
            type_map={t.id: type_class[(n, t.id)] for t in g.types},
            aspect_map={
                a.id: Path(type_class[(n, a.src)], (aspect_class[(n, a.id)],))
                for a in g.aspects
            },
        )
    return Channel(core=core, links=links)


def check_channel_cover(ds: DistributedSystem, ch: Channel) -> tuple[bool, tuple[str, ...]]:
    """Does the channel respect every constraint edge (link factors through it)?"""
    violations = []
    for eid, src, tgt in ds.shape.edges:
        through = compose_morphisms(ds.links[eid], ch.links[tgt])
        direct = ch.links[src]
        if (
            dict(through.type_map) != dict(direct.type_map)
            or dict(through.aspect_map) != dict(direct.aspect_map)
        ):
            violations.append(eid)
    return (not violations, tuple(violations))


def check_refinement(h: GraphMorphism, frm: Channel, to: Channel) -> bool:
    """Is ``h`` a core map making the finer channel factor the coarser one?"""
    for n, link in frm.links.items():
        through = compose_morphisms(link, h)
        direct = to.links[n]
        if (
            dict(through.type_map) != dict(direct.type_map)
            or dict(through.aspect_map) != dict(direct.aspect_map)
        ):
            return False
    return True


def induced_refinement(optimal: Channel, other: Channel) -> GraphMorphism:
    """The unique core map from the optimal channel into any covering channel.

    Well-defined because covering makes all members of a core class agree on
    their image; disagreement raises, which signals the other channel does not
    actually cover the same system.
    """
    type_map: dict[str, str] = {}
    aspect_map: dict[str, Path] = {}
    for n, link in sorted(optimal.links.items()):
        onto = other.links[n]
        for tid, cid in link.type_map.items():
            img = onto.type_map[tid]
            if type_map.setdefault(cid, img) != img:
                raise GraphMismatchError(
                    f"core type '{cid}' has conflicting images; channel does not cover"
                )
        for aid, cpath in link.aspect_map.items():
            cid = cpath.edges[0]
            img = onto.aspect_map[aid]
            if aspect_map.setdefault(cid, img) != img:
                raise GraphMismatchError(
                    f"core aspect '{cid}' has conflicting images; channel does not cover"
                )
    return GraphMorphism(
        src=optimal.core, tgt=other.core, type_map=type_map, aspect_map=aspect_map
    )


def fusion(sys: InformationSystem, bound: int = DEFAULT_BOUND) -> Specification:
    """One specification for the whole system: every node's facts on the core.

    Validates the system first (every constraint must preserve entailment at
    the given bound).
    """
    problems = validate_system(sys, bound)
    if problems:
        raise OlogError("invalid information system: " + "; ".join(problems))
    channel = optimal_channel(sys.distributed())
    facts: set[Fact] = set()
    for n in sys.shape.nodes:
        facts.update(dir_flow(channel.links[n], sys.specs[n].facts))
    return Specification(
        graph=channel.core, facts=tuple(sorted(facts)), name="fusion"
    )


def system_consequence(
    sys: InformationSystem, bound: int = DEFAULT_BOUND
) -> dict[str, Specification]:
    """Flow the fused facts back to each node.

    Every node receives the bounded equations of its own language whose
    translations onto the core are entailed by the fusion. Links send aspects
    to single aspects, so translation preserves path length and no candidate
    overflows the bound.
    """
    fused = fusion(sys, bound)
    channel = optimal_channel(sys.distributed())
    cong = saturate(fused, bound)
    out: dict[str, Specification] = {}
    for n in sys.shape.nodes:
        g = sys.specs[n].graph
        facts = []
        for fact in enumerate_equations(g, bound):
            img = translate_fact(channel.links[n], fact)
            if cong.same(img.lhs, img.rhs):
                facts.append(fact)
        out[n] = Specification(graph=g, facts=tuple(facts), name=n)
    return out


def check_system_morphism(
    theta: SystemMorphism,
    sys1: InformationSystem,
    sys2: InformationSystem,
    bound: int = DEFAULT_BOUND,
) -> tuple[bool, tuple[str, ...]]:
    """Naturality over every shape edge plus entailment preservation per node."""
    if sys1.shape != sys2.shape:
        raise GraphMismatchError("system morphisms need a shared shape")
    violations: list[str] = []
    for n in sys1.shape.nodes:
        comp = theta.components.get(n)
        if comp is None:
            violations.append(f"node '{n}': no component morphism")
            continue
        if comp.src != sys1.specs[n].graph or comp.tgt != sys2.specs[n].graph:
            violations.append(f"node '{n}': component endpoints do not match")
    if violations:
        return (False, tuple(violations))
    for eid, src, tgt in sys1.shape.edges:
        left = compose_morphisms(sys1.constraints[eid], theta.components[tgt])
        right = compose_morphisms(theta.components[src], sys2.constraints[eid])
        if (
            dict(left.type_map) != dict(right.type_map)
            or dict(left.aspect_map) != dict(right.aspect_map)
        ):
            violations.append(f"edge '{eid}': naturality fails")
    for n in sys1.shape.nodes:
        ok, offenders = is_spec_morphism(
            theta.components[n], sys1.specs[n], sys2.specs[n], bound
        )
        if not ok:
            violations.append(
                f"node '{n}': facts not preserved: "
                + ", ".join(format_fact(f) for f in offenders)
            )
    return (not violations, tuple(violations))
