"""Information flow along graph morphisms.

A graph morphism translates one olog language into another: each type goes to
a type, each aspect to a path (possibly an identity path, which collapses the
aspect). Facts move forward by translating both sides (direct flow); facts
move backward by asking whether the translation is entailed on the far side
(inverse flow, bounded like everything in the entailment engine). Instance
data moves the other way: a key diagram over the target graph pulls back to
one over the source.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    Fact,
    Graph,
    Path,
    Specification,
    fact_errors,
    format_fact,
    path_errors,
    path_target,
)
from .entail import DEFAULT_BOUND, ENTAILED, enumerate_equations, entails_in, saturate
from .errors import BoundExceededError, GraphMismatchError, LotError, MorphismError
from .instances import KeyDiagram, eval_path


@dataclass(frozen=True)
class GraphMorphism:
    """Total translation of one graph into another.

    ``type_map`` sends type ids to type ids; ``aspect_map`` sends each aspect
    id to a path in the target graph whose endpoints match the mapped
    endpoints of the aspect.
    """

    src: Graph
    tgt: Graph
    type_map: Mapping[str, str]
    aspect_map: Mapping[str, Path]


def morphism_errors(h: GraphMorphism) -> list[str]:
    problems: list[str] = []
    for t in h.src.types:
        img = h.type_map.get(t.id)
        if img is None:
            problems.append(f"type '{t.id}' is not mapped")
        elif not h.tgt.has_type(img):
            problems.append(f"type '{t.id}' maps to unknown type '{img}'")
    for a in h.src.aspects:
        img = h.aspect_map.get(a.id)
        if img is None:
            problems.append(f"aspect '{a.id}' is not mapped")
            continue
        errs = path_errors(h.tgt, img)
        if errs:
            problems.append(f"aspect '{a.id}': image {errs[0]}")
            continue
        want_src = h.type_map.get(a.src)
        want_tgt = h.type_map.get(a.tgt)
        if want_src is not None and img.source != want_src:
            problems.append(
                f"aspect '{a.id}': image starts at '{img.source}', "
                f"expected '{want_src}'"
            )
        if want_tgt is not None and path_target(h.tgt, img) != want_tgt:
            problems.append(
                f"aspect '{a.id}': image ends at '{path_target(h.tgt, img)}', "
                f"expected '{want_tgt}'"
            )
    return problems


def graph_morphism(
    src: Graph, tgt: Graph, type_map: Mapping[str, str], aspect_map: Mapping[str, Path]
) -> GraphMorphism:
    """Build and validate a morphism; raises :class:`MorphismError` if broken."""
    h = GraphMorphism(src=src, tgt=tgt, type_map=dict(type_map), aspect_map=dict(aspect_map))
    problems = morphism_errors(h)
    if problems:
        raise MorphismError("; ".join(problems))
    return h


def identity_morphism(g: Graph) -> GraphMorphism:
    return GraphMorphism(
        src=g,
        tgt=g,
        type_map={t.id: t.id for t in g.types},
        aspect_map={a.id: Path(a.src, (a.id,)) for a in g.aspects},
    )


def compose_morphisms(h1: GraphMorphism, h2: GraphMorphism) -> GraphMorphism:
    """Diagrammatic composite: first h1, then h2."""
    if h1.tgt != h2.src:
        raise GraphMismatchError("morphisms do not compose: middle graphs differ")
    return GraphMorphism(
        src=h1.src,
        tgt=h2.tgt,
        type_map={t: h2.type_map[v] for t, v in h1.type_map.items()},
        aspect_map={a: translate_path(h2, p) for a, p in h1.aspect_map.items()},
    )


def translate_path(h: GraphMorphism, p: Path) -> Path:
    """Concatenate the images of the path's aspects; identities map to identities."""
    edges: tuple[str, ...] = ()
    for eid in p.edges:
        edges += h.aspect_map[eid].edges
    return Path(h.type_map[p.source], edges)


def translate_fact(h: GraphMorphism, fact: Fact) -> Fact:
    return Fact(translate_path(h, fact.lhs), translate_path(h, fact.rhs))


def dir_flow(h: GraphMorphism, facts) -> tuple[Fact, ...]:
    """Elementwise image of a fact set in the target language."""
    return tuple(sorted({translate_fact(h, f) for f in facts}))


def inv_flow(
    h: GraphMorphism,
    target_facts,
    bound: int = DEFAULT_BOUND,
    target_bound: int | None = None,
) -> tuple[Fact, ...]:
    """Source facts whose translations are entailed by the target fact set.

    Candidates range over the source universe up to ``bound``. Entailment on
    the far side runs at ``target_bound`` (defaulting to ``bound``); when the
    morphism maps aspects to longer paths, give the target side proportionally
    more room, otherwise candidates whose translations overflow cannot be
    decided and are omitted, consistent with verdicts never overclaiming at a
    finite bound.
    """
    tb = bound if target_bound is None else target_bound
    target_spec = Specification(graph=h.tgt, facts=tuple(target_facts))
    cong = saturate(target_spec, tb)
    out = []
    for fact in enumerate_equations(h.src, bound):
        img = translate_fact(h, fact)
        if len(img.lhs) > tb or len(img.rhs) > tb:
            continue
        if cong.same(img.lhs, img.rhs):
            out.append(fact)
    return tuple(out)


def pullback_instances(h: GraphMorphism, d2: KeyDiagram) -> KeyDiagram:
    """Reinterpret target instance data over the source language.

    Each source type borrows the key set of its image; each source aspect
    becomes the composite function along its image path.
    """
    sets = {t.id: d2.sets[h.type_map[t.id]] for t in h.src.types}
    funcs = {}
    for a in h.src.aspects:
        img = h.aspect_map[a.id]
        funcs[a.id] = {k: eval_path(d2, img, k) for k in sorted(sets[a.src])}
    return KeyDiagram(sets=sets, funcs=funcs)


def is_spec_morphism(
    h: GraphMorphism,
    s1: Specification,
    s2: Specification,
    bound: int = DEFAULT_BOUND,
) -> tuple[bool, tuple[Fact, ...]]:
    """Does ``h`` preserve entailment from ``s1`` into ``s2``?

    It suffices to check the declared facts: a derivation of any entailed fact
    translates rule for rule. Returns (verdict, offending declared facts).
    """
    if h.src != s1.graph or h.tgt != s2.graph:
        raise GraphMismatchError("morphism endpoints do not match the specifications")
    cong = saturate(s2, bound)
    offenders = []
    for fact in s1.facts:
        img = translate_fact(h, fact)
        if len(img.lhs) > bound or len(img.rhs) > bound:
            raise BoundExceededError(
                f"translated fact '{format_fact(img)}' has a side longer than "
                f"bound {bound}",
                fact=fact,
            )
        if entails_in(cong, img) != ENTAILED:
            offenders.append(fact)
    return (not offenders, tuple(offenders))


# ---------------------------------------------------------------------------
# Lattice-of-theories moves


def lot_contract(s: Specification, facts) -> Specification:
    """Delete declared facts, moving to a more general specification."""
    facts = tuple(facts)
    declared = set(s.facts)
    missing = [f for f in facts if f not in declared]
    if missing:
        raise LotError(
            f"cannot contract undeclared fact {format_fact(missing[0])}"
        )
    keep = tuple(f for f in s.facts if f not in set(facts))
    return Specification(graph=s.graph, facts=keep, sketch=s.sketch, name=s.name)


def lot_expand(s: Specification, facts) -> Specification:
    """Add facts, moving to a more specialized specification."""
    facts = tuple(facts)
    for f in facts:
        errs = fact_errors(s.graph, f)
        if errs:
            raise LotError(f"cannot expand with ill-formed fact: {errs[0]}")
    return Specification(
        graph=s.graph, facts=s.facts + facts, sketch=s.sketch, name=s.name
    )


def lot_revise(s: Specification, delete, add) -> Specification:
    """Contraction followed by expansion."""
    return lot_expand(lot_contract(s, delete), add)


def lot_analogy(h: GraphMorphism, s: Specification, name: str | None = None) -> Specification:
    """Systematic renaming: move the fact set along a morphism to a new language.

    Sketch annotations do not transport and are dropped.
    """
    if h.src != s.graph:
        raise GraphMismatchError("analogy morphism must start at the specification's graph")
    return Specification(
        graph=h.tgt,
        facts=dir_flow(h, s.facts),
        name=name if name is not None else s.name,
    )
