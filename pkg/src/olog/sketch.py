"""Limit and colimit annotations checked against instance data.

Annotations (products, pullbacks, coproducts, pushouts, singleton and empty
types, images, injective and surjective aspects) are verified semantically on
finite key diagrams using the set-level constructions directly. They are
never used as inference rules by the entailment engine; that keeps the
congruence sound while the sketch semantics stay where they are decidable.

Synthesized instance sets use canonical key encodings so generated files are
stable: tuples ``(k1,k2)``, tagged members ``in<aspect>:k``, and pushout
class representatives (the least tagged member).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .core import (
    Aspect,
    Fact,
    Graph,
    Path,
    Specification,
    compose_paths,
    format_fact,
    format_path,
    path_errors,
    path_target,
)
from .entail import DEFAULT_BOUND, ENTAILED, entails
from .errors import SketchError, SynthesisError
from .instances import KeyDiagram, eval_path


@dataclass(frozen=True)
class ProductDecl:
    """target = cartesian product of the factors; one projection aspect each."""

    target: str
    factors: tuple[tuple[str, str], ...]  # (factor type, projection aspect)


@dataclass(frozen=True)
class PullbackDecl:
    """target = pairs from the two legs agreeing along the cospan paths."""

    target: str
    leg_b: tuple[str, str]  # (type, projection aspect)
    leg_c: tuple[str, str]
    cospan: tuple[Path, Path]  # paths B -> D and C -> D


@dataclass(frozen=True)
class CoproductDecl:
    """target = tagged disjoint union of the summands; one inclusion each."""

    target: str
    summands: tuple[tuple[str, str], ...]  # (summand type, inclusion aspect)


@dataclass(frozen=True)
class PushoutDecl:
    """target = disjoint union of the legs, identified along a common span."""

    target: str
    leg_b: tuple[str, str]  # (type, inclusion aspect into target)
    leg_c: tuple[str, str]
    span: tuple[Path, Path]  # paths A -> B and A -> C


@dataclass(frozen=True)
class SingletonDecl:
    """target has exactly one instance (the empty product)."""

    target: str


@dataclass(frozen=True)
class EmptyDecl:
    """target has no instances (the empty coproduct)."""

    target: str


@dataclass(frozen=True)
class ImageDecl:
    """target is the image of a path, factored surjection-then-injection."""

    target: str
    of: Path
    surjection: str  # aspect source-of-path -> target
    injection: str  # aspect target -> target-of-path


SketchDecl = (
    ProductDecl
    | PullbackDecl
    | CoproductDecl
    | PushoutDecl
    | SingletonDecl
    | EmptyDecl
    | ImageDecl
)


def synthesized_aspects(decl: "SketchDecl") -> tuple[str, ...]:
    """Aspect ids whose functions are outputs of synthesizing ``decl``."""
    if isinstance(decl, ProductDecl):
        return tuple(a for _, a in decl.factors)
    if isinstance(decl, PullbackDecl):
        return (decl.leg_b[1], decl.leg_c[1])
    if isinstance(decl, CoproductDecl):
        return tuple(a for _, a in decl.summands)
    if isinstance(decl, PushoutDecl):
        return (decl.leg_b[1], decl.leg_c[1])
    if isinstance(decl, ImageDecl):
        return (decl.surjection, decl.injection)
    return ()


def encode_tuple(keys) -> str:
    return "(" + ",".join(keys) + ")"


def encode_tagged(aspect_id: str, key: str) -> str:
    return f"in{aspect_id}:{key}"


# ---------------------------------------------------------------------------
# Structural validation


def _aspect(g: Graph, aid: str) -> Aspect | None:
    return g.aspect_by_id.get(aid)


def validate_decls(spec: Specification) -> list[str]:
    """Endpoint sanity of every sketch declaration (empty when all fine)."""
    g = spec.graph
    problems: list[str] = []

    def need_type(tid: str, ctx: str):
        if not g.has_type(tid):
            problems.append(f"{ctx}: unknown type '{tid}'")
            return False
        return True

    def need_proj(tid: str, aid: str, target: str, ctx: str):
        a = _aspect(g, aid)
        if a is None:
            problems.append(f"{ctx}: unknown aspect '{aid}'")
        elif a.src != target or a.tgt != tid:
            problems.append(
                f"{ctx}: projection '{aid}' must run {target} -> {tid}, "
                f"it runs {a.src} -> {a.tgt}"
            )

    def need_incl(tid: str, aid: str, target: str, ctx: str):
        a = _aspect(g, aid)
        if a is None:
            problems.append(f"{ctx}: unknown aspect '{aid}'")
        elif a.src != tid or a.tgt != target:
            problems.append(
                f"{ctx}: inclusion '{aid}' must run {tid} -> {target}, "
                f"it runs {a.src} -> {a.tgt}"
            )

    def need_path(p: Path, src: str, tgt: str | None, ctx: str):
        errs = path_errors(g, p)
        if errs:
            problems.append(f"{ctx}: {errs[0]}")
            return
        if p.source != src:
            problems.append(f"{ctx}: path {format_path(p)} must start at '{src}'")
        elif tgt is not None and path_target(g, p) != tgt:
            problems.append(f"{ctx}: path {format_path(p)} must end at '{tgt}'")

    for decl in spec.sketch:
        ctx = f"{type(decl).__name__} on '{decl.target}'"
        if not need_type(decl.target, ctx):
            continue
        if isinstance(decl, ProductDecl):
            for tid, aid in decl.factors:
                if need_type(tid, ctx):
                    need_proj(tid, aid, decl.target, ctx)
        elif isinstance(decl, PullbackDecl):
            (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
            pf, pg = decl.cospan
            if need_type(tb, ctx):
                need_proj(tb, ab, decl.target, ctx)
            if need_type(tc, ctx):
                need_proj(tc, ac, decl.target, ctx)
            need_path(pf, tb, None, ctx)
            need_path(pg, tc, None, ctx)
            if not (path_errors(g, pf) or path_errors(g, pg)):
                if path_target(g, pf) != path_target(g, pg):
                    problems.append(f"{ctx}: cospan paths end at different types")
        elif isinstance(decl, CoproductDecl):
            for tid, aid in decl.summands:
                if need_type(tid, ctx):
                    need_incl(tid, aid, decl.target, ctx)
        elif isinstance(decl, PushoutDecl):
            (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
            pf, pg = decl.span
            if need_type(tb, ctx):
                need_incl(tb, ab, decl.target, ctx)
            if need_type(tc, ctx):
                need_incl(tc, ac, decl.target, ctx)
            if path_errors(g, pf) or path_errors(g, pg):
                problems.extend(f"{ctx}: {e}" for e in path_errors(g, pf))
                problems.extend(f"{ctx}: {e}" for e in path_errors(g, pg))
            elif pf.source != pg.source:
                problems.append(f"{ctx}: span paths start at different types")
            else:
                need_path(pf, pf.source, tb, ctx)
                need_path(pg, pg.source, tc, ctx)
        elif isinstance(decl, ImageDecl):
            errs = path_errors(g, decl.of)
            if errs:
                problems.append(f"{ctx}: {errs[0]}")
                continue
            fs, fi = _aspect(g, decl.surjection), _aspect(g, decl.injection)
            if fs is None:
                problems.append(f"{ctx}: unknown aspect '{decl.surjection}'")
            elif fs.src != decl.of.source or fs.tgt != decl.target:
                problems.append(
                    f"{ctx}: surjection part must run "
                    f"{decl.of.source} -> {decl.target}"
                )
            if fi is None:
                problems.append(f"{ctx}: unknown aspect '{decl.injection}'")
            elif fi.src != decl.target or fi.tgt != path_target(g, decl.of):
                problems.append(
                    f"{ctx}: injection part must run "
                    f"{decl.target} -> {path_target(g, decl.of)}"
                )
    return problems


def square_fact(spec: Specification, decl) -> Fact | None:
    """The commuting equation a pullback/pushout/image declaration presumes."""
    g = spec.graph
    if isinstance(decl, PullbackDecl):
        (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
        lhs = compose_paths(g, Path(decl.target, (ab,)), decl.cospan[0])
        rhs = compose_paths(g, Path(decl.target, (ac,)), decl.cospan[1])
        return Fact(lhs, rhs)
    if isinstance(decl, PushoutDecl):
        (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
        lhs = compose_paths(g, decl.span[0], Path(tb, (ab,)))
        rhs = compose_paths(g, decl.span[1], Path(tc, (ac,)))
        return Fact(lhs, rhs)
    if isinstance(decl, ImageDecl):
        rhs = Path(decl.of.source, (decl.surjection, decl.injection))
        return Fact(decl.of, rhs)
    return None


def missing_square_facts(spec: Specification) -> list[str]:
    """Lint: declarations whose commuting square is not declared as a fact.

    The square is part of the construction's meaning; its absence is flagged
    as a warning rather than an error.
    """
    declared = set(spec.facts)
    out: list[str] = []
    for decl in spec.sketch:
        try:
            sq = square_fact(spec, decl)
        except Exception:
            continue  # structural problems are reported by validate_decls
        if sq is None:
            continue
        if sq not in declared and Fact(sq.rhs, sq.lhs) not in declared:
            out.append(
                f"{type(decl).__name__} on '{decl.target}': commuting fact "
                f"{format_fact(sq)} is not declared"
            )
    return out


# ---------------------------------------------------------------------------
# Semantic checks


@dataclass(frozen=True)
class CheckResult:
    kind: str
    subject: str
    passed: bool
    witness: str = ""

    @property
    def verdict(self) -> str:
        return "check-passed" if self.passed else "check-failed"


def _tupling(d: KeyDiagram, target: str, projections) -> dict[str, tuple[str, ...]]:
    return {
        x: tuple(d.funcs[aid][x] for aid in projections)
        for x in sorted(d.sets.get(target, frozenset()))
    }


def _bijection_onto(
    kind: str, target: str, got: dict[str, tuple[str, ...]], want: set
) -> CheckResult:
    seen: dict[tuple[str, ...], str] = {}
    for x, tup in got.items():
        if tup not in want:
            return CheckResult(kind, target, False, f"extra tuple {tup} from key '{x}'")
        if tup in seen:
            return CheckResult(
                kind, target, False,
                f"duplicated tuple {tup} from keys '{seen[tup]}' and '{x}'",
            )
        seen[tup] = x
    missing = want - set(seen)
    if missing:
        return CheckResult(kind, target, False, f"missing tuple {sorted(missing)[0]}")
    return CheckResult(kind, target, True)


def check_product(d: KeyDiagram, decl: ProductDecl) -> CheckResult:
    """Tupling along the projections must biject onto the full cartesian product.

    With zero factors the product is a single empty tuple, so the target must
    have exactly one key.
    """
    want = set(
        iter_product(*(sorted(d.sets.get(t, frozenset())) for t, _ in decl.factors))
    )
    got = _tupling(d, decl.target, [aid for _, aid in decl.factors])
    return _bijection_onto("product", decl.target, got, want)


def check_pullback(d: KeyDiagram, decl: PullbackDecl) -> CheckResult:
    (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
    pf, pg = decl.cospan
    want = {
        (b, c)
        for b in sorted(d.sets.get(tb, frozenset()))
        for c in sorted(d.sets.get(tc, frozenset()))
        if eval_path(d, pf, b) == eval_path(d, pg, c)
    }
    got = _tupling(d, decl.target, [ab, ac])
    return _bijection_onto("pullback", decl.target, got, want)


def check_coproduct(d: KeyDiagram, decl: CoproductDecl) -> CheckResult:
    """Inclusions must be injective with pairwise disjoint images covering the target."""
    target_keys = set(d.sets.get(decl.target, frozenset()))
    covered: dict[str, tuple[str, str]] = {}
    for tid, aid in decl.summands:
        seen: dict[str, str] = {}
        for k in sorted(d.sets.get(tid, frozenset())):
            v = d.funcs[aid][k]
            if v in seen:
                return CheckResult(
                    "coproduct", decl.target, False,
                    f"inclusion '{aid}' is not injective: '{seen[v]}' and '{k}' "
                    f"both map to '{v}'",
                )
            seen[v] = k
            if v in covered:
                return CheckResult(
                    "coproduct", decl.target, False,
                    f"target key '{v}' is hit by both '{covered[v][0]}' and '{aid}'",
                )
            covered[v] = (aid, k)
    uncovered = target_keys - set(covered)
    if uncovered:
        return CheckResult(
            "coproduct", decl.target, False,
            f"target key '{sorted(uncovered)[0]}' is not included from any summand",
        )
    return CheckResult("coproduct", decl.target, True)


class _MiniUF:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def add(self, x: str):
        self.parent.setdefault(x, x)

    def find(self, x: str) -> str:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _pushout_classes(d: KeyDiagram, decl: PushoutDecl) -> dict[str, list[str]]:
    """Quotient the tagged union of the legs by the span identifications."""
    (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
    pf, pg = decl.span
    uf = _MiniUF()
    for k in sorted(d.sets.get(tb, frozenset())):
        uf.add(encode_tagged(ab, k))
    for k in sorted(d.sets.get(tc, frozenset())):
        uf.add(encode_tagged(ac, k))
    apex = pf.source
    for akey in sorted(d.sets.get(apex, frozenset())):
        uf.union(
            encode_tagged(ab, eval_path(d, pf, akey)),
            encode_tagged(ac, eval_path(d, pg, akey)),
        )
    classes: dict[str, list[str]] = {}
    for member in uf.parent:
        classes.setdefault(uf.find(member), []).append(member)
    return {rep: sorted(members) for rep, members in classes.items()}


def check_pushout(d: KeyDiagram, decl: PushoutDecl) -> CheckResult:
    """The map from the span quotient to the target must be a bijection."""
    (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
    tagged_val = {}
    for k in d.sets.get(tb, frozenset()):
        tagged_val[encode_tagged(ab, k)] = d.funcs[ab][k]
    for k in d.sets.get(tc, frozenset()):
        tagged_val[encode_tagged(ac, k)] = d.funcs[ac][k]

    classes = _pushout_classes(d, decl)
    induced: dict[str, str] = {}
    for rep, members in sorted(classes.items()):
        values = sorted({tagged_val[m] for m in members})
        if len(values) > 1:
            return CheckResult(
                "pushout", decl.target, False,
                f"identified keys {members} land on distinct targets {values}",
            )
        val = values[0]
        if val in induced.values():
            other = next(r for r, v in induced.items() if v == val)
            return CheckResult(
                "pushout", decl.target, False,
                f"distinct classes '{other}' and '{rep}' both map to '{val}'",
            )
        induced[rep] = val
    uncovered = set(d.sets.get(decl.target, frozenset())) - set(induced.values())
    if uncovered:
        return CheckResult(
            "pushout", decl.target, False,
            f"target key '{sorted(uncovered)[0]}' is not reached from either leg",
        )
    return CheckResult("pushout", decl.target, True)


def check_singleton(d: KeyDiagram, decl: SingletonDecl) -> CheckResult:
    res = check_product(d, ProductDecl(decl.target, ()))
    return CheckResult("singleton", decl.target, res.passed, res.witness)


def check_empty(d: KeyDiagram, decl: EmptyDecl) -> CheckResult:
    res = check_coproduct(d, CoproductDecl(decl.target, ()))
    return CheckResult("empty", decl.target, res.passed, res.witness)


def check_injective(d: KeyDiagram, graph: Graph, aspect_id: str) -> CheckResult:
    fn = d.funcs[aspect_id]
    seen: dict[str, str] = {}
    for k in sorted(d.sets.get(graph.aspect_by_id[aspect_id].src, frozenset())):
        v = fn[k]
        if v in seen:
            return CheckResult(
                "injective", aspect_id, False,
                f"keys '{seen[v]}' and '{k}' share the image '{v}'",
            )
        seen[v] = k
    return CheckResult("injective", aspect_id, True)


def check_surjective(d: KeyDiagram, graph: Graph, aspect_id: str) -> CheckResult:
    a = graph.aspect_by_id[aspect_id]
    hit = {d.funcs[aspect_id][k] for k in d.sets.get(a.src, frozenset())}
    unhit = set(d.sets.get(a.tgt, frozenset())) - hit
    if unhit:
        return CheckResult(
            "surjective", aspect_id, False, f"target key '{sorted(unhit)[0]}' is never hit"
        )
    return CheckResult("surjective", aspect_id, True)


def check_image(d: KeyDiagram, graph: Graph, decl: ImageDecl) -> CheckResult:
    surj = check_surjective(d, graph, decl.surjection)
    if not surj.passed:
        return CheckResult("image", decl.target, False, surj.witness)
    inj = check_injective(d, graph, decl.injection)
    if not inj.passed:
        return CheckResult("image", decl.target, False, inj.witness)
    for k in sorted(d.sets.get(decl.of.source, frozenset())):
        via = d.funcs[decl.injection][d.funcs[decl.surjection][k]]
        direct = eval_path(d, decl.of, k)
        if via != direct:
            return CheckResult(
                "image", decl.target, False,
                f"factorization disagrees at '{k}': {via} vs {direct}",
            )
    return CheckResult("image", decl.target, True)


def check_decl(d: KeyDiagram, graph: Graph, decl: SketchDecl) -> CheckResult:
    if isinstance(decl, ProductDecl):
        return check_product(d, decl)
    if isinstance(decl, PullbackDecl):
        return check_pullback(d, decl)
    if isinstance(decl, CoproductDecl):
        return check_coproduct(d, decl)
    if isinstance(decl, PushoutDecl):
        return check_pushout(d, decl)
    if isinstance(decl, SingletonDecl):
        return check_singleton(d, decl)
    if isinstance(decl, EmptyDecl):
        return check_empty(d, decl)
    if isinstance(decl, ImageDecl):
        return check_image(d, graph, decl)
    raise SketchError(f"unknown sketch declaration {decl!r}")


def check_all(d: KeyDiagram, spec: Specification) -> list[CheckResult]:
    """Every sketch declaration plus every declared injective/surjective modifier."""
    results = [check_decl(d, spec.graph, decl) for decl in spec.sketch]
    for a in spec.graph.aspects:
        if "injective" in a.modifiers:
            results.append(check_injective(d, spec.graph, a.id))
        if "surjective" in a.modifiers:
            results.append(check_surjective(d, spec.graph, a.id))
    return results


# ---------------------------------------------------------------------------
# Synthesis


def synthesize(decl: SketchDecl, d: KeyDiagram) -> KeyDiagram:
    """Populate the declaration's target canonically from the other participants.

    Refuses if the target set is already populated. The result always passes
    the corresponding check.
    """
    if d.sets.get(decl.target):
        raise SynthesisError(
            f"target '{decl.target}' is already populated; refusing to overwrite"
        )
    sets = {k: v for k, v in d.sets.items()}
    funcs = {k: dict(v) for k, v in d.funcs.items()}

    if isinstance(decl, (SingletonDecl, ProductDecl)):
        factors = decl.factors if isinstance(decl, ProductDecl) else ()
        keys = []
        for combo in iter_product(
            *(sorted(d.sets.get(t, frozenset())) for t, _ in factors)
        ):
            key = encode_tuple(combo)
            keys.append(key)
            for (t, aid), comp in zip(factors, combo):
                funcs.setdefault(aid, {})[key] = comp
        sets[decl.target] = frozenset(keys)
        for _, aid in factors:
            funcs.setdefault(aid, {})
    elif isinstance(decl, PullbackDecl):
        (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
        pf, pg = decl.cospan
        keys = []
        for b in sorted(d.sets.get(tb, frozenset())):
            for c in sorted(d.sets.get(tc, frozenset())):
                if eval_path(d, pf, b) == eval_path(d, pg, c):
                    key = encode_tuple((b, c))
                    keys.append(key)
                    funcs.setdefault(ab, {})[key] = b
                    funcs.setdefault(ac, {})[key] = c
        sets[decl.target] = frozenset(keys)
        funcs.setdefault(ab, {})
        funcs.setdefault(ac, {})
    elif isinstance(decl, (EmptyDecl, CoproductDecl)):
        summands = decl.summands if isinstance(decl, CoproductDecl) else ()
        keys = []
        for tid, aid in summands:
            for k in sorted(d.sets.get(tid, frozenset())):
                key = encode_tagged(aid, k)
                keys.append(key)
                funcs.setdefault(aid, {})[k] = key
        sets[decl.target] = frozenset(keys)
        for _, aid in summands:
            funcs.setdefault(aid, {})
    elif isinstance(decl, PushoutDecl):
        (tb, ab), (tc, ac) = decl.leg_b, decl.leg_c
        classes = _pushout_classes(d, decl)
        rep_of: dict[str, str] = {}
        for rep, members in classes.items():
            for m in members:
                rep_of[m] = rep
        sets[decl.target] = frozenset(classes)
        for k in d.sets.get(tb, frozenset()):
            funcs.setdefault(ab, {})[k] = rep_of[encode_tagged(ab, k)]
        for k in d.sets.get(tc, frozenset()):
            funcs.setdefault(ac, {})[k] = rep_of[encode_tagged(ac, k)]
        funcs.setdefault(ab, {})
        funcs.setdefault(ac, {})
    elif isinstance(decl, ImageDecl):
        values = sorted(
            {eval_path(d, decl.of, k) for k in d.sets.get(decl.of.source, frozenset())}
        )
        sets[decl.target] = frozenset(values)
        for k in d.sets.get(decl.of.source, frozenset()):
            funcs.setdefault(decl.surjection, {})[k] = eval_path(d, decl.of, k)
        for v in values:
            funcs.setdefault(decl.injection, {})[v] = v
        funcs.setdefault(decl.surjection, {})
        funcs.setdefault(decl.injection, {})
    else:
        raise SketchError(f"cannot synthesize {decl!r}")

    return KeyDiagram(sets=sets, funcs=funcs)


def derive_mediating_aspect(
    spec: Specification,
    x: str,
    cone: tuple[Path, ...],
    decl: ProductDecl | PullbackDecl,
    aspect_id: str,
    bound: int = DEFAULT_BOUND,
) -> tuple[Specification, Aspect, tuple[Fact, ...]]:
    """Add the mediating aspect from ``x`` into a product or pullback target.

    ``cone`` gives one path from ``x`` to each factor (for a pullback: to the
    two legs, in order). Returns the extended specification, the new aspect,
    and one new fact per factor stating cone path = mediator;projection. For a
    pullback the cone must provably commute with the cospan; otherwise the
    call is rejected naming the two paths that fail.
    """
    g = spec.graph
    if isinstance(decl, ProductDecl):
        legs = decl.factors
    else:
        legs = (decl.leg_b, decl.leg_c)
    if len(cone) != len(legs):
        raise SketchError(f"cone has {len(cone)} paths for {len(legs)} factors")
    for p, (tid, _) in zip(cone, legs):
        errs = path_errors(g, p)
        if errs:
            raise SketchError(errs[0])
        if p.source != x or path_target(g, p) != tid:
            raise SketchError(
                f"cone path {format_path(p)} must run {x} -> {tid}"
            )
    if isinstance(decl, PullbackDecl):
        pf, pg = decl.cospan
        lhs = compose_paths(g, cone[0], pf)
        rhs = compose_paths(g, cone[1], pg)
        if entails(spec, Fact(lhs, rhs), bound) != ENTAILED:
            raise SketchError(
                f"cone does not commute with the cospan: "
                f"{format_path(lhs)} = {format_path(rhs)} is not derivable"
            )
    if aspect_id in g.aspect_by_id or aspect_id in g.type_by_id:
        raise SketchError(f"id '{aspect_id}' is already taken")

    mediator = Aspect(id=aspect_id, src=x, tgt=decl.target, label="")
    new_graph = Graph(g.types, g.aspects + (mediator,))
    new_facts = []
    for p, (_, proj) in zip(cone, legs):
        new_facts.append(Fact(p, Path(x, (aspect_id, proj))))
    new_spec = Specification(
        graph=new_graph,
        facts=spec.facts + tuple(new_facts),
        sketch=spec.sketch,
        name=spec.name,
    )
    return new_spec, mediator, tuple(new_facts)


def populate_mediator(
    d: KeyDiagram, aspect_id: str, x: str, cone: tuple[Path, ...]
) -> KeyDiagram:
    """Instance semantics of a mediating aspect: each key maps to the tuple of
    its cone evaluations (matching the canonical synthesized target keys)."""
    funcs = {k: dict(v) for k, v in d.funcs.items()}
    funcs[aspect_id] = {
        k: encode_tuple(tuple(eval_path(d, p, k) for p in cone))
        for k in sorted(d.sets.get(x, frozenset()))
    }
    return KeyDiagram(sets=dict(d.sets), funcs=funcs)
