"""Bounded entailment of path equations.

The equations derivable from a set of declared facts form a congruence on
paths: an equivalence per (source, target) pair that is closed under
composition on either side. Over a graph with cycles the full congruence is
infinite and the word problem is undecidable, so this engine saturates only
the finite universe of paths up to a configurable length bound. Verdicts are
therefore ``entailed`` or ``not derivable within bound``, never a claim of
non-entailment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Fact,
    Graph,
    Path,
    Specification,
    enumerate_paths,
    fact_errors,
    format_fact,
    path_target,
)
from .errors import BoundExceededError, GraphMismatchError, OlogError

DEFAULT_BOUND = 6

ENTAILED = "entailed"
NOT_DERIVABLE = "not-derivable-within-bound"


def _check_bound(bound: int) -> int:
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    return bound


def enumerate_equations(graph: Graph, bound: int) -> tuple[Fact, ...]:
    """Every ordered pair of parallel paths with both sides of length <= bound.

    Includes the reflexive pairs. Deterministic order (sorted by path pairs).
    """
    _check_bound(bound)
    by_endpoints: dict[tuple[str, str], list[Path]] = {}
    for p in enumerate_paths(graph, bound):
        by_endpoints.setdefault((p.source, path_target(graph, p)), []).append(p)
    out: list[Fact] = []
    for _, group in sorted(by_endpoints.items()):
        for lhs in group:
            for rhs in group:
                out.append(Fact(lhs, rhs))
    return tuple(sorted(out))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # Keep the canonical (shortest, then lexicographic) member as root.
        if _canon_key(rb) < _canon_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _canon_key(path: Path):
    return (len(path.edges), path.edges, path.source)


@dataclass(frozen=True)
class Congruence:
    """Result of saturating a specification up to a path-length bound.

    ``classes`` partitions the bounded path universe; each class holds paths
    with a common source and target. The representative of a class is its
    shortest member, ties broken lexicographically by edge ids.
    """

    graph: Graph
    bound: int
    classes: tuple[tuple[Path, ...], ...]

    @property
    def universe(self) -> tuple[Path, ...]:
        return tuple(sorted(p for cls in self.classes for p in cls))

    def _index(self) -> dict[Path, Path]:
        cached = getattr(self, "_rep_cache", None)
        if cached is None:
            cached = {}
            for cls in self.classes:
                rep = cls[0]
                for p in cls:
                    cached[p] = rep
            object.__setattr__(self, "_rep_cache", cached)
        return cached

    def representative(self, path: Path) -> Path:
        idx = self._index()
        if path not in idx:
            raise BoundExceededError(
                f"path of length {len(path)} exceeds bound {self.bound}"
            )
        return idx[path]

    def same(self, p: Path, q: Path) -> bool:
        return self.representative(p) is self.representative(q)


def saturate(spec: Specification, bound: int = DEFAULT_BOUND) -> Congruence:
    """Least bounded congruence containing the declared facts.

    Closure rules: reflexivity, symmetry, transitivity, composition of equal
    pairs, and composition with an arbitrary path on the left or right, all
    restricted to paths of length <= bound. A declared fact with a side longer
    than the bound is a hard error (silently dropping it would make every
    downstream comparison unsound).
    """
    _check_bound(bound)
    g = spec.graph
    universe = enumerate_paths(g, bound)
    in_universe = set(universe)
    uf = _UnionFind(universe)

    for fact in spec.facts:
        if fact.lhs not in in_universe or fact.rhs not in in_universe:
            raise BoundExceededError(
                f"declared fact '{format_fact(fact)}' has a side longer than bound {bound}",
                fact=fact,
            )
        uf.union(fact.lhs, fact.rhs)

    targets = {p: path_target(g, p) for p in universe}
    aspects_from = g.aspects_from
    aspects_into: dict[str, list] = {}
    for a in g.aspects:
        aspects_into.setdefault(a.tgt, []).append(a)

    # Close under single-aspect extension of each merged pair against the
    # class representative; longer compositions follow by induction because
    # every prefix of a bounded path is bounded.
    changed = True
    while changed:
        changed = False
        groups: dict[Path, list[Path]] = {}
        for p in universe:
            groups.setdefault(uf.find(p), []).append(p)
        for rep, members in groups.items():
            if len(members) < 2:
                continue
            rep_tgt = targets[rep]
            for m in members:
                if m is rep or len(m.edges) + 1 > bound:
                    continue
                for a in aspects_from.get(rep_tgt, ()):
                    ext_m = Path(m.source, m.edges + (a.id,))
                    ext_r = Path(rep.source, rep.edges + (a.id,))
                    if uf.union(ext_m, ext_r):
                        changed = True
                for a in aspects_into.get(m.source, ()):
                    pre_m = Path(a.src, (a.id,) + m.edges)
                    pre_r = Path(a.src, (a.id,) + rep.edges)
                    if uf.union(pre_m, pre_r):
                        changed = True

    groups2: dict[Path, list[Path]] = {}
    for p in universe:
        groups2.setdefault(uf.find(p), []).append(p)
    classes = tuple(
        tuple(sorted(members, key=_canon_key))
        for _, members in sorted(groups2.items(), key=lambda kv: _canon_key(kv[0]))
    )
    return Congruence(graph=g, bound=bound, classes=classes)


def entails(spec: Specification, fact: Fact, bound: int = DEFAULT_BOUND) -> str:
    """Decide a single fact within the bound.

    Returns :data:`ENTAILED` or :data:`NOT_DERIVABLE`. The query fact must be
    well formed and both sides must fit the bound.
    """
    errs = fact_errors(spec.graph, fact)
    if errs:
        raise OlogError(f"fact {format_fact(fact)}: {errs[0]}")
    if len(fact.lhs) > bound or len(fact.rhs) > bound:
        raise BoundExceededError(
            f"queried fact '{format_fact(fact)}' has a side longer than bound {bound}",
            fact=fact,
        )
    cong = saturate(spec, bound)
    return entails_in(cong, fact)


def entails_in(cong: Congruence, fact: Fact) -> str:
    """Decide a fact against an already computed congruence."""
    return ENTAILED if cong.same(fact.lhs, fact.rhs) else NOT_DERIVABLE


def consequence(spec: Specification, bound: int = DEFAULT_BOUND) -> tuple[Fact, ...]:
    """All bounded equations entailed by the specification.

    Contains every declared fact that fits the bound, every tautology, and
    everything derivable from them inside the bounded universe.
    """
    cong = saturate(spec, bound)
    out = [f for f in enumerate_equations(spec.graph, bound) if cong.same(f.lhs, f.rhs)]
    return tuple(out)


def spec_leq(e1: Specification, e2: Specification, bound: int = DEFAULT_BOUND) -> bool:
    """Specialization order on the fiber over one graph.

    True when ``e1`` entails every declared fact of ``e2`` within the bound.
    Reflexive and transitive; the empty specification is the most general.
    """
    if e1.graph != e2.graph:
        raise GraphMismatchError("spec_leq compares specifications over one graph")
    cong = saturate(e1, bound)
    return all(cong.same(f.lhs, f.rhs) for f in e2.facts)
