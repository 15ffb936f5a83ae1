"""Tabular instance data checked as a functor to finite sets.

A key diagram assigns a finite set of keys to each type and a total function
to each aspect. Keys are opaque text tokens compared by exact string match.
Data lives in one CSV file per type: header ``Id`` followed by one column per
outgoing aspect, columns in canonical (sorted) aspect order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Mapping

from .core import Fact, Graph, Path, Specification
from .errors import EvaluationError, InstanceLoadError
from .entail import enumerate_equations


@dataclass(frozen=True, eq=True)
class KeyDiagram:
    """Finite key set per type plus a total key function per aspect.

    Treated as immutable after construction; helpers that "modify" a diagram
    return a new one.
    """

    sets: Mapping[str, frozenset[str]]
    funcs: Mapping[str, Mapping[str, str]]

    def __hash__(self):  # mappings are not hashable; identity is fine here
        return id(self)


def key_diagram(sets: Mapping[str, object], funcs: Mapping[str, Mapping[str, str]]) -> KeyDiagram:
    """Normalize plain dicts into a KeyDiagram."""
    return KeyDiagram(
        sets={t: frozenset(ks) for t, ks in sets.items()},
        funcs={a: dict(f) for a, f in funcs.items()},
    )


def diagram_errors(d: KeyDiagram, graph: Graph) -> list[str]:
    """Totality and key-closure problems of ``d`` over ``graph``."""
    problems: list[str] = []
    for t in graph.types:
        if t.id not in d.sets:
            problems.append(f"no key set for type '{t.id}'")
    for a in graph.aspects:
        fn = d.funcs.get(a.id)
        if fn is None:
            problems.append(f"no function for aspect '{a.id}'")
            continue
        src_keys = d.sets.get(a.src, frozenset())
        tgt_keys = d.sets.get(a.tgt, frozenset())
        for k in sorted(src_keys):
            if k not in fn:
                problems.append(f"aspect '{a.id}' undefined at key '{k}'")
            elif fn[k] not in tgt_keys:
                problems.append(
                    f"aspect '{a.id}' sends '{k}' to '{fn[k]}', "
                    f"which is not a key of '{a.tgt}'"
                )
        for k in sorted(set(fn) - set(src_keys)):
            problems.append(f"aspect '{a.id}' defined at stray key '{k}'")
    return problems


def load_tables(
    directory: str | FsPath,
    spec: Specification,
    optional_types: frozenset[str] = frozenset(),
    optional_aspects: frozenset[str] = frozenset(),
) -> tuple[KeyDiagram, list[str]]:
    """Read CSV tables without raising; returns the diagram and its problems.

    Optional types may have no table (their key set is empty) and optional
    aspects may have no column and no closure requirement; synthesis uses
    this to load the inputs of a construction whose outputs do not exist yet.
    """
    base = FsPath(directory)
    g = spec.graph
    problems: list[str] = []
    sets: dict[str, frozenset[str]] = {}
    funcs: dict[str, dict[str, str]] = {a.id: {} for a in g.aspects}

    for t in g.types:
        table = base / f"{t.id}.csv"
        out_aspects = [a.id for a in g.aspects_from.get(t.id, ())]
        if not table.exists():
            if t.id not in optional_types:
                problems.append(f"missing table '{table.name}' for type '{t.id}'")
            sets[t.id] = frozenset()
            continue
        with open(table, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            problems.append(f"table '{table.name}' has no header row")
            sets[t.id] = frozenset()
            continue
        header = rows[0]
        expected = ["Id"] + out_aspects
        required = ["Id"] + [a for a in out_aspects if a not in optional_aspects]
        if header != expected and header != required:
            problems.append(
                f"table '{table.name}' has header {header}, expected {expected}"
            )
            sets[t.id] = frozenset()
            continue
        present = header[1:]
        keys: list[str] = []
        for lineno, row in enumerate(rows[1:], start=2):
            if not row or all(cell == "" for cell in row):
                continue
            if len(row) != len(header):
                problems.append(
                    f"table '{table.name}' row {lineno}: expected "
                    f"{len(header)} cells, got {len(row)}"
                )
                continue
            key = row[0]
            if key == "":
                problems.append(f"table '{table.name}' row {lineno}: empty Id cell")
                continue
            if key in keys:
                problems.append(f"table '{table.name}': duplicate Id '{key}'")
                continue
            keys.append(key)
            for col, aid in enumerate(present, start=1):
                cell = row[col]
                if cell == "":
                    problems.append(
                        f"table '{table.name}' row '{key}': empty cell in column '{aid}'"
                    )
                else:
                    funcs[aid][key] = cell
        sets[t.id] = frozenset(keys)

    for a in g.aspects:
        if a.id in optional_aspects:
            continue
        tgt_keys = sets.get(a.tgt, frozenset())
        for k, v in sorted(funcs[a.id].items()):
            if v not in tgt_keys:
                problems.append(
                    f"dangling key: table '{a.src}.csv' row '{k}' column '{a.id}' "
                    f"refers to '{v}', not an Id of '{a.tgt}.csv'"
                )

    return KeyDiagram(sets=sets, funcs=funcs), problems


def load_instances(directory: str | FsPath, spec: Specification) -> KeyDiagram:
    """Load one CSV table per type and validate totality and key closure.

    Raises :class:`InstanceLoadError` carrying every problem found: missing
    table, wrong or missing aspect columns, duplicate ids, empty cells, and
    dangling keys (reported with table, row id, and column).
    """
    d, problems = load_tables(directory, spec)
    if problems:
        raise InstanceLoadError(problems)
    return d


def eval_path(d: KeyDiagram, path: Path, key: str) -> str:
    """Evaluate a path at a key by composing aspect functions left to right.

    The identity path returns the key unchanged. Raises
    :class:`EvaluationError` if ``key`` is not in the source set.
    """
    if key not in d.sets.get(path.source, frozenset()):
        raise EvaluationError(f"key '{key}' is not in the set of '{path.source}'")
    val = key
    for eid in path.edges:
        val = d.funcs[eid][val]
    return val


@dataclass(frozen=True)
class Counterexample:
    fact: Fact
    key: str
    lhs_result: str
    rhs_result: str


@dataclass(frozen=True)
class FactCheck:
    fact: Fact
    counterexamples: tuple[Counterexample, ...]

    @property
    def satisfied(self) -> bool:
        return not self.counterexamples


@dataclass(frozen=True)
class SatisfactionReport:
    checks: tuple[FactCheck, ...]

    @property
    def satisfied(self) -> bool:
        return all(c.satisfied for c in self.checks)

    @property
    def counterexamples(self) -> tuple[Counterexample, ...]:
        return tuple(ce for c in self.checks for ce in c.counterexamples)


def satisfies_fact(d: KeyDiagram, fact: Fact) -> FactCheck:
    """Check one declared equation pointwise over the source key set.

    A fact over an empty source set is vacuously satisfied.
    """
    bad: list[Counterexample] = []
    for key in sorted(d.sets.get(fact.lhs.source, frozenset())):
        lv = eval_path(d, fact.lhs, key)
        rv = eval_path(d, fact.rhs, key)
        if lv != rv:
            bad.append(Counterexample(fact, key, lv, rv))
    return FactCheck(fact, tuple(bad))


def satisfies_spec(d: KeyDiagram, spec: Specification) -> SatisfactionReport:
    return SatisfactionReport(tuple(satisfies_fact(d, f) for f in spec.facts))


def intent(d: KeyDiagram, graph: Graph, bound: int) -> tuple[Fact, ...]:
    """All bounded equations the key diagram satisfies.

    A diagram models a specification exactly when the specification's bounded
    facts are contained in this set.
    """
    out = []
    for fact in enumerate_equations(graph, bound):
        if satisfies_fact(d, fact).satisfied:
            out.append(fact)
    return tuple(out)
