"""Relational DDL from a specification.

Every type becomes a table keyed by ``Id``; every outgoing aspect becomes a
column with a foreign key into its target's table. Path equations cannot be
expressed as standard SQL constraints, so facts and sketch annotations are
rendered as structured trailing comments; the instance loader is the
enforcement point for them. Output is a deterministic SQL-92 subset with no
vendor features.
"""

from __future__ import annotations

from .core import Specification, format_fact
from .dsl import format_decl
from .instances import KeyDiagram

_COL_TYPE = "VARCHAR(255)"


def emit_ddl(spec: Specification) -> str:
    g = spec.graph
    out: list[str] = []
    out.append(f"-- Schema generated from olog '{spec.name}'")
    out.append(
        f"-- {len(g.types)} types, {len(g.aspects)} aspects, {len(spec.facts)} facts"
    )
    out.append("")
    for t in g.types:
        cols = [f"    Id {_COL_TYPE} NOT NULL"]
        fks = []
        for a in g.aspects_from.get(t.id, ()):
            cols.append(f"    {a.id} {_COL_TYPE} NOT NULL")
            fks.append(f"    FOREIGN KEY ({a.id}) REFERENCES {a.tgt} (Id)")
        body = cols + ["    PRIMARY KEY (Id)"] + fks
        out.append(f"CREATE TABLE {t.id} (")
        out.append(",\n".join(body))
        out.append(");")
        out.append("")
    for t in g.types:
        out.append(f'-- TYPE {t.id}: "{t.label}"')
    for a in g.aspects:
        mods = "".join(
            f" [{m}]" for m in ("injective", "surjective") if m in a.modifiers
        )
        out.append(f'-- ASPECT {a.id} ({a.src} -> {a.tgt}): "{a.label}"{mods}')
    for f in spec.facts:
        out.append(f"-- FACT: {format_fact(f)}")
    for d in spec.sketch:
        out.append(f"-- SKETCH: {format_decl(g, d)}")
    return "\n".join(out) + "\n"


def _quote(value: str) -> str:
    return "'" + value.replace("'", "''") + "'"


def emit_inserts(spec: Specification, d: KeyDiagram) -> str:
    """INSERT statements for a loaded key diagram, in canonical order.

    Key closure of the diagram guarantees the emitted rows satisfy every
    FOREIGN KEY constraint of :func:`emit_ddl`.
    """
    g = spec.graph
    out: list[str] = []
    for t in g.types:
        aspect_ids = [a.id for a in g.aspects_from.get(t.id, ())]
        col_list = ", ".join(["Id"] + aspect_ids)
        for key in sorted(d.sets.get(t.id, frozenset())):
            values = [key] + [d.funcs[aid][key] for aid in aspect_ids]
            rendered = ", ".join(_quote(v) for v in values)
            out.append(f"INSERT INTO {t.id} ({col_list}) VALUES ({rendered});")
    return "\n".join(out) + ("\n" if out else "")
