#!/usr/bin/env python3
"""Walk every shipped fixture and print what the engine makes of it.

A quick smoke run over the whole surface: validation of each olog against
its data, a few entailment queries, and fusion plus system consequence for
each system file. Useful when poking at the engine by hand.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from olog import dsl  # noqa: E402
from olog.core import format_fact  # noqa: E402
from olog.entail import consequence, entails  # noqa: E402
from olog.instances import load_instances, satisfies_spec  # noqa: E402
from olog.sketch import check_all  # noqa: E402
from olog.system import fusion, system_consequence  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

DATA = {
    "family.olog": "data_family",
    "employee.olog": "data_employee",
    "factorial.olog": "data_factorial",
    "metric.olog": "data_metric",
    "duck.olog": "data_duck",
}

QUERIES = {
    "family.olog": ("parents;w = mother", 2),
    "employee.olog": ("manager;manager;works_in = works_in", 3),
    "factorial.olog": ("s;m = s;q", 3),
}

SYSTEMS = {"span.osys": 4, "constant.osys": 3, "discrete.osys": 3, "w.osys": 6}


def main() -> int:
    for name, datadir in DATA.items():
        spec, _ = dsl.parse_olog((FIXTURES / name).read_text(), name)
        d = load_instances(FIXTURES / datadir, spec)
        report = satisfies_spec(d, spec)
        checks = check_all(d, spec)
        print(
            f"{name:16s} facts={'ok' if report.satisfied else 'VIOLATED'} "
            f"sketch={'ok' if all(c.passed for c in checks) else 'FAILED'} "
            f"({sum(len(k) for k in d.sets.values())} keys)"
        )

    for name, (query, bound) in QUERIES.items():
        spec, _ = dsl.parse_olog((FIXTURES / name).read_text(), name)
        fact = dsl.parse_fact_text(query, spec.graph)
        verdict = entails(spec, fact, bound)
        size = len(consequence(spec, bound))
        print(f"{name:16s} '{query}' -> {verdict} "
              f"(bound {bound}, consequence size {size})")

    for name, bound in SYSTEMS.items():
        sysm, diags = dsl.parse_system(FIXTURES / name, bound)
        if sysm is None:
            print(f"{name:16s} FAILED to parse: {diags}")
            continue
        fused = fusion(sysm, bound)
        cons = system_consequence(sysm, bound)
        learned = {
            n: len(set(spec.facts) - set(sysm.specs[n].facts))
            for n, spec in cons.items()
        }
        print(
            f"{name:16s} core: {len(fused.graph.types)} types / "
            f"{len(fused.graph.aspects)} aspects, fused facts: {len(fused.facts)}, "
            f"new facts per node: {learned}"
        )
        for fact in fused.facts[:2]:
            print(f"{'':16s}   e.g. {format_fact(fact)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
