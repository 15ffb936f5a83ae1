#!/usr/bin/env python3
"""Regenerate the golden files under fixtures/golden/.

Run after an intentional change to the SQL or text formats, then review the
diff by hand before committing.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from olog import dsl  # noqa: E402
from olog.sqlgen import emit_ddl  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def load(name: str):
    spec, diags = dsl.parse_olog((FIXTURES / name).read_text(encoding="utf-8"), name)
    errors = [d for d in diags if d.severity == dsl.ERROR]
    if spec is None or errors:
        raise SystemExit(f"{name} failed to parse: {errors}")
    return spec


def main() -> int:
    GOLDEN.mkdir(exist_ok=True)
    for name in ("employee", "factorial"):
        spec = load(f"{name}.olog")
        (GOLDEN / f"{name}.sql").write_text(emit_ddl(spec), encoding="utf-8")
        print(f"wrote golden/{name}.sql")
    factorial = load("factorial.olog")
    (GOLDEN / "factorial_print.olog").write_text(
        dsl.print_olog(factorial), encoding="utf-8"
    )
    print("wrote golden/factorial_print.olog")
    return 0


if __name__ == "__main__":
    sys.exit(main())
