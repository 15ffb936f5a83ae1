#!/usr/bin/env python3
"""Regenerate the instance-data directories under fixtures/.

Tables are plain CSV, one file per type, header `Id` plus one column per
outgoing aspect in sorted aspect order. Everything here is deterministic so
the generated files can be committed and diffed.
"""

from __future__ import annotations

import csv
import sys
from fractions import Fraction
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def write_table(dirname: str, type_id: str, columns: list[str], rows: list[list[str]]):
    out = FIXTURES / dirname
    out.mkdir(parents=True, exist_ok=True)
    with open(out / f"{type_id}.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["Id"] + columns)
        for row in rows:
            w.writerow(row)


def pair_key(*parts: str) -> str:
    return "(" + ",".join(parts) + ")"


def family(dirname: str, steve: bool):
    mother = {"Cain": "Eve", "Abel": "Eve", "Chelsey": "Hillary"}
    parents = {"Cain": pair_key("Eve", "Adam"), "Abel": pair_key("Eve", "Adam"),
               "Chelsey": pair_key("Hillary", "Bill")}
    w = {
        pair_key("Eve", "Adam"): "Eve",
        pair_key("Hillary", "Bill"): "Hillary",
        pair_key("Margaret", "Samuel"): "Margaret",
        pair_key("Emily", "Kris"): "Emily",
    }
    women = ["Emily", "Eve", "Hillary", "Margaret"]
    if steve:
        # One cell changes Eve to Steve; Steve is listed as a key so the
        # tables still load and the breakage surfaces as a fact violation.
        w[pair_key("Eve", "Adam")] = "Steve"
        women.append("Steve")
    write_table(dirname, "person", ["mother", "parents"],
                [[k, mother[k], parents[k]] for k in sorted(mother)])
    write_table(dirname, "pair", ["w"], [[k, w[k]] for k in sorted(w)])
    write_table(dirname, "woman", [], [[k] for k in sorted(women)])


def employee():
    rows = [
        ["101", "David", "Hilbert", "103", "q10"],
        ["102", "Bertrand", "Russell", "102", "x02"],
        ["103", "Alan", "Turing", "103", "q10"],
    ]
    write_table("data_employee", "employee",
                ["first_name", "last_name", "manager", "works_in"], rows)
    write_table("data_employee", "department", ["name", "secretary"],
                [["q10", "Sales", "101"], ["x02", "Production", "102"]])
    strings = sorted({r[1] for r in rows} | {r[2] for r in rows} | {"Sales", "Production"})
    write_table("data_employee", "string", [], [[s] for s in strings])


def factorial(dirname: str, base: int, combine):
    f = {0: base}
    for n in range(1, 7):
        f[n] = combine(n, f[n - 1])
    step = {n: pair_key(str(n), str(f[n - 1])) for n in range(1, 7)}
    pairs = sorted(step.values())
    res = sorted({str(v) for v in f.values()}
                 | {str(combine(n, f[n - 1])) for n in range(1, 7)}
                 | {str(n) for n in range(0, 7)}, key=lambda s: (len(s), s))
    # pos columns: d, i1, s
    write_table(dirname, "pos", ["d", "i1", "s"],
                [[str(n), str(n - 1), str(n), step[n]] for n in range(1, 7)])
    # pair columns: m, p, q
    rows = []
    for key in pairs:
        p_val, q_val = key[1:-1].split(",")
        rows.append([key, str(combine(int(p_val), int(q_val))), p_val, q_val])
    write_table(dirname, "pair", ["m", "p", "q"], rows)
    write_table(dirname, "nat", ["f"], [[str(n), str(f[n])] for n in range(0, 7)])
    write_table(dirname, "res", [], [[v] for v in res])
    write_table(dirname, "zero", ["i0", "omega"], [["0", "0", str(base)]])


def metric():
    points = ["P", "Q", "R"]
    dist = {}
    base = {("P", "Q"): Fraction(3), ("P", "R"): Fraction(5), ("Q", "R"): Fraction(4)}
    for x in points:
        for y in points:
            if x == y:
                dist[(x, y)] = Fraction(0)
            else:
                dist[(x, y)] = base.get((x, y), base.get((y, x)))

    def num(fr: Fraction) -> str:
        return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"

    pairs = [(x, y) for x in points for y in points]
    triples = [(x, y, z) for x in points for y in points for z in points]

    write_table("data_metric", "space", [], [["M"]])
    write_table("data_metric", "unit", ["zero"], [["*", "0"]])
    write_table("data_metric", "point", ["g", "s", "sp"],
                [[x, "*", pair_key(x, x), "M"] for x in points])
    nnreal = sorted({num(v) for v in dist.values()}, key=lambda s: (len(s), s))
    write_table("data_metric", "nnreal", [], [[v] for v in nnreal])

    pair_rows = []
    for (x, y) in pairs:
        pair_rows.append([
            pair_key(x, y),          # Id
            num(dist[(x, y)]),       # delta
            pair_key(y, x),          # phi
            x,                       # y  (first coordinate)
            y,                       # z  (second coordinate)
        ])
    write_table("data_metric", "pair", ["delta", "phi", "y", "z"],
                sorted(pair_rows))

    rt_keys = set()
    triple_rows = []
    for (x0, x1, x2) in triples:
        a = dist[(x0, x1)]
        b = dist[(x1, x2)]
        c = dist[(x0, x2)]
        assert c <= a + b, "triangle inequality must hold in the fixture"
        rt = pair_key(num(a), num(b), num(c))
        rt_keys.add(rt)
        triple_rows.append([
            pair_key(x0, x1, x2),    # Id
            pair_key(x1, x2),        # d0 tail
            pair_key(x0, x2),        # d1 outer
            pair_key(x0, x1),        # d2 head
            rt,                      # f
        ])
    write_table("data_metric", "triple", ["d0", "d1", "d2", "f"],
                sorted(triple_rows))
    rt_rows = []
    for rt in sorted(rt_keys):
        a, b, c = rt[1:-1].split(",")
        rt_rows.append([rt, a, b, c])
    write_table("data_metric", "rtriple", ["a", "b", "c"], rt_rows)


def duck():
    flyers = ["bat", "duck", "eagle"]
    swimmers = ["duck", "salmon", "whale"]
    write_table("data_duck", "flyer", ["as_flyer"],
                [[k, f"inas_flyer:{k}"] for k in flyers])
    write_table("data_duck", "swimmer", ["as_swimmer"],
                [[k, f"inas_swimmer:{k}"] for k in swimmers])
    creatures = sorted([f"inas_flyer:{k}" for k in flyers]
                       + [f"inas_swimmer:{k}" for k in swimmers])
    write_table("data_duck", "creature", [], [[k] for k in creatures])


def main():
    family("data_family", steve=False)
    family("data_family_mutated", steve=True)
    employee()
    factorial("data_factorial", base=1, combine=lambda n, prev: n * prev)
    factorial("data_factorial_triangle", base=0, combine=lambda n, prev: n + prev)
    metric()
    duck()
    print(f"fixture data written under {FIXTURES}")


if __name__ == "__main__":
    sys.exit(main())
