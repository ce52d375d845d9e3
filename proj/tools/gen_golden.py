#!/usr/bin/env python3
"""Generate the golden files.

Tube tables and the octonion table are computed here from closed forms, independently
of the C++ code.  Seeded outputs (jacobi-spectrum, sectional-range) and the theorem2
enumeration are pinned from the CLI at seed 0.
"""

import argparse
import json
import subprocess
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

RADII = {"pi/12": mp.pi / 12, "pi/8": mp.pi / 8, "pi/6": mp.pi / 6}


def f(x):
    return float(x)


def tube_rows(ambient, core, r):
    """(name, kappa, space_sign, multiplicity, value) rows of a tube of radius r."""
    if ambient == "op2":
        cot, tan, s = mp.cot, mp.tan, 1
        neg = -1
    else:
        cot, tan, s = mp.coth, mp.tanh, -1
        neg = 1
    if core == "line":
        return [("lambda2", 1, s, 8, neg * tan(r)), ("alpha1", 2, s, 7, 2 * cot(2 * r))]
    if core == "hp2":
        return [
            ("lambda1", 1, s, 4, cot(r)),
            ("lambda2", 1, s, 4, neg * tan(r)),
            ("alpha1", 2, s, 3, 2 * cot(2 * r)),
            ("alpha2", 2, s, 4, neg * 2 * tan(2 * r)),
        ]
    if core == "horosphere":
        return [("lambda1", 1, -1, 8, mp.mpf(1)), ("alpha1", 2, -1, 7, mp.mpf(2))]
    raise ValueError(core)


COLUMNS = [
    ("i", "op2", "line"),
    ("ii", "op2", "hp2"),
    ("iii", "oh2", "line"),
    ("iv", "oh2", "hp2"),
    ("v", "oh2", "horosphere"),
]


def tube_tables():
    cases = []
    for label, ambient, core in COLUMNS:
        radii = [("none", None)] if core == "horosphere" else list(RADII.items())
        for rname, r in radii:
            rows = tube_rows(ambient, core, r)
            cases.append(
                {
                    "column": label,
                    "ambient": ambient,
                    "core": core,
                    "radius_label": rname,
                    "radius": None if r is None else f(r),
                    "rows": [
                        {"name": n, "kappa": k, "space_sign": s, "multiplicity": m, "value": f(v)}
                        for n, k, s, m, v in rows
                    ],
                    "dimension": sum(row[3] for row in rows),
                    "mean_curvature": f(sum(row[3] * row[4] for row in rows)),
                }
            )
    return {"tolerance": 1e-12, "cases": cases}


def octonion_table():
    lines = [[i, (i % 7) + 1, ((i + 2) % 7) + 1] for i in range(1, 8)]
    table = {}
    for i in range(8):
        table[(0, i)] = (1, i)
        table[(i, 0)] = (1, i)
    for i in range(1, 8):
        table[(i, i)] = (-1, 0)
    for a, b, c in lines:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (1, z)
            table[(y, x)] = (-1, z)
    return {
        "dimension": 8,
        "fano_lines": lines,
        "table": [{"i": i, "j": j, "sign": table[(i, j)][0], "k": table[(i, j)][1]} for i in range(8) for j in range(8)],
    }


def cli_json(cli, *args):
    out = subprocess.run([cli, *args], check=False, capture_output=True, text=True)
    if out.returncode != 0:
        raise SystemExit(f"{' '.join(args)} exited with {out.returncode}: {out.stderr}")
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cli", required=True, help="path to the curvadapt binary")
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "golden"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    files = {
        "tube_tables.json": tube_tables(),
        "octonion_table.json": octonion_table(),
        "jacobi_spectrum_op2_seed0.json": cli_json(args.cli, "jacobi-spectrum", "--space", "op2", "--seed", "0"),
        "jacobi_spectrum_oh2_seed0.json": cli_json(args.cli, "jacobi-spectrum", "--space", "oh2", "--seed", "0"),
        "sectional_range_op2_seed0.json": cli_json(args.cli, "sectional-range", "--samples", "2000", "--seed", "0"),
        "theorem2.json": cli_json(args.cli, "theorem2"),
    }
    for name, data in files.items():
        (out / name).write_text(json.dumps(data, indent=2) + "\n")
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
