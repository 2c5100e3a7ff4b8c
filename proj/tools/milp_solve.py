#!/usr/bin/env python3
"""File-protocol MILP backend: reads fixed-format MPS, solves with
scipy.optimize.milp (HiGHS), writes a plain-text solution file.

Solution file format:
    status optimal|feasible_at_limit|infeasible|error
    objective <value>
    # gap <relative mip gap>
    <column name> <value>        (one line per column)
"""

import argparse
import math
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp


def parse_mps(path):
    maximize = False
    row_sense = {}
    row_order = []
    rhs = {}
    cols = {}          # name -> {row: coeff}
    col_order = []
    integrality = {}
    bounds = {}        # name -> [lb, ub]
    section = None
    integer_mode = False

    with open(path) as f:
        for raw in f:
            line = raw.rstrip("\n")
            if not line or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0]
                if section == "ENDATA":
                    break
                continue
            toks = line.split()
            if not toks:
                continue
            if section == "OBJSENSE":
                maximize = toks[0] in ("MAXIMIZE", "MAX")
            elif section == "ROWS":
                sense, name = toks
                if sense == "N":
                    continue
                row_sense[name] = sense
                row_order.append(name)
            elif section == "COLUMNS":
                if len(toks) >= 3 and toks[1] == "'MARKER'":
                    integer_mode = toks[2] == "'INTORG'"
                    continue
                name = toks[0]
                if name not in cols:
                    cols[name] = {}
                    col_order.append(name)
                    integrality[name] = 1 if integer_mode else 0
                    bounds[name] = [0.0, math.inf]
                for row, val in zip(toks[1::2], toks[2::2]):
                    cols[name][row] = cols[name].get(row, 0.0) + float(val)
            elif section == "RHS":
                for row, val in zip(toks[1::2], toks[2::2]):
                    rhs[row] = float(val)
            elif section == "RANGES":
                raise SystemExit("RANGES not supported")
            elif section == "BOUNDS":
                btype, _, name = toks[0], toks[1], toks[2]
                val = float(toks[3]) if len(toks) > 3 else 0.0
                if btype in ("UP", "UI"):
                    bounds[name][1] = val
                elif btype in ("LO", "LI"):
                    bounds[name][0] = val
                elif btype == "FX":
                    bounds[name] = [val, val]
                elif btype == "BV":
                    bounds[name] = [0.0, 1.0]
                    integrality[name] = 1
                elif btype == "PL":
                    bounds[name][1] = math.inf
                elif btype == "MI":
                    bounds[name][0] = -math.inf
                else:
                    raise SystemExit(f"unsupported bound type {btype}")

    return {
        "maximize": maximize,
        "rows": row_order,
        "row_sense": row_sense,
        "rhs": rhs,
        "cols": cols,
        "col_order": col_order,
        "integrality": integrality,
        "bounds": bounds,
    }


def solve(mps, gap, time_limit):
    names = mps["col_order"]
    n = len(names)
    col_idx = {name: i for i, name in enumerate(names)}
    row_idx = {name: i for i, name in enumerate(mps["rows"])}
    m = len(mps["rows"])

    c = np.zeros(n)
    data, ri, ci = [], [], []
    for name, entries in mps["cols"].items():
        j = col_idx[name]
        for row, coeff in entries.items():
            if row == "obj":
                c[j] += coeff
            else:
                data.append(coeff)
                ri.append(row_idx[row])
                ci.append(j)
    sign = -1.0 if mps["maximize"] else 1.0

    lo = np.full(m, -math.inf)
    hi = np.full(m, math.inf)
    for name in mps["rows"]:
        i = row_idx[name]
        b = mps["rhs"].get(name, 0.0)
        s = mps["row_sense"][name]
        if s in ("L", "E"):
            hi[i] = b
        if s in ("G", "E"):
            lo[i] = b

    lb = np.array([mps["bounds"][name][0] for name in names])
    ub = np.array([mps["bounds"][name][1] for name in names])
    integ = np.array([mps["integrality"][name] for name in names])

    if n == 0:
        return {"status": "optimal", "objective": 0.0, "x": np.zeros(0),
                "gap": 0.0}

    constraints = []
    if m:
        A = sparse.csr_matrix((data, (ri, ci)), shape=(m, n))
        constraints = [LinearConstraint(A, lo, hi)]

    res = milp(
        c=sign * c,
        constraints=constraints,
        integrality=integ,
        bounds=Bounds(lb, ub),
        options={"mip_rel_gap": gap, "time_limit": time_limit, "presolve": True},
    )

    if res.status == 0:
        status = "optimal"
    elif res.status == 1 and res.x is not None:
        status = "feasible_at_limit"
    elif res.status == 2:
        status = "infeasible"
    else:
        status = "error"

    out = {"status": status, "gap": 0.0, "objective": 0.0, "x": None}
    if res.x is not None:
        out["x"] = res.x
        out["objective"] = float(np.dot(c, res.x))
        mg = getattr(res, "mip_gap", None)
        if mg is not None and math.isfinite(mg):
            out["gap"] = float(mg)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mps", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--gap", type=float, default=0.01)
    ap.add_argument("--time-limit", type=float, default=7200.0)
    ap.add_argument("--seed", type=int, default=0)  # interface placeholder
    args = ap.parse_args()

    mps = parse_mps(args.mps)
    result = solve(mps, args.gap, args.time_limit)

    with open(args.out, "w") as f:
        f.write(f"status {result['status']}\n")
        f.write(f"objective {result['objective']:.17g}\n")
        f.write(f"# gap {result['gap']:.17g}\n")
        if result["x"] is not None:
            for name, val in zip(mps["col_order"], result["x"]):
                f.write(f"{name} {val:.17g}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
