"""Reference γ₂ values from the semidefinite characterization.

gamma2(M) = min t  s.t.  [[A, M], [M^T, B]] is PSD, diag(A) <= t, diag(B) <= t.

Writes crates/core/tests/data/gamma2_oracle.json: every 3x3 Boolean matrix
(keyed by its 9-bit row-major code) plus a few named matrices.
"""

import json
import sys

import cvxpy as cp
import numpy as np


def gamma2(m):
    m = np.asarray(m, dtype=float)
    r, c = m.shape
    x = cp.Variable((r + c, r + c), symmetric=True)
    t = cp.Variable()
    cons = [x >> 0, x[:r, r:] == m, cp.diag(x) <= t]
    cp.Problem(cp.Minimize(t), cons).solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    return float(t.value)


def main(out):
    cubes = {}
    for code in range(512):
        m = [[(code >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)]
        cubes[str(code)] = 0.0 if code == 0 else gamma2(m)
    named = {
        "half": [[1, 1], [1, 0]],
        "upper_triangular_4": [[1 if j >= i else 0 for j in range(4)] for i in range(4)],
        "pmodp_2_3": None,
    }
    # P_p(2, 3): rows (x, x'), cols (y, y'), x in {1, 2}, entry iff x*y + x' = y' mod 3
    rows = [(x, xp) for x in (1, 2) for xp in range(3)]
    named["pmodp_2_3"] = [[1 if (x * y + xp) % 3 == yp else 0 for (y, yp) in rows] for (x, xp) in rows]
    named_vals = {k: {"matrix": v, "gamma2": gamma2(v)} for k, v in named.items()}
    with open(out, "w") as f:
        json.dump({"cubes": cubes, "named": named_vals}, f, indent=1, sort_keys=True)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/data/gamma2_oracle.json")
