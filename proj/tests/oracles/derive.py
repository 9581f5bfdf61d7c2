#!/usr/bin/env python3
"""Independent sympy derivation of the values frozen in tests/data/oracle.json.

Works in the left-regular representation of each algebra, read from the JSON
files, and shares no code with the C++ library.  Rerun to regenerate:

    python3 tests/oracles/derive.py > tests/data/oracle.json
"""

import json
import sys
from pathlib import Path

import sympy as sp

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "data"
x, z = sp.symbols("x z")


def load_algebra(name):
    j = json.loads((DATA / "algebras" / name).read_text())
    d = j["dim"]
    sc = [[[sp.Rational(c) for c in cell] for cell in row] for row in j["structure_constants"]]
    one = [sp.Rational(c) for c in j["one"]]
    return d, sc, one


def left(d, sc, coords):
    # L(r)[k][j] = coefficient of b_k in r b_j
    m = sp.zeros(d, d)
    for i, ci in enumerate(coords):
        if ci == 0:
            continue
        for j in range(d):
            for k in range(d):
                m[k, j] += ci * sc[i][j][k]
    return m


def load_kernel(name):
    j = json.loads((DATA / "kernels" / name).read_text())
    d, sc, one = load_algebra(j["algebra"])
    elems = []
    for el in j["basis"]:
        f = [sp.Integer(0)] * d
        for term in el:
            alpha = sp.Rational(term["exponent"])
            for k, c in enumerate(term["poly"]):
                for b in range(d):
                    f[b] += sp.Rational(c[b]) * x**k * sp.exp(alpha * x)
        elems.append(f)
    return d, sc, one, elems


def operator(kernel):
    d, sc, one, fs = load_kernel(kernel)
    l = len(fs)
    def L(f, n):
        return left(d, sc, [sp.diff(c, x, n) for c in f])
    W = sp.zeros(l * d, l * d)
    for i in range(l):
        for j in range(l):
            W[i * d:(i + 1) * d, j * d:(j + 1) * d] = L(fs[j], i)
    rhs = sp.zeros(d, l * d)
    for j in range(l):
        rhs[:, j * d:(j + 1) * d] = -L(fs[j], l)
    A = (rhs * W.inv()).applyfunc(lambda e: sp.cancel(sp.simplify(e)))
    onev = sp.Matrix(one)
    coeffs = []
    for k in range(l):
        coords = A[:, k * d:(k + 1) * d] * onev
        coeffs.append([ratfun(sp.cancel(c)) for c in coords])
    return coeffs, sp.factor(sp.simplify(W.det()))


def poly_list(p, var=x):
    p = sp.Poly(p, var)
    return [str(c) for c in reversed(p.all_coeffs())] if not p.is_zero else []


def ratfun(e):
    n, dn = sp.fraction(sp.cancel(sp.together(e)))
    lc = sp.Poly(dn, x).LC()
    return {"num": poly_list(sp.expand(n / lc)), "den": poly_list(sp.expand(dn / lc))}


def quasi_scalar(e):
    # e = p(x) exp(a x): returns (p coefficients, a)
    e = sp.simplify(e)
    if e == 0:
        return {"poly": [], "exp": "0"}
    a = sp.Integer(0)
    for factor in sp.Mul.make_args(sp.powsimp(e)):
        if factor.func == sp.exp:
            a += sp.simplify(factor.args[0] / x)
    p = sp.expand(sp.simplify(e * sp.exp(-a * x)))
    return {"poly": poly_list(p), "exp": str(a)}


def dual_wronskian():
    # Commutative determinant over Q[eps]/(eps^2), eps kept symbolic.
    eps = sp.Symbol("eps")
    _, _, _, fs = load_kernel("dual_numbers_kernel.json")
    F = [f[0] + eps * f[1] for f in fs]
    det = sp.expand(F[0] * sp.diff(F[1], x) - F[1] * sp.diff(F[0], x))
    det = sp.expand(det.subs(eps**2, 0))
    parts = [det.coeff(eps, 0), det.coeff(eps, 1)]
    out = [quasi_scalar(p) for p in parts]
    return {"one": out[0], "eps": out[1]}


def perp_span(kernel, T):
    # V^perp among p = sum_t z^t p_t of degree < T, p_t in R: <p, f> = sum_t p_t f^(t)(0).
    d, sc, one, fs = load_kernel(kernel)
    rows = []
    for f in fs:
        vals = [[sp.simplify(sp.diff(c, x, t).subs(x, 0)) for c in f] for t in range(T)]
        # coordinate b of <p, f> is linear in the T*d unknowns p_{t,c}
        for b in range(d):
            row = []
            for t in range(T):
                for c in range(d):
                    row.append(sum(sc[c][j][b] * vals[t][j] for j in range(d)))
            rows.append(row)
    M = sp.Matrix(rows)
    null = M.nullspace()
    if not null:
        return []
    B = sp.Matrix.hstack(*null).T.rref()[0]
    return [[str(v) for v in B.row(r)] for r in range(B.rows) if any(B.row(r))]


def main():
    out = {}
    for name, kernel in [("dual-numbers", "dual_numbers_kernel.json"), ("a2", "a2_path_kernel.json"),
                         ("kronecker", "kronecker_kernel.json")]:
        coeffs, det = operator(kernel)
        out[name] = {"operator": coeffs, "flattened_det": quasi_scalar(det)}
    out["dual-numbers"]["commutative_det"] = dual_wronskian()
    out["dual-numbers"]["perp_T6"] = perp_span("dual_numbers_kernel.json", 6)
    out["kronecker"]["perp_T4"] = perp_span("kronecker_kernel.json", 4)
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
