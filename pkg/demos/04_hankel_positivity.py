"""Hankel matrices of scaled derivatives and their definiteness.

The matrix with entries (r+s)! Phi^(n-(r+s))(x) is positive definite wherever
the sign hypothesis holds; applying it to a coefficient vector p even beats
the floor (p_0 + p_1 x + ... + p_k x**k)**2.  Without the hypothesis the
matrix can lose definiteness, and the determinant's sign change is a sharp
witness.
"""

import math

import numpy as np

from expfun import build_evaluator, hankel_matrix, is_positive_definite, verify_sign

# The decaying pair: its 2x2 matrix has determinant
# exp(-2x) (4 exp(-2x) - 6 exp(-x) + 1), negative until log(3 + sqrt 5).
ev = build_evaluator([-1, -2])
print("== determinant scan for (-1, -2), k = 1")
for x in np.linspace(0.0, 3.0, 7):
    h = hankel_matrix(ev, 1, float(x))
    det = np.linalg.det(h.entries)
    closed = math.exp(-2 * x) * (4 * math.exp(-2 * x) - 6 * math.exp(-x) + 1)
    pd = is_positive_definite(h)
    print(f"  x={x:4.2f}  det={det:+.9f}  closed={closed:+.9f}  definite={pd}")
print(f"  sign change expected at log(3 + sqrt 5) = {math.log(3 + math.sqrt(5)):.10f}")

# A symmetric vector keeps the hypothesis on the whole positive axis, so
# every admissible matrix size stays definite and the quadratic-form floor
# holds.
entries = [0.8, -0.8, 0.4, -0.4, 0.0]
evs = build_evaluator(entries)
n = len(entries) - 1
assert verify_sign(evs, n + 1, 0.0, 3.0, grid=256).status == "nonnegative"
rng = np.random.default_rng(11)
print(f"\n== symmetric vector {entries}: definiteness and the quadratic floor")
for x in (0.5, 1.5, 3.0):
    for k in range(n // 2 + 1):
        h = hankel_matrix(evs, k, x)
        p = rng.standard_normal(k + 1)
        floor = float(np.polyval(p[::-1], x)) ** 2
        quad_form = float(p @ h.entries @ p)
        print(f"  x={x:3.1f} k={k}  definite={is_positive_definite(h, 0.0)}"
              f"  p'Hp - floor = {quad_form - floor:+.6e}")
