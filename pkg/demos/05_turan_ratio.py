"""The squared-derivative ratio and its two-sided band.

F(x) = Phi'(x)**2 / (Phi''(x) Phi(x)) is pinched between 1 and n/(n-1) on
the positive axis whenever the sign hypothesis holds there.  Left of the
origin the band can break: the mixed vector (-1, 1, 0, 1) pushes the ratio
above 3/2 near x = -0.6.
"""

import numpy as np

from expfun import build_evaluator, turan_ratio

entries = [-1, 1, 0, 1]
ev = build_evaluator(entries)
n = len(entries) - 1
upper = n / (n - 1)

print(f"== ratio scan for {entries}; band is [1, {upper}) on the positive axis")
print("  positive axis:")
for x in np.linspace(0.25, 4.0, 8):
    print(f"    x={x:5.2f}  F={turan_ratio(ev, float(x)):.6f}")

print("  negative axis (band no longer binds):")
for x in np.linspace(-1.0, -0.2, 5):
    print(f"    x={x:5.2f}  F={turan_ratio(ev, float(x)):.6f}")

probe = turan_ratio(ev, -0.6)
print(f"\n  F(-0.6) = {probe:.6f}  > 3/2: {probe > 1.5}")

# Degenerate extreme: with every frequency zero the value is x**2/2 and the
# ratio sits exactly at the upper bound 2 for n = 2.
ev0 = build_evaluator([0, 0, 0])
print(f"\n== all-zero triple: F(1.0) = {turan_ratio(ev0, 1.0):.12f} (upper bound 2)")
