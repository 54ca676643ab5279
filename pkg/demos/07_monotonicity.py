"""Deciding the sign hypothesis from the frequency vector alone.

Structural certificates, strongest first: a symmetric vector makes every
derivative nonnegative on the positive axis; disjoint pairs with nonnegative
sums certify the first 2r derivatives; a single nonnegative frequency still
gives a positive first derivative.  With every frequency negative the first
derivative must vanish somewhere, and the frequency-sum test fails too.
"""

from expfun import build_evaluator, check_necessary, eval_derivative, monotonicity_certificate

VECTORS = [
    [-1, 0, 1],
    [-1, 1, 0, 1],
    [-1, 3, -2],
    [3.0, 2.0, -1.0, -1.5],
    [0.5, -10.0, -10.0],
    [-1, -2],
]

for entries in VECTORS:
    cert = monotonicity_certificate(entries)
    necessary = check_necessary(entries)
    line = f"{str(entries):<28} -> {cert.kind.value:<12} sum>=0: {necessary}"
    if cert.kind.value == "pair_chain":
        line += f"  rounds={cert.rounds} pairs={cert.pairs}"
    elif cert.kind.value == "some_nonneg":
        line += f"  witness index={cert.nonnegative_index}"
    elif cert.kind.value == "none" and cert.derivative_zero is not None:
        ev = build_evaluator(entries)
        val = eval_derivative(ev, 1, cert.derivative_zero)
        line += f"  first derivative vanishes at {cert.derivative_zero:.10f} (value {val:+.2e})"
    print(line)
