"""Sign certificates and inequalities for the fundamental solution.

Once the (n+1)-th derivative of the fundamental solution is certified
nonnegative on an interval, the weighted basis sum dominates every polynomial
that is nonnegative there, the associated Hankel matrices are positive
definite, and the squared-derivative ratio is pinched between 1 and
n/(n-1).  This module provides the certificate (a sampling check with
bisection refinement, not a proof), the integral identity behind the
dominance, and the monotonicity criteria that make the sign hypothesis easy
to establish for many frequency vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from .frequencies import as_frequency_vector, is_symmetric
from .fundamental import (
    FundamentalEvaluator,
    _derivative_values,
    basis,
    build_evaluator,
    eval_derivative,
)

__all__ = [
    "PolynomialCoeffs",
    "SignReport",
    "HankelMatrix",
    "CertificateKind",
    "MonotonicityCertificate",
    "verify_sign",
    "identity_residual",
    "dominance_gap",
    "hankel_matrix",
    "is_positive_definite",
    "polynomial_nonnegative_on",
    "turan_ratio",
    "monotonicity_certificate",
]

#: Width to which sign-change abscissae are narrowed by bisection.
BISECTION_XTOL = 1e-10

#: Default number of grid samples for sign verification.
DEFAULT_GRID = 4096


@dataclass(frozen=True)
class PolynomialCoeffs:
    """Real polynomial a_0 + a_1 x + ... + a_d x**d by ascending coefficients."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("need at least one coefficient")

    @property
    def degree(self) -> int:
        """Largest index with a nonzero coefficient (0 for the zero polynomial)."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != 0.0:
                return i
        return 0

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def as_polynomial(poly) -> PolynomialCoeffs:
    if isinstance(poly, PolynomialCoeffs):
        return poly
    return PolynomialCoeffs(tuple(poly))


@dataclass(frozen=True)
class SignReport:
    """Outcome of a sampled sign check.

    ``status`` is "nonnegative" when every sample of sign * value clears
    -tol, else "violated" with the first offending sample as ``witness``.
    ``boundary`` is the bisection-refined abscissa of the adjacent sign
    change, when one exists on the grid.
    """

    status: str
    witness: Optional[float]
    boundary: Optional[float]
    samples: int
    sign: int = 1


def _bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float,
                      lo_state: bool, xtol: float = BISECTION_XTOL) -> float:
    """Shrink [lo, hi] around the flip of a boolean predicate."""
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if pred(mid) == lo_state:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def verify_sign(ev: FundamentalEvaluator, m: int, lo: float, hi: float,
                grid: int = DEFAULT_GRID, tol: float = 1e-10,
                sign: int = 1) -> SignReport:
    """Sampling certificate that sign * Phi^(m) >= -tol on [lo, hi].

    Samples a uniform grid; on a violation the report carries the first
    offending abscissa and the nearest sign change refined by bisection to
    ``BISECTION_XTOL``.  With ``sign=-1`` the check certifies nonpositivity.
    A "nonnegative" status is a grid certificate, not a proof.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if grid < 64:
        raise ValueError("need at least 64 grid samples")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")

    xs = np.linspace(lo, hi, grid)
    vals = np.array([sign * eval_derivative(ev, m, x) for x in xs])
    bad = np.flatnonzero(vals < -tol)
    if bad.size == 0:
        return SignReport("nonnegative", None, None, grid, sign)

    i = int(bad[0])
    witness = float(xs[i])
    negative = lambda x: sign * eval_derivative(ev, m, x) < 0.0

    boundary = None
    if i > 0 and vals[i - 1] >= 0.0:
        # Entered the negative region: refine the crossing on its left.
        boundary = _bisect_predicate(negative, float(xs[i - 1]), float(xs[i]), False)
    else:
        # Negative from the start: refine where the sign is first recovered.
        after = np.flatnonzero(vals[i:] >= 0.0)
        if after.size:
            j = i + int(after[0])
            boundary = _bisect_predicate(negative, float(xs[j - 1]), float(xs[j]), True)
    return SignReport("violated", witness, boundary, grid, sign)


def identity_residual(ev: FundamentalEvaluator, poly, x: float,
                      quad_tol: float = 1e-11) -> float:
    """Defect of the convolution identity linking basis sums to an integral.

    For R of degree at most n, the weighted basis sum
    sum_k a_k k! Phi^(n-k)(x) equals R(x) plus the convolution
    integral of R against Phi^(n+1) over [0, x]; the returned value is the
    absolute difference of the two sides, the integral being computed by
    adaptive Gauss-Kronrod quadrature.  Negative x integrates with the
    orientation convention int_0^x = -int_x^0.
    """
    poly = as_polynomial(poly)
    n = ev.n
    if poly.degree > n:
        raise ValueError(f"polynomial degree {poly.degree} exceeds order index {n}")
    lhs = 0.0
    for k, a in enumerate(poly.coeffs):
        if a != 0.0:
            lhs += a * basis(ev, k, x)

    if x == 0.0:
        integral = 0.0
    else:
        result = quad(
            lambda t: poly(t) * eval_derivative(ev, n + 1, x - t),
            0.0, x, epsabs=quad_tol, epsrel=1e-12, limit=200, full_output=True,
        )
        integral, abserr = result[0], result[1]
        if len(result) > 3 and abserr > 1e-6 * (1.0 + abs(integral)):
            raise RuntimeError(f"quadrature did not converge: {result[3]}")
    return abs(lhs - poly(x) - integral)


def dominance_gap(ev: FundamentalEvaluator, poly, x: float) -> float:
    """Weighted basis sum minus the polynomial: sum_k a_k b_k(x) - R(x).

    Under the sign hypothesis on [0, B] and R nonnegative there, the gap is
    strictly positive for x in (0, B] and exactly zero at x = 0.
    """
    poly = as_polynomial(poly)
    if poly.degree > ev.n:
        raise ValueError(f"polynomial degree {poly.degree} exceeds order index {ev.n}")
    total = 0.0
    for k, a in enumerate(poly.coeffs):
        if a != 0.0:
            total += a * basis(ev, k, x)
    return total - poly(x)


@dataclass(frozen=True)
class HankelMatrix:
    """Symmetric Hankel-structured matrix of scaled derivative values.

    Entry (r, s) is (r+s)! * Phi^(t - (r+s))(x) with top order
    t = max(n, 2k); for 2k <= n this puts Phi^(n) in the corner, and the
    boundary case 2k = n + 1 starts one derivative higher so that 2-frequency
    vectors admit the classical 2x2 probe [[Phi'', Phi'], [Phi', 2 Phi]].
    """

    entries: np.ndarray
    x: float
    k: int

    @property
    def dim(self) -> int:
        return self.k + 1


def hankel_matrix(ev: FundamentalEvaluator, k: int, x: float) -> HankelMatrix:
    """Build the (k+1) x (k+1) Hankel matrix of scaled derivatives at x."""
    n = ev.n
    if k < 0:
        raise ValueError("half-order k must be nonnegative")
    if 2 * k > n + 1:
        raise ValueError(
            f"half-order k={k} needs derivative orders below zero for n={n}; "
            "require 2k <= n + 1"
        )
    top = max(n, 2 * k)
    vals = _derivative_values(ev, x, top)
    h = np.empty((k + 1, k + 1))
    for r in range(k + 1):
        for s in range(k + 1):
            j = r + s
            h[r, s] = math.factorial(j) * vals[top - j]
    h.setflags(write=False)
    return HankelMatrix(entries=h, x=float(x), k=k)


def is_positive_definite(h, tol: float = 0.0) -> bool:
    """True iff an unpivoted Cholesky factorization has every pivot above tol."""
    a = np.array(getattr(h, "entries", h), dtype=float)
    dim = a.shape[0]
    for j in range(dim):
        pivot = a[j, j] - a[j, :j] @ a[j, :j]
        if not pivot > tol:
            return False
        a[j, j] = math.sqrt(pivot)
        for i in range(j + 1, dim):
            a[i, j] = (a[i, j] - a[i, :j] @ a[j, :j]) / a[j, j]
    return True


def polynomial_nonnegative_on(poly, lo: float, hi: float, tol: float = 1e-12) -> bool:
    """Sampled nonnegativity of a polynomial on [lo, hi].

    Checks 1024 Chebyshev points, both endpoints, and the real critical
    points inside the interval, each against -tol.  Callers who construct
    their polynomial as a square can skip this and assert nonnegativity
    themselves.
    """
    poly = as_polynomial(poly)
    nodes = np.cos(np.pi * (2 * np.arange(1024) + 1) / 2048)
    xs = list(0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)) + [lo, hi]
    deriv = [k * c for k, c in enumerate(poly.coeffs)][1:]
    if any(deriv):
        for root in np.roots(deriv[::-1]):
            if abs(root.imag) < 1e-9 and lo < root.real < hi:
                xs.append(float(root.real))
    return all(poly(float(x)) >= -tol for x in xs)


#: Guard against near-vanishing denominators in the derivative ratio.
RATIO_DENOM_GUARD = 1e-14


def turan_ratio(ev: FundamentalEvaluator, x: float) -> float:
    """Squared first derivative over (second derivative times value).

    For real frequencies with the sign hypothesis certified, the ratio lies
    in [1, n/(n-1)) for x in (0, B); outside that regime it can exceed the
    upper bound.
    """
    vals = _derivative_values(ev, x, 2)
    denom = vals[2] * vals[0]
    if abs(denom) <= RATIO_DENOM_GUARD:
        raise ArithmeticError(
            f"second derivative times value is {denom:.3e} at x={x}; ratio undefined"
        )
    return float(vals[1] * vals[1] / denom)


class CertificateKind(Enum):
    """Strength classes of the derivative-positivity certificate."""

    SYMMETRIC = "symmetric"
    PAIR_CHAIN = "pair_chain"
    SOME_NONNEG = "some_nonneg"
    NONE = "none"


@dataclass(frozen=True)
class MonotonicityCertificate:
    """Certificate about derivative positivity of the fundamental solution on x > 0.

    - SYMMETRIC: the frequency multiset equals its negation; every derivative
      is nonnegative on x >= 0.  ``pairs`` holds a sign-matching of indices.
    - PAIR_CHAIN: ``rounds`` disjoint index pairs with nonnegative sums can be
      removed in sequence; derivatives of order 1..2*rounds are positive.
    - SOME_NONNEG: a single nonnegative frequency (``nonnegative_index``)
      forces a positive first derivative.
    - NONE: every frequency is negative; the first derivative provably
      vanishes somewhere on (0, oo), located at ``derivative_zero`` when the
      search brackets it.
    """

    kind: CertificateKind
    rounds: int = 0
    pairs: tuple = ()
    nonnegative_index: Optional[int] = None
    derivative_zero: Optional[float] = None


def _symmetry_pairs(values: Sequence[float]) -> tuple:
    remaining = list(range(len(values)))
    pairs = []
    while remaining:
        i = remaining.pop(0)
        best_j, best_d = None, None
        for j in remaining:
            d = abs(values[i] + values[j])
            if best_d is None or d < best_d:
                best_d, best_j = d, j
        if values[i] == 0.0 and (best_d is None or best_d > 0.0):
            pairs.append((i, i))
            continue
        if best_j is None:
            break
        remaining.remove(best_j)
        pairs.append((i, best_j))
    return tuple(pairs)


def _greedy_pair_chain(values: Sequence[float]) -> tuple:
    """Disjoint pairs with nonnegative sum: largest joins the smallest admissible."""
    order = sorted(range(len(values)), key=lambda i: values[i], reverse=True)
    pairs = []
    while len(order) >= 2:
        lead = order[0]
        partner = None
        for idx in reversed(order[1:]):
            if values[lead] + values[idx] >= 0.0:
                partner = idx
                break
        if partner is None:
            break
        order.remove(lead)
        order.remove(partner)
        pairs.append((lead, partner))
    return tuple(pairs)


def _locate_derivative_zero(freq) -> Optional[float]:
    # With every frequency negative the solution decays, so its derivative
    # turns negative after an interior maximum; bracket and bisect that flip.
    ev = build_evaluator(freq)
    scale = max(1.0, max(abs(v) for v in freq.entries))
    xs = np.geomspace(1e-3, 1e4, 400) / scale
    prev_x, prev_pos = None, None
    for x in xs:
        val = eval_derivative(ev, 1, x)
        pos = val > 0.0
        if prev_pos and not pos:
            negative = lambda t: eval_derivative(ev, 1, t) < 0.0
            return _bisect_predicate(negative, prev_x, float(x), False)
        prev_x, prev_pos = float(x), pos
    return None


def monotonicity_certificate(freq) -> MonotonicityCertificate:
    """Strongest applicable derivative-positivity certificate for real frequencies."""
    freq = as_frequency_vector(freq)
    if any(v.imag != 0.0 for v in freq.entries):
        raise ValueError("monotonicity certificates require real frequencies")
    values = [v.real for v in freq.entries]

    if is_symmetric(freq, tol=0.0):
        return MonotonicityCertificate(
            kind=CertificateKind.SYMMETRIC, pairs=_symmetry_pairs(values)
        )

    pairs = _greedy_pair_chain(values)
    if pairs:
        return MonotonicityCertificate(
            kind=CertificateKind.PAIR_CHAIN, rounds=len(pairs), pairs=pairs
        )

    nonneg = [i for i, v in enumerate(values) if v >= 0.0]
    if nonneg:
        return MonotonicityCertificate(
            kind=CertificateKind.SOME_NONNEG, nonnegative_index=nonneg[0]
        )

    return MonotonicityCertificate(
        kind=CertificateKind.NONE, derivative_zero=_locate_derivative_zero(freq)
    )
