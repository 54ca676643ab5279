"""Evaluation of the fundamental solution and its derivatives.

The fundamental solution Phi of prod_j (d/dx - l_j) is the unique solution
with an n-fold zero at the origin and n-th derivative equal to one there.  It
equals the divided difference of t -> exp(x*t) over the frequency nodes, so by
Opitz' theorem the m-th derivative at x is the top-right entry of
Z**m @ expm(x*Z), where Z is the upper bidiagonal matrix carrying the
frequencies on the diagonal and ones above it.  This representation needs no
case analysis for repeated (confluent) frequencies.

Two independent evaluation routes, a partial-fraction sum (distinct
frequencies only) and a truncated power series, are provided for
cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .frequencies import FrequencyVector, as_frequency_vector, is_conjugate_closed, _homogeneous_prefix

__all__ = [
    "FundamentalEvaluator",
    "build_evaluator",
    "eval_derivative",
    "eval_derivative_complex",
    "basis",
    "eval_via_partial_fractions",
    "eval_via_taylor",
]

#: Relative bound on the imaginary residue tolerated before projecting to the reals.
REAL_PROJECTION_TOL = 1e-9

#: Largest spectral-norm bound for which the Pade(13) kernel is used unscaled.
_THETA_13 = 5.371920351148152

_PADE_13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)

#: Refuse matrix exponentials whose scaling step would exceed 2**60.
_MAX_SQUARINGS = 60


def _expm(a: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring matrix exponential with a diagonal Pade(13) kernel."""
    norm = float(np.linalg.norm(a, 2))
    squarings = 0
    if norm > _THETA_13:
        squarings = int(math.ceil(math.log2(norm / _THETA_13)))
    if squarings > _MAX_SQUARINGS:
        raise ValueError(
            f"matrix exponential needs 2**{squarings} scaling, beyond the 2**{_MAX_SQUARINGS} guard; "
            "reduce |x| * max|frequency|"
        )
    a = a / (2.0 ** squarings)
    b = _PADE_13
    ident = np.eye(a.shape[0], dtype=a.dtype)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    return r


@dataclass(frozen=True)
class FundamentalEvaluator:
    """Precomputed state for evaluating derivatives of the fundamental solution.

    ``opitz`` is the (n+1) x (n+1) upper bidiagonal matrix with the
    frequencies on the diagonal and ones on the superdiagonal.  ``realify``
    records whether the frequency vector is conjugate-closed, in which case
    values are projected onto the reals after an imaginary-residue check.
    """

    freq: FrequencyVector
    opitz: np.ndarray = field(repr=False)
    realify: bool

    @property
    def n(self) -> int:
        return self.freq.n


def build_evaluator(freq) -> FundamentalEvaluator:
    """Build an evaluator for the given frequency vector."""
    freq = as_frequency_vector(freq)
    count = len(freq)
    z = np.zeros((count, count), dtype=complex)
    for j, lam in enumerate(freq.entries):
        z[j, j] = lam
        if j + 1 < count:
            z[j, j + 1] = 1.0
    z.setflags(write=False)
    return FundamentalEvaluator(freq=freq, opitz=z, realify=is_conjugate_closed(freq))


def _apply_opitz(ev: FundamentalEvaluator, vec: np.ndarray) -> np.ndarray:
    # Bidiagonal multiply: (Z v)[i] = l_i v[i] + v[i+1].
    diag = np.diagonal(ev.opitz)
    out = diag * vec
    out[:-1] += vec[1:]
    return out


def _derivative_sequence(ev: FundamentalEvaluator, x: float, max_order: int) -> np.ndarray:
    """Complex values of derivatives 0..max_order at x, via one matrix exponential.

    The j-th derivative is the first component of Z**j applied to the last
    column of expm(x*Z).
    """
    col = _expm(x * ev.opitz)[:, -1]
    values = np.empty(max_order + 1, dtype=complex)
    values[0] = col[0]
    for j in range(1, max_order + 1):
        col = _apply_opitz(ev, col)
        values[j] = col[0]
    return values


def _project_real(value: complex) -> float:
    if abs(value.imag) > REAL_PROJECTION_TOL * (1.0 + abs(value)):
        raise ArithmeticError(
            f"value {value!r} has a material imaginary part although the frequency "
            "vector is conjugate-closed; evaluation is numerically unreliable here"
        )
    return value.real


def _derivative_values(ev: FundamentalEvaluator, x: float, max_order: int) -> np.ndarray:
    """Real-projected derivative values 0..max_order at x."""
    if not ev.realify:
        raise ValueError(
            "frequency vector is not conjugate-closed; use eval_derivative_complex"
        )
    seq = _derivative_sequence(ev, float(x), max_order)
    return np.array([_project_real(complex(v)) for v in seq])


def eval_derivative_complex(ev: FundamentalEvaluator, m: int, x: float) -> complex:
    """m-th derivative of the fundamental solution at x, complex output."""
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    return complex(_derivative_sequence(ev, float(x), m)[m])


def eval_derivative(ev: FundamentalEvaluator, m: int, x: float) -> float:
    """m-th derivative of the fundamental solution at x.

    Requires a conjugate-closed frequency vector; the imaginary residue is
    checked against ``REAL_PROJECTION_TOL`` before projecting.
    """
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    return float(_derivative_values(ev, x, m)[m])


def basis(ev: FundamentalEvaluator, k: int, x: float) -> float:
    """Basis function b_k(x) = k! * Phi^(n-k)(x) for 0 <= k <= n.

    b_k has a k-fold zero at the origin and reduces to x**k when every
    frequency vanishes.
    """
    if not 0 <= k <= ev.n:
        raise ValueError(f"basis index {k} out of range [0, {ev.n}]")
    return math.factorial(k) * eval_derivative(ev, ev.n - k, x)


#: Partial fractions are rejected below this frequency separation.
MIN_DISTINCT_GAP = 1e-6


def eval_via_partial_fractions(freq, m: int, x: float) -> complex:
    """Oracle route: sum of l_j**m * exp(l_j x) / prod_{k != j} (l_j - l_k).

    Valid only for pairwise distinct frequencies; near-confluent vectors are
    rejected as ill-conditioned.
    """
    freq = as_frequency_vector(freq)
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    ent = freq.entries
    gap = min(
        (abs(ent[i] - ent[j]) for i in range(len(ent)) for j in range(i + 1, len(ent))),
        default=math.inf,
    )
    if gap <= MIN_DISTINCT_GAP:
        raise ValueError(
            f"frequencies too close (min gap {gap:.3e}); partial fractions are "
            "ill-conditioned near confluent nodes"
        )
    total = 0j
    for j, lj in enumerate(ent):
        denom = 1.0 + 0j
        for k, lk in enumerate(ent):
            if k != j:
                denom *= lj - lk
        total += lj**m * np.exp(lj * x) / denom
    return complex(total)


#: Truncated power series must certify a tail below this bound.
TAYLOR_TAIL_TOL = 1e-12


def eval_via_taylor(freq, m: int, x: float, terms: int = 60) -> complex:
    """Oracle route: truncated power series around the origin.

    Sums ``terms`` series terms starting at order max(m, n) and certifies the
    truncation with a geometric tail estimate; raises if the tail bound
    exceeds ``TAYLOR_TAIL_TOL``.
    """
    freq = as_frequency_vector(freq)
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    if terms < 1:
        raise ValueError("need at least one series term")
    n = freq.n
    k0 = max(m, n)
    klast = k0 + terms - 1
    h = _homogeneous_prefix(freq.entries, klast - n)
    total = 0j
    ax = abs(x)
    for k in range(k0, klast + 1):
        total += h[k - n] * (x ** (k - m)) / math.factorial(k - m)

    # Geometric tail estimate: |h_{k-n}| <= C(k, n) * max|l|**(k-n), so the
    # first omitted term is bounded by b and the tail by b / (1 - ratio).
    big = max(abs(v) for v in freq.entries)
    kt = klast + 1
    bound = math.comb(kt, n) * big ** (kt - n) * ax ** (kt - m) / math.factorial(kt - m)
    ratio = (kt + 1) / (kt + 1 - n) * big * ax / (kt + 1 - m)
    if bound != 0.0 and (ratio >= 1.0 or bound / (1.0 - ratio) > TAYLOR_TAIL_TOL):
        raise ValueError(
            f"series tail not certified below {TAYLOR_TAIL_TOL:g} after {terms} terms "
            f"(bound {bound:.3e}, ratio {ratio:.3f}); increase terms or reduce |x|"
        )
    return complex(total)
