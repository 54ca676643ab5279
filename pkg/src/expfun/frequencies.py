"""Frequency vectors: structure predicates and derivative values at the origin.

A frequency vector (l_0, ..., l_n) lists the roots, with multiplicity, of the
characteristic polynomial of the constant-coefficient operator
prod_j (d/dx - l_j).  Everything downstream (the fundamental solution, its
inequalities, the moment transform) is parameterised by this vector.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "FrequencyVector",
    "as_frequency_vector",
    "is_conjugate_closed",
    "is_symmetric",
    "taylor_coefficient",
    "check_necessary",
]

#: Default absolute tolerance for multiset matching of frequencies.
DEFAULT_MATCH_TOL = 1e-9

#: Frequency sums with a larger imaginary part are rejected as non-real.
IMAG_SUM_TOL = 1e-9


@dataclass(frozen=True)
class FrequencyVector:
    """Ordered tuple of complex frequencies, repeated entries allowed.

    ``n`` is the order index: a vector of ``n + 1`` entries describes an
    operator of order ``n + 1`` whose fundamental solution has an ``n``-fold
    zero at the origin.
    """

    entries: tuple

    def __post_init__(self):
        coerced = tuple(complex(v) for v in self.entries)
        if len(coerced) < 1:
            raise ValueError("a frequency vector needs at least one entry")
        for v in coerced:
            if not (cmath.isfinite(v)):
                raise ValueError(f"non-finite frequency {v!r}")
        object.__setattr__(self, "entries", coerced)

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def as_frequency_vector(freq) -> FrequencyVector:
    """Coerce a FrequencyVector or a plain sequence of scalars."""
    if isinstance(freq, FrequencyVector):
        return freq
    if isinstance(freq, Iterable):
        return FrequencyVector(tuple(freq))
    raise TypeError(f"cannot interpret {freq!r} as a frequency vector")


def _multiset_matches(left: Sequence[complex], right: Sequence[complex], tol: float) -> bool:
    # Greedy bipartite matching: each left element grabs the closest unused
    # right element; succeeds iff every distance is within tol.
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    remaining = list(right)
    for a in sorted(left, key=lambda z: (z.real, z.imag)):
        best_i = -1
        best_d = None
        for i, b in enumerate(remaining):
            d = abs(a - b)
            if best_d is None or d < best_d:
                best_d, best_i = d, i
        if best_d is None or best_d > tol:
            return False
        remaining.pop(best_i)
    return True


def is_conjugate_closed(freq, tol: float = DEFAULT_MATCH_TOL) -> bool:
    """True iff the multiset of frequencies equals its complex conjugate.

    This is the condition under which the solution space is closed under
    conjugation and the fundamental solution is real-valued on the real line.
    """
    freq = as_frequency_vector(freq)
    conj = [v.conjugate() for v in freq.entries]
    return _multiset_matches(conj, freq.entries, tol)


def is_symmetric(freq, tol: float = DEFAULT_MATCH_TOL) -> bool:
    """True iff the multiset of frequencies equals its negation."""
    freq = as_frequency_vector(freq)
    negated = [-v for v in freq.entries]
    return _multiset_matches(negated, freq.entries, tol)


def _homogeneous_prefix(entries: Sequence[complex], dmax: int) -> list:
    """Complete homogeneous symmetric polynomials h_0..h_dmax of the entries.

    Grows one variable at a time: h_d(x_1..x_i) = h_d(x_1..x_{i-1})
    + x_i * h_{d-1}(x_1..x_i).  O(len(entries) * dmax) and numerically tame,
    unlike summing monomials over all multi-indices.
    """
    h = [1] + [0] * dmax
    for lam in entries:
        for d in range(1, dmax + 1):
            h[d] = h[d] + lam * h[d - 1]
    return h


def taylor_coefficient(freq, k: int) -> complex:
    """Value of the k-th derivative of the fundamental solution at 0.

    Zero for k < n, one for k = n, and the complete homogeneous symmetric
    polynomial of degree k - n in the frequencies for k > n.
    """
    freq = as_frequency_vector(freq)
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    n = freq.n
    if k < n:
        return 0
    return _homogeneous_prefix(freq.entries, k - n)[k - n]


def check_necessary(freq) -> bool:
    """Necessary condition for the (n+1)-th derivative to stay nonnegative on [0, oo).

    Returns True iff the frequency sum has nonnegative real part.  The sum of
    a conjugate-closed vector is real; a materially non-real sum means a
    non-real fundamental solution and is rejected.
    """
    freq = as_frequency_vector(freq)
    total = sum(freq.entries)
    if abs(total.imag) > IMAG_SUM_TOL:
        raise ValueError(
            f"frequency sum {total!r} is not real; the nonnegativity criterion "
            "applies to real-valued fundamental solutions only"
        )
    return total.real >= 0.0
