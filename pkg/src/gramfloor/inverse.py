"""Exact inverses of unit lower-triangular (0,1)-matrices.

Write Y = I + N with N strictly lower.  The inverse A = Y^-1 is again unit
lower-triangular with integer entries and is computed two independent ways:

  * a column recurrence, a_kl = -sum_{i=l}^{k-1} n_ki a_il for k > l, which
    walks each column top to bottom touching only rows where Y has a one;
  * the terminating series I - N + N^2 - ... +- N^(n-1), which exists because
    N is nilpotent of index at most n.

Off-diagonal inverse entries obey |a_ij| <= F_{i-j} (Fibonacci numbers with
F_1 = F_2 = 1), and the bound is checkable entrywise.  The Gram inverse
(Y Y^T)^-1 = A^T A is assembled from A without ever inverting a float.

The ``*_batch`` helpers vectorize the same recurrences over many packed
indices at once in int64; they exist for bulk scans and are equivalence
tested against the scalar paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    GramMatrix,
    IntegerMatrix,
    LowerUnitMatrix,
    mat_identity,
    mat_mul,
    mat_transpose,
    tri,
)


@dataclass(frozen=True)
class BoundWitness:
    """Outcome of an entrywise bound check; falsy when violated."""

    holds: bool
    violation: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def invert_unit_lower(y: LowerUnitMatrix) -> IntegerMatrix:
    """Exact inverse via the column recurrence.

    a_kk = 1 and, for k > l, a_kl = -sum over i in [l, k) with y_ki = 1
    of a_il.  Everything stays in Python ints.
    """
    n = y.n
    a: list[list[int]] = [[0] * n for _ in range(n)]
    for k in range(n):
        a[k][k] = 1
        row = y.row_lower_bits(k)
        ones = [i for i in range(k) if (row >> i) & 1]
        for l in range(k):
            a[k][l] = -sum(a[i][l] for i in ones if i >= l)
    return IntegerMatrix(n, tuple(tuple(r) for r in a))


def invert_via_nilpotent(y: LowerUnitMatrix) -> IntegerMatrix:
    """Independent oracle: alternating sum of powers of the strict lower part."""
    n = y.n
    nil = IntegerMatrix(
        n,
        tuple(
            tuple(y.bit(i, j) if i > j else 0 for j in range(n))
            for i in range(n)
        ),
    )
    acc = mat_identity(n)
    term = mat_identity(n)
    sign = 1
    for _ in range(1, n):
        term = mat_mul(term, nil)
        sign = -sign
        acc = IntegerMatrix(
            n,
            tuple(
                tuple(av + sign * tv for av, tv in zip(arow, trow))
                for arow, trow in zip(acc.entries, term.entries)
            ),
        )
    return acc


def nilpotent_band_check(y: LowerUnitMatrix, k: int) -> bool:
    """True when N^k vanishes on the band i - j < k (N the strict lower part).

    Holds for every unit lower pattern and every k >= 0; exposed as a
    predicate so the structure is testable rather than assumed.
    """
    if k < 0:
        raise ValueError(f"power must be nonnegative, got {k}")
    n = y.n
    nil = IntegerMatrix(
        n,
        tuple(
            tuple(y.bit(i, j) if i > j else 0 for j in range(n))
            for i in range(n)
        ),
    )
    power = mat_identity(n)
    for _ in range(k):
        power = mat_mul(power, nil)
    return all(
        power.entries[i][j] == 0
        for i in range(n)
        for j in range(n)
        if i - j < k
    )


def fibonacci_bound_holds(a: IntegerMatrix) -> BoundWitness:
    """Check |a_ij| <= F_{i-j} below the diagonal.

    Returns the first violating position in row-major order, if any.
    """
    from .extremal import fib_upto  # deferred: extremal imports this module

    n = a.n
    fib = (0,) + fib_upto(n - 1) if n > 1 else (0,)
    for i in range(n):
        for j in range(i):
            if abs(a.entries[i][j]) > fib[i - j]:
                return BoundWitness(False, (i, j))
    return BoundWitness(True, None)


def gram_inverse(y: LowerUnitMatrix) -> IntegerMatrix:
    """Exact (Y Y^T)^-1 = (Y^-1)^T (Y^-1)."""
    a = invert_unit_lower(y)
    return mat_mul(mat_transpose(a), a)


# -- vectorized bulk paths ------------------------------------------------

# The recurrence keeps every intermediate sum below F_{n+2} in magnitude,
# so int64 is safe while F_{n+2} < 2^63, i.e. n <= 90.  The Gram product
# A^T A is tighter: its (0,0) entry reaches 1 + F_{n-1} F_n, attained at
# the alternating pattern, which clears 2^63 at n = 48.
_BATCH_N_MAX = 90
_GRAM_BATCH_N_MAX = 47


def _unpack_strict_lower(n: int, patterns: np.ndarray) -> np.ndarray:
    """(B, n, n) int64 strict lower parts of the given patterns.

    Accepts packed indices as a 1-D int64 array (needs tri(n) <= 63) or the
    already-unpacked bits as a (B, tri(n)) array in position order.
    """
    m = tri(n)
    patterns = np.asarray(patterns)
    if patterns.ndim == 1:
        if m > 63:
            raise ValueError(
                f"packed indices only cover tri(n) <= 63 bit positions, "
                f"pass a (B, {m}) bit array for n = {n}"
            )
        bits = (patterns.astype(np.int64)[:, None] >> np.arange(m, dtype=np.int64)) & 1
    elif patterns.ndim == 2:
        if patterns.shape[1] != m:
            raise ValueError(f"expected {m} bit columns for n = {n}, got {patterns.shape[1]}")
        bits = patterns.astype(np.int64)
        if bits.size and (bits.min() < 0 or bits.max() > 1):
            raise ValueError("bit arrays must be 0/1 valued")
    else:
        raise ValueError(f"patterns must be 1-D packed or 2-D bits, got ndim={patterns.ndim}")
    out = np.zeros((patterns.shape[0], n, n), dtype=np.int64)
    if m:
        rows = np.repeat(np.arange(1, n), np.arange(1, n))
        cols = np.concatenate([np.arange(i) for i in range(1, n)])
        out[:, rows, cols] = bits
    return out


def invert_batch(n: int, patterns: np.ndarray) -> np.ndarray:
    """Column-recurrence inverses for a whole batch of patterns.

    Patterns are packed indices (1-D) or unpacked bit rows (2-D); see
    _unpack_strict_lower.  Returns (B, n, n) int64 matrices equal to
    invert_unit_lower on each pattern.  Bounded to n <= 90 so no entry can
    overflow int64.
    """
    if n > _BATCH_N_MAX:
        raise ValueError(f"batch inversion supports n <= {_BATCH_N_MAX}, got {n}")
    nil = _unpack_strict_lower(n, patterns)
    a = np.zeros_like(nil)
    idx = np.arange(n)
    a[:, idx, idx] = 1
    for k in range(1, n):
        # row k of the inverse from rows above it
        a[:, k, :k] = -np.einsum("bi,bij->bj", nil[:, k, :k], a[:, :k, :k])
    return a


def gram_inverse_batch(n: int, patterns: np.ndarray) -> np.ndarray:
    """(B, n, n) int64 Gram inverses A^T A for a batch of patterns."""
    if n > _GRAM_BATCH_N_MAX:
        raise ValueError(
            f"batch Gram inversion supports n <= {_GRAM_BATCH_N_MAX}, got {n}; "
            f"entries can exceed int64 beyond that"
        )
    a = invert_batch(n, patterns)
    return np.einsum("bki,bkj->bij", a, a)
