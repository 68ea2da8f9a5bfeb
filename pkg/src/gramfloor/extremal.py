"""Closed forms attached to the alternating-parity pattern.

Let Y0 be the pattern whose strictly-lower (i, j) entry is 1 exactly when
i + j is odd, and Z0 = Y0 Y0^T.  Both inverses have explicit Fibonacci
descriptions (F_1 = F_2 = 1):

  * (Y0^-1)_ij = (-1)^(i-j) F_{i-j} below the diagonal, 1 on it;
  * (Z0^-1)_ii = 1 + sum_{k>i} F_{k-i}^2 and, for j < i,
    (Z0^-1)_ij = (-1)^(i-j) (F_{i-j} + sum_{t>i} F_{t-i} F_{t-j}).

Z0^-1 strictly alternates in sign with parity (-1)^(i-j), its absolute value
bounds |Z^-1| entrywise for every pattern Z of the same size, and its powers
satisfy trace(|Z0^-1|^k) = trace((Z0^-1)^k).  All checks here are exact.
"""

from __future__ import annotations

from .core import (
    GramMatrix,
    IntegerMatrix,
    LowerUnitMatrix,
    gram_factor,
    mat_abs,
    mat_mul,
    mat_trace,
)
from .inverse import BoundWitness, gram_inverse


class FibCache:
    """Grow-on-demand table of Fibonacci numbers, 1-indexed."""

    def __init__(self) -> None:
        self._values = [1, 1]  # F_1, F_2

    def upto(self, m: int) -> tuple[int, ...]:
        while len(self._values) < m:
            self._values.append(self._values[-1] + self._values[-2])
        return tuple(self._values[:m])

    def get(self, k: int) -> int:
        if k < 1:
            raise ValueError(f"Fibonacci index must be >= 1, got {k}")
        return self.upto(k)[k - 1]


_FIB = FibCache()


def fibonacci(k: int) -> int:
    """F_k with F_1 = F_2 = 1."""
    return _FIB.get(k)


def fib_upto(m: int) -> tuple[int, ...]:
    """(F_1, ..., F_m); empty for m <= 0."""
    return _FIB.upto(m) if m > 0 else ()


def y0_inverse_closed(n: int) -> IntegerMatrix:
    """Closed-form inverse of the alternating-parity pattern."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    fib = (0,) + fib_upto(n - 1)
    rows = tuple(
        tuple(
            1 if i == j else (0 if i < j else (-fib[i - j] if (i - j) & 1 else fib[i - j]))
            for j in range(n)
        )
        for i in range(n)
    )
    return IntegerMatrix(n, rows)


def z0_inverse_closed(n: int) -> IntegerMatrix:
    """Closed-form inverse of Z0 = Y0 Y0^T.

    Only the lower half is generated from the formula; the upper half is
    mirrored, and symmetry of the result is asserted rather than assumed.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    fib = (0,) + fib_upto(n)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1 + sum(fib[k - i] ** 2 for k in range(i + 1, n))
        for j in range(i):
            s = fib[i - j] + sum(fib[t - i] * fib[t - j] for t in range(i + 1, n))
            rows[i][j] = -s if (i - j) & 1 else s
            rows[j][i] = rows[i][j]
    out = IntegerMatrix(n, tuple(tuple(r) for r in rows))
    assert all(
        out.entries[i][j] == out.entries[j][i] for i in range(n) for j in range(i)
    )
    return out


def sign_pattern_check(m: IntegerMatrix) -> bool:
    """True when every entry is nonzero with sign (-1)^(i-j)."""
    for i in range(m.n):
        for j in range(m.n):
            v = m.entries[i][j]
            if v == 0:
                return False
            if (v < 0) != bool((i - j) & 1):
                return False
    return True


def domination_check(z: GramMatrix, reference: IntegerMatrix | None = None) -> BoundWitness:
    """Check |Z^-1| <= |Z0^-1| entrywise, exactly.

    Z^-1 is computed through the integer Gram-inverse path (the generating
    pattern is recovered from Z first), never by floating inversion.  Pass
    ``reference`` to reuse a precomputed |Z0^-1| across many checks.
    """
    n = z.n
    ref = reference if reference is not None else mat_abs(z0_inverse_closed(n))
    if ref.n != n:
        raise ValueError(f"reference size {ref.n} does not match n={n}")
    zi = gram_inverse(gram_factor(z))
    for i in range(n):
        for j in range(n):
            if abs(zi.entries[i][j]) > ref.entries[i][j]:
                return BoundWitness(False, (i, j))
    return BoundWitness(True, None)


def trace_equality_check(n: int) -> bool:
    """trace((Z0^-1)^k) = trace(|Z0^-1|^k) for k = 1..n, exactly.

    Equivalent to the spectral radius of Z0^-1 matching that of its
    absolute value, which is what makes the alternating pattern extremal.
    """
    signed = z0_inverse_closed(n)
    unsigned = mat_abs(signed)
    ps, pu = signed, unsigned
    for _ in range(n):
        if mat_trace(ps) != mat_trace(pu):
            return False
        ps = mat_mul(ps, signed)
        pu = mat_mul(pu, unsigned)
    return True
