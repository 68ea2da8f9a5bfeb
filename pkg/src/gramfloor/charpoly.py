"""Exact characteristic polynomials and the smallest-eigenvalue pipeline.

The route from a matrix to its least eigenvalue is: exact integer power sums
p_k = trace(Z^k), Newton's identities for the elementary symmetric functions
e_k (every division is exact and checked), then Newton's method on the monic
polynomial

    q(x) = x^n - e_1 x^(n-1) + e_2 x^(n-2) - ... + (-1)^n e_n

started at 0.  For a polynomial with all roots real and positive the iterates
increase monotonically to the least root, so the first fixed point is the
right one.  Two independent cross-checks live here as well: the
Faddeev-LeVerrier recursion for the same coefficients, and a dependency-free
cyclic Jacobi eigensolver plus a power-iteration spectral radius for float
comparison.

Near-ties between candidate minima are settled exactly: integer
characteristic polynomials are compared through Sturm-chain root counting
with rational interval endpoints, no floating point involved.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import GramMatrix, IntegerMatrix

_EPS = sys.float_info.epsilon
# |q(x)| at or below this multiple of the coefficient-magnitude Horner sum is
# indistinguishable from zero in float64; treat such iterates as converged.
NOISE_FLOOR = 4.0 * _EPS
# steps more negative than -sqrt(eps) * scale signal a genuine precondition
# violation rather than rounding jitter near a multiple root
_BACKSTEP = math.sqrt(_EPS)


class ConvergenceError(RuntimeError):
    """An iterative method ran out of its iteration budget or left its regime."""


@dataclass(frozen=True)
class PowerSums:
    """p_k = trace(M^k) for k = 1..n, exact."""

    n: int
    p: tuple[int, ...]


@dataclass(frozen=True)
class CharPoly:
    """Elementary symmetric functions e_1..e_n of the eigenvalues.

    The monic characteristic polynomial is
    x^n - e_1 x^(n-1) + e_2 x^(n-2) - ... + (-1)^n e_n.
    """

    n: int
    e: tuple[int, ...]


def _rows_of(m: IntegerMatrix | GramMatrix) -> tuple[tuple[int, ...], ...]:
    return m.entries


def _mul_rows(a, b, n):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(arow, bcol)) for bcol in bt) for arow in a
    )


def _trace_rows(a, n):
    return sum(a[i][i] for i in range(n))


def power_sums(m: IntegerMatrix | GramMatrix) -> PowerSums:
    """Exact traces of the first n powers.

    Symmetric input needs only powers up to ceil(n/2): for a + b = k,
    trace(M^k) is the entrywise product sum of M^a and M^b.
    """
    n = m.n
    rows = _rows_of(m)
    symmetric = all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i))
    p = [0] * (n + 1)
    if symmetric:
        half = (n + 1) // 2
        pows = [None, rows]
        for _ in range(2, half + 1):
            pows.append(_mul_rows(pows[-1], rows, n))
        for k in range(1, n + 1):
            if k <= half:
                p[k] = _trace_rows(pows[k], n)
            else:
                a, b = pows[half], pows[k - half]
                p[k] = sum(
                    x * y for arow, brow in zip(a, b) for x, y in zip(arow, brow)
                )
    else:
        power = rows
        p[1] = _trace_rows(power, n)
        for k in range(2, n + 1):
            power = _mul_rows(power, rows, n)
            p[k] = _trace_rows(power, n)
    return PowerSums(n, tuple(p[1:]))


def newton_identities(ps: PowerSums) -> CharPoly:
    """e_k from power sums: k e_k = sum_{i=1}^{k} (-1)^(i-1) e_{k-i} p_i.

    The division by k is exact for integer input; a nonzero remainder means
    an upstream bug and raises ArithmeticError.
    """
    n = ps.n
    p = (0,) + ps.p
    e = [0] * (n + 1)
    e[0] = 1
    for k in range(1, n + 1):
        acc = 0
        sign = 1
        for i in range(1, k + 1):
            acc += sign * e[k - i] * p[i]
            sign = -sign
        q, r = divmod(acc, k)
        if r:
            raise ArithmeticError(
                f"Newton identity division not exact at k={k}: {acc} % {k} = {r}"
            )
        e[k] = q
    return CharPoly(n, tuple(e[1:]))


def faddeev_leverrier(m: IntegerMatrix | GramMatrix) -> CharPoly:
    """Same coefficients by the Faddeev-LeVerrier recursion, independently.

    M_k = A M_{k-1} + c_{n-k+1} I with c_n = 1 and c_{n-k} = -trace(A M_k)/k;
    then e_j = (-1)^j c_{n-j}.  Divisions are exact and checked.
    """
    n = m.n
    rows = _rows_of(m)
    c = [0] * (n + 1)
    c[n] = 1
    t = None
    for k in range(1, n + 1):
        if t is None:
            mk = tuple(
                tuple(c[n] if i == j else 0 for j in range(n)) for i in range(n)
            )
        else:
            shift = c[n - k + 1]
            mk = tuple(
                tuple(t[i][j] + (shift if i == j else 0) for j in range(n))
                for i in range(n)
            )
        t = _mul_rows(rows, mk, n)
        q, r = divmod(-_trace_rows(t, n), k)
        if r:
            raise ArithmeticError(f"Faddeev-LeVerrier division not exact at k={k}")
        c[n - k] = q
    e = tuple(c[n - j] if j % 2 == 0 else -c[n - j] for j in range(1, n + 1))
    return CharPoly(n, e)


def _float_coeffs(cp: CharPoly) -> list[float]:
    """Monic descending float coefficients [1, -e_1, e_2, ...]."""
    coeffs = [1.0]
    sign = -1
    for ek in cp.e:
        coeffs.append(sign * float(ek))
        sign = -sign
    return coeffs


def _horner3(coeffs: Sequence[float], x: float) -> tuple[float, float, float]:
    """Value, derivative, and coefficient-magnitude sum at x >= 0."""
    q = coeffs[0]
    dq = 0.0
    s = abs(coeffs[0])
    for cj in coeffs[1:]:
        dq = dq * x + q
        q = q * x + cj
        s = s * x + abs(cj)
    return q, dq, s


def _newton_iterates(
    coeffs: Sequence[float], tol: float, max_iter: int
) -> tuple[float, list[float]]:
    """Newton from 0 toward the least root; returns (root, iterate list).

    Stops when the step falls below tol relative to the iterate, or when the
    residual sinks under the float64 noise floor of the evaluation (which is
    where multiple roots land: a root of multiplicity m cannot be resolved
    past about eps^(1/m) in double precision).
    """
    x = 0.0
    iterates = [0.0]
    for _ in range(max_iter):
        q, dq, s = _horner3(coeffs, x)
        if abs(q) <= NOISE_FLOOR * s:
            return x, iterates
        if dq == 0.0:
            raise ConvergenceError("stationary point hit before convergence")
        xn = x - q / dq
        step = xn - x
        if step <= 0.0:
            if step >= -_BACKSTEP * max(x, 1.0):
                return x, iterates
            raise ConvergenceError(
                f"iterates left the monotone regime at x={x!r} (step {step!r})"
            )
        iterates.append(xn)
        if step <= tol * xn:
            return xn, iterates
        x = xn
    raise ConvergenceError(f"no convergence within {max_iter} iterations")


def smallest_root_newton(cp: CharPoly, tol: float = 1e-13, max_iter: int = 500) -> float:
    """Least root of the characteristic polynomial, all roots real positive.

    Monotone Newton from 0: below the least root of such a polynomial the
    Newton step is always positive, so the iteration cannot jump past it.
    Relative accuracy tol for simple roots; multiple roots are returned at
    the float64 resolution limit instead of looping forever.
    """
    value, _ = _newton_iterates(_float_coeffs(cp), tol, max_iter)
    return value


def smallest_eigenvalue(z: GramMatrix | IntegerMatrix, tol: float = 1e-13) -> float:
    """Least eigenvalue via exact power sums, Newton identities, Newton root."""
    return smallest_root_newton(newton_identities(power_sums(z)), tol)


# -- float cross-checks ----------------------------------------------------


def _as_float_array(m) -> np.ndarray:
    if isinstance(m, (IntegerMatrix, GramMatrix)):
        return np.array(m.entries, dtype=np.float64)
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    return a


def spectral_radius_power_iteration(
    m, tol: float = 1e-10, max_iter: int = 200_000
) -> float:
    """Spectral radius by power iteration.

    Symmetric input converges through the Rayleigh quotient with a residual
    stop; the dominant eigenvalue in modulus is then the spectral radius for
    our uses (positive semidefinite or entrywise nonnegative symmetric).
    Non-symmetric input must be entrywise nonnegative; there the iteration
    runs on M + I (same eigenvectors, radius shifted by one, and the unit
    diagonal keeps iterates strictly positive) and brackets the radius with
    the classical min/max iterate ratios.
    """
    a = _as_float_array(m)
    n = a.shape[0]
    if n == 1:
        return abs(float(a[0, 0]))
    symmetric = np.array_equal(a, a.T)
    if symmetric:
        best = 0.0
        # two deterministic starts guard against an unlucky orthogonal one
        starts = (np.ones(n), np.cos(np.arange(1, n + 1)))
        for x0 in starts:
            x = x0 / np.linalg.norm(x0)
            lam = 0.0
            for _ in range(max_iter):
                y = a @ x
                lam = float(x @ y)
                if np.linalg.norm(y - lam * x) <= tol * max(abs(lam), 1e-300):
                    break
                ny = np.linalg.norm(y)
                if ny == 0.0:
                    lam = 0.0
                    break
                x = y / ny
            else:
                raise ConvergenceError(
                    f"power iteration did not settle in {max_iter} steps"
                )
            best = max(best, abs(lam))
        return best
    if a.min() < 0:
        raise ValueError("non-symmetric input must be entrywise nonnegative")
    b = a + np.eye(n)
    x = np.ones(n)
    for _ in range(max_iter):
        y = b @ x
        ratios = y / x
        hi = float(ratios.max())
        lo = float(ratios.min())
        if hi - lo <= tol * hi:
            return (lo + hi) / 2.0 - 1.0
        x = y / np.linalg.norm(y)
    raise ConvergenceError(f"ratio bracket did not close in {max_iter} steps")


def jacobi_eigenvalues(
    m, tol: float = 1e-12, max_sweeps: int = 100
) -> list[float]:
    """All eigenvalues of a symmetric matrix by cyclic-by-row Jacobi sweeps.

    Plain rotations, no library eigensolver behind it; sweeps stop once the
    off-diagonal Frobenius mass is at most tol, scaled by the matrix norm
    when that norm exceeds one.  Ascending order.
    """
    a = _as_float_array(m).copy()
    n = a.shape[0]
    if not np.array_equal(a, a.T):
        raise ValueError("Jacobi sweeps need symmetric input")
    if n == 1:
        return [float(a[0, 0])]
    # summing the squared off-diagonal part directly avoids the cancellation
    # that |A|_F^2 - |diag|^2 suffers once the norms dwarf the residual
    goal = tol * max(1.0, math.sqrt(float(np.sum(a * a))))

    def off_mass() -> float:
        mask = a.copy()
        np.fill_diagonal(mask, 0.0)
        return math.sqrt(float(np.sum(mask * mask)))

    for _ in range(max_sweeps):
        if off_mass() <= goal:
            return sorted(float(v) for v in np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # hypot keeps theta^2 from overflowing for denormal pivots
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp_, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp_ - s * cq
                a[:, q] = s * cp_ + c * cq
                a[p, q] = a[q, p] = 0.0
    off = off_mass()
    if off <= goal:
        return sorted(float(v) for v in np.diag(a))
    raise ConvergenceError(f"off-diagonal mass {off} after {max_sweeps} sweeps")


# -- exact comparison of least roots ----------------------------------------


def _frac_coeffs(cp: CharPoly) -> list[Fraction]:
    coeffs = [Fraction(1)]
    sign = -1
    for ek in cp.e:
        coeffs.append(Fraction(sign * ek))
        sign = -sign
    return coeffs


def _strip(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _eval_frac(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _derivative(p: Sequence[Fraction]) -> list[Fraction]:
    deg = len(p) - 1
    return [c * (deg - i) for i, c in enumerate(p[:-1])]


def _is_zero(p: Sequence[Fraction]) -> bool:
    return len(p) == 1 and p[0] == 0


def _poly_mod(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Remainder of a by b; zero polynomial is represented as [0]."""
    r = _strip(list(a))
    db = len(b) - 1
    while len(r) - 1 >= db and not _is_zero(r):
        f = r[0] / b[0]
        for i in range(db + 1):
            r[i] -= f * b[i]
        r = _strip(r[1:]) if len(r) > 1 else [Fraction(0)]
    return r


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [_strip(p)]
    if len(chain[0]) == 1:
        return chain
    d = _strip(_derivative(chain[0]))
    chain.append(d)
    while len(chain[-1]) > 1:
        rem = _poly_mod(chain[-2], chain[-1])
        if _is_zero(rem):
            break
        chain.append([-c for c in rem])
    return chain


def _variations(chain: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval_frac(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def _roots_in(chain, a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b]; endpoints must not be roots of chain[0]."""
    return _variations(chain, a) - _variations(chain, b)


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd by the Euclidean remainder walk."""
    x, y = _strip(list(a)), _strip(list(b))
    while not _is_zero(y):
        x, y = y, _poly_mod(x, y)
    return [c / x[0] for c in x]


def _isolate_smallest(
    chain, upper: Fraction
) -> tuple[Fraction, Fraction]:
    """Shrink (0, upper] until it holds exactly one distinct root, the least."""
    p = chain[0]
    lo, hi = Fraction(0), upper
    total = _roots_in(chain, lo, hi)
    if total < 1:
        raise ValueError("polynomial has no root in (0, upper]")
    count = total
    while count > 1:
        mid = (lo + hi) / 2
        while _eval_frac(p, mid) == 0:
            mid = (mid + hi) / 2
        left = _roots_in(chain, lo, mid)
        if left >= 1:
            hi = mid
            count = left
        else:
            lo = mid
    return lo, hi


def _refine(chain, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval (lo, hi] around a single distinct root."""
    p = chain[0]
    mid = (lo + hi) / 2
    if _eval_frac(p, mid) == 0:
        return (lo + mid) / 2, mid
    if _roots_in(chain, lo, mid) == 1:
        return lo, mid
    return mid, hi


def compare_smallest_roots(a: CharPoly, b: CharPoly) -> int:
    """Exact order of the least roots: -1, 0, or +1.

    Both polynomials must have all roots real and positive (characteristic
    polynomials of positive definite matrices).  Strict order falls out of
    disjoint isolating intervals; equality is certified by a common root of
    gcd(a, b) inside the overlap of two isolating intervals.
    """
    if a.e == b.e:
        return 0
    pa, pb = _frac_coeffs(a), _frac_coeffs(b)
    if pa[-1] == 0 or pb[-1] == 0:
        raise ValueError("least-root comparison needs nonzero determinant")
    ca, cb = _sturm_chain(pa), _sturm_chain(pb)
    ua = Fraction(1) + max(abs(c) for c in pa)
    ub = Fraction(1) + max(abs(c) for c in pb)
    la, ha = _isolate_smallest(ca, ua)
    lb, hb = _isolate_smallest(cb, ub)
    g = _poly_gcd(pa, pb)
    cg = _sturm_chain(g) if len(g) > 1 else None
    for _ in range(10_000):
        if ha <= lb:
            return -1
        if hb <= la:
            return 1
        if cg is not None:
            lo, hi = max(la, lb), min(ha, hb)
            if lo < hi and _roots_in(cg, lo, hi) >= 1:
                return 0
        la, ha = _refine(ca, la, ha)
        lb, hb = _refine(cb, lb, hb)
    raise RuntimeError("root comparison failed to separate or certify equality")
