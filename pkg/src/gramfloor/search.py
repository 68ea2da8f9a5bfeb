"""Exhaustive minimization of the least Gram eigenvalue over all patterns.

The index space of size-n patterns is split into contiguous blocks; each
block is scanned by a vectorized kernel that reproduces the scalar pipeline
(exact power sums, Newton identities, monotone Newton root) elementwise, so
the value computed for an index never depends on which block or chunk it
landed in.  Block results carry the block minimum plus every index whose
value sits within TIE_EPS of it; merging keeps the global minimum and the
surviving near-ties, and is associative and commutative, which is what makes
worker count and completion order irrelevant to the result.

Candidates within TIE_EPS of the final minimum are then re-ordered exactly
through their integer characteristic polynomials, so the reported argmin set
is a statement about integers, not floats.

Exactness notes for the kernel: a size-n pattern Y has at most n(n+1)/2
ones, so every eigenvalue of Z = Y Y^T is at most s = n(n+1)/2.  All power
products stay below n * s^n, which for n <= 9 is under 2^53; matrix products
of nonnegative integers that small are exact in float64 no matter how the
sums are ordered, so the BLAS-backed batched products are exact and
reproducible.  Newton-identity accumulation happens in int64, where the same
bound keeps every partial sum under 2^63.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

import numpy as np

from .charpoly import (
    NOISE_FLOOR,
    _BACKSTEP,
    CharPoly,
    ConvergenceError,
    compare_smallest_roots,
    newton_identities,
    power_sums,
    smallest_eigenvalue,
)
from .core import from_index, gram, tri, y0

TIE_EPS = 1e-9
DEFAULT_BLOCK_SIZE = 1 << 20
SEARCH_N_MAX = 9
CHECKPOINT_VERSION = "1"
_CHUNK = 1 << 14
_NEWTON_CAP = 500


class CheckpointError(RuntimeError):
    """A checkpoint file is unreadable or belongs to a different run."""


@dataclass(frozen=True)
class PartialResult:
    """Scan state over some subset of the index space."""

    count: int
    best: float
    candidates: tuple[tuple[int, float], ...]


EMPTY_PARTIAL = PartialResult(0, float("inf"), ())


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one exhaustive scan."""

    n: int
    total_scanned: int
    c_n_estimate: float
    argmin_indices: tuple[int, ...]
    z0_value: float
    conjecture_holds: bool
    unique_argmin: bool
    elapsed: float
    blocks_completed: int

    def to_json(self, indent: int | None = None) -> str:
        payload = {
            "n": self.n,
            "total_scanned": self.total_scanned,
            "c_n_estimate": self.c_n_estimate,
            "argmin_indices": list(self.argmin_indices),
            "z0_value": self.z0_value,
            "conjecture_holds": self.conjecture_holds,
            "unique_argmin": self.unique_argmin,
            "elapsed": self.elapsed,
            "blocks_completed": self.blocks_completed,
        }
        return json.dumps(payload, indent=indent)

    @staticmethod
    def from_json(text: str) -> "SearchReport":
        d = json.loads(text)
        return SearchReport(
            n=d["n"],
            total_scanned=d["total_scanned"],
            c_n_estimate=d["c_n_estimate"],
            argmin_indices=tuple(d["argmin_indices"]),
            z0_value=d["z0_value"],
            conjecture_holds=d["conjecture_holds"],
            unique_argmin=d["unique_argmin"],
            elapsed=d["elapsed"],
            blocks_completed=d["blocks_completed"],
        )


@dataclass
class Checkpoint:
    """Resumable scan state; persisted as a small versioned JSON document."""

    version: str
    n: int
    block_size: int
    completed_block_ids: set[int]
    running_min: float
    running_argmin_indices: tuple[int, ...]
    created: str
    updated: str


def y0_index(n: int) -> int:
    """Enumeration index of the alternating-parity pattern."""
    return y0(n).bits


def partition(n: int, block_size: int) -> list[tuple[int, int]]:
    """Contiguous [start, stop) index ranges covering the whole space."""
    if block_size < 1:
        raise ValueError(f"block size must be positive, got {block_size}")
    total = 1 << tri(n)
    return [(s, min(s + block_size, total)) for s in range(0, total, block_size)]


# -- vectorized kernel -------------------------------------------------------


def _positions(n: int) -> tuple[np.ndarray, np.ndarray]:
    rows = np.repeat(np.arange(1, n), np.arange(1, n))
    cols = np.concatenate([np.arange(i) for i in range(1, n)]) if n > 1 else np.array([], dtype=np.int64)
    return rows, cols


def _values_for(n: int, idx: np.ndarray, newton_tol: float) -> np.ndarray:
    """Least Gram eigenvalues for a batch of packed indices.

    Mirrors the scalar pipeline operation for operation so a value never
    depends on the batch it was computed in.
    """
    bsz = idx.shape[0]
    m = tri(n)
    y = np.zeros((bsz, n, n), dtype=np.float64)
    if m:
        bits = (idx[:, None] >> np.arange(m, dtype=np.int64)) & 1
        rows, cols = _positions(n)
        y[:, rows, cols] = bits
    d = np.arange(n)
    y[:, d, d] = 1.0

    z = y @ y.transpose(0, 2, 1)
    half = (n + 1) // 2
    pows = [None, z]
    for _ in range(2, half + 1):
        pows.append(pows[-1] @ z)
    p = np.empty((bsz, n + 1), dtype=np.int64)
    for k in range(1, n + 1):
        if k <= half:
            tr = np.einsum("bii->b", pows[k])
        else:
            tr = np.einsum("bij,bij->b", pows[half], pows[k - half])
        p[:, k] = tr.astype(np.int64)
    # all power sums are bounded by n * (n(n+1)/2)^n < 2^53 for n <= 9,
    # so the float64 traces above are exact integers
    assert n <= SEARCH_N_MAX

    e = np.zeros((bsz, n + 1), dtype=np.int64)
    e[:, 0] = 1
    for k in range(1, n + 1):
        acc = np.zeros(bsz, dtype=np.int64)
        sign = 1
        for i in range(1, k + 1):
            if sign > 0:
                acc += e[:, k - i] * p[:, i]
            else:
                acc -= e[:, k - i] * p[:, i]
            sign = -sign
        if k > 1:
            if (acc % k).any():
                raise ArithmeticError(f"Newton identity division not exact at k={k}")
            acc //= k
        e[:, k] = acc
    if not (e[:, n] == 1).all():
        raise ArithmeticError("unit determinant violated in scan kernel")

    coeffs = e.astype(np.float64)
    coeffs[:, 1::2] *= -1.0
    return _newton_batch(coeffs, newton_tol)


def _newton_batch(coeffs: np.ndarray, tol: float) -> np.ndarray:
    """Vectorized twin of the scalar Newton walk, identical stop rules."""
    bsz, w = coeffs.shape
    abs_c = np.abs(coeffs)
    x = np.zeros(bsz)
    alive = np.arange(bsz)
    for _ in range(_NEWTON_CAP):
        if alive.size == 0:
            return x
        xa = x[alive]
        ca = coeffs[alive]
        aa = abs_c[alive]
        q = ca[:, 0].copy()
        dq = np.zeros_like(xa)
        s = aa[:, 0].copy()
        for j in range(1, w):
            dq = dq * xa + q
            q = q * xa + ca[:, j]
            s = s * xa + aa[:, j]
        noise_done = np.abs(q) <= NOISE_FLOOR * s
        if (dq == 0.0)[~noise_done].any():
            raise ConvergenceError("stationary point hit before convergence")
        dq_safe = np.where(dq == 0.0, 1.0, dq)
        xn = xa - q / dq_safe
        step = xn - xa
        backstep = (step <= 0.0) & ~noise_done
        if (backstep & (step < -_BACKSTEP * np.maximum(xa, 1.0))).any():
            raise ConvergenceError("iterates left the monotone regime")
        # negative steps inside the jitter band park at the previous iterate
        xn = np.where(noise_done | backstep, xa, xn)
        done = noise_done | backstep | (step <= tol * xn)
        x[alive] = xn
        alive = alive[~done]
    raise ConvergenceError(f"no convergence within {_NEWTON_CAP} iterations")


def scan_block(
    n: int,
    start: int,
    stop: int,
    newton_tol: float = 1e-13,
    prune_threshold: float | None = None,
) -> PartialResult:
    """Scan one contiguous index range; returns its minimum and near-ties.

    The optional prune drops indices whose Gershgorin lower bound already
    exceeds the threshold; their eigenvalues cannot reach the running
    minimum, so results are unchanged, only work is saved.
    """
    best = float("inf")
    cands: list[tuple[int, float]] = []
    count = 0
    for lo in range(start, stop, _CHUNK):
        hi = min(lo + _CHUNK, stop)
        idx = np.arange(lo, hi, dtype=np.int64)
        count += idx.size
        if prune_threshold is not None:
            keep = _gershgorin_floor(n, idx) <= prune_threshold
            idx = idx[keep]
            if idx.size == 0:
                continue
        vals = _values_for(n, idx, newton_tol)
        vmin = float(vals.min())
        if vmin < best:
            best = vmin
            cands = [c for c in cands if c[1] <= best + TIE_EPS]
        sel = np.flatnonzero(vals <= best + TIE_EPS)
        cands.extend((int(idx[i]), float(vals[i])) for i in sel)
    return PartialResult(count, best, tuple(sorted(cands)))


def _gershgorin_floor(n: int, idx: np.ndarray) -> np.ndarray:
    """Entrywise lower bound min_i (2 Z_ii - sum_j Z_ij) on the least eigenvalue."""
    m = tri(n)
    y = np.zeros((idx.shape[0], n, n), dtype=np.float64)
    if m:
        bits = (idx[:, None] >> np.arange(m, dtype=np.int64)) & 1
        rows, cols = _positions(n)
        y[:, rows, cols] = bits
    d = np.arange(n)
    y[:, d, d] = 1.0
    z = y @ y.transpose(0, 2, 1)
    diag = np.einsum("bii->bi", z)
    return (2.0 * diag - z.sum(axis=2)).min(axis=1)


def merge_partials(a: PartialResult, b: PartialResult) -> PartialResult:
    """Associative, commutative merge of two scan states."""
    best = min(a.best, b.best)
    cands = tuple(
        sorted(c for c in a.candidates + b.candidates if c[1] <= best + TIE_EPS)
    )
    return PartialResult(a.count + b.count, best, cands)


# -- checkpointing -----------------------------------------------------------


def checkpoint_save(path: str, ck: Checkpoint) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    payload = {
        "version": ck.version,
        "n": ck.n,
        "block_size": ck.block_size,
        "completed_block_ids": sorted(ck.completed_block_ids),
        "running_min": None if ck.running_min == float("inf") else ck.running_min,
        "running_argmin_indices": list(ck.running_argmin_indices),
        "created": ck.created,
        "updated": ck.updated,
    }
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def checkpoint_load(path: str) -> Checkpoint:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    try:
        ck = Checkpoint(
            version=d["version"],
            n=d["n"],
            block_size=d["block_size"],
            completed_block_ids=set(d["completed_block_ids"]),
            running_min=float("inf") if d["running_min"] is None else float(d["running_min"]),
            running_argmin_indices=tuple(d["running_argmin_indices"]),
            created=d["created"],
            updated=d["updated"],
        )
    except (KeyError, TypeError) as exc:
        raise CheckpointError(f"malformed checkpoint {path}: {exc}") from exc
    if ck.version != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"checkpoint version {ck.version!r} does not match {CHECKPOINT_VERSION!r}"
        )
    return ck


def _validate_checkpoint(ck: Checkpoint, n: int, block_size: int, nblocks: int) -> None:
    if ck.n != n:
        raise CheckpointError(f"checkpoint is for n={ck.n}, run wants n={n}")
    if ck.block_size != block_size:
        raise CheckpointError(
            f"checkpoint block size {ck.block_size} does not match {block_size}"
        )
    bad = [b for b in ck.completed_block_ids if not 0 <= b < nblocks]
    if bad:
        raise CheckpointError(f"checkpoint contains out-of-range block ids {bad[:5]}")
    total = 1 << tri(n)
    bad_idx = [i for i in ck.running_argmin_indices if not 0 <= i < total]
    if bad_idx:
        raise CheckpointError(f"checkpoint contains out-of-range indices {bad_idx[:5]}")


# -- driver ------------------------------------------------------------------


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime())


def _adjudicate(n: int, candidates: Iterable[tuple[int, float]]) -> tuple[int, ...]:
    """Exact argmin subset of the float near-tie candidates."""
    best: list[int] = []
    best_poly: CharPoly | None = None
    for idx, _val in sorted(candidates):
        poly = newton_identities(power_sums(gram(from_index(n, idx))))
        if best_poly is None:
            best, best_poly = [idx], poly
            continue
        order = 0 if poly.e == best_poly.e else compare_smallest_roots(poly, best_poly)
        if order < 0:
            best, best_poly = [idx], poly
        elif order == 0:
            best.append(idx)
    return tuple(best)


def exhaustive_min(
    n: int,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK_SIZE,
    checkpoint_path: Optional[str] = None,
    prune: bool = False,
    newton_tol: float = 1e-13,
    progress: Optional[Callable[[int, int], None]] = None,
) -> SearchReport:
    """Scan every size-n pattern and report the least Gram eigenvalue.

    The result is independent of ``workers`` and ``block_size``; both only
    shape the schedule.  With ``checkpoint_path`` the scan records finished
    blocks after each merge and resumes from the same file, producing the
    identical report whether or not it was interrupted.  ``prune`` enables
    the Gershgorin skip, off by default.
    """
    if not 1 <= n <= SEARCH_N_MAX:
        raise ValueError(f"exhaustive scan supports 1 <= n <= {SEARCH_N_MAX}, got {n}")
    if n == SEARCH_N_MAX and checkpoint_path is None:
        # 2^36 kernels is a multi-day run; refuse to start it unresumably
        raise ValueError("n = 9 requires a checkpoint path")
    if workers < 1:
        raise ValueError(f"worker count must be positive, got {workers}")
    t0 = time.perf_counter()
    blocks = partition(n, block_size)
    nblocks = len(blocks)

    ck: Checkpoint | None = None
    state = EMPTY_PARTIAL
    if checkpoint_path is not None:
        if os.path.exists(checkpoint_path):
            ck = checkpoint_load(checkpoint_path)
            _validate_checkpoint(ck, n, block_size, nblocks)
            restored = EMPTY_PARTIAL
            for idx in ck.running_argmin_indices:
                restored = merge_partials(
                    restored, scan_block(n, idx, idx + 1, newton_tol)
                )
            done_count = sum(
                blocks[b][1] - blocks[b][0] for b in ck.completed_block_ids
            )
            state = PartialResult(done_count, restored.best, restored.candidates)
        else:
            ck = Checkpoint(
                version=CHECKPOINT_VERSION,
                n=n,
                block_size=block_size,
                completed_block_ids=set(),
                running_min=float("inf"),
                running_argmin_indices=(),
                created=_now(),
                updated=_now(),
            )
            checkpoint_save(checkpoint_path, ck)

    completed: set[int] = set(ck.completed_block_ids) if ck else set()
    pending = [b for b in range(nblocks) if b not in completed]

    def note_done(block_id: int, result: PartialResult) -> None:
        nonlocal state
        state = merge_partials(state, result)
        completed.add(block_id)
        if ck is not None:
            ck.completed_block_ids = completed
            ck.running_min = state.best
            ck.running_argmin_indices = tuple(i for i, _ in state.candidates)
            ck.updated = _now()
            checkpoint_save(checkpoint_path, ck)
        if progress is not None:
            progress(len(completed), nblocks)

    threshold = (state.best + TIE_EPS) if (prune and state.count) else None
    if workers == 1:
        for b in pending:
            start, stop = blocks[b]
            thr = (state.best + TIE_EPS) if prune and state.count else None
            note_done(b, scan_block(n, start, stop, newton_tol, thr))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {
                pool.submit(
                    scan_block, n, blocks[b][0], blocks[b][1], newton_tol, threshold
                ): b
                for b in pending
            }
            try:
                for fut in as_completed(futs):
                    note_done(futs[fut], fut.result())
            except BaseException:
                # an aborted run must not stall on queued blocks; the
                # checkpoint already holds every block noted so far
                pool.shutdown(wait=False, cancel_futures=True)
                raise

    total = 1 << tri(n)
    if state.count != total:
        raise RuntimeError(
            f"scan incomplete: visited {state.count} of {total} indices"
        )
    argmin = _adjudicate(n, state.candidates)
    z0v = smallest_eigenvalue(gram(y0(n)), newton_tol)
    y0i = y0_index(n)
    holds = abs(state.best - z0v) <= TIE_EPS and y0i in argmin
    return SearchReport(
        n=n,
        total_scanned=state.count,
        c_n_estimate=state.best,
        argmin_indices=argmin,
        z0_value=z0v,
        conjecture_holds=holds,
        unique_argmin=argmin == (y0i,),
        elapsed=time.perf_counter() - t0,
        blocks_completed=len(completed),
    )


def verify_conjecture(n: int, workers: int = 1, **kwargs) -> SearchReport:
    """Exhaustive check that the alternating pattern attains the minimum."""
    return exhaustive_min(n, workers=workers, **kwargs)


def verify_uniqueness(n: int, workers: int = 1, **kwargs) -> SearchReport:
    """Exhaustive check that the alternating pattern is the only minimizer."""
    return exhaustive_min(n, workers=workers, **kwargs)
