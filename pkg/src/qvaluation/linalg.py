"""Complex vectors, projectors and subspace relations.

All values are immutable: arrays stored on the dataclasses are marked
read-only, and every operation returns fresh objects.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    NotHermitian,
    NotIdempotent,
    ParseError,
    ZeroVector,
)

EPS_TOL = 1e-9
EPS_RANK = 1e-9
EPS_NORM = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


def max_norm(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True, eq=False)
class StateVector:
    dim: int
    amplitudes: np.ndarray

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim}, amplitudes={np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class Projector:
    dim: int
    matrix: np.ndarray
    rank: int
    nullity: int

    def __repr__(self) -> str:
        return f"Projector(dim={self.dim}, rank={self.rank})"

    @property
    def is_zero(self) -> bool:
        return self.rank == 0


class BasisKind(enum.Enum):
    RANGE = "range"
    KERNEL = "kernel"


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    dim: int
    columns: np.ndarray  # n x r
    kind: BasisKind
    indices: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return self.columns.shape[1]


def as_complex_array(values, ndim: int) -> np.ndarray:
    """Accept numpy arrays, nested lists of numbers, or ``[re, im]`` pairs."""
    a = np.asarray(values)
    if a.dtype == object:
        raise ParseError("ragged numeric input")
    if a.ndim == ndim + 1 and a.shape[-1] == 2 and not np.iscomplexobj(a):
        a = a[..., 0] + 1j * a[..., 1]
    if a.ndim != ndim:
        raise ParseError(f"expected a {ndim}-dimensional array, got shape {a.shape}")
    a = a.astype(complex)
    if not np.all(np.isfinite(a)):
        raise ParseError("non-finite entries")
    return a


def make_state(components: Sequence, *, eps_norm: float = EPS_NORM) -> StateVector:
    v = as_complex_array(components, 1)
    if v.shape[0] < 2:
        raise DimensionTooSmall(f"a state needs at least 2 components, got {v.shape[0]}")
    norm = np.linalg.norm(v)
    if norm < eps_norm:
        raise ZeroVector("state vector has zero norm")
    return StateVector(v.shape[0], _frozen(v / norm))


def _check_dims(*objs) -> int:
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimensions differ: {sorted(dims)}")
    return dims.pop()


def projector_from_state(psi: StateVector) -> Projector:
    v = psi.amplitudes
    return Projector(psi.dim, _frozen(np.outer(v, v.conj())), 1, psi.dim - 1)


def numerical_rank(m: np.ndarray, eps_rank: float = EPS_RANK) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > eps_rank * s[0]))


def projector_from_matrix(m, *, tol: float = EPS_TOL, eps_rank: float = EPS_RANK) -> Projector:
    a = as_complex_array(m, 2)
    n, k = a.shape
    if n != k:
        raise DimensionMismatch(f"projector must be square, got {n}x{k}")
    if n < 1:
        raise DimensionTooSmall("empty matrix")
    if max_norm(a - a.conj().T) > tol:
        raise NotHermitian("matrix is not Hermitian")
    if max_norm(a @ a - a) > tol:
        raise NotIdempotent("matrix is not idempotent")
    r = numerical_rank(a, eps_rank)
    return Projector(n, _frozen(a), r, n - r)


def identity(n: int) -> Projector:
    return Projector(n, _frozen(np.eye(n)), n, 0)


def zero(n: int) -> Projector:
    return Projector(n, _frozen(np.zeros((n, n))), 0, n)


def complement(p: Projector) -> Projector:
    return Projector(p.dim, _frozen(np.eye(p.dim) - p.matrix), p.nullity, p.rank)


def greedy_columns(
    a: np.ndarray, limit: int | None = None, eps_rank: float = EPS_RANK
) -> tuple[list[int], np.ndarray]:
    """Pick columns left to right, keeping those independent of the ones already kept.

    A column is kept when the norm of its residual against the span of the
    kept columns exceeds ``eps_rank`` times the largest column norm.
    Returns the kept indices and an orthonormal basis of their span.
    """
    n, m = a.shape
    if m == 0:
        return [], np.zeros((n, 0), dtype=complex)
    scale = max(float(np.max(np.linalg.norm(a, axis=0))), 0.0)
    chosen: list[int] = []
    q: list[np.ndarray] = []
    if scale == 0.0:
        return chosen, np.zeros((n, 0), dtype=complex)
    for j in range(m):
        if limit is not None and len(chosen) >= limit:
            break
        r = a[:, j].astype(complex)
        # two passes of Gram-Schmidt keep the residual accurate
        for _ in range(2):
            for u in q:
                r = r - u * np.vdot(u, r)
        rn = np.linalg.norm(r)
        if rn > eps_rank * scale:
            chosen.append(j)
            q.append(r / rn)
    basis = np.column_stack(q) if q else np.zeros((n, 0), dtype=complex)
    return chosen, basis


def orthonormalize(a: np.ndarray, eps_rank: float = EPS_RANK) -> np.ndarray:
    return greedy_columns(np.asarray(a, dtype=complex), eps_rank=eps_rank)[1]


def range_basis(p: Projector, *, eps_rank: float = EPS_RANK) -> SubspaceBasis:
    idx, _ = greedy_columns(np.asarray(p.matrix), limit=p.rank, eps_rank=eps_rank)
    cols = np.asarray(p.matrix)[:, idx]
    return SubspaceBasis(p.dim, _frozen(cols), BasisKind.RANGE, tuple(idx))


def kernel_basis(p: Projector, *, eps_rank: float = EPS_RANK) -> SubspaceBasis:
    comp = np.eye(p.dim) - p.matrix
    idx, _ = greedy_columns(comp, limit=p.nullity, eps_rank=eps_rank)
    return SubspaceBasis(p.dim, _frozen(comp[:, idx]), BasisKind.KERNEL, tuple(idx))


def nullspace(a: np.ndarray, eps_rank: float = EPS_RANK) -> np.ndarray:
    """Orthonormal basis (as columns) of the nullspace of ``a``.

    Reduces ``a`` to row echelon form with partial pivoting; columns without
    a pivot are free variables, each of which yields one nullspace vector.
    """
    m = np.array(a, dtype=complex, copy=True)
    rows, cols = m.shape
    thresh = eps_rank * max(max_norm(m), 1.0)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[piv, c]) <= thresh:
            m[r:, c] = 0
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] / m[r, c]
        others = [i for i in range(rows) if i != r]
        m[others] -= np.outer(m[others, c], m[r])
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    vecs = []
    for f in free:
        v = np.zeros(cols, dtype=complex)
        v[f] = 1.0
        for row, pc in enumerate(pivots):
            v[pc] = -m[row, f]
        vecs.append(v)
    if not vecs:
        return np.zeros((cols, 0), dtype=complex)
    return orthonormalize(np.column_stack(vecs), eps_rank)


def projector_onto(columns: np.ndarray, dim: int, eps_rank: float = EPS_RANK) -> Projector:
    """Orthogonal projector onto the span of ``columns``."""
    q = orthonormalize(columns, eps_rank) if columns.shape[1] else columns
    if q.shape[1] == 0:
        return zero(dim)
    mat = q @ q.conj().T
    mat = (mat + mat.conj().T) / 2
    return Projector(dim, _frozen(mat), q.shape[1], dim - q.shape[1])


def commutes(q: Projector, p: Projector, *, tol: float = EPS_TOL) -> bool:
    _check_dims(q, p)
    return max_norm(q.matrix @ p.matrix - p.matrix @ q.matrix) <= tol


def orthogonal(q: Projector, p: Projector, *, tol: float = EPS_TOL) -> bool:
    _check_dims(q, p)
    return (
        max_norm(q.matrix @ p.matrix) <= tol and max_norm(p.matrix @ q.matrix) <= tol
    )


def subspace_leq(q: Projector, p: Projector, *, tol: float = EPS_TOL) -> bool:
    """True iff ran(q) is contained in ran(p), tested as ``P Q == Q``."""
    _check_dims(q, p)
    return max_norm(p.matrix @ q.matrix - q.matrix) <= tol


def projectors_equal(a: Projector, b: Projector, *, tol: float = 10 * EPS_TOL) -> bool:
    _check_dims(a, b)
    return max_norm(a.matrix - b.matrix) <= tol


def check_same_dim(*objs) -> int:
    return _check_dims(*objs)


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    return make_state(rng.normal(size=n) + 1j * rng.normal(size=n))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Columns form a random orthonormal basis (Gram-Schmidt on a complex Gaussian matrix)."""
    while True:
        z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        u = orthonormalize(z)
        if u.shape[1] == n:
            return u
