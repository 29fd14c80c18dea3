"""Dense Hermitian linear algebra: the substrate for every other module.

Conventions
-----------
* Operators are dense complex numpy matrices.  A trace-class element may be
  flagged ``diagonal``; such elements store only their diagonal and every
  operation on them takes an O(dim) fast path, which is what makes sequence
  runs at dimension 2**16 feasible.
* Multipartite structure is carried as an ordered list of subsystem
  dimensions (``factor_dims``) whose product equals the total dimension.
* Spectra are always reported sorted in decreasing order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from string import ascii_letters

import numpy as np

from .errors import (
    BadFactorizationError,
    DimensionMismatchError,
    DimensionOverflowError,
    NonHermitianError,
    NotPositiveError,
)

HERMITICITY_RTOL = 1e-12
PSD_TOL = 1e-10
STATE_TRACE_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
SUPPORT_CUTOFF_RTOL = 1e-12

# Caps guarding accidental dense blow-ups.  Diagonal elements are vectors,
# so they may grow far beyond what a dense matrix could hold.
DENSE_DIM_CAP = 4096
DIAG_DIM_CAP = 1 << 20


def _as_complex_matrix(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def _check_hermitian(m: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 0.0)
    dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if dev > HERMITICITY_RTOL * scale:
        raise NonHermitianError(f"max |A - A^dag| = {dev:.3e} exceeds {HERMITICITY_RTOL * scale:.3e}")
    return (m + m.conj().T) / 2.0


class HermitianOperator:
    """A validated dense complex Hermitian matrix."""

    __slots__ = ("matrix", "dim")

    def __init__(self, entries):
        self.matrix = _check_hermitian(_as_complex_matrix(entries))
        self.dim = self.matrix.shape[0]
        if self.dim < 1:
            raise DimensionMismatchError("dimension must be >= 1")

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim})"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending with the matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(a) -> SpectralDecomposition:
    """Full spectral decomposition of a Hermitian matrix, sorted descending.

    Backed by LAPACK's Hermitian eigensolver (numpy.linalg.eigh), which is
    deterministic for identical input and meets the reconstruction bound
    ||A - V L V^dag||_1 <= 1e-10 * max(1, ||A||_1) at the dimensions used here.
    """
    if isinstance(a, HermitianOperator):
        m = a.matrix
    elif isinstance(a, TraceClassElement):
        m = a.to_matrix()
    else:
        m = _check_hermitian(_as_complex_matrix(a))
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        from .errors import ConvergenceFailureError

        raise ConvergenceFailureError(str(exc)) from exc
    return SpectralDecomposition(w[::-1].copy(), v[:, ::-1].copy())


class TraceClassElement:
    """Positive trace-class element (a cone member); states carry unit trace.

    The PSD check tolerates eigenvalues down to -PSD_TOL.  Elements flagged
    ``diagonal`` store only the diagonal vector and never touch the
    eigensolver.
    """

    __slots__ = ("_matrix", "_diag", "factor_dims", "dim")

    def __init__(self, entries, factor_dims=None, diagonal=False, validate=True):
        if diagonal:
            d = np.asarray(entries, dtype=float).reshape(-1).copy()
            if d.size > DIAG_DIM_CAP:
                raise DimensionOverflowError(f"diagonal dimension {d.size} exceeds cap {DIAG_DIM_CAP}")
            if validate and d.size and float(d.min()) < -PSD_TOL:
                raise NotPositiveError(f"diagonal entry {d.min():.3e} below -{PSD_TOL}")
            self._diag = d
            self._matrix = None
            self.dim = d.size
        else:
            m = _as_complex_matrix(entries)
            if m.shape[0] > DENSE_DIM_CAP:
                raise DimensionOverflowError(f"dense dimension {m.shape[0]} exceeds cap {DENSE_DIM_CAP}")
            m = _check_hermitian(m)
            if validate and m.size:
                lo = float(np.linalg.eigvalsh(m)[0])
                if lo < -PSD_TOL:
                    raise NotPositiveError(f"smallest eigenvalue {lo:.3e} below -{PSD_TOL}")
            self._matrix = m
            self._diag = None
            self.dim = m.shape[0]
        if factor_dims is not None:
            factor_dims = tuple(int(d) for d in factor_dims)
            if math.prod(factor_dims) != self.dim:
                raise BadFactorizationError(f"factor dims {factor_dims} do not multiply to {self.dim}")
        self.factor_dims = factor_dims

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_diagonal(cls, values, factor_dims=None) -> "TraceClassElement":
        return cls(values, factor_dims=factor_dims, diagonal=True)

    @classmethod
    def pure(cls, amplitudes, factor_dims=None) -> "TraceClassElement":
        """Rank-one element |psi><psi| from an amplitude vector (unnormalized)."""
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(np.outer(v, v.conj()), factor_dims=factor_dims, validate=False)

    # -- basic views ----------------------------------------------------------

    @property
    def diagonal(self) -> bool:
        return self._diag is not None

    @property
    def diag(self) -> np.ndarray:
        if self._diag is not None:
            return self._diag
        return np.real(np.diagonal(self._matrix)).copy()

    def to_matrix(self) -> np.ndarray:
        if self._matrix is not None:
            return self._matrix
        return np.diag(self._diag.astype(complex))

    @property
    def trace(self) -> float:
        if self._diag is not None:
            return float(self._diag.sum())
        return float(np.real(np.trace(self._matrix)))

    @property
    def is_state(self) -> bool:
        return abs(self.trace - 1.0) <= STATE_TRACE_TOL

    def require_state(self) -> "TraceClassElement":
        if not self.is_state:
            raise NotPositiveError(f"trace {self.trace!r} is not 1 within {STATE_TRACE_TOL}")
        return self

    def eigenvalues_descending(self) -> np.ndarray:
        if self._diag is not None:
            return np.sort(self._diag)[::-1].copy()
        return np.sort(np.linalg.eigvalsh(self._matrix))[::-1].copy()

    def spectrum(self) -> SpectralDecomposition:
        if self._diag is not None:
            order = np.argsort(self._diag)[::-1]
            vecs = np.zeros((self.dim, self.dim), dtype=complex)
            vecs[order, np.arange(self.dim)] = 1.0
            return SpectralDecomposition(self._diag[order].copy(), vecs)
        return eig_hermitian(self._matrix)

    def rank(self, cutoff_rtol: float = SUPPORT_CUTOFF_RTOL) -> int:
        w = self.eigenvalues_descending()
        if w.size == 0 or w[0] <= 0:
            return 0
        return int(np.count_nonzero(w > cutoff_rtol * w[0]))

    def with_factors(self, factor_dims) -> "TraceClassElement":
        out = self.copy()
        factor_dims = tuple(int(d) for d in factor_dims)
        if math.prod(factor_dims) != self.dim:
            raise BadFactorizationError(f"factor dims {factor_dims} do not multiply to {self.dim}")
        out.factor_dims = factor_dims
        return out

    def copy(self) -> "TraceClassElement":
        out = object.__new__(TraceClassElement)
        out._matrix = self._matrix
        out._diag = self._diag
        out.factor_dims = self.factor_dims
        out.dim = self.dim
        return out

    def scaled(self, factor: float) -> "TraceClassElement":
        factor = float(factor)
        if factor < 0:
            raise NotPositiveError("cone elements cannot be scaled by a negative factor")
        if self._diag is not None:
            return TraceClassElement(self._diag * factor, self.factor_dims, diagonal=True, validate=False)
        out = TraceClassElement.__new__(TraceClassElement)
        out._matrix = self._matrix * factor
        out._diag = None
        out.factor_dims = self.factor_dims
        out.dim = self.dim
        return out

    def embed(self, dim: int, factor_dims=None) -> "TraceClassElement":
        """Zero-pad into a larger space (the first dim coordinates)."""
        if dim < self.dim:
            raise DimensionMismatchError(f"cannot embed dim {self.dim} into dim {dim}")
        if dim == self.dim:
            out = self.copy()
            if factor_dims is not None:
                return out.with_factors(factor_dims)
            return out
        if self._diag is not None:
            d = np.zeros(dim)
            d[: self.dim] = self._diag
            return TraceClassElement(d, factor_dims, diagonal=True, validate=False)
        m = np.zeros((dim, dim), dtype=complex)
        m[: self.dim, : self.dim] = self._matrix
        out = TraceClassElement.__new__(TraceClassElement)
        out._matrix = m
        out._diag = None
        out.dim = dim
        out.factor_dims = tuple(factor_dims) if factor_dims is not None else None
        return out

    def __repr__(self):
        kind = "diag" if self.diagonal else "dense"
        return f"TraceClassElement(dim={self.dim}, {kind}, trace={self.trace:.6g}, factors={self.factor_dims})"


def density_state(entries, factor_dims=None, diagonal=False) -> TraceClassElement:
    """TraceClassElement validated to have unit trace."""
    return TraceClassElement(entries, factor_dims=factor_dims, diagonal=diagonal).require_state()


def tensor(a: TraceClassElement, b: TraceClassElement) -> TraceClassElement:
    """Kronecker product with concatenated factor dimensions."""
    fa = a.factor_dims if a.factor_dims is not None else (a.dim,)
    fb = b.factor_dims if b.factor_dims is not None else (b.dim,)
    dim = a.dim * b.dim
    if a.diagonal and b.diagonal:
        if dim > DIAG_DIM_CAP:
            raise DimensionOverflowError(f"product dimension {dim} exceeds cap {DIAG_DIM_CAP}")
        return TraceClassElement(np.kron(a.diag, b.diag), fa + fb, diagonal=True, validate=False)
    if dim > DENSE_DIM_CAP:
        raise DimensionOverflowError(f"product dimension {dim} exceeds cap {DENSE_DIM_CAP}")
    out = TraceClassElement.__new__(TraceClassElement)
    out._matrix = np.kron(a.to_matrix(), b.to_matrix())
    out._diag = None
    out.dim = dim
    out.factor_dims = fa + fb
    return out


def _require_factors(w: TraceClassElement) -> tuple[int, ...]:
    if w.factor_dims is None:
        raise BadFactorizationError("operation requires factor_dims metadata")
    return w.factor_dims


def partial_trace(w: TraceClassElement, keep) -> TraceClassElement:
    """Trace out all factors not listed in ``keep`` (indices into factor_dims)."""
    dims = _require_factors(w)
    keep = sorted(set(int(i) for i in keep))
    if not keep or any(i < 0 or i >= len(dims) for i in keep):
        raise BadFactorizationError(f"keep={keep} is not a nonempty subset of factor indices")
    kept_dims = tuple(dims[i] for i in keep)
    if len(keep) == len(dims):
        return w.with_factors(kept_dims)
    if w.diagonal:
        joint = w.diag.reshape(dims)
        drop = tuple(i for i in range(len(dims)) if i not in keep)
        marg = joint.sum(axis=drop)
        return TraceClassElement(marg.reshape(-1), kept_dims, diagonal=True, validate=False)
    k = len(dims)
    t = w.to_matrix().reshape(dims + dims)
    row = list(ascii_letters[:k])
    col = list(ascii_letters[k : 2 * k])
    for i in range(k):
        if i not in keep:
            col[i] = row[i]
    out_idx = "".join(row[i] for i in keep) + "".join(ascii_letters[k + i] for i in keep)
    expr = "".join(row) + "".join(col) + "->" + out_idx
    d_out = math.prod(kept_dims)
    reduced = np.einsum(expr, t).reshape(d_out, d_out)
    out = TraceClassElement.__new__(TraceClassElement)
    out._matrix = (reduced + reduced.conj().T) / 2.0
    out._diag = None
    out.dim = d_out
    out.factor_dims = kept_dims
    return out


def permute_factors(w: TraceClassElement, order) -> TraceClassElement:
    """Reorder subsystems; ``order`` lists old factor indices in their new positions."""
    dims = _require_factors(w)
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(len(dims))):
        raise BadFactorizationError(f"order={order} is not a permutation of the factors")
    new_dims = tuple(dims[i] for i in order)
    if w.diagonal:
        joint = w.diag.reshape(dims).transpose(order)
        return TraceClassElement(joint.reshape(-1), new_dims, diagonal=True, validate=False)
    k = len(dims)
    t = w.to_matrix().reshape(dims + dims)
    perm = list(order) + [k + i for i in order]
    m = t.transpose(perm).reshape(w.dim, w.dim)
    out = TraceClassElement.__new__(TraceClassElement)
    out._matrix = m
    out._diag = None
    out.dim = w.dim
    out.factor_dims = new_dims
    return out


def group_factors(w: TraceClassElement, sizes) -> TraceClassElement:
    """Merge consecutive factors into groups, e.g. (A,B,C) with sizes (2,1) -> (AB, C)."""
    dims = _require_factors(w)
    sizes = tuple(int(s) for s in sizes)
    if sum(sizes) != len(dims) or any(s < 1 for s in sizes):
        raise BadFactorizationError(f"group sizes {sizes} do not partition {len(dims)} factors")
    new_dims = []
    i = 0
    for s in sizes:
        new_dims.append(math.prod(dims[i : i + s]))
        i += s
    return w.with_factors(new_dims)


def trace_distance(a: TraceClassElement, b: TraceClassElement) -> float:
    """Trace norm ||A - B||_1 (sum of absolute eigenvalues of the difference)."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dims {a.dim} and {b.dim} differ")
    if a.diagonal and b.diagonal:
        return float(np.abs(a.diag - b.diag).sum())
    delta = a.to_matrix() - b.to_matrix()
    return float(np.abs(np.linalg.eigvalsh(delta)).sum())


def op_log_on_support(a: TraceClassElement) -> tuple[HermitianOperator, np.ndarray]:
    """log(A) restricted to the support of A, plus the support projector.

    Eigenvalues at or below SUPPORT_CUTOFF_RTOL times the largest eigenvalue
    count as outside the support.  The zero operator yields an empty support.
    """
    dec = a.spectrum()
    w, v = dec.eigenvalues, dec.eigenvectors
    if w.size == 0 or w[0] <= 0:
        z = np.zeros((a.dim, a.dim), dtype=complex)
        return HermitianOperator(z), z.copy()
    cut = SUPPORT_CUTOFF_RTOL * w[0]
    on = w > cut
    vs = v[:, on]
    logm = (vs * np.log(w[on])) @ vs.conj().T
    proj = vs @ vs.conj().T
    return HermitianOperator(logm), (proj + proj.conj().T) / 2.0


def purification_amplitude(rho: TraceClassElement) -> np.ndarray:
    """Amplitude matrix M (dim x rank) of a purification of rho.

    The pure state sum_{a,j} M[a, j] |a>|j> has first marginal M M^dag = rho
    exactly; the purifying space is the support dimension.
    """
    dec = rho.spectrum()
    w = np.clip(dec.eigenvalues, 0.0, None)
    if w.size == 0 or w[0] <= 0:
        raise NotPositiveError("cannot purify the zero operator")
    on = w > SUPPORT_CUTOFF_RTOL * w[0]
    return dec.eigenvectors[:, on] * np.sqrt(w[on])


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking isomorphism: vec(M)[i + j*rows] = M[i, j]."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"vec expects a matrix, got ndim={m.ndim}")
    return m.reshape(-1, order="F").copy()


def unvec(v: np.ndarray, shape) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    rows, cols = int(shape[0]), int(shape[1])
    if rows * cols != v.size:
        raise DimensionMismatchError(f"cannot reshape {v.size} entries to {rows}x{cols}")
    return v.reshape((rows, cols), order="F").copy()
