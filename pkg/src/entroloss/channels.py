"""Quantum operations in Kraus form and the channel information quantities.

A quantum operation is a completely positive trace-non-increasing map given
by Kraus matrices (dim_out x dim_in).  Stinespring dilations, complementary
operations and the Choi matrix are derived from the Kraus set; complementary
outputs are only ever compared through basis-independent functionals since
the complementary is fixed only up to an isometry on the environment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidPOVMError,
    NotAChannelError,
    TraceIncreasingError,
)
from .info import mutual_information, relative_entropy, von_neumann_entropy
from .operators import (
    SUPPORT_CUTOFF_RTOL,
    TraceClassElement,
    purification_amplitude,
    tensor,
    trace_distance,
)

KRAUS_TOL = 1e-10
IDENTITY_TOL = 1e-8
PURIFICATION_TOL = 1e-8
CI_RANGE_TOL = 1e-9


class QuantumOperation:
    """Kraus-represented CP trace-non-increasing map."""

    __slots__ = ("kraus", "dim_in", "dim_out", "trace_preserving", "meta")

    def __init__(self, kraus, meta=None):
        mats = [np.asarray(k, dtype=complex) for k in kraus]
        if not mats:
            raise DimensionMismatchError("at least one Kraus operator is required")
        shape = mats[0].shape
        if any(m.shape != shape for m in mats):
            raise DimensionMismatchError("all Kraus operators must share one shape")
        self.kraus = mats
        self.dim_out, self.dim_in = shape
        stacked = np.concatenate(mats, axis=0)  # (n_kraus * dim_out, dim_in)
        rows = stacked.shape[0]
        if rows < self.dim_in:
            # rank-deficient sum K^dag K can never be the identity; its nonzero
            # spectrum equals that of the small row Gram matrix
            top = float(np.linalg.eigvalsh(stacked @ stacked.conj().T)[-1])
            self.trace_preserving = False
        else:
            gram = stacked.conj().T @ stacked
            dev = float(np.max(np.abs(gram - np.eye(self.dim_in))))
            self.trace_preserving = dev <= KRAUS_TOL
            top = 1.0 if self.trace_preserving else float(np.linalg.eigvalsh(gram)[-1])
        if top > 1.0 + KRAUS_TOL:
            raise TraceIncreasingError(f"largest eigenvalue of sum K^dag K is {top!r}")
        self.meta = dict(meta) if meta else {}

    def require_channel(self) -> "QuantumOperation":
        if not self.trace_preserving:
            raise NotAChannelError("operation is not trace preserving")
        return self

    def __call__(self, rho: TraceClassElement) -> TraceClassElement:
        return apply(self, rho)

    def tensor(self, other: "QuantumOperation") -> "QuantumOperation":
        kraus = [np.kron(a, b) for a in self.kraus for b in other.kraus]
        return QuantumOperation(kraus)

    def __repr__(self):
        return (
            f"QuantumOperation({self.dim_in}->{self.dim_out}, "
            f"{len(self.kraus)} Kraus, tp={self.trace_preserving})"
        )


def apply(op: QuantumOperation, rho: TraceClassElement) -> TraceClassElement:
    """sum_k K rho K^dag; diagonal inputs avoid materializing the matrix."""
    if rho.dim != op.dim_in:
        raise DimensionMismatchError(f"state dim {rho.dim} does not match input dim {op.dim_in}")
    if rho.diagonal:
        d = rho.diag
        out = np.zeros((op.dim_out, op.dim_out), dtype=complex)
        for k in op.kraus:
            out += (k * d[None, :]) @ k.conj().T
    else:
        m = rho.to_matrix()
        out = np.zeros((op.dim_out, op.dim_out), dtype=complex)
        for k in op.kraus:
            out += k @ m @ k.conj().T
    return TraceClassElement(out, validate=False)


@dataclass(frozen=True)
class StinespringDilation:
    isometry: np.ndarray
    out_dim: int
    env_dim: int


def stinespring(op: QuantumOperation) -> StinespringDilation:
    """V = sum_k K_k (x) |k>_E with environment dimension = number of Kraus terms."""
    env = len(op.kraus)
    v = np.zeros((op.dim_out * env, op.dim_in), dtype=complex)
    for idx, k in enumerate(op.kraus):
        v[idx::env, :] = k
    return StinespringDilation(isometry=v, out_dim=op.dim_out, env_dim=env)


def complementary(op: QuantumOperation) -> QuantumOperation:
    """Environment-side marginal of the dilation, Tr_B V rho V^dag.

    Kraus operators of the complementary are the output-row slices of the
    original set: B_b[k, m] = K_k[b, m].
    """
    env = len(op.kraus)
    stacked = np.stack(op.kraus)  # (env, out, in)
    kraus = [stacked[:, b, :].copy() for b in range(op.dim_out)]
    return QuantumOperation(kraus, meta={"complementary_of": op.meta.get("kind")})


def choi_matrix(op: QuantumOperation) -> np.ndarray:
    """Choi matrix on (output x input) ordering, J = sum_k |K_k>><<K_k|."""
    d = op.dim_out * op.dim_in
    j = np.zeros((d, d), dtype=complex)
    for k in op.kraus:
        v = k.reshape(-1)
        j += np.outer(v, v.conj())
    return j


def choi_rank(op: QuantumOperation) -> int:
    w = np.linalg.eigvalsh(choi_matrix(op))[::-1]
    if w[0] <= 0:
        return 0
    return int(np.count_nonzero(w > SUPPORT_CUTOFF_RTOL * w[0]))


def output_entropy(op: QuantumOperation, rho: TraceClassElement) -> float:
    """Entropy of the output, with the cone extension handling trace loss."""
    return von_neumann_entropy(apply(op, rho))


def entropy_exchange(op: QuantumOperation, rho: TraceClassElement) -> float:
    """Output entropy of a complementary operation (environment entropy)."""
    return von_neumann_entropy(apply(complementary(op), rho))


def stinespring_entropy_residual(op: QuantumOperation, rho: TraceClassElement) -> float:
    """|H_Phi(rho) + H_comp(rho) - H(rho) - I(B:E)| on the dilated pure output."""
    op.require_channel()
    rho.require_state()
    v = stinespring(op)
    dilated = v.isometry @ rho.to_matrix() @ v.isometry.conj().T
    joint = TraceClassElement(dilated, (v.out_dim, v.env_dim), validate=False)
    i_be = float(mutual_information(joint))
    lhs = output_entropy(op, rho) + entropy_exchange(op, rho)
    rhs = von_neumann_entropy(rho) + i_be
    return abs(lhs - rhs)


def channel_mutual_information(op: QuantumOperation, rho: TraceClassElement) -> float:
    """I(Phi, rho) = H(Phi (x) Id(psi) || Phi(rho) (x) rho_R) over a purification psi.

    The value is recomputed with a second, rotated purification and must
    agree within 1e-8; disagreement signals a numerical defect.
    """
    op.require_channel()
    rho.require_state()
    m = purification_amplitude(rho)

    def value_for(amp: np.ndarray) -> float:
        r = amp.shape[1]
        tau = np.zeros((op.dim_out * r, op.dim_out * r), dtype=complex)
        for k in op.kraus:
            w = (k @ amp).reshape(-1)
            tau += np.outer(w, w.conj())
        tau_el = TraceClassElement(tau, (op.dim_out, r), validate=False)
        # marginal of the purification on R: (M^T conj(M))
        varrho = TraceClassElement(amp.T @ amp.conj(), validate=False)
        return float(relative_entropy(tau_el, tensor(apply(op, rho), varrho)))

    first = value_for(m)
    r = m.shape[1]
    if r > 1:
        phase = np.exp(2j * np.pi * np.outer(np.arange(r), np.arange(r)) / r) / np.sqrt(r)
        second = value_for(m @ phase)
        if abs(first - second) > PURIFICATION_TOL:
            raise ArithmeticError(
                f"mutual information depends on the purification: {first!r} vs {second!r}"
            )
    cross = von_neumann_entropy(rho) + output_entropy(op, rho) - entropy_exchange(op, rho)
    if abs(first - cross) > IDENTITY_TOL:
        raise ArithmeticError(f"mutual information cross-check failed: {first!r} vs {cross!r}")
    return first


def coherent_information(op: QuantumOperation, rho: TraceClassElement) -> float:
    """I_c(Phi, rho) = I(Phi, rho) - H(rho), constrained to [-H(rho), H(rho)]."""
    h = von_neumann_entropy(rho)
    value = channel_mutual_information(op, rho) - h
    direct = output_entropy(op, rho) - entropy_exchange(op, rho)
    if abs(value - direct) > IDENTITY_TOL:
        raise ArithmeticError(f"coherent information forms disagree: {value!r} vs {direct!r}")
    if abs(value) > h + CI_RANGE_TOL:
        raise ArithmeticError(f"coherent information {value!r} escapes [-H, H] with H={h!r}")
    return value


def constrained_holevo(op: QuantumOperation, rho: TraceClassElement, members: int, budget=None):
    """Best found sum_i pi_i H(Phi(rho_i) || Phi(rho)) over ensembles of size <= members.

    Reported as a lower bound on the constrained Holevo capacity; see
    roofs.constrained_holevo_estimate for the optimizer.
    """
    from .roofs import constrained_holevo_estimate

    return constrained_holevo_estimate(op, rho, members, budget)


# ---------------------------------------------------------------------------
# Named channel builders
# ---------------------------------------------------------------------------


def identity_channel(dim: int) -> QuantumOperation:
    return QuantumOperation([np.eye(dim, dtype=complex)], meta={"kind": "identity"})


def unitary_channel(u: np.ndarray) -> QuantumOperation:
    return QuantumOperation([np.asarray(u, dtype=complex)], meta={"kind": "unitary"})


def _weyl(d: int, a: int, b: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / d)
    x = np.roll(np.eye(d, dtype=complex), a, axis=0)
    z = np.diag(omega ** np.arange(d))
    return x @ np.linalg.matrix_power(z, b)


def depolarizing_channel(p: float, dim: int = 2) -> QuantumOperation:
    """rho -> (1 - p) rho + p Tr[rho] I / dim via the Weyl twirl."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("depolarizing parameter must lie in [0, 1]")
    kraus = [np.sqrt(1.0 - p + p / dim**2) * np.eye(dim, dtype=complex)]
    for a in range(dim):
        for b in range(dim):
            if a == 0 and b == 0:
                continue
            kraus.append(np.sqrt(p) / dim * _weyl(dim, a, b))
    return QuantumOperation(kraus, meta={"kind": "depolarizing", "p": p})


def dephasing_channel(p: float) -> QuantumOperation:
    """Qubit phase damping rho -> (1 - p) rho + p diag(rho), two Kraus terms."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("dephasing parameter must lie in [0, 1]")
    z = np.diag([1.0, -1.0]).astype(complex)
    kraus = [np.sqrt(1.0 - p / 2.0) * np.eye(2, dtype=complex), np.sqrt(p / 2.0) * z]
    return QuantumOperation(kraus, meta={"kind": "dephasing", "p": p})


def pinching_channel(dim: int) -> QuantumOperation:
    """Full decoherence in the computational basis: rho -> diag(rho)."""
    kraus = []
    for k in range(dim):
        e = np.zeros((dim, dim), dtype=complex)
        e[k, k] = 1.0
        kraus.append(e)
    return QuantumOperation(kraus, meta={"kind": "pinching"})


def partial_trace_channel(dims, keep: int) -> QuantumOperation:
    """Channel (A x B) -> kept factor, tracing the other."""
    da, db = int(dims[0]), int(dims[1])
    kraus = []
    if keep == 0:
        for j in range(db):
            k = np.zeros((da, da * db), dtype=complex)
            for a in range(da):
                k[a, a * db + j] = 1.0
            kraus.append(k)
    elif keep == 1:
        for j in range(da):
            k = np.zeros((db, da * db), dtype=complex)
            for b in range(db):
                k[b, j * db + b] = 1.0
            kraus.append(k)
    else:
        raise DimensionMismatchError("keep must be 0 or 1")
    return QuantumOperation(kraus, meta={"kind": "partial_trace", "keep": keep})


def compression_operation(dim_in: int, dim_out: int, unitary: np.ndarray | None = None) -> QuantumOperation:
    """Trace-non-increasing cut-down to the first dim_out levels (single Kraus, Choi rank 1)."""
    if dim_out > dim_in:
        raise DimensionMismatchError("compression cannot enlarge the space")
    k = np.zeros((dim_out, dim_in), dtype=complex)
    k[:, :dim_out] = np.eye(dim_out)
    if unitary is not None:
        k = k @ np.asarray(unitary, dtype=complex)
    return QuantumOperation([k], meta={"kind": "compression"})


def _validate_povm(povm, dim: int) -> list[np.ndarray]:
    mats = [np.asarray(m, dtype=complex) for m in povm]
    if not mats or any(m.shape != (dim, dim) for m in mats):
        raise InvalidPOVMError("POVM elements must be square matrices of the input dimension")
    total = np.zeros((dim, dim), dtype=complex)
    for m in mats:
        if float(np.max(np.abs(m - m.conj().T))) > KRAUS_TOL:
            raise InvalidPOVMError("POVM element is not Hermitian")
        if float(np.linalg.eigvalsh(m)[0]) < -KRAUS_TOL:
            raise InvalidPOVMError("POVM element is not positive semidefinite")
        total += m
    if float(np.max(np.abs(total - np.eye(dim)))) > KRAUS_TOL:
        raise InvalidPOVMError("POVM does not resolve the identity")
    return mats


def measure_prepare_channel(povm, preps) -> QuantumOperation:
    """Entanglement-breaking channel rho -> sum_i Tr[M_i rho] tau_i."""
    preps = list(preps)
    if not preps:
        raise InvalidPOVMError("at least one preparation state is required")
    dim_in = np.asarray(povm[0]).shape[0]
    mats = _validate_povm(povm, dim_in)
    if len(preps) != len(mats):
        raise InvalidPOVMError("one preparation state per POVM outcome is required")
    dim_out = preps[0].dim
    kraus = []
    for m, tau in zip(mats, preps):
        tau.require_state()
        wm, vm = np.linalg.eigh(m)
        wt, vt = np.linalg.eigh(tau.to_matrix())
        for r in range(dim_in):
            if wm[r] <= KRAUS_TOL:
                continue
            bra = np.sqrt(wm[r]) * vm[:, r].conj()
            for s in range(dim_out):
                if wt[s] <= KRAUS_TOL:
                    continue
                ket = np.sqrt(wt[s]) * vt[:, s]
                kraus.append(np.outer(ket, bra))
    return QuantumOperation(kraus, meta={"kind": "measure_prepare"})


def pseudo_diagonal_channel(povm, preps) -> QuantumOperation:
    """Complementary of a measure-and-prepare channel."""
    op = complementary(measure_prepare_channel(povm, preps))
    op.meta["kind"] = "pseudo_diagonal"
    return op


class ChannelSequence:
    """Generator n -> operation with a declared limit and probe states.

    Strong convergence is operationalized as trace-distance convergence on
    the declared probes; ``validate`` checks that the probe distances are
    nonincreasing beyond ``n_min`` rather than assuming it.
    """

    def __init__(self, generator, limit: QuantumOperation, probe_states, n_min: int = 0):
        self.generator = generator
        self.limit = limit
        self.probe_states = list(probe_states)
        self.n_min = int(n_min)

    def convergence_profile(self, grid) -> np.ndarray:
        out = []
        for n in grid:
            op = self.generator(n)
            out.append(
                max(
                    trace_distance(apply(op, rho), apply(self.limit, rho))
                    for rho in self.probe_states
                )
            )
        return np.asarray(out)

    def validate(self, grid, slack: float = 1e-12) -> bool:
        prof = self.convergence_profile(grid)
        tail = prof[[n >= self.n_min for n in grid]]
        return bool(np.all(np.diff(tail) <= slack))
