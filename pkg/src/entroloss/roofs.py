"""Variational quantities defined by optimization over ensembles and extensions.

Every ensemble of m members with average rho is produced by purifying rho
and measuring the purifying system with an m-outcome POVM whose elements
have rank <= block (Schroedinger-HJW).  With the purification amplitude
M (dim x rank) and an isometry W ((m * block) x rank), the unnormalized
members are

    omega_i = C_i C_i^dag,     C_i = M @ W[i-th block].T,

so the average constraint sum_i omega_i = M M^dag = rho holds exactly by
construction and the optimizer only ever moves along valid ensembles.
block = 1 yields pure members (entanglement of formation, convex closure of
output entropy), block = rank yields unrestricted members (c-squashed).

Estimates carry explicit one-sidedness: an optimizer chasing a supremum
reports a LOWER bound on the true value, one chasing an infimum reports an
UPPER bound.  Exact anchors (pure inputs, k = 1, k >= rank) bypass the
optimizer entirely and are flagged as exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._optim import DEFAULT_BUDGET, IsometrySearchResult, OptimizerBudget, minimize_isometry
from .errors import BadFactorizationError, NotPureError
from .info import eta, mutual_information, von_neumann_entropy
from .operators import (
    TraceClassElement,
    group_factors,
    partial_trace,
    permute_factors,
    purification_amplitude,
    tensor,
)


class Direction(enum.Enum):
    LOWER_BOUND = "lower_bound"
    UPPER_BOUND = "upper_bound"


@dataclass(frozen=True)
class BoundedValue:
    """Optimizer output with one-sidedness and convergence metadata."""

    value: float
    direction: Direction
    converged: bool
    gap_estimate: float
    meta: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return bool(self.meta.get("exact", False))


def _exact(value: float, direction: Direction, **meta) -> BoundedValue:
    meta = {"exact": True, **meta}
    return BoundedValue(float(value), direction, converged=True, gap_estimate=0.0, meta=meta)


def _from_search(value: float, direction: Direction, search: IsometrySearchResult, **meta) -> BoundedValue:
    return BoundedValue(
        float(value),
        direction,
        converged=search.converged,
        gap_estimate=search.gap_estimate,
        meta=dict(meta),
    )


# ---------------------------------------------------------------------------
# batched entropy helpers (members along the first axis)
# ---------------------------------------------------------------------------


def _cone_entropy_rows(eigs: np.ndarray) -> np.ndarray:
    lam = np.clip(eigs, 0.0, None)
    traces = lam.sum(axis=-1)
    return eta(lam).sum(axis=-1) - eta(traces)


def _members(amp: np.ndarray, w: np.ndarray, m: int, block: int) -> np.ndarray:
    r = amp.shape[1]
    return np.einsum("dr,mbr->mdb", amp, w.reshape(m, block, r))


def _member_entropies(c: np.ndarray) -> np.ndarray:
    s = np.linalg.svd(c, compute_uv=False)
    return _cone_entropy_rows(s**2)


def _marginal_rows(c4: np.ndarray, side: int) -> np.ndarray:
    """Member marginals from amplitudes shaped (m, dA, dB, block)."""
    if side == 0:
        return np.einsum("mabk,mcbk->mac", c4, c4.conj())
    return np.einsum("mabk,mack->mbc", c4, c4.conj())


def _marginal_entropies(c4: np.ndarray, side: int) -> np.ndarray:
    eigs = np.linalg.eigvalsh(_marginal_rows(c4, side))
    return _cone_entropy_rows(eigs)


def _bipartite(omega: TraceClassElement) -> tuple[int, int]:
    if omega.factor_dims is None or len(omega.factor_dims) != 2:
        raise BadFactorizationError("a bipartite factorization is required")
    return omega.factor_dims


# ---------------------------------------------------------------------------
# entropy approximators
# ---------------------------------------------------------------------------


def entropy_k_approximation(
    rho: TraceClassElement, k: int, budget: OptimizerBudget | None = None, members: int | None = None
) -> BoundedValue:
    """Best found mean member entropy over ensembles with member rank <= k.

    Lower bound on the rank-k entropy approximator; exact at k = 1 (zero)
    and at k >= rank(rho) (the singleton ensemble gives H(rho))."""
    k = int(k)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return _exact(0.0, Direction.LOWER_BOUND, anchor="rank-1 members have zero entropy")
    rank = rho.rank()
    if k >= rank:
        return _exact(von_neumann_entropy(rho), Direction.LOWER_BOUND, anchor="singleton ensemble")
    amp = purification_amplitude(rho)
    r = amp.shape[1]
    m = int(members) if members is not None else rho.dim
    budget = budget or DEFAULT_BUDGET

    def objective(w):
        c = _members(amp, w, m, k)
        return -float(_member_entropies(c).sum())

    search = minimize_isometry(objective, m * k, r, budget)
    return _from_search(-search.value, Direction.LOWER_BOUND, search, members=m)


def entropy_k_gap(
    rho: TraceClassElement, k: int, budget: OptimizerBudget | None = None, members: int | None = None
) -> BoundedValue:
    """Best found sum_i pi_i H(rho_i || rho): the gap between H and its approximator.

    Upper bound; exact at k = 1 (the spectral ensemble gives H(rho)) and at
    k >= rank(rho) (zero).  Equals H(rho) minus the approximator value on
    the same ensemble by construction.
    """
    k = int(k)
    h = von_neumann_entropy(rho)
    if k == 1:
        return _exact(h, Direction.UPPER_BOUND, anchor="spectral ensemble")
    if k >= rho.rank():
        return _exact(0.0, Direction.UPPER_BOUND, anchor="singleton ensemble")
    approx = entropy_k_approximation(rho, k, budget, members)
    return BoundedValue(
        h - approx.value,
        Direction.UPPER_BOUND,
        converged=approx.converged,
        gap_estimate=approx.gap_estimate,
        meta={"approximator": approx.value},
    )


# ---------------------------------------------------------------------------
# channel-side roofs
# ---------------------------------------------------------------------------


def convex_closure_output_entropy(
    op, rho: TraceClassElement, members: int, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """Best found sum_i pi_i H(Phi(rho_i)) over pure-member ensembles averaging to rho."""
    m = int(members)
    if m < 1:
        raise ValueError("ensemble size must be >= 1")
    amp = purification_amplitude(rho)
    r = amp.shape[1]
    if m == 1 or r == 1:
        from .channels import output_entropy

        return _exact(output_entropy(op, rho), Direction.UPPER_BOUND, anchor="singleton ensemble")
    kstack = np.stack(op.kraus)  # (nk, dout, din)
    budget = budget or DEFAULT_BUDGET

    def objective(w):
        c = _members(amp, w, m, 1)[:, :, 0]  # (m, din) pure member amplitudes
        outs = np.einsum("koi,mi->mok", kstack, c)
        return float(_member_entropies(outs).sum())

    search = minimize_isometry(objective, m, r, budget)
    return _from_search(search.value, Direction.UPPER_BOUND, search, members=m)


def constrained_holevo_estimate(
    op, rho: TraceClassElement, members: int, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """Lower estimate of the constrained Holevo capacity at rho.

    Uses the identity C(Phi, rho) + coH(Phi, rho) = H(Phi(rho)) on the
    optimizing ensemble, so the reported value and the convex-closure
    estimate are two sides of one optimization.
    """
    from .channels import output_entropy

    op.require_channel()
    rho.require_state()
    coh = convex_closure_output_entropy(op, rho, members, budget)
    h_out = output_entropy(op, rho)
    return BoundedValue(
        max(h_out - coh.value, 0.0),
        Direction.LOWER_BOUND,
        converged=coh.converged,
        gap_estimate=coh.gap_estimate,
        meta={"convex_closure": coh.value, "output_entropy": h_out},
    )


# ---------------------------------------------------------------------------
# entanglement measures
# ---------------------------------------------------------------------------


def entanglement_of_formation(
    omega: TraceClassElement, members: int | None = None, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """Best found sum_i pi_i H((omega_i)_A) over pure-member ensembles averaging to omega.

    Upper bound on the entanglement of formation; exact on pure inputs where
    it equals the marginal entropy.
    """
    da, db = _bipartite(omega)
    omega.require_state()
    rank = omega.rank()
    if rank <= 1:
        return _exact(
            von_neumann_entropy(partial_trace(omega, [0])),
            Direction.UPPER_BOUND,
            anchor="pure state",
        )
    amp = purification_amplitude(omega)
    r = amp.shape[1]
    m = int(members) if members is not None else rank
    if m < rank:
        raise ValueError(f"ensemble size {m} below rank {rank} cannot average to the state")
    budget = budget or DEFAULT_BUDGET

    def objective(w):
        c4 = _members(amp, w, m, 1).reshape(m, da, db, 1)
        return float(_marginal_entropies(c4, 0).sum())

    search = minimize_isometry(objective, m, r, budget)
    return _from_search(search.value, Direction.UPPER_BOUND, search, members=m)


def formation_two_member_grid(omega: TraceClassElement, grid_points: int = 10_000) -> float:
    """Brute-force oracle: minimum over a Bloch-angle grid of two-member pure ensembles.

    Only rank-2 states admit two-member decompositions; the measurement bases
    of the rank-2 purifying system are swept over an (angle x phase) grid.
    """
    da, db = _bipartite(omega)
    omega.require_state()
    amp = purification_amplitude(omega)
    if amp.shape[1] != 2:
        raise ValueError("the two-member grid oracle requires a rank-2 state")
    side = max(2, int(np.sqrt(grid_points)))
    thetas = np.linspace(0.0, np.pi, side)
    phis = np.linspace(0.0, 2.0 * np.pi, side, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    u0 = np.stack([np.cos(tt / 2), np.exp(1j * pp) * np.sin(tt / 2)], axis=-1).reshape(-1, 2)
    u1 = np.stack([-np.exp(-1j * pp) * np.sin(tt / 2), np.cos(tt / 2)], axis=-1).reshape(-1, 2)
    values = np.zeros(u0.shape[0])
    for u in (u0, u1):
        c = u @ amp.T  # (N, dA*dB) member amplitudes
        c4 = c.reshape(-1, da, db)
        marg = np.einsum("mab,mcb->mac", c4, c4.conj())
        values += _cone_entropy_rows(np.linalg.eigvalsh(marg))
    return float(values.min())


def c_squashed_entanglement_k(
    omega: TraceClassElement, k: int, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """Best found sum_i pi_i I(A:B) over ensembles of at most k states averaging to omega."""
    da, db = _bipartite(omega)
    omega.require_state()
    k = int(k)
    if k < 1:
        raise ValueError("ensemble size must be >= 1")
    if k == 1 or omega.rank() <= 1:
        return _exact(float(mutual_information(omega)), Direction.UPPER_BOUND, anchor="singleton ensemble")
    amp = purification_amplitude(omega)
    r = amp.shape[1]
    budget = budget or DEFAULT_BUDGET

    def objective(w):
        c = _members(amp, w, k, r)
        joint = _member_entropies(c)
        c4 = c.reshape(k, da, db, r)
        return float((_marginal_entropies(c4, 0) + _marginal_entropies(c4, 1) - joint).sum())

    search = minimize_isometry(objective, k * r, r, budget)
    return _from_search(search.value, Direction.UPPER_BOUND, search, ensemble_size=k)


def squashed_entanglement_k(
    omega: TraceClassElement, k: int, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """Best found half conditional mutual information over extensions with dim(E) = k.

    Extensions are parameterized by a channel on the purifying system,
    itself given by a Stinespring isometry, so the search sweeps all
    extensions of the declared environment dimension.
    """
    da, db = _bipartite(omega)
    omega.require_state()
    k = int(k)
    if k < 1:
        raise ValueError("extension dimension must be >= 1")
    if k == 1:
        return _exact(0.5 * float(mutual_information(omega)), Direction.UPPER_BOUND, anchor="trivial extension")
    amp = purification_amplitude(omega)
    r = amp.shape[1]
    if r == 1:
        return _exact(0.5 * float(mutual_information(omega)), Direction.UPPER_BOUND, anchor="pure state")
    f = r * k  # environment of the squashing channel covers every channel R -> E
    budget = budget or DEFAULT_BUDGET

    def objective(w):
        n4 = np.einsum("xr,efr->xef", amp, w.reshape(k, f, r)).reshape(da, db, k, f)
        s_abe = np.linalg.svd(n4.reshape(da * db * k, f), compute_uv=False)
        h_abe = float(eta(s_abe**2).sum())
        ae = np.einsum("abef,cbgf->aecg", n4, n4.conj()).reshape(da * k, da * k)
        be = np.einsum("abef,acgf->becg", n4, n4.conj()).reshape(db * k, db * k)
        e = np.einsum("abef,abgf->eg", n4, n4.conj())
        h_ae = float(eta(np.clip(np.linalg.eigvalsh(ae), 0.0, None)).sum())
        h_be = float(eta(np.clip(np.linalg.eigvalsh(be), 0.0, None)).sum())
        h_e = float(eta(np.clip(np.linalg.eigvalsh(e), 0.0, None)).sum())
        return 0.5 * (h_ae + h_be - h_abe - h_e)

    search = minimize_isometry(objective, k * f, r, budget)
    return _from_search(max(search.value, 0.0), Direction.UPPER_BOUND, search, extension_dim=k)


# ---------------------------------------------------------------------------
# measurement-side quantities
# ---------------------------------------------------------------------------


def classical_correlations(
    omega: TraceClassElement, povm_size: int | None = None, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """Best found H(omega_A) - sum_i pi_i H(omega_A^i) over rank-one POVMs on B.

    POVMs of the given size are parameterized by an isometry from B into the
    outcome space followed by the projective measurement there (Naimark), so
    the estimate is a lower bound on the Henderson-Vedral measure.
    """
    da, db = _bipartite(omega)
    omega.require_state()
    m = int(povm_size) if povm_size is not None else max(2, db)
    if m < db:
        raise ValueError(f"povm size {m} cannot embed the measured system of dim {db}")
    h_a = von_neumann_entropy(partial_trace(omega, [0]))
    t4 = omega.to_matrix().reshape(da, db, da, db)
    budget = budget or DEFAULT_BUDGET

    def objective(w):
        posts = np.einsum("abcd,ib,id->iac", t4, w, w.conj())
        return float(_cone_entropy_rows(np.linalg.eigvalsh(posts)).sum())

    search = minimize_isometry(objective, m, db, budget)
    return _from_search(max(h_a - search.value, 0.0), Direction.LOWER_BOUND, search, povm_size=m)


def quantum_discord(
    omega: TraceClassElement, povm_size: int | None = None, budget: OptimizerBudget | None = None
) -> BoundedValue:
    """I(A:B) minus the classical-correlations estimate; an upper bound on the discord."""
    cb = classical_correlations(omega, povm_size, budget)
    i_ab = float(mutual_information(omega))
    return BoundedValue(
        max(i_ab - cb.value, 0.0),
        Direction.UPPER_BOUND,
        converged=cb.converged,
        gap_estimate=cb.gap_estimate,
        meta={"mutual_information": i_ab, "classical_correlations": cb.value},
    )


@dataclass(frozen=True)
class KoashiWinterResult:
    residual: float
    classical_correlations: BoundedValue
    formation: BoundedValue
    marginal_entropy: float

    @property
    def converged(self) -> bool:
        return self.classical_correlations.converged and self.formation.converged


def koashi_winter_residual(
    omega_abc: TraceClassElement, budget: OptimizerBudget | None = None
) -> KoashiWinterResult:
    """|C_B(omega_AB) + E_F(omega_AC) - H(omega_A)| on a pure tripartite state.

    Both optimizers sweep the same ensemble family (B purifies omega_AC), so
    with converged budgets the residual is pure optimizer noise.
    """
    if omega_abc.factor_dims is None or len(omega_abc.factor_dims) != 3:
        raise BadFactorizationError("a tripartite factorization is required")
    omega_abc.require_state()
    if omega_abc.rank() > 1:
        raise NotPureError("the relation is evaluated on pure tripartite states")
    da, db, dc = omega_abc.factor_dims
    omega_ab = partial_trace(omega_abc, [0, 1])
    omega_ac = partial_trace(omega_abc, [0, 2])
    h_a = von_neumann_entropy(partial_trace(omega_abc, [0]))
    rank_ac = max(omega_ac.rank(), 1)
    size = max(2, db, rank_ac)
    budget = budget or DEFAULT_BUDGET
    cb = classical_correlations(omega_ab, povm_size=size, budget=budget)
    ef = entanglement_of_formation(omega_ac, members=max(size, rank_ac), budget=budget.reseeded(budget.seed + 1))
    return KoashiWinterResult(
        residual=abs(cb.value + ef.value - h_a),
        classical_correlations=cb,
        formation=ef,
        marginal_entropy=h_a,
    )


# ---------------------------------------------------------------------------
# tensor-square regularization at k = 2
# ---------------------------------------------------------------------------


def _tensor_square_bipartite(omega: TraceClassElement) -> TraceClassElement:
    square = tensor(omega, omega)  # factors (A, B, A', B')
    square = permute_factors(square, (0, 2, 1, 3))  # (A, A', B, B')
    return group_factors(square, (2, 2))


def tensor_square_regularization(
    measure: str, omega: TraceClassElement, budget: OptimizerBudget | None = None, size: int | None = None
) -> BoundedValue:
    """Half the measure of omega (x) omega across the grouped (AA' : BB') cut.

    Product ensembles certify measure(omega (x) omega) <= 2 measure(omega),
    so the reported upper bound is the better of the direct optimizer on the
    square and the product construction.
    """
    _bipartite(omega)
    if measure == "formation":
        single = entanglement_of_formation(omega, members=size, budget=budget)
        square_state = _tensor_square_bipartite(omega)
        rank = max(square_state.rank(), 1)
        direct = entanglement_of_formation(
            omega=square_state,
            members=max(rank, (size or 0)),
            budget=budget,
        )
    elif measure == "c_squashed":
        k = int(size) if size is not None else max(2, omega.rank())
        single = c_squashed_entanglement_k(omega, k, budget)
        direct = c_squashed_entanglement_k(_tensor_square_bipartite(omega), k * k, budget)
    else:
        raise ValueError(f"unknown measure {measure!r}")
    product_bound = 2.0 * single.value
    value = 0.5 * min(direct.value, product_bound)
    return BoundedValue(
        value,
        Direction.UPPER_BOUND,
        converged=direct.converged and single.converged,
        gap_estimate=max(direct.gap_estimate, single.gap_estimate),
        meta={"single_copy": single.value, "square_direct": direct.value, "product_bound": product_bound},
    )
