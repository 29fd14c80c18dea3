"""Entropic functionals of states and ensembles.

All logarithms are natural.  The von Neumann entropy carries the homogeneous
extension to subnormalized positive operators,

    H(rho) = Tr eta(rho) - eta(Tr rho),    eta(x) = -x log x,

which reduces to -Tr rho log rho on states and vanishes on every rank-one
element regardless of its trace.  Relative entropy is evaluated in the
eigenbasis of the second argument's support and returns the tagged
+infinity marker on support violation.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BadFactorizationError,
    DimensionMismatchError,
    InconsistentEnsembleError,
    NotUnitaryError,
)
from .extended import ExtendedReal
from .operators import (
    SUPPORT_CUTOFF_RTOL,
    TraceClassElement,
    group_factors,
    partial_trace,
    permute_factors,
    tensor,
    trace_distance,
)

SUPPORT_LEAK_TOL = 1e-10
UNITARITY_TOL = 1e-10
CROSS_CHECK_TOL = 1e-9
CMI_AGREEMENT_TOL = 1e-8


def eta(x):
    """-x log x extended by eta(0) = 0, elementwise on arrays."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0.0
    out[pos] = -x[pos] * np.log(x[pos])
    return out if out.ndim else float(out)


def _entropy_from_eigs(w: np.ndarray) -> float:
    w = np.clip(np.asarray(w, dtype=float), 0.0, None)
    t = float(w.sum())
    return float(eta(w).sum()) - float(eta(t))


def von_neumann_entropy(rho: TraceClassElement) -> float:
    """Entropy with the homogeneous cone extension; H(0) = 0."""
    if rho.diagonal:
        return _entropy_from_eigs(rho.diag)
    return _entropy_from_eigs(np.linalg.eigvalsh(rho.to_matrix()))


def shannon_entropy(p) -> ExtendedReal:
    """Shannon entropy with the same homogeneous extension to the L1 cone."""
    return ExtendedReal(_entropy_from_eigs(np.asarray(p, dtype=float).reshape(-1)))


def _support(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return np.zeros(0, dtype=bool)
    top = float(values.max())
    if top <= 0:
        return np.zeros(values.shape, dtype=bool)
    return values > SUPPORT_CUTOFF_RTOL * top


def relative_entropy(rho: TraceClassElement, sigma: TraceClassElement) -> ExtendedReal:
    """H(rho || sigma) = Tr[rho log rho - rho log sigma] + Tr sigma - Tr rho.

    Returns +infinity when supp rho is not contained in supp sigma, detected
    via Tr[(I - P_sigma) rho] > 1e-10.  Homogeneous: H(c rho || c sigma) =
    c H(rho || sigma) for c >= 0.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatchError(f"dims {rho.dim} and {sigma.dim} differ")
    tr_rho = rho.trace
    tr_sigma = sigma.trace
    if rho.diagonal and sigma.diagonal:
        p, q = rho.diag, sigma.diag
        on = _support(q)
        if float(np.clip(p, 0.0, None)[~on].sum()) > SUPPORT_LEAK_TOL:
            return ExtendedReal.infinity()
        ps = np.clip(p[on], 0.0, None)
        plog = float(np.sum(ps[ps > 0] * np.log(ps[ps > 0])))
        cross = float(np.sum(ps * np.log(q[on])))
        return ExtendedReal(plog - cross + tr_sigma - tr_rho)
    dec = sigma.spectrum()
    on = _support(dec.eigenvalues)
    rho_m = rho.to_matrix()
    vs = dec.eigenvectors[:, on]
    weights = np.real(np.einsum("ij,jk,ki->i", vs.conj().T, rho_m, vs))
    leak = tr_rho - float(weights.sum())
    if leak > SUPPORT_LEAK_TOL:
        return ExtendedReal.infinity()
    w_rho = np.clip(np.linalg.eigvalsh(rho_m), 0.0, None)
    plog = float(np.sum(w_rho[w_rho > 0] * np.log(w_rho[w_rho > 0])))
    cross = float(np.sum(np.clip(weights, 0.0, None) * np.log(dec.eigenvalues[on])))
    return ExtendedReal(plog - cross + tr_sigma - tr_rho)


def pinching_distribution(rho: TraceClassElement, basis: np.ndarray) -> np.ndarray:
    """Diagonal of rho in the given orthonormal basis (columns of ``basis``)."""
    u = np.asarray(basis, dtype=complex)
    if u.shape != (rho.dim, rho.dim):
        raise DimensionMismatchError(f"basis shape {u.shape} does not match dim {rho.dim}")
    dev = float(np.max(np.abs(u.conj().T @ u - np.eye(rho.dim))))
    if dev > UNITARITY_TOL:
        raise NotUnitaryError(f"max |U^dag U - I| = {dev:.3e}")
    p = np.real(np.einsum("ij,jk,ki->i", u.conj().T, rho.to_matrix(), u))
    return np.clip(p, 0.0, None)


def _marginals_ab(omega: TraceClassElement) -> tuple[TraceClassElement, TraceClassElement]:
    if omega.factor_dims is None or len(omega.factor_dims) != 2:
        raise BadFactorizationError("bipartite functional requires exactly two factors")
    return partial_trace(omega, [0]), partial_trace(omega, [1])


def mutual_information(omega: TraceClassElement) -> ExtendedReal:
    """I(A:B) = H(omega_AB || omega_A x omega_B), cone-extended homogeneously."""
    t = omega.trace
    if t <= 0:
        return ExtendedReal(0.0)
    state = omega.scaled(1.0 / t)
    a, b = _marginals_ab(state)
    if state.diagonal:
        # Classical joint distribution: the relative entropy reduces to
        # the Shannon combination of the marginals.
        val = (
            float(shannon_entropy(a.diag))
            + float(shannon_entropy(b.diag))
            - float(shannon_entropy(state.diag))
        )
        return ExtendedReal(max(val, 0.0)) * t
    return relative_entropy(state, tensor(a, b)) * t


def conditional_entropy(omega: TraceClassElement) -> float:
    """H(A|B) = H(AB) - H(B), cross-checked against H(A) - I(A:B)."""
    omega.require_state()
    a, b = _marginals_ab(omega)
    primary = von_neumann_entropy(omega) - von_neumann_entropy(b)
    alt = von_neumann_entropy(a) - float(mutual_information(omega))
    if abs(primary - alt) > CROSS_CHECK_TOL:
        raise ArithmeticError(
            f"conditional entropy forms disagree: {primary!r} vs {alt!r}"
        )
    return primary


def _mi_of_cut(omega: TraceClassElement, left: tuple[int, ...], right: tuple[int, ...]) -> float:
    """I(left : right) of a multipartite state after regrouping factors."""
    sub = partial_trace(omega, list(left) + list(right))
    kept = sorted(set(left) | set(right))
    pos = {f: i for i, f in enumerate(kept)}
    order = [pos[f] for f in left] + [pos[f] for f in right]
    sub = permute_factors(sub, order)
    sub = group_factors(sub, (len(left), len(right)))
    return float(mutual_information(sub))


def conditional_mutual_information(omega: TraceClassElement, check: bool = True) -> float:
    """I(A:C|B) = H(AB) + H(BC) - H(ABC) - H(B) for factors ordered (A, B, C).

    With ``check=True`` the three mutual-information recombinations are also
    evaluated and must agree within 1e-8; strong subadditivity makes the
    value nonnegative.
    """
    omega.require_state()
    if omega.factor_dims is None or len(omega.factor_dims) != 3:
        raise BadFactorizationError("conditional mutual information requires three factors")
    h_ab = von_neumann_entropy(partial_trace(omega, [0, 1]))
    h_bc = von_neumann_entropy(partial_trace(omega, [1, 2]))
    h_abc = von_neumann_entropy(omega)
    h_b = von_neumann_entropy(partial_trace(omega, [1]))
    primary = h_ab + h_bc - h_abc - h_b
    if check:
        i_a_bc = _mi_of_cut(omega, (0,), (1, 2))
        i_a_b = _mi_of_cut(omega, (0,), (1,))
        i_ab_c = _mi_of_cut(omega, (0, 1), (2,))
        i_b_c = _mi_of_cut(omega, (1,), (2,))
        i_a_c = _mi_of_cut(omega, (0,), (2,))
        i_ac_b = _mi_of_cut(omega, (0, 2), (1,))
        variants = (
            i_a_bc - i_a_b,
            i_ab_c - i_b_c,
            i_a_c - i_a_b - i_b_c + i_ac_b,
        )
        for alt in variants:
            if abs(alt - primary) > CMI_AGREEMENT_TOL:
                raise ArithmeticError(
                    f"conditional mutual information forms disagree: {primary!r} vs {alt!r}"
                )
    return primary


class Ensemble:
    """Finite weighted family of same-dimension trace-class elements."""

    __slots__ = ("weights", "members", "average")

    def __init__(self, weights, members):
        w = np.asarray(weights, dtype=float).reshape(-1)
        members = list(members)
        if w.size != len(members) or w.size == 0:
            raise InconsistentEnsembleError("weights and members must be nonempty and match")
        if float(w.min()) < 0:
            raise InconsistentEnsembleError(f"negative weight {w.min()!r}")
        dims = {m.dim for m in members}
        if len(dims) != 1:
            raise InconsistentEnsembleError(f"member dimensions differ: {sorted(dims)}")
        self.weights = w
        self.members = members
        if all(m.diagonal for m in members):
            avg = np.zeros(members[0].dim)
            for wi, m in zip(w, members):
                avg += wi * m.diag
            self.average = TraceClassElement(avg, members[0].factor_dims, diagonal=True, validate=False)
        else:
            avg = np.zeros((members[0].dim, members[0].dim), dtype=complex)
            for wi, m in zip(w, members):
                avg += wi * m.to_matrix()
            self.average = TraceClassElement(avg, members[0].factor_dims, validate=False)

    @property
    def is_state_ensemble(self) -> bool:
        return abs(self.weights.sum() - 1.0) <= 1e-12 and all(m.is_state for m in self.members)

    def check_average(self, expected: TraceClassElement, tol: float = 1e-10) -> None:
        if trace_distance(self.average, expected) > tol:
            raise InconsistentEnsembleError("ensemble average does not match the declared state")


def holevo_quantity(ensemble: Ensemble) -> ExtendedReal:
    """chi = sum_i pi_i H(rho_i || rho_bar), cross-checked against H(rho_bar) - sum pi_i H(rho_i)."""
    if not ensemble.is_state_ensemble:
        raise InconsistentEnsembleError("Holevo quantity requires a normalized state ensemble")
    avg = ensemble.average
    total = ExtendedReal(0.0)
    mean_member_entropy = 0.0
    for wi, m in zip(ensemble.weights, ensemble.members):
        if wi == 0.0:
            continue
        total = total + relative_entropy(m, avg) * wi
        mean_member_entropy += wi * von_neumann_entropy(m)
    if total.is_finite:
        alt = von_neumann_entropy(avg) - mean_member_entropy
        if abs(total.value - alt) > CROSS_CHECK_TOL:
            raise ArithmeticError(f"Holevo forms disagree: {total.value!r} vs {alt!r}")
    return total
