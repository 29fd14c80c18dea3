"""Converging state sequences and numerical discontinuity-jump estimation.

A jump (loss) of a lower-semicontinuous functional f along a converging
sequence is limsup f(x_n) - f(x_0).  A finite grid can only bound that from
one side, so estimates carry two numbers: the trailing-window supremum of
the measured values ("measured at finite n") and, where the family declares
one, a closed-form per-n estimator of the asymptotic value.  The report
never presents a finite-n number as the limsup.

Pure bipartite elements are kept in amplitude form so that sequence runs at
dimension 2**16 never materialize a (dim^2)-sized matrix: the mutual
information of a pure state is evaluated rank-aware as twice the marginal
entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    FunctionalUndefinedError,
    IncompatiblePurificationError,
)
from .extended import ExtendedReal
from .energy import Hamiltonian, sharp_sequence_state, sharp_sequence_weight
from .info import shannon_entropy, von_neumann_entropy, conditional_entropy, mutual_information
from .operators import TraceClassElement, trace_distance

GRID_DIAG = tuple(2**k for k in range(4, 17))
GRID_MEDIUM = tuple(2**k for k in range(4, 10))
GRID_DENSE = tuple(2**k for k in range(4, 8))
DEFAULT_WINDOW = 3


class PureBipartiteState:
    """Pure bipartite state held as an amplitude matrix M, psi = sum M[a,b] |a>|b>.

    Schmidt-diagonal amplitudes are stored as a vector of nonnegative
    weights; marginals of those never touch dense algebra.
    """

    __slots__ = ("dims", "_dense", "_schmidt")

    def __init__(self, dims, dense=None, schmidt=None):
        self.dims = (int(dims[0]), int(dims[1]))
        if (dense is None) == (schmidt is None):
            raise ValueError("provide exactly one of dense amplitude or schmidt weights")
        if schmidt is not None:
            s = np.asarray(schmidt, dtype=float).reshape(-1)
            if s.size != min(self.dims):
                raise DimensionMismatchError("schmidt vector length must match min(dims)")
            self._schmidt = s
            self._dense = None
        else:
            m = np.asarray(dense, dtype=complex)
            if m.shape != self.dims:
                raise DimensionMismatchError(f"amplitude shape {m.shape} does not match dims {self.dims}")
            self._dense = m
            self._schmidt = None

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def norm_sq(self) -> float:
        if self._schmidt is not None:
            return float((self._schmidt**2).sum())
        return float(np.sum(np.abs(self._dense) ** 2))

    def marginal(self, side: int = 0) -> TraceClassElement:
        if self._schmidt is not None:
            return TraceClassElement(self._schmidt**2, diagonal=True, validate=False)
        m = self._dense
        if side == 0:
            return TraceClassElement(m @ m.conj().T, validate=False)
        return TraceClassElement(m.T @ m.conj(), validate=False)

    def marginal_entropy(self, side: int = 0) -> float:
        return von_neumann_entropy(self.marginal(side))

    def overlap(self, other: "PureBipartiteState") -> float:
        """|<psi|phi>| with the smaller state zero-padded."""
        a, b = self, other
        if a._schmidt is not None and b._schmidt is not None:
            k = min(a._schmidt.size, b._schmidt.size)
            return float(abs(np.dot(a._schmidt[:k], b._schmidt[:k])))
        ma = a._dense if a._dense is not None else np.diag(a._schmidt.astype(complex))
        mb = b._dense if b._dense is not None else np.diag(b._schmidt.astype(complex))
        ra = min(ma.shape[0], mb.shape[0])
        rb = min(ma.shape[1], mb.shape[1])
        return float(abs(np.sum(ma[:ra, :rb].conj() * mb[:ra, :rb])))

    def to_element(self) -> TraceClassElement:
        if self._schmidt is not None:
            m = np.zeros(self.dims, dtype=complex)
            np.fill_diagonal(m, self._schmidt)
        else:
            m = self._dense
        return TraceClassElement.pure(m.reshape(-1), factor_dims=self.dims)

    def __repr__(self):
        kind = "schmidt" if self._schmidt is not None else "dense"
        return f"PureBipartiteState(dims={self.dims}, {kind})"


def pure_trace_distance(a: PureBipartiteState, b: PureBipartiteState) -> float:
    ov2 = min(a.overlap(b) ** 2, 1.0)
    return 2.0 * math.sqrt(max(1.0 - ov2, 0.0))


# ---------------------------------------------------------------------------
# functionals usable on both dense elements and amplitude-form pure states
# ---------------------------------------------------------------------------


def entropy_of(x) -> float:
    if isinstance(x, PureBipartiteState):
        return 0.0
    return von_neumann_entropy(x)


def marginal_entropy_of(x, side: int = 0) -> float:
    if isinstance(x, PureBipartiteState):
        return x.marginal_entropy(side)
    from .operators import partial_trace

    return von_neumann_entropy(partial_trace(x, [side]))


def mutual_information_of(x) -> float:
    if isinstance(x, PureBipartiteState):
        return 2.0 * x.marginal_entropy(0)
    return float(mutual_information(x))


def conditional_entropy_of(x) -> float:
    if isinstance(x, PureBipartiteState):
        return -x.marginal_entropy(1)
    return conditional_entropy(x)


def pinched_entropy_of(x) -> float:
    """Shannon entropy of the computational-basis diagonal."""
    if isinstance(x, PureBipartiteState):
        x = x.to_element()
    return float(shannon_entropy(np.clip(x.diag, 0.0, None)))


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------


@dataclass
class StateSequence:
    """Generator n -> element together with the declared limit.

    ``closed_forms`` maps functional keys to per-n closed-form estimators of
    the asymptotic jump, available only for families that admit one.
    """

    generator: object
    limit: object
    n_grid: tuple = GRID_DIAG
    tags: dict = field(default_factory=dict)
    closed_forms: dict = field(default_factory=dict)

    def element(self, n: int):
        return self.generator(int(n))

    def embedded_limit(self, like) -> object:
        """The limit zero-padded into the space of a generated element."""
        lim = self.limit
        if isinstance(lim, PureBipartiteState):
            if not isinstance(like, PureBipartiteState):
                raise DimensionMismatchError("pure limit but non-pure element")
            if lim.dims == like.dims:
                return lim
            if lim._schmidt is not None:
                s = np.zeros(min(like.dims))
                s[: lim._schmidt.size] = lim._schmidt
                return PureBipartiteState(like.dims, schmidt=s)
            m = np.zeros(like.dims, dtype=complex)
            m[: lim.dims[0], : lim.dims[1]] = lim._dense
            return PureBipartiteState(like.dims, dense=m)
        if lim.dim == like.dim:
            return lim
        if lim.factor_dims is not None and like.factor_dims is not None:
            if len(lim.factor_dims) != len(like.factor_dims):
                raise DimensionMismatchError("limit and element factor counts differ")
            if lim.diagonal:
                src = lim.diag.reshape(lim.factor_dims)
                dst = np.zeros(like.factor_dims)
                dst[tuple(slice(0, d) for d in lim.factor_dims)] = src
                return TraceClassElement(dst.reshape(-1), like.factor_dims, diagonal=True, validate=False)
            src = lim.to_matrix().reshape(lim.factor_dims + lim.factor_dims)
            dst = np.zeros(like.factor_dims + like.factor_dims, dtype=complex)
            dst[tuple(slice(0, d) for d in lim.factor_dims + lim.factor_dims)] = src
            return TraceClassElement(dst.reshape(like.dim, like.dim), like.factor_dims, validate=False)
        return lim.embed(like.dim, like.factor_dims)

    def distance_to_limit(self, n: int) -> float:
        x = self.element(n)
        lim = self.embedded_limit(x)
        if isinstance(x, PureBipartiteState):
            return pure_trace_distance(x, lim)
        return trace_distance(x, lim)

    def convergence_profile(self) -> np.ndarray:
        return np.asarray([self.distance_to_limit(n) for n in self.n_grid])

    def is_converging(self, slack: float = 1e-10) -> bool:
        """Trace distance to the limit must be nonincreasing over the grid tail."""
        prof = self.convergence_profile()
        tail = prof[len(prof) // 2 :]
        return bool(np.all(np.diff(tail) <= slack))


@dataclass(frozen=True)
class JumpEstimate:
    """Windowed jump estimate of a functional along a sequence.

    ``loss`` is the clamped trailing-window supremum minus the limit value;
    ``gain`` is the symmetric quantity for functionals that are not lower
    semicontinuous.  ``loss_closed_form``, when present, evaluates the
    family's declared asymptotic estimator at the largest grid point.
    """

    values: tuple
    limit_value: float
    tail_sup: float
    tail_inf: float
    loss: ExtendedReal
    gain: ExtendedReal
    window: int
    monotone_tail: bool
    converging: bool
    loss_closed_form: float | None = None

    @property
    def best_loss(self) -> float:
        """Closed-form estimate when declared, else the measured loss."""
        if self.loss_closed_form is not None:
            return self.loss_closed_form
        return float(self.loss)


def _as_float(value) -> float:
    if isinstance(value, ExtendedReal):
        return float(value)
    value = float(value)
    if math.isnan(value):
        raise FunctionalUndefinedError("functional returned NaN")
    return value


def estimate_jump(
    seq: StateSequence,
    functional,
    window: int = DEFAULT_WINDOW,
    closed_form_key: str | None = None,
    check_convergence: bool = True,
) -> JumpEstimate:
    """Evaluate a functional along the grid and form the windowed jump estimate."""
    grid = list(seq.n_grid)
    if len(grid) < 2 * window:
        raise ValueError(f"grid length {len(grid)} below 2 * window = {2 * window}")
    values = []
    for n in grid:
        try:
            values.append(_as_float(functional(seq.element(n))))
        except FunctionalUndefinedError:
            raise
        except (OverflowError, ValueError) as exc:
            raise FunctionalUndefinedError(f"functional failed at n={n}: {exc}") from exc
    limit_value = _as_float(functional(seq.limit))
    tail = values[-window:]
    tail_sup = max(tail)
    tail_inf = min(tail)
    if math.isinf(limit_value):
        loss = ExtendedReal.infinity()
        gain = ExtendedReal(0.0)
    else:
        loss = (
            ExtendedReal.infinity()
            if math.isinf(tail_sup)
            else ExtendedReal(max(tail_sup - limit_value, 0.0))
        )
        gain = ExtendedReal(max(limit_value - tail_inf, 0.0))
    closed = None
    if closed_form_key is not None:
        fn = seq.closed_forms.get(closed_form_key)
        if fn is None:
            raise FunctionalUndefinedError(f"no closed form declared under key {closed_form_key!r}")
        closed = float(fn(grid[-1]))
    if all(math.isfinite(v) for v in tail):
        diffs = np.diff(tail)
        monotone = bool(np.all(diffs <= 1e-12) or np.all(diffs >= -1e-12))
    else:
        monotone = False
    return JumpEstimate(
        values=tuple(values),
        limit_value=limit_value,
        tail_sup=tail_sup,
        tail_inf=tail_inf,
        loss=loss,
        gain=gain,
        window=window,
        monotone_tail=monotone,
        converging=seq.is_converging() if check_convergence else True,
        loss_closed_form=closed,
    )


# ---------------------------------------------------------------------------
# purification lifting
# ---------------------------------------------------------------------------


def _sqrt_state(rho: TraceClassElement) -> np.ndarray | tuple[str, np.ndarray]:
    if rho.diagonal:
        return ("diag", np.sqrt(np.clip(rho.diag, 0.0, None)))
    dec = rho.spectrum()
    w = np.sqrt(np.clip(dec.eigenvalues, 0.0, None))
    return (dec.eigenvectors * w) @ dec.eigenvectors.conj().T


def _polar_unitary(m: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def lift_by_purification(seq: StateSequence, target: PureBipartiteState | None = None) -> StateSequence:
    """Lift a state sequence to pure bipartite states with exact marginals.

    Each rho_n maps to the pure state with amplitude sqrt(rho_n) V, where V
    is the unitary polar factor aligning the canonical purification with the
    requested target (identity when no target is given).  Marginals equal
    rho_n exactly and the lifted sequence converges whenever the original
    does.
    """
    lim = seq.limit
    if isinstance(lim, PureBipartiteState):
        raise IncompatiblePurificationError("sequence is already lifted")
    d0 = lim.dim
    if target is None:
        v_small = None
        amp0 = _sqrt_state(lim)
        limit_pure = (
            PureBipartiteState((d0, d0), schmidt=amp0[1])
            if isinstance(amp0, tuple)
            else PureBipartiteState((d0, d0), dense=amp0)
        )
    else:
        if target.dims != (d0, d0):
            raise IncompatiblePurificationError(
                f"target dims {target.dims} do not purify a dim-{d0} limit"
            )
        if trace_distance(target.marginal(0), lim) > 1e-8:
            raise IncompatiblePurificationError("target marginal does not match the limit")
        m0 = target._dense if target._dense is not None else np.diag(target._schmidt.astype(complex))
        v_small = _polar_unitary(m0)
        limit_pure = target

    def gen(n: int):
        rho = seq.element(n)
        d = rho.dim
        root = _sqrt_state(rho)
        if v_small is None:
            if isinstance(root, tuple):
                return PureBipartiteState((d, d), schmidt=root[1])
            return PureBipartiteState((d, d), dense=root)
        v = np.eye(d, dtype=complex)
        v[:d0, :d0] = v_small
        dense = np.diag(root[1].astype(complex)) if isinstance(root, tuple) else root
        return PureBipartiteState((d, d), dense=dense @ v)

    closed = {}
    if "entropy" in seq.closed_forms:
        base = seq.closed_forms["entropy"]
        closed["marginal_entropy"] = base
        closed["mutual_information"] = lambda n: 2.0 * base(n)
    return StateSequence(
        generator=gen,
        limit=limit_pure,
        n_grid=seq.n_grid,
        tags={**seq.tags, "lifted": True},
        closed_forms=closed,
    )


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------


def make_sharp_sequence(
    hamiltonian: Hamiltonian | None = None,
    energy: float = 1.0,
    n_grid=GRID_DIAG,
) -> StateSequence:
    """The extremal diagonal family with fixed mean energy, converging to the ground state."""
    grid = tuple(int(n) for n in n_grid)
    h = hamiltonian or Hamiltonian.logarithmic(1.0, 0.0, max(grid) + 1)

    def gen(n: int) -> TraceClassElement:
        return sharp_sequence_state(h, energy, n)

    limit = TraceClassElement(np.array([1.0]), diagonal=True, validate=False)

    def closed_entropy(n: int) -> float:
        # concavity bound H(rho_n) >= q_n log n, whose limsup is the true jump
        return sharp_sequence_weight(h, energy, n) * math.log(n)

    return StateSequence(
        generator=gen,
        limit=limit,
        n_grid=grid,
        tags={"family": "sharp", "energy": energy, "hamiltonian": h},
        closed_forms={"entropy": closed_entropy},
    )


def make_mixing_sequence(sigma: TraceClassElement, n_grid=GRID_MEDIUM) -> StateSequence:
    """rho_n = (1/n) sigma + (1 - 1/n) |0><0| in the fixed dimension of sigma."""
    d = sigma.dim
    ground = np.zeros(d)
    ground[0] = 1.0

    def gen(n: int) -> TraceClassElement:
        t = 1.0 / n
        if sigma.diagonal:
            return TraceClassElement(t * sigma.diag + (1 - t) * ground, diagonal=True, validate=False)
        m = t * sigma.to_matrix() + (1 - t) * np.diag(ground.astype(complex))
        return TraceClassElement(m, sigma.factor_dims, validate=False)

    limit = TraceClassElement(ground, diagonal=True, validate=False)
    return StateSequence(gen, limit, tuple(n_grid), tags={"family": "mix_to_pure"})


def make_classical_correlated_sequence(
    hamiltonian: Hamiltonian | None = None,
    energy: float = 1.0,
    n_grid=GRID_MEDIUM,
) -> StateSequence:
    """Perfectly correlated classical bipartite family: joint weight p_n(k) on (k, k)."""
    base = make_sharp_sequence(hamiltonian, energy, n_grid)

    def gen(n: int) -> TraceClassElement:
        p = base.element(n).diag
        d = p.size
        joint = np.zeros((d, d))
        np.fill_diagonal(joint, p)
        return TraceClassElement(joint.reshape(-1), (d, d), diagonal=True, validate=False)

    lim = np.zeros((1, 1))
    lim[0, 0] = 1.0
    limit = TraceClassElement(lim.reshape(-1), (1, 1), diagonal=True, validate=False)
    return StateSequence(
        generator=gen,
        limit=limit,
        n_grid=base.n_grid,
        tags={"family": "classical_correlated", "energy": energy},
        closed_forms={
            "entropy": base.closed_forms["entropy"],
            "marginal_entropy": base.closed_forms["entropy"],
            "mutual_information": base.closed_forms["entropy"],
        },
    )


def make_product_sequence(
    energies=(1.0, 0.5),
    hamiltonian: Hamiltonian | None = None,
    n_grid=GRID_MEDIUM,
) -> StateSequence:
    """Product family rho_n(E1) (x) rho_n(E2) of two sharp sequences."""
    grid = tuple(int(n) for n in n_grid)
    h = hamiltonian or Hamiltonian.logarithmic(1.0, 0.0, max(grid) + 1)
    first = make_sharp_sequence(h, energies[0], grid)
    second = make_sharp_sequence(h, energies[1], grid)

    def gen(n: int) -> TraceClassElement:
        a = first.element(n).diag
        b = second.element(n).diag
        return TraceClassElement(np.kron(a, b), (a.size, b.size), diagonal=True, validate=False)

    limit = TraceClassElement(np.ones(1), (1, 1), diagonal=True, validate=False)
    cf1 = first.closed_forms["entropy"]
    cf2 = second.closed_forms["entropy"]
    return StateSequence(
        generator=gen,
        limit=limit,
        n_grid=grid,
        tags={"family": "product", "energies": tuple(energies)},
        closed_forms={
            "entropy": lambda n: cf1(n) + cf2(n),
            "marginal_entropy": cf1,
            "marginal_entropy_b": cf2,
        },
    )


def make_classical_triple_sequence(
    hamiltonian: Hamiltonian | None = None,
    energy: float = 1.0,
    n_grid=GRID_MEDIUM,
) -> StateSequence:
    """Classical tripartite family supported on (k, k mod 2, k)."""
    base = make_sharp_sequence(hamiltonian, energy, n_grid)

    def gen(n: int) -> TraceClassElement:
        p = base.element(n).diag
        d = p.size
        joint = np.zeros((d, 2, d))
        ks = np.arange(d)
        joint[ks, ks % 2, ks] = p
        return TraceClassElement(joint.reshape(-1), (d, 2, d), diagonal=True, validate=False)

    lim = np.zeros((1, 2, 1))
    lim[0, 0, 0] = 1.0
    limit = TraceClassElement(lim.reshape(-1), (1, 2, 1), diagonal=True, validate=False)
    return StateSequence(
        generator=gen,
        limit=limit,
        n_grid=base.n_grid,
        tags={"family": "classical_triple", "energy": energy},
        closed_forms={"entropy": base.closed_forms["entropy"]},
    )


def make_rotated_sharp_sequence(
    hamiltonian: Hamiltonian | None = None,
    energy: float = 1.0,
    n_grid=GRID_DENSE,
    seed: int = 7,
) -> StateSequence:
    """Dense family U_n rho_n U_n^dag with a seeded rotation of the excited block.

    The ground level is left fixed, so the limit remains |0><0| and the
    computational-basis pinching has the same limit value as the entropy.
    """
    grid = tuple(int(n) for n in n_grid)
    base = make_sharp_sequence(hamiltonian, energy, grid)

    def rotation(d: int) -> np.ndarray:
        rng = np.random.default_rng((seed, d))
        g = rng.standard_normal((d - 1, d - 1)) + 1j * rng.standard_normal((d - 1, d - 1))
        q, r = np.linalg.qr(g)
        q = q * (np.diagonal(r) / np.abs(np.diagonal(r))).conj()
        u = np.eye(d, dtype=complex)
        u[1:, 1:] = q
        return u

    def gen(n: int) -> TraceClassElement:
        diag = base.element(n).diag
        # nonuniform excited weights keep the pinched distribution strictly
        # mixed relative to the spectrum
        d = diag.size
        w = np.linspace(1.0, 2.0, d - 1)
        w = w / w.sum() * diag[1:].sum()
        full = np.concatenate([[diag[0]], w])
        u = rotation(d)
        return TraceClassElement((u * full) @ u.conj().T, validate=False)

    limit = TraceClassElement(np.array([1.0]), diagonal=True, validate=False)
    return StateSequence(gen, limit, grid, tags={"family": "rotated_sharp", "energy": energy})


def builtin_families() -> dict:
    """Registry of deterministic sequence constructors with documented limits."""
    return {
        "sharp": make_sharp_sequence,
        "sharp_lifted": lambda **kw: lift_by_purification(make_sharp_sequence(**kw)),
        "mix_to_pure": make_mixing_sequence,
        "classical_correlated": make_classical_correlated_sequence,
        "product": make_product_sequence,
        "classical_triple": make_classical_triple_sequence,
        "rotated_sharp": make_rotated_sharp_sequence,
    }
