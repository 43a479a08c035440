"""Von Neumann entropy and global quantum discord (GQD) of N-qubit states.

The GQD is evaluated in its measured-diagonal form

    GQD(rho) = min_R { H(diag R^+ rho R) - sum_j H(diag R_j^+ rho_j R_j) }
               + sum_j S(rho_j) - S(rho)

where ``H`` is the Shannon entropy of a probability vector, ``S`` the von
Neumann entropy (both in bits), ``rho_j`` the single-qubit marginals and
``R = R_1 (x) ... (x) R_N`` a product of local rotations

    R_j(theta, phi) = cos(theta) 1 + i sin(theta) cos(phi) sigma_y
                      + i sin(theta) sin(phi) sigma_x
                    = [[cos(theta),  sin(theta) e^{i phi}],
                       [-sin(theta) e^{-i phi}, cos(theta)]].

Rotating the computational axis by ``2 theta`` about an in-plane axis
reaches every measurement direction, so this two-angle family covers all
local projective (von Neumann) measurements.  The angles
``theta in [0, pi/2]``, ``phi in [0, 2 pi)`` form a fundamental domain for the
measured projector sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import log, pi

import numpy as np
from scipy.optimize import minimize
from scipy.special import entr
from scipy.stats import qmc

from .dynamics import n_qubits, reduce_to_qubit
from .model import InvalidStateError, NumericalError

LN2 = log(2.0)

EIGENVALUE_FLOOR = -1e-6
PROBABILITY_FLOOR = -1e-10
NEGATIVE_GQD_TOL = 1e-9


@dataclass(frozen=True)
class MeasurementFrame:
    """Local rotation angles, wrapped to ``theta in [0, pi)`` and ``phi in [0, 2 pi)``.

    Shifting ``theta`` by ``pi`` only flips the sign of ``R_j``, which leaves
    the measured projectors unchanged.
    """

    thetas: np.ndarray
    phis: np.ndarray

    def __post_init__(self):
        thetas = np.mod(np.asarray(self.thetas, dtype=float), pi)
        phis = np.mod(np.asarray(self.phis, dtype=float), 2 * pi)
        if thetas.shape != phis.shape or thetas.ndim != 1 or thetas.size == 0:
            raise ValueError("thetas and phis must be non-empty 1-d arrays of equal length")
        # mod can round up to the period itself
        thetas[thetas >= pi] = 0.0
        phis[phis >= 2 * pi] = 0.0
        thetas.setflags(write=False)
        phis.setflags(write=False)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "phis", phis)

    @classmethod
    def zeros(cls, n_qubits: int) -> "MeasurementFrame":
        return cls(np.zeros(n_qubits), np.zeros(n_qubits))

    @classmethod
    def from_vector(cls, x) -> "MeasurementFrame":
        """Inverse of :meth:`as_vector`: ``[theta_1..theta_N, phi_1..phi_N]``."""
        x = np.asarray(x, dtype=float)
        N = x.size // 2
        return cls(x[:N], x[N:])

    @property
    def n_qubits(self) -> int:
        return self.thetas.size

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.thetas, self.phis])


@dataclass(frozen=True)
class GqdResult:
    value: float
    argmin: MeasurementFrame
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class OptimizerOptions:
    """Settings of the two-stage GQD minimizer.

    Stage 1 scores a deterministic set of candidate frames: the full product
    grid ``theta in {0, pi/(2(theta_steps-1)), ..., pi/2}``,
    ``phi in {0, 2pi/phi_steps, ...}`` when it has at most
    ``max_grid_points`` frames, otherwise every frame with all qubits on the
    same grid point plus ``sample_points`` unscrambled Sobol frames.  Stage 2
    runs Nelder-Mead from the ``multistarts`` best candidates (and from any
    extra starts handed to :func:`minimize_gqd`).
    """

    multistarts: int = 4
    theta_steps: int = 5
    phi_steps: int = 8
    max_grid_points: int = 4096
    sample_points: int = 1024
    initial_step: float = pi / 16
    fatol: float = 1e-8
    xatol: float = 1e-4
    max_evaluations: int = 2000
    agreement_tol: float = 1e-6

    def __post_init__(self):
        if self.multistarts < 1:
            raise ValueError("multistarts must be at least 1")
        if self.theta_steps < 1 or self.phi_steps < 1:
            raise ValueError("grid resolutions must be at least 1")
        if self.max_evaluations < 1 or self.fatol <= 0 or self.xatol <= 0:
            raise ValueError("invalid convergence settings")


def shannon_entropy(probs, axis=-1) -> np.ndarray:
    """Shannon entropy in bits along ``axis`` with ``0 log 0 = 0``."""
    p = np.asarray(probs, dtype=float)
    if p.size and p.min() < PROBABILITY_FLOOR:
        raise InvalidStateError(f"negative probability {p.min():.3e}")
    return entr(np.clip(p, 0.0, 1.0)).sum(axis=axis) / LN2


def von_neumann_entropy(rho) -> float:
    """``-Tr rho log2 rho`` in bits."""
    lam = np.linalg.eigvalsh(np.asarray(rho))
    if lam.min() < EIGENVALUE_FLOOR:
        raise InvalidStateError(f"eigenvalue {lam.min():.3e} below {EIGENVALUE_FLOOR}")
    return float(entr(np.clip(lam, 0.0, 1.0)).sum() / LN2)


def local_rotations(thetas, phis) -> np.ndarray:
    """Stack of 2x2 rotations, shape ``thetas.shape + (2, 2)``."""
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    c = np.cos(thetas)
    s = np.sin(thetas)
    e = np.exp(1j * phis)
    out = np.empty(thetas.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = s * e
    out[..., 1, 0] = -s * e.conj()
    out[..., 1, 1] = c
    return out


def rotation_matrix(frame: MeasurementFrame) -> np.ndarray:
    """``R = R_1 (x) ... (x) R_N``, atom 1 acting on the most significant qubit."""
    return reduce(np.kron, local_rotations(frame.thetas, frame.phis))


def _batch_kron(factors: np.ndarray) -> np.ndarray:
    """Kronecker product over axis -3 of a ``(..., N, 2, 2)`` stack."""
    R = factors[..., 0, :, :]
    for j in range(1, factors.shape[-3]):
        d = R.shape[-1]
        R = (R[..., :, None, :, None] * factors[..., j, None, :, None, :]).reshape(R.shape[:-2] + (2 * d, 2 * d))
    return R


def measured_diagonals(rho_T, frame: MeasurementFrame):
    """Outcome probabilities of the rotated product measurement.

    Returns ``(totals, singles)``: the ``2**N`` diagonal of ``R^+ rho R`` and
    an ``(N, 2)`` array with the diagonal of ``R_j^+ rho_j R_j`` per atom.
    """
    rho = np.asarray(rho_T)
    N = n_qubits(rho.shape[0])
    if frame.n_qubits != N:
        raise ValueError(f"frame has {frame.n_qubits} qubits, state has {N}")
    R = rotation_matrix(frame)
    totals = np.einsum("ak,ab,bk->k", R.conj(), rho, R).real
    rots = local_rotations(frame.thetas, frame.phis)
    singles = np.array([
        np.einsum("ak,ab,bk->k", rots[j].conj(), np.asarray(reduce_to_qubit(rho, j)), rots[j]).real
        for j in range(N)
    ])
    return totals, singles


class GqdObjective:
    """GQD objective for one fixed state, evaluated on frame vectors.

    ``x = [theta_1..theta_N, phi_1..phi_N]``.  Counts every frame it scores
    in ``calls``.
    """

    def __init__(self, rho_T):
        rho = np.asarray(rho_T, dtype=complex)
        self.rho = rho
        self.n_qubits = n_qubits(rho.shape[0])
        self.marginals = np.array([np.asarray(reduce_to_qubit(rho, j)) for j in range(self.n_qubits)])
        self.offset = sum(von_neumann_entropy(m) for m in self.marginals) - von_neumann_entropy(rho)
        self.calls = 0

    def _score(self, rots: np.ndarray) -> np.ndarray:
        R = _batch_kron(rots)
        totals = (R.conj() * np.matmul(self.rho, R)).sum(axis=-2).real
        singles = (rots.conj() * np.matmul(self.marginals, rots)).sum(axis=-2).real
        return shannon_entropy(totals) - shannon_entropy(singles).sum(axis=-1) + self.offset

    def batch(self, X, chunk: int = 512) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        N = self.n_qubits
        out = np.empty(len(X))
        for start in range(0, len(X), chunk):
            xs = X[start:start + chunk]
            out[start:start + chunk] = self._score(local_rotations(xs[:, :N], xs[:, N:]))
        self.calls += len(X)
        return out

    def __call__(self, x) -> float:
        N = self.n_qubits
        self.calls += 1
        return float(self._score(local_rotations(x[:N], x[N:])))


def gqd_objective(rho_T, frame: MeasurementFrame) -> float:
    """Objective value at a single frame, in bits."""
    totals, singles = measured_diagonals(rho_T, frame)
    rho = np.asarray(rho_T)
    N = frame.n_qubits
    marginal_entropy = sum(von_neumann_entropy(reduce_to_qubit(rho, j)) for j in range(N))
    return float(
        shannon_entropy(totals) - von_neumann_entropy(rho)
        - (shannon_entropy(singles).sum() - marginal_entropy)
    )


def candidate_frames(n_qubits: int, options: OptimizerOptions) -> np.ndarray:
    """Stage-1 frame vectors in a fixed order (see :class:`OptimizerOptions`)."""
    N = n_qubits
    thetas = np.linspace(0, pi / 2, options.theta_steps) if options.theta_steps > 1 else np.zeros(1)
    phis = 2 * pi * np.arange(options.phi_steps) / options.phi_steps
    per_qubit = np.array([(t, p) for t in thetas for p in phis])
    n_per = len(per_qubit)
    if n_per**N <= options.max_grid_points:
        idx = np.indices((n_per,) * N).reshape(N, -1).T
        pts = per_qubit[idx]  # (G, N, 2)
        return np.concatenate([pts[:, :, 0], pts[:, :, 1]], axis=1)
    symmetric = np.concatenate([np.repeat(per_qubit[:, :1], N, 1), np.repeat(per_qubit[:, 1:], N, 1)], axis=1)
    if options.sample_points <= 0:
        return symmetric
    m = int(np.ceil(np.log2(options.sample_points)))
    u = qmc.Sobol(2 * N, scramble=False).random_base2(m)[: options.sample_points]
    sobol = np.concatenate([u[:, :N] * (pi / 2), u[:, N:] * (2 * pi)], axis=1)
    return np.concatenate([symmetric, sobol])


def _lexicographic_key(value: float, x: np.ndarray):
    return (value, tuple(MeasurementFrame.from_vector(x).as_vector()))


def minimize_gqd(rho_T, options: OptimizerOptions | None = None, starts=()) -> GqdResult:
    """Global quantum discord (bits) by grid multistart + Nelder-Mead refinement.

    ``starts`` are extra initial frames (``MeasurementFrame`` or vectors),
    e.g. the minimizer of a neighbouring time point; they are refined in
    addition to the grid-selected ones.
    """
    options = options or OptimizerOptions()
    objective = GqdObjective(rho_T)
    N = objective.n_qubits

    grid = candidate_frames(N, options)
    scores = objective.batch(grid)
    order = np.lexsort((np.arange(len(scores)), scores))
    chosen = []
    for i in order:
        if len(chosen) == options.multistarts:
            break
        if not any(np.allclose(grid[i], grid[c]) for c in chosen):
            chosen.append(i)
    initial = [grid[i] for i in chosen]
    initial += [s.as_vector() if isinstance(s, MeasurementFrame) else np.asarray(s, float) for s in starts]

    step = options.initial_step
    refined = []
    for x0 in initial:
        simplex = np.vstack([x0, x0 + step * np.eye(2 * N)])
        res = minimize(
            objective, x0, method="Nelder-Mead",
            options=dict(initial_simplex=simplex, fatol=options.fatol, xatol=options.xatol,
                         maxfev=options.max_evaluations),
        )
        refined.append((float(res.fun), res.x, bool(res.success)))

    refined.sort(key=lambda r: _lexicographic_key(r[0], r[1]))
    value, x, success = refined[0]
    if len(refined) > 1:
        converged = refined[1][0] - value <= options.agreement_tol
    else:
        converged = success
    if value < 0:
        if value < -NEGATIVE_GQD_TOL:
            raise NumericalError(f"GQD objective went negative ({value:.3e}); input is not a valid state")
        value = 0.0
    return GqdResult(value, MeasurementFrame.from_vector(x), objective.calls, converged)


def _relative_entropy_nats(a: np.ndarray, b: np.ndarray) -> float:
    """``Tr a ln a - Tr a ln b`` via eigendecompositions (``0 ln 0 = 0``)."""
    la = np.linalg.eigvalsh(a)
    la = la[la > 1e-300]
    lb, vb = np.linalg.eigh(b)
    weights = np.einsum("ak,ab,bk->k", vb.conj(), a, vb).real
    cross = 0.0
    for w, lam in zip(weights, lb):
        if lam > 1e-14:
            cross += w * np.log(lam)
        elif w > 1e-12:
            return np.inf
    return float(np.sum(la * np.log(la)) - cross)


def _dephase(rho: np.ndarray, R: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho, dtype=complex)
    for k in range(R.shape[1]):
        P = np.outer(R[:, k], R[:, k].conj())
        out += P @ rho @ P
    return out


def gqd_relative_entropy_form(rho_T, frame: MeasurementFrame) -> float:
    """``S(rho || Pi(rho)) - sum_j S(rho_j || Pi_j(rho_j))`` in bits for one frame.

    Builds the dephased states from explicit projectors; used to cross-check
    :func:`gqd_objective`, which it must equal for every frame.
    """
    rho = np.asarray(rho_T, dtype=complex)
    N = frame.n_qubits
    total = _relative_entropy_nats(rho, _dephase(rho, rotation_matrix(frame)))
    rots = local_rotations(frame.thetas, frame.phis)
    for j in range(N):
        rho_j = np.asarray(reduce_to_qubit(rho, j))
        total -= _relative_entropy_nats(rho_j, _dephase(rho_j, rots[j]))
    return total / LN2
