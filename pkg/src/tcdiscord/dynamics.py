"""Intrinsic-decoherence evolution and reduced states.

In the energy eigenbasis the decoherence master equation

    d rho/dt = -i[H, rho] - (gamma/2) [H, [H, rho]]

decouples element by element, so

    rho_ij(t) = exp(-(gamma t / 2)(E_i - E_j)**2 - i (E_i - E_j) t) rho_ij(0).

The diagonal (and every degenerate block) keeps a factor of exactly one,
which is what makes the evolution trace preserving.  Times are scaled times
``g * t``; the Hamiltonian is assumed to be expressed in units of ``g``
when ``coupling == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import Spectrum
from .model import DensityMatrix, SectorBasis, StateKind

DEFAULT_T_END = 10.0
DEFAULT_STEP = 0.01


@dataclass(frozen=True)
class EvolutionKernel:
    spectrum: Spectrum
    gamma: float
    rho0_eigenbasis: np.ndarray

    @classmethod
    def from_state(cls, spectrum: Spectrum, rho0, gamma: float = 0.0) -> "EvolutionKernel":
        """Rotate ``rho0`` (sector basis) into the eigenbasis of ``spectrum``."""
        if gamma < 0:
            raise ValueError("gamma must be non-negative")
        V = spectrum.eigenvectors
        rho_e = V.T @ np.asarray(rho0, dtype=complex) @ V
        rho_e = 0.5 * (rho_e + rho_e.conj().T)
        rho_e.setflags(write=False)
        return cls(spectrum, float(gamma), rho_e)

    @property
    def gaps(self) -> np.ndarray:
        E = self.spectrum.eigenvalues
        return E[:, None] - E[None, :]


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray
    quantifier_name: str = ""

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.times)


def evolve(kernel: EvolutionKernel, t: float) -> DensityMatrix:
    """Full sector state at scaled time ``t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    gaps = kernel.gaps
    factor = np.exp(-0.5 * kernel.gamma * t * gaps**2 - 1j * gaps * t)
    V = kernel.spectrum.eigenvectors
    rho = V @ (factor * kernel.rho0_eigenbasis) @ V.T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho, StateKind.FULL_SECTOR)


def master_equation_rhs(H, rho, gamma: float) -> np.ndarray:
    """Right-hand side ``-i[H, rho] - (gamma/2)[H, [H, rho]]``."""
    H = np.asarray(H)
    rho = np.asarray(rho)
    comm = H @ rho - rho @ H
    return -1j * comm - 0.5 * gamma * (H @ comm - comm @ H)


def check_master_equation(kernel: EvolutionKernel, dt: float = 1e-5) -> float:
    """Max-norm residual of a forward difference of :func:`evolve` against the master equation.

    The residual is first order in ``dt``; it measures how well the closed
    form solves the differential equation it was derived from.
    """
    if not 0 < dt <= 1e-4:
        raise ValueError("dt must lie in (0, 1e-4]")
    rho0 = np.asarray(evolve(kernel, 0.0))
    rho_dt = np.asarray(evolve(kernel, dt))
    rhs = master_equation_rhs(kernel.spectrum.matrix(), rho0, kernel.gamma)
    return float(np.max(np.abs((rho_dt - rho0) / dt - rhs)))


def trace_out_field(rho, basis: SectorBasis) -> DensityMatrix:
    """Atomic state: keep only coherences between states with equal photon number."""
    rho = np.asarray(rho)
    counts = basis.photon_counts
    if rho.shape != (basis.dim, basis.dim):
        raise ValueError("state does not match the basis dimension")
    same_fock = counts[:, None] == counts[None, :]
    return DensityMatrix(np.where(same_fock, rho, 0.0), StateKind.ATOMS_ONLY)


def n_qubits(dim: int) -> int:
    N = dim.bit_length() - 1
    if dim != 1 << N or N < 1:
        raise ValueError(f"dimension {dim} is not a power of two")
    return N


def reduce_to_qubit(rho_atoms, j: int) -> DensityMatrix:
    """Partial trace over every atom except ``j`` (0-based)."""
    rho = np.asarray(rho_atoms)
    N = n_qubits(rho.shape[0])
    if not 0 <= j < N:
        raise IndexError(f"atom index {j} out of range for {N} atoms")
    rest = 2 ** (N - 1)
    t = np.moveaxis(rho.reshape((2,) * (2 * N)), (j, N + j), (0, 1)).reshape(2, 2, rest, rest)
    return DensityMatrix(np.einsum("abii->ab", t), StateKind.SINGLE_QUBIT)


def purity(rho) -> float:
    """``Tr rho**2``."""
    rho = np.asarray(rho)
    return float(np.vdot(rho, rho).real)


def time_grid(t_start: float = 0.0, t_end: float = DEFAULT_T_END, step: float = DEFAULT_STEP) -> np.ndarray:
    """Uniform grid from ``t_start`` in steps of ``step``, not exceeding ``t_end``."""
    if step <= 0:
        raise ValueError("step must be positive")
    if t_end < t_start:
        raise ValueError("t_end must not precede t_start")
    n_steps = int(np.floor((t_end - t_start) / step + 1e-9))
    return t_start + step * np.arange(n_steps + 1)


def auto_step(spectrum: Spectrum, step: float = DEFAULT_STEP) -> float:
    """``min(step, 0.2 / largest energy gap)``, resolving the fastest oscillation."""
    spread = spectrum.eigenvalues[-1] - spectrum.eigenvalues[0]
    return min(step, 0.2 / spread) if spread > 0 else step
