"""Configuration types, the excitation-sector basis and the initial state.

The atoms and the field mode are never represented in the full (infinite)
product space.  The interaction conserves the number of excitations, so a
Fock initial state only explores one sector of dimension ``2**N``:

    |c, n + N - k(c)>,   c in {0, 1}**N,   k(c) = number of excited atoms.

Basis states are ordered by the integer value of the atomic bitstring with
atom 1 as the most significant bit.  Index 0 is therefore the all-ground
state carrying ``n + N`` photons and the last index is the all-excited state
carrying ``n`` photons.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import pi

import numpy as np

MAX_ATOMS = 12

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_FLOOR = -1e-9


class InvalidStateError(ValueError):
    """A matrix failed the density-matrix checks (Hermitian, unit trace, PSD)."""


class NumericalError(RuntimeError):
    """A linear-algebra routine failed to produce a usable result."""


@dataclass(frozen=True)
class SystemConfig:
    """Physical parameters of the atoms + field mode.

    Energies are in units where ``coupling`` sets the scale; times are always
    reported as the dimensionless product ``coupling * t``.
    """

    n_atoms: int
    n_photons: int = 0
    coupling: float = 1.0
    atom_freq: float = 1.0
    field_freq: float = 1.0
    decoherence: float = 0.0

    def __post_init__(self):
        if int(self.n_atoms) != self.n_atoms or not 1 <= self.n_atoms <= MAX_ATOMS:
            raise ValueError(f"n_atoms must be an integer in [1, {MAX_ATOMS}], got {self.n_atoms}")
        if int(self.n_photons) != self.n_photons or self.n_photons < 0:
            raise ValueError(f"n_photons must be a non-negative integer, got {self.n_photons}")
        if not self.coupling > 0:
            raise ValueError(f"coupling must be positive, got {self.coupling}")
        if self.atom_freq < 0 or self.field_freq < 0:
            raise ValueError("frequencies must be non-negative")
        if not self.decoherence >= 0:
            raise ValueError(f"decoherence must be non-negative, got {self.decoherence}")
        object.__setattr__(self, "n_atoms", int(self.n_atoms))
        object.__setattr__(self, "n_photons", int(self.n_photons))

    @property
    def detuning(self) -> float:
        return self.atom_freq - self.field_freq

    @property
    def dim(self) -> int:
        return 2**self.n_atoms


@dataclass(frozen=True)
class InitialStateParams:
    """Mixing probability ``p`` and superposition angle ``alpha`` of the initial state."""

    mixing_prob: float = 0.0
    superposition_angle: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.mixing_prob <= 1.0:
            raise ValueError(f"mixing_prob must lie in [0, 1], got {self.mixing_prob}")
        if not 0.0 <= self.superposition_angle <= pi:
            raise ValueError(f"superposition_angle must lie in [0, pi], got {self.superposition_angle}")


@dataclass(frozen=True)
class SectorBasis:
    """Ordered basis of one excitation sector.

    ``states[i]`` is ``(bits, photon_count)`` where ``bits[j]`` is 1 when atom
    ``j + 1`` is excited.
    """

    n_atoms: int
    n_photons: int
    states: tuple

    def __len__(self):
        return len(self.states)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def excitations(self) -> np.ndarray:
        """Number of excited atoms ``k(c)`` for every basis state."""
        return np.array([sum(bits) for bits, _ in self.states], dtype=int)

    @property
    def photon_counts(self) -> np.ndarray:
        return np.array([count for _, count in self.states], dtype=int)

    def label(self, index: int) -> str:
        bits, count = self.states[index]
        return "".join("e" if b else "g" for b in bits) + f",{count}"


class StateKind(enum.Enum):
    FULL_SECTOR = "FullSector"
    ATOMS_ONLY = "AtomsOnly"
    SINGLE_QUBIT = "SingleQubit"


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix.

    The entries are copied into a read-only complex array.  Supports
    ``np.asarray(rho)`` so it can be handed straight to numpy routines.
    """

    entries: np.ndarray
    kind: StateKind = StateKind.FULL_SECTOR
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InvalidStateError(f"density matrix must be square, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        if self.validate:
            check_density_matrix(arr)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def check_density_matrix(rho, hermitian_tol=HERMITIAN_TOL, trace_tol=TRACE_TOL, psd_floor=PSD_FLOOR):
    """Raise :class:`InvalidStateError` unless ``rho`` is a valid density matrix."""
    rho = np.asarray(rho)
    asym = np.max(np.abs(rho - rho.conj().T))
    if asym > hermitian_tol:
        raise InvalidStateError(f"matrix is not Hermitian (max |rho - rho^dag| = {asym:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise InvalidStateError(f"trace is {tr.real:.15g}, expected 1")
    lam_min = np.linalg.eigvalsh(rho).min()
    if lam_min < psd_floor:
        raise InvalidStateError(f"matrix is not positive semidefinite (min eigenvalue {lam_min:.3e})")


def build_basis(config: SystemConfig) -> SectorBasis:
    """Enumerate the ``2**N`` sector states in canonical binary order."""
    N = config.n_atoms
    if not 1 <= N <= MAX_ATOMS:
        raise ValueError(f"n_atoms must lie in [1, {MAX_ATOMS}]")
    states = []
    for index in range(2**N):
        bits = tuple((index >> (N - 1 - j)) & 1 for j in range(N))
        states.append((bits, config.n_photons + N - sum(bits)))
    return SectorBasis(N, config.n_photons, tuple(states))


def initial_state(basis: SectorBasis, params: InitialStateParams) -> DensityMatrix:
    """``(1 - p)|psi><psi| + p|b0><b0|`` with ``|psi> = cos(a)|b0> + sin(a)|b_last>``.

    ``b0`` is the all-ground sector state and ``b_last`` the all-excited one,
    so the photon label ``n`` of the config names the sector.
    """
    dim = basis.dim
    p = params.mixing_prob
    alpha = params.superposition_angle
    psi = np.zeros(dim)
    psi[0] = np.cos(alpha)
    psi[-1] += np.sin(alpha)
    rho = (1 - p) * np.outer(psi, psi)
    rho[0, 0] += p
    return DensityMatrix(rho, StateKind.FULL_SECTOR)
