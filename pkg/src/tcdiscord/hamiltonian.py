"""Sector Hamiltonian of N identical two-level atoms coupled to one field mode.

Inside the excitation sector the rotating-wave interaction only connects
basis states whose atomic bitstrings differ by one flipped atom.  The
coupling between such a pair is ``g * sqrt(n + k_max)`` where ``k_max`` is
the excitation number of the more excited state; for N = 2 this reproduces
the published 4x4 matrix, and for N = 3, 4, 5 the published element lists.

On resonance the free part of the Hamiltonian is a constant over the sector
and is dropped, so the diagonal is identically zero.  Off resonance the
diagonal carries ``(k - N/2) * (atom_freq - field_freq)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ._appendix import RAW_LISTS
from .model import NumericalError, SectorBasis, SystemConfig

# 1-based (row, col) pairs of the published lists that contradict the
# builder.  "wrong": listed couplings between states that differ in two
# atoms.  "missing": single-flip couplings the lists omit; (14,16), (15,16)
# and (21,29) look like the intended partners of the wrong ones, (9,13) is a
# plain omission.
APPENDIX_ERRATA = {
    3: {"wrong": set(), "missing": set()},
    4: {
        "wrong": {(12, 14), (14, 12), (12, 15), (15, 12)},
        "missing": {(9, 13), (13, 9), (14, 16), (16, 14), (15, 16), (16, 15)},
    },
    5: {
        "wrong": {(12, 14), (14, 12), (12, 15), (15, 12), (12, 29), (29, 12)},
        "missing": {(9, 13), (13, 9), (14, 16), (16, 14), (15, 16), (16, 15), (21, 29), (29, 21)},
    },
}


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Real symmetric sector Hamiltonian (energy units)."""

    entries: np.ndarray
    detuning_included: bool = False

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def matrix(self) -> np.ndarray:
        """Reassemble ``V diag(E) V^T``."""
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


@dataclass
class ValidationReport:
    """Element-wise comparison of a built Hamiltonian with a published list.

    Indices are 1-based to match the published notation.  ``wrong`` holds
    listed entries whose value differs from the builder (value zero included);
    ``missing`` holds builder couplings the list leaves out, which the list
    implicitly declares zero.
    """

    n_atoms: int
    m: int
    wrong: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    n_listed: int = 0

    @property
    def disagreements(self) -> list:
        return self.wrong + self.missing

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def within_errata(self) -> bool:
        """True when every disagreement is a documented erratum."""
        errata = APPENDIX_ERRATA[self.n_atoms]
        wrong = {(i, j) for i, j, _, _ in self.wrong}
        missing = {(i, j) for i, j, _ in self.missing}
        return wrong <= errata["wrong"] and missing <= errata["missing"]

    def summary(self) -> str:
        lines = [f"N={self.n_atoms} m={self.m}: {self.n_listed} listed entries, "
                 f"{len(self.wrong)} wrong, {len(self.missing)} missing"]
        for i, j, listed, built in self.wrong:
            lines.append(f"  a[{i},{j}] listed {listed:.12g}, builder {built:.12g}")
        for i, j, built in self.missing:
            lines.append(f"  a[{i},{j}] not listed (implied 0), builder {built:.12g}")
        return "\n".join(lines)


def build_hamiltonian(basis: SectorBasis, config: SystemConfig) -> HamiltonianMatrix:
    """Sector matrix of the Tavis-Cummings Hamiltonian in ``basis`` order."""
    if basis.n_atoms != config.n_atoms or basis.n_photons != config.n_photons:
        raise ValueError("basis does not belong to this configuration")
    N, n, g = config.n_atoms, config.n_photons, config.coupling
    dim = basis.dim
    k = basis.excitations
    H = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(N):
            flip = 1 << (N - 1 - j)
            if i & flip:
                continue
            upper = i | flip
            value = g * np.sqrt(n + k[upper])
            H[i, upper] = value
            H[upper, i] = value
    detuned = config.detuning != 0.0
    if detuned:
        H[np.diag_indices(dim)] = (k - N / 2) * config.detuning
    return HamiltonianMatrix(H, detuned)


def eigendecompose(H) -> Spectrum:
    """Symmetric eigendecomposition with eigenvalues sorted ascending."""
    A = np.asarray(H, dtype=float)
    if not np.all(np.isfinite(A)):
        raise NumericalError("Hamiltonian has non-finite entries")
    try:
        E, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigendecomposition failed for a {A.shape[0]}x{A.shape[0]} matrix "
            f"(condition number {np.linalg.cond(A):.3e}): {exc}"
        ) from exc
    if not (np.all(np.isfinite(E)) and np.all(np.isfinite(V))):
        raise NumericalError("eigendecomposition produced non-finite values")
    return Spectrum(E, V)


def appendix_entries(n_atoms: int) -> dict:
    """Parse the published list for ``n_atoms`` into ``{(i, j): K}`` (1-based)."""
    if n_atoms not in RAW_LISTS:
        raise ValueError("published lists exist only for N = 3, 4, 5")
    raw = RAW_LISTS[n_atoms]
    entries = {}
    pending = []
    for match in re.finditer(r"a_\{(\d+),(\d+)\}|\\sqrt\{(\d+)\+m\}", raw):
        if match.group(3) is None:
            pending.append((int(match.group(1)), int(match.group(2))))
        else:
            for pair in pending:
                entries[pair] = int(match.group(3))
            pending = []
    return entries


def validate_against_appendix(H, n_atoms: int, m: int) -> ValidationReport:
    """Compare a resonant, ``g = 1`` Hamiltonian built with ``n = m`` to the published list."""
    H = np.asarray(H, dtype=float)
    listed = appendix_entries(n_atoms)
    if H.shape != (2**n_atoms, 2**n_atoms):
        raise ValueError(f"expected a {2**n_atoms}x{2**n_atoms} matrix")
    report = ValidationReport(n_atoms, m, n_listed=len(listed))
    for (i, j), K in sorted(listed.items()):
        value = np.sqrt(K + m)
        built = H[i - 1, j - 1]
        if not np.isclose(built, value, rtol=0, atol=1e-12):
            report.wrong.append((i, j, value, built))
    rows, cols = np.nonzero(H)
    for r, c in zip(rows, cols):
        if r != c and (r + 1, c + 1) not in listed:
            report.missing.append((r + 1, c + 1, H[r, c]))
    return report
