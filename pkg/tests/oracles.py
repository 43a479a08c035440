"""Reference computations that share no code with the package."""

import numpy as np


def _entropy_bits(p, axis):
    p = np.clip(p, 0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log2(p), 0.0)
    return terms.sum(axis=axis)


def _vn_bits(rho):
    lam = np.linalg.eigvalsh(rho)
    return float(_entropy_bits(lam, 0))


def single_qubit_bases(points):
    """Measurement bases on a ``points x points`` grid of (theta, phi); columns are basis vectors."""
    theta = np.linspace(0, np.pi / 2, points)
    phi = 2 * np.pi * np.arange(points) / points
    T, F = (a.ravel() for a in np.meshgrid(theta, phi, indexing="ij"))
    B = np.empty((T.size, 2, 2), dtype=complex)
    B[:, 0, 0] = np.cos(T)
    B[:, 1, 0] = -np.sin(T) * np.exp(-1j * F)
    B[:, 0, 1] = np.sin(T) * np.exp(1j * F)
    B[:, 1, 1] = np.cos(T)
    return B


def two_qubit_grid_minimum(rho, points=36):
    """Minimum of the GQD objective over every pair of grid bases (``points**4`` frames)."""
    B = single_qubit_bases(points)
    rho4 = np.asarray(rho).reshape(2, 2, 2, 2)  # (a, b; c, d)
    C = np.einsum("uak,uck->ukac", B.conj(), B)
    A = np.einsum("ukac,abcd->ukbd", C, rho4)
    D = np.einsum("vbl,vdl->vlbd", B.conj(), B)
    T = np.einsum("ukbd,vlbd->ukvl", A, D).real  # P(k on qubit 1 with basis u, l on qubit 2 with v)
    joint = _entropy_bits(T, (1, 3))
    m1 = _entropy_bits(T.sum(axis=3)[:, :, 0], 1)  # marginal of qubit 1, independent of v
    m2 = _entropy_bits(T.sum(axis=1)[0], 1)        # marginal of qubit 2
    r1 = np.einsum("abcb->ac", rho4)
    r2 = np.einsum("abad->bd", rho4)
    offset = _vn_bits(r1) + _vn_bits(r2) - _vn_bits(rho)
    values = joint - m1[:, None] - m2[None, :] + offset
    return float(values.min())


def objective_from_projectors(rho, bases):
    """GQD objective for one product frame given as a list of 2x2 basis matrices (qubit 1 first)."""
    rho = np.asarray(rho)
    N = len(bases)
    full = bases[0]
    for b in bases[1:]:
        full = np.kron(full, b)
    totals = np.array([np.vdot(full[:, k], rho @ full[:, k]).real for k in range(2**N)])
    value = _entropy_bits(totals, 0) - _vn_bits(rho)
    t = rho.reshape((2,) * (2 * N))
    for j in range(N):
        marg = np.trace(np.moveaxis(t, (j, N + j), (0, 1)).reshape(2, 2, 2 ** (N - 1), 2 ** (N - 1)),
                        axis1=2, axis2=3)
        singles = np.array([np.vdot(bases[j][:, k], marg @ bases[j][:, k]).real for k in range(2)])
        value -= _entropy_bits(singles, 0) - _vn_bits(marg)
    return float(value)
