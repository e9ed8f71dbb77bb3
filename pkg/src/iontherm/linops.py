"""Dense complex linear algebra: Kronecker products, Hermitian eigendecomposition,
unitary propagators and partial traces over a fixed subsystem ordering.

All operations are pure functions on numpy arrays and safe to call concurrently.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import DimensionMismatch, NotHermitian

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpaceDescriptor:
    """Ordered subsystem dimensions of a composite Hilbert space.

    The ordering is fixed throughout the package: spin 1, spin 2, mode 1, mode 2
    (shorter factor lists are allowed for smaller test spaces).
    """

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if any(f < 1 for f in self.factors):
            raise DimensionMismatch(f"subsystem dimensions must be >= 1, got {self.factors}")

    @property
    def dim(self) -> int:
        return prod(self.factors)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Hermiticity check, tolerance relative to the largest entry magnitude."""
    if a.shape[0] != a.shape[1]:
        return False
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return True
    return np.max(np.abs(a - dagger(a))) <= tol * scale


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    if u.shape[0] != u.shape[1]:
        return False
    return np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))) <= tol


def is_psd(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Positive semidefinite within tol (absolute, on the eigenvalue scale)."""
    if not is_hermitian(a, tol):
        return False
    w = np.linalg.eigvalsh(a)
    scale = max(1.0, np.max(np.abs(w)))
    return w[0] >= -tol * scale


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(a, b)


def kron_all(mats) -> np.ndarray:
    """Kronecker product over a sequence, left to right."""
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def eigh(h: np.ndarray, tol: float = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary eigenvector matrix) such that
    h = V diag(w) V^dag.  Raises NotHermitian if the input fails the
    relative hermiticity check.
    """
    if not is_hermitian(h, tol):
        raise NotHermitian("matrix is not Hermitian within tolerance "
                           f"{tol} (relative to max |entry|)")
    w, v = np.linalg.eigh(h)
    return w, v


class SpectralPropagator:
    """Caches one eigendecomposition of a Hamiltonian and serves e^{-iHt} for many t.

    H must be Hermitian and expressed in angular-frequency units (rad/s),
    i.e. already divided by hbar.
    """

    def __init__(self, h: np.ndarray, tol: float = DEFAULT_TOL):
        self.eigenvalues, self.eigenvectors = eigh(h, tol)

    def at(self, t: float) -> np.ndarray:
        v = self.eigenvectors
        phases = np.exp(-1j * self.eigenvalues * t)
        return (v * phases) @ dagger(v)


def propagator(h: np.ndarray, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unitary e^{-iHt} for Hermitian H in rad/s, via eigendecomposition.

    For many times with one H, build a SpectralPropagator instead.
    """
    return SpectralPropagator(h, tol).at(t)


def partial_trace(rho: np.ndarray, space: SpaceDescriptor, keep) -> np.ndarray:
    """Trace out every subsystem not listed in `keep`.

    `keep` is an iterable of subsystem indices into space.factors; the reduced
    matrix keeps those subsystems in their original order.  The total trace is
    preserved.
    """
    dims = list(space.factors)
    n = len(dims)
    if rho.shape != (space.dim, space.dim):
        raise DimensionMismatch(
            f"state is {rho.shape}, space descriptor gives dim {space.dim}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatch(f"keep indices {keep} outside 0..{n - 1}")
    trace_out = [i for i in range(n) if i not in keep]

    rt = rho.reshape(dims + dims)
    perm = keep + trace_out
    rt = np.transpose(rt, axes=perm + [i + n for i in perm])
    d_keep = prod(dims[i] for i in keep) if keep else 1
    d_out = prod(dims[i] for i in trace_out) if trace_out else 1
    rt = rt.reshape(d_keep, d_out, d_keep, d_out)
    return np.einsum("aibi->ab", rt)
