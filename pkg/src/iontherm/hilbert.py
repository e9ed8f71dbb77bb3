"""Spin and bosonic operator builders on the two-spin (x) two-mode composite space.

Basis conventions, fixed package-wide:
  * spin basis |up> first (sigma_z eigenvalue +1), |down> second;
  * two-spin product basis ordered |uu>, |ud>, |du>, |dd>;
  * composite ordering spin 1 (x) spin 2 (x) mode 1 (x) mode 2;
  * Fock levels 0..n_max per mode (dimension n_max + 1).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linops import SpaceDescriptor, kron_all

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)

_PAULI = {
    "x": SIGMA_X,
    "y": SIGMA_Y,
    "z": SIGMA_Z,
    "plus": SIGMA_PLUS,
    "minus": SIGMA_MINUS,
}


@dataclass(frozen=True)
class FockCutoff:
    """Highest retained Fock level; mode dimension is n_max + 1."""

    n_max: int = 10

    def __post_init__(self):
        if self.n_max < 0:
            raise DimensionMismatch(f"n_max must be >= 0, got {self.n_max}")

    @property
    def dim(self) -> int:
        return self.n_max + 1


def pauli(kind: str) -> np.ndarray:
    """Pauli / ladder matrix in the |up>, |down> basis."""
    try:
        return _PAULI[kind].copy()
    except KeyError:
        raise KeyError(f"unknown Pauli kind {kind!r}; expected one of {sorted(_PAULI)}")


def ladder(cutoff: FockCutoff, kind: str) -> np.ndarray:
    """Truncated bosonic operator: a|n> = sqrt(n)|n-1>, a^dag|n> = sqrt(n+1)|n+1>.

    The raising operator annihilates the top level |n_max> (truncation).
    """
    d = cutoff.dim
    lower = np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1).astype(complex)
    if kind == "lower":
        return lower
    if kind == "raise":
        return lower.conj().T
    if kind == "number":
        return np.diag(np.arange(d, dtype=float)).astype(complex)
    raise KeyError(f"unknown ladder kind {kind!r}; expected lower|raise|number")


def embed(op: np.ndarray, space: SpaceDescriptor, slot: int) -> np.ndarray:
    """Operator on one subsystem, identity on all others, per the fixed ordering."""
    if slot < 0 or slot >= len(space.factors):
        raise DimensionMismatch(f"slot {slot} outside 0..{len(space.factors) - 1}")
    if op.shape != (space.factors[slot], space.factors[slot]):
        raise DimensionMismatch(
            f"operator is {op.shape}, slot {slot} has dimension {space.factors[slot]}")
    mats = [np.eye(f, dtype=complex) for f in space.factors]
    mats[slot] = op
    return kron_all(mats)


def two_spin_two_mode(cutoff: FockCutoff) -> SpaceDescriptor:
    """Descriptor for spin1 (x) spin2 (x) mode1 (x) mode2."""
    return SpaceDescriptor((2, 2, cutoff.dim, cutoff.dim))


def fock_level_projector(cutoff: FockCutoff, level: int) -> np.ndarray:
    """|level><level| on a single truncated mode."""
    if not 0 <= level <= cutoff.n_max:
        raise DimensionMismatch(f"level {level} outside 0..{cutoff.n_max}")
    p = np.zeros((cutoff.dim, cutoff.dim), dtype=complex)
    p[level, level] = 1.0
    return p
