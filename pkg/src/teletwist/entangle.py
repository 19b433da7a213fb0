"""Entangled resources: maximally entangled kets, twist, dressing, squeezed vacuum.

All bipartite states here are :class:`~teletwist.tensor.MultiKet` values with
two subsystems.  Infinite-dimensional objects (squeezed vacuum, the Theta
vector) are truncated to a caller-supplied Fock cutoff ``d_trunc``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, ShapeError
from .tensor import ATOL, MultiKet, mat_to_biket

__all__ = [
    "SchmidtFamily",
    "distortion_op",
    "is_max_entangled",
    "max_entangled",
    "reduced_state",
    "theta_vector",
    "tmsv",
    "tmsv_coeffs",
    "transfer_operator",
    "truncation_deficit",
    "twist",
    "unitary_dress",
]


def max_entangled(d: int, phases=None) -> MultiKet:
    """``sum_n exp(-i phases[n]) |n>|n> / sqrt(d)``; zero phases by default."""
    if d < 1:
        raise DomainError(f"dimension must be at least 1, got {d}")
    phases = np.zeros(d) if phases is None else np.asarray(phases, dtype=float)
    if phases.shape != (d,):
        raise ShapeError(f"need {d} phases, got shape {phases.shape}")
    return mat_to_biket(np.diag(np.exp(-1j * phases)) / np.sqrt(d))


def twist(b: MultiKet) -> MultiKet:
    """Swap the two tensor factors: ``c[j, k] -> c[k, j]``."""
    return mat_to_biket(b.matrix.T)


def unitary_dress(b: MultiKet, U, side: str = "left") -> MultiKet:
    """Apply ``U (x) 1`` (``side="left"``) or ``1 (x) U`` (``side="right"``).

    On the coefficient matrix this is ``U @ C`` or ``C @ U.T``.
    """
    U = np.asarray(U, dtype=complex)
    C = b.matrix
    if side == "left":
        if U.shape != (C.shape[0], C.shape[0]):
            raise ShapeError(f"left operator of shape {U.shape} on dims {b.dims}")
        return mat_to_biket(U @ C)
    if side == "right":
        if U.shape != (C.shape[1], C.shape[1]):
            raise ShapeError(f"right operator of shape {U.shape} on dims {b.dims}")
        return mat_to_biket(C @ U.T)
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def reduced_state(b: MultiKet, side: str = "left") -> np.ndarray:
    """Reduced density matrix of the left or right factor."""
    C = b.matrix
    if side == "left":
        return C @ C.conj().T
    if side == "right":
        return C.T @ C.conj()
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def is_max_entangled(b: MultiKet, atol: float = ATOL) -> bool:
    """Both reduced states equal ``I/d`` (requires equal factor dimensions)."""
    if b.dA != b.dB:
        return False
    target = np.eye(b.dA) / b.dA
    return all(np.abs(reduced_state(b, s) - target).max() < atol for s in ("left", "right"))


def transfer_operator(d: int) -> np.ndarray:
    """Basis-matched transfer ``sum_n |n>_b <n|_a``: the identity in the shared basis."""
    if d < 1:
        raise DomainError(f"dimension must be at least 1, got {d}")
    return np.eye(d, dtype=complex)


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"squeezing parameter must satisfy 0 <= lambda < 1, got {lam}")
    return lam


def tmsv_coeffs(lam: float, d_trunc: int) -> np.ndarray:
    """Schmidt coefficients ``sqrt(1 - lam^2) lam^n`` for ``n < d_trunc``."""
    lam = _check_lambda(lam)
    if d_trunc < 1:
        raise DomainError(f"d_trunc must be at least 1, got {d_trunc}")
    return np.sqrt(1.0 - lam * lam) * lam ** np.arange(d_trunc, dtype=float)


def truncation_deficit(coeffs) -> float:
    """Norm lost to truncation, ``1 - sum |c_n|^2``."""
    coeffs = np.asarray(coeffs)
    return float(1.0 - np.sum(np.abs(coeffs) ** 2))


def tmsv(lam: float, d_trunc: int) -> tuple[MultiKet, float]:
    """Truncated two-mode squeezed vacuum and its truncation deficit.

    The deficit is ``lam ** (2 * d_trunc)``, evaluated in closed form so that it
    stays accurate when it is far below machine epsilon.
    """
    c = tmsv_coeffs(lam, d_trunc)
    return mat_to_biket(np.diag(c)), float(lam) ** (2 * d_trunc)


def distortion_op(coeffs) -> np.ndarray:
    """Diagonal distortion operator ``sum_n c_n |n><n|``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ShapeError("distortion_op needs a nonempty 1-D coefficient sequence")
    return np.diag(coeffs)


def theta_vector(d_trunc: int) -> MultiKet:
    """Unnormalized ``sum_{n < d_trunc} |n>|n>`` (norm squared equals ``d_trunc``)."""
    if d_trunc < 1:
        raise DomainError(f"d_trunc must be at least 1, got {d_trunc}")
    return mat_to_biket(np.eye(d_trunc, dtype=complex))


@dataclass(frozen=True)
class SchmidtFamily:
    """A lambda-indexed family of diagonal bipartite states ``sum_n c_n(lam) |n>|n>``.

    ``kind`` is ``"two-mode-squeezed"`` or ``"custom"``; custom coefficient
    functions may return complex values.
    """

    kind: str
    d_trunc: int
    coeff_fn: Callable[[float, int], np.ndarray] = field(repr=False, default=None)

    def __post_init__(self):
        if self.kind == "two-mode-squeezed":
            object.__setattr__(self, "coeff_fn", tmsv_coeffs)
        elif self.kind != "custom":
            raise DomainError(f"unknown Schmidt family kind {self.kind!r}")
        elif self.coeff_fn is None:
            raise DomainError("custom Schmidt family needs a coeff_fn")
        if self.d_trunc < 1:
            raise DomainError(f"d_trunc must be at least 1, got {self.d_trunc}")

    @classmethod
    def two_mode_squeezed(cls, d_trunc: int) -> "SchmidtFamily":
        return cls("two-mode-squeezed", d_trunc)

    def coeffs(self, lam: float) -> np.ndarray:
        c = np.asarray(self.coeff_fn(lam, self.d_trunc), dtype=complex)
        if c.shape != (self.d_trunc,):
            raise ShapeError(f"coefficient function returned shape {c.shape}")
        if np.sum(np.abs(c) ** 2) > 1.0 + ATOL:
            raise DomainError("Schmidt coefficients have squared norm above 1")
        return c

    def state(self, lam: float) -> MultiKet:
        return mat_to_biket(np.diag(self.coeffs(lam)))

    def distortion(self, lam: float) -> np.ndarray:
        return distortion_op(self.coeffs(lam))

    def ratios(self, lam: float) -> np.ndarray:
        """Consecutive ratios ``|c_{n+1} / c_n|``; these tend to 1 as the state becomes maximal."""
        c = np.abs(self.coeffs(lam))
        return c[1:] / c[:-1]
