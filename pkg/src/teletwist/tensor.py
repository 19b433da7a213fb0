"""Dense complex algebra over ordered multipartite Hilbert spaces.

Index layout is mixed-radix with the subsystem dimensions as radices and the
leftmost subsystem most significant, i.e. exactly numpy's C-order reshape of
the flat amplitude vector to ``dims``.  Every module in the package relies on
this single convention.

Dense operators are capped at ``max_dim()`` rows and columns (4096 unless
``TELETWIST_MAX_DIM`` says otherwise); kets may hold up to ``max_dim()**2``
amplitudes, the storage of the largest operator.

Kets of a single system are plain 1-D numpy arrays; operators are 2-D numpy
arrays.  States over several subsystems are :class:`MultiKet` values, and a
bipartite ``MultiKet`` is what the rest of the package calls a "biket": its
amplitude matrix ``c[j, k]`` is the coefficient of ``|j> (x) |k>``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DegenerateStateError, DomainError, ShapeError

__all__ = [
    "ATOL",
    "DEFAULT_MAX_DIM",
    "MultiKet",
    "as_multiket",
    "basis_ket",
    "biket_to_mat",
    "contract_bra",
    "dagger",
    "induced_map",
    "inner",
    "is_unitary",
    "kron",
    "mat_to_biket",
    "max_dim",
    "norm",
    "normalize",
    "product",
]

ATOL = 1e-12
DEFAULT_MAX_DIM = 4096
# normalize() refuses vectors shorter than this
ZERO_NORM = 1e-14


def max_dim() -> int:
    """Capacity cap for dense objects, overridable via ``TELETWIST_MAX_DIM``."""
    value = os.environ.get("TELETWIST_MAX_DIM")
    if value is None:
        return DEFAULT_MAX_DIM
    try:
        cap = int(value)
    except ValueError:
        raise CapacityError(f"TELETWIST_MAX_DIM must be an integer, got {value!r}") from None
    if cap < 1:
        raise CapacityError(f"TELETWIST_MAX_DIM must be positive, got {cap}")
    return cap


def _check_capacity(dim: int, what: str) -> None:
    cap = max_dim()
    if dim > cap:
        raise CapacityError(f"{what} has dimension {dim}, above the maximum {cap}")


def _check_state_capacity(size: int, what: str) -> None:
    # a ket may hold as many amplitudes as the largest allowed dense operator
    cap = max_dim()
    if size > cap * cap:
        raise CapacityError(f"{what} has {size} amplitudes, above the maximum {cap * cap}")


@dataclass(frozen=True, eq=False)
class MultiKet:
    """Pure (not necessarily normalized) state over ordered subsystems.

    ``amps`` is stored as a read-only complex copy, so instances are safe to
    share between threads.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ShapeError(f"subsystem dimensions must be positive, got {self.dims}")
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        total = int(np.prod(dims))
        if amps.size != total:
            raise ShapeError(f"{amps.size} amplitudes do not fit dims {dims} (need {total})")
        _check_state_capacity(total, "state")
        if not np.isfinite(amps).all():
            raise DomainError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_tensor(cls, tensor) -> "MultiKet":
        tensor = np.asarray(tensor)
        return cls(tensor.shape, tensor.reshape(-1))

    @property
    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def nsub(self) -> int:
        return len(self.dims)

    # bipartite view
    @property
    def dA(self) -> int:
        self._require_bipartite()
        return self.dims[0]

    @property
    def dB(self) -> int:
        self._require_bipartite()
        return self.dims[1]

    @property
    def matrix(self) -> np.ndarray:
        """Coefficient matrix ``c[j, k]`` of a bipartite state."""
        self._require_bipartite()
        return self.amps.reshape(self.dims)

    def _require_bipartite(self):
        if len(self.dims) != 2:
            raise ShapeError(f"expected a bipartite state, got dims {self.dims}")

    def __add__(self, other):
        if not isinstance(other, MultiKet):
            return NotImplemented
        if other.dims != self.dims:
            raise ShapeError(f"cannot add states with dims {self.dims} and {other.dims}")
        return MultiKet(self.dims, self.amps + other.amps)

    def __sub__(self, other):
        if not isinstance(other, MultiKet):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return MultiKet(self.dims, scalar * self.amps)

    __rmul__ = __mul__

    def __neg__(self):
        return -1 * self

    def __truediv__(self, scalar):
        return MultiKet(self.dims, self.amps / scalar)

    def allclose(self, other: "MultiKet", atol: float = ATOL) -> bool:
        return self.dims == other.dims and bool(np.abs(self.amps - other.amps).max() <= atol)

    def __repr__(self):
        return f"MultiKet(dims={self.dims}, norm={np.linalg.norm(self.amps):.6g})"


def as_multiket(state) -> MultiKet:
    """Wrap a 1-D amplitude array as a single-subsystem MultiKet."""
    if isinstance(state, MultiKet):
        return state
    amps = np.asarray(state, dtype=complex)
    if amps.ndim != 1:
        raise ShapeError(f"expected a 1-D ket, got shape {amps.shape}")
    return MultiKet((amps.size,), amps)


def _amps(state) -> np.ndarray:
    if isinstance(state, MultiKet):
        return state.amps
    return np.asarray(state, dtype=complex).reshape(-1)


def basis_ket(d: int, n: int) -> np.ndarray:
    if not 0 <= n < d:
        raise ShapeError(f"basis index {n} out of range for dimension {d}")
    e = np.zeros(d, dtype=complex)
    e[n] = 1.0
    return e


def kron(A, B) -> np.ndarray:
    """Kronecker product ``A (x) B``: ``(A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l]``."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    rows, cols = A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]
    _check_capacity(max(rows, cols), "kron product")
    return np.kron(A, B)


def product(*states) -> MultiKet:
    """Tensor product of kets, keeping every factor as its own subsystem."""
    if not states:
        raise ShapeError("product() needs at least one state")
    dims: tuple[int, ...] = ()
    amps = np.ones(1, dtype=complex)
    for s in states:
        s = as_multiket(s)
        dims += s.dims
        _check_state_capacity(amps.size * s.dim, "product state")
        amps = np.kron(amps, s.amps)
    return MultiKet(dims, amps)


def mat_to_biket(A) -> MultiKet:
    """Bipartite state with ``c[j, k] = A[j, k]``."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {A.shape}")
    return MultiKet(A.shape, A.reshape(-1))


def biket_to_mat(b: MultiKet) -> np.ndarray:
    return np.array(b.matrix)


def dagger(A) -> np.ndarray:
    return np.asarray(A).conj().T


def inner(a, b) -> complex:
    """Hermitian inner product ``<a|b>``, conjugate-linear in ``a``."""
    if isinstance(a, MultiKet) and isinstance(b, MultiKet) and a.dims != b.dims:
        raise ShapeError(f"inner product of dims {a.dims} and {b.dims}")
    x, y = _amps(a), _amps(b)
    if x.size != y.size:
        raise ShapeError(f"inner product of sizes {x.size} and {y.size}")
    return complex(np.vdot(x, y))


def norm(a) -> float:
    return float(np.linalg.norm(_amps(a)))


def normalize(a):
    """Unit-norm copy of ``a`` (same type as the input)."""
    n = norm(a)
    if n < ZERO_NORM:
        raise DegenerateStateError(f"cannot normalize a state of norm {n:.3g}")
    if isinstance(a, MultiKet):
        return a / n
    return np.asarray(a, dtype=complex) / n


def is_unitary(U, atol: float = ATOL) -> bool:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return bool(np.abs(U.conj().T @ U - np.eye(U.shape[0])).max() < atol)


def _check_slots(slots: Sequence[int], n: int) -> tuple[int, int]:
    if len(slots) != 2:
        raise ShapeError(f"expected two slots, got {slots}")
    i, j = (int(s) for s in slots)
    if i == j:
        raise ShapeError(f"slots must differ, got ({i}, {j})")
    if not (0 <= i < n and 0 <= j < n):
        raise ShapeError(f"slots ({i}, {j}) out of range for {n} subsystems")
    return i, j


def contract_bra(bra: MultiKet, target: MultiKet, slots: Sequence[int]) -> MultiKet:
    """Apply the bipartite bra ``<<bra|`` to subsystems ``slots`` of ``target``.

    The bra's first factor meets ``target`` subsystem ``slots[0]`` and its
    second factor meets ``slots[1]``.  Bra amplitudes are conjugated.  The
    remaining subsystems keep their relative order; if none remain the result
    is a 1-dimensional state holding the scalar overlap.
    """
    i, j = _check_slots(slots, target.nsub)
    if (target.dims[i], target.dims[j]) != bra.dims:
        raise ShapeError(
            f"bra dims {bra.dims} do not match target subsystems "
            f"({target.dims[i]}, {target.dims[j]}) at slots ({i}, {j})"
        )
    out = np.tensordot(bra.matrix.conj(), target.tensor, axes=([0, 1], [i, j]))
    if out.ndim == 0:
        return MultiKet((1,), out.reshape(1))
    return MultiKet.from_tensor(out)


def induced_map(
    bra: MultiKet,
    resource: MultiKet,
    bra_slots: Sequence[int],
    in_slot: int = 0,
    out_slot: int | None = None,
) -> np.ndarray:
    """Matrix ``M`` with ``contract_bra(bra, phi@in_slot (x) resource, bra_slots) = M phi``.

    ``bra_slots``, ``in_slot`` and ``out_slot`` index the joint system in which
    the input has been inserted at position ``in_slot``.  The input must be one
    of the measured subsystems.  ``M`` has one row per amplitude of the
    remaining subsystems (flattened in layout order) and one column per input
    basis vector.  If ``out_slot`` is given it must be the only subsystem left
    after the contraction.
    """
    n = resource.nsub + 1
    i, j = _check_slots(bra_slots, n)
    if not 0 <= in_slot < n:
        raise ShapeError(f"in_slot {in_slot} out of range for {n} subsystems")
    if in_slot not in (i, j):
        raise ShapeError(f"in_slot {in_slot} must be one of the measured slots ({i}, {j})")
    d_in = bra.dims[0] if in_slot == i else bra.dims[1]
    joint_dims = list(resource.dims)
    joint_dims.insert(in_slot, d_in)
    if (joint_dims[i], joint_dims[j]) != bra.dims:
        raise ShapeError(f"bra dims {bra.dims} do not match joint dims {tuple(joint_dims)}")
    remaining = [k for k in range(n) if k not in (i, j)]
    if out_slot is not None and remaining != [out_slot]:
        raise ShapeError(f"out_slot {out_slot} is not the sole remaining subsystem {remaining}")
    _check_capacity(d_in, "induced map input")
    _check_capacity(resource.dim // joint_dims[i if in_slot == j else j], "induced map output")
    _check_state_capacity(d_in * resource.dim, "joint state")

    # joint[..., k] is the joint state for input |k>; the last axis carries k
    joint = np.multiply.outer(np.eye(d_in, dtype=complex), resource.tensor)
    joint = np.moveaxis(joint, [0, 1], [in_slot, n])
    out = np.tensordot(bra.matrix.conj(), joint, axes=([0, 1], [i, j]))
    return out.reshape(-1, d_in)
