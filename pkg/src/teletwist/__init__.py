"""Teleportation, twisted entanglement and group-covariant measurements."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapacityError,
    ConfigError,
    DegenerateStateError,
    DomainError,
    ShapeError,
    TeletwistError,
    ZeroProbabilityError,
)
from .tensor import MultiKet, basis_ket, biket_to_mat, contract_bra, induced_map, mat_to_biket, product  # noqa: E402
from .entangle import max_entangled, tmsv, twist  # noqa: E402
from .groups import make_rep  # noqa: E402
from .povm import EntangledPovm, apply_instrument, born_distribution  # noqa: E402

__all__ = [
    "CapacityError",
    "ConfigError",
    "DegenerateStateError",
    "DomainError",
    "EntangledPovm",
    "MultiKet",
    "ShapeError",
    "TeletwistError",
    "ZeroProbabilityError",
    "__version__",
    "apply_instrument",
    "basis_ket",
    "biket_to_mat",
    "born_distribution",
    "contract_bra",
    "induced_map",
    "make_rep",
    "mat_to_biket",
    "max_entangled",
    "product",
    "tmsv",
    "twist",
]
