"""Entangled measurements generated by a group orbit of one bipartite seed.

Given a representation ``U`` and a seed ``|S>>``, the measurement vectors are
``(U(g) (x) 1)|S>>`` for the quadrature nodes ``g``.  The effects are

    E_g = w_g * (d / <<S|S>>) * (U(g) (x) 1)|S>><<S|(U(g)^+ (x) 1)

which for a normalized maximally entangled seed is ``d w_g`` times a rank-1
projector (the Bell projectors for the Pauli and Z_N x Z_N families), and for
the unnormalized Theta seed of norm squared ``d`` is just ``w_g`` times the
outer product.  Either way the effects resolve the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .entangle import max_entangled, theta_vector, unitary_dress
from .errors import DomainError, ShapeError, ZeroProbabilityError
from .groups import Quadrature, Representation
from .tensor import ZERO_NORM, MultiKet, _check_slots, norm

__all__ = [
    "EntangledPovm",
    "InstrumentResult",
    "OutcomeDistribution",
    "apply_instrument",
    "born_distribution",
    "cocycle_invariance_check",
    "completeness_residual",
    "povm_vector",
]

# tolerance on <joint|joint> = 1 accepted by the Born rule
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class EntangledPovm:
    """Orbit measurement ``{(U(g) (x) 1)|seed>>}`` over the nodes of ``quad``.

    ``phases``, if given, multiplies each ``U(g)`` by a unit-modulus factor; it
    exists to show that such factors do not change the measurement.
    """

    rep: Representation
    seed: MultiKet
    quad: Quadrature
    phases: tuple | None = None

    def __post_init__(self):
        if self.seed.dims != (self.rep.d, self.rep.d):
            raise ShapeError(f"seed dims {self.seed.dims} do not match representation dimension {self.rep.d}")
        if self.phases is not None:
            ph = np.asarray(self.phases, dtype=complex)
            if ph.shape != (len(self.quad),):
                raise ShapeError(f"need one phase per node ({len(self.quad)}), got {ph.shape}")
            if np.abs(np.abs(ph) - 1.0).max(initial=0.0) > 1e-12:
                raise DomainError("phase assignment must have unit modulus")
            object.__setattr__(self, "phases", tuple(complex(x) for x in ph))

    @classmethod
    def standard(cls, rep: Representation, phases=None, resolution=None, **quad_kwargs) -> "EntangledPovm":
        """Maximally entangled seed (Theta seed for the heterodyne family)."""
        if rep.family == "weyl-heisenberg":
            seed = theta_vector(rep.d)
        else:
            seed = max_entangled(rep.d, phases)
        return cls(rep, seed, rep.quadrature(resolution, **quad_kwargs))

    def with_phases(self, phases) -> "EntangledPovm":
        return EntangledPovm(self.rep, self.seed, self.quad, tuple(phases))

    @property
    def d(self) -> int:
        return self.rep.d

    @property
    def scale(self) -> float:
        """Effect prefactor ``d / <<seed|seed>>``."""
        return self.d / norm(self.seed) ** 2

    @cached_property
    def unitaries(self) -> np.ndarray:
        Us = self.rep.matrices(self.quad.nodes)
        if self.phases is not None:
            Us = Us * np.asarray(self.phases)[:, None, None]
        Us.setflags(write=False)
        return Us

    @cached_property
    def vectors(self) -> np.ndarray:
        """Coefficient matrices of every measurement vector, shape ``(nodes, d, d)``."""
        V = self.unitaries @ self.seed.matrix
        V.setflags(write=False)
        return V

    @cached_property
    def _index(self) -> dict:
        return {self._key(g): i for i, g in enumerate(self.quad.nodes)}

    def _key(self, g):
        g = self.rep.validate(g)
        if self.rep.family == "su2":
            return (g.phi, g.axis)
        return g

    def node_index(self, g) -> int | None:
        return self._index.get(self._key(g))

    def effect(self, index: int) -> np.ndarray:
        v = self.vectors[index].reshape(-1)
        return self.quad.weights[index] * self.scale * np.outer(v, v.conj())


@dataclass(frozen=True)
class OutcomeDistribution:
    outcomes: tuple
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def total(self) -> float:
        return float(self.probs.sum())

    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Node indices drawn from the (renormalized) distribution."""
        p = np.clip(self.probs, 0.0, None)
        return rng.choice(len(p), size=size, p=p / p.sum())


@dataclass(frozen=True)
class InstrumentResult:
    outcome: object
    conditioned: MultiKet
    prob: float
    unnormalized: MultiKet


def povm_vector(p: EntangledPovm, g) -> MultiKet:
    """``(U(g) (x) 1)|seed>>`` (with the node phase, if ``g`` is a phased node)."""
    U = p.rep.matrix(g)
    if p.phases is not None:
        idx = p.node_index(g)
        if idx is not None:
            U = U * p.phases[idx]
    return unitary_dress(p.seed, U, "left")


def completeness_residual(p: EntangledPovm, n_max: int | None = None) -> float:
    """``max |sum_g E_g - 1 (x) 1|``.

    For the heterodyne family the check is restricted to Fock states
    ``n <= n_max`` on both factors (default ``d_trunc // 4``); the other
    families use the full space unless ``n_max`` is given.
    """
    V = p.vectors
    if n_max is None and p.rep.family == "weyl-heisenberg":
        n_max = p.d // 4
    if n_max is not None:
        V = V[:, : n_max + 1, : n_max + 1]
    flat = V.reshape(len(V), -1)
    S = (flat.T * (p.quad.weights * p.scale)) @ flat.conj()
    return float(np.abs(S - np.eye(S.shape[0])).max())


def _measured_amplitudes(p: EntangledPovm, joint: MultiKet, slots) -> tuple[np.ndarray, tuple[int, ...]]:
    i, j = _check_slots(slots, joint.nsub)
    if (joint.dims[i], joint.dims[j]) != (p.d, p.d):
        raise ShapeError(f"measured subsystems ({joint.dims[i]}, {joint.dims[j]}) do not match POVM dimension {p.d}")
    T = np.moveaxis(joint.tensor, [i, j], [0, 1])
    rest = T.shape[2:]
    T = T.reshape(p.d, p.d, -1)
    return np.einsum("gij,ijr->gr", p.vectors.conj(), T, optimize=True), rest


def _check_normalized(joint: MultiKet):
    n2 = norm(joint) ** 2
    if abs(n2 - 1.0) > NORM_TOL:
        raise DomainError(f"Born rule needs a normalized joint state, got norm^2 = {n2!r}")


def born_distribution(p: EntangledPovm, joint: MultiKet, slots) -> OutcomeDistribution:
    """Outcome probabilities ``<joint|E_g|joint>`` at every quadrature node."""
    _check_normalized(joint)
    amps, _ = _measured_amplitudes(p, joint, slots)
    probs = p.quad.weights * p.scale * np.sum(np.abs(amps) ** 2, axis=1)
    return OutcomeDistribution(p.quad.nodes, probs)


def apply_instrument(p: EntangledPovm, joint: MultiKet, slots, g) -> InstrumentResult:
    """Condition ``joint`` on outcome ``g``.

    The unnormalized post-measurement vector is ``<<v_g| (x) 1 |joint>``; its
    normalization is the conditioned state.  ``prob`` is the Born probability
    of the node, or a density with respect to the invariant measure when ``g``
    is not a quadrature node.
    """
    _check_normalized(joint)
    i, j = _check_slots(slots, joint.nsub)
    idx = p.node_index(g)
    v = povm_vector(p, g)
    if (joint.dims[i], joint.dims[j]) != v.dims:
        raise ShapeError(f"measured subsystems ({joint.dims[i]}, {joint.dims[j]}) do not match POVM dimension {p.d}")
    rest = tuple(d for k, d in enumerate(joint.dims) if k not in (i, j)) or (1,)
    T = np.moveaxis(joint.tensor, [i, j], [0, 1]).reshape(p.d, p.d, -1)
    out = MultiKet(rest, np.tensordot(v.matrix.conj(), T, axes=([0, 1], [0, 1])))
    n = norm(out)
    if n < ZERO_NORM:
        raise ZeroProbabilityError(f"outcome {p.rep.label(g)} has zero probability")
    weight = p.quad.weights[idx] if idx is not None else 1.0
    return InstrumentResult(p.rep.validate(g), out / n, float(weight * p.scale * n * n), out)


def cocycle_invariance_check(p: EntangledPovm, phase_assignment) -> float:
    """Largest change of any measurement projector when ``U(g) -> c_g U(g)``.

    ``phase_assignment`` is a sequence aligned with the quadrature nodes or a
    mapping from node to phase (missing nodes keep phase 1).
    """
    if isinstance(phase_assignment, dict):
        phases = [1.0 + 0j] * len(p.quad)
        for g, c in phase_assignment.items():
            idx = p.node_index(g)
            if idx is None:
                raise DomainError(f"{g!r} is not a node of this measurement")
            phases[idx] = c
    else:
        phases = list(phase_assignment)
    q = p.with_phases(phases)
    a = p.vectors.reshape(len(p.quad), -1)
    b = q.vectors.reshape(len(q.quad), -1)
    worst = 0.0
    for x, y in zip(a, b):
        worst = max(worst, float(np.abs(np.outer(x, x.conj()) - np.outer(y, y.conj())).max()))
    return worst
