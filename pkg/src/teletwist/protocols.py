"""Teleportation-style protocols and the identities behind them.

Subsystem numbering follows the joint state ``input (x) resource``: the
unknown input is subsystem 0, the shared resource occupies 1 and 2, and the
sender measures subsystems (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .entangle import max_entangled, theta_vector, tmsv, twist, unitary_dress
from .errors import CapacityError, DomainError, ShapeError, ZeroProbabilityError
from .groups import SU2, Representation, WeylHeisenberg
from .povm import EntangledPovm, apply_instrument, born_distribution
from .tensor import (
    ZERO_NORM,
    MultiKet,
    contract_bra,
    induced_map,
    inner,
    mat_to_biket,
    norm,
    normalize,
    product,
)

__all__ = [
    "CatResource",
    "DistortedRun",
    "FilterRun",
    "SweepReport",
    "SwapRun",
    "TeleportRun",
    "cat_resource",
    "coherent",
    "entanglement_swap",
    "filter_teleport",
    "fidelity",
    "sweep_lambda",
    "teleport_all_outcomes",
    "teleport_distorted",
    "teleport_ideal",
    "teleport_su2",
    "verify_transfer_identities",
]

# coherent-state truncation deficit tolerated by cat_resource
CAT_DEFICIT = 1e-10


def fidelity(a, b) -> float:
    """``|<a|b>|^2`` of two normalized kets, clipped to [0, 1] against rounding."""
    return min(1.0, abs(inner(a, b)) ** 2)


def _ket(x, d: int | None = None) -> np.ndarray:
    x = np.asarray(x.amps if isinstance(x, MultiKet) else x, dtype=complex).reshape(-1)
    if d is not None and x.size != d:
        raise ShapeError(f"input of dimension {x.size}, expected {d}")
    return x


def verify_transfer_identities(psi: MultiKet) -> dict[str, float]:
    """Deviation of the four transfer-identity maps from ``1/d``.

    ``T31`` measures ``psi`` on (0, 1) against ``twist(psi)`` on (1, 2),
    ``T31-twisted`` swaps the roles of ``psi`` and ``twist(psi)``, and the two
    ``T13`` variants mirror both with the input on subsystem 2.
    """
    d = psi.dA
    fwd, back = psi, twist(psi)
    target = np.eye(d) / d
    maps = {
        "T31": induced_map(fwd, back, (0, 1), in_slot=0, out_slot=2),
        "T31-twisted": induced_map(back, fwd, (0, 1), in_slot=0, out_slot=2),
        "T13": induced_map(fwd, back, (1, 2), in_slot=2, out_slot=0),
        "T13-twisted": induced_map(back, fwd, (1, 2), in_slot=2, out_slot=0),
    }
    return {name: float(np.abs(M - target).max()) for name, M in maps.items()}


@dataclass(frozen=True)
class TeleportRun:
    family: str
    d: int
    input: np.ndarray
    resource: MultiKet
    outcome: object
    output: np.ndarray
    fidelity: float
    prob: float


def _teleport_setup(rep: Representation, input, phases):
    if not rep.finite:
        raise DomainError(f"ideal teleportation enumerates a finite group, got {rep.family}")
    phi = _ket(input, rep.d)
    if abs(np.vdot(phi, phi).real - 1.0) > 1e-10:
        raise DomainError("input state must be normalized")
    psi = max_entangled(rep.d, phases)
    resource = twist(psi)
    povm = EntangledPovm(rep, psi, rep.quadrature())
    return phi, resource, povm, product(phi, resource)


def _finish(rep, phi, resource, povm, joint, g, prob):
    inst = apply_instrument(povm, joint, (0, 1), g)
    # receiver's correction: U(g) on subsystem 2 undoes the U(g)^+ left by the measurement
    out = rep.matrix(g) @ inst.conditioned.amps
    return TeleportRun(rep.family, rep.d, phi, resource, inst.outcome, out, fidelity(phi, out), prob)


def teleport_ideal(rep: Representation, input, phases=None, rng: np.random.Generator | None = None, outcome=None) -> TeleportRun:
    """One teleportation round over a finite group.

    The sender measures ``input (x) twist(psi)`` with the orbit measurement of
    ``psi``; the outcome is drawn from the Born distribution with ``rng``
    unless ``outcome`` fixes it.  The receiver then applies ``U(g)``.
    """
    phi, resource, povm, joint = _teleport_setup(rep, input, phases)
    dist = born_distribution(povm, joint, (0, 1))
    if outcome is None:
        if rng is None:
            raise DomainError("teleport_ideal needs an rng or an explicit outcome")
        idx = int(dist.sample(rng))
    else:
        idx = povm.node_index(outcome)
    return _finish(rep, phi, resource, povm, joint, dist.outcomes[idx], float(dist.probs[idx]))


def teleport_all_outcomes(rep: Representation, input, phases=None) -> list[TeleportRun]:
    """:func:`teleport_ideal` for every group element, in node order."""
    phi, resource, povm, joint = _teleport_setup(rep, input, phases)
    dist = born_distribution(povm, joint, (0, 1))
    return [
        _finish(rep, phi, resource, povm, joint, g, float(p))
        for g, p in zip(dist.outcomes, dist.probs)
    ]


def teleport_dressed(rep: Representation, input, g, phases=None) -> np.ndarray:
    """Same protocol with the correction moved into the resource.

    Contracts ``<<(U(g) (x) 1) psi|`` against ``input (x) (1 (x) U(g)) twist(psi)``.
    """
    phi = _ket(input, rep.d)
    psi = max_entangled(rep.d, phases)
    U = rep.matrix(g)
    out = contract_bra(unitary_dress(psi, U, "left"), product(phi, unitary_dress(twist(psi), U, "right")), (0, 1))
    return normalize(out.amps)


@dataclass(frozen=True)
class DistortedRun:
    output: np.ndarray
    map: np.ndarray
    map_contracted: np.ndarray
    residual: float
    deficit: float
    fidelity: float


def teleport_distorted(rep: WeylHeisenberg, input, lam: float, g=0j, gp=0j) -> DistortedRun:
    """Heterodyne teleportation with a squeezed-vacuum resource.

    The map is built twice: as ``U(g') D(lam) U(g)^+`` and by contracting
    ``<<Theta_g|`` against ``1 (x) U(g')`` applied to the squeezed vacuum;
    ``residual`` is their largest entrywise difference.
    """
    if not isinstance(rep, WeylHeisenberg):
        raise DomainError(f"distorted teleportation needs the weyl-heisenberg family, got {rep.family}")
    d = rep.d
    phi = _ket(input, d)
    resource, deficit = tmsv(lam, d)
    U, Up = rep.matrix(g), rep.matrix(gp)
    D = resource.matrix  # diagonal Schmidt coefficients
    direct = Up @ D @ U.conj().T
    bra = unitary_dress(theta_vector(d), U, "left")
    contracted = induced_map(bra, unitary_dress(resource, Up, "right"), (0, 1), in_slot=0, out_slot=2)
    out = normalize(direct @ phi)
    return DistortedRun(
        out,
        direct,
        contracted,
        float(np.abs(direct - contracted).max()),
        deficit,
        fidelity(normalize(phi), out),
    )


@dataclass(frozen=True)
class SweepReport:
    lambdas: np.ndarray
    fidelities: np.ndarray
    deficits: np.ndarray
    residuals: np.ndarray


def sweep_lambda(rep: WeylHeisenberg, input, lambdas, g=0j, gp=0j) -> SweepReport:
    runs = [teleport_distorted(rep, input, lam, g, gp) for lam in lambdas]
    return SweepReport(
        np.asarray(lambdas, dtype=float),
        np.array([r.fidelity for r in runs]),
        np.array([r.deficit for r in runs]),
        np.array([r.residual for r in runs]),
    )


def teleport_su2(J, input, phi: float, axis, phases=None) -> tuple[np.ndarray, complex]:
    """Angular-momentum teleportation for one outcome ``(phi, axis)``.

    Returns the normalized output and the scalar ``s`` with
    ``unnormalized output = s * input`` (``s = 1/(2J+1)`` for zero phases).
    """
    rep = SU2(J)
    x = _ket(input, rep.d)
    U = rep.matrix((phi, axis))
    psi = max_entangled(rep.d, phases)
    bra = unitary_dress(psi, U, "left")
    resource = unitary_dress(twist(psi), U, "right")
    out = contract_bra(bra, product(x, resource), (0, 1)).amps
    scalar = np.vdot(x, out) / np.vdot(x, x)
    return normalize(out), complex(scalar)


@dataclass(frozen=True)
class SwapRun:
    output: MultiKet
    scalar: complex
    fidelity: float


def entanglement_swap(Phi: MultiKet, psi: MultiKet, placement: str = "left") -> SwapRun:
    """Teleport one half of ``Phi`` through ``twist(psi)``.

    ``left``: ``Phi (x) twist(psi)`` with ``psi`` measured on (1, 2), output on
    (0, 3).  ``right``: ``twist(psi) (x) Phi``, same measurement.
    """
    if placement == "left":
        if Phi.dB != psi.dA:
            raise ShapeError(f"Phi dims {Phi.dims} incompatible with resource dimension {psi.dA}")
        joint = product(Phi, twist(psi))
    elif placement == "right":
        if Phi.dA != psi.dA:
            raise ShapeError(f"Phi dims {Phi.dims} incompatible with resource dimension {psi.dA}")
        joint = product(twist(psi), Phi)
    else:
        raise DomainError(f"placement must be 'left' or 'right', got {placement!r}")
    out = contract_bra(psi, joint, (1, 2))
    scalar = inner(Phi, out) / inner(Phi, Phi)
    return SwapRun(out, complex(scalar), fidelity(normalize(Phi), normalize(out)))


def coherent(z: complex, d_trunc: int) -> tuple[np.ndarray, float]:
    """Truncated coherent state ``|z>`` and the norm it loses to truncation."""
    z = complex(z)
    n = np.arange(d_trunc)
    if z == 0:
        amps = np.zeros(d_trunc, dtype=complex)
        amps[0] = 1.0
    else:
        amps = np.exp(-abs(z) ** 2 / 2 + n * np.log(z) - 0.5 * gammaln(n + 1))
    return amps, float(1.0 - np.vdot(amps, amps).real)


def _parity_ops(d: int) -> np.ndarray:
    # U_K = exp(-i pi a^+a b^+b) is diagonal with entries (-1)^{nm}
    n = np.arange(d)
    return np.where(np.outer(n, n) % 2 == 0, 1.0, -1.0)


@dataclass(frozen=True, eq=False)
class CatResource:
    """Normalized ``|alpha>|beta_+> + |-alpha>|beta_->`` and its parity bases.

    ``parity_basis`` holds normalized ``(alpha_+, alpha_-, beta_+, beta_-)``.
    ``line_residual`` compares the two coherent/cat expansions of the state,
    ``uk_residual`` compares it with the normalized ``U_K (|alpha> (x) |beta>)``.
    """

    alpha: complex
    beta: complex
    d_trunc: int
    ket: MultiKet
    parity_basis: tuple
    line_residual: float
    uk_residual: float
    deficit: float


def cat_resource(alpha, beta, d_trunc: int) -> CatResource:
    d = int(d_trunc)
    a, da = coherent(alpha, d)
    b, db = coherent(beta, d)
    # |-z> has amplitudes (-1)^n <n|z>; flipping signs keeps the parity split exact
    flip = (-1.0) ** np.arange(d)
    am, bm = flip * a, flip * b
    deficit = max(da, db)
    if deficit > CAT_DEFICIT:
        raise CapacityError(f"coherent amplitudes too large for d_trunc={d}: truncation deficit {deficit:.3g}")
    a_plus, a_minus, b_plus, b_minus = a + am, a - am, b + bm, b - bm
    line1 = np.outer(a, b_plus) + np.outer(am, b_minus)
    line2 = np.outer(a_plus, b) + np.outer(a_minus, bm)
    scale = np.linalg.norm(line1)
    basis = tuple(normalize(v) for v in (a_plus, a_minus, b_plus, b_minus))
    ket = mat_to_biket(line1 / scale)
    uk = _parity_ops(d) * np.outer(a, b)
    uk_residual = float(np.abs(normalize(uk.reshape(-1)) - ket.amps).max())
    return CatResource(
        complex(alpha), complex(beta), d, ket, basis,
        float(np.abs(line1 - line2).max() / scale), uk_residual, deficit,
    )


@dataclass(frozen=True)
class FilterRun:
    output: np.ndarray
    fidelity: float
    leakage: float
    rejected_norm: float
    map: np.ndarray
    map_residual: float


def filter_bra(res: CatResource, measurement: str = "balanced") -> MultiKet:
    """Sender's measurement bra for the cat filter.

    ``twist`` is ``twist(|Pi>)``.  ``balanced`` is the state whose coefficients
    in the ``(alpha_+, alpha_-)`` basis on both factors are the inverse
    conjugate of |Pi>'s 2x2 coefficient matrix, which makes the induced map
    exactly ``V Q`` (``Q`` projects on the alpha parity qubit, ``V`` sends
    ``alpha_+- -> beta_+-``).  The two coincide up to scale whenever |Pi> is
    maximally entangled on the parity qubit, i.e. up to ``exp(-2|alpha|^2)``.
    """
    if measurement == "twist":
        return twist(res.ket)
    if measurement != "balanced":
        raise DomainError(f"measurement must be 'balanced' or 'twist', got {measurement!r}")
    ap, am, bp, bm = res.parity_basis
    A = np.stack([ap, am], axis=1)
    B = np.stack([bp, bm], axis=1)
    K = A.conj().T @ res.ket.matrix @ B.conj()
    M = A @ np.linalg.inv(K.conj()) @ A.T
    return mat_to_biket(M / np.linalg.norm(M))


def filter_teleport(res: CatResource, input, measurement: str = "balanced") -> FilterRun:
    """Teleport through the cat resource; only the alpha parity qubit survives.

    ``fidelity`` compares the image of the input's parity-qubit component with
    its ideal image ``V Q input``; ``leakage`` is the norm of the image of the
    orthogonal component relative to the map's scale, and ``rejected_norm``
    the norm of that component itself.
    """
    if res.alpha == 0 or res.beta == 0:
        raise DomainError("cat filter needs nonzero alpha and beta")
    x = _ket(input, res.d_trunc)
    ap, am, bp, bm = res.parity_basis
    A = np.stack([ap, am], axis=1)
    VQ = np.stack([bp, bm], axis=1) @ A.conj().T
    M = induced_map(filter_bra(res, measurement), res.ket, (0, 1), in_slot=0, out_slot=2)
    c = np.trace(VQ.conj().T @ M) / 2
    map_residual = float(np.abs(M / c - VQ).max())
    x_in = A @ (A.conj().T @ x)
    x_out = x - x_in
    y = M @ x
    if norm(y) < ZERO_NORM * max(1.0, abs(c)):
        raise ZeroProbabilityError("input lies outside the teleported parity subspace")
    ideal = VQ @ x
    fid = fidelity(normalize(ideal), normalize(M @ x_in)) if norm(x_in) > ZERO_NORM else float("nan")
    return FilterRun(
        normalize(y), fid, float(norm(M @ x_out) / abs(c)), float(norm(x_out)), M, map_residual,
    )
