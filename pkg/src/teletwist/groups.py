"""Projective unitary representations used to build entangled measurements.

Four families are supported:

``pauli-d2``
    The Pauli matrices ``(1, sx, sy, sz)`` indexed 0..3, a projective
    representation of the Klein group of pi-rotations.
``zn-pair``
    ``U(n, m) = sum_k exp(2 pi i k n / N) |k><k + m|`` on C^N, elements are
    pairs ``(n, m)`` reduced mod N.
``weyl-heisenberg``
    Displacements ``D(z) = exp(z a^+ - conj(z) a)``, represented by their
    top-left ``d_trunc`` x ``d_trunc`` Fock block.
``su2``
    ``U = exp(i phi J.n)`` on the spin-J irrep, elements ``SU2Element(phi, axis)``.

Measure convention: quadrature weights are normalized so that
``sum_g w_g U A U^+ = Tr(A) 1``, i.e. the total mass equals the
representation dimension (the heterodyne family is the exception; see
:meth:`WeylHeisenberg.quadrature`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import scipy.linalg
from scipy.optimize import brentq

from .errors import DomainError, ShapeError

__all__ = [
    "FAMILIES",
    "PAULI",
    "PauliD2",
    "Quadrature",
    "Representation",
    "SU2",
    "SU2Element",
    "WeylHeisenberg",
    "ZNPair",
    "compose",
    "composition_residual",
    "haar_sample",
    "jmatrices",
    "make_rep",
    "quadrature",
    "rep_matrix",
    "schur_residual",
]

FAMILIES = ("pauli-d2", "zn-pair", "weyl-heisenberg", "su2")

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PAULI_LABELS = ("I", "X", "Y", "Z")


class SU2Element(NamedTuple):
    phi: float
    axis: tuple[float, float, float]


@dataclass(frozen=True)
class Quadrature:
    """Weighted group elements standing in for the invariant integral.

    ``tolerance`` is the accuracy the quadrature is certified for; it is 0 for
    finite groups, where the nodes are the whole group.
    """

    nodes: tuple
    weights: np.ndarray
    tolerance: float = 0.0

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.shape != (len(self.nodes),):
            raise ShapeError(f"{len(self.nodes)} nodes but weights of shape {w.shape}")
        if np.any(w <= 0):
            raise DomainError("quadrature weights must be positive")
        w.setflags(write=False)
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.nodes)

    @property
    def mass(self) -> float:
        return float(self.weights.sum())


class Representation:
    """Common interface of the four families (see the module docstring)."""

    family: str
    d: int
    finite = False

    @property
    def identity(self):
        raise NotImplementedError

    def validate(self, g):
        """Return ``g`` in canonical form or raise :class:`DomainError`."""
        raise NotImplementedError

    def matrix(self, g) -> np.ndarray:
        raise NotImplementedError

    def matrices(self, nodes) -> np.ndarray:
        """Stack of ``matrix(g)`` for every node, shape ``(len(nodes), d, d)``."""
        return np.stack([self.matrix(g) for g in nodes])

    def compose(self, g, h):
        """``(gh, c)`` with ``U(g) U(h) = c U(gh)``."""
        raise NotImplementedError

    def quadrature(self, resolution=None) -> Quadrature:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator):
        raise NotImplementedError

    def label(self, g) -> str:
        return str(self.validate(g))


class _FiniteRep(Representation):
    finite = True

    def elements(self) -> tuple:
        raise NotImplementedError

    def quadrature(self, resolution=None) -> Quadrature:
        elems = self.elements()
        return Quadrature(elems, np.full(len(elems), self.d / len(elems)))

    def sample(self, rng):
        elems = self.elements()
        return elems[int(rng.integers(len(elems)))], float(self.d)


@dataclass(frozen=True)
class PauliD2(_FiniteRep):
    family = "pauli-d2"
    d = 2

    @property
    def identity(self):
        return 0

    def elements(self):
        return (0, 1, 2, 3)

    def validate(self, g):
        if isinstance(g, (bool, np.bool_)) or not isinstance(g, (int, np.integer)) or not 0 <= g <= 3:
            raise DomainError(f"pauli-d2 element must be an index 0..3, got {g!r}")
        return int(g)

    def matrix(self, g):
        return PAULI[self.validate(g)].copy()

    def compose(self, g, h):
        g, h = self.validate(g), self.validate(h)
        if g == 0 or h == 0 or g == h:
            return g ^ h, 1 + 0j
        # s_a s_b = i eps_abc s_c for a != b; the XOR of the indices is c
        sign = 1 if (h - g) % 3 == 1 else -1
        return g ^ h, 1j * sign

    def label(self, g):
        return PAULI_LABELS[self.validate(g)]


@dataclass(frozen=True)
class ZNPair(_FiniteRep):
    N: int
    family = "zn-pair"

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")

    @property
    def d(self):
        return int(self.N)

    @property
    def identity(self):
        return (0, 0)

    def elements(self):
        return tuple((n, m) for n in range(self.N) for m in range(self.N))

    def validate(self, g):
        try:
            n, m = g
            n, m = int(n), int(m)
        except (TypeError, ValueError):
            raise DomainError(f"zn-pair element must be a pair of integers, got {g!r}") from None
        return (n % self.N, m % self.N)

    def matrix(self, g):
        n, m = self.validate(g)
        N = self.N
        k = np.arange(N)
        U = np.zeros((N, N), dtype=complex)
        U[k, (k + m) % N] = np.exp(2j * np.pi * k * n / N)
        return U

    def compose(self, g, h):
        (n, m), (n2, m2) = self.validate(g), self.validate(h)
        phase = np.exp(2j * np.pi * m * n2 / self.N)
        return ((n + n2) % self.N, (m + m2) % self.N), complex(phase)

    def label(self, g):
        n, m = self.validate(g)
        return f"{n},{m}"


def _fock_padding(d: int, radius: float) -> int:
    # working dimension so that the d-block of exp(z a^+ - z* a), |z| <= radius,
    # is unaffected by truncating the generator
    s = math.sqrt(d) + radius
    return max(d, int(math.ceil(s * s + 8 * s + 16)))


def _annihilation(d: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1)


@lru_cache(maxsize=16)
def _quadrature_spectrum(dw: int):
    # a^+ - a is real antisymmetric; i(a^+ - a) is Hermitian with real eigenvectors
    a = _annihilation(dw)
    mu, V = np.linalg.eigh(1j * (a.T - a))
    return mu, V


@dataclass(frozen=True)
class WeylHeisenberg(Representation):
    """Displacement operators restricted to the lowest ``d_trunc`` Fock states.

    ``matrix(z)`` is the block ``P D(z) P`` of the exact displacement, where P
    projects on ``n < d_trunc``.  It is obtained by a scaling-and-squaring
    matrix exponential of the generator on a padded Fock space, so the block
    entries are exact to rounding.  The block is not unitary: the norm that
    leaks above the cutoff is measured by :meth:`leakage`.
    """

    d_trunc: int
    family = "weyl-heisenberg"

    def __post_init__(self):
        if isinstance(self.d_trunc, bool) or int(self.d_trunc) != self.d_trunc or self.d_trunc < 1:
            raise DomainError(f"d_trunc must be a positive integer, got {self.d_trunc!r}")

    @property
    def d(self):
        return int(self.d_trunc)

    @property
    def identity(self):
        return 0j

    def validate(self, g):
        if isinstance(g, (bool, np.bool_)) or not isinstance(g, (int, float, complex, np.number)):
            raise DomainError(f"weyl-heisenberg element must be a complex number, got {g!r}")
        z = complex(g)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"displacement must be finite, got {z}")
        return z

    def matrix(self, g):
        z = self.validate(g)
        dw = _fock_padding(self.d, abs(z))
        a = _annihilation(dw)
        return scipy.linalg.expm(z * a.T - z.conjugate() * a)[: self.d, : self.d]

    def matrices(self, nodes):
        """Batched blocks via one spectral decomposition of ``i(a^+ - a)``.

        Uses ``D(r e^{it}) = R(t) D(r) R(t)^+`` with ``R(t) = diag(e^{int})``.
        """
        zs = np.array([self.validate(g) for g in nodes], dtype=complex)
        if zs.size == 0:
            return np.zeros((0, self.d, self.d), dtype=complex)
        dw = _fock_padding(self.d, float(np.abs(zs).max()))
        mu, V = _quadrature_spectrum(dw)
        top = V[: self.d]
        n = np.arange(self.d)
        out = np.empty((zs.size, self.d, self.d), dtype=complex)
        for idx, z in enumerate(zs):
            r, t = abs(z), np.angle(z)
            # D(r) = exp(r (a^+ - a)) = exp(-i r * i(a^+ - a))
            block = (top * np.exp(-1j * r * mu)) @ top.conj().T
            ph = np.exp(1j * n * t)
            out[idx] = ph[:, None] * block * ph.conj()[None, :]
        return out

    def compose(self, g, h):
        z, w = self.validate(g), self.validate(h)
        return z + w, complex(np.exp(1j * (z * w.conjugate()).imag))

    def leakage(self, g, n_low: int | None = None) -> float:
        """``max |(D^+ D - 1)[:n_low, :n_low]|`` for the truncated block.

        Grows with ``|z|`` and shrinks as ``d_trunc`` increases at fixed
        ``n_low`` (default ``d_trunc // 4``, at least 1).
        """
        n_low = max(1, self.d // 4) if n_low is None else int(n_low)
        D = self.matrix(g)
        G = (D.conj().T @ D)[:n_low, :n_low]
        return float(np.abs(G - np.eye(n_low)).max())

    def default_radius(self) -> float:
        return math.sqrt(2.0 * self.d)

    def quadrature(self, resolution=None, radius: float | None = None) -> Quadrature:
        """Polar product grid on ``|z| <= radius`` with density ``d^2 z / pi``.

        Gauss-Legendre in r (times the Jacobian r), uniform in angle.  Weights
        are not rescaled: paired with the unnormalized Theta seed the effects
        resolve the identity on low Fock states.
        """
        n_r, n_t = (64, 64) if resolution is None else _positive_ints(resolution, 2)
        R = self.default_radius() if radius is None else float(radius)
        if R <= 0:
            raise DomainError(f"disk radius must be positive, got {R}")
        x, w = np.polynomial.legendre.leggauss(n_r)
        r = (x + 1.0) * R / 2.0
        wr = w * R / 2.0 * r
        t = 2.0 * np.pi * np.arange(n_t) / n_t
        nodes = tuple(complex(ri * np.exp(1j * ti)) for ri in r for ti in t)
        weights = np.repeat(wr, n_t) * (2.0 * np.pi / n_t) / np.pi
        return Quadrature(nodes, weights, tolerance=1e-3)

    def sample(self, rng, radius: float | None = None, proposal_var: float | None = None):
        """Complex Gaussian proposal with importance weight against ``d^2 z / pi`` on the disk."""
        R = self.default_radius() if radius is None else float(radius)
        var = R * R / 4.0 if proposal_var is None else float(proposal_var)
        z = complex(*(rng.normal(size=2) * math.sqrt(var / 2.0)))
        if abs(z) > R:
            return z, 0.0
        return z, var * math.exp(abs(z) ** 2 / var)

    def label(self, g):
        z = self.validate(g)
        return f"{z.real:.17g}{z.imag:+.17g}j"


def _half_integer(J) -> Fraction:
    try:
        twoJ = Fraction(J) * 2
    except (TypeError, ValueError):
        raise DomainError(f"spin must be a half-integer, got {J!r}") from None
    if twoJ.denominator != 1 or twoJ < 1:
        raise DomainError(f"spin must be a positive half-integer (J >= 1/2), got {J!r}")
    return twoJ / 2


def jmatrices(J) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-J matrices ``(Jx, Jy, Jz)`` in the basis ``m = J, J-1, ..., -J``."""
    J = float(_half_integer(J))
    m = J - np.arange(int(round(2 * J)) + 1)
    # J+ |m> = sqrt(J(J+1) - m(m+1)) |m+1>, and |m+1> sits one row above |m>
    jp = np.diag(np.sqrt(J * (J + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    jm = jp.conj().T
    return (jp + jm) / 2, (jp - jm) / 2j, np.diag(m).astype(complex)


def _unit_axis(axis) -> tuple[float, float, float]:
    n = np.asarray(axis, dtype=float).reshape(-1)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise DomainError(f"rotation axis must be a finite 3-vector, got {axis!r}")
    if abs(n @ n - 1.0) > 1e-12:
        raise DomainError(f"rotation axis must be a unit vector, |n|^2 = {n @ n!r}")
    return (float(n[0]), float(n[1]), float(n[2]))


@dataclass(frozen=True)
class SU2(Representation):
    """Spin-J irrep, ``U(phi, n) = exp(i phi J.n)`` with ``phi`` in [0, 2 pi)."""

    J: float
    family = "su2"

    def __post_init__(self):
        object.__setattr__(self, "J", float(_half_integer(self.J)))

    @property
    def d(self):
        return int(round(2 * self.J)) + 1

    @property
    def identity(self):
        return SU2Element(0.0, (0.0, 0.0, 1.0))

    def validate(self, g):
        try:
            phi, axis = g
        except (TypeError, ValueError):
            raise DomainError(f"su2 element must be (phi, axis), got {g!r}") from None
        phi = float(phi)
        if not 0.0 <= phi < 2 * math.pi:
            raise DomainError(f"rotation angle must lie in [0, 2 pi), got {phi}")
        return SU2Element(phi, _unit_axis(axis))

    def matrix(self, g):
        phi, n = self.validate(g)
        Jx, Jy, Jz = jmatrices(self.J)
        return scipy.linalg.expm(1j * phi * (n[0] * Jx + n[1] * Jy + n[2] * Jz))

    def compose(self, g, h):
        """Quaternion product; the cocycle is ``(-1)^{2J}`` only when the product is ``-1``."""
        (p1, n1), (p2, n2) = self.validate(g), self.validate(h)
        a0, a = math.cos(p1 / 2), math.sin(p1 / 2) * np.array(n1)
        b0, b = math.cos(p2 / 2), math.sin(p2 / 2) * np.array(n2)
        c0 = a0 * b0 - a @ b
        c = a0 * b + b0 * a - np.cross(a, b)
        s = float(np.linalg.norm(c))
        if s < 1e-15:
            # product is +1 or -1; -1 = U(2 pi) acts as (-1)^{2J}
            sign = 1.0 if c0 > 0 or self.d % 2 == 1 else -1.0
            return self.identity, complex(sign)
        phi = 2.0 * math.atan2(s, c0)
        return SU2Element(phi, tuple(float(x) for x in c / s)), 1 + 0j

    def quadrature(self, resolution=None) -> Quadrature:
        """Product grid for ``d g = dn sin^2(phi/2) dphi / (8 pi)``, rescaled to mass ``2J + 1``.

        Midpoint rule in phi, Gauss-Legendre in cos(theta), uniform azimuth.
        The integrands met here are trigonometric polynomials, so the default
        ``(24, 12, 24)`` grid is exact to rounding for spins up to about 5.
        """
        n_phi, n_th, n_az = (24, 12, 24) if resolution is None else _positive_ints(resolution, 3)
        phi = 2 * math.pi * (np.arange(n_phi) + 0.5) / n_phi
        wphi = (2 * math.pi / n_phi) * np.sin(phi / 2) ** 2
        ct, wct = np.polynomial.legendre.leggauss(n_th)
        st = np.sqrt(1 - ct * ct)
        az = 2 * math.pi * np.arange(n_az) / n_az
        waz = 2 * math.pi / n_az
        # raw measure integrates to pi/2; Schur averaging needs mass 2J+1
        scale = self.d / (math.pi / 2)
        nodes, weights = [], []
        for p, wp in zip(phi, wphi):
            for c, s, wc in zip(ct, st, wct):
                for f in az:
                    nodes.append(SU2Element(float(p), (float(s * math.cos(f)), float(s * math.sin(f)), float(c))))
                    weights.append(wp * wc * waz / (8 * math.pi) * scale)
        return Quadrature(tuple(nodes), np.array(weights), tolerance=1e-6)

    def matrices(self, nodes):
        Jx, Jy, Jz = jmatrices(self.J)
        out = np.empty((len(nodes), self.d, self.d), dtype=complex)
        for idx, g in enumerate(nodes):
            phi, n = g
            H = n[0] * Jx + n[1] * Jy + n[2] * Jz
            ev, V = np.linalg.eigh(H)
            out[idx] = (V * np.exp(1j * phi * ev)) @ V.conj().T
        return out

    def sample(self, rng):
        """phi from density sin^2(phi/2)/pi via its CDF (phi - sin phi)/(2 pi); axis uniform."""
        u = float(rng.random())
        phi = brentq(lambda p: (p - math.sin(p)) / (2 * math.pi) - u, 0.0, 2 * math.pi, xtol=1e-14)
        phi = min(phi, math.nextafter(2 * math.pi, 0.0))
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        return SU2Element(phi, tuple(float(x) for x in v)), float(self.d)

    def label(self, g):
        phi, n = self.validate(g)
        return f"{phi:.17g};{n[0]:.17g},{n[1]:.17g},{n[2]:.17g}"


def _positive_ints(values, count):
    try:
        vals = tuple(int(v) for v in values)
    except TypeError:
        vals = (int(values),) * count
    if len(vals) != count or any(v < 1 for v in vals):
        raise DomainError(f"resolution needs {count} positive integers, got {values!r}")
    return vals


def make_rep(family: str, N: int | None = None, J=None, d_trunc: int | None = None) -> Representation:
    """Construct a representation from a family tag and its parameter."""
    if family == "pauli-d2":
        return PauliD2()
    if family == "zn-pair":
        if N is None:
            raise DomainError("zn-pair needs N")
        return ZNPair(N)
    if family == "weyl-heisenberg":
        if d_trunc is None:
            raise DomainError("weyl-heisenberg needs d_trunc")
        return WeylHeisenberg(d_trunc)
    if family == "su2":
        if J is None:
            raise DomainError("su2 needs J")
        return SU2(J)
    raise DomainError(f"unknown group family {family!r}; expected one of {', '.join(FAMILIES)}")


# functional interface


def rep_matrix(rep: Representation, g) -> np.ndarray:
    return rep.matrix(g)


def compose(rep: Representation, g, h):
    return rep.compose(g, h)


def quadrature(rep: Representation, resolution=None, **kwargs) -> Quadrature:
    return rep.quadrature(resolution, **kwargs)


def haar_sample(rep: Representation, rng: np.random.Generator, **kwargs):
    """Draw ``(g, weight)`` with ``E[weight f(g)]`` equal to the invariant integral of f."""
    return rep.sample(rng, **kwargs)


def schur_residual(rep: Representation, quad: Quadrature, A, block: int | None = None) -> float:
    """``max |sum_g w_g U(g) A U(g)^+ - Tr(A) 1|``, optionally on the top-left block."""
    A = np.asarray(A, dtype=complex)
    if A.shape != (rep.d, rep.d):
        raise ShapeError(f"operator of shape {A.shape} for a {rep.d}-dimensional representation")
    Us = rep.matrices(quad.nodes)
    S = np.einsum("g,gij,jk,glk->il", quad.weights, Us, A, Us.conj(), optimize=True)
    R = S - np.trace(A) * np.eye(rep.d)
    if block is not None:
        R = R[:block, :block]
    return float(np.abs(R).max())


def composition_residual(rep: Representation, g, h, block: int | None = None) -> float:
    """``max |U(g) U(h) - c U(gh)|`` with ``(gh, c) = rep.compose(g, h)``.

    For the heterodyne family pass ``block`` (e.g. ``d_trunc // 4``): products
    of truncated blocks only agree with the truncated product on low Fock
    states.
    """
    gh, c = rep.compose(g, h)
    R = rep.matrix(g) @ rep.matrix(h) - c * rep.matrix(gh)
    if block is not None:
        R = R[:block, :block]
    return float(np.abs(R).max())
