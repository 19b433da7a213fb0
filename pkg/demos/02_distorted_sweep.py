# Heterodyne teleportation with a squeezed-vacuum resource of finite strength.
import numpy as np

from teletwist.entangle import tmsv
from teletwist.groups import WeylHeisenberg
from teletwist.povm import EntangledPovm, completeness_residual
from teletwist.protocols import sweep_lambda, teleport_distorted

d = 30
rep = WeylHeisenberg(d)

# %% the displaced Theta vectors resolve the identity on low photon numbers
povm = EntangledPovm.standard(rep)
print("completeness on n <= 7:", completeness_residual(povm, n_max=7))

# %% resource coefficients shrink geometrically; the cutoff loses lambda^(2d)
state, lost = tmsv(0.5, d)
print("first Schmidt coefficients:", np.round(np.diag(state.matrix)[:4].real, 4), "lost norm:", lost)

# %% the map is U(g') D U(g)^+; contraction and operator product agree
run = teleport_distorted(rep, np.eye(d)[0], 0.6, 0.4 + 0.2j, 0.4 + 0.2j)
print("factorization residual:", run.residual, " fidelity:", run.fidelity)

# %% (|0> + |1>)/sqrt2 at g = g' = 0 against (1 + l)^2 / (2 (1 + l^2))
plus = np.zeros(d)
plus[:2] = 2**-0.5
lams = np.array([0, 0.25, 0.5, 0.75, 0.9, 0.99])
report = sweep_lambda(rep, plus, lams)
for lam, f in zip(lams, report.fidelities):
    print(f"lambda={lam:.2f}  F={f:.12f}  closed form={(1 + lam) ** 2 / (2 * (1 + lam**2)):.12f}")
