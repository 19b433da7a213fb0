# Spin teleportation with rotated resources, then entanglement swapping.
import numpy as np

from teletwist.entangle import max_entangled
from teletwist.groups import SU2
from teletwist.povm import EntangledPovm, completeness_residual
from teletwist.protocols import entanglement_swap, teleport_su2
from teletwist.tensor import mat_to_biket

rng = np.random.default_rng(3)

# %% the rotation orbit of a maximally entangled spin-1 pair is complete
rep = SU2(1)
print("spin-1 completeness residual:", completeness_residual(EntangledPovm.standard(rep)))

# %% sender and receiver share the same rotation; the contraction scalar is 1/(2J+1)
for J in (0.5, 1, 1.5, 2):
    d = int(2 * J + 1)
    x = rng.normal(size=d) + 1j * rng.normal(size=d)
    x /= np.linalg.norm(x)
    g, _ = SU2(J).sample(rng)
    out, s = teleport_su2(J, x, g.phi, g.axis)
    print(f"J={J}: scalar={s.real:.15f}  |<x|out>|^2={abs(np.vdot(x, out)) ** 2:.15f}")

# %% swapping: half of a random pair is teleported, the pair survives scaled by 1/d
d = 4
Phi = mat_to_biket((rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / 4)
Phi = Phi / np.linalg.norm(Phi.amps)
for placement in ("left", "right"):
    run = entanglement_swap(Phi, max_entangled(d), placement)
    print(placement, "scalar:", np.round(run.scalar, 15), "fidelity:", run.fidelity)
