# Qubit teleportation through a twisted Bell pair, outcome by outcome.
import numpy as np

from teletwist.entangle import max_entangled, twist
from teletwist.groups import PauliD2, ZNPair
from teletwist.povm import EntangledPovm, born_distribution
from teletwist.protocols import teleport_all_outcomes
from teletwist.tensor import product

rng = np.random.default_rng(0)

# %% a random qubit to send
x = rng.normal(size=2) + 1j * rng.normal(size=2)
x /= np.linalg.norm(x)

# %% the Pauli orbit of the Bell state is the Bell basis
povm = EntangledPovm.standard(PauliD2())
print("Bell vectors (rows):")
print(np.round(povm.vectors.reshape(4, 4), 3))

# %% Born statistics of input (x) twist(bell): flat, whatever x is
joint = product(x, twist(max_entangled(2)))
print("outcome probabilities:", born_distribution(povm, joint, (0, 1)).probs)

# %% every outcome, after the receiver's correction, returns x
for run in teleport_all_outcomes(PauliD2(), x):
    print(f"g={PauliD2().label(run.outcome)}  p={run.prob:.3f}  fidelity={run.fidelity:.15f}")

# %% same story on a qutrit with random Schmidt phases, 9 outcomes
phases = rng.uniform(0, 2 * np.pi, 3)
y = rng.normal(size=3) + 1j * rng.normal(size=3)
y /= np.linalg.norm(y)
runs = teleport_all_outcomes(ZNPair(3), y, phases)
print("worst qutrit infidelity:", max(1 - r.fidelity for r in runs))
