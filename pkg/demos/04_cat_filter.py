# A cat-state resource that only passes one parity qubit.
import numpy as np

from teletwist.protocols import cat_resource, filter_teleport

res = cat_resource(2, 2, 30)
ap, am, bp, bm = res.parity_basis

# %% the two expansions of the resource coincide, and so does the parity-gate form
print("expansion mismatch:", res.line_residual, " parity gate mismatch:", res.uk_residual)
print("<a+|a-> =", abs(np.vdot(ap, am)))

# %% a parity qubit goes through; its image lives on the beta cats
c = np.array([0.6, 0.8j])
run = filter_teleport(res, c[0] * ap + c[1] * am)
print("in-subspace fidelity:", run.fidelity)
print("overlap with c0 b+ + c1 b-:", abs(np.vdot(c[0] * bp + c[1] * bm, run.output)))

# %% anything orthogonal to the parity qubit is dropped
e = np.eye(30)[3]
perp = e - ap * np.vdot(ap, e) - am * np.vdot(am, e)
run = filter_teleport(res, (ap + perp / np.linalg.norm(perp)) / np.sqrt(2))
print("leakage of the orthogonal part:", run.leakage)

# %% the unbalanced bra (the plain swapped resource) is close but not exact here
print("plain twisted bra infidelity:", 1 - filter_teleport(res, ap, measurement="twist").fidelity)
