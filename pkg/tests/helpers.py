"""Shared oracles for the test-suite (kept free of library imports where possible)."""

import numpy as np


def random_ket(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_matrix(rng, m, n=None):
    n = m if n is None else n
    return rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))


def random_unitary(rng, d):
    q, r = np.linalg.qr(random_matrix(rng, d))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def brute_kron(A, B):
    """(A x B)[(i,k),(j,l)] = A[i,j] B[k,l] by explicit enumeration."""
    m, n = A.shape
    p, q = B.shape
    out = np.zeros((m * p, n * q), dtype=complex)
    for i in range(m):
        for j in range(n):
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = A[i, j] * B[k, l]
    return out


def brute_contract(bra, dims, amps, i, j):
    """Apply <<bra| to slots (i, j) of a flat mixed-radix ket by enumeration."""
    rest = [k for k in range(len(dims)) if k not in (i, j)]
    rdims = [dims[k] for k in rest]
    out = np.zeros(int(np.prod(rdims)) if rdims else 1, dtype=complex)
    for flat in range(int(np.prod(dims))):
        idx = np.unravel_index(flat, dims)
        r = np.ravel_multi_index([idx[k] for k in rest], rdims) if rdims else 0
        out[r] += np.conj(bra[idx[i], idx[j]]) * amps[flat]
    return out
