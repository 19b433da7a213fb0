import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from teletwist.entangle import max_entangled, twist
from teletwist.errors import CapacityError, DegenerateStateError, ShapeError
from teletwist.tensor import (
    MultiKet,
    basis_ket,
    biket_to_mat,
    contract_bra,
    dagger,
    induced_map,
    inner,
    is_unitary,
    kron,
    mat_to_biket,
    norm,
    normalize,
    product,
)

from .helpers import brute_contract, brute_kron, random_ket, random_matrix

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1, -1]).astype(complex)


class TestKron:
    def test_identities(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_scalar_factor(self, rng):
        B = random_matrix(rng, 3)
        np.testing.assert_allclose(kron(np.array([[2.5 - 1j]]), B), (2.5 - 1j) * B, atol=0)

    def test_sx_sz_index_formula(self):
        np.testing.assert_array_equal(kron(SX, SZ), brute_kron(SX, SZ))

    def test_rectangular_against_enumeration(self, rng):
        A, B = random_matrix(rng, 2, 3), random_matrix(rng, 4, 1)
        np.testing.assert_allclose(kron(A, B), brute_kron(A, B), atol=1e-15)

    def test_associative(self, rng):
        A, B, C = (random_matrix(rng, k) for k in (2, 3, 2))
        np.testing.assert_allclose(kron(kron(A, B), C), kron(A, kron(B, C)), atol=1e-14)

    def test_capacity(self, monkeypatch):
        monkeypatch.setenv("TELETWIST_MAX_DIM", "8")
        with pytest.raises(CapacityError):
            kron(np.eye(3), np.eye(3))
        kron(np.eye(2), np.eye(4))

    def test_capacity_env_invalid(self, monkeypatch):
        monkeypatch.setenv("TELETWIST_MAX_DIM", "lots")
        with pytest.raises(CapacityError):
            kron(np.eye(2), np.eye(2))


class TestMultiKet:
    def test_length_must_match_dims(self):
        with pytest.raises(ShapeError):
            MultiKet((2, 3), np.zeros(5))

    def test_immutable(self):
        k = MultiKet((2,), [1, 0])
        with pytest.raises(ValueError):
            k.amps[0] = 3

    def test_mixed_radix_layout(self):
        # leftmost subsystem most significant: |1>|0>|2> in dims (2,3,4) sits at 1*12 + 0*4 + 2
        k = product(basis_ket(2, 1), basis_ket(3, 0), basis_ket(4, 2))
        assert np.flatnonzero(k.amps).tolist() == [14]

    def test_arithmetic(self):
        a = MultiKet((2,), [1, 0])
        b = MultiKet((2,), [0, 1])
        np.testing.assert_array_equal((2 * a - b / 2).amps, [2, -0.5])
        with pytest.raises(ShapeError):
            a + MultiKet((1, 2), [1, 0])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            MultiKet((2,), [np.nan, 0])


class TestBiket:
    def test_bell_from_identity(self):
        b = mat_to_biket(np.eye(2) / np.sqrt(2))
        np.testing.assert_allclose(b.amps, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=0)
        assert b.dims == (2, 2)

    def test_round_trip(self, rng):
        A = random_matrix(rng, 3, 4)
        np.testing.assert_array_equal(biket_to_mat(mat_to_biket(A)), A)

    def test_twist_is_transpose(self, rng):
        A = random_matrix(rng, 3, 4)
        t = twist(mat_to_biket(A))
        assert t.dims == (4, 3)
        # index-swap oracle: t[k, j] = A[j, k]
        for j in range(3):
            for k in range(4):
                assert t.amps[k * 3 + j] == A[j, k]


class TestInner:
    def test_positive(self, rng):
        x = MultiKet((5,), random_matrix(rng, 5, 1).ravel())
        v = inner(x, x)
        assert v.imag == 0 and v.real >= 0
        assert np.isclose(v.real, norm(x) ** 2, rtol=1e-14)

    def test_value(self):
        plus = np.array([1, 1]) / np.sqrt(2)
        assert inner(plus, basis_ket(2, 0)) == pytest.approx(1 / np.sqrt(2), abs=1e-16)

    def test_conjugate_linear_first_argument(self):
        a, b = np.array([1j, 0]), np.array([1, 0])
        assert inner(a, b) == pytest.approx(-1j)

    def test_dagger_involution(self, rng):
        A = random_matrix(rng, 4, 3)
        np.testing.assert_array_equal(dagger(dagger(A)), A)

    def test_normalize_zero(self):
        with pytest.raises(DegenerateStateError):
            normalize(MultiKet((3,), np.full(3, 1e-16)))

    def test_inner_dims_mismatch(self):
        with pytest.raises(ShapeError):
            inner(MultiKet((2, 2), np.ones(4)), MultiKet((4,), np.ones(4)))

    def test_is_unitary(self, rng):
        assert is_unitary(SX)
        assert not is_unitary(2 * SX)


class TestContract:
    def test_unnormalized_bra_against_dense_oracle(self, rng):
        bra = np.eye(2)
        phi = random_ket(rng, 2)
        target = product(phi, basis_ket(2, 0), basis_ket(2, 0))
        got = contract_bra(mat_to_biket(bra), target, (0, 1))
        # dense matrix-vector evaluation of (<<bra| (x) 1) |target>
        full = np.kron(bra.reshape(1, -1).conj(), np.eye(2)) @ target.amps
        np.testing.assert_allclose(got.amps, full, atol=1e-15)
        assert got.dims == (2,)

    def test_bell_teleport_scalar(self):
        bell = max_entangled(2)
        target = product(basis_ket(2, 0), bell)
        out = contract_bra(bell, target, (0, 1))
        np.testing.assert_allclose(out.amps, [0.5, 0], atol=1e-16)

    def test_symmetric_bra_slot_order(self, rng):
        bra = mat_to_biket(np.diag(random_ket(rng, 3)))
        target = MultiKet((3, 3, 2), random_ket(rng, 18))
        np.testing.assert_allclose(contract_bra(bra, target, (1, 0)).amps, contract_bra(bra, target, (0, 1)).amps, atol=1e-15)

    def test_against_enumeration_oracle(self, rng):
        dims = (2, 3, 2, 3)
        amps = random_ket(rng, int(np.prod(dims)))
        B = random_matrix(rng, 3, 3)
        for slots in [(1, 3), (3, 1)]:
            got = contract_bra(mat_to_biket(B), MultiKet(dims, amps), slots)
            np.testing.assert_allclose(got.amps, brute_contract(B, dims, amps, *slots), atol=1e-14)

    def test_remaining_order_preserved(self, rng):
        t = product(basis_ket(2, 1), max_entangled(3), basis_ket(4, 3))
        out = contract_bra(max_entangled(3), t, (1, 2))
        assert out.dims == (2, 4)
        assert np.flatnonzero(np.abs(out.amps) > 1e-12).tolist() == [1 * 4 + 3]

    def test_full_contraction_is_scalar(self):
        out = contract_bra(max_entangled(2), max_entangled(2), (0, 1))
        assert out.dims == (1,)
        assert out.amps[0] == pytest.approx(1.0)

    @pytest.mark.parametrize("slots", [(0, 0), (0, 5), (-1, 1)])
    def test_bad_slots(self, slots):
        with pytest.raises(ShapeError):
            contract_bra(max_entangled(2), MultiKet((2, 2, 2), np.ones(8)), slots)

    def test_dim_mismatch(self):
        with pytest.raises(ShapeError):
            contract_bra(max_entangled(2), MultiKet((3, 3, 2), np.ones(18)), (0, 1))

    def test_linear_in_target(self, rng):
        bra = mat_to_biket(random_matrix(rng, 3))
        x, y = (MultiKet((3, 2, 3), random_ket(rng, 18)) for _ in range(2))
        a, b = 0.3 - 2j, 1.7 + 0.1j
        lhs = contract_bra(bra, a * x + b * y, (0, 2))
        rhs = a * contract_bra(bra, x, (0, 2)) + b * contract_bra(bra, y, (0, 2))
        assert lhs.allclose(rhs, atol=1e-12)


class TestInducedMap:
    def test_matched_resource_d3(self):
        psi = max_entangled(3)
        M = induced_map(psi, twist(psi), (0, 1))
        np.testing.assert_allclose(M, np.eye(3) / 3, atol=1e-15)

    def test_one_dimensional(self):
        one = MultiKet((1, 1), [1])
        np.testing.assert_array_equal(induced_map(one, one, (0, 1)), [[1]])

    def test_random_phases_d5(self, rng):
        psi = max_entangled(5, rng.uniform(0, 2 * np.pi, 5))
        M = induced_map(psi, twist(psi), (0, 1), out_slot=2)
        # oracle: contract each basis input explicitly
        cols = [contract_bra(psi, product(basis_ket(5, k), twist(psi)), (0, 1)).amps for k in range(5)]
        np.testing.assert_allclose(M, np.array(cols).T, atol=1e-15)
        assert np.abs(M - np.eye(5) / 5).max() < 1e-12

    @given(st.integers(1, 16), st.integers(0, 2**32 - 1), st.sampled_from([0, 1]))
    def test_basis_by_basis_agreement(self, d, seed, in_pos):
        rng = np.random.default_rng(seed)
        bra = mat_to_biket(random_matrix(rng, d))
        res = MultiKet((d, 2), random_ket(rng, 2 * d)) if in_pos == 0 else MultiKet((d, 2), random_ket(rng, 2 * d))
        # input at slot 0 measured with slot 1, or input at slot 1 measured with slot 0
        slots = (0, 1) if in_pos == 0 else (1, 0)
        M = induced_map(bra, res, slots, in_slot=in_pos)
        cols = []
        for k in range(d):
            e = basis_ket(d, k)
            joint = product(e, res) if in_pos == 0 else MultiKet.from_tensor(
                np.moveaxis(np.multiply.outer(e, res.tensor), 0, 1))
            cols.append(contract_bra(bra, joint, slots).amps)
        np.testing.assert_allclose(M, np.array(cols).T, atol=1e-12)

    def test_in_slot_must_be_measured(self):
        psi = max_entangled(2)
        with pytest.raises(ShapeError):
            induced_map(psi, twist(psi), (1, 2), in_slot=0)

    def test_out_slot_checked(self):
        psi = max_entangled(2)
        with pytest.raises(ShapeError):
            induced_map(psi, twist(psi), (0, 1), out_slot=1)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            induced_map(max_entangled(2), max_entangled(3), (0, 1))
