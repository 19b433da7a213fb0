import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from teletwist.entangle import max_entangled, tmsv, twist, unitary_dress
from teletwist.errors import DomainError, ShapeError, ZeroProbabilityError
from teletwist.groups import PauliD2, SU2, WeylHeisenberg, ZNPair
from teletwist.povm import (
    EntangledPovm,
    apply_instrument,
    born_distribution,
    cocycle_invariance_check,
    completeness_residual,
    povm_vector,
)
from teletwist.tensor import MultiKet, basis_ket, product

from .helpers import random_ket, random_matrix

BELL = [
    np.array([1, 0, 0, 1]) / np.sqrt(2),
    np.array([0, 1, 1, 0]) / np.sqrt(2),
    np.array([0, -1j, 1j, 0]) / np.sqrt(2),
    np.array([1, 0, 0, -1]) / np.sqrt(2),
]


def unit_phases(rng, n):
    return np.exp(1j * rng.uniform(0, 2 * np.pi, n))


class TestVectors:
    def test_identity_gives_seed(self):
        p = EntangledPovm.standard(ZNPair(3))
        assert povm_vector(p, (0, 0)).allclose(p.seed, atol=0)

    def test_pauli_bell_basis(self):
        p = EntangledPovm.standard(PauliD2())
        for g, b in enumerate(BELL):
            np.testing.assert_allclose(povm_vector(p, g).amps, b, atol=1e-16)

    def test_zn2_matches_pauli_up_to_phase(self):
        a = EntangledPovm.standard(PauliD2())
        b = EntangledPovm.standard(ZNPair(2))
        pairs = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}
        for g, h in pairs.items():
            x, y = povm_vector(a, g).amps, povm_vector(b, h).amps
            assert abs(abs(np.vdot(x, y)) - 1) < 1e-14

    def test_seed_dims_checked(self):
        from teletwist.groups import quadrature
        with pytest.raises(ShapeError):
            EntangledPovm(PauliD2(), max_entangled(3), quadrature(PauliD2()))

    def test_nonunit_phases(self):
        with pytest.raises(DomainError):
            EntangledPovm.standard(PauliD2()).with_phases([1, 1, 1, 2])

    def test_effects_positive_rank_one(self):
        p = EntangledPovm.standard(ZNPair(3))
        for i in range(len(p.quad)):
            E = p.effect(i)
            c = np.trace(E).real
            assert c > 0
            np.testing.assert_allclose((E / c) @ (E / c), E / c, atol=1e-12)


class TestCompleteness:
    def test_pauli_bell_projectors(self):
        p = EntangledPovm.standard(PauliD2())
        assert completeness_residual(p) < 1e-12
        total = sum(np.outer(b, b.conj()) for b in BELL)
        np.testing.assert_allclose(total, np.eye(4), atol=1e-15)

    @pytest.mark.parametrize("N", [2, 3, 5, 8])
    def test_zn(self, N):
        assert completeness_residual(EntangledPovm.standard(ZNPair(N))) < 1e-12

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_random_max_entangled_seed(self, N, rng):
        """Schur averaging: sum_g w_g d |Psi_g><Psi_g| = 1 for any maximally entangled seed."""
        rep = ZNPair(N)
        seed = unitary_dress(max_entangled(N, rng.uniform(0, 2 * np.pi, N)), np.linalg.qr(random_matrix(rng, N))[0], "right")
        p = EntangledPovm.standard(rep)
        p = EntangledPovm(rep, seed, p.quad)
        assert completeness_residual(p) < 1e-12

    @pytest.mark.parametrize("J", [0.5, 1])
    def test_su2(self, J):
        assert completeness_residual(EntangledPovm.standard(SU2(J))) < 1e-6

    def test_heterodyne_low_block(self):
        p = EntangledPovm.standard(WeylHeisenberg(30))
        assert abs(p.scale - 1) < 1e-14
        assert completeness_residual(p, n_max=7) < 1e-3
        assert completeness_residual(p) == completeness_residual(p, n_max=7)


class TestBorn:
    @pytest.mark.parametrize("seed", range(3))
    def test_pauli_uniform(self, seed):
        rng = np.random.default_rng(seed)
        joint = product(random_ket(rng, 2), max_entangled(2))
        dist = born_distribution(EntangledPovm.standard(PauliD2()), joint, (0, 1))
        np.testing.assert_allclose(dist.probs, 0.25, atol=1e-15)

    def test_pauli_brute_force(self, rng):
        joint = product(random_ket(rng, 2), MultiKet((2, 2), random_ket(rng, 4)))
        dist = born_distribution(EntangledPovm.standard(PauliD2()), joint, (0, 1))
        T = joint.amps.reshape(4, 2)
        expected = [np.linalg.norm(b.conj() @ T) ** 2 for b in BELL]
        np.testing.assert_allclose(dist.probs, expected, atol=1e-15)
        assert abs(dist.total - 1) < 1e-12

    def test_zn3_uniform(self, rng):
        joint = product(random_ket(rng, 3), twist(max_entangled(3)))
        dist = born_distribution(EntangledPovm.standard(ZNPair(3)), joint, (0, 1))
        np.testing.assert_allclose(dist.probs, 1 / 9, atol=1e-15)

    def test_product_resource(self):
        joint = product(basis_ket(2, 0), basis_ket(2, 0), basis_ket(2, 0))
        dist = born_distribution(EntangledPovm.standard(PauliD2()), joint, (0, 1))
        np.testing.assert_allclose(dist.probs, [0.5, 0, 0, 0.5], atol=1e-16)

    def test_unnormalized_rejected(self):
        joint = product(basis_ket(2, 0), 2 * max_entangled(2))
        with pytest.raises(DomainError):
            born_distribution(EntangledPovm.standard(PauliD2()), joint, (0, 1))

    def test_slots_other_positions(self, rng):
        joint = product(max_entangled(3), random_ket(rng, 3))
        dist = born_distribution(EntangledPovm.standard(ZNPair(3)), joint, (1, 2))
        assert abs(dist.total - 1) < 1e-12

    def test_heterodyne_sums_to_one(self, rng):
        x = np.zeros(30, complex)
        x[:3] = random_ket(rng, 3)
        y = np.zeros(30, complex)
        y[:2] = random_ket(rng, 2)
        dist = born_distribution(EntangledPovm.standard(WeylHeisenberg(30)), product(x, y), (0, 1))
        assert abs(dist.total - 1) < 1e-3

    def test_sampling_frequencies(self):
        rng = np.random.default_rng(1)
        dist = born_distribution(EntangledPovm.standard(PauliD2()),
                                 product(basis_ket(2, 0), basis_ket(2, 0), basis_ket(2, 0)), (0, 1))
        draws = dist.sample(rng, 2000)
        assert set(np.unique(draws)) == {0, 3}
        assert abs((draws == 0).mean() - 0.5) < 4 * np.sqrt(0.25 / 2000)

    @given(st.sampled_from([2, 3, 4]), st.integers(0, 2**32 - 1))
    def test_sum_to_one_finite(self, N, seed):
        rng = np.random.default_rng(seed)
        joint = MultiKet((N, N, 2), random_ket(rng, 2 * N * N))
        dist = born_distribution(EntangledPovm.standard(ZNPair(N)), joint, (0, 1))
        assert abs(dist.total - 1) < 1e-10
        assert (dist.probs >= -1e-16).all()


class TestInstrument:
    @pytest.mark.parametrize("N", [2, 3])
    def test_teleport_configuration(self, N, rng):
        rep = ZNPair(N)
        p = EntangledPovm.standard(rep)
        x = random_ket(rng, N)
        for g in rep.elements():
            resource = unitary_dress(twist(max_entangled(N)), rep.matrix(g), "right")
            res = apply_instrument(p, product(x, resource), (0, 1), g)
            assert abs(abs(np.vdot(x, res.conditioned.amps)) - 1) < 1e-12
            assert res.prob == pytest.approx(1 / N**2, abs=1e-14)

    def test_trivial_dimension(self):
        rep = ZNPair(1)
        p = EntangledPovm.standard(rep)
        res = apply_instrument(p, MultiKet((1, 1, 1), [1]), (0, 1), (0, 0))
        assert res.prob == pytest.approx(1.0)
        np.testing.assert_allclose(res.conditioned.amps, [1])

    def test_distorted_conditioned(self):
        rep = WeylHeisenberg(30)
        p = EntangledPovm.standard(rep)
        x = np.zeros(30, complex)
        x[:2] = 1 / np.sqrt(2)
        res_state, _ = tmsv(0.5, 30)
        out = apply_instrument(p, product(x, twist(res_state)), (0, 1), 0j)
        expected = np.zeros(30, complex)
        expected[:2] = np.array([1, 0.5]) / np.sqrt(1.25)
        np.testing.assert_allclose(out.conditioned.amps, expected, atol=1e-12)

    def test_zero_probability(self):
        joint = product(basis_ket(2, 0), basis_ket(2, 0), basis_ket(2, 0))
        with pytest.raises(ZeroProbabilityError):
            apply_instrument(EntangledPovm.standard(PauliD2()), joint, (0, 1), 1)

    def test_prob_matches_born(self, rng):
        p = EntangledPovm.standard(ZNPair(3))
        joint = MultiKet((3, 3, 2), random_ket(rng, 18))
        dist = born_distribution(p, joint, (0, 1))
        for k, g in enumerate(p.quad.nodes):
            assert apply_instrument(p, joint, (0, 1), g).prob == pytest.approx(dist.probs[k], abs=1e-14)

    def test_linear_unnormalized(self, rng):
        p = EntangledPovm.standard(ZNPair(2))
        x, y = (MultiKet((2, 2, 2), random_ket(rng, 8)) for _ in range(2))
        s = (x + 1j * y) / np.linalg.norm(x.amps + 1j * y.amps)
        c = 1 / np.linalg.norm(x.amps + 1j * y.amps)
        out = apply_instrument(p, s, (0, 1), (1, 1)).unnormalized
        want = c * (apply_instrument(p, x, (0, 1), (1, 1)).unnormalized + 1j * apply_instrument(p, y, (0, 1), (1, 1)).unnormalized)
        assert out.allclose(want, atol=1e-12)


class TestCocycle:
    def test_trivial_phases(self):
        p = EntangledPovm.standard(PauliD2())
        assert cocycle_invariance_check(p, np.ones(4)) == 0

    def test_pauli_random(self, rng):
        p = EntangledPovm.standard(PauliD2())
        assert cocycle_invariance_check(p, unit_phases(rng, 4)) < 1e-12

    def test_zn4_distribution_unchanged(self, rng):
        p = EntangledPovm.standard(ZNPair(4))
        ph = unit_phases(rng, 16)
        assert cocycle_invariance_check(p, ph) < 1e-12
        joint = product(random_ket(rng, 4), MultiKet((4, 4), random_ket(rng, 16)))
        a = born_distribution(p, joint, (0, 1)).probs
        b = born_distribution(p.with_phases(ph), joint, (0, 1)).probs
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_mapping_form(self, rng):
        p = EntangledPovm.standard(ZNPair(3))
        assert cocycle_invariance_check(p, {(1, 2): 1j, (0, 1): -1}) < 1e-12
        with pytest.raises(DomainError):
            cocycle_invariance_check(p, {(1, 2): 2.0})

    def test_su2(self, rng):
        p = EntangledPovm.standard(SU2(0.5), resolution=(6, 4, 6))
        assert cocycle_invariance_check(p, unit_phases(rng, len(p.quad))) < 1e-12
