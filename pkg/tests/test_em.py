from fractions import Fraction

import pytest

from stueckelberg.em import (PAULI, U2Element, angle_sum, charge_matrix,
                             charge_operator, em_hamiltonian, one_photon,
                             polarization_state, stokes_expectations,
                             su2_charges)
from stueckelberg.exact import (ExactMatrix, GR_I, GR_ONE, GR_ZERO,
                                GaussianRational, gr)
from stueckelberg.fock import inner_product

F = Fraction
CS_A = (F(3, 5), F(4, 5))
CS_B = (F(5, 13), F(12, 13))


def test_su2_commutators():
    ch = su2_charges()
    eps = {(1, 2): 3, (2, 3): 1, (3, 1): 2}
    for (i, j), k in eps.items():
        assert ch[i].commutator(ch[j]) == ch[k].scale(GR_I)
    for i in (1, 2, 3):
        assert ch[i].commutator(ch[0]).is_zero()


def test_charges_conserved():
    ch = su2_charges()
    h = em_hamiltonian(F(7))
    for i in (0, 1, 2, 3):
        assert ch[i].commutator(h).is_zero()
    assert h == ch[0].scale(gr(14))


def test_photon_eigenvalues():
    h = em_hamiltonian(F(5))
    s = polarization_state({(2, 1): GR_ONE})
    assert h.apply(s) == s.scale(gr(15))


def test_stokes_one_photon_values():
    assert stokes_expectations(one_photon(1)) == (F(1, 2), 0, 0, F(1, 2))
    assert stokes_expectations(one_photon(2)) == (F(1, 2), 0, 0, F(-1, 2))
    assert stokes_expectations(polarization_state({(0, 0): GR_ONE})) == (0, 0, 0, 0)


def test_stokes_rejects_bad_states():
    from stueckelberg.fock import FockPolyState
    with pytest.raises(ValueError):
        stokes_expectations(FockPolyState({(0, 0, 1, 0): GR_ONE}, 4, 2))
    with pytest.raises(ValueError):
        stokes_expectations(polarization_state({(1, 0): GR_ZERO}))


def test_u2_element_validation():
    U2Element.from_params(CS_A, (0, 0, 1), CS_B)
    with pytest.raises(ValueError):
        U2Element.from_params((F(1, 2), F(1, 2)), (0, 0, 1), (1, 0))
    with pytest.raises(ValueError):
        U2Element.from_params((1, 0), (1, 1, 0), (1, 0))  # n not unit
    with pytest.raises(ValueError):
        U2Element(ExactMatrix([[1, 1], [0, 1]]))  # not unitary


def test_exponential_expansion_matches_rotation():
    # cos I + i sin tau2 must come out as the real rotation block
    c, s = CS_A
    u = U2Element.from_params((1, 0), (0, 1, 0), CS_A)
    manual = ExactMatrix.identity(2) * gr(c) + PAULI[2] * GaussianRational(0, s)
    assert u.matrix == manual
    assert u.matrix == ExactMatrix([[c, s], [-s, c]])


def test_dual_rotation_group_law():
    d1 = U2Element.dual_rotation(CS_A)
    d2 = U2Element.dual_rotation(CS_B)
    assert d1.compose(d2).matrix == U2Element.dual_rotation(angle_sum(CS_A, CS_B)).matrix
    assert d2.compose(d1).matrix == d1.compose(d2).matrix


def test_u2_invariance_of_hamiltonian():
    i2 = ExactMatrix.identity(2)
    samples = [
        U2Element.from_params(CS_A, (0, 0, 1), (1, 0)),
        U2Element.from_params((1, 0), (0, 0, 1), CS_B),
        U2Element.from_params((1, 0), (1, 0, 0), CS_A),
        U2Element.dual_rotation(CS_A),
        U2Element.from_params((0, 1), (0, 1, 0), (1, 0)),
    ]
    samples.append(samples[0].compose(samples[3]))
    assert len(samples) >= 5
    for u in samples:
        assert u.conjugate_charge(i2) == i2


def test_adjoint_rotation_is_homomorphism():
    u1 = U2Element.from_params((1, 0), (0, 0, 1), CS_B)
    u2 = U2Element.dual_rotation(CS_A)
    r1, r2 = u1.adjoint_rotation(), u2.adjoint_rotation()
    assert u1.compose(u2).adjoint_rotation() == r1 @ r2
    # rotations are real and orthogonal
    for r in (r1, r2):
        assert all(r[i, j].is_real() for i in range(3) for j in range(3))
        assert r.transpose() @ r == ExactMatrix.identity(3)


def test_dual_rotation_turns_stokes_pair():
    du = U2Element.dual_rotation(CS_A)
    c, s = CS_A
    cos_t, sin_t = c * c - s * s, 2 * c * s
    states = [one_photon(1), one_photon(2),
              polarization_state({(1, 0): GR_ONE, (0, 1): GaussianRational(1, 1)})]
    for st in states:
        j0, j1, j2, j3 = stokes_expectations(st)
        got = []
        norm = inner_product(st, st)
        for i in (0, 1, 2, 3):
            op = charge_operator(du.conjugate_charge(charge_matrix(i)))
            got.append((inner_product(st, op.apply(st)) / norm).re)
        assert got[0] == j0
        assert got[3] == cos_t * j3 + sin_t * j1
        assert got[1] == -sin_t * j3 + cos_t * j1


def test_dual_rotations_stay_in_group():
    for cs in (CS_A, CS_B, angle_sum(CS_A, CS_A)):
        u = U2Element.dual_rotation(cs)
        assert u.matrix.dagger() @ u.matrix == ExactMatrix.identity(2)
        assert all(u.matrix[i, j].is_real() for i in range(2) for j in range(2))
