from fractions import Fraction

import pytest

from stueckelberg.exact import (GR_I, GR_MINUS_ONE, GR_ONE, GR_ZERO,
                                GaussianRational, gr)
from stueckelberg.fock import (FockPolyState, LadderOp, SchemeMismatchError,
                               TruncationOverflowError, apply_covariant,
                               apply_ladder, decompose_physical,
                               energy_operator, inner_product, monomial_basis,
                               normalized_gram, number_operator, quantize,
                               quantum_charges)
from stueckelberg.modes import (ModeContext, conserved_charges,
                                poisson_bracket, q_sym)

N = 6
K0 = Fraction(5)


def melt(*n):
    return tuple(n)


def test_basis_enumeration():
    basis = monomial_basis(2)
    assert basis[0] == (0, 0, 0, 0)
    assert len(basis) == 15  # C(4,4) + C(5,4) with degrees 0..2 -> 1 + 4 + 10
    assert len(monomial_basis(N)) == 210


def test_creation_and_annihilation():
    vac = FockPolyState.vacuum(N, 2)
    s = apply_ladder(LadderOp(1, "create"), vac)
    assert s.coeffs == {(1, 0, 0, 0): GR_ONE}
    back = apply_ladder(LadderOp(1, "annihilate"), s)
    assert back == vac
    # scalar sector picks up the metric sign on annihilation
    t = apply_ladder(LadderOp(4, "create"), vac)
    down = apply_ladder(LadderOp(4, "annihilate"), t)
    assert down == vac.scale(GR_MINUS_ONE)


def test_commutator_actions():
    for scheme, want4 in ((2, -1), (1, -1)):
        # in both schemes the pair labelled (b0, b0+) has commutator -1;
        # scheme 1 swaps which of the two is the creator
        for b in monomial_basis(N - 1):
            s = FockPolyState.basis_state(b, N, scheme)
            if scheme == 2:
                create, annih = LadderOp(4, "create"), LadderOp(4, "annihilate")
                comm = (apply_ladder(annih, apply_ladder(create, s))
                        - apply_ladder(create, apply_ladder(annih, s)))
            else:
                create, annih = LadderOp(4, "create"), LadderOp(4, "annihilate")
                comm = (apply_ladder(create, apply_ladder(annih, s))
                        - apply_ladder(annih, apply_ladder(create, s)))
            assert comm == s.scale(GaussianRational(want4)), (scheme, b)
    for mode in (1, 2, 3):
        for b in monomial_basis(N - 1)[:20]:
            s = FockPolyState.basis_state(b, N, 2)
            comm = (apply_ladder(LadderOp(mode, "annihilate"),
                                 apply_ladder(LadderOp(mode, "create"), s))
                    - apply_ladder(LadderOp(mode, "create"),
                                   apply_ladder(LadderOp(mode, "annihilate"), s)))
            assert comm == s


def test_vacuum_annihilated_in_both_schemes():
    for scheme in (1, 2):
        vac = FockPolyState.vacuum(N, scheme)
        for mode in (1, 2, 3, 4):
            assert apply_ladder(LadderOp(mode, "annihilate"), vac).is_zero()


def test_truncation_overflow_is_loud():
    top = FockPolyState.basis_state((N, 0, 0, 0), N, 2)
    with pytest.raises(TruncationOverflowError):
        apply_ladder(LadderOp(2, "create"), top)
    with pytest.raises(TruncationOverflowError):
        FockPolyState({(N + 1, 0, 0, 0): GR_ONE}, N, 2)


def test_scheme_mixing_is_an_error():
    a = FockPolyState.vacuum(N, 1)
    b = FockPolyState.vacuum(N, 2)
    with pytest.raises(SchemeMismatchError):
        a + b
    with pytest.raises(SchemeMismatchError):
        inner_product(a, b)
    with pytest.raises(SchemeMismatchError):
        energy_operator(K0, 2).apply(a)


def test_gram_diagonals():
    basis, g = normalized_gram(4, scheme=2)
    for i, b in enumerate(basis):
        want = GR_ONE if b[3] % 2 == 0 else GR_MINUS_ONE
        assert g[i, i] == want
        for j in range(len(basis)):
            if j != i:
                assert not g[i, j]
    basis1, g1 = normalized_gram(4, scheme=1)
    assert all(g1[i, i] == GR_ONE for i in range(len(basis1)))


def test_subspace_orthogonality():
    # states with zero scalar-sector occupation are orthogonal to the rest
    phys = FockPolyState.basis_state((2, 0, 0, 0), N, 2)
    for n4 in (1, 2, 3):
        other = FockPolyState.basis_state((2, 0, 0, n4), N, 2)
        assert inner_product(phys, other) == GR_ZERO


def _oracle_scalar_action(n4, scheme):
    """Independent route: push the annihilator through n4 creators.

    Uses only the pair commutator of the scalar sector: each swap picks
    up the commutator constant, giving eta * n4 in total.
    """
    eta = -1  # [annihilator, creator] for the scalar pair, scheme 2
    if scheme == 1:
        eta = 1  # the swapped pair has the standard sign
    total = 0
    for _ in range(n4):
        total += eta
    return total


@pytest.mark.parametrize("scheme", [1, 2])
def test_energy_spectrum_against_commutator_oracle(scheme):
    # the subtracted scalar term acts as the accumulated pair commutator,
    # so the eigenvalue is k0 (spatial count - pushed-through number)
    p0 = energy_operator(K0, scheme)
    for b in monomial_basis(N):
        s = FockPolyState.basis_state(b, N, scheme)
        spatial = b[0] + b[1] + b[2]
        lam = K0 * (spatial - _oracle_scalar_action(b[3], scheme))
        assert p0.apply(s) == s.scale(GaussianRational(lam)), (scheme, b)


def test_energy_signs():
    lams2 = set()
    for b in monomial_basis(N):
        s = FockPolyState.basis_state(b, N, 2)
        out = energy_operator(K0, 2).apply(s)
        coeff = out.coeffs.get(b, GR_ZERO)
        lams2.add(coeff.re / K0)
    assert lams2 == set(range(N + 1))  # every degree, all nonnegative
    s = FockPolyState.basis_state((0, 0, 0, 2), N, 1)
    out = energy_operator(K0, 1).apply(s)
    assert out == s.scale(GaussianRational(-2 * K0))


def test_vacuum_energy_zero():
    for scheme in (1, 2):
        vac = FockPolyState.vacuum(N, scheme)
        assert energy_operator(K0, scheme).apply(vac).is_zero()


def test_quantum_charges_commute_with_energy():
    qc = quantum_charges(K0, 2)
    p0 = energy_operator(K0, 2)
    assert len(qc) == 17
    for key, j in qc.items():
        assert j.commutator(p0).is_zero(), key


def test_charges_unavailable_in_scheme1():
    with pytest.raises(SchemeMismatchError):
        quantum_charges(K0, 1)


def test_number_charge_eigenvalues():
    qc = quantum_charges(K0, 2)
    for b in monomial_basis(N)[:40]:
        s = FockPolyState.basis_state(b, N, 2)
        assert qc[("unit",)].apply(s) == s.scale(GaussianRational(sum(b)))


def test_quantize_reproduces_charges():
    ctx = ModeContext(K0)
    classical = conserved_charges(ctx)
    quantum = quantum_charges(K0, 2)
    for key in classical:
        assert quantize(classical[key], K0, 2) == quantum[key], key


def test_quantize_rejects_non_bilinear():
    with pytest.raises(ValueError):
        quantize(q_sym(1) * q_sym(1), K0, 2)


def test_quantum_charges_realise_matrix_structure():
    from stueckelberg.fock import quantum_charge_combination
    from stueckelberg.modes import (basis_directions, decompose_generator,
                                    generator_matrix, params_scaled)
    from stueckelberg.exact import mat_commutator
    qc = quantum_charges(K0, 2)
    ndirs = basis_directions(jet=False)
    table = dict(ndirs)
    for na, nb in (("a12", "a13"), ("a14", "s14"), ("omega0", "s12"), ("d1", "s14")):
        qa = quantum_charge_combination(table[na], qc)
        qb = quantum_charge_combination(table[nb], qc)
        comm = mat_commutator(generator_matrix(table[na]), generator_matrix(table[nb]))
        coeffs = decompose_generator(comm)
        rebuilt = params_scaled(ndirs, [coeffs[n] for n, _ in ndirs])
        assert qa.commutator(qb) == quantum_charge_combination(rebuilt, qc).scale(GR_I)


def test_commutator_bracket_correspondence_sample():
    ctx = ModeContext(K0)
    classical = conserved_charges(ctx)
    pairs = [(("antisym", 1, 2), ("antisym", 1, 3)),
             (("antisym", 1, 4), ("sym", 1, 4)),
             (("sym", 1, 2), ("sym", 2, 3)),
             (("unit",), ("sym", 1, 4))]
    for ka, kb in pairs:
        qa, qb = quantize(classical[ka], K0, 2), quantize(classical[kb], K0, 2)
        lhs = qa.commutator(qb)
        rhs = quantize(poisson_bracket(classical[ka], classical[kb]), K0, 2).scale(GR_I)
        assert lhs == rhs, (ka, kb)


def test_canonical_pair_commutator():
    s = FockPolyState.basis_state((1, 0, 1, 0), N, 2)
    for mu in (1, 4):
        for nu in (1, 4):
            def x(state, mode=mu):
                return apply_covariant(mode, False, state) + apply_covariant(mode, True, state)

            def y(state, mode=nu):
                return apply_covariant(mode, False, state) - apply_covariant(mode, True, state)

            comm = x(y(s)) - y(x(s))
            got = comm.scale(GaussianRational(0, Fraction(-1, 2)))
            want = s.scale(GR_I) if mu == nu else s.scale(GR_ZERO)
            assert got == want


def test_physical_decomposition_cases():
    two = FockPolyState.basis_state((2, 0, 0, 0), N, 2)
    sp, sn = decompose_physical(two)
    assert sp == two and sn.is_zero()

    mixed = FockPolyState.basis_state((1, 0, 0, 1), N, 2)
    sp, sn = decompose_physical(mixed)
    assert sp.is_zero() and sn == mixed

    combo = FockPolyState({(1, 0, 0, 0): GR_ONE, (0, 0, 0, 1): GR_ONE}, N, 2)
    sp, sn = decompose_physical(combo)
    assert sp + sn == combo
    assert inner_product(sp, sn) == GR_ZERO
    assert inner_product(sn, sn) == GR_MINUS_ONE

    with pytest.raises(SchemeMismatchError):
        decompose_physical(FockPolyState.vacuum(N, 1))


def test_truncation_exactness():
    narrow = quantum_charges(K0, 2)
    wide = quantum_charges(K0, 2)
    keys = sorted(narrow.keys(), key=str)
    for key in keys[:6]:
        for b in monomial_basis(4):
            a = narrow[key].apply(FockPolyState.basis_state(b, N, 2))
            c = wide[key].apply(FockPolyState.basis_state(b, N + 2, 2))
            assert a.coeffs == c.coeffs, (key, b)
    for i, ka in enumerate(keys[:6]):
        for kb in keys[i + 1:6]:
            assert narrow[ka].commutator(narrow[kb]).coeffs == \
                wide[ka].commutator(wide[kb]).coeffs


def test_number_operator_helper():
    s = FockPolyState.basis_state((0, 2, 0, 3), N, 2)
    assert number_operator(2, 2).apply(s) == s.scale(gr(2))
    assert number_operator(4, 2).apply(s) == s.scale(gr(3))
