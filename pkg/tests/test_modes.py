from fractions import Fraction

import pytest

from stueckelberg.exact import (ExactMatrix, GR_I, GR_ONE, GR_ZERO, gr,
                                mat_commutator)
from stueckelberg.modes import (ModeContext, QuadraticObservable, U31Params,
                                amplitude_form_hamiltonian, basis_directions,
                                charge_for_params, conserved_charges,
                                decompose_generator, generating_function,
                                generator_matrix, hamiltonian,
                                infinitesimal_transform, params_scaled,
                                pi_sym, poisson_bracket, q_sym,
                                trace_direction,
                                transform_from_generating_function,
                                u31_antisym, u31_generator, u31_sym, u31_unit)


@pytest.fixture(scope="module")
def ctx():
    return ModeContext(Fraction(5))


def test_canonical_brackets():
    one = QuadraticObservable.constant(GR_ONE)
    assert poisson_bracket(q_sym(1), pi_sym(1)) == one
    assert poisson_bracket(q_sym(1), q_sym(2)).is_zero()
    assert poisson_bracket(pi_sym(3), pi_sym(4)).is_zero()
    assert poisson_bracket(pi_sym(2), q_sym(2)) == QuadraticObservable.constant(-GR_ONE)


def test_observable_algebra_guard():
    q = q_sym(1)
    with pytest.raises(ValueError):
        (q * q) * q  # degree 3 is out of scope


def test_hamiltonian_forms_agree(ctx):
    assert hamiltonian(ctx) == amplitude_form_hamiltonian(ctx)


def test_hamiltonian_single_excitation(ctx):
    vals = {i: GR_ZERO for i in range(8)}
    vals[0] = GR_ONE  # q1 = 1, everything else zero
    assert hamiltonian(ctx).evaluate(vals) == gr(Fraction(25, 2))
    # unit frequency: the configuration energy is k0^2/2 = 1/2
    assert hamiltonian(ModeContext(Fraction(1))).evaluate(vals) == gr(Fraction(1, 2))


def test_unit_generator_and_blocks():
    assert u31_unit() == ExactMatrix.identity(4) * GR_I
    m = u31_antisym(1, 2)
    assert m[0, 1] == GR_ONE and m[1, 0] == -GR_ONE
    assert m.transpose() == -m
    s = u31_sym(1, 2)
    assert s[0, 1] == GR_I and s[1, 0] == GR_I
    d = u31_sym(3, 3)
    assert d[2, 2] == gr(0, Fraction(3, 2))  # 2i - i/2
    assert u31_generator("unit") == u31_unit()
    with pytest.raises(ValueError):
        u31_generator("bogus")
    with pytest.raises(ValueError):
        u31_antisym(2, 2)


def test_sym_diagonal_sum_vanishes():
    total = ExactMatrix.zeros(4)
    for mu in range(1, 5):
        total = total + u31_sym(mu, mu)
    assert total.is_zero()


def test_generator_closure_is_real():
    dirs = basis_directions(jet=False)
    mats = [generator_matrix(par) for _, par in dirs]
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            coeffs = decompose_generator(mat_commutator(a, b))
            assert all(c.is_real() for c in coeffs.values())


def test_rotation_block_closes():
    dirs = [d for d in basis_directions(jet=False) if d[0].startswith("a")]
    mats = {name: generator_matrix(par) for name, par in dirs}
    names = list(mats)
    for i, ni in enumerate(names):
        for nj in names[i + 1:]:
            coeffs = decompose_generator(mat_commutator(mats[ni], mats[nj]))
            assert all(not c for name, c in coeffs.items() if not name.startswith("a"))


def test_reality_pattern_enforced():
    U31Params(omega0=GR_ONE)
    U31Params(antisym={(1, 4): GR_I})
    U31Params(sym={(2, 4): gr(0, 3)})
    U31Params(sym={(4, 4): gr(2)})
    with pytest.raises(ValueError):
        U31Params(omega0=GR_I)
    with pytest.raises(ValueError):
        U31Params(antisym={(1, 4): GR_ONE})
    with pytest.raises(ValueError):
        U31Params(antisym={(1, 2): GR_I})
    with pytest.raises(ValueError):
        U31Params(sym={(1, 4): GR_ONE})
    with pytest.raises(ValueError):
        U31Params(sym={(4, 4): GR_I})
    with pytest.raises(ValueError):
        U31Params(antisym={(2, 1): GR_ONE})  # unordered label


def test_phase_only_variation(ctx):
    par = U31Params(omega0=gr(Fraction(1, 3)))
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    dq, dpi = infinitesimal_transform(qs, pis, par, ctx)
    k0 = gr(5)
    for mu in range(1, 5):
        assert dq[mu - 1] == pi_sym(mu).scale(gr(Fraction(1, 3)) / k0)
        assert dpi[mu - 1] == q_sym(mu).scale(-gr(Fraction(1, 3)) * k0)


def test_rotation_only_variation(ctx):
    om = gr(Fraction(1, 2))
    par = U31Params(antisym={(1, 2): om})
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    dq, dpi = infinitesimal_transform(qs, pis, par, ctx)
    two_om = om + om
    assert dq[0] == q_sym(2).scale(two_om)
    assert dq[1] == q_sym(1).scale(-two_om)
    assert dpi[0] == pi_sym(2).scale(two_om)
    assert dq[2].is_zero() and dq[3].is_zero()


def test_zero_parameters_zero_variation(ctx):
    par = U31Params()
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    dq, dpi = infinitesimal_transform(qs, pis, par, ctx)
    assert all(o.is_zero() for o in dq + dpi)


def test_generating_function_identity_part(ctx):
    f = generating_function(U31Params(), ctx)
    want = QuadraticObservable()
    for mu in range(1, 5):
        want = want + q_sym(mu) * pi_sym(mu)
    assert f == want


@pytest.mark.parametrize("name", ["omega0", "a12", "a14", "s12", "s14", "d1"])
def test_generating_function_first_order(ctx, name):
    table = dict(basis_directions(jet=True))
    par = table[name]
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    dq1, dpi1 = infinitesimal_transform(qs, pis, par, ctx)
    dq2, dpi2 = transform_from_generating_function(par, ctx)
    assert all(a == b for a, b in zip(dq1, dq2))
    assert all(a == b for a, b in zip(dpi1, dpi2))


def test_trace_direction_acts_trivially(ctx):
    par = trace_direction(jet=True)
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    dq, dpi = infinitesimal_transform(qs, pis, par, ctx)
    assert all(o.is_zero() for o in dq + dpi)
    assert generator_matrix(trace_direction(jet=False)).is_zero()


def test_charges_commute_with_energy(ctx):
    h = hamiltonian(ctx)
    charges = conserved_charges(ctx)
    assert len(charges) == 17
    for key, j in charges.items():
        assert poisson_bracket(j, h).is_zero(), key


def test_unit_charge_is_scaled_energy(ctx):
    charges = conserved_charges(ctx)
    assert charges[("unit",)] == hamiltonian(ctx).scale(GR_ONE / gr(5))


def test_charge_flow_matches_variation(ctx):
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    for name, par in basis_directions(jet=False):
        g = charge_for_params(par, ctx)
        dq, dpi = infinitesimal_transform(qs, pis, par, ctx)
        for mu in range(1, 5):
            assert poisson_bracket(q_sym(mu), g) == dq[mu - 1], (name, mu)
            assert poisson_bracket(pi_sym(mu), g) == dpi[mu - 1], (name, mu)


def test_structure_constant_sample(ctx):
    dirs = basis_directions(jet=False)
    table = dict(dirs)
    for na, nb in (("a12", "a13"), ("a12", "s12"), ("omega0", "s14"), ("a14", "a24")):
        ga = charge_for_params(table[na], ctx)
        gb = charge_for_params(table[nb], ctx)
        ca = generator_matrix(table[na])
        cb = generator_matrix(table[nb])
        coeffs = decompose_generator(mat_commutator(ca, cb))
        rebuilt = params_scaled(dirs, [coeffs[n] for n, _ in dirs])
        assert poisson_bracket(ga, gb) == charge_for_params(rebuilt, ctx)


def test_hamiltonian_first_order_invariance(ctx):
    h = hamiltonian(ctx)
    qs = tuple(q_sym(m) for m in range(1, 5))
    pis = tuple(pi_sym(m) for m in range(1, 5))
    for name, par in basis_directions(jet=True):
        dq, dpi = infinitesimal_transform(qs, pis, par, ctx)
        mapping = {}
        for mu in range(1, 5):
            mapping[mu - 1] = q_sym(mu) + dq[mu - 1]
            mapping[3 + mu] = pi_sym(mu) + dpi[mu - 1]
        assert h.substitute_linear(mapping) == h, name


def test_mode_context_validation():
    with pytest.raises(ValueError):
        ModeContext(Fraction(0))
    with pytest.raises(ValueError):
        ModeContext(Fraction(-2))
