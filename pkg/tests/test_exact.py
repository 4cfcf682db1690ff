import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stueckelberg.exact import (ExactMatrix, GR_I, GR_ONE, GR_ZERO,
                                GaussianRational, JetScalar, gr,
                                mat_commutator, mat_inverse, mat_rank,
                                mat_solve, minimal_poly_check, rational_sqrt,
                                vec_outer)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
scalars = st.builds(GaussianRational, rationals, rationals)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(scalars)
def test_multiplicative_inverse(a):
    if a:
        assert a * (GR_ONE / a) == GR_ONE


@given(scalars)
def test_conjugation_and_norm(a):
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).re == a.abs2()
    assert not (a * a.conjugate()).im


def test_scalar_basics():
    assert GR_I * GR_I == -GR_ONE
    assert gr("3/2", "-1/3") == GaussianRational(Fraction(3, 2), Fraction(-1, 3))
    assert gr(2) + Fraction(1, 2) == gr("5/2")
    assert hash(gr(3)) == hash(Fraction(3))
    with pytest.raises(ZeroDivisionError):
        GR_ONE / GR_ZERO


def test_string_round_trip():
    x = gr("-7/3", "22/7")
    assert GaussianRational.from_strings(x.as_strings()) == x


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def _random_matrix(rng, n, m, span=4):
    return ExactMatrix([[GaussianRational(Fraction(rng.randint(-span, span)),
                                          Fraction(rng.randint(-span, span)))
                         for _ in range(m)] for _ in range(n)])


def _naive_rank(mat):
    """Independent oracle: plain fraction Gaussian elimination."""
    rows = [[mat[i, j] for j in range(mat.cols)] for i in range(mat.rows)]
    rank = 0
    col = 0
    r = 0
    while r < len(rows) and col < mat.cols:
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = GR_ONE / rows[r][col]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        col += 1
    return rank


def test_rank_against_independent_elimination():
    rng = random.Random(20240817)
    for _ in range(60):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = _random_matrix(rng, n, m)
        assert mat_rank(a) == _naive_rank(a)


def test_rank_extremes():
    assert mat_rank(ExactMatrix.identity(11)) == 11
    assert mat_rank(ExactMatrix.zeros(11)) == 0
    assert mat_rank(vec_outer((GR_ONE, gr(2)), (gr(3), gr(5)))) == 1


def test_rank_of_product_bound():
    rng = random.Random(99)
    for _ in range(40):
        a = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        b = _random_matrix(rng, a.cols, rng.randint(1, 5))
        assert mat_rank(a @ b) <= min(mat_rank(a), mat_rank(b))


def test_commutator_and_trace():
    a = ExactMatrix([[0, 1], [0, 0]])
    b = ExactMatrix([[0, 0], [1, 0]])
    c = mat_commutator(a, b)
    assert c == ExactMatrix([[1, 0], [0, -1]])
    assert not c.trace()
    with pytest.raises(ValueError):
        mat_commutator(a, ExactMatrix.identity(3))


def test_minimal_poly_check():
    ident = ExactMatrix.identity(3)
    assert minimal_poly_check(ident, [GR_ONE])
    proj = ExactMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert minimal_poly_check(proj, [GR_ZERO, GR_ONE])
    assert not minimal_poly_check(proj, [GR_ONE])


def test_inverse_and_solve():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 5)
        a = _random_matrix(rng, n, n)
        if mat_rank(a) < n:
            continue
        inv = mat_inverse(a)
        assert a @ inv == ExactMatrix.identity(n)
        b = tuple(GaussianRational(rng.randint(-3, 3)) for _ in range(n))
        x = mat_solve(a, b)
        from stueckelberg.exact import mat_vec
        assert mat_vec(a, x) == b


def test_matrix_json_round_trip():
    m = ExactMatrix([[gr("1/2", "-3"), GR_ZERO], [GR_I, gr(7)]])
    d = m.to_json_dict()
    assert d["rows"] == 2 and d["cols"] == 2
    assert all(isinstance(p[0], str) and "/" in p[0] for p in d["entries"])
    assert ExactMatrix.from_json_dict(d) == m


def test_jet_product_rule():
    a = JetScalar(gr(3), {"x": gr(2), "y": GR_ONE})
    b = JetScalar(gr(-1), {"x": gr("1/2")})
    p = a * b
    assert p.value == gr(-3)
    assert p.grad["x"] == gr(2) * gr(-1) + gr(3) * gr("1/2")
    assert p.grad["y"] == gr(-1)


def test_jet_embeds_scalars():
    j = JetScalar(gr(5))
    assert j + gr(2) == JetScalar(gr(7))
    assert (j * gr(3)).grad == {}
    eps = JetScalar.parameter("t")
    assert (eps * eps) == JetScalar(GR_ZERO)  # second order truncates


def test_jet_against_sympy_expansion():
    """Gradient entries must match an independent symbolic first-order expansion."""
    import sympy

    t1, t2 = sympy.symbols("t1 t2")
    x1 = JetScalar.parameter("t1")
    x2 = JetScalar.parameter("t2")

    def build_jet(c0, c1, c2):
        return JetScalar(gr(c0)) + x1 * gr(c1) + x2 * gr(c2)

    rng = random.Random(5)
    for _ in range(25):
        coeffs = [rng.randint(-4, 4) for _ in range(6)]
        a = build_jet(*coeffs[:3])
        b = build_jet(*coeffs[3:])
        got = a * b + a - b
        expr = ((coeffs[0] + coeffs[1] * t1 + coeffs[2] * t2)
                * (coeffs[3] + coeffs[4] * t1 + coeffs[5] * t2)
                + (coeffs[0] + coeffs[1] * t1 + coeffs[2] * t2)
                - (coeffs[3] + coeffs[4] * t1 + coeffs[5] * t2))
        poly = sympy.Poly(sympy.expand(expr), t1, t2)
        assert got.value == gr(int(poly.coeff_monomial(1)))
        assert got.grad.get("t1", GR_ZERO) == gr(int(poly.coeff_monomial(t1)))
        assert got.grad.get("t2", GR_ZERO) == gr(int(poly.coeff_monomial(t2)))


def test_jet_division():
    a = JetScalar(gr(4), {"x": gr(2)})
    b = JetScalar(gr(2), {"x": GR_ONE})
    q = a / b
    assert q.value == gr(2)
    assert q.grad.get("x", GR_ZERO) == GR_ZERO  # (2*2 - 4*1)/4
    with pytest.raises(ZeroDivisionError):
        a / JetScalar.parameter("y")
