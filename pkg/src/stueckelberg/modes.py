"""Classical momentum-space canonical formalism for a single field mode.

Observables are polynomials of degree at most two in the eight canonical
symbols q1..q4, pi1..pi4, with exact scalar coefficients.  Group
parameters enter either as plain Gaussian rationals or as first-order
jets, which turns "valid to first order in the parameters" into plain
equality of observables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import (ExactMatrix, GR_I, GR_ONE, GR_ZERO, GaussianRational,
                    JetScalar, as_fraction, zeros_grid)

N_MODES = 4
# symbol indices: 0..3 are q1..q4, 4..7 are pi1..pi4
_SYMBOL_NAMES = tuple(f"q{i}" for i in range(1, 5)) + tuple(f"pi{i}" for i in range(1, 5))


def _scalar(x):
    if isinstance(x, (GaussianRational, JetScalar)):
        return x
    c = GaussianRational._coerce(x)
    if c is None:
        raise TypeError(f"not an exact scalar: {x!r}")
    return c


class QuadraticObservable:
    """Polynomial of degree <= 2 over the canonical symbols.

    Monomial keys are () for the constant, (i,) for a symbol, and
    (i, j) with i <= j for a product.  Coefficients may be Gaussian
    rationals or first-order jets; mixing is fine.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _scalar(v)
                if len(k) > 2:
                    raise ValueError("observable degree exceeds 2")
                if len(k) == 2 and k[0] > k[1]:
                    k = (k[1], k[0])
                if v:
                    prev = c.get(k)
                    s = v if prev is None else prev + v
                    if s:
                        c[k] = s
                    else:
                        c.pop(k, None)
        self.coeffs = c

    @staticmethod
    def zero():
        return QuadraticObservable()

    @staticmethod
    def constant(v):
        return QuadraticObservable({(): v})

    @staticmethod
    def symbol(i):
        return QuadraticObservable({(i,): GR_ONE})

    def __add__(self, other):
        if not isinstance(other, QuadraticObservable):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            prev = out.get(k)
            s = v if prev is None else prev + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = QuadraticObservable()
        r.coeffs = out
        return r

    def __sub__(self, other):
        if not isinstance(other, QuadraticObservable):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        r = QuadraticObservable()
        r.coeffs = {k: -v for k, v in self.coeffs.items()}
        return r

    def scale(self, s):
        s = _scalar(s)
        if not s:
            return QuadraticObservable()
        r = QuadraticObservable()
        r.coeffs = {k: v * s for k, v in self.coeffs.items() if v * s}
        return r

    def __mul__(self, other):
        """Polynomial product; the combined degree must stay <= 2."""
        if not isinstance(other, QuadraticObservable):
            return self.scale(other)
        out = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                k = tuple(sorted(ka + kb))
                if len(k) > 2:
                    raise ValueError("product would exceed degree 2")
                v = va * vb
                if not v:
                    continue
                prev = out.get(k)
                s = v if prev is None else prev + v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        r = QuadraticObservable()
        r.coeffs = out
        return r

    __rmul__ = scale

    def degree(self):
        return max((len(k) for k in self.coeffs), default=0)

    def derivative(self, i):
        """Formal partial derivative with respect to symbol i."""
        out = {}
        for k, v in self.coeffs.items():
            if len(k) == 1 and k[0] == i:
                key = ()
                coeff = v
            elif len(k) == 2:
                if k == (i, i):
                    key = (i,)
                    coeff = v + v
                elif k[0] == i:
                    key = (k[1],)
                    coeff = v
                elif k[1] == i:
                    key = (k[0],)
                    coeff = v
                else:
                    continue
            else:
                continue
            prev = out.get(key)
            s = coeff if prev is None else prev + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        r = QuadraticObservable()
        r.coeffs = out
        return r

    def evaluate(self, values):
        """Evaluate at a full assignment {symbol index: scalar}."""
        total = GR_ZERO
        for k, v in self.coeffs.items():
            term = v
            for i in k:
                term = term * values[i]
            total = total + term
        return total

    def substitute_linear(self, mapping):
        """Replace each symbol by a degree <= 1 observable and expand."""
        out = QuadraticObservable()
        for k, v in self.coeffs.items():
            term = QuadraticObservable.constant(v)
            for i in k:
                term = term * mapping[i]
            out = out + term
        return out

    def __eq__(self, other):
        if not isinstance(other, QuadraticObservable):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "QuadraticObservable(0)"
        parts = []
        for k in sorted(self.coeffs, key=lambda k: (len(k), k)):
            mono = "*".join(_SYMBOL_NAMES[i] for i in k) or "1"
            parts.append(f"({self.coeffs[k]})*{mono}")
        return "QuadraticObservable(" + " + ".join(parts) + ")"


def q_sym(mu):
    """Coordinate symbol q_mu, mu in 1..4."""
    return QuadraticObservable.symbol(mu - 1)


def pi_sym(mu):
    """Momentum symbol pi_mu, mu in 1..4."""
    return QuadraticObservable.symbol(3 + mu)


def poisson_bracket(f: QuadraticObservable, g: QuadraticObservable) -> QuadraticObservable:
    """Canonical bracket with {q_mu, pi_nu} = delta."""
    out = QuadraticObservable()
    for mu in range(1, 5):
        iq, ip = mu - 1, 3 + mu
        out = out + f.derivative(iq) * g.derivative(ip) - f.derivative(ip) * g.derivative(iq)
    return out


@dataclass(frozen=True)
class ModeContext:
    """A single momentum mode, identified by its (positive) energy."""

    k0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "k0", as_fraction(self.k0))
        if self.k0 <= 0:
            raise ValueError("mode energy must be positive")


def hamiltonian(ctx: ModeContext) -> QuadraticObservable:
    """H = (1/2) sum over mu of (pi_mu^2 + k0^2 q_mu^2)."""
    half = GaussianRational(Fraction(1, 2))
    k2 = GaussianRational(ctx.k0 * ctx.k0)
    out = QuadraticObservable()
    for mu in range(1, 5):
        out = out + (pi_sym(mu) * pi_sym(mu)).scale(half)
        out = out + (q_sym(mu) * q_sym(mu)).scale(half * k2)
    return out


def amplitude_form_hamiltonian(ctx: ModeContext) -> QuadraticObservable:
    """The same energy written as 2 k0^2 sum of B_mu B_mu^+ in amplitude variables.

    B_mu = (q_mu + i pi_mu / k0)/2 and its conjugate; the fourth slot is
    already folded in through the uniform index convention, so the sum
    runs over all four modes.
    """
    k0 = GaussianRational(ctx.k0)
    half = GaussianRational(Fraction(1, 2))
    out = QuadraticObservable()
    for mu in range(1, 5):
        b = (q_sym(mu) + pi_sym(mu).scale(GR_I / k0)).scale(half)
        b_plus = (q_sym(mu) - pi_sym(mu).scale(GR_I / k0)).scale(half)
        out = out + (b * b_plus).scale(k0 * k0 * GaussianRational(2))
    return out


def u31_unit() -> ExactMatrix:
    """The phase generator i times the 4x4 identity."""
    return ExactMatrix.identity(4) * GR_I


def u31_antisym(mu, nu) -> ExactMatrix:
    """Real antisymmetric generator with +1 at (mu, nu) and -1 at (nu, mu)."""
    if mu == nu:
        raise ValueError("antisymmetric generator needs distinct indices")
    g = zeros_grid(4, 4)
    g[mu - 1][nu - 1] = GR_ONE
    g[nu - 1][mu - 1] = -GR_ONE
    return ExactMatrix._from_grid(g)


def u31_sym(mu, nu) -> ExactMatrix:
    """Symmetric generator i (e^{mu,nu} + e^{nu,mu} - delta/2)."""
    g = zeros_grid(4, 4)
    g[mu - 1][nu - 1] = g[mu - 1][nu - 1] + GR_I
    g[nu - 1][mu - 1] = g[nu - 1][mu - 1] + GR_I
    if mu == nu:
        half_i = GR_I * GaussianRational(Fraction(-1, 2))
        for a in range(4):
            g[a][a] = g[a][a] + half_i
    return ExactMatrix._from_grid(g)


def u31_generator(kind, mu=None, nu=None) -> ExactMatrix:
    if kind == "unit":
        return u31_unit()
    if kind == "antisym":
        return u31_antisym(mu, nu)
    if kind == "sym":
        return u31_sym(mu, nu)
    raise ValueError(f"unknown generator kind {kind!r}")


def _is_real(s):
    if isinstance(s, JetScalar):
        return _is_real(s.value) and all(_is_real(c) for c in s.grad.values())
    return not s.im


def _is_imaginary(s):
    if isinstance(s, JetScalar):
        return _is_imaginary(s.value) and all(_is_imaginary(c) for c in s.grad.values())
    return not s.re


@dataclass(frozen=True)
class U31Params:
    """Infinitesimal group parameters with the reality pattern enforced.

    omega0 and the purely spatial entries are real; the mixed space-time
    entries (a4) are imaginary; the (44) diagonal is real (forced by
    conjugation consistency of the transformation, though not spelled
    out with the others).
    """

    omega0: object = GR_ZERO
    antisym: dict = field(default_factory=dict)  # (mu,nu) with mu<nu
    sym: dict = field(default_factory=dict)      # (mu,nu) with mu<=nu

    def __post_init__(self):
        object.__setattr__(self, "omega0", _scalar(self.omega0))
        a = {}
        for (mu, nu), v in self.antisym.items():
            if not (1 <= mu < nu <= 4):
                raise ValueError("antisymmetric labels need mu < nu")
            a[(mu, nu)] = _scalar(v)
        s = {}
        for (mu, nu), v in self.sym.items():
            if not (1 <= mu <= nu <= 4):
                raise ValueError("symmetric labels need mu <= nu")
            s[(mu, nu)] = _scalar(v)
        object.__setattr__(self, "antisym", a)
        object.__setattr__(self, "sym", s)
        if not _is_real(self.omega0):
            raise ValueError("omega0 must be real")
        for (mu, nu), v in a.items():
            if nu == 4:
                if not _is_imaginary(v):
                    raise ValueError(f"antisym ({mu},4) parameter must be imaginary")
            elif not _is_real(v):
                raise ValueError(f"antisym ({mu},{nu}) parameter must be real")
        for (mu, nu), v in s.items():
            if nu == 4 and mu != 4:
                if not _is_imaginary(v):
                    raise ValueError(f"sym ({mu},4) parameter must be imaginary")
            elif not _is_real(v):
                raise ValueError(f"sym ({mu},{nu}) parameter must be real")

    def antisym_at(self, mu, nu):
        if mu == nu:
            return GR_ZERO
        if mu < nu:
            return self.antisym.get((mu, nu), GR_ZERO)
        return -self.antisym.get((nu, mu), GR_ZERO)

    def sym_at(self, mu, nu):
        if mu > nu:
            mu, nu = nu, mu
        return self.sym.get((mu, nu), GR_ZERO)

    def sym_trace(self):
        t = GR_ZERO
        for mu in range(1, 5):
            t = t + self.sym_at(mu, mu)
        return t

    def sym_traceless_at(self, mu, nu):
        v = self.sym_at(mu, nu)
        if mu == nu:
            v = v - self.sym_trace() * GaussianRational(Fraction(1, 4))
        return v


def generator_matrix(params: U31Params) -> ExactMatrix:
    """4x4 matrix of the infinitesimal transformation, minus the identity."""
    out = ExactMatrix.zeros(4)
    out = out + u31_unit() * (-params.omega0)
    for mu in range(1, 5):
        for nu in range(1, 5):
            a = params.antisym_at(mu, nu)
            if a and mu < nu:
                out = out + u31_antisym(mu, nu) * (a + a)
            s = params.sym.get((mu, nu)) if mu <= nu else None
            if s:
                mult = s if mu == nu else s + s
                out = out - u31_sym(mu, nu) * mult
    return out


def infinitesimal_transform(qs, pis, params: U31Params, ctx: ModeContext):
    """First-order canonical variation (delta q, delta pi) of a state.

    Inputs may be plain scalars or observables: only ring operations are
    used.  The symmetric sector enters through its traceless part.
    """
    k0 = GaussianRational(ctx.k0)
    dq = []
    dpi = []
    for mu in range(1, 5):
        acc_q = pis[mu - 1] * (params.omega0 / k0)
        acc_p = qs[mu - 1] * (-params.omega0 * k0)
        for nu in range(1, 5):
            a = params.antisym_at(mu, nu)
            if a:
                acc_q = acc_q + qs[nu - 1] * (a + a)
                acc_p = acc_p + pis[nu - 1] * (a + a)
            st = params.sym_traceless_at(mu, nu)
            if st:
                two = st + st
                acc_q = acc_q + pis[nu - 1] * (two / k0)
                acc_p = acc_p - qs[nu - 1] * (two * k0)
        dq.append(acc_q)
        dpi.append(acc_p)
    return tuple(dq), tuple(dpi)


def generating_function(params: U31Params, ctx: ModeContext) -> QuadraticObservable:
    """F(q, pi') for the infinitesimal transformation.

    The momentum symbols stand for the primed momenta here.  The plain
    q.pi' term generates the identity; each parameter adds its bilinear.
    """
    k0 = GaussianRational(ctx.k0)
    half = GaussianRational(Fraction(1, 2))
    out = QuadraticObservable()
    for mu in range(1, 5):
        out = out + q_sym(mu) * pi_sym(mu)
        out = out + ((pi_sym(mu) * pi_sym(mu)).scale(GR_ONE / k0)
                     + (q_sym(mu) * q_sym(mu)).scale(k0)).scale(params.omega0 * half)
    for mu in range(1, 5):
        for nu in range(1, 5):
            a = params.antisym_at(mu, nu)
            if a:
                out = out + (pi_sym(mu) * q_sym(nu) - pi_sym(nu) * q_sym(mu)).scale(a)
            st = params.sym_traceless_at(mu, nu)
            if st:
                out = out + ((pi_sym(mu) * pi_sym(nu)).scale(GR_ONE / k0)
                             + (q_sym(mu) * q_sym(nu)).scale(k0)).scale(st)
    return out


def transform_from_generating_function(params: U31Params, ctx: ModeContext):
    """Recover (delta q, delta pi) from F to first order in the parameters.

    Only meaningful when the parameters are jets: the inversion
    pi' = pi - correction is exact because second-order products vanish.
    """
    f = generating_function(params, ctx)
    dq = []
    dpi = []
    for mu in range(1, 5):
        # pi_mu = dF/dq_mu = pi'_mu + correction(q, pi'); inverting and then
        # reading the primed slots as unprimed is exact at first order since
        # the correction is already first order in the parameters.
        dpi.append(-(f.derivative(mu - 1) - pi_sym(mu)))
        dq.append(f.derivative(3 + mu) - q_sym(mu))
    return tuple(dq), tuple(dpi)


@lru_cache(maxsize=8)
def conserved_charges(ctx: ModeContext) -> dict:
    """The seventeen quadratic charges: 6 antisymmetric, 10 symmetric, 1 phase."""
    k0 = GaussianRational(ctx.k0)
    half = GaussianRational(Fraction(1, 2))
    quarter = GaussianRational(Fraction(1, 4))
    charges = {}
    for mu in range(1, 5):
        for nu in range(mu + 1, 5):
            charges[("antisym", mu, nu)] = pi_sym(mu) * q_sym(nu) - pi_sym(nu) * q_sym(mu)
    trace_part = QuadraticObservable()
    for al in range(1, 5):
        trace_part = trace_part + (pi_sym(al) * pi_sym(al)).scale(GR_ONE / k0) \
            + (q_sym(al) * q_sym(al)).scale(k0)
    for mu in range(1, 5):
        for nu in range(mu, 5):
            j = (pi_sym(mu) * pi_sym(nu)).scale(GR_ONE / k0) + (q_sym(mu) * q_sym(nu)).scale(k0)
            if mu == nu:
                j = j - trace_part.scale(quarter)
            charges[("sym", mu, nu)] = j
    charges[("unit",)] = trace_part.scale(half)
    return charges


def charge_for_params(params: U31Params, ctx: ModeContext) -> QuadraticObservable:
    """The observable generating the parametrised flow through the bracket."""
    charges = conserved_charges(ctx)
    out = charges[("unit",)].scale(params.omega0)
    for (mu, nu), a in params.antisym.items():
        out = out + charges[("antisym", mu, nu)].scale(a + a)
    for (mu, nu), s in params.sym.items():
        mult = s if mu == nu else s + s
        out = out + charges[("sym", mu, nu)].scale(mult)
    return out


def basis_directions(jet: bool):
    """Sixteen independent parameter directions spanning the symmetry algebra.

    The symmetric diagonal contributes only its traceless part, so the
    three differences against the (44) entry complete the basis; the
    pure-trace direction acts trivially and is checked separately.
    Directions mixing index 4 carry an imaginary coefficient to satisfy
    the reality pattern.
    """
    def coeff(name, imaginary):
        unit = GR_I if imaginary else GR_ONE
        return JetScalar.parameter(name, unit) if jet else unit

    dirs = []
    dirs.append(("omega0", U31Params(omega0=coeff("omega0", False))))
    for (mu, nu) in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
        name = f"a{mu}{nu}"
        dirs.append((name, U31Params(antisym={(mu, nu): coeff(name, nu == 4)})))
    for (mu, nu) in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
        name = f"s{mu}{nu}"
        dirs.append((name, U31Params(sym={(mu, nu): coeff(name, nu == 4)})))
    for a in (1, 2, 3):
        name = f"d{a}"
        c = coeff(name, False)
        dirs.append((name, U31Params(sym={(a, a): c, (4, 4): -c})))
    return dirs


def trace_direction(jet: bool):
    """The pure-trace symmetric direction, which must act as the identity."""
    c = JetScalar.parameter("trace") if jet else GR_ONE
    return U31Params(sym={(mu, mu): c for mu in range(1, 5)})


def _generator_basis_inverse():
    """Cached inverse of the flattened generator-basis matrix."""
    global _BASIS_INVERSE
    if _BASIS_INVERSE is None:
        dirs = basis_directions(jet=False)
        cols = []
        for _, par in dirs:
            g = generator_matrix(par)
            cols.append([g[i, j] for i in range(4) for j in range(4)])
        a = ExactMatrix._from_grid(
            [[cols[c][r] for c in range(len(dirs))] for r in range(16)])
        from .exact import mat_inverse
        _BASIS_INVERSE = (tuple(name for name, _ in dirs), mat_inverse(a))
    return _BASIS_INVERSE


_BASIS_INVERSE = None


def decompose_generator(m: ExactMatrix):
    """Coefficients of a 4x4 matrix in the sixteen basis generator directions.

    Over the complex scalars the sixteen directions span everything, so
    a decomposition always exists; membership in the real symmetry
    algebra is equivalent to all coefficients being real, which callers
    check where it matters.
    """
    from .exact import mat_vec
    names, inv = _generator_basis_inverse()
    b = [m[i, j] for i in range(4) for j in range(4)]
    x = mat_vec(inv, b)
    return {name: x[k] for k, name in enumerate(names)}


def params_scaled(direction_table, coeffs) -> U31Params:
    """Linear combination of basis directions with the given coefficients."""
    omega0 = GR_ZERO
    antisym = {}
    sym = {}
    for (name, par), c in zip(direction_table, coeffs):
        if not c:
            continue
        omega0 = omega0 + par.omega0 * c
        for k, v in par.antisym.items():
            antisym[k] = antisym.get(k, GR_ZERO) + v * c
        for k, v in par.sym.items():
            sym[k] = sym.get(k, GR_ZERO) + v * c
    out = object.__new__(U31Params)
    object.__setattr__(out, "omega0", omega0)
    object.__setattr__(out, "antisym", {k: v for k, v in antisym.items() if v})
    object.__setattr__(out, "sym", {k: v for k, v in sym.items() if v})
    return out
