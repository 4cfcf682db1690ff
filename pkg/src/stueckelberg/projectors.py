"""Momentum-space solution theory: energy and spin projectors, matrix dyads.

Everything here works at one exact four-momentum.  To keep the whole
pipeline rational the momentum must be Pythagorean: |p| and the energy
p0 both rational on the mass shell.  Spin-projection operators divide
by |p|, so they are undefined in the rest frame; the energy and squared
spin projectors are fine there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (ExactMatrix, GR_I, GR_ONE, GR_ZERO, GaussianRational,
                    as_fraction, mat_rank, rational_sqrt, vec_dagger, vec_dot,
                    vec_mat, vec_outer, vec_scale, mat_vec)
from .wave import WaveMatrices, wave_matrices

SPIN_STATES = ((1, 1), (1, -1), (1, 0), (0, 0))  # (spin, projection)


class RestFrameError(ValueError):
    """Spin direction undefined at |p| = 0."""


class IrrationalMomentumError(ValueError):
    """|p| or p0 irrational; choose a Pythagorean momentum."""


@dataclass(frozen=True)
class FourMomentum:
    """On-shell momentum (p1, p2, p3; p0, m) with exact shell constraint."""

    p1: Fraction
    p2: Fraction
    p3: Fraction
    p0: Fraction
    m: Fraction

    def __post_init__(self):
        for name in ("p1", "p2", "p3", "p0", "m"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.m <= 0:
            raise ValueError("mass must be positive")
        if self.p0 <= 0:
            raise ValueError("energy must be positive")
        if self.p0 ** 2 != self.p1 ** 2 + self.p2 ** 2 + self.p3 ** 2 + self.m ** 2:
            raise ValueError("momentum is off the mass shell")

    @staticmethod
    def from_mass_and_momentum(m, p):
        m = as_fraction(m)
        p1, p2, p3 = (as_fraction(c) for c in p)
        e2 = p1 ** 2 + p2 ** 2 + p3 ** 2 + m ** 2
        p0 = rational_sqrt(e2)
        if p0 is None:
            raise IrrationalMomentumError(
                f"p0 = sqrt({e2}) is irrational; choose a Pythagorean momentum")
        return FourMomentum(p1, p2, p3, p0, m)

    @property
    def spatial(self):
        return (self.p1, self.p2, self.p3)

    @property
    def p_squared(self) -> Fraction:
        """Invariant p^2 = |p|^2 - p0^2, equal to -m^2 on shell."""
        return -self.m ** 2

    def spatial_norm(self) -> Fraction:
        """|p|, exact; raises if irrational."""
        n2 = self.p1 ** 2 + self.p2 ** 2 + self.p3 ** 2
        n = rational_sqrt(n2)
        if n is None:
            raise IrrationalMomentumError(
                f"|p| = sqrt({n2}) is irrational; choose a Pythagorean momentum")
        return n

    def is_at_rest(self) -> bool:
        return not (self.p1 or self.p2 or self.p3)

    def components(self):
        """The four covariant components (p1, p2, p3, i*p0)."""
        return (GaussianRational(self.p1), GaussianRational(self.p2),
                GaussianRational(self.p3), GaussianRational(0, self.p0))


def p_slash(p: FourMomentum, w: WaveMatrices | None = None) -> ExactMatrix:
    """Contraction of the wave matrices with the covariant momentum."""
    w = w or wave_matrices()
    comps = p.components()
    out = ExactMatrix.zeros(11)
    for mu in (1, 2, 3, 4):
        c = comps[mu - 1]
        if c:
            out = out + w.alpha[mu] * c
    return out


def energy_projector(p: FourMomentum, eps: int, w: WaveMatrices | None = None) -> ExactMatrix:
    """Idempotent extracting the energy-sign eps solutions of the wave equation."""
    if eps not in (1, -1):
        raise ValueError("energy sign must be +1 or -1")
    ps = p_slash(p, w)
    ips = ps * GR_I
    m = GaussianRational(p.m)
    return (ips @ (ips - ExactMatrix.identity(11) * (m * eps))) / (m * m * 2)


def spin_squared(p: FourMomentum, w: WaveMatrices | None = None) -> ExactMatrix:
    """Squared Pauli-Lubanski operator in the 11-dimensional representation.

    The generator-square contraction runs over unordered index pairs
    (the antisymmetric pair carries an implicit 1/2, as in the summed
    identity formulas); the momentum cross term runs over all indices.
    Both conventions are pinned by equality with the explicit
    Levi-Civita form, which the test suite checks.
    """
    w = w or wave_matrices()
    comps = p.components()
    p2 = GaussianRational(p.p_squared)
    jj = ExactMatrix.zeros(11)
    for (mu, nu) in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
        j = w.lorentz_signed(mu, nu)
        jj = jj + j @ j
    cross = ExactMatrix.zeros(11)
    for mu in (1, 2, 3, 4):
        cmu = comps[mu - 1]
        if not cmu:
            continue
        for nu in (1, 2, 3, 4):
            cnu = comps[nu - 1]
            if not cnu:
                continue
            acc = ExactMatrix.zeros(11)
            for sig in (1, 2, 3, 4):
                if sig == mu and sig == nu:
                    continue
                acc = acc + w.lorentz_signed(mu, sig) @ w.lorentz_signed(nu, sig)
            cross = cross + acc * (cmu * cnu)
    m2 = GaussianRational(p.m * p.m)
    return (jj * p2 - cross) / m2


_EPS3 = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
         (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}


def spin_projection_op(p: FourMomentum, w: WaveMatrices | None = None) -> ExactMatrix:
    """Spin projection on the momentum direction; needs |p| rational and nonzero."""
    w = w or wave_matrices()
    if p.is_at_rest():
        raise RestFrameError("rest-frame: spin direction undefined")
    norm = p.spatial_norm()
    comps = (p.p1, p.p2, p.p3)
    out = ExactMatrix.zeros(11)
    for (a, b, c), sign in _EPS3.items():
        pa = comps[a - 1]
        if not pa:
            continue
        coeff = GaussianRational(0, Fraction(-sign) * pa / (2 * norm))
        out = out + w.lorentz_signed(b, c) * coeff
    return out


def spin_square_projector(sigma2: ExactMatrix, spin: int) -> ExactMatrix:
    """Projector onto the spin-0 or spin-1 sector from the squared-spin operator."""
    half = sigma2 / GaussianRational(2)
    if spin == 1:
        return half
    if spin == 0:
        return ExactMatrix.identity(11) - half
    raise ValueError("spin must be 0 or 1")


def spin_projection_projector(sigma_p: ExactMatrix, proj: int) -> ExactMatrix:
    """Projector onto a spin-projection eigenvalue (+1, -1, or 0)."""
    ident = ExactMatrix.identity(11)
    if proj in (1, -1):
        return (sigma_p @ (sigma_p + ident * GaussianRational(proj))) / GaussianRational(2)
    if proj == 0:
        return ident - sigma_p @ sigma_p
    raise ValueError("projection must be -1, 0 or +1")


def pure_state_projector(p: FourMomentum, eps: int, spin: int, proj: int,
                         w: WaveMatrices | None = None) -> ExactMatrix:
    """Rank-1 density matrix for definite energy sign, spin, and projection."""
    if (spin, proj) not in SPIN_STATES:
        raise ValueError(f"invalid (spin, projection) pair ({spin}, {proj})")
    w = w or wave_matrices()
    m_eps = energy_projector(p, eps, w)
    s2 = spin_square_projector(spin_squared(p, w), spin)
    sp = spin_projection_projector(spin_projection_op(p, w), proj)
    return m_eps @ s2 @ sp


@dataclass(frozen=True)
class ProjectorFamily:
    """All projection operators for one momentum, cross-validated on build."""

    momentum: FourMomentum
    m_plus: ExactMatrix
    m_minus: ExactMatrix
    sigma2: ExactMatrix
    sigma_p: ExactMatrix | None
    deltas: dict  # (eps, spin, projection) -> ExactMatrix

    @staticmethod
    def build(p: FourMomentum, w: WaveMatrices | None = None) -> "ProjectorFamily":
        w = w or wave_matrices()
        m_plus = energy_projector(p, 1, w)
        m_minus = energy_projector(p, -1, w)
        sigma2 = spin_squared(p, w)
        if p.is_at_rest():
            return ProjectorFamily(p, m_plus, m_minus, sigma2, None, {})
        sigma_p = spin_projection_op(p, w)
        deltas = {}
        for eps in (1, -1):
            m_eps = m_plus if eps == 1 else m_minus
            s2 = {s: spin_square_projector(sigma2, s) for s in (0, 1)}
            sp = {q: spin_projection_projector(sigma_p, q) for q in (-1, 0, 1)}
            for spin, proj in SPIN_STATES:
                deltas[(eps, spin, proj)] = m_eps @ s2[spin] @ sp[proj]
        return ProjectorFamily(p, m_plus, m_minus, sigma2, sigma_p, deltas)


@dataclass(frozen=True)
class SolutionDyad:
    """Rank-1 factorisation of a pure-state projector.

    psi is scaled so that its indefinite-metric norm psi^+ eta psi is
    exactly +1 or -1 (recorded as norm_sign); psi_bar is norm_sign times
    psi^+ eta, which makes the outer product reproduce the projector
    exactly.  Reassembly then forces psi_bar . psi = +1, as it must for
    any trace-one idempotent; the indefinite sign lives in norm_sign.
    """

    psi: tuple
    psi_bar: tuple
    labels: tuple  # (eps, spin, projection)
    norm_sign: int


def _gi_mul_pair(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gaussian_gcd(a, b):
    """Euclidean gcd in Z[i]; arguments and result are exact integer pairs."""
    ar, ai = a
    br, bi = b
    while br or bi:
        n = br * br + bi * bi
        qr = round(Fraction(ar * br + ai * bi, n))
        qi = round(Fraction(ai * br - ar * bi, n))
        rr = ar - (qr * br - qi * bi)
        ri = ai - (qr * bi + qi * br)
        ar, ai, br, bi = br, bi, rr, ri
    return (ar, ai)


def _sqrt_minus_one_mod(p: int) -> int:
    for a in range(2, p):
        r = pow(a, (p - 1) // 4, p)
        if (r * r) % p == p - 1:
            return r
    raise ArithmeticError(f"no square root of -1 mod {p}")


def _factor_integer_two_squares(n: int):
    """x, y with x^2 + y^2 = n, or None.  Trial division is plenty here."""
    if n == 0:
        return (0, 0)
    x = (1, 0)
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            if d == 2:
                for _ in range(e):
                    x = _gi_mul_pair(x, (1, 1))
            elif d % 4 == 1:
                g = _gaussian_gcd((d, 0), (_sqrt_minus_one_mod(d), 1))
                for _ in range(e):
                    x = _gi_mul_pair(x, g)
            else:
                if e % 2:
                    return None  # prime 3 mod 4 with odd exponent
                x = _gi_mul_pair(x, (d ** (e // 2), 0))
        d += 1
    if m > 1:
        if m == 2:
            x = _gi_mul_pair(x, (1, 1))
        elif m % 4 == 1:
            x = _gi_mul_pair(x, _gaussian_gcd((m, 0), (_sqrt_minus_one_mod(m), 1)))
        else:
            return None
    a, b = abs(x[0]), abs(x[1])
    if a * a + b * b != n:
        raise ArithmeticError(f"two-square factorisation of {n} went wrong")
    return (a, b)


def _norm_split(q: Fraction) -> GaussianRational | None:
    """A Gaussian rational t with t * conj(t) = q, if one exists (q > 0)."""
    root = rational_sqrt(q)
    if root is not None:
        return GaussianRational(root)
    n = q.numerator * q.denominator
    pair = _factor_integer_two_squares(n)
    if pair is None:
        return None
    x, y = pair
    return GaussianRational(Fraction(x, q.denominator), Fraction(y, q.denominator))


def dyad_factorize(delta: ExactMatrix, labels=(0, 0, 0),
                   w: WaveMatrices | None = None) -> SolutionDyad:
    """Split a rank-1 idempotent into a normalized column and its metric row."""
    w = w or wave_matrices()
    if mat_rank(delta) != 1:
        raise ValueError("not a pure state: projector rank differs from 1")
    # column with the largest exact squared magnitude
    best_col, best_norm = None, Fraction(0)
    for j in range(delta.cols):
        col = delta.column(j)
        n = sum((e.abs2() for e in col), Fraction(0))
        if n > best_norm:
            best_norm, best_col = n, col
    psi = best_col
    eta = w.eta
    nu = vec_dot(vec_dagger(psi), mat_vec(eta, psi))
    if not nu:
        raise ArithmeticError("candidate column has null metric norm")
    if nu.im:
        raise ArithmeticError("metric norm should be real")
    norm_sign = 1 if nu.re > 0 else -1
    t = _norm_split(abs(nu.re))
    if t is None:
        raise ArithmeticError(
            f"metric norm {nu.re} is not a two-square rational; cannot normalize exactly")
    psi = vec_scale(psi, GR_ONE / t)
    psi_bar = vec_scale(vec_mat(vec_dagger(psi), eta), GaussianRational(norm_sign))
    if vec_outer(psi, psi_bar) != delta:
        raise AssertionError("dyad reassembly failed to reproduce the projector")
    return SolutionDyad(psi=psi, psi_bar=psi_bar, labels=tuple(labels), norm_sign=norm_sign)


def verify_first_order_solution(d: SolutionDyad, p: FourMomentum, eps: int,
                                w: WaveMatrices | None = None) -> bool:
    """Check the eigen-equation and the component layout of the solution.

    The plane-wave rule maps the gradient to i*eps*p on the energy-sign
    eps branch; the bivector slots must then be the antisymmetrised
    derivative of the vector slots scaled by 1/m, and the scalar slot
    minus the divergence scaled by 1/m.
    """
    w = w or wave_matrices()
    ps = p_slash(p, w)
    lhs = vec_scale(mat_vec(ps, d.psi), -GR_I)
    rhs = vec_scale(d.psi, GaussianRational(eps * p.m))
    if lhs != rhs:
        return False
    comps = p.components()
    ieps = GR_I * GaussianRational(eps)
    m = GaussianRational(p.m)
    psi_vec = {mu: d.psi[mu] for mu in (1, 2, 3, 4)}
    # scalar slot: -(i eps p . psi)/m
    div = GR_ZERO
    for mu in (1, 2, 3, 4):
        div = div + comps[mu - 1] * psi_vec[mu]
    if d.psi[0] != -(ieps * div) / m:
        return False
    # bivector slots: (i eps (p_mu psi_nu - p_nu psi_mu))/m
    from .epsilon import BIVECTOR_PAIRS, DIM11, BasisIndex
    for (mu, nu) in BIVECTOR_PAIRS:
        pos = DIM11.position(BasisIndex.bivector(mu, nu))
        want = (ieps * (comps[mu - 1] * psi_vec[nu] - comps[nu - 1] * psi_vec[mu])) / m
        if d.psi[pos] != want:
            return False
    return True
