"""First-order wave matrices: alpha family, beta families, eta, Lorentz generators.

The 11-dimensional alpha matrices split into a 10-dimensional spin-1
block and a 5-dimensional spin-0 block sharing the vector slots; the
builders construct each independently and the module cross-checks the
decomposition at build time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import (ExactMatrix, GR_ONE, GR_ZERO, GaussianRational,
                    zeros_grid)
from .epsilon import (BIVECTOR_PAIRS, DIM5, DIM10, DIM11, VECTOR_INDICES,
                      BasisIndex, bivector_component)


def _add(grid, i, j, value):
    cur = grid[i][j]
    grid[i][j] = value if cur is GR_ZERO else cur + value


def build_beta1(nu: int) -> ExactMatrix:
    """10x10 spin-1 block on the (vector, bivector) view."""
    grid = zeros_grid(10, 10)
    for mu in VECTOR_INDICES:
        lbl, sign = bivector_component(mu, nu)
        if lbl is None:
            continue
        v = DIM10.position(BasisIndex.vector(mu))
        b = DIM10.position(lbl)
        s = GR_ONE if sign > 0 else -GR_ONE
        _add(grid, v, b, s)
        _add(grid, b, v, s)
    return ExactMatrix._from_grid(grid)


def build_beta0(nu: int) -> ExactMatrix:
    """5x5 spin-0 block on the (scalar, vector) view."""
    grid = zeros_grid(5, 5)
    s = DIM5.position(BasisIndex.scalar())
    v = DIM5.position(BasisIndex.vector(nu))
    _add(grid, v, s, GR_ONE)
    _add(grid, s, v, GR_ONE)
    return ExactMatrix._from_grid(grid)


def build_alpha(nu: int) -> ExactMatrix:
    """11x11 wave matrix built directly from its four basis-unit terms."""
    grid = zeros_grid(11, 11)
    for mu in VECTOR_INDICES:
        lbl, sign = bivector_component(mu, nu)
        if lbl is None:
            continue
        v = DIM11.position(BasisIndex.vector(mu))
        b = DIM11.position(lbl)
        s = GR_ONE if sign > 0 else -GR_ONE
        _add(grid, v, b, s)
        _add(grid, b, v, s)
    sc = DIM11.position(BasisIndex.scalar())
    v = DIM11.position(BasisIndex.vector(nu))
    _add(grid, v, sc, GR_ONE)
    _add(grid, sc, v, GR_ONE)
    return ExactMatrix._from_grid(grid)


def embed_dim10(m: ExactMatrix) -> ExactMatrix:
    """Inject a (vector, bivector) matrix into the 11-space; scalar slot zero."""
    grid = zeros_grid(11, 11)
    for i in range(10):
        for j in range(10):
            e = m[i, j]
            if e:
                grid[i + 1][j + 1] = e
    return ExactMatrix._from_grid(grid)


def embed_dim5(m: ExactMatrix) -> ExactMatrix:
    """Inject a (scalar, vector) matrix into the 11-space; bivector slots zero."""
    grid = zeros_grid(11, 11)
    for i in range(5):
        for j in range(5):
            e = m[i, j]
            if e:
                grid[i][j] = e
    return ExactMatrix._from_grid(grid)


def build_eta1() -> ExactMatrix:
    """10x10 Hermitianizing matrix 2*beta4^2 - I for the spin-1 block."""
    b4 = build_beta1(4)
    return (b4 @ b4) * GaussianRational(2) - ExactMatrix.identity(10)


def build_eta() -> ExactMatrix:
    """11x11 Hermitianizing matrix: -1 on the scalar slot, eta1 on the rest."""
    grid = zeros_grid(11, 11)
    grid[0][0] = -GR_ONE
    eta1 = build_eta1()
    for i in range(10):
        for j in range(10):
            e = eta1[i, j]
            if e:
                grid[i + 1][j + 1] = e
    return ExactMatrix._from_grid(grid)


def build_lorentz(mu: int, nu: int) -> ExactMatrix:
    """11x11 rotation generator from the spin-1 block; scalar slot untouched."""
    if mu == nu:
        raise ValueError("rotation generator needs distinct indices")
    bmu, bnu = build_beta1(mu), build_beta1(nu)
    return embed_dim10(bmu @ bnu - bnu @ bmu)


@dataclass(frozen=True)
class WaveMatrices:
    """All wave matrices for the 11-component field, built once and shared."""

    alpha: dict
    beta1: dict
    beta0: dict
    eta: ExactMatrix
    eta1: ExactMatrix
    lorentz: dict  # keyed by ordered pairs (mu, nu) with mu < nu

    def lorentz_signed(self, mu, nu):
        """J for any index order; antisymmetric, zero when mu == nu."""
        if mu == nu:
            return ExactMatrix.zeros(11)
        if mu < nu:
            return self.lorentz[(mu, nu)]
        return -self.lorentz[(nu, mu)]


@lru_cache(maxsize=1)
def wave_matrices() -> WaveMatrices:
    alpha = {nu: build_alpha(nu) for nu in VECTOR_INDICES}
    beta1 = {nu: build_beta1(nu) for nu in VECTOR_INDICES}
    beta0 = {nu: build_beta0(nu) for nu in VECTOR_INDICES}
    for nu in VECTOR_INDICES:
        if alpha[nu] != embed_dim10(beta1[nu]) + embed_dim5(beta0[nu]):
            raise AssertionError(f"alpha_{nu} does not split into its two blocks")
    lorentz = {(mu, nu): build_lorentz(mu, nu) for (mu, nu) in BIVECTOR_PAIRS}
    return WaveMatrices(alpha=alpha, beta1=beta1, beta0=beta0,
                        eta=build_eta(), eta1=build_eta1(), lorentz=lorentz)


def pdk_holds(betas: dict, mu: int, nu: int, al: int) -> bool:
    """Trilinear relation b_mu b_nu b_al + b_al b_nu b_mu = d(mu,nu) b_al + d(al,nu) b_mu."""
    bm, bn, ba = betas[mu], betas[nu], betas[al]
    lhs = bm @ bn @ ba + ba @ bn @ bm
    n = bm.rows
    rhs = ExactMatrix.zeros(n)
    if mu == nu:
        rhs = rhs + ba
    if al == nu:
        rhs = rhs + bm
    return lhs == rhs


def cubic_alpha_holds(alphas: dict, mu: int, nu: int, al: int) -> bool:
    """Six-term symmetrised cubic relation obeyed by the 11-dim matrices."""
    am, an, aa = alphas[mu], alphas[nu], alphas[al]
    lhs = (am @ an @ aa + aa @ an @ am + am @ aa @ an
           + an @ aa @ am + an @ am @ aa + aa @ am @ an)
    rhs = ExactMatrix.zeros(11)
    if mu == nu:
        rhs = rhs + aa
    if al == nu:
        rhs = rhs + am
    if mu == al:
        rhs = rhs + an
    return lhs == rhs * GaussianRational(2)


def lorentz_bracket_rhs(w: WaveMatrices, rho, sig, mu, nu) -> ExactMatrix:
    """Right-hand side of the generator commutation relation for [J_rs, J_mn]."""
    out = ExactMatrix.zeros(11)
    if sig == mu:
        out = out + w.lorentz_signed(rho, nu)
    if rho == nu:
        out = out + w.lorentz_signed(sig, mu)
    if rho == mu:
        out = out - w.lorentz_signed(sig, nu)
    if sig == nu:
        out = out - w.lorentz_signed(rho, mu)
    return out


def alpha_lorentz_bracket_rhs(w: WaveMatrices, lam, mu, nu) -> ExactMatrix:
    """Right-hand side of [alpha_lam, J_mn] = d(lam,mu) alpha_nu - d(lam,nu) alpha_mu."""
    out = ExactMatrix.zeros(11)
    if lam == mu:
        out = out + w.alpha[nu]
    if lam == nu:
        out = out - w.alpha[mu]
    return out
