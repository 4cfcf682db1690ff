"""Truncated four-mode oscillator with an indefinite metric.

States are polynomials in four occupation symbols; the monomial with
exponents n stands for the state built by n applications of the scheme's
creation operators on its vacuum, unnormalised.  Creation multiplies by
a symbol, annihilation differentiates with a per-mode sign, so all
square-root normalisation factors appear squared in inner products and
everything stays rational.

Two vacuum schemes exist for the scalar-sector mode (mode 4):

* scheme 2 (the favoured one): daggered operators create; the metric
  sign of mode 4 is -1 and norms alternate with its occupation.
* scheme 1: the roles of the mode-4 pair are swapped, giving a positive
  inner product but an indefinite energy spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import (ExactMatrix, GR_I, GR_MINUS_ONE, GR_ONE, GR_ZERO,
                    GaussianRational, as_fraction, zeros_grid)

METRIC_SIGNATURE = (1, 1, 1, -1)

DEFAULT_TRUNCATION = 6


class TruncationOverflowError(ValueError):
    """Creation would push a state past the configured degree bound."""


class SchemeMismatchError(ValueError):
    """States or operators from different vacuum schemes were combined."""


def _annihilation_sign(mode: int, scheme: int) -> int:
    # scheme 1 swaps the mode-4 pair, which restores the standard sign
    if scheme == 2:
        return METRIC_SIGNATURE[mode - 1]
    return 1


@dataclass(frozen=True)
class LadderOp:
    """One creation or annihilation operator in the active scheme's roles."""

    mode: int
    direction: str  # "create" | "annihilate"

    def __post_init__(self):
        if self.mode not in (1, 2, 3, 4):
            raise ValueError("mode must be 1..4")
        if self.direction not in ("create", "annihilate"):
            raise ValueError("direction must be 'create' or 'annihilate'")


class FockPolyState:
    """Exact-coefficient polynomial state with a degree bound and a scheme."""

    __slots__ = ("coeffs", "truncation", "scheme")

    def __init__(self, coeffs=None, truncation=DEFAULT_TRUNCATION, scheme=2):
        if scheme not in (1, 2):
            raise ValueError("scheme must be 1 or 2")
        self.truncation = truncation
        self.scheme = scheme
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                k = tuple(int(e) for e in k)
                if len(k) != 4 or any(e < 0 for e in k):
                    raise ValueError(f"bad occupation tuple {k}")
                if sum(k) > truncation:
                    raise TruncationOverflowError(
                        f"monomial {k} exceeds truncation {truncation}")
                v = GaussianRational._coerce(v)
                if v is None:
                    raise TypeError("coefficients must be exact scalars")
                if v:
                    c[k] = c.get(k, GR_ZERO) + v
                    if not c[k]:
                        del c[k]
        self.coeffs = c

    @staticmethod
    def vacuum(truncation=DEFAULT_TRUNCATION, scheme=2):
        return FockPolyState({(0, 0, 0, 0): GR_ONE}, truncation, scheme)

    @staticmethod
    def basis_state(n, truncation=DEFAULT_TRUNCATION, scheme=2):
        return FockPolyState({tuple(n): GR_ONE}, truncation, scheme)

    def _check_compatible(self, other):
        if self.scheme != other.scheme:
            raise SchemeMismatchError("cannot combine states from different schemes")
        if self.truncation != other.truncation:
            raise ValueError("truncation mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, GR_ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._with(out)

    def __sub__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, GR_ZERO) - v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._with(out)

    def scale(self, s):
        s = GaussianRational._coerce(s)
        if s is None:
            raise TypeError("states scale by exact scalars only")
        if not s:
            return self._with({})
        return self._with({k: v * s for k, v in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def __neg__(self):
        return self.scale(GR_MINUS_ONE)

    def _with(self, coeffs):
        out = object.__new__(FockPolyState)
        out.coeffs = coeffs
        out.truncation = self.truncation
        out.scheme = self.scheme
        return out

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return max((sum(k) for k in self.coeffs), default=0)

    def __eq__(self, other):
        if not isinstance(other, FockPolyState):
            return NotImplemented
        return self.scheme == other.scheme and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.scheme, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"FockPolyState({self.coeffs!r}, scheme={self.scheme})"


def apply_ladder(op: LadderOp, s: FockPolyState) -> FockPolyState:
    """Apply one ladder operator; creation past the cutoff is an error."""
    out = {}
    if op.direction == "create":
        for k, v in s.coeffs.items():
            if sum(k) + 1 > s.truncation:
                raise TruncationOverflowError(
                    f"creation on degree-{sum(k)} monomial exceeds truncation {s.truncation}")
            nk = list(k)
            nk[op.mode - 1] += 1
            nk = tuple(nk)
            acc = out.get(nk, GR_ZERO) + v
            if acc:
                out[nk] = acc
            else:
                out.pop(nk, None)
    else:
        sign = _annihilation_sign(op.mode, s.scheme)
        for k, v in s.coeffs.items():
            n = k[op.mode - 1]
            if n == 0:
                continue
            nk = list(k)
            nk[op.mode - 1] -= 1
            nk = tuple(nk)
            acc = out.get(nk, GR_ZERO) + v * GaussianRational(sign * n)
            if acc:
                out[nk] = acc
            else:
                out.pop(nk, None)
    return s._with(out)


def inner_product(a: FockPolyState, b: FockPolyState) -> GaussianRational:
    """Sesquilinear form fixed by the scheme; conjugates the first argument.

    Monomial overlap is diagonal and carries the factorial weight with
    the scheme's metric sign: (-1) to the mode-4 occupation in scheme 2,
    positive in scheme 1.
    """
    a._check_compatible(b)
    total = GR_ZERO
    for k, va in a.coeffs.items():
        vb = b.coeffs.get(k)
        if vb is None:
            continue
        weight = Fraction(1)
        for n in k:
            weight *= math.factorial(n)
        if a.scheme == 2 and k[3] % 2:
            weight = -weight
        total = total + va.conjugate() * vb * GaussianRational(weight)
    return total


def normalized_gram(truncation: int, scheme: int = 2) -> tuple:
    """(basis, ExactMatrix): Gram matrix of the normalised monomial basis.

    Normalisation by the square roots of factorials happens only as the
    squared factor 1/n!, so the matrix is exact; the diagonal is +-1.
    """
    basis = monomial_basis(truncation)
    grid = zeros_grid(len(basis), len(basis))
    for i, a in enumerate(basis):
        sa = FockPolyState.basis_state(a, truncation, scheme)
        for j, b in enumerate(basis):
            if a != b:
                continue  # monomial form is diagonal
            sb = FockPolyState.basis_state(b, truncation, scheme)
            raw = inner_product(sa, sb)
            norm2 = Fraction(1)
            for n in a:
                norm2 *= math.factorial(n)
            grid[i][j] = raw / GaussianRational(norm2)
    return basis, ExactMatrix._from_grid(grid)


def monomial_basis(truncation: int) -> list:
    """All occupation tuples with total degree <= truncation, in stable order."""
    out = []
    for d in range(truncation + 1):
        for n1 in range(d + 1):
            for n2 in range(d - n1 + 1):
                for n3 in range(d - n1 - n2 + 1):
                    out.append((n1, n2, n3, d - n1 - n2 - n3))
    return out


class BilinearOperator:
    """Normal-ordered ladder bilinear: sum of c[i, j] * create_i annihilate_j.

    The indices refer to the polynomial model's elementary operators
    (multiplication and signed derivative), with the scheme's signs and
    any phase factors already folded into the coefficients.  These
    operators preserve total degree, so truncation never bites.
    """

    __slots__ = ("coeffs", "scheme")

    def __init__(self, coeffs=None, scheme=2):
        self.scheme = scheme
        c = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                v = GaussianRational._coerce(v)
                if v:
                    c[(i, j)] = c.get((i, j), GR_ZERO) + v
                    if not c[(i, j)]:
                        del c[(i, j)]
        self.coeffs = c

    def _with(self, coeffs):
        out = object.__new__(BilinearOperator)
        out.coeffs = coeffs
        out.scheme = self.scheme
        return out

    def __add__(self, other):
        if self.scheme != other.scheme:
            raise SchemeMismatchError("operators from different schemes")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, GR_ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._with(out)

    def __sub__(self, other):
        return self + other.scale(GR_MINUS_ONE)

    def scale(self, s):
        s = GaussianRational._coerce(s)
        if s is None:
            raise TypeError("operators scale by exact scalars only")
        if not s:
            return self._with({})
        return self._with({k: v * s for k, v in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def apply(self, s: FockPolyState) -> FockPolyState:
        if s.scheme != self.scheme:
            raise SchemeMismatchError("operator and state schemes differ")
        out = {}
        for (i, j), c in self.coeffs.items():
            sign = _annihilation_sign(j, s.scheme)
            for k, v in s.coeffs.items():
                n = k[j - 1]
                if n == 0:
                    continue
                nk = list(k)
                nk[j - 1] -= 1
                nk[i - 1] += 1
                nk = tuple(nk)
                acc = out.get(nk, GR_ZERO) + v * (c * GaussianRational(sign * n))
                if acc:
                    out[nk] = acc
                else:
                    out.pop(nk, None)
        return s._with(out)

    def commutator(self, other: "BilinearOperator") -> "BilinearOperator":
        """Exact operator commutator; bilinears close among themselves."""
        if self.scheme != other.scheme:
            raise SchemeMismatchError("operators from different schemes")
        out = {}
        for (i, j), a in self.coeffs.items():
            sj = _annihilation_sign(j, self.scheme)
            for (k, l), b in other.coeffs.items():
                sl = _annihilation_sign(l, self.scheme)
                if j == k:
                    key = (i, l)
                    v = a * b * GaussianRational(sj)
                    s = out.get(key, GR_ZERO) + v
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
                if l == i:
                    key = (k, j)
                    v = a * b * GaussianRational(-sl)
                    s = out.get(key, GR_ZERO) + v
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return self._with(out)

    def __eq__(self, other):
        if not isinstance(other, BilinearOperator):
            return NotImplemented
        return self.scheme == other.scheme and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.scheme, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        return f"BilinearOperator({self.coeffs!r}, scheme={self.scheme})"


def covariant_ladder_phase(mu: int) -> GaussianRational:
    """Phase carried by the index-mu covariant operator in the model.

    The fourth covariant ladder pair is i times the scalar-sector pair,
    in both directions.
    """
    return GR_I if mu == 4 else GR_ONE


def number_operator(mode: int, scheme: int = 2) -> BilinearOperator:
    sign = _annihilation_sign(mode, scheme)
    return BilinearOperator({(mode, mode): GaussianRational(sign)}, scheme)


def energy_operator(k0, scheme: int = 2) -> BilinearOperator:
    """P0 = k0 (sum_a b_a^+ b_a - b_0^+ b_0), normal-ordered for the scheme.

    In scheme 2 the expression is already normal ordered.  In scheme 1
    the scalar-sector term is anti-normal; one swap produces the normal
    form plus a constant, which is dropped and reported in the docs.
    """
    k0 = as_fraction(k0)
    terms = {}
    for a in (1, 2, 3):
        terms[(a, a)] = GaussianRational(k0)
    # scheme 2: -b0+ b0 is already normal ordered; the model annihilator
    # carries the metric sign, so the action is +k0 N4.
    # scheme 1: -b0+ b0 = -b0 b0+ - 1; after dropping the constant the
    # normal form is the same model bilinear, now acting as -k0 N4.
    terms[(4, 4)] = GaussianRational(-k0)
    return BilinearOperator(terms, scheme)


def quantum_charges(k0, scheme: int = 2) -> dict:
    """The seventeen conserved bilinears in covariant ladder form.

    Only the indefinite-metric scheme supports these as degree-preserving
    operators; the role swap of scheme 1 would make the mixed space-time
    charges change the grading, so they are restricted to scheme 2.
    """
    if scheme != 2:
        raise SchemeMismatchError("quantum charges require the indefinite-metric scheme")
    del k0  # the charges are energy-independent; kept for interface symmetry

    def bilinear(mu, nu, coeff):
        phase = covariant_ladder_phase(mu) * covariant_ladder_phase(nu)
        return BilinearOperator({(mu, nu): coeff * phase}, scheme)

    charges = {}
    for mu in range(1, 5):
        for nu in range(mu + 1, 5):
            charges[("antisym", mu, nu)] = bilinear(mu, nu, GR_I) - bilinear(nu, mu, GR_I)
    total = BilinearOperator({}, scheme)
    for al in range(1, 5):
        total = total + bilinear(al, al, GR_ONE)
    half = GaussianRational(Fraction(1, 2))
    for mu in range(1, 5):
        for nu in range(mu, 5):
            j = bilinear(mu, nu, GR_ONE) + bilinear(nu, mu, GR_ONE)
            if mu == nu:
                j = j - total.scale(half)
            charges[("sym", mu, nu)] = j
    charges[("unit",)] = total
    return charges


def quantum_charge_combination(params, charges: dict) -> BilinearOperator:
    """Parameter-weighted sum over the quantum charge table.

    Uses the same double-counting convention as the classical flow
    generator: off-diagonal labels enter twice, diagonals once.
    """
    out = charges[("unit",)].scale(params.omega0)
    for (mu, nu), a in params.antisym.items():
        out = out + charges[("antisym", mu, nu)].scale(a + a)
    for (mu, nu), s in params.sym.items():
        mult = s if mu == nu else s + s
        out = out + charges[("sym", mu, nu)].scale(mult)
    return out


def quantize(obs, k0, scheme: int = 2) -> BilinearOperator:
    """Map a classical quadratic in (q, pi) to its normal-ordered operator.

    The canonical variables are linear in the ladder pair of each mode
    with weights in which the square root of 2 k0 appears only squared,
    so the result is exact.  Classical products in mixed order are
    identified with the normal-ordered operator, which silently drops
    the commutator constant; that is the ordering fixed throughout.
    Raises if the observable is not a pure ladder bilinear (e.g. has
    double-creation content), since such operators leave the bilinear
    class.
    """
    if scheme != 2:
        raise SchemeMismatchError("quantisation targets the indefinite-metric scheme")
    k0 = as_fraction(k0)
    create_create = {}
    annih_annih = {}
    bilinear = {}

    def add(table, key, v):
        s = table.get(key, GR_ZERO) + v
        if s:
            table[key] = s
        else:
            table.pop(key, None)

    # q_mu = (b + b+)/sqrt(2 k0): ladder sign +1; pi_mu = -i sqrt(k0/2)(b - b+):
    # ladder sign -1.  The radical prefactors only ever meet in pairs:
    #   q.q -> 1/(2 k0),  pi.pi -> -k0/2,  q.pi -> -i/2.
    def symbol_sign(idx):
        return GR_ONE if idx < 4 else GR_MINUS_ONE

    def pair_factor(idx_a, idx_b):
        qa, qb = idx_a < 4, idx_b < 4
        if qa and qb:
            return GaussianRational(Fraction(1, 2) / k0)
        if not qa and not qb:
            return GaussianRational(-k0 / 2)
        return GaussianRational(0, Fraction(-1, 2))

    for key, coeff in obs.coeffs.items():
        if len(key) != 2:
            raise ValueError("only homogeneous quadratics quantise to ladder bilinears")
        if not isinstance(coeff, GaussianRational):
            raise TypeError("quantisation needs numeric coefficients")
        i, j = key
        mu, nu = (i % 4) + 1, (j % 4) + 1
        si, sj = symbol_sign(i), symbol_sign(j)
        base = coeff * pair_factor(i, j)
        # (b_mu + si b_mu^+)(b_nu + sj b_nu^+), classical commuting symbols;
        # the mixed product is identified with the normal-ordered operator.
        add(annih_annih, tuple(sorted((mu, nu))), base)
        add(bilinear, (nu, mu), base * sj)
        add(bilinear, (mu, nu), base * si)
        add(create_create, tuple(sorted((mu, nu))), base * si * sj)
    if create_create or annih_annih:
        residue = {**create_create, **annih_annih}
        raise ValueError(f"observable is not a ladder bilinear: residue {residue}")
    out = {}
    for (m, n), v in bilinear.items():
        add(out, (m, n), v * covariant_ladder_phase(m) * covariant_ladder_phase(n))
    return BilinearOperator(out, scheme)


def apply_covariant(mu: int, dagger: bool, s: FockPolyState) -> FockPolyState:
    """Action of the covariant ladder operator, phases included (scheme 2)."""
    if s.scheme != 2:
        raise SchemeMismatchError("covariant ladder operators live in scheme 2")
    out = apply_ladder(LadderOp(mu, "create" if dagger else "annihilate"), s)
    ph = covariant_ladder_phase(mu)
    return out if ph is GR_ONE else out.scale(ph)


def decompose_physical(s: FockPolyState):
    """Split a scheme-2 state into its positive-norm and mode-4-excited parts."""
    if s.scheme != 2:
        raise SchemeMismatchError("the physical decomposition lives in scheme 2")
    phys = {k: v for k, v in s.coeffs.items() if k[3] == 0}
    nonphys = {k: v for k, v in s.coeffs.items() if k[3] != 0}
    return s._with(phys), s._with(nonphys)
