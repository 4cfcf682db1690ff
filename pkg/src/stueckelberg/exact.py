"""Exact arithmetic kernel: Gaussian-rational scalars, matrices, jets.

Every identity checked by this package reduces to exact equality over
Q(i), the field of complex numbers with rational real and imaginary
parts.  Matrices are small (at most 11x11 outside the Fock sector), so
the algorithms favour exactness over asymptotic cleverness; the one
performance concession is that matrix products skip zero entries.
"""

from __future__ import annotations

import math
from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction, or 'num/den' string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def fraction_str(f: Fraction) -> str:
    """Canonical 'num/den' form with positive denominator."""
    return f"{f.numerator}/{f.denominator}"


def rational_sqrt(f: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class GaussianRational:
    """A complex number a + b*i with exact rational a and b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def _raw(re, im):
        v = object.__new__(GaussianRational)
        v.re = re
        v.im = im
        return v

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, int):
            return GaussianRational._raw(Fraction(x), _F0)
        if isinstance(x, Fraction):
            return GaussianRational._raw(x, _F0)
        return None

    def __add__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, _F0)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared magnitude re^2 + im^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self):
        return not self.im

    def is_imaginary(self):
        return not self.re

    def as_strings(self):
        return (fraction_str(self.re), fraction_str(self.im))

    @staticmethod
    def from_strings(pair):
        return GaussianRational._raw(as_fraction(pair[0]), as_fraction(pair[1]))

    def __repr__(self):
        if not self.im:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GR_ZERO = GaussianRational._raw(_F0, _F0)
GR_ONE = GaussianRational._raw(_F1, _F0)
GR_I = GaussianRational._raw(_F0, _F1)
GR_MINUS_ONE = GaussianRational._raw(-_F1, _F0)


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor accepting ints, Fractions, or 'num/den' strings."""
    return GaussianRational(as_fraction(re), as_fraction(im))


class JetScalar:
    """First-order jet: value plus a gradient over named parameters.

    Second and higher orders truncate to zero, so products of two pure
    infinitesimals vanish; this is exactly what is needed to check
    transformations to first order in small group parameters.
    """

    __slots__ = ("value", "grad")

    def __init__(self, value=GR_ZERO, grad=None):
        v = GaussianRational._coerce(value)
        if v is None:
            raise TypeError("jet value must be an exact scalar")
        self.value = v
        g = {}
        if grad:
            for k, c in grad.items():
                c = GaussianRational._coerce(c)
                if c is None:
                    raise TypeError("jet gradient entries must be exact scalars")
                if c:
                    g[k] = c
        self.grad = g

    @staticmethod
    def parameter(name, coefficient=GR_ONE):
        """An infinitesimal parameter: value 0, unit (or given) gradient."""
        return JetScalar(GR_ZERO, {name: coefficient})

    @staticmethod
    def _coerce(x):
        if isinstance(x, JetScalar):
            return x
        g = GaussianRational._coerce(x)
        if g is None:
            return None
        return JetScalar(g)

    def __add__(self, other):
        o = JetScalar._coerce(other)
        if o is None:
            return NotImplemented
        g = dict(self.grad)
        for k, c in o.grad.items():
            s = g.get(k, GR_ZERO) + c
            if s:
                g[k] = s
            else:
                g.pop(k, None)
        return JetScalar(self.value + o.value, g)

    __radd__ = __add__

    def __neg__(self):
        return JetScalar(-self.value, {k: -c for k, c in self.grad.items()})

    def __sub__(self, other):
        o = JetScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = JetScalar._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = JetScalar._coerce(other)
        if o is None:
            return NotImplemented
        g = {}
        if o.value:
            for k, c in self.grad.items():
                g[k] = c * o.value
        if self.value:
            for k, c in o.grad.items():
                s = g.get(k, GR_ZERO) + self.value * c
                if s:
                    g[k] = s
                else:
                    g.pop(k, None)
        return JetScalar(self.value * o.value, g)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = JetScalar._coerce(other)
        if o is None:
            return NotImplemented
        if not o.value:
            raise ZeroDivisionError("jet division needs a nonzero value part")
        val = self.value / o.value
        g = {}
        keys = set(self.grad) | set(o.grad)
        for k in keys:
            a = self.grad.get(k, GR_ZERO)
            b = o.grad.get(k, GR_ZERO)
            c = (a * o.value - self.value * b) / (o.value * o.value)
            if c:
                g[k] = c
        return JetScalar(val, g)

    def __bool__(self):
        return bool(self.value) or bool(self.grad)

    def __eq__(self, other):
        o = JetScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value and self.grad == o.grad

    def __hash__(self):
        return hash((self.value, tuple(sorted(self.grad.items(), key=lambda kv: kv[0]))))

    def conjugate(self):
        return JetScalar(self.value.conjugate(),
                         {k: c.conjugate() for k, c in self.grad.items()})

    def __repr__(self):
        return f"JetScalar({self.value!r}, {self.grad!r})"


def zeros_grid(rows, cols):
    return [[GR_ZERO] * cols for _ in range(rows)]


class ExactMatrix:
    """Dense matrix over GaussianRational with exact entrywise equality."""

    __slots__ = ("rows", "cols", "_m")

    def __init__(self, entries):
        m = tuple(
            tuple(e if isinstance(e, GaussianRational) else GaussianRational._coerce(e) or GaussianRational(e)
                  for e in row)
            for row in entries
        )
        if not m or not m[0]:
            raise ValueError("matrix needs at least one row and column")
        if any(len(r) != len(m[0]) for r in m):
            raise ValueError("ragged rows")
        self.rows = len(m)
        self.cols = len(m[0])
        self._m = m

    @staticmethod
    def _from_grid(grid):
        v = object.__new__(ExactMatrix)
        v._m = tuple(tuple(row) for row in grid)
        v.rows = len(v._m)
        v.cols = len(v._m[0])
        return v

    @staticmethod
    def zeros(rows, cols=None):
        cols = rows if cols is None else cols
        return ExactMatrix._from_grid(zeros_grid(rows, cols))

    @staticmethod
    def identity(n):
        g = zeros_grid(n, n)
        for i in range(n):
            g[i][i] = GR_ONE
        return ExactMatrix._from_grid(g)

    @staticmethod
    def unit(rows, cols, i, j, scale=GR_ONE):
        """Matrix with a single entry `scale` at (i, j)."""
        g = zeros_grid(rows, cols)
        g[i][j] = scale
        return ExactMatrix._from_grid(g)

    def __getitem__(self, ij):
        i, j = ij
        return self._m[i][j]

    def row(self, i):
        return self._m[i]

    def column(self, j):
        return tuple(r[j] for r in self._m)

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._from_grid(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._m, other._m)]
        )

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._from_grid(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._m, other._m)]
        )

    def __neg__(self):
        return ExactMatrix._from_grid([[-a for a in r] for r in self._m])

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        b = other._m
        out = zeros_grid(self.rows, other.cols)
        for i in range(self.rows):
            arow = self._m[i]
            orow = out[i]
            for t in range(self.cols):
                s = arow[t]
                if not s:
                    continue
                brow = b[t]
                for j in range(other.cols):
                    e = brow[j]
                    if e:
                        cur = orow[j]
                        orow[j] = s * e if cur is GR_ZERO else cur + s * e
        return ExactMatrix._from_grid(out)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self @ other
        s = GaussianRational._coerce(other)
        if s is None:
            return NotImplemented
        return ExactMatrix._from_grid([[a * s for a in r] for r in self._m])

    def __rmul__(self, other):
        s = GaussianRational._coerce(other)
        if s is None:
            return NotImplemented
        return ExactMatrix._from_grid([[s * a for a in r] for r in self._m])

    def __truediv__(self, other):
        s = GaussianRational._coerce(other)
        if s is None:
            return NotImplemented
        return ExactMatrix._from_grid([[a / s for a in r] for r in self._m])

    def transpose(self):
        return ExactMatrix._from_grid(
            [[self._m[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def dagger(self):
        """Conjugate transpose."""
        return ExactMatrix._from_grid(
            [[self._m[i][j].conjugate() for i in range(self.rows)] for j in range(self.cols)]
        )

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = GR_ZERO
        for i in range(self.rows):
            t = t + self._m[i][i]
        return t

    def is_zero(self):
        return all(not e for r in self._m for e in r)

    def is_square(self):
        return self.rows == self.cols

    @property
    def shape(self):
        return (self.rows, self.cols)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._m == other._m

    def __hash__(self):
        return hash(self._m)

    def to_json_dict(self):
        """Wire format: row-major entries, each an exact [re, im] string pair."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [list(e.as_strings()) for row in self._m for e in row],
        }

    @staticmethod
    def from_json_dict(d):
        rows, cols = d["rows"], d["cols"]
        flat = [GaussianRational.from_strings(p) for p in d["entries"]]
        if len(flat) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        return ExactMatrix._from_grid(
            [flat[i * cols:(i + 1) * cols] for i in range(rows)]
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def pretty(self):
        return "\n".join(" ".join(str(e) for e in row) for row in self._m)


def mat_commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """AB - BA, exactly."""
    if not a.is_square() or a.shape != b.shape:
        raise ValueError("commutator needs square matrices of equal dimension")
    return a @ b - b @ a


def mat_anticommutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if not a.is_square() or a.shape != b.shape:
        raise ValueError("anticommutator needs square matrices of equal dimension")
    return a @ b + b @ a


def _gi_mul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c)


def _gi_div_exact(x, y):
    a, b = x
    c, d = y
    n = c * c + d * d
    rn, rr = divmod(a * c + b * d, n)
    im, ir = divmod(b * c - a * d, n)
    if rr or ir:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return (rn, im)


def mat_rank(a: ExactMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination over Gaussian integers.

    Rows are first scaled by their common denominator, which leaves the
    rank unchanged and keeps every intermediate value an exact Gaussian
    integer.
    """
    grid = []
    for row in a._m:
        den = 1
        for e in row:
            den = math.lcm(den, e.re.denominator, e.im.denominator)
        grid.append([(int(e.re * den), int(e.im * den)) for e in row])
    rows, cols = a.rows, a.cols
    prev = (1, 0)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv_row = None
        for i in range(r, rows):
            if grid[i][c] != (0, 0):
                piv_row = i
                break
        if piv_row is None:
            continue
        if piv_row != r:
            grid[r], grid[piv_row] = grid[piv_row], grid[r]
        piv = grid[r][c]
        for i in range(r + 1, rows):
            gic = grid[i][c]
            for j in range(c + 1, cols):
                t1 = _gi_mul(grid[i][j], piv)
                t2 = _gi_mul(gic, grid[r][j])
                grid[i][j] = _gi_div_exact((t1[0] - t2[0], t1[1] - t2[1]), prev)
            grid[i][c] = (0, 0)
        prev = piv
        r += 1
    return r


def minimal_poly_check(a: ExactMatrix, roots) -> bool:
    """True iff the product of (A - r*I) over the given roots vanishes."""
    if not a.is_square():
        raise ValueError("minimal polynomial check needs a square matrix")
    ident = ExactMatrix.identity(a.rows)
    prod = ident
    for r in roots:
        s = GaussianRational._coerce(r)
        if s is None:
            raise TypeError("roots must be exact scalars")
        prod = prod @ (a - ident * s)
    return prod.is_zero()


def mat_inverse(a: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises if singular."""
    if not a.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = a.rows
    left = [list(row) for row in a._m]
    right = [list(row) for row in ExactMatrix.identity(n)._m]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if left[i][col]:
                piv = i
                break
        if piv is None:
            raise ArithmeticError("matrix is singular")
        left[col], left[piv] = left[piv], left[col]
        right[col], right[piv] = right[piv], right[col]
        inv = GR_ONE / left[col][col]
        left[col] = [e * inv for e in left[col]]
        right[col] = [e * inv for e in right[col]]
        for i in range(n):
            if i == col:
                continue
            f = left[i][col]
            if f:
                left[i] = [x - f * y for x, y in zip(left[i], left[col])]
                right[i] = [x - f * y for x, y in zip(right[i], right[col])]
    return ExactMatrix._from_grid(right)


def mat_solve(a: ExactMatrix, b):
    """Solve A x = b exactly; returns a tuple, or None if inconsistent.

    Requires the solution to be unique (full column rank) when the
    system is consistent; free columns raise.
    """
    rows, cols = a.rows, a.cols
    if len(b) != rows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(a._m[i]) + [b[i] if isinstance(b[i], GaussianRational) else GaussianRational._coerce(b[i])]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = GR_ONE / aug[r][c]
        aug[r] = [e * inv for e in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return None
    if len(pivots) != cols:
        raise ArithmeticError("underdetermined system")
    x = [GR_ZERO] * cols
    for k, c in enumerate(pivots):
        x[c] = aug[k][cols]
    return tuple(x)


def vec_dagger(v):
    """Conjugate of a vector (for forming bras from kets)."""
    return tuple(e.conjugate() for e in v)


def vec_dot(u, v):
    """Plain bilinear dot product, no conjugation."""
    s = GR_ZERO
    for a, b in zip(u, v):
        s = s + a * b
    return s


def mat_vec(m: ExactMatrix, v):
    if m.cols != len(v):
        raise ValueError("dimension mismatch")
    out = []
    for row in m._m:
        s = GR_ZERO
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return tuple(out)


def vec_mat(v, m: ExactMatrix):
    if m.rows != len(v):
        raise ValueError("dimension mismatch")
    out = []
    for j in range(m.cols):
        s = GR_ZERO
        for i, a in enumerate(v):
            b = m._m[i][j]
            if a and b:
                s = s + a * b
        out.append(s)
    return tuple(out)


def vec_outer(u, v) -> ExactMatrix:
    """Column u times row v."""
    return ExactMatrix._from_grid([[a * b for b in v] for a in u])


def vec_scale(v, s):
    return tuple(e * s for e in v)
