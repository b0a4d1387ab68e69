"""Dense univariate polynomials over a field context, plus the minimal
bivariate arithmetic and Sylvester-resultant elimination used for root
finding over quadratic extensions.

Coefficients are stored ascending; the zero polynomial has an empty
coefficient tuple and degree ``-inf`` (a real sentinel, never the int 0).
"""

from __future__ import annotations

from typing import Iterable, Optional, Tuple, Union

from . import errors
from .field import FieldCtx, FieldElement

NEG_INF = float("-inf")


class Poly:
    __slots__ = ("field", "coef")

    def __init__(self, field: FieldCtx, coeffs: Iterable):
        cs = []
        for c in coeffs:
            if isinstance(c, int):
                c = field.from_int(c)
            if not isinstance(c, FieldElement):
                raise errors.InvalidInput(f"bad coefficient {c!r}")
            if c.field != field:
                raise errors.MixedFields(
                    f"coefficient from {c.field}, polynomial over {field}")
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coef = tuple(cs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field: FieldCtx) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field: FieldCtx) -> "Poly":
        return cls(field, [field.one])

    @classmethod
    def x(cls, field: FieldCtx) -> "Poly":
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, c: FieldElement) -> "Poly":
        return cls(c.field, [c])

    @classmethod
    def monomial(cls, field: FieldCtx, k: int, c=1) -> "Poly":
        return cls(field, [field.zero] * k + [c])

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coef) - 1 if self.coef else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coef

    @property
    def is_constant(self) -> bool:
        return len(self.coef) <= 1

    def lc(self) -> FieldElement:
        if not self.coef:
            raise errors.ZeroInput("zero polynomial has no leading coefficient")
        return self.coef[-1]

    def constant_value(self) -> FieldElement:
        return self.coef[0] if self.coef else self.field.zero

    def coeff(self, k: int) -> FieldElement:
        return self.coef[k] if 0 <= k < len(self.coef) else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coef) and self.coef[-1] == self.field.one

    def _check_same(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise errors.InvalidInput(f"expected Poly, got {other!r}")
        if other.field != self.field:
            raise errors.MixedFields(
                f"polynomials over {self.field} and {other.field}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        a, b = self.coef, other.coef
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coef])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coef) + len(other.coef) - 1)
        for i, a in enumerate(self.coef):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coef):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    def scale(self, c: FieldElement) -> "Poly":
        return Poly(self.field, [c * a for a in self.coef])

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return Poly(self.field, [self.field.zero] * k + list(self.coef))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise errors.InvalidInput("negative polynomial power")
        acc = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._check_same(other)
        if other.is_zero:
            raise errors.DivisionByZero("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(self.field), self
        rem = list(self.coef)
        d = len(other.coef) - 1
        lead_inv = other.lc().inverse()
        quot = [self.field.zero] * (len(rem) - d)
        for k in range(len(rem) - d - 1, -1, -1):
            q = rem[k + d] * lead_inv
            quot[k] = q
            if not q.is_zero():
                for j, b in enumerate(other.coef):
                    rem[k + j] = rem[k + j] - q * b
        return Poly(self.field, quot), Poly(self.field, rem[:d])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise errors.InvariantViolation(
                f"expected exact division: {self} by {other}")
        return q

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor."""
        self._check_same(other)
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()

    def monic(self) -> "Poly":
        if self.is_zero:
            raise errors.ZeroInput("cannot normalize the zero polynomial")
        if self.is_monic():
            return self
        return self.scale(self.lc().inverse())

    def derivative(self) -> "Poly":
        out = []
        for i in range(1, len(self.coef)):
            out.append(self.field.from_int(i) * self.coef[i])
        return Poly(self.field, out)

    # -- evaluation and composition --------------------------------------------

    def eval(self, a: FieldElement) -> FieldElement:
        if isinstance(a, int):
            a = self.field.from_int(a)
        if a.field != self.field:
            raise errors.MixedFields("evaluation point from a different field")
        acc = self.field.zero
        for c in reversed(self.coef):
            acc = acc * a + c
        return acc

    def __call__(self, a):
        return self.eval(a)

    def compose(self, inner: "Poly") -> "Poly":
        """g.compose(h) = g(h), by Horner over the polynomial ring."""
        self._check_same(inner)
        acc = Poly.zero(self.field)
        for c in reversed(self.coef):
            acc = acc * inner + Poly.constant(c)
        return acc

    # -- comparison / hashing / text --------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coef == other.coef

    def __hash__(self):
        return hash((self.field, tuple(c.val for c in self.coef)))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self}, over {self.field})"


def format_poly(p: Poly, var: str = "x") -> str:
    """Render with descending powers; output reparses under the CLI grammar."""
    if p.is_zero:
        return "0"
    pieces = []
    for k in range(len(p.coef) - 1, -1, -1):
        c = p.coef[k]
        if c.is_zero():
            continue
        sign, core, parens = p.field.term_parts(c.val)
        if k == 0:
            body = f"({core})" if parens else core
        else:
            xpow = var if k == 1 else f"{var}^{k}"
            if core == "1":
                body = xpow
            else:
                cs = f"({core})" if parens or "/" in core else core
                body = f"{cs}*{xpow}"
        if not pieces:
            pieces.append(body if sign > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(pieces)


def poly_arith(a: Poly, b: Poly, op: str):
    """Named dispatch over the ring operations (spec surface)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return a.divmod(b)
    if op == "gcd":
        return a.gcd(b)
    raise errors.InvalidInput(f"unknown poly op {op!r}")


def compose_poly(g: Poly, h: Poly) -> Poly:
    return g.compose(h)


# ---------------------------------------------------------------------------
# bivariate polynomials (x = first variable, y = second)
# ---------------------------------------------------------------------------

class BiPoly:
    """Coefficient grid c[i][j] for x^i y^j; rows/columns trimmed."""

    __slots__ = ("field", "grid")

    def __init__(self, field: FieldCtx, grid):
        rows = []
        for row in grid:
            r = []
            for c in row:
                if isinstance(c, int):
                    c = field.from_int(c)
                if c.field != field:
                    raise errors.MixedFields("grid coefficient field mismatch")
                r.append(c)
            rows.append(r)
        width = max((len(r) for r in rows), default=0)
        for r in rows:
            r.extend([field.zero] * (width - len(r)))
        # trim trailing zero columns, then rows
        while width and all(r[width - 1].is_zero() for r in rows):
            width -= 1
        rows = [r[:width] for r in rows]
        while rows and all(c.is_zero() for c in rows[-1]):
            rows.pop()
        self.field = field
        self.grid = tuple(tuple(r) for r in rows)

    @classmethod
    def zero(cls, field: FieldCtx) -> "BiPoly":
        return cls(field, [])

    @classmethod
    def constant(cls, c: FieldElement) -> "BiPoly":
        return cls(c.field, [[c]])

    @classmethod
    def var_x(cls, field: FieldCtx) -> "BiPoly":
        return cls(field, [[field.zero], [field.one]])

    @classmethod
    def var_y(cls, field: FieldCtx) -> "BiPoly":
        return cls(field, [[field.zero, field.one]])

    @property
    def is_zero(self) -> bool:
        return not self.grid

    def deg_x(self) -> Union[int, float]:
        return len(self.grid) - 1 if self.grid else NEG_INF

    def deg_y(self) -> Union[int, float]:
        return len(self.grid[0]) - 1 if self.grid else NEG_INF

    def __add__(self, other: "BiPoly") -> "BiPoly":
        nr = max(len(self.grid), len(other.grid))
        nc = max(len(self.grid[0]) if self.grid else 0,
                 len(other.grid[0]) if other.grid else 0)
        z = self.field.zero
        out = [[z] * nc for _ in range(nr)]
        for g in (self.grid, other.grid):
            for i, row in enumerate(g):
                for j, c in enumerate(row):
                    out[i][j] = out[i][j] + c
        return BiPoly(self.field, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.field, [[-c for c in row] for row in self.grid])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        if self.is_zero or other.is_zero:
            return BiPoly.zero(self.field)
        z = self.field.zero
        nr = len(self.grid) + len(other.grid) - 1
        nc = len(self.grid[0]) + len(other.grid[0]) - 1
        out = [[z] * nc for _ in range(nr)]
        for i, row in enumerate(self.grid):
            for j, a in enumerate(row):
                if a.is_zero():
                    continue
                for k, orow in enumerate(other.grid):
                    for m, b in enumerate(orow):
                        if not b.is_zero():
                            out[i + k][j + m] = out[i + k][j + m] + a * b
        return BiPoly(self.field, out)

    def scale(self, c: FieldElement) -> "BiPoly":
        return BiPoly(self.field, [[c * a for a in row] for row in self.grid])

    def eval(self, x: FieldElement, y: FieldElement) -> FieldElement:
        acc = self.field.zero
        for row in reversed(self.grid):
            racc = self.field.zero
            for c in reversed(row):
                racc = racc * y + c
            acc = acc * x + racc
        return acc

    def coeffs_in(self, var: str):
        """List of Poly (in the other variable) indexed by powers of ``var``."""
        if var == "second":
            cols = len(self.grid[0]) if self.grid else 0
            out = [Poly(self.field, [row[j] for row in self.grid])
                   for j in range(cols)]
        elif var == "first":
            out = [Poly(self.field, row) for row in self.grid]
        else:
            raise errors.InvalidInput("var must be 'first' or 'second'")
        while out and out[-1].is_zero:
            out.pop()
        return out

    def subs_second_zero(self) -> Poly:
        """Substitute y = 0; result is a Poly in x."""
        return Poly(self.field, [row[0] for row in self.grid] if self.grid else [])

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.grid == other.grid

    def __hash__(self):
        return hash((self.field,
                     tuple(tuple(c.val for c in row) for row in self.grid)))

    def __repr__(self):
        terms = []
        for i, row in enumerate(self.grid):
            for j, c in enumerate(row):
                if not c.is_zero():
                    terms.append(f"({c})*x^{i}*y^{j}")
        return " + ".join(terms) if terms else "0"


def _bareiss_det(mat):
    """Fraction-free determinant of a square matrix of Poly entries.

    All intermediate divisions are exact (Bareiss identities); entries stay
    minors of the input, which keeps degrees and coefficients from blowing
    up the way plain elimination over K[u] would.
    """
    n = len(mat)
    if n == 0:
        raise errors.ZeroInput("empty matrix")
    field = mat[0][0].field
    m = [list(row) for row in mat]
    sign = 1
    prev = Poly.one(field)
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n)
                              if not m[i][k].is_zero), None)
            if pivot_row is None:
                return Poly.zero(field)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Poly.zero(field)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


# integer-list polynomial helpers for the fast rational path

def _ipoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _ipoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av:
            for j, bv in enumerate(b):
                if bv:
                    out[i + j] += av * bv
    return _ipoly_trim(out)


def _ipoly_sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for j, bv in enumerate(b):
        out[j] -= bv
    return _ipoly_trim(out)


def _ipoly_exact_div(a, b):
    # exact division in Z[u]; Bareiss guarantees divisibility
    if not a:
        return []
    rem = list(a)
    db = len(b) - 1
    out = [0] * (len(rem) - db)
    for k in range(len(rem) - db - 1, -1, -1):
        q, r = divmod(rem[k + db], b[-1])
        if r:
            raise errors.InvariantViolation("inexact integer poly division")
        out[k] = q
        if q:
            for j, bv in enumerate(b):
                rem[k + j] -= q * bv
    if any(rem[:db]):
        raise errors.InvariantViolation("inexact integer poly division")
    return _ipoly_trim(out)


def _int_bareiss_det(m):
    """Bareiss determinant over Z[u] with entries as int lists."""
    n = len(m)
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not m[k][k]:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot_row is None:
                return []
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _ipoly_sub(_ipoly_mul(m[i][j], m[k][k]),
                                 _ipoly_mul(m[i][k], m[k][j]))
                m[i][j] = _ipoly_exact_div(num, prev)
            m[i][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return [-c for c in det] if sign < 0 else det


def _rational_sylvester(a: list, b: list, field: FieldCtx) -> Poly:
    # clear denominators per input; the determinant rescales predictably
    from fractions import Fraction
    from math import gcd as _gcd

    def clear(polys):
        lcm = 1
        for p in polys:
            for c in p.coef:
                lcm = lcm * c.val.denominator // _gcd(lcm, c.val.denominator)
        ints = [[int(c.val * lcm) for c in p.coef] for p in polys]
        return lcm, ints

    da, db = len(a) - 1, len(b) - 1
    la, ia = clear(a)
    lb, ib = clear(b)
    n = da + db
    rows = []
    for i in range(db):
        row = [[] for _ in range(n)]
        for j, c in enumerate(reversed(ia)):
            row[i + j] = list(c)
        rows.append(row)
    for i in range(da):
        row = [[] for _ in range(n)]
        for j, c in enumerate(reversed(ib)):
            row[i + j] = list(c)
        rows.append(row)
    det = _int_bareiss_det(rows)
    scale = Fraction(1, la ** db * lb ** da)
    return Poly(field, [field.element(Fraction(c) * scale) for c in det])


def sylvester_resultant(a: list, b: list, field: FieldCtx) -> Poly:
    """Resultant of two polynomials given as coefficient lists of Poly.

    ``a`` and ``b`` list the coefficients (ascending) in the eliminated
    variable; each coefficient is a Poly in the kept variable.  Over Q an
    integer Bareiss elimination is used (denominators cleared up front and
    the known rescaling undone at the end).
    """
    da, db = len(a) - 1, len(b) - 1
    if da < 1 or db < 1:
        raise errors.ZeroInput(
            "resultant needs positive degree in the eliminated variable")
    from .field import RationalField
    if isinstance(field, RationalField):
        return _rational_sylvester(a, b, field)
    n = da + db
    zero = Poly.zero(field)
    rows = []
    for i in range(db):
        row = [zero] * n
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def resultant_eliminate(A: BiPoly, B: BiPoly, var: str = "second") -> Poly:
    """Eliminate ``var`` from A = B = 0; returns a Poly in the kept variable
    vanishing at every common-solution projection."""
    if A.is_zero or B.is_zero:
        raise errors.ZeroInput("resultant of a zero polynomial")
    ca = A.coeffs_in(var)
    cb = B.coeffs_in(var)
    return sylvester_resultant(ca, cb, A.field)
