"""Reduced rational functions, Mobius transformations (units under
composition), and projective evaluation over K union {infinity}.

A :class:`RatFunc` always keeps coprime parts with a monic denominator (a
constant denominator is absorbed into the numerator).  A :class:`Mobius` is
canonically scaled -- c = 1 when c is nonzero, else a = 1 -- so structural
equality coincides with equality in PGL(2, K), which makes group elements
hashable.
"""

from __future__ import annotations

from typing import Optional, Tuple, Union

from . import errors
from .field import FieldCtx, FieldElement
from .poly import Poly


class Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = Infinity()

ProjPoint = Union[FieldElement, Infinity]


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise errors.ZeroDenominator("zero denominator")
        if num.field != den.field:
            raise errors.MixedFields("numerator and denominator fields differ")
        if not num.is_zero:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.lc()
        if lead != den.field.one:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.field = num.field
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.field))

    @classmethod
    def constant(cls, c: FieldElement) -> "RatFunc":
        return cls(Poly.constant(c), Poly.one(c.field))

    @classmethod
    def x(cls, field: FieldCtx) -> "RatFunc":
        return cls(Poly.x(field), Poly.one(field))

    @property
    def degree(self) -> int:
        if self.num.is_zero:
            return 0
        return int(max(self.num.degree, self.den.degree))

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def to_poly(self) -> Poly:
        if not self.is_polynomial:
            raise errors.InvalidInput(f"{self} is not a polynomial")
        return self.num

    def constant_value(self) -> FieldElement:
        if not self.is_constant:
            raise errors.InvalidInput(f"{self} is not constant")
        return self.num.constant_value()

    def _check_same(self, other: "RatFunc"):
        if not isinstance(other, RatFunc):
            raise errors.InvalidInput(f"expected RatFunc, got {other!r}")
        if other.field != self.field:
            raise errors.MixedFields("rational functions over different fields")

    # field operations (used by the parser and by orbit sums)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check_same(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        self._check_same(other)
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check_same(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        self._check_same(other)
        if other.num.is_zero:
            raise errors.DivisionByZero("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            raise errors.InvalidInput("negative power of a rational function")
        acc = RatFunc.constant(self.field.one)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.field == other.field and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self}, over {self.field})"


def make_ratfunc(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def degree(f: RatFunc) -> int:
    return f.degree


def compose(g: RatFunc, h: RatFunc) -> RatFunc:
    """g(h), reduced.  Degrees multiply for nonconstant inputs."""
    g._check_same(h)
    if g.is_constant:
        return g
    if h.is_constant:
        raise errors.ConstantInner("cannot compose with a constant inner function")
    n = int(max(g.num.degree, g.den.degree))
    hn_pows = [Poly.one(h.field)]
    hd_pows = [Poly.one(h.field)]
    for _ in range(n):
        hn_pows.append(hn_pows[-1] * h.num)
        hd_pows.append(hd_pows[-1] * h.den)

    def homog(p: Poly) -> Poly:
        acc = Poly.zero(h.field)
        for i in range(n + 1):
            c = p.coeff(i)
            if not c.is_zero():
                acc = acc + (hn_pows[i] * hd_pows[n - i]).scale(c)
        return acc

    return RatFunc(homog(g.num), homog(g.den))


def eval_proj(f: RatFunc, pt: ProjPoint) -> ProjPoint:
    """Value of f at a point of K union {inf}, projective conventions."""
    if isinstance(pt, Infinity):
        dn, dd = f.num.degree, f.den.degree
        if f.num.is_zero:
            return f.field.zero
        if dn > dd:
            return INF
        if dn < dd:
            return f.field.zero
        return f.num.lc() / f.den.lc()
    dv = f.den.eval(pt)
    if dv.is_zero():
        return INF  # 0/0 impossible: num and den are coprime
    return f.num.eval(pt) / dv


class Mobius:
    """(a*x + b)/(c*x + d) with ad - bc != 0, canonically scaled."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, a: FieldElement, b: FieldElement,
                 c: FieldElement, d: FieldElement):
        field = a.field
        for v in (b, c, d):
            if v.field != field:
                raise errors.MixedFields("Mobius coefficients from mixed fields")
        det = a * d - b * c
        if det.is_zero():
            raise errors.InvalidInput("singular Mobius matrix")
        scale = c.inverse() if not c.is_zero() else a.inverse()
        self.field = field
        self.a = a * scale
        self.b = b * scale
        self.c = c * scale
        self.d = d * scale

    @classmethod
    def identity(cls, field: FieldCtx) -> "Mobius":
        return cls(field.one, field.zero, field.zero, field.one)

    @classmethod
    def from_ratfunc(cls, f: RatFunc) -> "Mobius":
        if f.degree != 1:
            raise errors.InvalidInput(f"{f} is not a unit (degree 1) function")
        return cls(f.num.coeff(1), f.num.coeff(0),
                   f.den.coeff(1), f.den.coeff(0))

    def as_ratfunc(self) -> RatFunc:
        F = self.field
        return RatFunc(Poly(F, [self.b, self.a]), Poly(F, [self.d, self.c]))

    @property
    def is_identity(self) -> bool:
        return (self.c.is_zero() and self.b.is_zero()
                and self.a == self.d)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other: (self . other)(x) = self(other(x))."""
        if other.field != self.field:
            raise errors.MixedFields("Mobius composition across fields")
        return Mobius(self.a * other.a + self.b * other.c,
                      self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c,
                      self.c * other.b + self.d * other.d)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        if isinstance(pt, Infinity):
            if self.c.is_zero():
                return INF
            return self.a / self.c
        den = self.c * pt + self.d
        if den.is_zero():
            return INF
        return (self.a * pt + self.b) / den

    def order(self, bound: int) -> Optional[int]:
        return mobius_order(self, bound)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        return (self.field == other.field and self.a == other.a
                and self.b == other.b and self.c == other.c
                and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def sort_key(self) -> str:
        return str(self)

    def __str__(self):
        return str(self.as_ratfunc())

    def __repr__(self):
        return f"Mobius({self})"


def mobius_arith(u: Mobius, v: Optional[Mobius], op: str):
    if op == "inverse":
        return u.inverse()
    if op == "compose":
        return u.compose(v)
    if op == "eq":
        return u == v
    raise errors.InvalidInput(f"unknown Mobius op {op!r}")


def mobius_order(u: Mobius, bound: int) -> Optional[int]:
    """Least k <= bound with u^k = id, else None."""
    if bound < 1:
        raise errors.InvalidInput("order bound must be positive")
    acc = u
    for k in range(1, bound + 1):
        if acc.is_identity:
            return k
        acc = acc.compose(u)
    return None


def apply_mobius(f: RatFunc, u: Mobius) -> RatFunc:
    """f composed on the right with the unit u; degree is preserved."""
    if f.is_constant:
        return f
    return compose(f, u.as_ratfunc())


def _std_matrix(field: FieldCtx, z0: ProjPoint, z1: ProjPoint, z2: ProjPoint):
    """Matrix (a, b, c, d) of the map sending (z0, z1, z2) to (0, 1, inf)."""
    one, zero = field.one, field.zero
    if isinstance(z0, Infinity):
        return (zero, z1 - z2, one, -z2)
    if isinstance(z1, Infinity):
        return (one, -z0, one, -z2)
    if isinstance(z2, Infinity):
        return (one, -z0, zero, z1 - z0)
    p = z1 - z2
    q = z1 - z0
    return (p, -(z0 * p), q, -(z2 * q))


def mobius_from_three_points(pairs) -> Mobius:
    """The unique u in PGL(2, K) with u(x_j) = y_j for three point pairs.

    Sources must be pairwise distinct, and so must targets; the cross-ratio
    construction keeps all coefficients in K.  The result is verified by
    evaluation.
    """
    pairs = list(pairs)
    if len(pairs) != 3:
        raise errors.InvalidInput("exactly three point pairs required")
    srcs = [p[0] for p in pairs]
    dsts = [p[1] for p in pairs]

    def distinct(pts):
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = pts[i], pts[j]
                if isinstance(a, Infinity) and isinstance(b, Infinity):
                    return False
                if (not isinstance(a, Infinity) and not isinstance(b, Infinity)
                        and a == b):
                    return False
        return True

    if not distinct(srcs) or not distinct(dsts):
        raise errors.DegeneratePoints("repeated source or target point")
    field = next(p.field for p in srcs + dsts if isinstance(p, FieldElement))
    sa, sb, sc, sd = _std_matrix(field, *srcs)
    ta, tb, tc, td = _std_matrix(field, *dsts)
    # u = T^{-1} S with T^{-1} the adjugate (projective inverse)
    ia, ib, ic, id_ = td, -tb, -tc, ta
    u = Mobius(ia * sa + ib * sc, ia * sb + ib * sd,
               ic * sa + id_ * sc, ic * sb + id_ * sd)
    for src, dst in pairs:
        got = u(src)
        ok = (isinstance(got, Infinity) and isinstance(dst, Infinity)) or \
             (not isinstance(got, Infinity) and not isinstance(dst, Infinity)
              and got == dst)
        if not ok:
            raise errors.InvariantViolation(
                "three-point interpolation failed verification")
    return u


def proj_eq(a: ProjPoint, b: ProjPoint) -> bool:
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        return isinstance(a, Infinity) and isinstance(b, Infinity)
    return a == b


def proj_key(pt: ProjPoint) -> str:
    return "inf" if isinstance(pt, Infinity) else str(pt)
