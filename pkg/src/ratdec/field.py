"""Exact arithmetic for the supported coefficient fields.

Three kinds of field are supported:

* the rationals ``Q`` (elements are :class:`fractions.Fraction`, always in
  lowest terms with positive denominator),
* prime fields ``GF(p)`` (elements are residues in ``[0, p)``),
* one quadratic extension of either, ``Q[g]/(g^2+m1*g+m0)`` or
  ``GF(p)[g]/(...)`` with a monic irreducible quadratic modulus
  (elements are pairs ``c0 + c1*g`` of base elements).

Towers (an extension of an extension) are rejected.  Field descriptors use
the grammar ``Q | Q[sym]/(modulus) | GF(p) | GF(p)[sym]/(modulus)``, e.g.
``Q[i]/(i^2+1)`` or ``GF(2)[a]/(a^2+a+1)``.

All contexts and elements are immutable values; operations are pure and safe
to share between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional, Union

from . import errors

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24; strong-probable beyond."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _fraction_is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


class FieldElement:
    """An element of a :class:`FieldCtx`, with operator overloading.

    ``val`` holds the canonical raw representation (Fraction, int residue, or
    a pair of base raws); equality and hashing are structural.
    """

    __slots__ = ("field", "val")

    def __init__(self, field: "FieldCtx", val):
        self.field = field
        self.val = val

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise errors.MixedFields(
                    f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.val, other.val))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.val, other.val))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(other.val, self.val))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.val, other.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._div(self.val, other.val))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._div(other.val, self.val))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.val))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise errors.InvalidInput("exponent must be a nonnegative integer")
        acc = self.field.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.val))

    def is_zero(self) -> bool:
        return self.val == self.field._zero_raw()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.val == other.val

    def __hash__(self):
        return hash((self.field, self.val))

    def __str__(self):
        return self.field.format_element(self.val)

    def __repr__(self):
        return f"<{self} in {self.field}>"


class FieldCtx:
    """Base class for field contexts.  Subclasses implement raw-value ops."""

    kind = "abstract"

    # raw-value arithmetic; implemented per kind
    def _add(self, a, b): raise NotImplementedError
    def _sub(self, a, b): raise NotImplementedError
    def _mul(self, a, b): raise NotImplementedError
    def _neg(self, a): raise NotImplementedError
    def _inv(self, a): raise NotImplementedError
    def _zero_raw(self): raise NotImplementedError
    def _one_raw(self): raise NotImplementedError
    def _from_int_raw(self, n: int): raise NotImplementedError

    def _div(self, a, b):
        return self._mul(a, self._inv(b))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, self._zero_raw())

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self._one_raw())

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, self._from_int_raw(n))

    def element(self, val) -> FieldElement:
        """Wrap a raw value, validating its shape."""
        raise NotImplementedError

    def characteristic(self) -> int:
        raise NotImplementedError

    def order(self) -> Optional[int]:
        """Number of elements, or None when infinite."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.order() is not None

    def elements(self) -> Iterator[FieldElement]:
        raise errors.InfiniteField(f"{self} is not finite")

    def format_element(self, raw) -> str:
        raise NotImplementedError

    def term_parts(self, raw):
        """(sign, core, needs_parens) for use in polynomial printing."""
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.descriptor()

    def __repr__(self):
        return f"FieldCtx({self.descriptor()!r})"


class RationalField(FieldCtx):
    kind = "rationals"

    def _add(self, a, b): return a + b
    def _sub(self, a, b): return a - b
    def _mul(self, a, b): return a * b
    def _neg(self, a): return -a
    def _zero_raw(self): return Fraction(0)
    def _one_raw(self): return Fraction(1)
    def _from_int_raw(self, n): return Fraction(n)

    def _inv(self, a):
        if a == 0:
            raise errors.DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def element(self, val) -> FieldElement:
        if isinstance(val, int):
            val = Fraction(val)
        if not isinstance(val, Fraction):
            raise errors.InvalidInput(f"not a rational value: {val!r}")
        return FieldElement(self, val)

    def characteristic(self) -> int:
        return 0

    def format_element(self, raw) -> str:
        return str(raw)

    def term_parts(self, raw):
        sign = -1 if raw < 0 else 1
        core = str(abs(raw))
        return sign, core, "/" in core

    def descriptor(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(FieldCtx):
    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise errors.NonPrimeModulus(f"{p} is not prime")
        self.p = p

    def _add(self, a, b): return (a + b) % self.p
    def _sub(self, a, b): return (a - b) % self.p
    def _mul(self, a, b): return (a * b) % self.p
    def _neg(self, a): return (-a) % self.p
    def _zero_raw(self): return 0
    def _one_raw(self): return 1
    def _from_int_raw(self, n): return n % self.p

    def _inv(self, a):
        if a % self.p == 0:
            raise errors.DivisionByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def element(self, val) -> FieldElement:
        if not isinstance(val, int):
            raise errors.InvalidInput(f"not a residue: {val!r}")
        return FieldElement(self, val % self.p)

    def characteristic(self) -> int:
        return self.p

    def order(self) -> Optional[int]:
        return self.p

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.p):
            yield FieldElement(self, i)

    def format_element(self, raw) -> str:
        return str(raw)

    def term_parts(self, raw):
        return 1, str(raw), False

    def descriptor(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class QuadExtField(FieldCtx):
    """Degree-2 extension base[g]/(g^2 + m1*g + m0), modulus irreducible."""

    kind = "quadext"

    def __init__(self, base: FieldCtx, m0: FieldElement, m1: FieldElement,
                 gen_name: str):
        if isinstance(base, QuadExtField):
            raise errors.UnsupportedTower(
                "nested quadratic extensions are not supported")
        if not isinstance(base, (RationalField, PrimeField)):
            raise errors.UnsupportedTower(f"unsupported base field {base}")
        self.base = base
        self.m0 = m0.val
        self.m1 = m1.val
        self.gen_name = gen_name
        self._check_irreducible()

    def _check_irreducible(self):
        b = self.base
        disc = b._sub(b._mul(self.m1, self.m1),
                      b._mul(b._from_int_raw(4), self.m0))
        if isinstance(b, RationalField):
            reducible = _fraction_is_square(disc)
        else:
            p = b.p
            if p == 2:
                # brute force the two candidates
                reducible = any(
                    (r * r + self.m1 * r + self.m0) % 2 == 0 for r in (0, 1))
            else:
                reducible = disc == 0 or pow(disc, (p - 1) // 2, p) == 1
        if reducible:
            raise errors.ReducibleExtensionModulus(
                f"{self._modulus_text()} is reducible over {b}")

    def _modulus_text(self) -> str:
        g = self.gen_name
        text = f"{g}^2"
        if self.m1 != self.base._zero_raw():
            s, core, parens = self.base.term_parts(self.m1)
            piece = g if core == "1" else (
                f"({core})*{g}" if parens else f"{core}*{g}")
            text += f"+{piece}" if s > 0 else f"-{piece}"
        if self.m0 != self.base._zero_raw():
            s, core, parens = self.base.term_parts(self.m0)
            piece = f"({core})" if parens else core
            text += f"+{piece}" if s > 0 else f"-{piece}"
        return text

    # alpha^2 = -m1*alpha - m0
    def _add(self, a, b):
        f = self.base
        return (f._add(a[0], b[0]), f._add(a[1], b[1]))

    def _sub(self, a, b):
        f = self.base
        return (f._sub(a[0], b[0]), f._sub(a[1], b[1]))

    def _neg(self, a):
        f = self.base
        return (f._neg(a[0]), f._neg(a[1]))

    def _mul(self, a, b):
        f = self.base
        a0, a1 = a
        b0, b1 = b
        t2 = f._mul(a1, b1)
        c0 = f._sub(f._mul(a0, b0), f._mul(self.m0, t2))
        c1 = f._sub(f._add(f._mul(a0, b1), f._mul(a1, b0)),
                    f._mul(self.m1, t2))
        return (c0, c1)

    def _inv(self, a):
        f = self.base
        a0, a1 = a
        # N(a) = a0^2 - m1*a0*a1 + m0*a1^2; nonzero for a != 0 by irreducibility
        norm = f._add(f._sub(f._mul(a0, a0), f._mul(self.m1, f._mul(a0, a1))),
                      f._mul(self.m0, f._mul(a1, a1)))
        if norm == f._zero_raw():
            raise errors.DivisionByZero(f"inverse of 0 in {self}")
        ninv = f._inv(norm)
        return (f._mul(f._sub(a0, f._mul(self.m1, a1)), ninv),
                f._mul(f._neg(a1), ninv))

    def _zero_raw(self):
        z = self.base._zero_raw()
        return (z, z)

    def _one_raw(self):
        return (self.base._one_raw(), self.base._zero_raw())

    def _from_int_raw(self, n):
        return (self.base._from_int_raw(n), self.base._zero_raw())

    def generator(self) -> FieldElement:
        return FieldElement(self, (self.base._zero_raw(), self.base._one_raw()))

    def element(self, val) -> FieldElement:
        if isinstance(val, tuple) and len(val) == 2:
            c0 = self.base.element(val[0] if not isinstance(val[0], FieldElement)
                                   else val[0].val)
            c1 = self.base.element(val[1] if not isinstance(val[1], FieldElement)
                                   else val[1].val)
            return FieldElement(self, (c0.val, c1.val))
        raise errors.InvalidInput(f"not an extension element: {val!r}")

    def characteristic(self) -> int:
        return self.base.characteristic()

    def order(self) -> Optional[int]:
        q = self.base.order()
        return None if q is None else q * q

    def elements(self) -> Iterator[FieldElement]:
        q = self.base.order()
        if q is None:
            raise errors.InfiniteField(f"{self} is not finite")
        for c1 in range(q):
            for c0 in range(q):
                yield FieldElement(self, (c0, c1))

    def format_element(self, raw) -> str:
        c0, c1 = raw
        zb = self.base._zero_raw()
        g = self.gen_name
        if c1 == zb:
            return self.base.format_element(c0)
        s1, core1, parens1 = self.base.term_parts(c1)
        if core1 == "1":
            gen_part = g
        else:
            gen_part = f"({core1})*{g}" if parens1 else f"{core1}*{g}"
        if c0 == zb:
            return gen_part if s1 > 0 else f"-{gen_part}"
        head = self.base.format_element(c0)
        return f"{head} + {gen_part}" if s1 > 0 else f"{head} - {gen_part}"

    def term_parts(self, raw):
        c0, c1 = raw
        zb = self.base._zero_raw()
        if c1 == zb:
            return self.base.term_parts(c0)
        if c0 == zb:
            s1, core1, parens1 = self.base.term_parts(c1)
            if core1 == "1":
                return s1, self.gen_name, False
            core = f"({core1})*{self.gen_name}" if parens1 \
                else f"{core1}*{self.gen_name}"
            return s1, core, True
        return 1, self.format_element(raw), True

    def descriptor(self) -> str:
        return f"{self.base.descriptor()}[{self.gen_name}]/({self._modulus_text()})"

    def __eq__(self, other):
        return (isinstance(other, QuadExtField) and other.base == self.base
                and other.m0 == self.m0 and other.m1 == self.m1
                and other.gen_name == self.gen_name)

    def __hash__(self):
        return hash(("ext", self.base, self.m0, self.m1, self.gen_name))


# ---------------------------------------------------------------------------
# descriptor parsing
# ---------------------------------------------------------------------------

_BASE_RE = re.compile(r"^(Q|GF\((\d+)\))$")
_EXT_RE = re.compile(r"^(Q|GF\((\d+)\))\[([A-Za-z_]\w*)\]/\((.+)\)$")


def _parse_modulus(base: FieldCtx, sym: str, text: str):
    """Parse a monic quadratic '<sym>^2 + c1*<sym> + c0' over base.

    Returns (m0, m1) as FieldElements.  Reuses the expression parser with the
    generator symbol standing in for the variable.
    """
    from .exprparse import parse_poly_over
    p = parse_poly_over(text, base, var_name=sym)
    if p.degree != 2:
        raise errors.ParseError(
            f"extension modulus must be quadratic, got degree {p.degree}")
    if p.coef[2] != base.one:
        raise errors.ParseError("extension modulus must be monic")
    return p.coef[0], p.coef[1]


def make_field(spec: str) -> FieldCtx:
    """Build a field context from a descriptor string.

    Grammar: ``Q`` | ``GF(<p>)`` | ``Q[<sym>]/(<monic quadratic>)`` |
    ``GF(<p>)[<sym>]/(<monic quadratic>)``.
    """
    text = spec.replace(" ", "")
    m = _BASE_RE.match(text)
    if m:
        if m.group(2) is None:
            return RationalField()
        n = int(m.group(2))
        if not _is_prime(n):
            # a prime power means the caller forgot the extension modulus
            for p in range(2, isqrt(n) + 1):
                if _is_prime(p):
                    k = n
                    while k % p == 0:
                        k //= p
                    if k == 1:
                        raise errors.MissingModulus(
                            f"GF({n}) needs an explicit quadratic modulus, "
                            f"e.g. GF({p})[a]/(...)")
            raise errors.NonPrimeModulus(f"{n} is not prime")
        return PrimeField(n)
    m = _EXT_RE.match(text)
    if m:
        base = RationalField() if m.group(2) is None else make_field(
            f"GF({m.group(2)})")
        sym = m.group(3)
        m0, m1 = _parse_modulus(base, sym, m.group(4))
        return QuadExtField(base, m0, m1, sym)
    raise errors.ParseError(f"unrecognized field descriptor: {spec!r}")


def characteristic(F: FieldCtx) -> int:
    return F.characteristic()


_BINARY_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "eq": lambda a, b: a == b,
}


def arith(a: FieldElement, b: Optional[FieldElement], op: str
          ) -> Union[FieldElement, bool]:
    """Dispatch a named field operation; unary ops ignore ``b``."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op not in _BINARY_OPS:
        raise errors.InvalidInput(f"unknown field op {op!r}")
    if b is None:
        raise errors.InvalidInput(f"op {op!r} needs two operands")
    return _BINARY_OPS[op](a, b)
