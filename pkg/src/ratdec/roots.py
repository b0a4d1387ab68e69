"""Field-level root finding.

Strategy depends on the field kind:

* finite fields with at most ``SCAN_CAP`` elements: exhaustive scan
  (kernel-accelerated); anything larger raises :class:`FieldTooLarge`;
* the rationals: rational root theorem on the primitive integer form,
  with trial-division divisor enumeration;
* quadratic extensions of Q: substitute x = u + v*g, split into two
  rational-coefficient bivariate polynomials and solve the v = 0 branch by
  rational roots of a gcd and the v != 0 branch by Sylvester-resultant
  elimination.

Every candidate root is verified by exact evaluation before it is returned,
so a wrong answer is impossible; incompleteness would be a bug in the
elimination, which the tests cross-check against exhaustive oracles.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Set

from . import errors
from ._kernels import poly_roots as _kernel_poly_roots
from .field import (FieldCtx, FieldElement, PrimeField, QuadExtField,
                    RationalField)
from .poly import BiPoly, Poly, resultant_eliminate

SCAN_CAP = 65536


# ---------------------------------------------------------------------------
# encoding helpers shared with the kernel layer
# ---------------------------------------------------------------------------

def kernel_params(F: FieldCtx):
    """(p, e, m0, m1) describing a finite field for the int-encoded kernels."""
    if isinstance(F, PrimeField):
        return F.p, 1, 0, 0
    if isinstance(F, QuadExtField) and isinstance(F.base, PrimeField):
        return F.base.p, 2, F.m0, F.m1
    raise errors.InfiniteField(f"{F} has no kernel encoding")


def encode_element(F: FieldCtx, a: FieldElement) -> int:
    if isinstance(F, PrimeField):
        return a.val
    c0, c1 = a.val
    return c0 + c1 * F.base.p


def decode_element(F: FieldCtx, idx: int) -> FieldElement:
    if isinstance(F, PrimeField):
        return FieldElement(F, idx)
    p = F.base.p
    return FieldElement(F, (idx % p, idx // p))


def encode_poly(p: Poly):
    return [encode_element(p.field, c) for c in p.coef]


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]

def _primitive_int_coeffs(p: Poly):
    """Scale a Q-polynomial to primitive integer coefficients (ascending)."""
    denlcm = 1
    for c in p.coef:
        denlcm = denlcm * c.val.denominator // int_gcd(denlcm,
                                                       c.val.denominator)
    ints = [int(c.val * denlcm) for c in p.coef]
    content = 0
    for v in ints:
        content = int_gcd(content, v)
    return [v // content for v in ints]


def _squarefree_part(p: Poly) -> Poly:
    # valid in characteristic 0 only
    g = p.gcd(p.derivative())
    if g.degree <= 0:
        return p
    return p.exact_div(g.scale(g.lc().inverse()) if not g.is_monic() else g)


def _rational_roots(p: Poly) -> Set[FieldElement]:
    F = p.field
    work = _squarefree_part(p)
    ints = _primitive_int_coeffs(work)
    roots = set()
    # strip x^k: 0 is a root iff the trailing coefficient vanishes
    k = 0
    while ints[k] == 0:
        k += 1
    if k > 0:
        roots.add(F.zero)
        ints = ints[k:]
    if len(ints) <= 1:
        return roots
    trail, lead = ints[0], ints[-1]
    seen = set()
    for num in _divisors(trail):
        for den in _divisors(lead):
            if int_gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = 0
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(F.element(cand))
    for r in roots:
        if not p.eval(r).is_zero():
            raise errors.InvariantViolation("rational root verification failed")
    return roots


# ---------------------------------------------------------------------------
# quadratic extensions of Q
# ---------------------------------------------------------------------------

def _split_over_base(p: Poly):
    """Expand p(u + v*g) over QuadExt(Q) into base BiPolys (A, B) with
    p(u+v*g) = A(u,v) + g*B(u,v)."""
    F: QuadExtField = p.field
    base = F.base
    m0 = FieldElement(base, F.m0)
    m1 = FieldElement(base, F.m1)
    U = BiPoly.var_x(base)
    V = BiPoly.var_y(base)
    zero = BiPoly.zero(base)
    # powers of (u + v*g): pair (A_i, B_i); g^2 = -m1*g - m0
    A_i, B_i = BiPoly.constant(base.one), zero
    A_acc, B_acc = zero, zero
    for c in p.coef:
        c0, c1 = c.val
        c0e, c1e = FieldElement(base, c0), FieldElement(base, c1)
        # (c0 + c1 g)(A_i + g B_i)
        A_acc = A_acc + A_i.scale(c0e) - B_i.scale(c1e * m0)
        B_acc = B_acc + B_i.scale(c0e) + A_i.scale(c1e) - B_i.scale(c1e * m1)
        # multiply the running power by (u + v g)
        A_next = A_i * U - B_i * V.scale(m0)
        B_next = A_i * V + B_i * U - B_i * V.scale(m1)
        A_i, B_i = A_next, B_next
    return A_acc, B_acc


def _strip_y_power(bp: BiPoly) -> BiPoly:
    """Divide out the largest power of the second variable."""
    if bp.is_zero:
        return bp
    k = 0
    cols = len(bp.grid[0])
    while k < cols and all(row[k].is_zero() for row in bp.grid):
        k += 1
    if k == 0:
        return bp
    return BiPoly(bp.field, [row[k:] for row in bp.grid])


def _quadext_roots(p: Poly) -> Set[FieldElement]:
    F: QuadExtField = p.field
    base = F.base
    work = _squarefree_part(p)
    A, B = _split_over_base(work)
    roots: Set[FieldElement] = set()

    def try_candidate(u: FieldElement, v: FieldElement):
        cand = FieldElement(F, (u.val, v.val))
        if p.eval(cand).is_zero():
            roots.add(cand)

    # v = 0 branch: common rational roots of A(u,0), B(u,0)
    a0 = A.subs_second_zero()
    b0 = B.subs_second_zero()
    if a0.is_zero and b0.is_zero:
        branch = None  # p vanishes on the whole base line; cannot happen for p != 0
    elif a0.is_zero:
        branch = b0
    elif b0.is_zero:
        branch = a0
    else:
        branch = a0.gcd(b0)
    if branch is not None and branch.degree >= 1:
        for u in _rational_roots(branch):
            try_candidate(u, base.zero)

    # v != 0 branch: eliminate v after stripping spurious v powers
    A1 = _strip_y_power(A)
    B1 = _strip_y_power(B)
    if A1.deg_y() < 1 and B1.deg_y() < 1:
        # both collapse to polynomials in u alone; common rational u with any v
        # only arises through the gcd handled per-u below
        au = A1.subs_second_zero() if not A1.is_zero else Poly.zero(base)
        bu = B1.subs_second_zero() if not B1.is_zero else Poly.zero(base)
        g = au.gcd(bu) if not (au.is_zero or bu.is_zero) else (au if bu.is_zero else bu)
        u_candidates = _rational_roots(g) if g.degree >= 1 else set()
    elif A1.deg_y() < 1:
        u_lead = A1.subs_second_zero()
        u_candidates = _rational_roots(u_lead) if u_lead.degree >= 1 else set()
    elif B1.deg_y() < 1:
        u_lead = B1.subs_second_zero()
        u_candidates = _rational_roots(u_lead) if u_lead.degree >= 1 else set()
    else:
        res = resultant_eliminate(A1, B1, "second")
        if res.is_zero:
            raise errors.InvariantViolation(
                "degenerate elimination for a nonzero polynomial")
        u_candidates = _rational_roots(res) if res.degree >= 1 else set()
    for u in u_candidates:
        pa = Poly(base, [row_poly.eval(u) for row_poly in A.coeffs_in("second")])
        pb = Poly(base, [row_poly.eval(u) for row_poly in B.coeffs_in("second")])
        if pa.is_zero and pb.is_zero:
            continue
        if pa.is_zero:
            g = pb
        elif pb.is_zero:
            g = pa
        else:
            g = pa.gcd(pb)
        if g.degree >= 1:
            for v in _rational_roots(g):
                if not v.is_zero():
                    try_candidate(u, v)
    return roots


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def _finite_roots(p: Poly) -> Set[FieldElement]:
    F = p.field
    q = F.order()
    if q > SCAN_CAP:
        raise errors.FieldTooLarge(
            f"exhaustive root scan over {F} exceeds the cap of {SCAN_CAP}")
    pp, e, m0, m1 = kernel_params(F)
    hits = _kernel_poly_roots(pp, e, m0, m1, encode_poly(p))
    roots = {decode_element(F, h) for h in hits}
    for r in roots:
        if not p.eval(r).is_zero():
            raise errors.InvariantViolation("kernel root verification failed")
    return roots


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def roots_in_field(p: Poly) -> Set[FieldElement]:
    """All r in K with p(r) = 0, each verified by exact evaluation."""
    if p.is_zero:
        raise errors.ZeroInput("roots of the zero polynomial")
    if p.is_constant:
        return set()
    F = p.field
    if F.is_finite:
        return _finite_roots(p)
    if isinstance(F, RationalField):
        return _rational_roots(p)
    if isinstance(F, QuadExtField) and isinstance(F.base, RationalField):
        return _quadext_roots(p)
    raise errors.InvalidInput(f"unsupported field {F}")


def nth_roots_of_unity(F: FieldCtx, n: int) -> Set[FieldElement]:
    """All solutions of x^n = 1 in K (a cyclic group under multiplication)."""
    if n < 1:
        raise errors.InvalidInput("n must be positive")
    xn = Poly.monomial(F, n, F.one) - Poly.one(F)
    return roots_in_field(xn)
