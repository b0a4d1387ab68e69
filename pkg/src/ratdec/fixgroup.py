"""Fixing groups: all Mobius transformations u over K with f(u) = f.

Three computation routes, cross-checked in the tests:

* tame polynomials: the leading-coefficient condition a^n = 1 pins the
  multiplier, and the x^(n-1) coefficient identity pins the unique shift b
  per multiplier, so the group falls out of the n-th roots of unity;
* general rational functions: the specialization method -- any fixing
  element permutes the fiber of each sample point, so interpolating Mobius
  maps through triples of fiber points enumerates a complete candidate set;
* small finite fields: brute force over all of PGL(2, q).

Each candidate is verified by exact composition before admission, and every
constructed group is checked for closure, inverses and the order-divides-
degree theorem.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple, Union

from . import errors
from ._kernels import mobius_compose as _k_mobius_compose
from ._kernels import pgl_fixing_scan as _k_pgl_scan
from ._kernels import poly_mul as _k_poly_mul
from .decomp import left_divide
from .field import FieldCtx, FieldElement
from .poly import Poly
from .ratfunc import (INF, Infinity, Mobius, ProjPoint, RatFunc, apply_mobius,
                      compose, eval_proj, mobius_from_three_points, proj_key)
from .roots import decode_element, encode_element, encode_poly, kernel_params, \
    roots_in_field, nth_roots_of_unity

Subject = Union[Poly, RatFunc]

BRUTE_FORCE_Q_CAP = 32
SPECIALIZATION_MIN_Q = 7


def _subject_ratfunc(subject: Subject) -> RatFunc:
    return RatFunc.from_poly(subject) if isinstance(subject, Poly) else subject


def _order_bound(f: RatFunc) -> int:
    return max(60, f.degree)


@dataclass(frozen=True)
class FixGroup:
    """A finite group of Mobius transformations fixing ``subject``."""

    subject: Subject
    elements: frozenset
    order: int
    generator: Optional[Mobius]

    @classmethod
    def build(cls, subject: Subject, elems) -> "FixGroup":
        f = _subject_ratfunc(subject)
        elements = frozenset(elems)
        ident = Mobius.identity(f.field)
        if ident not in elements:
            raise errors.InvariantViolation("fixing group misses the identity")
        for u in elements:
            if apply_mobius(f, u) != f:
                raise errors.InvariantViolation(f"{u} does not fix {f}")
            if u.inverse() not in elements:
                raise errors.InvariantViolation(f"inverse of {u} missing")
        for u, v in itertools.product(elements, repeat=2):
            if u.compose(v) not in elements:
                raise errors.InvariantViolation("fixing group not closed")
        order = len(elements)
        if f.degree % order != 0:
            raise errors.InvariantViolation(
                f"group order {order} does not divide degree {f.degree}")
        bound = _order_bound(f)
        generator = None
        for u in sorted(elements, key=Mobius.sort_key):
            if u.order(bound) == order:
                generator = u
                break
        return cls(subject=subject, elements=elements, order=order,
                   generator=generator)

    @property
    def is_cyclic(self) -> bool:
        return self.generator is not None

    def sorted_elements(self) -> List[Mobius]:
        return sorted(self.elements, key=Mobius.sort_key)

    def subgroup_generated_by(self, u: Mobius) -> "Subgroup":
        return Subgroup.generated(self, u)

    def __contains__(self, u: Mobius) -> bool:
        return u in self.elements


@dataclass(frozen=True)
class Subgroup:
    """A cyclic subgroup of a fixing group."""

    parent: FixGroup
    elements: frozenset
    generator: Mobius

    @classmethod
    def generated(cls, parent: FixGroup, u: Mobius) -> "Subgroup":
        if u not in parent.elements:
            raise errors.InvalidInput(f"{u} is not in the parent group")
        elems = [Mobius.identity(u.field)]
        acc = u
        while not acc.is_identity:
            elems.append(acc)
            acc = acc.compose(u)
            if len(elems) > parent.order:
                raise errors.InvariantViolation("element order exceeds group order")
        sub = frozenset(elems)
        if parent.order % len(sub) != 0:
            raise errors.InvariantViolation("Lagrange violation in subgroup")
        return cls(parent=parent, elements=sub, generator=u)

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> List[Mobius]:
        return sorted(self.elements, key=Mobius.sort_key)


# ---------------------------------------------------------------------------
# candidate verification (prefilter + exact check)
# ---------------------------------------------------------------------------

class _FixChecker:
    """Decides f(u) = f exactly, with a cheap pointwise prefilter."""

    def __init__(self, f: RatFunc):
        self.f = f
        F = f.field
        self.finite = F.is_finite and F.order() <= 4096
        if self.finite:
            self.kp = kernel_params(F)
            p, e, m0, m1 = self.kp
            self.fn = encode_poly(f.num)
            self.fd = encode_poly(f.den)
            q = F.order()
            self.q = q
            self.table = [None] * (q + 1)  # slot q = infinity; None = infinity
            for t in range(q):
                val = eval_proj(f, decode_element(F, t))
                self.table[t] = (None if isinstance(val, Infinity)
                                 else encode_element(F, val))
            vinf = eval_proj(f, INF)
            self.table[q] = (None if isinstance(vinf, Infinity)
                             else encode_element(F, vinf))
        else:
            pts: List[ProjPoint] = []
            seen = set()
            k = 0
            while len(pts) < 7:
                n = (k + 1) // 2 * (1 if k % 2 else -1)  # 0, 1, -1, 2, -2, ...
                el = F.from_int(n)
                if el.val not in seen:
                    seen.add(el.val)
                    pts.append(el)
                k += 1
            pts.append(INF)
            self.points = [(pt, eval_proj(f, pt)) for pt in pts]

    def fixes(self, u: Mobius) -> bool:
        if self.finite:
            return self._fixes_finite(u)
        for pt, val in self.points:
            moved = u(pt)
            got = eval_proj(self.f, moved)
            same = (isinstance(got, Infinity) and isinstance(val, Infinity)) or \
                   (not isinstance(got, Infinity)
                    and not isinstance(val, Infinity) and got == val)
            if not same:
                return False
        return apply_mobius(self.f, u) == self.f

    def _fixes_finite(self, u: Mobius) -> bool:
        F = self.f.field
        p, e, m0, m1 = self.kp
        a = encode_element(F, u.a)
        b = encode_element(F, u.b)
        c = encode_element(F, u.c)
        d = encode_element(F, u.d)
        q = self.q

        def u_at(t):
            if t is None:
                return None if c == 0 else self._enc_div(a, c)
            den = self._enc_lin(c, t, d)
            if den == 0:
                return None
            return self._enc_div(self._enc_lin(a, t, b), den)

        for t in list(range(min(q, 4))) + [None]:
            y = u_at(t)
            vy = self.table[q] if y is None else self.table[y]
            vt = self.table[q] if t is None else self.table[t]
            if vy != vt:
                return False
        N, D = _k_mobius_compose(p, e, m0, m1, self.fn, self.fd, a, b, c, d)
        return (_k_poly_mul(p, e, m0, m1, N, self.fd)
                == _k_poly_mul(p, e, m0, m1, D, self.fn))

    def _enc_lin(self, m, t, add):
        p, e, m0, m1 = self.kp
        from ._kernels import poly_eval
        return poly_eval(p, e, m0, m1, [add, m], t)

    def _enc_div(self, x, y):
        F = self.f.field
        xe = decode_element(F, x)
        ye = decode_element(F, y)
        return encode_element(F, xe / ye)


# ---------------------------------------------------------------------------
# the three computation routes
# ---------------------------------------------------------------------------

def fixing_group_poly_tame(f: Poly) -> FixGroup:
    """Fixing group of a tame polynomial; cyclic by the main structure
    theorem, with a generator reported.

    For u = a*x + b in the group, a must be an n-th root of unity, and the
    x^(n-1) coefficient of f(a*x+b) forces
    b = f_{n-1} (1 - a^(n-1)) / (n f_n a^(n-1)).
    """
    if f.is_constant:
        raise errors.BadDegree("fixing group needs a nonconstant polynomial")
    F = f.field
    n = int(f.degree)
    char = F.characteristic()
    if char and n % char == 0:
        raise errors.WildInput(f"degree {n} divisible by characteristic {char}")
    n_el = F.from_int(n)
    fn = f.lc()
    fn1 = f.coeff(n - 1)
    elems = []
    for a in nth_roots_of_unity(F, n):
        an1 = a ** (n - 1)
        b = fn1 * (F.one - an1) / (n_el * fn * an1)
        u_poly = Poly(F, [b, a])
        if f.compose(u_poly) == f:
            elems.append(Mobius(a, b, F.zero, F.one))
    group = FixGroup.build(f, elems)
    if group.generator is None:
        raise errors.InvariantViolation("tame fixing group is not cyclic")
    return group


def fixing_group_bruteforce(f: RatFunc) -> FixGroup:
    """Exact fixing group by scanning all of PGL(2, q); the oracle route."""
    f = _subject_ratfunc(f)
    F = f.field
    q = F.order()
    if q is None:
        raise errors.InfiniteField("brute force needs a finite field")
    if q > BRUTE_FORCE_Q_CAP:
        raise errors.FieldTooLarge(
            f"PGL(2,{q}) enumeration capped at q = {BRUTE_FORCE_Q_CAP}")
    if f.is_constant:
        raise errors.BadDegree("fixing group needs a nonconstant function")
    p, e, m0, m1 = kernel_params(F)
    hits = _k_pgl_scan(p, e, m0, m1, encode_poly(f.num), encode_poly(f.den))
    elems = [Mobius(decode_element(F, a), decode_element(F, b),
                    decode_element(F, c), decode_element(F, d))
             for a, b, c, d in hits]
    return FixGroup.build(f, elems)


def _sample_points(F: FieldCtx, count: int) -> List[ProjPoint]:
    pts: List[ProjPoint] = []
    seen = set()
    limit = F.order()
    k = 0
    while len(pts) < count and (limit is None or len(seen) < limit):
        n = (k + 1) // 2 * (1 if k % 2 else -1)  # 0, 1, -1, 2, -2, ...
        el = F.from_int(n)
        if el.val not in seen:
            seen.add(el.val)
            pts.append(el)
        k += 1
        if k > 4 * (count + 2) and limit is None:
            break
    if len(pts) < count:
        pts.append(INF)
    return pts[:count]


def _fiber(f: RatFunc, x0: ProjPoint) -> List[ProjPoint]:
    """All y in K union {inf} with f(y) = f(x0), including x0 itself."""
    c = eval_proj(f, x0)
    if isinstance(c, Infinity):
        poly = f.den
        include_inf = f.num.degree > f.den.degree
    else:
        poly = f.num - f.den.scale(c)
        include_inf = poly.degree < f.degree
    members: List[ProjPoint] = sorted(roots_in_field(poly), key=proj_key)
    if include_inf:
        members.append(INF)
    return members


def fixing_group_rational(f: RatFunc) -> FixGroup:
    """Fixing group by the specialization method.

    Three sample points are drawn from the deterministic sequence
    0, 1, -1, 2, -2, ... plus infinity; every fixing element maps each
    sample point into its fiber, so all group elements appear among the
    Mobius maps interpolating fiber triples.  Finite fields below
    ``SPECIALIZATION_MIN_Q`` go straight to brute force.
    """
    f = _subject_ratfunc(f)
    if f.is_constant:
        raise errors.BadDegree("fixing group needs a nonconstant function")
    F = f.field
    q = F.order()
    if q is not None and q < SPECIALIZATION_MIN_Q:
        return fixing_group_bruteforce(f)
    pts = _sample_points(F, 3)
    if len(pts) < 3:
        if q is not None:
            return fixing_group_bruteforce(f)
        raise errors.NotEnoughSamplePoints("fewer than three sample points")
    fibers = [_fiber(f, x0) for x0 in pts]
    checker = _FixChecker(f)
    elems: Dict[Mobius, None] = {}
    for triple in itertools.product(*fibers):
        y0, y1, y2 = triple
        if (proj_key(y0) == proj_key(y1) or proj_key(y0) == proj_key(y2)
                or proj_key(y1) == proj_key(y2)):
            continue
        try:
            u = mobius_from_three_points(list(zip(pts, triple)))
        except errors.DegeneratePoints:
            continue
        if u in elems:
            continue
        if checker.fixes(u):
            elems[u] = None
    return FixGroup.build(f, list(elems))


# ---------------------------------------------------------------------------
# structure and invariants
# ---------------------------------------------------------------------------

def group_structure(G: FixGroup) -> dict:
    """Element orders, cyclicity, and all cyclic subgroups (deduplicated)."""
    bound = _order_bound(_subject_ratfunc(G.subject))
    orders = {}
    for u in G.sorted_elements():
        orders[u] = u.order(bound)
    subgroups = {}
    for u in G.sorted_elements():
        sub = Subgroup.generated(G, u)
        key = frozenset(sub.elements)
        if key not in subgroups:
            subgroups[key] = sub
    subs = sorted(subgroups.values(),
                  key=lambda s: (s.order, s.generator.sort_key()))
    return {
        "order": G.order,
        "cyclic": G.is_cyclic,
        "generator": G.generator,
        "element_orders": [(u, orders[u]) for u in G.sorted_elements()],
        "cyclic_subgroups": subs,
    }


_SEED_RECIPES = ("x^2", "x^3", "x^4", "1/(x-1)", "1/(x+1)", "1/(x-2)",
                 "1/(x+2)", "1/(x-3)", "1/(x+3)")


def _seed_functions(F: FieldCtx):
    from .exprparse import parse_ratfunc
    for recipe in _SEED_RECIPES:
        try:
            yield parse_ratfunc(recipe, F)
        except errors.RatdecError:
            continue


def invariant_function(H: Subgroup) -> RatFunc:
    """A rational function of degree |H| fixed by every element of H.

    The orbit sum of x is tried first; when its degree collapses, orbit sums
    of seed functions follow, until one reaches degree |H| exactly.  The
    result is normalized with monic numerator and denominator.
    """
    m = H.order
    if m < 2:
        raise errors.InvalidInput("invariant functions need order at least 2")
    F = H.generator.field
    candidates = [RatFunc.x(F)]

    def orbit_sum(r: RatFunc) -> RatFunc:
        acc = None
        for u in H.sorted_elements():
            term = compose(r, u.as_ratfunc())
            acc = term if acc is None else acc + term
        return acc

    for seed in itertools.chain(candidates, _seed_functions(F)):
        if seed.is_constant:
            continue
        h = orbit_sum(seed)
        if h.degree != m:
            continue
        h = RatFunc(h.num.monic(), h.den)
        for u in H.sorted_elements():
            if apply_mobius(h, u) != h:
                raise errors.InvariantViolation("orbit sum is not invariant")
        return h
    raise errors.SeedExhaustion(
        f"no seed produced an invariant of degree {m}")


def decompose_via_subgroup(f: RatFunc, H: Subgroup
                           ) -> Optional[Tuple[RatFunc, RatFunc]]:
    """Split f = g(h) along the invariant h of a cyclic subgroup of its
    fixing group; returns None when the left division fails."""
    f = _subject_ratfunc(f)
    for u in H.elements:
        if apply_mobius(f, u) != f:
            raise errors.InvalidInput(f"{u} does not fix the function")
    h = invariant_function(H)
    g = left_divide(f, h)
    if g is None:
        return None
    if compose(g, h) != f:
        raise errors.InvariantViolation("subgroup decomposition recomposition")
    return g, h
