"""Functional decomposition of polynomials and rational functions.

The tame polynomial pipeline follows the classical approximate-root scheme:
for f = g(h) monic of degree n with deg h = s and r = n/s invertible in K,
the monic approximate r-th root of f determines h up to an additive
constant, and the h-adic expansion of f has constant digits exactly when f
decomposes -- the digits are then the coefficients of g.

Rational functions are handled through exact linear algebra: given f and a
candidate right component h, the left component g (unique by right
cancellation) is the nullspace of a small homogeneous system, verified by
recomposition before anything is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from . import errors
from .field import FieldElement
from .poly import Poly
from .ratfunc import INF, Infinity, Mobius, RatFunc, compose, eval_proj

Component = Union[Poly, RatFunc]


def _as_ratfunc(f: Component) -> RatFunc:
    return RatFunc.from_poly(f) if isinstance(f, Poly) else f


def _compose_chain(components: Sequence[Component]) -> Component:
    if all(isinstance(c, Poly) for c in components):
        acc = components[-1]
        for g in reversed(components[:-1]):
            acc = g.compose(acc)
        return acc
    acc = _as_ratfunc(components[-1])
    for g in reversed(components[:-1]):
        acc = compose(_as_ratfunc(g), acc)
    return acc


@dataclass(frozen=True)
class Decomposition:
    """A chain of components, outermost first, recomposing to ``original``."""

    components: Tuple[Component, ...]
    original: Component

    def __post_init__(self):
        if not self.components:
            raise errors.InvalidInput("empty decomposition")
        got = _compose_chain(self.components)
        want = self.original
        if isinstance(got, Poly) != isinstance(want, Poly):
            got, want = _as_ratfunc(got), _as_ratfunc(want)
        if got != want:
            raise errors.InvariantViolation(
                "decomposition does not recompose to the original")

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(int(c.degree) for c in self.components)


@dataclass(frozen=True)
class HAdicExpansion:
    """f = sum digits[i] * base^i with deg digits[i] < deg base."""

    base: Poly
    digits: Tuple[Poly, ...]

    def __post_init__(self):
        s = self.base.degree
        for d in self.digits:
            if d.degree >= s:
                raise errors.InvariantViolation("digit degree not below base degree")

    def reconstruct(self) -> Poly:
        acc = Poly.zero(self.base.field)
        power = Poly.one(self.base.field)
        for d in self.digits:
            acc = acc + d * power
            power = power * self.base
        return acc

    def all_digits_constant(self) -> bool:
        return all(d.is_constant for d in self.digits)


def expand_in_h(f: Poly, h: Poly) -> HAdicExpansion:
    """Digits of f in base h by repeated division."""
    if h.is_constant:
        raise errors.ConstantBase("expansion base must be nonconstant")
    digits = []
    cur = f
    while not cur.is_zero:
        cur, rem = cur.divmod(h)
        digits.append(rem)
    if not digits:
        digits.append(Poly.zero(f.field))
    expansion = HAdicExpansion(base=h, digits=tuple(digits))
    if expansion.reconstruct() != f:
        raise errors.InvariantViolation("h-adic reconstruction failed")
    return expansion


def approximate_root(f: Poly, r: int) -> Poly:
    """The unique monic h of degree n/r with deg(f - h^r) < n - deg h.

    Computed by matching the coefficients of f from degree n-1 downward;
    each step divides by r, which is legal exactly when r is invertible in
    the coefficient field.
    """
    if not f.is_monic():
        raise errors.NotMonic("approximate root needs a monic input")
    n = int(f.degree)
    if r < 1 or n % r != 0:
        raise errors.DegreeNotDivisible(f"{r} does not divide deg f = {n}")
    F = f.field
    char = F.characteristic()
    if char and r % char == 0:
        raise errors.WildRoot(f"{r} is not invertible in characteristic {char}")
    s = n // r
    r_inv = F.from_int(r).inverse()
    coeffs = [F.zero] * s + [F.one]
    for k in range(1, s + 1):
        h = Poly(F, coeffs)
        have = (h ** r).coeff(n - k)
        coeffs[s - k] = (f.coeff(n - k) - have) * r_inv
    h = Poly(F, coeffs)
    diff = f - h ** r
    if diff.degree >= n - s:
        raise errors.InvariantViolation("approximate root residual too large")
    return h


def decompose_poly(f: Poly, s: int) -> Optional[Tuple[Poly, Poly]]:
    """Solve f = g(h) with deg h = s for a tame polynomial f.

    The right component is normalized monic with h(0) = 0 (the unit freedom
    of the uniqueness theorem), which makes the result unique per degree.
    Returns None when no such decomposition exists.
    """
    if f.is_constant:
        raise errors.BadDegree("cannot decompose a constant")
    n = int(f.degree)
    char = f.field.characteristic()
    if char and n % char == 0:
        raise errors.WildInput(
            f"degree {n} is divisible by the characteristic {char}")
    if n % s != 0 or not 1 < s < n:
        raise errors.BadDegree(f"target degree {s} invalid for deg f = {n}")
    lead = f.lc()
    fm = f if f.is_monic() else f.scale(lead.inverse())
    h = approximate_root(fm, n // s)
    h0 = h.coeff(0)
    if not h0.is_zero():
        h = h - Poly.constant(h0)
    expansion = expand_in_h(fm, h)
    if not expansion.all_digits_constant():
        return None
    g = Poly(f.field, [d.constant_value() for d in expansion.digits])
    if lead != f.field.one:
        g = g.scale(lead)
    if g.compose(h) != f:
        raise errors.InvariantViolation("decomposition recomposition failed")
    return g, h


def _proper_divisors(n: int) -> List[int]:
    return [d for d in range(2, n) if n % d == 0]


def complete_decompositions(f: Poly) -> List[Decomposition]:
    """All complete decompositions of a tame f (every component
    indecomposable), found by recursing over divisor chains.

    The normalization of decompose_poly makes equivalent chains structurally
    identical, so deduplication is a plain key comparison.
    """
    if f.is_constant or f.degree == 1:
        raise errors.BadDegree("need degree at least 2")
    char = f.field.characteristic()
    if char and int(f.degree) % char == 0:
        raise errors.WildInput("wild polynomial")
    memo = {}

    def chains(p: Poly) -> List[Tuple[Poly, ...]]:
        key = p
        if key in memo:
            return memo[key]
        n = int(p.degree)
        found = []
        splits = []
        for s in _proper_divisors(n):
            pair = decompose_poly(p, s)
            if pair is not None:
                splits.append(pair)
        if not splits:
            found = [(p,)]
        else:
            for g, h in splits:
                if chains_indecomposable(h):
                    for left in chains(g):
                        found.append(left + (h,))
        memo[key] = found
        return found

    def chains_indecomposable(p: Poly) -> bool:
        if p.degree == 1:
            return False  # units are not components of complete decompositions
        return all(decompose_poly(p, s) is None
                   for s in _proper_divisors(int(p.degree)))

    seen = {}
    for chain in chains(f):
        seen.setdefault(chain, Decomposition(components=chain, original=f))
    out = list(seen.values())
    out.sort(key=lambda d: (d.degree_sequence(), [str(c) for c in d.components]))
    return out


BRUTE_FORCE_CAP = 10 ** 7


def decompose_poly_bruteforce(f: Poly, s: int) -> List[Tuple[Poly, Poly]]:
    """All (g, h) with g(h) = f over a small finite field, h normalized
    monic with h(0) = 0, by exhaustive enumeration of h.

    Works in any characteristic (the digit test is plain division), so this
    is the wild-case oracle.
    """
    F = f.field
    q = F.order()
    if q is None:
        raise errors.InfiniteField("brute-force search needs a finite field")
    if f.is_constant:
        raise errors.BadDegree("cannot decompose a constant")
    n = int(f.degree)
    if s < 1:
        raise errors.BadDegree("right degree must be positive")
    if q ** (s + n // max(s, 1)) > BRUTE_FORCE_CAP:
        raise errors.SearchSpaceTooLarge(
            f"|K|^(s + n/s) = {q ** (s + n // s)} exceeds {BRUTE_FORCE_CAP}")
    if n % s != 0:
        return []
    elements = list(F.elements())
    pairs = []

    def enumerate_h(idx: int, coeffs: List[FieldElement]):
        if idx == s:
            h = Poly(F, [F.zero] + coeffs + [F.one])
            expansion = expand_in_h(f, h)
            if expansion.all_digits_constant():
                g = Poly(F, [d.constant_value() for d in expansion.digits])
                if g.compose(h) == f:
                    pairs.append((g, h))
            return
        for c in elements:
            enumerate_h(idx + 1, coeffs + [c])

    enumerate_h(1, [])
    return pairs


# ---------------------------------------------------------------------------
# left division and membership
# ---------------------------------------------------------------------------

def _nullspace(rows: List[List[FieldElement]], ncols: int):
    """Basis of the nullspace of the matrix, by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows)
                      if not m[r][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [v * inv for v in m[rank]]
        for r in range(nrows):
            if r != rank and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    field = rows[0][0].field
    for fc in free_cols:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def left_divide(f: Component, h: Component) -> Optional[RatFunc]:
    """The unique g with g(h) = f, or None.

    Solves the homogeneous linear system obtained from
    f_N * homog(g_D) - f_D * homog(g_N) = 0 in the 2r + 2 unknown
    coefficients of g, then verifies by exact composition; the verification,
    not the linear algebra, is the correctness gate.
    """
    f = _as_ratfunc(f)
    h = _as_ratfunc(h)
    f._check_same(h)
    if h.is_constant:
        raise errors.ConstantRightComponent("right component must be nonconstant")
    if f.is_constant:
        return f
    if f.degree % h.degree != 0:
        return None
    r = f.degree // h.degree
    F = f.field
    powers = []
    hn_pow = [Poly.one(F)]
    hd_pow = [Poly.one(F)]
    for _ in range(r):
        hn_pow.append(hn_pow[-1] * h.num)
        hd_pow.append(hd_pow[-1] * h.den)
    for i in range(r + 1):
        powers.append(hn_pow[i] * hd_pow[r - i])
    # column polynomials: -f_D * P_i for the g_N unknowns, f_N * P_i for g_D
    cols = [(-f.den) * P for P in powers] + [f.num * P for P in powers]
    height = 1 + max(int(c.degree) for c in cols if not c.is_zero)
    rows = [[c.coeff(k) for c in cols] for k in range(height)]
    for vec in _nullspace(rows, 2 * (r + 1)):
        gn = Poly(F, vec[:r + 1])
        gd = Poly(F, vec[r + 1:])
        if gn.is_zero or gd.is_zero:
            continue
        g = RatFunc(gn, gd)
        if compose(g, h) == f:
            return g
    return None


def is_member(g: Component, h: Component) -> bool:
    """Whether g lies in the subfield K(h); decided by left division."""
    g = _as_ratfunc(g)
    h = _as_ratfunc(h)
    if h.is_constant:
        raise errors.ConstantRightComponent("membership test needs nonconstant h")
    if g.is_constant:
        return True
    if g.degree % h.degree != 0:
        return False
    return left_divide(g, h) is not None


def equivalent_decompositions(d1: Tuple[Component, Component],
                              d2: Tuple[Component, Component]
                              ) -> Optional[Mobius]:
    """The unit u with h1 = u(h2) and g1 = g2(u^{-1}), or None.

    Both pairs must compose to the same function; both defining identities
    are re-verified before the witness is returned.
    """
    g1, h1 = (_as_ratfunc(c) for c in d1)
    g2, h2 = (_as_ratfunc(c) for c in d2)
    f1 = compose(g1, h1)
    f2 = compose(g2, h2)
    if f1 != f2:
        raise errors.DifferentComposites(
            "decomposition pairs compose to different functions")
    if h1.degree != h2.degree:
        return None
    u_rf = left_divide(h1, h2)
    if u_rf is None or u_rf.degree != 1:
        return None
    u = Mobius.from_ratfunc(u_rf)
    if compose(u.as_ratfunc(), h2) != h1:
        raise errors.InvariantViolation("witness failed h1 = u(h2)")
    if compose(g2, u.inverse().as_ratfunc()) != g1:
        raise errors.InvariantViolation("witness failed g1 = g2(u^-1)")
    return u


def polynomialize(g: RatFunc, h: RatFunc) -> Optional[Tuple[Poly, Poly]]:
    """Turn a decomposition of a polynomial into a polynomial decomposition.

    When f = g(h) is a polynomial there is a unit u with g(u) and u^{-1}(h)
    both polynomial: the value t = h(inf) is attained only at infinity, so
    u = (t*x + 1)/x works, and h_N - t*h_D collapses to a constant.
    """
    g = _as_ratfunc(g)
    h = _as_ratfunc(h)
    f = compose(g, h)
    if not f.is_polynomial:
        raise errors.NotPolynomialComposite(
            "the composition g(h) is not a polynomial")
    if h.is_polynomial:
        # g is forced polynomial too: a nonconstant g_D would survive reduction
        return g.to_poly(), h.to_poly()
    F = g.field
    t = eval_proj(h, INF)
    if isinstance(t, Infinity):
        return None
    c = h.num - h.den.scale(t)
    if c.degree > 0:
        return None
    u = Mobius(t, F.one, F.one, F.zero)  # u(x) = t + 1/x, u^{-1}(y) = 1/(y - t)
    P = h.den.scale(c.constant_value().inverse())
    G_rf = compose(g, u.as_ratfunc())
    if not G_rf.is_polynomial:
        raise errors.InvariantViolation("g(u) failed to be polynomial")
    G = G_rf.to_poly()
    if G.compose(P) != f.to_poly():
        raise errors.InvariantViolation("polynomialized pair does not recompose")
    return G, P
