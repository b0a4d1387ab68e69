"""Pure-Python fallback kernels for finite-field inner loops.

Elements of GF(p) are ints in [0, p); elements of GF(p^2) with modulus
t^2 + m1*t + m0 are encoded as c0 + c1*p.  The compiled Cython module
``_fqkernel`` implements the same functions; either backend must produce
identical results (cross-checked in the test suite).

These loops are the runtime hot spots: exhaustive root scans and the
PGL(2,q) fixing-group enumeration.
"""

BACKEND_NAME = "python"


def _ops(p, e, m0, m1):
    """Return (add, sub, mul, inv) closures on encoded elements."""
    if e == 1:
        def add(a, b):
            return (a + b) % p

        def sub(a, b):
            return (a - b) % p

        def mul(a, b):
            return a * b % p

        def inv(a):
            return pow(a, -1, p)

        return add, sub, mul, inv

    def add(a, b):
        return (a % p + b % p) % p + ((a // p + b // p) % p) * p

    def sub(a, b):
        return (a % p - b % p) % p + ((a // p - b // p) % p) * p

    def mul(a, b):
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        t2 = a1 * b1 % p
        c0 = (a0 * b0 - m0 * t2) % p
        c1 = (a0 * b1 + a1 * b0 - m1 * t2) % p
        return c0 + c1 * p

    def inv(a):
        a0, a1 = a % p, a // p
        norm = (a0 * a0 - m1 * a0 * a1 + m0 * a1 * a1) % p
        ninv = pow(norm, -1, p)
        c0 = (a0 - m1 * a1) * ninv % p
        c1 = -a1 * ninv % p
        return c0 + c1 * p

    return add, sub, mul, inv


def poly_eval(p, e, m0, m1, cs, x):
    """Horner evaluation of an encoded coefficient list at x."""
    add, sub, mul, inv = _ops(p, e, m0, m1)
    acc = 0
    for c in reversed(cs):
        acc = add(mul(acc, x), c)
    return acc


def poly_mul(p, e, m0, m1, a, b):
    if not a or not b:
        return []
    add, sub, mul, inv = _ops(p, e, m0, m1)
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if av == 0:
            continue
        for j, bv in enumerate(b):
            if bv:
                out[i + j] = add(out[i + j], mul(av, bv))
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_roots(p, e, m0, m1, cs):
    """All field elements where the polynomial vanishes (exhaustive scan)."""
    add, sub, mul, inv = _ops(p, e, m0, m1)
    q = p if e == 1 else p * p
    rev = list(reversed(cs))
    roots = []
    for x in range(q):
        acc = 0
        for c in rev:
            acc = add(mul(acc, x), c)
        if acc == 0:
            roots.append(x)
    return roots


def mobius_compose(p, e, m0, m1, fn, fd, a, b, c, d):
    """Homogeneous composition with (a*x+b)/(c*x+d).

    Returns unreduced (N, D) with N = sum fn[i]*(ax+b)^i*(cx+d)^(n-i) and
    likewise for D, where n = max(deg fn, deg fd).
    """
    add, sub, mul, inv = _ops(p, e, m0, m1)
    n = max(len(fn), len(fd)) - 1

    def lin_mul(poly, u0, u1):
        # poly * (u1*x + u0)
        out = [0] * (len(poly) + 1)
        for i, cv in enumerate(poly):
            if cv:
                out[i] = add(out[i], mul(cv, u0))
                out[i + 1] = add(out[i + 1], mul(cv, u1))
        return out

    # powers of (c*x + d) up to n; the encoded one is 1 for both e = 1, 2
    cd_pows = [[1]]
    cur = [1]
    for _ in range(n):
        cur = lin_mul(cur, d, c)
        cd_pows.append(cur)

    def homog(coeffs):
        acc = [0]
        for i in range(n, -1, -1):
            acc = lin_mul(acc, b, a)
            cv = coeffs[i] if i < len(coeffs) else 0
            if cv:
                pw = cd_pows[n - i]
                if len(acc) < len(pw):
                    acc = acc + [0] * (len(pw) - len(acc))
                for j, w in enumerate(pw):
                    if w:
                        acc[j] = add(acc[j], mul(cv, w))
        while acc and acc[-1] == 0:
            acc.pop()
        return acc

    return homog(fn), homog(fd)


def pgl_fixing_scan(p, e, m0, m1, fn, fd):
    """All canonical (a,b,c,d) in PGL(2,q) with f((ax+b)/(cx+d)) = f.

    Candidates pass a pointwise value filter first (f maps u(t) and t to the
    same value for every t when u fixes f), then a full symbolic check by
    cross multiplication.
    """
    add, sub, mul, inv = _ops(p, e, m0, m1)
    q = p if e == 1 else p * p
    n = max(len(fn), len(fd)) - 1

    # value table over K and at infinity; None encodes the projective infinity
    table = []
    for t in range(q):
        nv = poly_eval(p, e, m0, m1, fn, t)
        dv = poly_eval(p, e, m0, m1, fd, t)
        table.append(None if dv == 0 else mul(nv, inv(dv)))
    dn, dd = len(fn) - 1, len(fd) - 1
    if dn > dd:
        f_inf = None
    elif dn < dd:
        f_inf = 0
    else:
        f_inf = mul(fn[-1], inv(fd[-1]))

    def f_at(t):
        return f_inf if t is None else table[t]

    test_pts = list(range(min(q, 4))) + [None]

    def u_at(a, b, c, d, t):
        if t is None:
            return None if c == 0 else mul(a, inv(c))
        den = add(mul(c, t), d)
        if den == 0:
            return None
        return mul(add(mul(a, t), b), inv(den))

    def full_check(a, b, c, d):
        N, D = mobius_compose(p, e, m0, m1, fn, fd, a, b, c, d)
        return (poly_mul(p, e, m0, m1, N, fd)
                == poly_mul(p, e, m0, m1, D, fn))

    found = []

    def consider(a, b, c, d):
        for t in test_pts:
            if f_at(u_at(a, b, c, d, t)) != f_at(t):
                return
        if full_check(a, b, c, d):
            found.append((a, b, c, d))

    one = 1
    for dv in range(q):            # c = 1 layer
        for av in range(q):
            ad = mul(av, dv)
            for bv in range(q):
                if bv != ad:       # det = a*d - b != 0
                    consider(av, bv, one, dv)
    for dv in range(1, q):         # c = 0 layer, a = 1
        for bv in range(q):
            consider(one, bv, 0, dv)
    return found
