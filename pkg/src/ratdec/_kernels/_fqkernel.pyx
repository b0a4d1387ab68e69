# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for finite-field inner loops.

Same API and semantics as _fqkernel_py; elements of GF(p) are ints in
[0, p), elements of GF(p^2) are encoded c0 + c1*p.  All encoded values and
intermediate products fit in int64 for p <= 65536, which callers guarantee.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND_NAME = "cython"


cdef long long egcd_inv(long long a, long long p):
    cdef long long old_r = a % p, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s
        old_s = s
        s = tmp
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s


cdef inline long long fq_add(long long a, long long b, long long p, int e):
    if e == 1:
        return (a + b) % p
    return (a % p + b % p) % p + ((a / p + b / p) % p) * p


cdef inline long long fq_mul(long long a, long long b, long long p, int e,
                             long long m0, long long m1):
    cdef long long a0, a1, b0, b1, t2, c0, c1
    if e == 1:
        return a * b % p
    a0 = a % p
    a1 = a / p
    b0 = b % p
    b1 = b / p
    t2 = a1 * b1 % p
    c0 = (a0 * b0 - m0 * t2) % p
    if c0 < 0:
        c0 += p
    c1 = (a0 * b1 + a1 * b0 - m1 * t2) % p
    if c1 < 0:
        c1 += p
    return c0 + c1 * p


cdef long long fq_inv(long long a, long long p, int e,
                      long long m0, long long m1):
    cdef long long a0, a1, norm, ninv, c0, c1
    if e == 1:
        return egcd_inv(a, p)
    a0 = a % p
    a1 = a / p
    norm = (a0 * a0 - m1 * a0 * a1 + m0 * a1 * a1) % p
    if norm < 0:
        norm += p
    ninv = egcd_inv(norm, p)
    c0 = (a0 - m1 * a1) % p
    if c0 < 0:
        c0 += p
    c0 = c0 * ninv % p
    c1 = (p - a1) % p * ninv % p
    return c0 + c1 * p


cdef long long* _to_arr(list xs, int* n) except NULL:
    cdef int m = len(xs)
    cdef long long* arr = <long long*> malloc((m if m > 0 else 1) * sizeof(long long))
    if arr == NULL:
        raise MemoryError()
    cdef int i
    for i in range(m):
        arr[i] = xs[i]
    n[0] = m
    return arr


cdef list _to_list(long long* arr, int n):
    cdef list out = []
    cdef int i
    for i in range(n):
        out.append(arr[i])
    return out


cdef void _copy(long long* dst, long long* src, int n):
    cdef int i
    for i in range(n):
        dst[i] = src[i]


def poly_eval(long long p, int e, long long m0, long long m1, list cs,
              long long x):
    cdef long long acc = 0
    cdef int i
    for i in range(len(cs) - 1, -1, -1):
        acc = fq_add(fq_mul(acc, x, p, e, m0, m1), <long long> cs[i], p, e)
    return acc


def poly_mul(long long p, int e, long long m0, long long m1, list a, list b):
    if not a or not b:
        return []
    cdef int na = 0, nb = 0, i, j
    cdef long long* aa = _to_arr(a, &na)
    cdef long long* bb = _to_arr(b, &nb)
    cdef int no = na + nb - 1
    cdef long long* out = <long long*> malloc(no * sizeof(long long))
    if out == NULL:
        free(aa)
        free(bb)
        raise MemoryError()
    memset(out, 0, no * sizeof(long long))
    for i in range(na):
        if aa[i] == 0:
            continue
        for j in range(nb):
            if bb[j] != 0:
                out[i + j] = fq_add(out[i + j],
                                    fq_mul(aa[i], bb[j], p, e, m0, m1), p, e)
    while no > 0 and out[no - 1] == 0:
        no -= 1
    result = _to_list(out, no)
    free(aa)
    free(bb)
    free(out)
    return result


def poly_roots(long long p, int e, long long m0, long long m1, list cs):
    cdef long long q = p if e == 1 else p * p
    cdef int n = 0, i
    cdef long long* arr = _to_arr(cs, &n)
    cdef long long x, acc
    cdef list roots = []
    for x in range(q):
        acc = 0
        for i in range(n - 1, -1, -1):
            acc = fq_add(fq_mul(acc, x, p, e, m0, m1), arr[i], p, e)
        if acc == 0:
            roots.append(x)
    free(arr)
    return roots


cdef void _lin_mul(long long* poly, int* plen, long long u0, long long u1,
                   long long p, int e, long long m0, long long m1):
    # poly <- poly * (u1*x + u0), in place; caller guarantees buffer room
    cdef int n = plen[0]
    cdef int i
    cdef long long hi, lo
    for i in range(n, -1, -1):
        hi = fq_mul(poly[i - 1], u1, p, e, m0, m1) if i > 0 else 0
        lo = fq_mul(poly[i], u0, p, e, m0, m1) if i < n else 0
        poly[i] = fq_add(hi, lo, p, e)
    plen[0] = n + 1


cdef void _build_cd_pows(long long* cd_pows, int stride, int n,
                         long long c, long long d,
                         long long p, int e, long long m0, long long m1):
    # row k holds (c*x + d)^k, ascending coefficients, length k + 1
    cdef int k, i, klen
    memset(cd_pows, 0, stride * stride * sizeof(long long))
    cd_pows[0] = 1
    klen = 1
    for k in range(1, n + 1):
        _copy(cd_pows + k * stride, cd_pows + (k - 1) * stride, klen)
        for i in range(klen, stride):
            cd_pows[k * stride + i] = 0
        _lin_mul(cd_pows + k * stride, &klen, d, c, p, e, m0, m1)


cdef int _homog(long long* out, long long* coeffs, int nc, int n,
                long long* cd_pows, int stride,
                long long a, long long b,
                long long p, int e, long long m0, long long m1):
    # out <- sum coeffs[i] * (a x + b)^i * (c x + d)^(n-i); returns length
    cdef int alen = 1, i, j, k
    cdef long long cv
    out[0] = 0
    for i in range(n, -1, -1):
        _lin_mul(out, &alen, b, a, p, e, m0, m1)
        cv = coeffs[i] if i < nc else 0
        if cv != 0:
            k = n - i
            for j in range(k + 1):
                out[j] = fq_add(out[j],
                                fq_mul(cv, cd_pows[k * stride + j],
                                       p, e, m0, m1), p, e)
    while alen > 0 and out[alen - 1] == 0:
        alen -= 1
    return alen


def mobius_compose(long long p, int e, long long m0, long long m1,
                   list fn, list fd,
                   long long a, long long b, long long c, long long d):
    cdef int nn = 0, nd = 0
    cdef long long* cfn = _to_arr(fn, &nn)
    cdef long long* cfd = _to_arr(fd, &nd)
    cdef int n = (nn if nn > nd else nd) - 1
    cdef int stride = n + 2
    cdef long long* cd_pows = <long long*> malloc(stride * stride * sizeof(long long))
    cdef long long* bufn = <long long*> malloc(stride * sizeof(long long))
    cdef long long* bufd = <long long*> malloc(stride * sizeof(long long))
    if cd_pows == NULL or bufn == NULL or bufd == NULL:
        raise MemoryError()
    _build_cd_pows(cd_pows, stride, n, c, d, p, e, m0, m1)
    cdef int ln = _homog(bufn, cfn, nn, n, cd_pows, stride, a, b, p, e, m0, m1)
    cdef int ld = _homog(bufd, cfd, nd, n, cd_pows, stride, a, b, p, e, m0, m1)
    N = _to_list(bufn, ln)
    D = _to_list(bufd, ld)
    free(cfn)
    free(cfd)
    free(cd_pows)
    free(bufn)
    free(bufd)
    return N, D


cdef int _full_check(long long* cfn, int nn, long long* cfd, int nd,
                     int n, int stride, long long* cd_pows,
                     long long* bufn, long long* bufd,
                     long long* cross1, long long* cross2,
                     long long a, long long b, long long c, long long d,
                     long long p, int e, long long m0, long long m1):
    cdef int i, j, ln, ld, len1, len2
    _build_cd_pows(cd_pows, stride, n, c, d, p, e, m0, m1)
    ln = _homog(bufn, cfn, nn, n, cd_pows, stride, a, b, p, e, m0, m1)
    ld = _homog(bufd, cfd, nd, n, cd_pows, stride, a, b, p, e, m0, m1)
    len1 = ln + nd - 1 if ln > 0 else 0
    len2 = ld + nn - 1 if ld > 0 else 0
    memset(cross1, 0, 2 * stride * sizeof(long long))
    memset(cross2, 0, 2 * stride * sizeof(long long))
    for i in range(ln):
        if bufn[i] != 0:
            for j in range(nd):
                if cfd[j] != 0:
                    cross1[i + j] = fq_add(cross1[i + j],
                                           fq_mul(bufn[i], cfd[j],
                                                  p, e, m0, m1), p, e)
    for i in range(ld):
        if bufd[i] != 0:
            for j in range(nn):
                if cfn[j] != 0:
                    cross2[i + j] = fq_add(cross2[i + j],
                                           fq_mul(bufd[i], cfn[j],
                                                  p, e, m0, m1), p, e)
    for i in range(len1 if len1 > len2 else len2):
        if cross1[i] != cross2[i]:
            return 0
    return 1


def pgl_fixing_scan(long long p, int e, long long m0, long long m1,
                    list fn, list fd):
    """All canonical (a,b,c,d) in PGL(2,q) with f((ax+b)/(cx+d)) = f.

    A pointwise value filter rejects almost all candidates before the full
    cross-multiplied symbolic check.
    """
    cdef long long q = p if e == 1 else p * p
    cdef int nn = 0, nd = 0
    cdef long long* cfn = _to_arr(fn, &nn)
    cdef long long* cfd = _to_arr(fd, &nd)
    cdef int n = (nn if nn > nd else nd) - 1
    cdef int stride = n + 2

    cdef long long* table = <long long*> malloc((q + 1) * sizeof(long long))
    cdef long long* cd_pows = <long long*> malloc(stride * stride * sizeof(long long))
    cdef long long* bufn = <long long*> malloc(stride * sizeof(long long))
    cdef long long* bufd = <long long*> malloc(stride * sizeof(long long))
    cdef long long* cross1 = <long long*> malloc(2 * stride * sizeof(long long))
    cdef long long* cross2 = <long long*> malloc(2 * stride * sizeof(long long))
    if (table == NULL or cd_pows == NULL or bufn == NULL or bufd == NULL
            or cross1 == NULL or cross2 == NULL):
        raise MemoryError()

    # value table over K plus infinity (slot q); -1 encodes infinity
    cdef long long t, nv, dv
    cdef int i, j
    for t in range(q):
        nv = 0
        for i in range(nn - 1, -1, -1):
            nv = fq_add(fq_mul(nv, t, p, e, m0, m1), cfn[i], p, e)
        dv = 0
        for i in range(nd - 1, -1, -1):
            dv = fq_add(fq_mul(dv, t, p, e, m0, m1), cfd[i], p, e)
        if dv == 0:
            table[t] = -1
        else:
            table[t] = fq_mul(nv, fq_inv(dv, p, e, m0, m1), p, e, m0, m1)
    if nn > nd:
        table[q] = -1
    elif nn < nd:
        table[q] = 0
    else:
        table[q] = fq_mul(cfn[nn - 1], fq_inv(cfd[nd - 1], p, e, m0, m1),
                          p, e, m0, m1)

    cdef int n_test = 4 if q > 4 else <int> q
    cdef list found = []
    cdef long long av, bv, dvv, ad, y, den, val_t, val_y
    cdef int ok

    # c = 1 layer: det = a*d - b != 0
    for dvv in range(q):
        for av in range(q):
            ad = fq_mul(av, dvv, p, e, m0, m1)
            for bv in range(q):
                if bv == ad:
                    continue
                ok = 1
                for j in range(n_test + 1):
                    t = j if j < n_test else -1
                    if t == -1:
                        y = av
                        val_t = table[q]
                    else:
                        den = fq_add(t, dvv, p, e)
                        if den == 0:
                            y = -1
                        else:
                            y = fq_mul(fq_add(fq_mul(av, t, p, e, m0, m1),
                                              bv, p, e),
                                       fq_inv(den, p, e, m0, m1),
                                       p, e, m0, m1)
                        val_t = table[t]
                    val_y = table[q] if y == -1 else table[y]
                    if val_y != val_t:
                        ok = 0
                        break
                if not ok:
                    continue
                if _full_check(cfn, nn, cfd, nd, n, stride, cd_pows,
                               bufn, bufd, cross1, cross2,
                               av, bv, 1, dvv, p, e, m0, m1):
                    found.append((av, bv, 1, dvv))

    # c = 0 layer, canonically a = 1: det = d != 0
    for dvv in range(1, q):
        for bv in range(q):
            ok = 1
            for j in range(n_test + 1):
                t = j if j < n_test else -1
                if t == -1:
                    y = -1
                    val_t = table[q]
                else:
                    y = fq_mul(fq_add(t, bv, p, e),
                               fq_inv(dvv, p, e, m0, m1), p, e, m0, m1)
                    val_t = table[t]
                val_y = table[q] if y == -1 else table[y]
                if val_y != val_t:
                    ok = 0
                    break
            if not ok:
                continue
            if _full_check(cfn, nn, cfd, nd, n, stride, cd_pows,
                           bufn, bufd, cross1, cross2,
                           1, bv, 0, dvv, p, e, m0, m1):
                found.append((1, bv, 0, dvv))

    free(cfn)
    free(cfd)
    free(table)
    free(cd_pows)
    free(bufn)
    free(bufd)
    free(cross1)
    free(cross2)
    return found
