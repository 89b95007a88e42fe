# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: exact rational linear algebra and sparse polynomials.

Twin of ``_kernels_py`` with identical signatures and bit-identical output.
Values stay arbitrary-precision Python ints; Cython removes the interpreter
overhead of the inner loops, which is where this package spends its time.
"""

from math import gcd

ZERO = (0, 1)
ONE = (1, 1)


def q_norm(n, d):
    if n == 0:
        return ZERO
    if d < 0:
        n, d = -n, -d
    g = gcd(n, d)
    if g > 1:
        return (n // g, d // g)
    return (n, d)


def q_add(a, b):
    an, ad = a
    bn, bd = b
    if an == 0:
        return b
    if bn == 0:
        return a
    g = gcd(ad, bd)
    if g == 1:
        n = an * bd + bn * ad
        d = ad * bd
        g2 = gcd(n, d)
        return (n // g2, d // g2) if n else ZERO
    ad_g = ad // g
    bd_g = bd // g
    n = an * bd_g + bn * ad_g
    if n == 0:
        return ZERO
    g2 = gcd(n, g)
    return (n // g2, ad_g * (bd // g2))


def q_mul(a, b):
    an, ad = a
    bn, bd = b
    if an == 0 or bn == 0:
        return ZERO
    g1 = gcd(an, bd)
    g2 = gcd(bn, ad)
    return ((an // g1) * (bn // g2), (ad // g2) * (bd // g1))


def q_neg(a):
    return (-a[0], a[1])


def q_inv(a):
    n, d = a
    if n == 0:
        raise ZeroDivisionError("rational inverse of zero")
    return (d, n) if n > 0 else (-d, -n)


def rref_rows(rows):
    cdef Py_ssize_t nr, nc, r, c, i, j, pr
    rows = [list(row) for row in rows]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if (<tuple>(rows[i][c]))[0] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != ONE:
            inv = q_inv(piv)
            rr = rows[r]
            for j in range(c, nc):
                if (<tuple>rr[j])[0] != 0:
                    rr[j] = q_mul(rr[j], inv)
        rr = rows[r]
        for i in range(nr):
            if i == r:
                continue
            f = rows[i][c]
            if (<tuple>f)[0] == 0:
                continue
            nf = (-f[0], f[1])
            ri = rows[i]
            for j in range(c, nc):
                if (<tuple>rr[j])[0] != 0:
                    ri[j] = q_add(ri[j], q_mul(nf, rr[j]))
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, r, pivots


def mat_mul(a, b):
    cdef Py_ssize_t nr, nc, inner, i, j, k
    nr = len(a)
    inner = len(b)
    nc = len(b[0]) if inner else 0
    out = []
    for i in range(nr):
        ai = a[i]
        row = []
        for j in range(nc):
            acc = ZERO
            for k in range(inner):
                x = ai[k]
                if (<tuple>x)[0] != 0:
                    y = b[k][j]
                    if (<tuple>y)[0] != 0:
                        acc = q_add(acc, q_mul(x, y))
            row.append(acc)
        out.append(row)
    return out


def poly_mul(ta, tb):
    cdef Py_ssize_t k, n
    if not ta or not tb:
        return {}
    out = {}
    items_b = list(tb.items())
    for ea, ca in ta.items():
        n = len(ea)
        for eb, cb in items_b:
            c = q_mul(ca, cb)
            e = tuple([(<tuple>ea)[k] + (<tuple>eb)[k] for k in range(n)])
            acc = out.get(e)
            if acc is None:
                out[e] = c
            else:
                s = q_add(acc, c)
                if (<tuple>s)[0] == 0:
                    del out[e]
                else:
                    out[e] = s
    return out


def poly_eval(terms, point):
    cdef Py_ssize_t nv, i
    cdef long ei
    if not terms:
        return ZERO
    nv = len(point)
    pows = [{0: ONE, 1: point[i]} for i in range(nv)]
    acc = ZERO
    for e, c in terms.items():
        v = c
        for i in range(nv):
            ei = (<tuple>e)[i]
            if ei:
                cache = pows[i]
                p = cache.get(ei)
                if p is None:
                    p = cache[1]
                    base = p
                    for _ in range(ei - 1):
                        p = q_mul(p, base)
                    cache[ei] = p
                v = q_mul(v, p)
                if (<tuple>v)[0] == 0:
                    break
        acc = q_add(acc, v)
    return acc
