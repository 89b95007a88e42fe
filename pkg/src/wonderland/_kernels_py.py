"""Pure-Python kernels for exact rational linear algebra and sparse polynomials.

Every function here has a compiled twin in ``_kernels_cy.pyx`` with the same
signature and bit-identical output; ``wonderland.backend`` picks one at import
time.  Rationals are reduced ``(num, den)`` int pairs with ``den > 0``, which
avoids the per-operation overhead of ``fractions.Fraction`` in the inner loops.
"""

from math import gcd

ZERO = (0, 1)
ONE = (1, 1)


def q_norm(n, d):
    """Reduce n/d to canonical form (lowest terms, positive denominator)."""
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
    # gcd of denominators keeps the intermediate products small
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
    """Reduced row echelon form over the rationals, exact.

    ``rows`` is a list of rows of (num, den) pairs.  Returns
    ``(new_rows, rank, pivot_columns)``; pivots are 1 with zeros above and
    below.  Pivot choice is the first nonzero entry of each column, so the
    output is deterministic.
    """
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if rows[i][c][0] != 0:
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
                if rr[j][0] != 0:
                    rr[j] = q_mul(rr[j], inv)
        rr = rows[r]
        for i in range(nr):
            if i == r:
                continue
            f = rows[i][c]
            if f[0] == 0:
                continue
            nf = (-f[0], f[1])
            ri = rows[i]
            for j in range(c, nc):
                if rr[j][0] != 0:
                    ri[j] = q_add(ri[j], q_mul(nf, rr[j]))
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, r, pivots


def mat_mul(a, b):
    """Exact product of two pair-matrices (lists of rows of pairs)."""
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
                if x[0] != 0:
                    y = b[k][j]
                    if y[0] != 0:
                        acc = q_add(acc, q_mul(x, y))
            row.append(acc)
        out.append(row)
    return out


def poly_mul(ta, tb):
    """Product of sparse term maps ``{exponent tuple: (num, den)}``."""
    if not ta or not tb:
        return {}
    out = {}
    for ea, ca in ta.items():
        for eb, cb in tb.items():
            c = q_mul(ca, cb)
            e = tuple(x + y for x, y in zip(ea, eb))
            acc = out.get(e)
            if acc is None:
                out[e] = c
            else:
                s = q_add(acc, c)
                if s[0] == 0:
                    del out[e]
                else:
                    out[e] = s
    return out


def poly_eval(terms, point):
    """Evaluate a sparse term map at a rational point (tuple of pairs)."""
    if not terms:
        return ZERO
    nv = len(point)
    # cache powers per variable; exponents repeat heavily across terms
    pows = [{0: ONE, 1: point[i]} for i in range(nv)]
    acc = ZERO
    for e, c in terms.items():
        v = c
        for i in range(nv):
            ei = e[i]
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
                if v[0] == 0:
                    break
        acc = q_add(acc, v)
    return acc
