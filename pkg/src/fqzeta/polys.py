"""Polynomial and small-matrix utilities shared across the library.

Polynomials are dense coefficient lists, constant term first.  Most callers
work over Fraction; the characteristic-polynomial routine is division-free
(Berkowitz) and generic, so the same code runs over fixed-precision p-adic
elements and over exact rationals.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def poly_trim(f, zero=Fraction(0)):
    f = list(f)
    while f and f[-1] == zero:
        f.pop()
    return f


def poly_add(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(a + b)
    return out


def poly_mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def poly_eval(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_pow(f, e):
    result = [Fraction(1)]
    base = list(f)
    while e:
        if e & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        e >>= 1
    return result


def poly_truncate(f, order):
    """f mod t^(order+1)."""
    return list(f[: order + 1])


def poly_mul_trunc(f, g, order):
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(f):
        if i > order or not a:
            continue
        for j, b in enumerate(g):
            if i + j > order:
                break
            out[i + j] += a * b
    return out


def poly_pow_trunc(f, e, order):
    result = [Fraction(1)]
    base = poly_truncate(f, order)
    while e:
        if e & 1:
            result = poly_mul_trunc(result, base, order)
        base = poly_mul_trunc(base, base, order)
        e >>= 1
    return result


def poly_inverse_series(f, order):
    """Inverse of f (constant term nonzero) as a power series mod t^(order+1)."""
    if not f or f[0] == 0:
        raise ValidationError("series inverse needs a unit constant term")
    c0 = Fraction(f[0])
    inv = [1 / c0]
    for n in range(1, order + 1):
        s = Fraction(0)
        for i in range(1, min(n, len(f) - 1) + 1):
            s += Fraction(f[i]) * inv[n - i]
        inv.append(-s / c0)
    return inv


def deflate_once(coeffs, c):
    """(quotient, remainder) of division by (1 - c t); exact iff remainder 0.

    Synthetic: b_i = a_i + c b_{i-1}; the remainder is the overflow b_n, and
    P(t) = (1 - c t) B(t) + b_n t^n.
    """
    b, prev = [], Fraction(0)
    for a in coeffs:
        prev = Fraction(a) + c * prev
        b.append(prev)
    return b[:-1], b[-1]


def root_multiplicity(coeffs, c):
    """Multiplicity of c as an inverse root (i.e. of (1 - c t) as a factor)."""
    cur = [Fraction(x) for x in coeffs]
    while len(cur) > 1 and cur[-1] == 0:
        cur.pop()
    m = 0
    while len(cur) > 1:
        quo, rem = deflate_once(cur, c)
        if rem != 0:
            break
        m += 1
        cur = quo
    return m, cur


# ---------------------------------------------------------------------------
# characteristic polynomials, division-free


def rev_charpoly(rows, zero, one):
    """Coefficients of det(1 - t*A), constant term first, via Berkowitz.

    `rows` is a list of n lists of ring elements supporting +, *, unary -.
    Division-free, so it runs unchanged over exact rationals and over
    fixed-precision p-adic elements.  Returns a list of length n + 1 whose
    j-th entry is the coefficient of t^j.
    """
    n = len(rows)
    if n == 0:
        return [one]
    for r in rows:
        if len(r) != n:
            raise ValidationError("characteristic polynomial needs a square matrix")
    poly = [one, -rows[0][0]]
    for i in range(1, n):
        a = rows[i][i]
        R = [rows[i][j] for j in range(i)]
        C = [rows[j][i] for j in range(i)]
        sub = [[rows[r][c] for c in range(i)] for r in range(i)]
        diags = [one, -a]
        vec = C
        for _ in range(i):
            dot = zero
            for rr, vv in zip(R, vec):
                dot = dot + rr * vv
            diags.append(-dot)
            nxt = []
            for r in range(i):
                acc = zero
                for c in range(i):
                    acc = acc + sub[r][c] * vec[c]
                nxt.append(acc)
            vec = nxt
        new = []
        for r in range(i + 2):
            acc = zero
            lo = max(0, r - len(diags) + 1)
            for c in range(lo, min(r, i) + 1):
                acc = acc + diags[r - c] * poly[c]
            new.append(acc)
        poly = new
    return poly


def rev_charpoly_fractions(rows):
    """det(1 - t*A) for a matrix of ints/Fractions."""
    rr = [[Fraction(x) for x in row] for row in rows]
    return rev_charpoly(rr, Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# companion matrices and tensor products of zeta factors


def companion_of_reversed(P):
    """A rational matrix C with det(1 - t*C) = P, for P with P(0) = 1.

    Works through the reversed (monic) polynomial x^n P(1/x); its companion
    matrix has the inverse roots of P as eigenvalues.  Degree-0 input gives
    the empty 0x0 matrix.
    """
    P = poly_trim([Fraction(c) for c in P])
    if not P or P[0] != 1:
        raise ValidationError("expected constant term 1")
    n = len(P) - 1
    if n == 0:
        return []
    # monic reversal: x^n + a_1 x^(n-1) + ... + a_n, a_k = P[k]
    # companion with characteristic polynomial = that reversal
    C = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = Fraction(1)
    for i in range(n):
        # last column: -coefficient of x^i in the monic reversal
        C[i][n - 1] = -Fraction(P[n - i])
    return C


def kron(A, B):
    """Kronecker product of dense rational matrices."""
    if not A or not B:
        return []
    ra, ca = len(A), len(A[0])
    rb, cb = len(B), len(B[0])
    out = [[Fraction(0)] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            a = A[i][j]
            if a == 0:
                continue
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = a * B[k][l]
    return out


def tensor_poly(P, Q):
    """det(1 - t*(C_P (x) C_Q)): inverse roots are all products alpha*beta.

    Both inputs must have constant term 1.  This is the Kunneth building
    block for products of varieties; no root extraction happens anywhere.
    """
    CP = companion_of_reversed(P)
    CQ = companion_of_reversed(Q)
    if not CP or not CQ:
        return [Fraction(1)]
    return rev_charpoly_fractions(kron(CP, CQ))


def mat_mul_fractions(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            a = A[i][t]
            if a == 0:
                continue
            for j in range(m):
                out[i][j] += a * B[t][j]
    return out


def block_diag(blocks):
    """Block-diagonal assembly of dense rational matrices."""
    size = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = Fraction(x)
        off += len(b)
    return out
