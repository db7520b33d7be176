"""F-isocrystals over F_q: linearization, Newton slopes, slope splitting.

An isocrystal is a pair (Q_q^n, F) with F(v) = A sigma(v) for an invertible
matrix A.  Its linearization M = A sigma(A) ... sigma^{a-1}(A) is an honest
linear operator, and det(1 - tM) carries the Newton polygon.  Everything an
eigenvalue would be needed for is read off polynomials instead: polygons,
Hensel-split slope factors, deflated evaluations.  No root extraction, no
splitting fields.

The key fact used for slope subspaces: F commutes with M (A sigma(M) = M A,
since sigma^a fixes the entries), so kernels of sigma-invariant polynomials
in M are F-stable and carry restricted isocrystal structure.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (DegenerateCrystal, MultipleRootError, PrecisionExhausted,
                     ValidationError)
from .padics import rational_valuation
from .plinalg import (mat_augment, mat_copy, mat_identity, mat_inverse,
                      mat_mul, mat_sigma, right_kernel, smith_normal_form)
from .polys import deflate_once, rev_charpoly


class Isocrystal:
    """(Q_q^n, v -> A sigma(v)) at the precision of the context."""

    def __init__(self, ctx, matrix):
        n = len(matrix)
        if any(len(r) != n for r in matrix):
            raise ValidationError("Frobenius matrix must be square")
        self.ctx = ctx
        self.matrix = [list(r) for r in matrix]
        self.rank = n

    @classmethod
    def from_ints(cls, ctx, rows):
        return cls(ctx, [[ctx.from_int(x) if isinstance(x, int) else x
                          for x in row] for row in rows])

    def linearize(self):
        """M(F^a) = A sigma(A) ... sigma^{a-1}(A); equals A when a = 1."""
        M = self.matrix
        for k in range(1, self.ctx.a):
            M = mat_mul(M, mat_sigma(self.matrix, k))
        return mat_copy(M)

    def charpoly(self):
        """det(1 - t M(F^a)) with QqElement coefficients, constant term 1."""
        return rev_charpoly(self.linearize(), self.ctx.zero(), self.ctx.one())

    def slopes(self):
        return newton_slopes_qq(self.charpoly(), self.ctx)

    def validate(self):
        try:
            mat_inverse(self.matrix, self.ctx)
        except ValidationError as exc:
            raise DegenerateCrystal(str(exc)) from exc
        return True

    def apply(self, v):
        """F(v) = A sigma(v)."""
        sv = [x.frobenius() for x in v]
        out = []
        for row in self.matrix:
            acc = None
            for x, y in zip(row, sv):
                term = x * y
                acc = term if acc is None else acc + term
            out.append(acc)
        return out

    def slope_decompose(self):
        return slope_decompose(self)

    def semisimple_at(self, r):
        return semisimple_at(self, r)


# ---------------------------------------------------------------------------
# Newton polygons


def lower_hull(points):
    """Lower convex hull of (x, y) points with distinct increasing x."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _profile_from_points(points, zero_bounds, n, a):
    """Slope profile from certified (i, v_p) points.

    `zero_bounds` lists (i, bound) for coefficients known only to be O(p^b);
    the hull must stay below every bound, else the polygon is uncertified.
    """
    if not points or points[0][0] != 0:
        raise ValidationError("polynomial must have unit constant term")
    if points[-1][0] != n:
        raise DegenerateCrystal(
            "leading coefficient vanishes at this precision: "
            "Frobenius is not invertible")
    hull = lower_hull(points)
    for i, bound in zero_bounds:
        # value of the hull at abscissa i
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                y = Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (i - x1)
                if Fraction(bound) < y:
                    raise PrecisionExhausted(
                        f"coefficient {i} known only to O(p^{bound}) but the "
                        f"Newton polygon needs its valuation >= {y}")
                break
    profile = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y2 - y1, x2 - x1)
        profile.append((s / a, x2 - x1))
    return profile


def newton_slopes_qq(coeffs, ctx):
    """Slope profile [(ord_q slope, multiplicity)] of a QqElement polynomial.

    Polygon of (i, v_p(c_i)); slopes divided by a so they are in ord_q units.
    """
    n = len(coeffs) - 1
    points, zero_bounds = [], []
    for i, c in enumerate(coeffs):
        if c.is_exact_zero():
            continue
        if c.is_ifz():
            zero_bounds.append((i, c.abs))
            continue
        points.append((i, c.valuation()))
    return _profile_from_points(points, zero_bounds, n, ctx.a)


def newton_slopes_exact(coeffs, p, a):
    """Slope profile of an exact integer/Fraction polynomial."""
    n = len(coeffs) - 1
    while n > 0 and coeffs[n] == 0:
        n -= 1
    points = [(i, rational_valuation(coeffs[i], p))
              for i in range(n + 1) if coeffs[i] != 0]
    return _profile_from_points(points, [], n, a)


def profile_total(profile):
    """(rank, sum of slope*mult) for consistency checks."""
    rank = sum(m for _, m in profile)
    total = sum(Fraction(s) * m for s, m in profile)
    return rank, total


# ---------------------------------------------------------------------------
# polynomial helpers over QqElement (local to slope splitting)


def _qq_poly_trim(f):
    while f and f[-1].is_zeroish():
        f = f[:-1]
    return f


def _qq_poly_mul(f, g, ctx):
    if not f or not g:
        return []
    out = [ctx.zero()] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def _qq_poly_sub(f, g, ctx):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        x = f[i] if i < len(f) else ctx.zero()
        y = g[i] if i < len(g) else ctx.zero()
        out.append(x - y)
    return out


def _qq_poly_divmod(f, g, ctx):
    """f = q*g + r with deg r < deg g; g must have unit leading coefficient."""
    g = _qq_poly_trim(list(g))
    lead_inv = g[-1].inverse()
    r = list(f)
    q = [ctx.zero()] * max(0, len(r) - len(g) + 1)
    while len(_qq_poly_trim(r)) >= len(g):
        r = _qq_poly_trim(r)
        k = len(r) - len(g)
        c = r[-1] * lead_inv
        q[k] = q[k] + c
        for i in range(len(g)):
            r[k + i] = r[k + i] - c * g[i]
        r = r[:-1]
    return q, r


def _qq_poly_eval_matrix(coeffs, T, ctx):
    """Sum of c_k T^k by Horner."""
    n = len(T)
    acc = [[ctx.zero()] * n for _ in range(n)]
    for c in reversed(coeffs):
        acc = mat_mul(acc, T) if any(
            not x.is_zeroish() for row in acc for x in row) else acc
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def _mat_pow(T, e, ctx):
    n = len(T)
    out = mat_identity(ctx, n)
    base = mat_copy(T)
    while e:
        if e & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        e >>= 1
    return out


def _hensel_slope_factor(Q, k1, ctx):
    """Split Q (unit constant term, polygon min slope 0 with length k1) as
    G * H where G mod p is the degree-k1 unit-root part and H(0) = 1.

    Q mod p has degree exactly k1 here, so the co-factor starts at 1 and the
    lift is the textbook linear Hensel step against the fixed reduction of G.
    """
    prec = min(c.rel + max(c.val, 0) for c in Q if not c.is_zeroish())
    # fixed mod-p representative of the slope factor, lifted coefficients
    Gfix = []
    for c in Q[: k1 + 1]:
        if c.is_zeroish() or c.valuation() > 0:
            Gfix.append(ctx.zero())
        else:
            Gfix.append(ctx.from_vector([x % ctx.p for x in c.coeffs], 0))
    if Gfix[-1].is_zeroish():
        raise PrecisionExhausted("slope factor has non-unit leading term")
    G = list(Gfix)
    H = [ctx.one()]
    target = min(prec, ctx.prec)
    for k in range(1, target):
        err = _qq_poly_sub(Q, _qq_poly_mul(G, H, ctx), ctx)
        if all(x.is_zeroish() and (x.is_exact_zero() or x.abs >= target)
               for x in err):
            break
        if any((not x.is_zeroish()) and x.valuation() < k for x in err):
            raise PrecisionExhausted("slope splitting lost Hensel progress")
        eta = [x.shift(-k) for x in err]
        dH, dG = _qq_poly_divmod(eta, Gfix, ctx)
        G = _qq_poly_sub(G, [(-x.shift(k)) for x in dG], ctx)
        H = _qq_poly_sub(H, [(-x.shift(k)) for x in dH], ctx)
    # normalize G(0) = 1 and fold the unit into H
    c0 = G[0]
    ctx.certify(c0, "slope factor constant term")
    inv0 = c0.inverse()
    G = [x * inv0 for x in G]
    H = [x * c0 for x in H]
    return G, H


def slope_decompose(E):
    """[(slope, restricted isocrystal)] with slopes strictly increasing.

    Peels the minimal slope: after an m-th power and a p-power rescaling the
    minimal-slope part of the characteristic polynomial becomes the unit-root
    factor, which Hensel splits off; its reversal evaluated at the linearized
    Frobenius cuts out the slope subspace, which is F-stable because the
    factor's coefficients are sigma-invariant.  Recurses on the complement.
    """
    ctx = E.ctx
    profile = E.slopes()
    if len(profile) == 1:
        return [(profile[0][0], E)]
    lam, k1 = profile[0]
    n = E.rank
    s = Fraction(lam) * ctx.a          # v_p-slope on the linearization
    m0 = s.denominator
    T = _mat_pow(E.linearize(), m0, ctx)
    S0 = int(s * m0)                   # integer minimal slope of T
    Q = rev_charpoly(T, ctx.zero(), ctx.one())
    Qs = [c.shift(-S0 * i) for i, c in enumerate(Q)]   # unit-root rescale
    G, H = _hensel_slope_factor(Qs, k1, ctx)
    # undo the rescale: factors of det(1 - tT)
    GQ = [c.shift(S0 * i) for i, c in enumerate(G)]
    HQ = [c.shift(S0 * i) for i, c in enumerate(H)]
    # monic reversals cut out the slope subspace and its complement
    Ghat = list(reversed(GQ))
    Hhat = list(reversed(_qq_poly_trim(HQ)))
    GT = _mat_pow(_qq_poly_eval_matrix(Ghat, T, ctx), k1, ctx)
    HT = _mat_pow(_qq_poly_eval_matrix(Hhat, T, ctx), n - k1, ctx)
    BW = right_kernel(GT, ctx)
    BC = right_kernel(HT, ctx)
    if not BW or len(BW[0]) != k1 or len(BC[0]) != n - k1:
        raise PrecisionExhausted(
            "slope subspace dimensions could not be certified")
    P = mat_augment(BW, BC)
    C = mat_mul(mat_inverse(P, ctx), mat_mul(E.matrix, mat_sigma(P)))
    for i in range(n):
        for j in range(n):
            same_block = (i < k1) == (j < k1)
            if not same_block and not C[i][j].is_zeroish():
                if C[i][j].valuation() < ctx.guard:
                    raise PrecisionExhausted(
                        "slope splitting left a visible off-diagonal block")
    head = Isocrystal(ctx, [[C[i][j] for j in range(k1)] for i in range(k1)])
    tail = Isocrystal(ctx, [[C[i][j] for j in range(k1, n)]
                            for i in range(k1, n)])
    return [(lam, head)] + slope_decompose(tail)


# ---------------------------------------------------------------------------
# semisimplicity at q^r and eigenvalue products


def _kernel_rank(A, ctx):
    K = right_kernel(A, ctx)
    return len(K[0]) if K else 0


def semisimple_at(E, r):
    """Is (t - q^r)^2 coprime to the minimal polynomial of the linearization?

    Equivalent formulation used here: the q^r-eigenspace of M equals the
    generalized one, tested by comparing kernel ranks of (M - q^r) and its
    square.  Avoids computing the minimal polynomial at finite precision.
    """
    ctx = E.ctx
    M = E.linearize()
    c = ctx.from_int(ctx.q ** r) if r >= 0 else \
        ctx.from_int(1).shift(ctx.a * r)
    n = E.rank
    L = [[M[i][j] - (c if i == j else ctx.zero()) for j in range(n)]
         for i in range(n)]
    d1 = _kernel_rank(L, ctx)
    if d1 == 0:
        return True
    d2 = _kernel_rank(mat_mul(L, L), ctx)
    return d1 == d2


class EigenProduct:
    """Valuation data for the product over inverse roots distinct from q^r.

    m: multiplicity of q^r as an inverse root of P.
    value: the deflated polynomial evaluated at q^{-r} (exact Fraction).
    slope_sum: sum over ord_q-slopes < r of (r - slope) * multiplicity.
    """

    __slots__ = ("m", "value", "slope_sum")

    def __init__(self, m, value, slope_sum):
        self.m = m
        self.value = value
        self.slope_sum = slope_sum

    def __repr__(self):
        return (f"EigenProduct(m={self.m}, value={self.value}, "
                f"slope_sum={self.slope_sum})")


def eigenproduct_excluding(P, p, a, r, profile, crystal=None):
    """Product data for prod_{alpha != q^r} (1 - alpha/q^r) and the slope term.

    P is the exact zeta factor det(1 - t F^a) with Fraction/int coefficients;
    the first product is evaluated by deflating (1 - q^r t)^m out of P and
    evaluating at q^{-r}; the second is read off the Newton polygon.  When a
    crystal is supplied and q^r is a repeated inverse root, semisimplicity is
    verified and MultipleRootError raised if it fails.
    """
    q_r = Fraction(p) ** (a * r)
    cur = [Fraction(c) for c in P]
    while len(cur) > 1 and cur[-1] == 0:
        cur.pop()
    m = 0
    while True:
        quo, rem = deflate_once(cur, q_r)
        if rem != 0 or not quo:
            break
        m += 1
        cur = quo
    if m >= 2 and crystal is not None and not semisimple_at(crystal, r):
        raise MultipleRootError(
            f"q^{r} is a repeated root of the minimal polynomial")
    value = Fraction(0)
    x = 1 / q_r
    for c in reversed(cur):
        value = value * x + c
    if value == 0:
        raise ValidationError("deflation failed to remove all q^r roots")
    slope_sum = sum((Fraction(r) - s) * mult for s, mult in profile if s < r)
    return EigenProduct(m, value, slope_sum)


# ---------------------------------------------------------------------------
# purity pairing


class PurityResult:
    """Outcome of the weight-w pairing test on an integer zeta factor."""

    __slots__ = ("pairing_ok", "mixed")

    def __init__(self, pairing_ok, mixed):
        self.pairing_ok = pairing_ok
        self.mixed = mixed

    def __bool__(self):
        return self.pairing_ok

    def __repr__(self):
        return f"PurityResult(pairing_ok={self.pairing_ok}, mixed={self.mixed})"


def purity_check(P, w, q):
    """Necessary pairing condition for weight w: inverse roots stable under
    alpha -> q^w/alpha, as the coefficient identity c_j c_n = c_{n-j} q^{wj}.

    Also sets an advisory "mixed" flag when the archimedean absolute values
    of the inverse roots visibly deviate from q^{w/2} (floating point, never
    used in any identity).
    """
    coeffs = [Fraction(c) for c in P]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n == 0:
        return PurityResult(coeffs[0] == 1, False)
    c_n = coeffs[n]
    ok = all(coeffs[j] * c_n == coeffs[n - j] * Fraction(q) ** (w * j)
             for j in range(n + 1))
    mixed = False
    try:
        import numpy as np

        roots = np.roots([float(c) for c in reversed(coeffs)])
        target = float(q) ** (w / 2.0)
        mixed = any(abs(abs(1.0 / z) - target) > 1e-6 * max(1.0, target)
                    for z in roots if z != 0)
    except Exception:
        mixed = False
    return PurityResult(ok, mixed)
