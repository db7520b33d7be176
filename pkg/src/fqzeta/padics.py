"""Fixed-precision arithmetic in Z_p, Q_p and the unramified extension Z_q.

The unramified extension W(F_{p^a}) is represented as Z_p[x]/(m(x)) where m is
the lexicographically smallest monic irreducible polynomial of degree a over
F_p (coefficients compared low degree first), lifted with digits {0..p-1}.
The Frobenius lift sigma is computed once per context by Hensel-lifting the
root x -> x^p and stored as an a-by-a matrix over Z/p^prec.

Elements carry a valuation, a primitive coefficient vector for the unit part,
and a relative precision.  Exact zero (infinite valuation) is distinct from
"indistinguishable from zero at this precision" (IFZ), which remembers only an
absolute precision bound.  Arithmetic never reports more precision than the
inputs justify: addition works at the minimum absolute precision, products at
the minimum relative precision.

Everything here is immutable after construction; contexts are shared freely.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecisionExhausted, ValidationError

DEFAULT_PRECISION = 64
GUARD_DIGITS = 8


def int_valuation(n: int, p: int) -> int:
    """v_p of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(x, p: int) -> int:
    """v_p of a nonzero int or Fraction."""
    if isinstance(x, int):
        return int_valuation(x, p)
    x = Fraction(x)
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (dense int lists, low degree first)


def _fp_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _fp_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _fp_trim(out)


def _fp_mod(f, m, p):
    # m monic
    f = list(f)
    dm = len(m) - 1
    while len(f) > dm:
        c = f[-1] % p
        if c:
            shift = len(f) - 1 - dm
            for i in range(dm + 1):
                f[shift + i] = (f[shift + i] - c * m[i]) % p
        f.pop()
    return _fp_trim(f)


def _fp_powmod(f, e, m, p):
    result = [1]
    base = _fp_mod(list(f), m, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _fp_gcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        # f mod g with g not necessarily monic
        inv = pow(g[-1], -1, p)
        gm = [(c * inv) % p for c in g]
        f = _fp_mod(f, gm, p)
        f, g = g, f
    return f


def _is_irreducible(m, p):
    """Irreducibility of monic m over F_p, degree >= 1."""
    a = len(m) - 1
    if a == 1:
        return True
    x = [0, 1]
    # x^(p^a) == x mod m
    t = x
    for _ in range(a):
        t = _fp_powmod(t, p, m, p)
    if _fp_trim([(u - v) % p for u, v in
                 zip(t + [0] * len(x), x + [0] * len(t))]):
        return False
    # no factor of degree a/l for prime l | a
    for ell in {d for d in range(2, a + 1) if a % d == 0 and _is_prime(d)}:
        t = x
        for _ in range(a // ell):
            t = _fp_powmod(t, p, m, p)
        diff = _fp_trim([(u - v) % p for u, v in
                         zip(t + [0] * len(x), x + [0] * len(t))])
        if not _fp_gcd(diff, m, p):
            continue
        g = _fp_gcd(diff, m, p)
        if len(g) - 1 >= 1:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def minimal_polynomial(p: int, a: int):
    """Lexicographically smallest monic irreducible of degree a over F_p.

    Coefficient tuples (c_0, ..., c_{a-1}) are compared left to right; the
    returned list is [c_0, ..., c_{a-1}, 1].  Deterministic, so contexts built
    anywhere agree on the model of F_{p^a} and W(F_{p^a}).
    """
    if a == 1:
        return [0, 1]  # x itself: Z_q = Z_p, residue field F_p
    for code in range(p ** a):
        coeffs = []
        c = code
        for _ in range(a):
            coeffs.append(c % p)
            c //= p
        m = coeffs + [1]
        if m[0] != 0 and _is_irreducible(m, p):
            return m
    raise ValueError(f"no irreducible polynomial of degree {a} over F_{p}")


# ---------------------------------------------------------------------------
# finite fields F_{p^k}: elements are coefficient tuples over F_p


class FiniteField:
    """F_{p^k} as F_p[x]/(m(x)), m the canonical minimal polynomial.

    Raw elements are int tuples of length k (low degree first).  The `ops`
    counter tallies field multiplications/inversions so point-counting loops
    can respect an operation budget.
    """

    def __init__(self, p: int, k: int):
        if p < 2 or not _is_prime(p):
            raise ValidationError(f"characteristic must be prime, got {p}")
        if k < 1:
            raise ValidationError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = tuple(minimal_polynomial(p, k))
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self.ops = 0

    def element(self, coeffs):
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.k:
            coeffs = tuple((list(coeffs) + [0] * self.k)[: self.k])
        return FFElement(self, coeffs)

    def from_int(self, n):
        return self.element((n % self.p,) + (0,) * (self.k - 1))

    def elements(self):
        """Iterate over all p^k raw tuples, lexicographic in the digits."""
        p, k = self.p, self.k
        cur = [0] * k
        for _ in range(self.order):
            yield tuple(cur)
            i = 0
            while i < k:
                cur[i] += 1
                if cur[i] < p:
                    break
                cur[i] = 0
                i += 1

    # raw tuple arithmetic -------------------------------------------------

    def add(self, u, v):
        return tuple((a + b) % self.p for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple((a - b) % self.p for a, b in zip(u, v))

    def neg(self, u):
        return tuple((-a) % self.p for a in u)

    def mul(self, u, v):
        self.ops += 1
        prod = _fp_mod(_fp_mul(list(u), list(v), self.p),
                       list(self.modulus), self.p)
        return tuple(prod + [0] * (self.k - len(prod)))

    def square(self, u):
        return self.mul(u, u)

    def pow(self, u, e):
        if e < 0:
            return self.pow(self.inv(u), -e)
        result, base = self.one, u
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, u):
        if u == self.zero:
            raise ZeroDivisionError("inverse of 0 in finite field")
        self.ops += 1
        return self.pow(u, self.order - 2)

    def is_zero(self, u):
        return all(c == 0 for c in u)

    def charge(self, n=1):
        """Bill n operations to the budget counter without doing arithmetic.

        Enumeration loops that only visit elements (no products) use this so
        an operation budget still bounds their work.
        """
        self.ops += n


class FFElement:
    """Wrapper giving finite-field tuples operator syntax."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        return FFElement(self.field, self.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return FFElement(self.field, self.field.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return FFElement(self.field, self.field.neg(self.coeffs))

    def __mul__(self, other):
        return FFElement(self.field, self.field.mul(self.coeffs, other.coeffs))

    def __pow__(self, e):
        return FFElement(self.field, self.field.pow(self.coeffs, e))

    def inverse(self):
        return FFElement(self.field, self.field.inv(self.coeffs))

    def is_zero(self):
        return self.field.is_zero(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FFElement)
                and self.field.p == other.field.p
                and self.field.k == other.field.k
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __repr__(self):
        return f"FF({self.field.p}^{self.field.k}; {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# Z_q = W(F_{p^a}) at fixed precision


class QqContext:
    """Shared data for Z_q arithmetic: modulus, sigma matrix, precision policy.

    `prec` is the working relative precision in p-adic digits; `guard` the
    number of digits that must remain when a downstream computation certifies
    a valuation or a zero.
    """

    def __init__(self, p: int, a: int = 1, prec: int = DEFAULT_PRECISION,
                 guard: int = GUARD_DIGITS):
        if not _is_prime(p):
            raise ValidationError(f"p must be prime, got {p}")
        if a < 1:
            raise ValidationError("extension degree a must be >= 1")
        if prec < 1:
            raise ValidationError("precision must be >= 1")
        self.p = p
        self.a = a
        self.q = p ** a
        self.prec = prec
        self.guard = guard
        self.pN = p ** prec
        self.modulus = minimal_polynomial(p, a)  # int coeffs, monic
        self.residue_field = FiniteField(p, a)
        self._sigma_cols = self._build_sigma() if a > 1 else None

    # -- construction of sigma ---------------------------------------------

    def _zq_mul_ints(self, u, v, modcap):
        """Multiply coefficient vectors mod (m(x), modcap)."""
        a = self.a
        out = [0] * (2 * a - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    out[i + j] = (out[i + j] + x * y) % modcap
        # reduce by monic m(x): x^a = -(m_0 + ... + m_{a-1} x^{a-1})
        for d in range(2 * a - 2, a - 1, -1):
            c = out[d]
            if c:
                for i in range(a):
                    out[d - a + i] = (out[d - a + i] - c * self.modulus[i]) % modcap
                out[d] = 0
        return out[:a]

    def _zq_pow_ints(self, u, e, modcap):
        result = [1] + [0] * (self.a - 1)
        base = list(u)
        while e:
            if e & 1:
                result = self._zq_mul_ints(result, base, modcap)
            base = self._zq_mul_ints(base, base, modcap)
            e >>= 1
        return result

    def _zq_inv_ints(self, u, modcap_digits):
        """Inverse of a unit vector mod (m(x), p^modcap_digits), by lifting."""
        p = self.p
        # inverse in the residue field
        red = tuple(c % p for c in u)
        inv0 = self.residue_field.inv(red)
        inv = list(inv0)
        digits = 1
        while digits < modcap_digits:
            digits = min(2 * digits, modcap_digits)
            cap = p ** digits
            prod = self._zq_mul_ints(u, inv, cap)
            # inv <- inv * (2 - u*inv)
            corr = [(-c) % cap for c in prod]
            corr[0] = (corr[0] + 2) % cap
            inv = self._zq_mul_ints(inv, corr, cap)
        return inv

    def _build_sigma(self):
        """Hensel-lift the root x -> x^p of m; columns are sigma(x^i)."""
        p, a, N = self.p, self.a, self.prec
        # start: s = x^p mod (m, p)
        s = self._zq_pow_ints([0, 1], p, p)
        digits = 1
        mcoeffs = self.modulus  # length a+1, monic
        while digits < N:
            digits = min(2 * digits, N)
            cap = p ** digits
            # Newton step s <- s - m(s)/m'(s)
            ms = self._poly_eval_vec(mcoeffs, s, cap)
            dm = [(i * mcoeffs[i]) % cap for i in range(1, a + 1)]
            dms = self._poly_eval_vec(dm, s, cap)
            dms_inv = self._zq_inv_ints(dms, digits)
            delta = self._zq_mul_ints(ms, dms_inv, cap)
            s = [(x - d) % cap for x, d in zip(s, delta)]
        cap = self.pN
        # column i of sigma is sigma(x^i) = s^i
        cols = []
        power = [1] + [0] * (a - 1)
        for _ in range(a):
            cols.append(tuple(power))
            power = self._zq_mul_ints(power, s, cap)
        return tuple(cols)

    def _poly_eval_vec(self, coeffs, vec, cap):
        """Evaluate an integer polynomial at a Z_q vector, mod (m, cap)."""
        acc = [0] * self.a
        for c in reversed(coeffs):
            acc = self._zq_mul_ints(acc, vec, cap)
            acc[0] = (acc[0] + c) % cap
        return acc

    def _apply_sigma_ints(self, coeffs, cap):
        if self.a == 1:
            return [coeffs[0] % cap]
        out = [0] * self.a
        for i, c in enumerate(coeffs):
            if c:
                col = self._sigma_cols[i]
                for j in range(self.a):
                    out[j] = (out[j] + c * col[j]) % cap
        return out

    # -- element constructors ------------------------------------------------

    def zero(self):
        return QqElement(self, "z", 0, (), 0, 0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int, rel: int | None = None):
        rel = self.prec if rel is None else rel
        if n == 0:
            return self.zero()
        v = int_valuation(n, self.p)
        unit = (n // self.p ** v) % self.p ** rel
        return QqElement(self, "n", v, (unit,) + (0,) * (self.a - 1), rel, 0)

    def from_fraction(self, x, rel: int | None = None):
        x = Fraction(x)
        if x == 0:
            return self.zero()
        rel = self.prec if rel is None else rel
        vn = int_valuation(x.numerator, self.p) if x.numerator else 0
        vd = int_valuation(x.denominator, self.p)
        num = x.numerator // self.p ** vn
        den = x.denominator // self.p ** vd
        cap = self.p ** rel
        unit = (num * pow(den, -1, cap)) % cap
        return QqElement(self, "n", vn - vd,
                         (unit,) + (0,) * (self.a - 1), rel, 0)

    def from_vector(self, coeffs, val: int = 0, rel: int | None = None):
        """Element p^val * (c_0 + c_1 x + ...) from integer coefficients."""
        rel = self.prec if rel is None else rel
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) != self.a:
            raise ValidationError(
                f"expected {self.a} coefficients, got {len(coeffs)}")
        if all(c == 0 for c in coeffs):
            return self.zero()
        w = min(int_valuation(c, self.p) for c in coeffs if c != 0)
        cap = self.p ** rel
        unit = tuple((c // self.p ** w) % cap for c in coeffs)
        return QqElement(self, "n", val + w, unit, rel, 0)

    def ifz(self, absprec: int):
        return QqElement(self, "i", 0, (), 0, absprec)

    def teichmuller(self, omega):
        """The unique root of X^q = X lifting omega in F_q (or F_p).

        Multiplicative: teichmuller(uv) = teichmuller(u) teichmuller(v).
        """
        if isinstance(omega, FFElement):
            fld = omega.field
            if fld.p != self.p:
                raise ValidationError("characteristic mismatch")
            if fld.k == self.a:
                coeffs = list(omega.coeffs)
            elif fld.k == 1:
                coeffs = [omega.coeffs[0]] + [0] * (self.a - 1)
            else:
                raise ValidationError(
                    "teichmuller input must lie in the prime field or in F_q")
        else:
            coeffs = [int(omega) % self.p] + [0] * (self.a - 1)
        if all(c == 0 for c in coeffs):
            return self.zero()
        cap = self.pN
        x = coeffs
        for _ in range(self.prec + 1):
            x = self._zq_pow_ints(x, self.q, cap)
        return self.from_vector(x, 0, self.prec)

    # -- policy ---------------------------------------------------------------

    def certify(self, x: "QqElement", what: str = "valuation"):
        """Require enough guard digits to certify data about x.

        Normal elements need `guard` relative digits; an IFZ element can only
        be certified as zero, and only when its absolute precision retains
        `guard` digits beyond the context's working valuation scale.
        """
        if x.kind == "z":
            return
        if x.kind == "i":
            raise PrecisionExhausted(
                f"cannot certify {what}: element is indistinguishable from "
                f"zero below p^{x.abs}")
        if x.rel < self.guard:
            raise PrecisionExhausted(
                f"cannot certify {what}: {x.rel} relative digits remain, "
                f"guard requires {self.guard}")


class QqElement:
    """Immutable element of Z_q/Q_q at finite precision.

    kind "n": value p^val * (unit polynomial), unit primitive mod p, known to
    `rel` relative digits.  kind "z": exact zero.  kind "i": indistinguishable
    from zero; only the absolute bound `abs` is known.
    """

    __slots__ = ("ctx", "kind", "val", "coeffs", "rel", "abs")

    def __init__(self, ctx, kind, val, coeffs, rel, absprec):
        self.ctx = ctx
        self.kind = kind
        self.val = val
        self.coeffs = coeffs
        self.rel = rel
        self.abs = absprec

    # -- predicates --

    def is_exact_zero(self):
        return self.kind == "z"

    def is_ifz(self):
        return self.kind == "i"

    def is_zeroish(self):
        return self.kind in ("z", "i")

    def valuation(self):
        if self.kind == "n":
            return self.val
        if self.kind == "z":
            return None  # +infinity
        raise PrecisionExhausted(
            f"valuation unknown: element is zero to absolute precision {self.abs}")

    def abs_prec(self):
        if self.kind == "n":
            return self.val + self.rel
        if self.kind == "i":
            return self.abs
        return None  # exact zero: infinite

    # -- arithmetic --

    def _check(self, other):
        if self.ctx is not other.ctx and (
                self.ctx.p != other.ctx.p or self.ctx.a != other.ctx.a):
            raise ValidationError("mixed p-adic contexts")

    def __add__(self, other):
        self._check(other)
        ctx = self.ctx
        if self.kind == "z":
            return other
        if other.kind == "z":
            return self
        ap_s, ap_o = self.abs_prec(), other.abs_prec()
        absp = min(ap_s, ap_o)
        if self.kind == "i" and other.kind == "i":
            return ctx.ifz(absp)
        if self.kind == "i" or other.kind == "i":
            x = self if self.kind == "n" else other
            if x.val >= absp:
                return ctx.ifz(absp)
            rel = absp - x.val
            cap = ctx.p ** rel
            return QqElement(ctx, "n", x.val,
                             tuple(c % cap for c in x.coeffs), rel, 0)
        v = min(self.val, other.val)
        k = absp - v
        if k <= 0:
            return ctx.ifz(absp)
        cap = ctx.p ** k
        ps, po = ctx.p ** (self.val - v), ctx.p ** (other.val - v)
        summed = [(cs * ps + co * po) % cap
                  for cs, co in zip(self.coeffs, other.coeffs)]
        if all(c == 0 for c in summed):
            return ctx.ifz(absp)
        w = min(int_valuation(c, ctx.p) for c in summed if c != 0)
        if w >= k:
            return ctx.ifz(absp)
        rel = k - w
        cap2 = ctx.p ** rel
        unit = tuple((c // ctx.p ** w) % cap2 for c in summed)
        return QqElement(ctx, "n", v + w, unit, rel, 0)

    def __neg__(self):
        if self.kind != "n":
            return self
        cap = self.ctx.p ** self.rel
        return QqElement(self.ctx, "n", self.val,
                         tuple((-c) % cap for c in self.coeffs), self.rel, 0)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        if self.kind == "z" or other.kind == "z":
            return ctx.zero()
        if self.kind == "i" or other.kind == "i":
            # v(xy) >= abs(x) + "val or abs"(y)
            lo_s = self.val if self.kind == "n" else self.abs
            lo_o = other.val if other.kind == "n" else other.abs
            return ctx.ifz(lo_s + lo_o)
        rel = min(self.rel, other.rel)
        cap = ctx.p ** rel
        prod = ctx._zq_mul_ints(
            [c % cap for c in self.coeffs],
            [c % cap for c in other.coeffs], cap)
        # product of units is a unit: F_q is a domain, no renormalization
        return QqElement(ctx, "n", self.val + other.val, tuple(prod), rel, 0)

    def inverse(self):
        ctx = self.ctx
        if self.kind == "z":
            raise ZeroDivisionError("inverse of exact zero")
        if self.kind == "i":
            raise PrecisionExhausted(
                "cannot invert an element indistinguishable from zero")
        inv = ctx._zq_inv_ints(list(self.coeffs), self.rel)
        cap = ctx.p ** self.rel
        return QqElement(ctx, "n", -self.val,
                         tuple(c % cap for c in inv), self.rel, 0)

    def __truediv__(self, other):
        return self * other.inverse()

    def frobenius(self):
        """sigma(x): the canonical lift of the p-power Frobenius."""
        if self.kind != "n":
            return self
        ctx = self.ctx
        if ctx.a == 1:
            return self
        cap = ctx.p ** self.rel
        out = ctx._apply_sigma_ints([c % cap for c in self.coeffs], cap)
        # sigma is an isometry: the image of a unit vector is a unit vector
        return QqElement(ctx, "n", self.val, tuple(out), self.rel, 0)

    def frobenius_iter(self, k: int):
        x = self
        for _ in range(k % self.ctx.a):
            x = x.frobenius()
        return x

    def shift(self, k: int):
        """Multiply by p^k (exact)."""
        if self.kind == "n":
            return QqElement(self.ctx, "n", self.val + k, self.coeffs,
                             self.rel, 0)
        if self.kind == "i":
            return self.ctx.ifz(self.abs + k)
        return self

    def truncate(self, rel: int):
        """Forget digits beyond relative precision `rel`."""
        if self.kind != "n" or rel >= self.rel:
            return self
        if rel <= 0:
            return self.ctx.ifz(self.val)
        cap = self.ctx.p ** rel
        coeffs = tuple(c % cap for c in self.coeffs)
        if all(c == 0 for c in coeffs):
            return self.ctx.ifz(self.val + rel)
        return QqElement(self.ctx, "n", self.val, coeffs, rel, 0)

    def residue(self):
        """Image in the residue field F_q (requires val >= 0)."""
        ctx = self.ctx
        if self.is_zeroish():
            if self.kind == "i" and self.abs < 1:
                raise PrecisionExhausted("residue unknown at this precision")
            return ctx.residue_field.element((0,) * ctx.a)
        if self.val < 0:
            raise ValidationError("residue of a non-integral element")
        if self.val > 0:
            return ctx.residue_field.element((0,) * ctx.a)
        return ctx.residue_field.element(tuple(c % ctx.p for c in self.coeffs))

    def unit_int(self):
        """For a = 1: the unit part as an int mod p^rel."""
        if self.ctx.a != 1:
            raise ValidationError("unit_int is only defined over Z_p")
        if self.kind != "n":
            raise ValidationError("unit part of zero is undefined")
        return self.coeffs[0]

    def digits(self):
        """Little-endian base-p digits of the unit part (a = 1 only)."""
        u = self.unit_int()
        out = []
        for _ in range(self.rel):
            u, d = divmod(u, self.ctx.p)
            out.append(d)
        return out

    def to_fraction(self):
        """Exact rational value of the known digits (unit read as an integer)."""
        if self.kind == "z":
            return Fraction(0)
        if self.kind == "i":
            raise PrecisionExhausted("no canonical rational for an IFZ element")
        if self.ctx.a != 1:
            raise ValidationError("to_fraction is only defined over Z_p/Q_p")
        return Fraction(self.coeffs[0]) * Fraction(self.ctx.p) ** self.val

    # -- comparisons --

    def same_value(self, other, digits=None):
        """Agreement at the overlapping precision (never more than known)."""
        self._check(other)
        d = self - other
        if d.kind == "z":
            return True
        if d.kind == "i":
            return digits is None or d.abs >= digits
        return False

    def __eq__(self, other):
        if not isinstance(other, QqElement):
            return NotImplemented
        return (self.ctx.p == other.ctx.p and self.ctx.a == other.ctx.a
                and self.kind == other.kind and self.val == other.val
                and self.coeffs == other.coeffs and self.rel == other.rel
                and self.abs == other.abs)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.a, self.kind, self.val,
                     self.coeffs, self.rel, self.abs))

    def __repr__(self):
        if self.kind == "z":
            return f"Qq(0; p={self.ctx.p})"
        if self.kind == "i":
            return f"Qq(O(p^{self.abs}); p={self.ctx.p})"
        if self.ctx.a == 1:
            return (f"Qq({self.coeffs[0]}*{self.ctx.p}^{self.val} "
                    f"+ O(p^{self.val + self.rel}))")
        return (f"Qq({list(self.coeffs)}*{self.ctx.p}^{self.val} "
                f"+ O(p^{self.val + self.rel}); a={self.ctx.a})")


# The scalar type over Z_p/Q_p is just the a = 1 case of QqElement.
PadicElement = QqElement


def Zp(p: int, prec: int = DEFAULT_PRECISION, guard: int = GUARD_DIGITS):
    """Context for Z_p/Q_p (the a = 1 unramified extension)."""
    return QqContext(p, 1, prec, guard)


def val(x: QqElement):
    """v_p(x); PrecisionExhausted if x is indistinguishable from zero.

    For elements of Z_q this is the minimum valuation of the coordinates in
    the sigma-stable basis, which is the true valuation since q is unramified.
    Exact zero raises ValueError (infinite valuation).
    """
    v = x.valuation()
    if v is None:
        raise ValueError("exact zero has infinite valuation")
    return v


def frobenius(x: QqElement):
    """sigma(x), the canonical Frobenius lift; a ring homomorphism."""
    return x.frobenius()


def teichmuller(ctx: QqContext, omega):
    """Teichmuller lift into ctx; see QqContext.teichmuller."""
    return ctx.teichmuller(omega)
