"""Finitely generated modules over Z_p or Z_l with a continuous action of
the profinite group generated by one Frobenius element gamma.

A module is a free part (gamma as an integral invertible matrix) plus cyclic
torsion components Z/p^e on which gamma acts by a unit.  The two cohomology
groups are the invariants M^Gamma = ker(1 - gamma) and the coinvariants
M_Gamma = coker(1 - gamma); the interesting invariant is

    z(f) = [Ker f] / [coker f]

for the map f: M^Gamma -> M_Gamma induced by the identity, defined exactly
when 1 is not a repeated root of the minimal polynomial of gamma.  Two
independent routes compute it: an explicit Smith-form chase through the
cokernel presentation, and a characteristic-polynomial route (deflate the
eigenvalue 1 and evaluate at t = 1).  They must agree; tests enforce it.
"""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction

from .errors import MultipleRootError, ValidationError
from .padics import Zp, rational_valuation
from .plinalg import mat_mul, right_kernel, smith_normal_form
from .polys import rev_charpoly_fractions

ModuleStructure = namedtuple("ModuleStructure", "free_rank torsion")
# torsion: sorted list of exponents e, one per cyclic component Z/p^e

TorsionComponent = namedtuple("TorsionComponent", "e unit")


class GammaModule:
    """Free part (rank n, integral invertible gamma) plus cyclic torsion."""

    def __init__(self, ring, prime, gamma, torsion=(), prec=64):
        if ring not in ("Zp", "Zl"):
            raise ValidationError("ring tag must be 'Zp' or 'Zl'")
        self.ring = ring
        self.prime = prime
        self.gamma = [[Fraction(x) for x in row] for row in gamma]
        n = len(self.gamma)
        if any(len(r) != n for r in self.gamma):
            raise ValidationError("gamma must be square")
        for row in self.gamma:
            for x in row:
                if x != 0 and rational_valuation(x, prime) < 0:
                    raise ValidationError(
                        "gamma must be integral over the coefficient ring")
        self.rank = n
        self.torsion = [t if isinstance(t, TorsionComponent)
                        else TorsionComponent(int(t[0]), int(t[1]))
                        for t in torsion]
        for comp in self.torsion:
            if comp.e < 1:
                raise ValidationError("torsion exponents must be >= 1")
            if comp.unit % prime == 0:
                raise ValidationError("gamma must act by a unit on torsion")
        self.prec = prec
        self._ctx = Zp(prime, prec)

    def one_minus_gamma(self):
        ctx = self._ctx
        n = self.rank
        return [[ctx.from_fraction((1 if i == j else 0) - self.gamma[i][j])
                 for j in range(n)] for i in range(n)]

    def charpoly(self):
        """det(1 - t*gamma) with exact Fraction coefficients."""
        return rev_charpoly_fractions(self.gamma)

    def eigen_multiplicity_at_one(self):
        """Multiplicity of 1 as an eigenvalue of gamma, by exact deflation."""
        coeffs = self.charpoly()
        m = 0
        while True:
            quo, rem = _deflate_at_one(coeffs)
            if rem != 0 or not quo:
                return m, coeffs
            m += 1
            coeffs = quo

    def _torsion_d(self, comp):
        """d = min(e, v_p(1 - u)): both Ker and coker on Z/p^e are Z/p^d."""
        diff = 1 - comp.unit
        if diff % self.prime ** comp.e == 0:
            return comp.e
        return min(comp.e, rational_valuation(diff, self.prime))


def _deflate_at_one(coeffs):
    b, prev = [], Fraction(0)
    for a in coeffs:
        prev = Fraction(a) + prev
        b.append(prev)
    return b[:-1], b[-1]


def invariants_coinvariants(m: GammaModule):
    """(structure of M^Gamma, structure of M_Gamma), each as
    ModuleStructure(free_rank, torsion exponents).

    Free ranks agree (the group is procyclic); both facts come out of one
    Smith form of 1 - gamma plus the per-component torsion arithmetic.
    """
    snf = smith_normal_form(m.one_minus_gamma(), m._ctx)
    z0 = sum(1 for e in snf.divisors if e is None)
    inv_torsion = []
    coinv_torsion = [e for e in snf.divisors if e is not None and e > 0]
    for comp in m.torsion:
        d = m._torsion_d(comp)
        if d > 0:
            inv_torsion.append(d)
            coinv_torsion.append(d)
    return (ModuleStructure(z0, sorted(inv_torsion)),
            ModuleStructure(z0, sorted(coinv_torsion)))


def _z_snf_route(m: GammaModule):
    """[Ker f]/[coker f] via explicit presentations.

    Free part: with 1 - gamma = U D V, the invariants are the kernel columns
    of V^{-1} and the coinvariants live in U^{-1}-coordinates where the
    relation lattice is D.  The induced map is read off G = U^{-1} K: rows at
    unit divisors die, rows at divisors p^e (e>0) land in Z/p^e, rows at zero
    divisors land in the free quotient.  The cokernel order is the Smith form
    of G with the torsion relations adjoined; the kernel is trivial once z is
    defined (f is injective modulo torsion).  Torsion components contribute
    Z/p^{min(d, e-d)} to both sides.
    """
    ctx = m._ctx
    A = m.one_minus_gamma()
    snf = smith_normal_form(A, ctx)
    z0 = sum(1 for e in snf.divisors if e is None)
    # definedness: kernel of (1-gamma)^2 must have the same rank
    K2 = right_kernel(mat_mul(A, A), ctx)
    z0_sq = len(K2[0]) if K2 else 0
    if z0_sq != z0:
        raise MultipleRootError(
            "1 is a repeated root of the minimal polynomial of gamma")
    ker_order = Fraction(1)
    coker_order = Fraction(1)
    if z0 > 0:
        n = m.rank
        kcols = [k for k, e in enumerate(snf.divisors) if e is None]
        K = [[snf.V_inv[i][j] for j in kcols] for i in range(n)]
        G = mat_mul(snf.U_inv, K)
        torsion_rows = [i for i, e in enumerate(snf.divisors)
                        if e is not None and e > 0]
        free_rows = kcols
        rows = torsion_rows + free_rows
        t = len(torsion_rows)
        C = []
        for ridx, i in enumerate(rows):
            rel = [ctx.from_int(m.prime ** snf.divisors[torsion_rows[j]]
                                if ridx == j else 0) for j in range(t)]
            C.append([G[i][j] for j in range(z0)] + rel)
        snf2 = smith_normal_form(C, ctx)
        if any(e is None for e in snf2.divisors):
            raise ValidationError("cokernel of f is infinite although z is "
                                  "defined; inconsistent module data")
        coker_order *= Fraction(m.prime) ** sum(snf2.divisors)
    else:
        coker_order *= Fraction(m.prime) ** sum(
            e for e in snf.divisors if e is not None and e > 0)
    for comp in m.torsion:
        d = m._torsion_d(comp)
        k = min(d, comp.e - d)
        ker_order *= Fraction(m.prime) ** k
        coker_order *= Fraction(m.prime) ** k
    return ker_order / coker_order


def _z_poly_route(m: GammaModule):
    """Deflate det(1 - t*gamma) at the eigenvalue 1, evaluate at t = 1.

    z = |g(1)|_p as a p-power, where g = det(1 - t*gamma)/(1-t)^mult; defined
    only when the eigenvalue-1 kernel rank matches the multiplicity.
    """
    mult, deflated = m.eigen_multiplicity_at_one()
    K = right_kernel(m.one_minus_gamma(), m._ctx)
    z0 = len(K[0]) if K else 0
    if z0 != mult:
        raise MultipleRootError(
            "1 is a repeated root of the minimal polynomial of gamma")
    g1 = sum(Fraction(c) for c in deflated)
    if g1 == 0:
        raise ValidationError("deflation left a vanishing value at t = 1")
    return Fraction(m.prime) ** (-rational_valuation(g1, m.prime))


def z_of_f(m: GammaModule, route="both"):
    """z(f) = [Ker f]/[coker f] as an exact power of the prime.

    route = "snf", "poly", or "both" (default: compute independently and
    insist on agreement).
    """
    if route == "snf":
        return _z_snf_route(m)
    if route == "poly":
        return _z_poly_route(m)
    a = _z_snf_route(m)
    b = _z_poly_route(m)
    if a != b:
        raise ValidationError(
            f"z(f) routes disagree: Smith-form route {a}, polynomial "
            f"route {b}")
    return a


# ---------------------------------------------------------------------------
# Ext-complex bookkeeping


def ext_ranks(multiplicities, r=None):
    """ranks of Ext^j from per-degree multiplicities of q^r.

    With cohomological dimension one, rank Ext^j = m_j + m_{j-1}; the
    alternating sum telescopes to zero, which is asserted.
    Input: dict degree -> multiplicity (missing degrees are zero).
    """
    if not multiplicities:
        return {}
    degs = sorted(multiplicities)
    lo, hi = degs[0], degs[-1]
    ranks = {}
    for j in range(lo, hi + 2):
        rk = multiplicities.get(j, 0) + multiplicities.get(j - 1, 0)
        if rk:
            ranks[j] = rk
    alt = sum((-1) ** j * rk for j, rk in ranks.items())
    if alt != 0:
        raise ValidationError("alternating rank sum must vanish")
    return ranks


def rho_from_ranks(ranks):
    """Expected pole order: sum (-1)^{j+1} j * rank_j."""
    return sum((-1) ** (j + 1) * j * rk for j, rk in ranks.items())


def rho_from_multiplicities(multiplicities):
    """Same number as rho_from_ranks, via the telescoped identity
    sum (-1)^j m_j."""
    return sum((-1) ** j * mult for j, mult in multiplicities.items())


def chi_from_zf(z_values):
    """Alternating product prod_j z_j^{(-1)^j} over a dict degree -> z."""
    chi = Fraction(1)
    for j, z in z_values.items():
        chi *= Fraction(z) ** ((-1) ** j)
    return chi
