"""Hodge gauges of virtual crystals: filtrations M^i, Hodge numbers, twists.

A virtual crystal is an isocrystal together with a lattice N in its ambient
space.  The gauge functor computes M^i = F^{-1}(p^i N) ∩ N for i in a window
outside of which the filtration is forced (M^i = N below, M^{i+1} = p M^i
above).  All computation happens in N-coordinates, where N is the standard
lattice and F has matrix Atilde = B^{-1} A sigma(B).

Hodge numbers are the graded dimensions h^i = dim_k M^i/(M^{i+1} + pM^{i-1});
for torsion-free inputs they satisfy sum h^i = rank and sum i*h^i = v_p(det).
The Newton polygon always lies on or above the Hodge polygon with the same
endpoints; both polygons are emitted for inspection.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (DegenerateCrystal, NotTypeI, ValidationError,
                     WindowUnbounded)
from .isocrystals import Isocrystal
from .plinalg import (lattice_contains, lattice_equal,
                      lattice_quotient_divisors, lattice_sum,
                      lattice_intersect, mat_copy, mat_det_valuation,
                      mat_from_ints, mat_identity, mat_inverse,
                      mat_min_valuation, mat_mul, mat_shift, mat_sigma,
                      mat_vec, semilinear_preimage)


class VirtualCrystal:
    """(U, F, N): isocrystal plus a lattice, the input to the gauge functor."""

    def __init__(self, crystal: Isocrystal, lattice=None):
        self.crystal = crystal
        self.ctx = crystal.ctx
        self.rank = crystal.rank
        self.lattice = (mat_identity(self.ctx, self.rank)
                        if lattice is None else mat_copy(lattice))

    @classmethod
    def from_ints(cls, ctx, rows, lattice=None):
        if lattice is not None:
            lattice = mat_from_ints(ctx, lattice)
        return cls(Isocrystal.from_ints(ctx, rows), lattice)

    def in_lattice_coordinates(self):
        """Atilde = B^{-1} A sigma(B): the Frobenius matrix seen from N."""
        B = self.lattice
        try:
            Binv = mat_inverse(B, self.ctx)
        except ValidationError as exc:
            raise DegenerateCrystal(f"lattice basis singular: {exc}") from exc
        return mat_mul(Binv, mat_mul(self.crystal.matrix, mat_sigma(B)))

    def tate_twist(self, r: int):
        """Scale F by p^{-r}; the linearization picks up q^{-r}."""
        twisted = Isocrystal(self.ctx,
                             [[x.shift(-r) for x in row]
                              for row in self.crystal.matrix])
        return VirtualCrystal(twisted, self.lattice)

    def direct_sum(self, other):
        if self.ctx is not other.ctx:
            raise ValidationError("direct sum across contexts")
        n, m = self.rank, other.rank
        z = self.ctx.zero()
        A = [[self.crystal.matrix[i][j] if i < n and j < n else
              (other.crystal.matrix[i - n][j - n] if i >= n and j >= n else z)
              for j in range(n + m)] for i in range(n + m)]
        B = [[self.lattice[i][j] if i < n and j < n else
              (other.lattice[i - n][j - n] if i >= n and j >= n else z)
              for j in range(n + m)] for i in range(n + m)]
        return VirtualCrystal(Isocrystal(self.ctx, A), B)


class FGaugeWindow:
    """The computed gauge: window bounds, lattices M^i, Hodge numbers.

    Lattices are stored in N-coordinates (so M^{i_min} is the identity
    basis); `lattice_at` applies the boundary rules for indices outside the
    stored window.  `ambient_lattice_at` converts back to the original
    coordinates through the lattice basis B.
    """

    def __init__(self, vc, i_min, i_max, lattices, hodge, det_val):
        self.vc = vc
        self.ctx = vc.ctx
        self.i_min = i_min
        self.i_max = i_max
        self._lattices = lattices       # dict i -> basis matrix, N-coords
        self.hodge_numbers = hodge      # dict i -> h^i, only nonzero entries
        self.det_val = det_val

    def lattice_at(self, i):
        if i <= self.i_min:
            return mat_identity(self.ctx, self.vc.rank)
        top = max(self._lattices)
        if i <= top:
            return self._lattices[i]
        return mat_shift(self._lattices[top], i - top)

    def ambient_lattice_at(self, i):
        return mat_mul(self.vc.lattice, self.lattice_at(i))

    def rank(self):
        return self.vc.rank

    def hodge_polygon(self):
        """Vertices of the polygon with slope i over length h^i."""
        verts = [(0, Fraction(0))]
        x, y = 0, Fraction(0)
        for i in sorted(self.hodge_numbers):
            h = self.hodge_numbers[i]
            x, y = x + h, y + Fraction(i) * h
            verts.append((x, y))
        return verts

    def tate_twist(self, r: int):
        """Pure reindexing M(r)^i = M^{i+r}; inverse of twisting by -r."""
        lats = {i - r: B for i, B in self._lattices.items()}
        hodge = {i - r: h for i, h in self.hodge_numbers.items()}
        return FGaugeWindow(self.vc.tate_twist(r), self.i_min - r,
                            self.i_max - r, lats, hodge, self.det_val)


def hodge(vc: VirtualCrystal, span_cap=None) -> FGaugeWindow:
    """Compute the gauge filtration M^i = F^{-1}(p^i N) ∩ N of a crystal.

    The window starts at the minimal entry valuation of Atilde (below it the
    preimage already contains N) and the scan stops after M^{i+1} = pM^i
    holds twice in a row.  A span cap of v_p(det) + 3 guards against runaway
    scans on inconsistent data.
    """
    ctx = vc.ctx
    At = vc.in_lattice_coordinates()
    try:
        det_val = mat_det_valuation(At, ctx)
    except ValidationError as exc:
        raise DegenerateCrystal(str(exc)) from exc
    if det_val is None:
        raise DegenerateCrystal("Frobenius is singular at working precision")
    i_min = mat_min_valuation(At)
    if i_min is None:
        raise DegenerateCrystal("Frobenius matrix is zero at this precision")
    if span_cap is None:
        span_cap = abs(det_val) + 3
    n = vc.rank
    ident = mat_identity(ctx, n)
    lattices = {i_min: ident}
    i = i_min
    stable = 0
    while stable < 2:
        if i - i_min > span_cap:
            raise WindowUnbounded(
                f"gauge window exceeded {span_cap} steps without stabilizing")
        pre = semilinear_preimage(At, mat_shift(ident, i + 1), ctx)
        nxt = lattice_intersect(pre, ident, ctx)
        lattices[i + 1] = nxt
        if lattice_equal(nxt, mat_shift(lattices[i], 1), ctx):
            stable += 1
        else:
            stable = 0
        i += 1
    i_max = i - 2
    _verify_axioms(ctx, At, lattices, i_min, i_max)
    hnum = _hodge_numbers(ctx, lattices, i_min, i_max)
    total = sum(hnum.values())
    weight = sum(k * h for k, h in hnum.items())
    if total != n or weight != det_val:
        raise ValidationError(
            f"gauge bookkeeping failed: sum h = {total} (rank {n}), "
            f"sum i*h = {weight} (det valuation {det_val})")
    return FGaugeWindow(vc, i_min, i_max, lattices, hnum, det_val)


def _verify_axioms(ctx, At, lattices, i_min, i_max):
    ident = mat_identity(ctx, len(At))
    # (ii) M^{i_min} = N by recomputation
    pre = semilinear_preimage(At, mat_shift(ident, i_min), ctx)
    if not lattice_contains(pre, ident, ctx):
        raise ValidationError("window start is not stable: F^{-1}(p^i N) "
                              "does not contain N at i_min")
    images = []
    for i in range(i_min, i_max + 2):
        Bi = lattices[i] if i in lattices else ident
        # (i) p M^i ⊆ M^{i+1}
        nxt = lattices.get(i + 1)
        if nxt is not None and not lattice_contains(nxt, mat_shift(Bi, 1), ctx):
            raise ValidationError("gauge axiom failed: pM^i not in M^{i+1}")
        # (iii) p^{-i} F(M^i) ⊆ N; the image lattice is spanned by F(basis)
        img = mat_shift(mat_mul(At, mat_sigma(Bi)), -i)
        if not lattice_contains(ident, img, ctx):
            raise ValidationError("gauge axiom failed: p^{-i}F(M^i) not "
                                  "integral")
        images.append(img)
    span = images[0]
    for img in images[1:]:
        span = lattice_sum(span, img, ctx)
    if not lattice_equal(span, ident, ctx):
        raise ValidationError("gauge axiom failed: images of p^{-i}F(M^i) "
                              "do not span N")


def _hodge_numbers(ctx, lattices, i_min, i_max):
    ident = mat_identity(ctx, len(lattices[i_min]))
    out = {}
    for i in range(i_min, i_max + 1):
        cur = lattices[i] if i in lattices else ident
        above = lattices.get(i + 1, mat_shift(cur, 1))
        below = ident if i - 1 <= i_min else lattices[i - 1]
        S = lattice_sum(above, mat_shift(below, 1), ctx)
        divs = lattice_quotient_divisors(cur, S, ctx)
        if any(e != 1 for e in divs):
            raise ValidationError("graded piece of the gauge is not "
                                  "elementary p-torsion")
        if divs:
            out[i] = len(divs)
    return out


# ---------------------------------------------------------------------------
# complexes with zero differentials


class GaugeComplex:
    """Finite family (cohomological degree j, virtual crystal), d = 0."""

    def __init__(self, items):
        degs = [j for j, _ in items]
        if len(set(degs)) != len(degs):
            raise ValidationError("duplicate cohomological degrees")
        self.items = sorted(items, key=lambda it: it[0])

    def degrees(self):
        return [j for j, _ in self.items]

    def windows(self):
        return {j: hodge(vc) for j, vc in self.items}

    def profiles(self):
        return {j: vc.crystal.slopes() for j, vc in self.items}

    def simple_cohomology(self):
        """H^n of the associated simple complex: with zero differentials the
        degree-n piece is exactly the stored isocrystal."""
        return {j: vc.crystal for j, vc in self.items}

    def tate_twist(self, r: int):
        return GaugeComplex([(j - r, vc.tate_twist(r)) for j, vc in self.items])


# ---------------------------------------------------------------------------
# slope-gauge comparison


def newton_polygon_vertices(profile):
    verts = [(0, Fraction(0))]
    x, y = 0, Fraction(0)
    for s, m in profile:
        x, y = x + m, y + Fraction(s) * m
        verts.append((x, y))
    return verts


def _polygon_value(verts, x):
    for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
        if x1 <= x <= x2:
            return y1 + Fraction(y2 - y1, x2 - x1) * (x - x1)
    raise ValidationError("abscissa outside polygon")


def slope_gauge_check(vc: VirtualCrystal, g: FGaugeWindow):
    """Compare Newton and Hodge data of one crystal.

    Returns a report dict: both vertex lists, whether Newton lies on or above
    Hodge with equal endpoints (hard facts), and the advisory per-window
    comparison of slope multiplicities in [i, i+1) against h^i, which
    coincide exactly in the ordinary case.
    """
    profile = vc.crystal.slopes()
    newton = newton_polygon_vertices(profile)
    hodgev = g.hodge_polygon()
    if newton[-1][0] != hodgev[-1][0]:
        raise ValidationError("polygon lengths differ")
    equal_endpoints = newton[-1] == hodgev[-1]
    on_or_above = all(
        _polygon_value(newton, x) >= _polygon_value(hodgev, x)
        for x in range(newton[-1][0] + 1))
    window_counts = {}
    for s, m in profile:
        i = s.numerator // s.denominator if isinstance(s, Fraction) else int(s)
        window_counts[i] = window_counts.get(i, 0) + m
    windows_match = window_counts == dict(g.hodge_numbers)
    return {
        "newton_vertices": newton,
        "hodge_vertices": hodgev,
        "on_or_above": on_or_above,
        "equal_endpoints": equal_endpoints,
        "slope_window_counts": window_counts,
        "hodge_numbers": dict(g.hodge_numbers),
        "windows_match": windows_match,
    }


# ---------------------------------------------------------------------------
# Raynaud relations for elementary Type I desk models


def check_raynaud_relations(vc: VirtualCrystal, trials=4, seed=0,
                            nil_cap=None):
    """Verify FV = p = VF, the semilinearity relations, and that V = pF^{-1}
    is topologically nilpotent; d = 0 so the d-relations hold vacuously.

    The nilpotence certificate is the Newton polygon (every slope < 1, so
    V has positive slopes), witnessed numerically by the growth of the
    minimal valuation of powers of V.  A slope >= 1 raises NotTypeI.
    """
    ctx = vc.ctx
    At = vc.in_lattice_coordinates()
    if (mat_min_valuation(At) or 0) < 0:
        raise ValidationError("Type I model needs F integral on the lattice")
    profile = Isocrystal(ctx, At).slopes()
    if any(s >= 1 for s, _ in profile):
        raise NotTypeI(f"slope {max(s for s, _ in profile)} >= 1: "
                       "V = pF^{-1} is not topologically nilpotent")
    n = len(At)
    back = ctx.a - 1
    Vmat = mat_shift(mat_sigma(mat_inverse(At, ctx), back), 1)
    # operator identities: A sigma(V) = p = V sigma^{-1}(A)
    lhs = mat_mul(At, mat_sigma(Vmat))
    rhs = mat_mul(Vmat, mat_sigma(At, back))
    pI = mat_shift(mat_identity(ctx, n), 1)
    for got in (lhs, rhs):
        for i in range(n):
            for j in range(n):
                if not got[i][j].same_value(pI[i][j], digits=ctx.guard):
                    raise ValidationError("FV = p = VF failed")
    rng = random.Random(seed)
    for _ in range(trials):
        v = [ctx.from_int(rng.randrange(1, ctx.p ** 3)) for _ in range(n)]
        c = ctx.from_vector([rng.randrange(ctx.p ** 2) for _ in range(ctx.a)]) \
            if ctx.a > 1 else ctx.from_int(rng.randrange(1, ctx.p ** 3))
        # F(c v) = sigma(c) F(v)
        Fv = mat_vec(At, [x.frobenius() for x in v])
        Fcv = mat_vec(At, [(c * x).frobenius() for x in v])
        for x, y in zip(Fcv, [c.frobenius() * t for t in Fv]):
            if not x.same_value(y, digits=ctx.guard):
                raise ValidationError("F semilinearity failed")
        # a V = V sigma(a)
        Vv = mat_vec(Vmat, [x.frobenius_iter(back) for x in v])
        Vsv = mat_vec(Vmat, [(c.frobenius() * x).frobenius_iter(back)
                             for x in v])
        for x, y in zip(Vsv, [c * t for t in Vv]):
            if not x.same_value(y, digits=ctx.guard):
                raise ValidationError("V semilinearity failed")
    if nil_cap is None:
        nil_cap = 2 * n * ctx.a + 4
    growth = []
    W = Vmat
    for _ in range(nil_cap):
        growth.append(mat_min_valuation(W))
        W = mat_mul(Vmat, mat_sigma(W, back))
    if growth[-1] is None or growth[-1] <= (growth[0] or 0):
        raise ValidationError("no visible valuation growth in powers of V")
    return True
