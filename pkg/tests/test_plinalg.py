"""Smith normal form and lattice operations over Z_q."""

import random

import pytest

from fqzeta.errors import PrecisionExhausted, ValidationError
from fqzeta.padics import QqContext, Zp
from fqzeta.plinalg import (
    lattice_canonical,
    lattice_contains,
    lattice_equal,
    lattice_intersect,
    lattice_quotient_divisors,
    lattice_sum,
    mat_det_valuation,
    mat_equal,
    mat_from_ints,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_rank,
    right_kernel,
    semilinear_preimage,
    smith_normal_form,
    solve_right,
)


def _random_unimodular(ctx, n, rng, steps=6):
    """Product of random elementary row operations: det is a unit."""
    U = mat_identity(ctx, n)
    for _ in range(steps):
        i, k = rng.sample(range(n), 2)
        c = ctx.from_int(rng.randrange(-9, 10))
        for j in range(n):
            U[i][j] = U[i][j] + c * U[k][j]
    return U


def test_snf_diagonal_oracle():
    ctx = Zp(5, prec=24)
    A = mat_from_ints(ctx, [[5, 0], [0, 125]])
    snf = smith_normal_form(A)
    assert snf.divisors == [1, 3]


def test_snf_divisors_of_unit_determinant_matrix():
    ctx = Zp(5, prec=24)
    A = mat_from_ints(ctx, [[2, 4], [6, 8]])   # det = -8, a 5-adic unit
    assert smith_normal_form(A).divisors == [0, 0]


def test_snf_factorization_and_transform_integrality():
    ctx = Zp(3, prec=30)
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randrange(1, 5)
        m = rng.randrange(1, 5)
        A = mat_from_ints(ctx, [[rng.randrange(-40, 41) * 3 ** rng.randrange(3)
                                 for _ in range(m)] for _ in range(n)])
        snf = smith_normal_form(A)
        assert mat_equal(mat_mul(mat_mul(snf.U, snf.D), snf.V), A)
        assert mat_equal(mat_mul(snf.U, snf.U_inv), mat_identity(ctx, n))
        assert mat_equal(mat_mul(snf.V, snf.V_inv), mat_identity(ctx, m))
        # transforms are integral: all valuations >= 0
        for M in (snf.U, snf.V, snf.U_inv, snf.V_inv):
            for row in M:
                for x in row:
                    assert x.is_zeroish() or x.valuation() >= 0
        present = [e for e in snf.divisors if e is not None]
        assert present == sorted(present)


def test_snf_divisors_are_gl_invariants():
    """Multiplying by unimodular matrices on either side keeps the divisors."""
    ctx = Zp(5, prec=40)
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randrange(2, 5)
        A = mat_from_ints(ctx, [[rng.randrange(-20, 21) * 5 ** rng.randrange(3)
                                 for _ in range(n)] for _ in range(n)])
        base = smith_normal_form(A).divisors
        U = _random_unimodular(ctx, n, rng)
        V = _random_unimodular(ctx, n, rng)
        assert smith_normal_form(mat_mul(mat_mul(U, A), V)).divisors == base


def test_rank_and_kernel():
    ctx = Zp(5, prec=24)
    A = mat_from_ints(ctx, [[1, 2, 3], [2, 4, 6]])   # rank 1
    assert mat_rank(A) == 1
    K = right_kernel(A)
    assert len(K) == 3 and len(K[0]) == 2
    for j in range(2):
        v = [K[i][j] for i in range(3)]
        image = [sum((A[r][i] * v[i] for i in range(3)), ctx.zero())
                 for r in range(2)]
        assert all(x.is_zeroish() for x in image)


def test_kernel_is_saturated():
    """p * v in ker implies v in ker: kernel columns stay primitive."""
    ctx = Zp(5, prec=24)
    A = mat_from_ints(ctx, [[5, 10]])
    K = right_kernel(A)
    assert len(K[0]) == 1
    col_vals = [K[i][0].valuation() for i in range(2)
                if not K[i][0].is_zeroish()]
    assert min(col_vals) == 0


def test_inverse_and_solve():
    ctx = Zp(7, prec=24)
    A = mat_from_ints(ctx, [[2, 1], [1, 1]])
    Ainv = mat_inverse(A)
    assert mat_equal(mat_mul(A, Ainv), mat_identity(ctx, 2))
    B = mat_from_ints(ctx, [[3], [4]])
    X = solve_right(A, B)
    assert mat_equal(mat_mul(A, X), B)
    with pytest.raises(ValidationError):
        mat_inverse(mat_from_ints(ctx, [[1, 2], [2, 4]]))


def test_det_valuation():
    ctx = Zp(5, prec=24)
    assert mat_det_valuation(mat_from_ints(ctx, [[5, 0], [3, 25]])) == 3
    assert mat_det_valuation(mat_from_ints(ctx, [[1, 2], [2, 4]])) is None


def test_lattice_containment_and_equality():
    ctx = Zp(5, prec=24)
    std = mat_from_ints(ctx, [[1, 0], [0, 1]])
    sub = mat_from_ints(ctx, [[5, 0], [0, 1]])
    assert lattice_contains(std, sub)
    assert not lattice_contains(sub, std)
    # a different basis of the standard lattice
    other = mat_from_ints(ctx, [[1, 3], [1, 4]])   # det 1
    assert lattice_equal(std, other)


def test_lattice_sum_intersect_quotient():
    ctx = Zp(5, prec=30)
    L1 = mat_from_ints(ctx, [[5, 0], [0, 1]])
    L2 = mat_from_ints(ctx, [[1, 0], [0, 5]])
    total = lattice_sum(L1, L2)
    meet = lattice_intersect(L1, L2)
    assert lattice_equal(total, mat_from_ints(ctx, [[1, 0], [0, 1]]))
    assert lattice_equal(meet, mat_from_ints(ctx, [[5, 0], [0, 5]]))
    assert lattice_quotient_divisors(total, meet) == [1, 1]
    # index multiplicativity: [L1+L2 : L1] * [L1 : L1 cap L2] via divisors
    assert sum(lattice_quotient_divisors(total, L1)) + \
        sum(lattice_quotient_divisors(L1, meet)) == 2


def test_lattice_modularity_random():
    """(L1 + L2) / L1 and L2 / (L1 cap L2) have the same divisors."""
    ctx = Zp(3, prec=40)
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randrange(2, 4)

        def rand_basis():
            while True:
                B = mat_from_ints(ctx, [[rng.randrange(-12, 13)
                                         * 3 ** rng.randrange(2)
                                         for _ in range(n)]
                                        for _ in range(n)])
                if mat_det_valuation(B) is not None:
                    return B

        L1, L2 = rand_basis(), rand_basis()
        total = lattice_sum(L1, L2)
        meet = lattice_intersect(L1, L2)
        assert lattice_contains(total, L1) and lattice_contains(total, L2)
        assert lattice_contains(L1, meet) and lattice_contains(L2, meet)
        assert lattice_quotient_divisors(total, L1) == \
            lattice_quotient_divisors(L2, meet)


def test_lattice_canonical_is_a_basis_of_the_same_lattice():
    ctx = Zp(5, prec=30)
    B = mat_from_ints(ctx, [[10, 3], [5, 1]])
    C = lattice_canonical(B)
    assert lattice_equal(B, C)


def test_semilinear_preimage_frobenius_twist():
    """Over Q_q with a = 2, {v : A sigma(v) in L} pushed forward lands in L."""
    ctx = QqContext(5, 2, prec=24)
    A = [[ctx.from_vector((1, 1)), ctx.from_int(5)],
         [ctx.from_int(0), ctx.from_vector((2, 3))]]
    L = mat_from_ints(ctx, [[5, 0], [1, 1]])
    M = semilinear_preimage(A, L)
    # columns of M satisfy A sigma(m) in span(L)
    from fqzeta.plinalg import mat_sigma
    image = mat_mul(A, mat_sigma(M, 1))
    assert lattice_contains(L, image)


def test_snf_precision_exhaustion_on_uncertifiable_pivot():
    ctx = Zp(5, prec=32)
    x = ctx.from_int(3, rel=4)          # below the 8-digit guard
    A = [[x]]
    with pytest.raises(PrecisionExhausted):
        smith_normal_form(A)
