"""Integer linear algebra: Smith form, kernels, cokernels, pullbacks."""

import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from loggeom.intlin import (
    AbGroupMap, FgAbelianGroup, ZERO_GROUP, cokernel, determinant,
    free_group, identity_map, invert_isomorphism, is_isomorphism, kernel,
    mat_eq, mat_mul, pullback_group, quotient_group, smith_normal_form,
    zero_map,
)


def brute_invariant_factors(rows, ncols):
    """Determinantal-divisor oracle: gcds over all k x k minors."""
    rows = [list(r) for r in rows]
    divisors = [1]
    k = 1
    while k <= min(len(rows), ncols):
        g = 0
        for ris in combinations(range(len(rows)), k):
            for cis in combinations(range(ncols), k):
                sub = [[rows[i][j] for j in cis] for i in ris]
                g = gcd(g, determinant(sub))
        if g == 0:
            break
        divisors.append(g)
        k += 1
    factors = [divisors[i + 1] // divisors[i] for i in range(len(divisors) - 1)]
    rank = ncols - (len(divisors) - 1)
    torsion = tuple(d for d in factors if d > 1)
    return rank, torsion


@pytest.mark.parametrize("matrix,diag", [
    ([[0]], [[0]]),
    ([[2, -2]], [[2, 0]]),
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
])
def test_snf_examples(matrix, diag):
    u, d, v = smith_normal_form(matrix)
    assert d == diag
    assert mat_eq(mat_mul(mat_mul(u, matrix), v), d)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_snf_verification(m, n, data):
    a = [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)]
    u, d, v = smith_normal_form(a)
    assert mat_eq(mat_mul(mat_mul(u, a), v), d)
    assert abs(determinant(u)) == 1
    assert abs(determinant(v)) == 1
    diag = [d[i][i] for i in range(min(m, n))]
    for x, y in zip(diag, diag[1:]):
        if x == 0:
            assert y == 0
        else:
            assert y % x == 0
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_quotient_vs_determinantal_divisors(n, k, data):
    rows = [[data.draw(st.integers(-6, 6)) for _ in range(n)] for _ in range(k)]
    group, _, _ = quotient_group(n, rows)
    rank, torsion = brute_invariant_factors(rows, n)
    assert group.rank == rank
    assert group.torsion == torsion


def test_cokernel_examples():
    z = free_group(1)
    times2 = AbGroupMap(z, z, ((2,),))
    assert cokernel(times2)[0] == FgAbelianGroup(0, (2,))
    z2 = free_group(2)
    quot, _, _ = quotient_group(2, [[2, -2]])
    assert quot == FgAbelianGroup(1, (2,))
    assert cokernel(identity_map(z))[0].is_zero()


def test_kernel_examples():
    z = free_group(1)
    z2 = free_group(2)
    assert kernel(AbGroupMap(z, z, ((2,),)))[0].is_zero()
    ksum, incl = kernel(AbGroupMap(z2, z, ((1, 1),)))
    assert ksum == free_group(1)
    gen = [incl.matrix[i][0] for i in range(2)]
    assert gen in ([1, -1], [-1, 1])
    assert kernel(zero_map(z, z))[0] == free_group(1)


def test_pullback_examples():
    z = free_group(1)
    times2 = AbGroupMap(z, z, ((2,),))
    p, _, _ = pullback_group(identity_map(z), times2)
    assert p == free_group(1)
    p0, _, _ = pullback_group(zero_map(z, ZERO_GROUP), zero_map(z, ZERO_GROUP))
    assert p0 == free_group(2)
    zmod2 = FgAbelianGroup(0, (2,))
    p3, _, _ = pullback_group(zero_map(z, zmod2), AbGroupMap(z, zmod2, ((1,),)))
    assert p3 == free_group(2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_pullback_square_commutes(na, nb, nc, data):
    a, b, c = free_group(na), free_group(nb), free_group(nc)
    f = AbGroupMap(a, c, tuple(
        tuple(data.draw(st.integers(-3, 3)) for _ in range(na)) for _ in range(nc)))
    g = AbGroupMap(b, c, tuple(
        tuple(data.draw(st.integers(-3, 3)) for _ in range(nb)) for _ in range(nc)))
    p, p1, p2 = pullback_group(f, g)
    for j in range(p.ngens):
        e = [1 if i == j else 0 for i in range(p.ngens)]
        assert f(p1(e)) == g(p2(e))


def hom_count_into_cyclic(rel_rows, map_cols, ngens, n):
    """#Hom(coker, Z/n) by exhaustive enumeration."""
    count = 0
    def rec(phi):
        nonlocal count
        if len(phi) == ngens:
            for row in rel_rows:
                if sum(c * p for c, p in zip(row, phi)) % n != 0:
                    return
            for col in map_cols:
                if sum(c * p for c, p in zip(col, phi)) % n != 0:
                    return
            count += 1
            return
        for v in range(n):
            rec(phi + [v])
    rec([])
    return count


def test_cokernel_vs_enumeration_small_orders():
    rng = random.Random(7)
    tried = 0
    while tried < 12:
        nd = rng.randint(1, 3)
        nc = rng.randint(1, 3)
        dom, cod = free_group(nd), free_group(nc)
        mat = tuple(tuple(rng.randint(-4, 4) for _ in range(nd)) for _ in range(nc))
        f = AbGroupMap(dom, cod, mat)
        coker, _ = cokernel(f)
        order = coker.order()
        if order is None or order > 64:
            continue
        tried += 1
        cols = [[mat[i][j] for i in range(nc)] for j in range(nd)]
        for n in (2, 3, 4, 6, 8, 12):
            expected = 1
            for d in coker.torsion:
                expected *= gcd(d, n)
            assert hom_count_into_cyclic([], cols, nc, n) == expected


def test_isomorphism_inverse_roundtrip():
    z2 = free_group(2)
    f = AbGroupMap(z2, z2, ((1, 1), (0, 1)))
    assert is_isomorphism(f)
    inv = invert_isomorphism(f)
    assert inv.compose(f).equal_on_generators(identity_map(z2))
    assert not is_isomorphism(AbGroupMap(z2, free_group(1), ((1, 1),)))


def test_torsion_respect_checked():
    zmod2 = FgAbelianGroup(0, (2,))
    z = free_group(1)
    with pytest.raises(ValueError):
        AbGroupMap(zmod2, z, ((1,),))
    AbGroupMap(zmod2, zmod2, ((1,),))


def test_group_canonicalization():
    assert quotient_group(1, [[1]])[0].is_zero()
    g, _, _ = quotient_group(3, [[2, 0, 0], [0, 3, 0]])
    assert g == FgAbelianGroup(1, (6,)) or (g.rank, sorted(g.torsion)) == (1, [6])
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (3, 2))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (1,))
