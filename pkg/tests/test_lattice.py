"""Lattice-level structure: bilinear form, cocycle, roots, projections.

The Gram matrix is cross-checked against an independent Gauss-Jordan inverse
written out in this file, so the package's linear algebra never certifies
itself.
"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from e6coset import lattice as lat

coords6 = st.tuples(*[st.integers(-4, 4)] * 6)


def naive_inverse(m):
    """Independent rational matrix inverse (cofactor-free Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        inv[c], inv[p] = inv[p], inv[c]
        scale = a[c][c]
        a[c] = [x / scale for x in a[c]]
        inv[c] = [x / scale for x in inv[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
    return inv


def test_cartan_matrix_shape():
    A = lat.cartan_matrix()
    assert A[0][2] == -1  # nodes 1-3 joined
    assert A[1][3] == -1  # node 2 sits on node 4
    assert A[0][5] == 0
    assert all(A[i][i] == 2 for i in range(6))
    assert A == [list(row) for row in zip(*A)]


def test_gram_matrix_is_independent_inverse():
    got = lat.gram_matrix()
    expected = naive_inverse(lat.cartan_matrix())
    assert got == expected


def test_inner_product_examples():
    lam = lat.fundamental_weight
    assert lat.inner_product(lat.simple_root(1), lat.simple_root(1)) == 2
    assert lat.inner_product(lam(1), lam(1)) == Fraction(4, 3)
    assert lat.inner_product(lat.MU, lam(1)) == 1
    assert lat.inner_product(lat.MU, -lat.THETA) == -1


def test_simple_roots_reproduce_cartan_matrix():
    A = lat.cartan_matrix()
    for i in range(1, 7):
        for j in range(1, 7):
            assert lat.inner_product(lat.simple_root(i), lat.simple_root(j)) == A[i - 1][j - 1]


def test_weight_root_duality():
    for i in range(1, 7):
        for j in range(1, 7):
            assert lat.inner_product(lat.fundamental_weight(i), lat.simple_root(j)) == int(i == j)


@given(coords6, coords6)
def test_inner_product_symmetric(u, v):
    assert lat.inner_product(u, v) == lat.inner_product(v, u)


@given(coords6, coords6)
def test_inner_product_tau_invariant(u, v):
    pu, pv = lat.LatticePoint(u), lat.LatticePoint(v)
    assert lat.inner_product(lat.tau(pu), lat.tau(pv)) == lat.inner_product(pu, pv)


def test_tau_involution_and_examples():
    lam = lat.fundamental_weight
    assert lat.tau(lam(1)) == lam(6)
    assert lat.tau(lam(4)) == lam(4)
    assert lat.tau(lat.MU) == lat.TAU_MU
    assert lat.TAU_MU == lat.from_root_coords([1, 1, 1, 2, 2, 1])
    for i in range(1, 7):
        assert lat.tau(lat.tau(lam(i))) == lam(i)


def test_roots_count_and_closure():
    roots = lat.roots()
    assert len(roots) == 72
    rs = set(roots)
    for r in roots:
        assert lat.norm(r) == 2
        assert -r in rs
        assert lat.tau(r) in rs
        assert lat.in_root_lattice(r)
    assert lat.THETA in rs
    for i in range(1, 7):
        assert lat.simple_root(i) in rs


def test_roots_by_bruteforce_box():
    """Independent enumeration: brute force over simple-root coordinates."""
    found = set()
    for c in itertools.product(range(-4, 5), repeat=6):
        v = lat.from_root_coords(list(c))
        if lat.norm(v) == 2:
            found.add(v)
    assert found == set(lat.roots())


def test_coset_index_examples_and_additivity(sample_points):
    lam = lat.fundamental_weight
    assert lat.coset_index(lat.simple_root(1)) == 0
    assert lat.coset_index(lam(1)) == 1
    assert lat.coset_index(lam(6)) == 2
    assert lat.coset_index(lam(1) + lam(6)) == 0
    for u in sample_points[:12]:
        for v in sample_points[12:24]:
            assert (
                lat.coset_index(u + v)
                == (lat.coset_index(u) + lat.coset_index(v)) % 3
            )


def test_epsilon_weight_matrix_entries():
    lam = lat.fundamental_weight
    assert lat.epsilon(lam(2), lam(1)) == -1
    assert lat.epsilon(lam(1), lam(2)) == 1
    assert lat.epsilon(lam(2), lam(6)) == -1
    assert lat.epsilon(lam(3), lam(1)) == -1
    assert lat.epsilon(lam(4), lam(2)) == -1
    assert lat.epsilon(lam(5), lam(6)) == -1
    total_neg = sum(
        lat.epsilon(lam(i), lam(j)) == -1 for i in range(1, 7) for j in range(1, 7)
    )
    assert total_neg == 5
    assert all(lat.epsilon(lat.ZERO, lam(j)) == 1 for j in range(1, 7))


@given(coords6, coords6, coords6)
def test_epsilon_bilinear(u, v, w):
    uv = lat.LatticePoint(u)
    vv = lat.LatticePoint(v)
    wv = lat.LatticePoint(w)
    assert lat.epsilon(uv + vv, wv) == lat.epsilon(uv, wv) * lat.epsilon(vv, wv)
    assert lat.epsilon(uv, vv + wv) == lat.epsilon(uv, vv) * lat.epsilon(uv, wv)


@given(coords6, coords6)
def test_epsilon_tau_invariant(u, v):
    uv, vv = lat.LatticePoint(u), lat.LatticePoint(v)
    assert lat.epsilon(lat.tau(uv), lat.tau(vv)) == lat.epsilon(uv, vv)


def test_epsilon_commutator_law_on_all_root_pairs():
    roots = lat.roots()
    for a in roots:
        for b in roots:
            ip = lat.inner_product(a, b)
            assert ip.denominator == 1
            assert lat.epsilon(a, b) * lat.epsilon(b, a) == (-1) ** (int(ip) % 2)


def test_epsilon_root_lattice_variant():
    a = lat.simple_root
    assert lat.epsilon_root_lattice(a(1), a(3)) == -1
    assert lat.epsilon_root_lattice(a(3), a(1)) == 1
    assert lat.epsilon_root_lattice(a(4), a(4)) == 1
    with pytest.raises(ValueError):
        lat.epsilon_root_lattice(lat.fundamental_weight(1), a(1))
    # same commutator law as the weight cocycle, on the root lattice
    roots = lat.roots()
    for x in roots[:24]:
        for y in roots[:24]:
            ip = int(lat.inner_product(x, y))
            assert lat.epsilon_root_lattice(x, y) * lat.epsilon_root_lattice(y, x) == (-1) ** (
                ip % 2
            )


def test_projection_examples():
    lam = lat.fundamental_weight
    assert lat.project_to_f4(lam(1)) == lat.OMEGA4
    assert lat.project_to_f4(lam(6)) == lat.OMEGA4
    assert lat.project_to_f4(lat.MU) == lat.OMEGA4
    assert lat.project_to_f4(lat.TAU_MU) == lat.OMEGA4
    assert lat.project_to_f4(lat.ZERO) == lat.F4_ZERO
    assert lat.project_to_f4(lam(2)).coords == (1, 0, 0, 0)
    for nu in (lat.NU1, lat.NU2, lat.NU3):
        assert lat.project_to_f4(nu) == lat.F4_ZERO
    for g in (lat.GAMMA1, lat.GAMMA2, lat.GAMMA3):
        assert lat.project_to_f4(g) == lat.F4_ZERO


def test_f4_simple_root_data():
    data = lat.f4_simple_root_data()
    assert [d.name for d in data] == ["beta_1", "beta_2", "beta_3", "beta_4"]
    b3 = data[2]
    assert b3.heisenberg == lat.simple_root(3) + lat.simple_root(5)
    assert b3.exponents == (lat.simple_root(3), lat.simple_root(5))
    assert [Fraction(x) for x in b3.weight] == [
        Fraction(a + b, 2) for a, b in zip(lat.simple_root(3), lat.simple_root(5))
    ]
    b1 = data[0]
    assert b1.heisenberg == lat.simple_root(2)
    assert b1.exponents == (lat.simple_root(2),)
    b4 = data[3]
    assert b4.exponents == (lat.simple_root(1), lat.simple_root(6))
    # the four weights form an F4 system: norms 2, 2, 1, 1
    norms = [lat.inner_product(d.weight, d.weight) for d in data]
    assert norms == [2, 2, 1, 1]


def test_f4_basis_dual_pairs_counts():
    pairs = lat.f4_basis_dual_pairs()
    assert len(pairs) == 52
    kinds = {}
    for p in pairs:
        kinds[p.kind] = kinds.get(p.kind, 0) + 1
    assert kinds == {"cartan": 4, "fixed": 24, "paired": 24}


def test_theta_is_dominant_root():
    assert lat.norm(lat.THETA) == 2
    assert lat.THETA in set(lat.roots())
    for i in range(1, 7):
        assert lat.inner_product(lat.THETA, lat.fundamental_weight(i)) >= 0


def test_enumerate_coset_points():
    pts = lat.enumerate_coset_points(1, Fraction(4, 3))
    assert len([p for p in pts if lat.norm(p) == Fraction(4, 3)]) == 27
    assert all(lat.coset_index(p) == 1 for p in pts)
    pts0 = lat.enumerate_coset_points(0, 4)
    assert len(pts0) == 1 + 72 + 270
    with pytest.raises(ValueError):
        lat.enumerate_coset_points(5, 2)


def test_point_serialization_roundtrip(sample_points):
    for p in sample_points[:10]:
        assert lat.deserialize_point(lat.serialize_point(p)) == p
    w = lat.project_to_f4(lat.MU + lat.fundamental_weight(3))
    assert lat.deserialize_f4_weight(lat.serialize_f4_weight(w)) == w
