"""State algebra, Heisenberg modes, gradings, and basis enumeration."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from e6coset import fock, lattice, qseries
from e6coset.fock import FockMonomial, State

lam = lattice.fundamental_weight


def hstate(prods, expo=None, coeff=1):
    base = State.exponential(expo if expo is not None else lattice.ZERO, coeff)
    return fock.creation_product(prods, base)


def test_monomial_normal_form():
    m = FockMonomial.make([(3, 2), (1, 1)], lattice.ZERO)
    assert m.factors == ((1, 1), (3, 2))
    assert m.fock_degree == 3
    with pytest.raises(ValueError):
        FockMonomial.make([(7, 1)], lattice.ZERO)
    with pytest.raises(ValueError):
        FockMonomial.make([(1, 0)], lattice.ZERO)


def test_state_algebra():
    a = State.exponential(lam(1))
    b = State.exponential(lam(2))
    s = 2 * a + b - a
    assert s.coefficient(FockMonomial((), tuple(lam(1)))) == 1
    assert (s - s) == State.zero()
    assert not State.zero()
    assert 0 * a == State.zero()


def test_heisenberg_creation_single():
    s = fock.heisenberg(lam(1), -2, State.vacuum())
    assert s == State({FockMonomial(((1, 2),), tuple(lattice.ZERO)): Fraction(1)})


def test_heisenberg_single_contraction():
    # one annihilator against one creator picks up m <alpha, beta> at m = 1
    beta = lattice.simple_root(2)
    alpha = lattice.simple_root(4)
    w = fock.heisenberg(beta, -1, State.vacuum())
    out = fock.heisenberg(alpha, 1, w)
    assert out == lattice.inner_product(alpha, beta) * State.vacuum()


def test_heisenberg_zero_mode():
    w = State.exponential(lattice.MU)
    d = lam(6) - lam(1)
    out = fock.heisenberg(d, 0, w)
    # <mu, lambda_1> = <mu, lambda_6> = 1, so the difference acts by zero
    assert out == State.zero()
    out2 = fock.heisenberg(lattice.simple_root(3), 0, w)
    assert out2 == lattice.inner_product(lattice.simple_root(3), lattice.MU) * w


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 6), st.integers(1, 6))
def test_heisenberg_commutator(m, n, i, j):
    """[h_i(m), h_j(-n)] = m <h_i, h_j> delta_{m,n} on sample states."""
    hi, hj = lam(i), lattice.simple_root(j)
    samples = [
        State.vacuum(),
        State.exponential(lattice.MU),
        hstate([(lam(2), -1), (lam(5), -2)]),
        hstate([(lattice.NU1, -1)], lattice.NU2),
    ]
    for w in samples:
        lhs = fock.heisenberg(hi, m, fock.heisenberg(hj, -n, w)) - fock.heisenberg(
            hj, -n, fock.heisenberg(hi, m, w)
        )
        expected = (
            (m * lattice.inner_product(hi, hj)) * w if m == n else State.zero()
        )
        assert lhs == expected


def test_weight_examples():
    assert fock.weight(State.vacuum()) == 0
    assert fock.weight(State.exponential(lattice.MU)) == 1
    assert fock.weight(State.exponential(lam(1))) == Fraction(2, 3)
    assert fock.weight(hstate([(lam(1), -2)])) == 2
    mixed = State.vacuum() + State.exponential(lattice.MU)
    assert fock.weight(mixed) is None


def test_weight_shifts_under_heisenberg():
    w = hstate([(lattice.NU1, -1)], lattice.MU)
    for n in (-3, -1, 1):
        out = fock.heisenberg(lam(2), n, w)
        if out:
            assert fock.weight(out) == fock.weight(w) - n


def test_f4_weight_sector():
    v = State.exponential(lattice.MU) - State.exponential(lattice.TAU_MU)
    assert fock.f4_weight_sector(v) == lattice.OMEGA4
    assert fock.f4_weight_sector(State.vacuum()) == lattice.F4_ZERO
    R = (
        State.exponential(lattice.NU1)
        + State.exponential(lattice.NU2)
        - State.exponential(lattice.NU3)
    )
    assert fock.f4_weight_sector(R) == lattice.F4_ZERO
    mixed = State.vacuum() + State.exponential(lattice.MU)
    assert fock.f4_weight_sector(mixed) is None


def test_tau_hat():
    assert fock.tau_hat(State.exponential(lam(1))) == State.exponential(lam(6))
    w = hstate([(lam(2), -3)])
    assert fock.tau_hat(w) == w
    s = hstate([(lam(1), -1)], lattice.MU)
    ts = fock.tau_hat(s)
    assert ts == hstate([(lam(6), -1)], lattice.TAU_MU)
    assert fock.tau_hat(ts) == s


def test_tau_hat_twisted_heisenberg_commutation(sample_points):
    for p in sample_points[:6]:
        w = State.exponential(lattice.MU) + hstate([(lam(3), -2)])
        for n in (-2, 0, 1):
            lhs = fock.tau_hat(fock.heisenberg(p, n, w))
            rhs = fock.heisenberg(lattice.tau(p), n, fock.tau_hat(w))
            assert lhs == rhs


def test_graded_piece_small():
    assert fock.basis_of_graded_piece(0, 0) == [FockMonomial((), tuple(lattice.ZERO))]
    w1 = fock.basis_of_graded_piece(0, 1)
    assert len(w1) == 78  # 6 Heisenberg directions + 72 roots
    assert fock.basis_of_graded_piece(0, Fraction(1, 2)) == []
    assert fock.basis_of_graded_piece(0, -1) == []


def test_graded_piece_weight2_count():
    # frozen from two independent routes: direct monomial enumeration and the
    # theta-series generating function below
    w2 = fock.basis_of_graded_piece(0, 2)
    assert len(w2) == 729


def test_graded_piece_matches_theta_series():
    for coset, offset in ((0, Fraction(0)), (1, Fraction(2, 3)), (2, Fraction(2, 3))):
        series = qseries.homogeneous_graded_dim(coset, 3)
        for k in range(4):
            wgt = offset + k
            got = len(fock.basis_of_graded_piece(coset, wgt))
            assert got == series.coefficient(wgt), (coset, wgt)


def test_graded_piece_sector_filter():
    full = fock.basis_of_graded_piece(0, 1)
    om4 = fock.basis_of_graded_piece(0, 1, lattice.OMEGA4)
    zero = fock.basis_of_graded_piece(0, 1, lattice.F4_ZERO)
    assert len(om4) == 2  # the exponentials at mu and tau(mu)
    assert {tuple(m.exponent) for m in om4} == {tuple(lattice.MU), tuple(lattice.TAU_MU)}
    assert len(zero) == 6 + 6  # six Heisenberg directions + six gamma roots
    assert len(om4) < len(full)


def test_state_serialization_roundtrip():
    s = hstate([(lattice.NU1, -1), (lattice.NU3, -2)], lattice.MU, Fraction(3, 7))
    s = s - Fraction(5, 3) * State.exponential(lattice.GAMMA2)
    assert fock.load_state(fock.dump_state(s)) == s
    assert fock.state_from_jsonable(fock.state_to_jsonable(State.zero())) == State.zero()
