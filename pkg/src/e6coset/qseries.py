"""Truncated exact power series and the character identities they certify.

Series carry a rational global exponent offset (characters come with
prefactors like q^{-1/30}) and a dense block of rational coefficients for the
integer powers above it.  Every operation records how many orders of the
result are trustworthy, and every identity check is coefficientwise exact up
to the requested order; there is no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

_BIG = 1 << 60


@dataclass(frozen=True)
class TruncSeries:
    """sum_{k=0..} coeffs[k] * q^(offset + k), trusted through q^(offset + n_valid)."""

    offset: Fraction
    coeffs: tuple[Fraction, ...]
    n_valid: int

    @staticmethod
    def make(offset, coeffs: Iterable, n_valid: int | None = None) -> "TruncSeries":
        cs = tuple(Fraction(c) for c in coeffs)
        nv = len(cs) - 1 if n_valid is None else min(n_valid, len(cs) - 1)
        return TruncSeries(Fraction(offset), cs, nv)

    @staticmethod
    def zero(n: int) -> "TruncSeries":
        return TruncSeries.make(0, [0] * (n + 1))

    @staticmethod
    def one(n: int) -> "TruncSeries":
        return TruncSeries.make(0, [1] + [0] * n)

    @staticmethod
    def monomial(exponent, n: int, coeff=1) -> "TruncSeries":
        return TruncSeries.make(exponent, [coeff] + [0] * n)

    # -- helpers -----------------------------------------------------------
    def coefficient(self, exponent) -> Fraction:
        """Coefficient of q^exponent; raises beyond the trusted order."""
        e = Fraction(exponent) - self.offset
        if e.denominator != 1:
            return Fraction(0)
        k = int(e)
        if k < 0:
            return Fraction(0)
        if k > self.n_valid:
            raise ValueError(f"coefficient of order {exponent} is beyond the trusted range")
        return self.coeffs[k]

    def _trimmed(self) -> "TruncSeries":
        """Normal form: drop leading zeros into the offset."""
        cs = self.coeffs[: self.n_valid + 1]
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        if lead == 0 or lead == len(cs):
            return self
        return TruncSeries(self.offset + lead, cs[lead:], self.n_valid - lead)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        d = other.offset - self.offset
        if d.denominator != 1:
            raise ValueError("cannot add series whose offsets differ by a non-integer")
        d = int(d)
        if d < 0:
            return other + self
        nv = min(self.n_valid, other.n_valid + d)
        cs = list(self.coeffs[: nv + 1]) + [Fraction(0)] * (nv + 1 - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            if k + d > nv:
                break
            cs[k + d] += c
        return TruncSeries(self.offset, tuple(cs), nv)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "TruncSeries":
        scalar = Fraction(scalar)
        return TruncSeries(self.offset, tuple(scalar * c for c in self.coeffs), self.n_valid)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.__rmul__(other)
        nv = min(self.n_valid, other.n_valid)
        a = self.coeffs[: self.n_valid + 1]
        b = other.coeffs[: other.n_valid + 1]
        out = [Fraction(0)] * (nv + 1)
        for i, ai in enumerate(a):
            if i > nv or not ai:
                continue
            top = min(nv - i, len(b) - 1)
            for j in range(top + 1):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncSeries(self.offset + other.offset, tuple(out), nv)

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; the lowest trusted coefficient must be nonzero."""
        s = self._trimmed()
        if not s.coeffs or s.coeffs[0] == 0:
            raise ZeroDivisionError("series with vanishing lowest coefficient")
        n = s.n_valid
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / s.coeffs[0]
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, min(k, len(s.coeffs) - 1) + 1):
                acc += s.coeffs[j] * inv[k - j]
            inv[k] = -acc / s.coeffs[0]
        return TruncSeries(-s.offset, tuple(inv), n)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return self * other.inverse()

    def substitute_power(self, k: int) -> "TruncSeries":
        """q -> q^k; the gaps between multiples of k are trusted zeros."""
        if k < 1:
            raise ValueError("power substitution needs k >= 1")
        cs = [Fraction(0)] * (self.n_valid * k + k)
        for i, c in enumerate(self.coeffs[: self.n_valid + 1]):
            cs[i * k] = c
        return TruncSeries(self.offset * k, tuple(cs), self.n_valid * k + k - 1)

    def shift(self, e) -> "TruncSeries":
        """Multiply by q^e."""
        return TruncSeries(self.offset + Fraction(e), self.coeffs, self.n_valid)

    def congruence_part(self, r: int, modulus: int = 3) -> "TruncSeries":
        """Keep the terms whose total exponent is congruent to r mod ``modulus``."""
        if self.offset.denominator != 1:
            raise ValueError("congruence split needs an integer offset")
        base = int(self.offset)
        cs = [
            c if (base + k) % modulus == r % modulus else Fraction(0)
            for k, c in enumerate(self.coeffs[: self.n_valid + 1])
        ]
        return TruncSeries(self.offset, tuple(cs), self.n_valid)

    def equal_through(self, other: "TruncSeries", order: int) -> bool:
        """Exact agreement of all coefficients with exponent <= offset-floor + order."""
        diff = (self - other) if self.offset <= other.offset else (other - self)
        if diff.n_valid < order:
            raise ValueError(
                f"series only trusted through relative order {diff.n_valid}, need {order}"
            )
        return all(c == 0 for c in diff.coeffs[: order + 1])

    def first_coefficients(self, k: int) -> list[str]:
        return [str(c) for c in self.coeffs[: k]]


def product_form(n: int, factor_exponents: Callable[[int], Iterable[int]], sign: int = -1) -> TruncSeries:
    """prod over the generated exponents e of (1 + sign*q^e), truncated at order n."""
    cs = [Fraction(0)] * (n + 1)
    cs[0] = Fraction(1)
    i = 1
    while True:
        all_exps = list(factor_exponents(i))
        if all(e > n for e in all_exps):
            break
        for e in all_exps:
            if e < 1:
                raise ValueError("product factors need positive exponents")
            if e > n:
                continue
            for k in range(n - e, -1, -1):
                if cs[k]:
                    cs[k + e] += sign * cs[k]
        i += 1
    return TruncSeries.make(0, cs)


def euler_phi(n: int) -> TruncSeries:
    """prod_{i>=1} (1 - q^i) through order n."""
    return product_form(n, lambda i: (i,))


def rr_a(n: int) -> TruncSeries:
    """prod 1/((1-q^{5k-2})(1-q^{5k-3})) through order n."""
    return product_form(n, lambda i: (5 * i - 2, 5 * i - 3)).inverse()


def rr_b(n: int) -> TruncSeries:
    """prod 1/((1-q^{5k-1})(1-q^{5k-4})) through order n."""
    return product_form(n, lambda i: (5 * i - 1, 5 * i - 4)).inverse()


def bilateral_sum(n: int, exponent: Callable[[int], Fraction], coeff: Callable[[int], int]) -> TruncSeries:
    """sum over k in Z of coeff(k) q^{exponent(k)}, truncated provably.

    The two-sided sum is walked outward until both directions have left the
    truncation window; the quadratic growth of the exponents makes the stop
    condition exact.
    """
    cs = [Fraction(0)] * (n + 1)

    def add(k) -> bool:
        e = Fraction(exponent(k))
        if e.denominator != 1:
            raise ValueError("bilateral sums need integer exponents after normalization")
        e = int(e)
        if e < 0:
            raise ValueError("negative exponent in a bilateral sum")
        if e > n:
            return False
        cs[e] += coeff(k)
        return True

    k = 0
    alive_pos = alive_neg = True
    while alive_pos or alive_neg:
        if k == 0:
            add(0)
        else:
            if alive_pos:
                alive_pos = add(k)
            if alive_neg:
                alive_neg = add(-k)
        k += 1
    return TruncSeries.make(0, cs)


def jtp_product(n: int, u_exp: int, v_exp: int) -> TruncSeries:
    """prod (1-q^{(u+v)k})(1-q^{uk+v(k-1)})(1-q^{u(k-1)+vk}) through order n."""
    u, v = u_exp, v_exp
    return product_form(n, lambda k: ((u + v) * k, u * k + v * (k - 1), u * (k - 1) + v * k))


def jtp_sum(n: int, u_exp: int, v_exp: int) -> TruncSeries:
    """sum_k (-1)^k q^{u k(k+1)/2 + v k(k-1)/2} through order n."""
    u, v = u_exp, v_exp
    return bilateral_sum(
        n,
        lambda k: Fraction(u * k * (k + 1) + v * k * (k - 1), 2),
        lambda k: (-1) ** (k % 2),
    )


def jtp_check(u_exp: int, v_exp: int, n: int) -> bool:
    """The triple product identity, specialized to one variable."""
    return jtp_product(n, u_exp, v_exp).equal_through(jtp_sum(n, u_exp, v_exp), n)


def virasoro_h(s: int, t: int, m: int, n: int) -> Fraction:
    return Fraction((m * t - n * s) ** 2 - (s - t) ** 2, 4 * s * t)


def virasoro_c(s: int, t: int) -> Fraction:
    return 1 - Fraction(6 * (s - t) ** 2, s * t)


def feigin_fuchs_char(s: int, t: int, m: int, n: int, order: int) -> TruncSeries:
    """Minimal-model character: q^{h - c/24}/phi(q) * bilateral theta combination."""
    if s < 2 or t < 2:
        raise ValueError("need s, t >= 2")
    from math import gcd

    if gcd(s, t) != 1:
        raise ValueError("s and t must be coprime")
    if not (1 <= m < s and 1 <= n < t):
        raise ValueError("need 1 <= m < s and 1 <= n < t")
    st = s * t
    a_lin = m * t - n * s
    b_lin = m * t + n * s
    num = bilateral_sum(
        order,
        lambda k: Fraction(st * k * k + a_lin * k),
        lambda k: 1,
    ) - bilateral_sum(
        order,
        lambda k: Fraction(st * k * k + b_lin * k + m * n),
        lambda k: 1,
    )
    h = virasoro_h(s, t, m, n)
    c = virasoro_c(s, t)
    return (num / euler_phi(order)).shift(h - c / 24)


# -- named series of the branching story ---------------------------------------


def c0_series(order: int) -> TruncSeries:
    """Vacuum-module branching multiplicities into the trivial F4 sector."""
    return (
        feigin_fuchs_char(5, 6, 1, 1, order) + feigin_fuchs_char(5, 6, 1, 5, order)
    ).shift(Fraction(1, 30))


def d0_series(order: int) -> TruncSeries:
    """Vacuum-module branching multiplicities into the omega_4 sector
    (shifted so the constant term is 1)."""
    return (
        feigin_fuchs_char(5, 6, 2, 1, order) + feigin_fuchs_char(5, 6, 2, 5, order)
    ).shift(Fraction(-11, 30))


def c1_series(order: int) -> TruncSeries:
    return feigin_fuchs_char(5, 6, 1, 3, order).shift(Fraction(-19, 30))


def d1_series(order: int) -> TruncSeries:
    return feigin_fuchs_char(5, 6, 2, 3, order).shift(Fraction(-1, 30))


def check_rr_sums(order: int) -> dict:
    """phi*a and phi*b as alternating theta-like sums."""
    phi = euler_phi(order)
    lhs_a = phi * rr_a(order)
    rhs_a = bilateral_sum(order, lambda k: Fraction(k * (5 * k + 3), 2), lambda k: (-1) ** (k % 2))
    lhs_b = phi * rr_b(order)
    rhs_b = bilateral_sum(order, lambda k: Fraction(k * (5 * k + 1), 2), lambda k: (-1) ** (k % 2))
    return {
        "phi_a": lhs_a.equal_through(rhs_a, order),
        "phi_b": lhs_b.equal_through(rhs_b, order),
    }


def char_product_identities(order: int) -> dict:
    """The four product forms of the shifted character combinations."""
    phi = euler_phi(order)
    out = {}
    lhs = phi * c0_series(order)
    rhs = jtp_product(order, 8, 7) - jtp_product(order, 13, 2).shift(1)
    out["c0_two_products"] = lhs.equal_through(rhs, order)
    lhs = phi * d0_series(order)
    rhs = jtp_product(order, 11, 4) + jtp_product(order, 1, 14).shift(1)
    out["d0_two_products"] = lhs.equal_through(rhs, order)
    sub = order // 3
    phi3a3 = euler_phi(sub).substitute_power(3) * rr_a(sub).substitute_power(3)
    out["c1_product"] = (phi * c1_series(order)).equal_through(phi3a3, 3 * sub)
    phi3b3 = euler_phi(sub).substitute_power(3) * rr_b(sub).substitute_power(3)
    out["d1_product"] = (phi * d1_series(order)).equal_through(phi3b3, 3 * sub)
    return out


def ramanujan_identity_check(order: int) -> bool:
    """phi(t^3)^2 = t^2 phi(t)phi(t^9)a(t)a(t^9) + phi(t)phi(t^9)b(t)b(t^9)."""
    sub3, sub9 = order // 3, order // 9
    lhs = euler_phi(sub3).substitute_power(3)
    lhs = lhs * lhs
    phi = euler_phi(order)
    phi9 = euler_phi(sub9).substitute_power(9)
    a9 = rr_a(sub9).substitute_power(9)
    b9 = rr_b(sub9).substitute_power(9)
    rhs = (phi * phi9 * rr_a(order) * a9).shift(2) + phi * phi9 * rr_b(order) * b9
    return lhs.equal_through(rhs, min(3 * sub3, 9 * sub9 + 2, order))


def congruence_split_checks(order: int) -> dict:
    """Residue-class decompositions of phi*a and phi*b mod 3."""
    phi = euler_phi(order)
    fa = phi * rr_a(order)
    fb = phi * rr_b(order)
    sub9 = order // 9
    phi9 = euler_phi(sub9).substitute_power(9)
    a9 = rr_a(sub9).substitute_power(9)
    b9 = rr_b(sub9).substitute_power(9)
    sub3 = order // 3
    G3 = (euler_phi(sub3) * c0_series(sub3)).substitute_power(3)
    H3 = (euler_phi(sub3) * d0_series(sub3)).substitute_power(3)
    ord9 = 9 * sub9
    ord3 = 3 * sub3
    out = {
        "a_part2_zero": all(c == 0 for c in fa.congruence_part(2).coeffs[: order + 1]),
        "b_part1_zero": all(c == 0 for c in fb.congruence_part(1).coeffs[: order + 1]),
        "a_part0_is_b9phi9": fa.congruence_part(0).equal_through(b9 * phi9, ord9),
        "a_part1_is_minus_tH3": fa.congruence_part(1).equal_through((-1) * H3.shift(1), ord3),
        "b_part0_is_G3": fb.congruence_part(0).equal_through(G3, ord3),
        "b_part2_is_minus_t2_a9phi9": fb.congruence_part(2).equal_through(
            (-1) * (a9 * phi9).shift(2), ord9
        ),
        "split_sums_to_whole_a": (
            fa.congruence_part(0) + fa.congruence_part(1) + fa.congruence_part(2)
        ).equal_through(fa, order),
    }
    # A companion formulation with b(t^9) in place of phi(t^9) circulates in
    # prose; it disagrees with the residue class itself, and the first order
    # where it fails is recorded rather than silently ignored.
    wrong = (-1) * (a9 * b9).shift(2)
    diff = fb.congruence_part(2) - wrong
    first_diff = None
    for k in range(diff.n_valid + 1):
        if diff.coeffs[k] != 0:
            first_diff = int(diff.offset) + k
            break
    out["alternate_b_part2_first_mismatch_order"] = first_diff
    return out


def branching_identity_check(module: str, order: int) -> dict:
    """The q-series branching identities for the three level-1 modules."""
    phi = euler_phi(order)
    sub3 = order // 3
    phi3 = euler_phi(sub3).substitute_power(3)
    a = rr_a(order)
    b = rr_b(order)
    lhs = phi3 / phi
    out = {"module": module, "order": 3 * sub3}
    if module == "vacuum":
        c0 = c0_series(sub3).substitute_power(3)
        d0 = d0_series(sub3).substitute_power(3)
        rhs = c0 * a + (d0 * b).shift(1)
        series = {"c": c0_series(order), "d": d0_series(order)}
    elif module in ("weight1", "weight6"):
        c1 = c1_series(sub3).substitute_power(3)
        d1 = d1_series(sub3).substitute_power(3)
        rhs = (c1 * a).shift(2) + d1 * b
        series = {"c": c1_series(order), "d": d1_series(order)}
    else:
        raise ValueError(f"unknown module {module!r}")
    out["identity"] = lhs.equal_through(rhs, 3 * sub3)
    for name, s in series.items():
        coeffs = s.coeffs[: s.n_valid + 1]
        out[f"{name}_nonneg_integer"] = (
            s.offset == 0 and all(c.denominator == 1 and c >= 0 for c in coeffs)
        )
        out[f"{name}_head"] = [str(c) for c in coeffs[:8]]
    return out


def graded_dim_e6(order: int) -> TruncSeries:
    """Principal graded dimension of a level-1 module of the big algebra:
    product over n = +-1, +-4, +-5 mod 12."""
    return product_form(
        order, lambda i: tuple(12 * (i - 1) + r for r in (1, 4, 5)) + tuple(12 * i - r for r in (1, 4, 5))
    ).inverse()


def graded_dim_f4_factor(order: int) -> TruncSeries:
    """Fock factor of the F4 principal graded dimensions:
    product over n = +-1, +-5 mod 12."""
    return product_form(
        order, lambda i: tuple(12 * (i - 1) + r for r in (1, 5)) + tuple(12 * i - r for r in (1, 5))
    ).inverse()


def principal_graded_dims(order: int) -> dict:
    """Eta-quotient forms, vacuum characters, and the specialized branching
    identity for the principal grading (the character variable is v)."""
    phi = {k: euler_phi(order // k).substitute_power(k) for k in (1, 2, 3, 4, 6, 12)}
    fe6 = graded_dim_e6(order)
    ff4 = graded_dim_f4_factor(order)
    eta_e6 = (phi[2] * phi[3] * phi[12]) / (phi[1] * phi[4] * phi[6])
    eta_f4 = (phi[2] * phi[3]) / (phi[1] * phi[6])
    o_e6 = min(fe6.n_valid, eta_e6.n_valid)
    o_f4 = min(ff4.n_valid, eta_f4.n_valid)
    out = {
        "e6_eta_quotient": fe6.equal_through(eta_e6, o_e6),
        "f4_eta_quotient": ff4.equal_through(eta_f4, o_f4),
    }
    sub4, sub12 = order // 4, order // 12
    w0 = ff4 * rr_a(sub4).substitute_power(4)
    w4 = ff4 * rr_b(sub4).substitute_power(4)
    c0 = c0_series(sub12).substitute_power(12)
    d0 = d0_series(sub12).substitute_power(12)
    rhs = c0 * w0 + (d0 * w4).shift(4)
    o_main = min(fe6.n_valid, rhs.n_valid)
    out["vacuum_branching_specialized"] = fe6.equal_through(rhs, o_main)
    out["order"] = o_main
    # consistency of the two routes: the unspecialized identity evaluated at
    # t = v^4 against the v-variable assembly above
    sub3 = order // 12
    lhs_t = (euler_phi(sub3).substitute_power(3) / euler_phi(3 * sub3)).substitute_power(4)
    rhs_t = (
        c0 * rr_a(3 * sub3).substitute_power(4)
        + (d0 * rr_b(3 * sub3).substitute_power(4)).shift(4)
    )
    o_sub = min(lhs_t.n_valid, rhs_t.n_valid)
    out["t_to_v4_substitution"] = lhs_t.equal_through(rhs_t, o_sub)
    return out


def homogeneous_graded_dim(coset: int, order: int) -> TruncSeries:
    """Dimension generating series of one coset of the state space: the coset
    theta series divided by phi^6 (six Heisenberg directions)."""
    from . import lattice as lat

    offset = {0: Fraction(0), 1: Fraction(2, 3), 2: Fraction(2, 3)}[coset]
    pts = lat.enumerate_coset_points(coset, 2 * (order + offset))
    cs = [Fraction(0)] * (order + 1)
    for p in pts:
        e = lat.norm(p) / 2 - offset
        if e.denominator == 1 and 0 <= int(e) <= order:
            cs[int(e)] += 1
    theta = TruncSeries.make(offset, cs)
    phi6 = euler_phi(order)
    phi6 = phi6 * phi6 * phi6
    phi6 = phi6 * phi6
    return theta * phi6.inverse()
