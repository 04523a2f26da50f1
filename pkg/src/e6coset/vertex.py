"""Vertex operator component actions on the lattice Fock space.

For a state v = b_1(-m_1)...b_k(-m_k) (x) e^a the generating series is the
normally ordered product of the derived Heisenberg fields b_j^(m_j - 1)(z)
with the exponential block E^-(-a,z) E^+(-a,z) e_a z^{a(0)}; the mode {v}_n
is the coefficient of z^{-n-1}.  Normal ordering places creation modes (and
the creation exponential) to the left of every annihilation-type operator,
with zero modes to the right of the lattice translation e_a; that placement
is what makes the translation-derivative identity hold.

Modes may be rational: acting from exponent a on exponent b, the z-powers all
lie in <a,b> + Z, so a mode n contributes only when n + <a,b> is an integer.
Expansion is exact; the grading law pins the finitely many series orders that
can reach the requested coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterable

from . import fock, lattice
from .fock import FockMonomial, State
from .lattice import GRAM3, RANK, LatticePoint

ModeIndex = Fraction


def _binom(x: int, r: int) -> int:
    """Polynomial binomial coefficient, valid for negative upper argument.

    Always an integer: a product of r consecutive integers divided by r!.
    """
    num = 1
    for j in range(r):
        num *= x - j
    return num // factorial(r)


def _pair3(direction: tuple[int, ...], i: int) -> int:
    """3 * <direction, lambda_i> for an integer direction vector."""
    return _pair_row(tuple(direction))[i - 1]


@lru_cache(maxsize=100_000)
def _pair_row(direction: tuple[int, ...]) -> tuple[int, ...]:
    """(3 * <direction, lambda_1>, ..., 3 * <direction, lambda_6>)."""
    return tuple(
        sum(direction[t] * GRAM3[t][col] for t in range(RANK) if direction[t])
        for col in range(RANK)
    )


@lru_cache(maxsize=None)
def _partitions(total: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Integer partitions of ``total`` as (part, multiplicity) tuples."""
    if total == 0:
        return ((),)
    out = []

    def rec(rem: int, maxpart: int, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rem, maxpart), 0, -1):
            for mult in range(rem // part, 0, -1):
                acc.append((part, mult))
                rec(rem - part * mult, part - 1, acc)
                acc.pop()

    rec(total, total, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _exp_creation_terms(direction: tuple[int, ...], degree: int):
    """z^degree terms of exp(sum_{k>=1} a(-k)/k z^k) for an integer direction.

    Returns (entries, common_den): entries are (factors, numerator) pairs over
    the shared integer denominator, with the direction expanded over the
    weight basis and duplicate factor multisets merged.
    """
    if degree == 0:
        return (((), 1),), 1
    idxs = [i for i in range(RANK) if direction[i]]
    raw: list[tuple[tuple, Fraction]] = []
    for partition in _partitions(degree):
        base = Fraction(1)
        slots: list[list[tuple[tuple[int, int], int]]] = []
        for part, mult in partition:
            base /= Fraction(part) ** mult * factorial(mult)
            choice = [((i + 1, part), direction[i]) for i in idxs]
            slots.extend([choice] * mult)

        def expand(j: int, facs: list, coeff: int):
            if j == len(slots):
                raw.append((tuple(facs), base * coeff))
                return
            for f, c in slots[j]:
                facs.append(f)
                expand(j + 1, facs, coeff * c)
                facs.pop()

        expand(0, [], 1)
    merged: dict[tuple, Fraction] = {}
    for facs, c in raw:
        key = tuple(sorted(facs))
        merged[key] = merged.get(key, Fraction(0)) + c
    den = 1
    for c in merged.values():
        if c:
            den = den * c.denominator // gcd(den, c.denominator)
    entries = tuple(
        (k, int(v * den)) for k, v in sorted(merged.items()) if v
    )
    return entries, den


@lru_cache(maxsize=None)
def _exp_creation_den_lcm(direction: tuple[int, ...], max_degree: int) -> int:
    """LCM of the creation-table denominators for degrees 0..max_degree."""
    den = 1
    for d in range(max_degree + 1):
        _, dd = _exp_creation_terms(direction, d)
        den = den * dd // gcd(den, dd)
    return den


def mode_action(v: State, n, w: State, trace: list | None = None) -> State:
    """The component operator {v}_n applied to w, exactly.

    ``n`` may be any rational number.  Modes whose z-power never matches any
    exponent pairing return the zero state (recorded in ``trace`` when given).
    """
    n = Fraction(n)
    result = State()
    acc = result.terms
    for vm, cv in v.terms.items():
        for wm, cw in w.terms.items():
            pair = _mode_monomials(vm, n, wm)
            if trace is not None:
                trace.append(
                    {
                        "v": fock.state_to_jsonable(State({vm: cv})),
                        "w": fock.state_to_jsonable(State({wm: cw})),
                        "mode": str(n),
                        "z_offset": str(lattice.inner_product(vm.exponent, wm.exponent)),
                        "off_lattice": not pair,
                        "terms": len(pair),
                    }
                )
            c0 = cv * cw
            for m, c in pair.items():
                s = acc.get(m, 0) + c0 * c
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
    return result


def _mode_monomials(vm: FockMonomial, n: Fraction, wm: FockMonomial) -> dict:
    """{v-monomial}_n applied to a w-monomial; returns monomial -> coefficient."""
    acc, den, exponent = _mode_terms_int(vm, n, wm)
    return {FockMonomial(k, exponent): Fraction(v, den) for k, v in acc.items() if v}


@lru_cache(maxsize=30_000)
def _mode_terms_int(
    vm: FockMonomial, n: Fraction, wm: FockMonomial
) -> tuple[dict, int, tuple]:
    """Integer core of the mode action: (factor-tuple -> numerator, den, exponent).

    All intermediate coefficients are integers over one per-call denominator:
    pairings of weight-basis vectors lie in (1/3)Z, field coefficients are
    integer binomials, and the creation-exponential tables carry their own
    integer denominators.
    """
    a = vm.exponent
    b = wm.exponent
    fields = vm.factors  # (i, m): the derived field of lambda_i with order m-1
    new_exponent = tuple(x + y for x, y in zip(a, b))
    pa = _pair_row(a)  # 3*<a, lambda_j>
    pb = _pair_row(b)
    # 3*(target - <a,b>) with target = -n-1; the mode contributes only when
    # this shift is divisible by 3 (i.e. the z-power matches the expansion).
    p0_3 = sum(a[t] * pb[t] for t in range(RANK) if a[t])  # 3*<a,b>
    n3 = 3 * n
    if n3.denominator != 1:
        return {}, 1, new_exponent
    shift3 = -int(n3) - 3 - p0_3
    if shift3 % 3:
        return {}, 1, new_exponent
    base_need = shift3 // 3
    eps = lattice.epsilon(a, b)
    # Global scale: one power of 3 per possible pairing, times the LCM of the
    # creation-table denominators up to the largest reachable degree.
    max_th = len(fields) + len(wm.factors)
    max_deg = base_need + sum(s for _, s in wm.factors) + sum(m for _, m in fields)
    exp_den = _exp_creation_den_lcm(a, max_deg) if max_deg >= 0 else 1
    DEN = 3**max_th * exp_den
    acc: dict[tuple, int] = {}
    nfields = len(fields)

    # Phase A: each field either defers to the creation side or contributes a
    # zero/annihilation mode applied to the w-factors (exponent still b).
    def phase_a(idx: int, curfac: tuple, zpow: int, num: int, th: int, deferred: tuple):
        if idx == nfields:
            phase_b(curfac, zpow, num, th, deferred)
            return
        i, m = fields[idx]
        sign = -1 if (m - 1) & 1 else 1
        # defer to creation side
        phase_a(idx + 1, curfac, zpow, num, th, deferred + ((i, m),))
        # zero mode: coefficient (-1)^(m-1) <lambda_i, b>
        if pb[i - 1]:
            phase_a(idx + 1, curfac, zpow - m, num * sign * pb[i - 1], th + 1, deferred)
        # positive modes: contract with one matching factor of the current state
        seen = set()
        for j, s in curfac:
            if (j, s) in seen:
                continue
            seen.add((j, s))
            g = GRAM3[i - 1][j - 1]
            if not g:
                continue
            mult = curfac.count((j, s))
            cc = sign * _binom(s + m - 1, m - 1) * mult * s * g
            if cc:
                rest = list(curfac)
                rest.remove((j, s))
                phase_a(idx + 1, tuple(rest), zpow - s - m, num * cc, th + 1, deferred)

    a_zero = not any(a)

    # Phase B: translation e_a, then the annihilation exponential of -a
    # contracting against what remains of the w-factors.
    def phase_b(curfac: tuple, zpow: int, num: int, th: int, deferred: tuple):
        num *= eps
        if a_zero:
            # no translation and trivial exponentials: only the empty kill set
            phase_c(curfac, base_need - zpow, num * 3 ** (max_th - th), deferred)
            return
        npos = len(curfac)
        for mask in range(1 << npos):
            n2 = num
            t2 = th
            zp2 = zpow
            rem = []
            for p in range(npos):
                j, s = curfac[p]
                if mask >> p & 1:
                    g = pa[j - 1]
                    if not g:
                        n2 = 0
                        break
                    n2 *= -g
                    t2 += 1
                    zp2 -= s
                else:
                    rem.append(curfac[p])
            if n2:
                phase_c(tuple(rem), base_need - zp2, n2 * 3 ** (max_th - t2), deferred)

    # Phase C: distribute the remaining z-degree over the deferred fields and
    # the creation exponential of a.
    def phase_c(kept: tuple, degree: int, num: int, deferred: tuple):
        if not deferred:
            if degree < 0 or (a_zero and degree):
                return
            entries, den = _exp_creation_terms(a, degree)
            n4 = num * (exp_den // den)
            for new_facs, ce in entries:
                key = tuple(sorted(kept + new_facs)) if new_facs else kept
                s = acc.get(key, 0) + n4 * ce
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
            return

        def rec(idx: int, rem_deg: int, facs: list, n4: int):
            if idx == len(deferred):
                if rem_deg < 0:
                    return
                entries, den = _exp_creation_terms(a, rem_deg)
                n5 = n4 * (exp_den // den)
                base = facs + list(kept)
                for new_facs, ce in entries:
                    key = tuple(sorted(base + list(new_facs)))
                    s = acc.get(key, 0) + n5 * ce
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
                return
            i, m = deferred[idx]
            sign = -1 if (m - 1) & 1 else 1
            for d in range(1 - m, rem_deg + 1):
                s = -d - m  # the (negative) mode index
                cc = sign * _binom(s + m - 1, m - 1)
                if cc:
                    facs.append((i, d + m))
                    rec(idx + 1, rem_deg - d, facs, n4 * cc)
                    facs.pop()

        rec(0, degree, [], num)

    phase_a(0, wm.factors, 0, 1, 0, ())
    return {k: v for k, v in acc.items() if v}, DEN, new_exponent


class QuadraticHeisenberg:
    """Fast evaluator for modes of weight-2 Heisenberg quadratics.

    Represents sum_{i<=j} c_ij lambda_i(-1)lambda_j(-1) (x) e^0 through the
    symmetric matrix S (S_ii = c_ii, S_ij = c_ij/2 off the diagonal) and
    evaluates {v}_n w via the contraction matrices S.G and G.S.G instead of
    walking the generic normal-ordering recursion.  Used by the Virasoro
    suites; agreement with the generic path is asserted in the tests.
    """

    def __init__(self, quad_terms: dict):
        den = 1
        for c in quad_terms.values():
            den = den * (2 * c.denominator) // gcd(den, 2 * c.denominator)
        S = [[0] * RANK for _ in range(RANK)]
        for mono_factors, c in quad_terms.items():
            (i, ni), (j, nj) = mono_factors
            if ni != 1 or nj != 1:
                raise ValueError("quadratic evaluator needs degree-1 factors")
            ci = int(c * den)
            if i == j:
                S[i - 1][i - 1] += ci
            else:
                assert ci % 2 == 0  # den carries the factor 2
                S[i - 1][j - 1] += ci // 2
                S[j - 1][i - 1] += ci // 2
        self.S = S
        self.den = den  # v = S/den in matrix form
        # T3[i][q] = sum_j S_ij G3[j][q] = 3 * (S G)_{iq}
        self.T3 = [
            [sum(S[i][j] * GRAM3[j][q] for j in range(RANK)) for q in range(RANK)]
            for i in range(RANK)
        ]
        # U9[p][q] = 9 * (G S G)_{pq}
        self.U9 = [
            [
                sum(GRAM3[p][i] * self.T3[i][q] for i in range(RANK))
                for q in range(RANK)
            ]
            for p in range(RANK)
        ]

    def mode_terms_int(self, n, wm: FockMonomial) -> tuple[dict, int, tuple]:
        """{v}_n on a monomial: (factors -> numerator, common denominator, exponent)."""
        b = wm.exponent
        DEN = 9 * self.den
        if Fraction(n).denominator != 1:
            return {}, DEN, b
        n1 = int(n) - 1  # slot modes satisfy s + t = n1
        pb = _pair_row(b)
        S, T3, U9 = self.S, self.T3, self.U9
        rvec = [sum(S[i][j] * pb[j] for j in range(RANK)) for i in range(RANK)]
        wvec = [sum(pb[i] * T3[i][q] for i in range(RANK)) for q in range(RANK)]
        facs = wm.factors
        degrees = sorted({s for _, s in facs})
        acc: dict[tuple, int] = {}

        def bump(key: tuple, val: int):
            s = acc.get(key, 0) + val
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)

        def removed(fs: tuple, item) -> tuple:
            lst = list(fs)
            lst.remove(item)
            return tuple(lst)

        # creation-creation: s, t <= -1 with s + t = n1
        for s in range(n1 + 1, 0):
            t = n1 - s
            for i in range(RANK):
                row = S[i]
                for j in range(RANK):
                    if row[j]:
                        bump(tuple(sorted(facs + ((i + 1, -s), (j + 1, -t)))), 9 * row[j])
        # creation-zero and zero-creation: one slot at 0 (needs n1 <= -1 or n1 >= ...)
        if n1 <= -1:
            # ordered splits (n1, 0) and (0, n1) contribute identically
            for i in range(RANK):
                if rvec[i]:
                    bump(tuple(sorted(facs + ((i + 1, -n1),))), 2 * 3 * rvec[i])
        # zero-zero
        if n1 == 0:
            zz = sum(rvec[j] * pb[j] for j in range(RANK))
            if zz:
                bump(facs, zz)
        # zero-annihilation (both orders): one slot 0, other slot t = n1 > 0
        if n1 >= 1 and n1 in degrees:
            t = n1
            seen = set()
            for q, s_ in facs:
                if s_ != t or (q, s_) in seen:
                    continue
                seen.add((q, s_))
                mult = facs.count((q, s_))
                val = 2 * t * mult * wvec[q - 1]
                if val:
                    bump(removed(facs, (q, s_)), val)
        # creation-annihilation (both orders): slot t > 0 contracts, slot s < 0 creates
        for t in degrees:
            s = n1 - t
            if t <= 0 or s >= 0:
                continue
            seen = set()
            for q, s_ in facs:
                if s_ != t or (q, s_) in seen:
                    continue
                seen.add((q, s_))
                mult = facs.count((q, s_))
                rest = removed(facs, (q, s_))
                for i in range(RANK):
                    val = 2 * 3 * t * mult * T3[i][q - 1]
                    if val:
                        bump(tuple(sorted(rest + ((i + 1, -s),))), val)
        # annihilation-annihilation: s, t >= 1 with s + t = n1
        if n1 >= 2:
            for t in degrees:
                s = n1 - t
                if t < 1 or s < 1 or s not in degrees:
                    continue
                seen_t = set()
                for q, t_ in facs:
                    if t_ != t or (q, t_) in seen_t:
                        continue
                    seen_t.add((q, t_))
                    mult_t = facs.count((q, t_))
                    rest = removed(facs, (q, t_))
                    seen_s = set()
                    for p, s_ in rest:
                        if s_ != s or (p, s_) in seen_s:
                            continue
                        seen_s.add((p, s_))
                        mult_s = rest.count((p, s_))
                        val = s * t * mult_s * mult_t * U9[p - 1][q - 1]
                        if val:
                            bump(removed(rest, (p, s_)), val)
        return acc, DEN, b


def exponential_sum(exponents) -> State:
    """Sum of pure lattice exponentials; items are exponents or (coeff, exponent)."""
    v = State()
    for item in exponents:
        coeff, beta = item if len(item) == 2 else (1, item)
        m = FockMonomial((), tuple(beta))
        c = v.terms.get(m, Fraction(0)) + Fraction(coeff)
        if c:
            v.terms[m] = c
        else:
            v.terms.pop(m, None)
    return v


def vertex_operator_mode(exponents, n, w: State) -> State:
    """Mode of a sum of pure lattice exponentials, e.g. an F4 root vector."""
    return mode_action(exponential_sum(exponents), n, w)


def paper_mode(v: State, m) -> ModeIndex:
    """Translate a degree-indexed operator subscript to a brace mode.

    For a homogeneous v the operator of degree-style index m is the brace
    mode {v}_{m + wt(v) - 1}; for a norm-2 lattice exponential the two
    conventions coincide.
    """
    wt = fock.weight(v)
    if wt is None:
        raise ValueError("paper_mode requires a homogeneous state")
    return Fraction(m) + wt - 1


def generalized_binomial(m, k: int) -> Fraction:
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(m) - j
    return num / factorial(k)


def bracket_direct(u: State, m, v: State, n, w: State) -> State:
    """[{u}_m, {v}_n] w evaluated operator by operator."""
    return mode_action(u, m, mode_action(v, n, w)) - mode_action(v, n, mode_action(u, m, w))


def bracket_expansion(u: State, m, v: State, n, w: State) -> State:
    """[{u}_m, {v}_n] w via the commutator sum over {u}_k v with binomial weights.

    The sum is finite: {u}_k v vanishes once the grading law forces negative
    weight.
    """
    wu, wv = fock.weight(u), fock.weight(v)
    if wu is None or wv is None:
        raise ValueError("bracket_expansion requires homogeneous u and v")
    out = State.zero()
    kmax = wu + wv  # beyond this {u}_k v has negative weight
    k = 0
    while k <= kmax:
        uv = mode_action(u, k, v)
        if uv:
            coeff = generalized_binomial(m, k)
            if coeff:
                out = out + coeff * mode_action(uv, Fraction(m) + Fraction(n) - k, w)
        k += 1
    return out


def commutator_check(u: State, m, v: State, n, w: State) -> tuple[bool, State, State]:
    """Compare both evaluations of [{u}_m, {v}_n] w; returns (ok, lhs, rhs)."""
    lhs = bracket_direct(u, m, v, n, w)
    rhs = bracket_expansion(u, m, v, n, w)
    return lhs == rhs, lhs, rhs


def derivative_check(omega_e6: State, v: State, w: State, n) -> tuple[bool, State, State]:
    """Check {L(-1)v}_n w = -n {v}_{n-1} w with L(-1) taken from the full
    conformal vector."""
    lm1v = mode_action(omega_e6, 0, v)  # L(-1) = {omega}_0
    lhs = mode_action(lm1v, n, w)
    rhs = -Fraction(n) * mode_action(v, Fraction(n) - 1, w)
    return lhs == rhs, lhs, rhs
