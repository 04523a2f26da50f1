"""States of the lattice Fock space: S(h^-) tensored with the group algebra of P.

A monomial is a finite multiset of creation factors lambda_i(-n) applied to an
exponential e^beta; a state is a finite rational linear combination of
monomials kept in normal form (sorted factors, no zero coefficients), so
equality of states is literal equality of the underlying maps.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

from . import lattice
from .lattice import GRAM3, RANK, F4Weight, LatticePoint

Direction = Union[LatticePoint, Sequence[Fraction]]


class FockMonomial(NamedTuple):
    """factors: sorted tuple of (i, n) meaning lambda_i(-n); exponent: point of P."""

    factors: tuple[tuple[int, int], ...]
    exponent: tuple[int, ...]

    @staticmethod
    def make(factors: Iterable[tuple[int, int]], exponent: Sequence[int]) -> "FockMonomial":
        fs = tuple(sorted(factors))
        for i, n in fs:
            if not (1 <= i <= RANK and n >= 1):
                raise ValueError(f"bad factor ({i}, {n})")
        return FockMonomial(fs, tuple(int(x) for x in exponent))

    @property
    def fock_degree(self) -> int:
        return sum(n for _, n in self.factors)

    def total_weight(self) -> Fraction:
        return self.fock_degree + lattice.norm(self.exponent) / 2


VACUUM_MONOMIAL = FockMonomial((), (0,) * RANK)


class State:
    """A finite linear combination of Fock monomials with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[FockMonomial, Fraction] | None = None):
        self.terms: dict[FockMonomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = Fraction(c)

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero() -> "State":
        return State()

    @staticmethod
    def vacuum() -> "State":
        return State({VACUUM_MONOMIAL: Fraction(1)})

    @staticmethod
    def exponential(beta: Sequence[int], coeff=1) -> "State":
        """The pure exponential 1 (x) e^beta."""
        return State({FockMonomial((), tuple(int(x) for x in beta)): Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, State) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "State") -> "State":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = State()
        res.terms = out
        return res

    def __sub__(self, other: "State") -> "State":
        return self + (-1) * other

    def __neg__(self) -> "State":
        return (-1) * self

    def __rmul__(self, scalar) -> "State":
        scalar = Fraction(scalar)
        res = State()
        if scalar:
            res.terms = {m: scalar * c for m, c in self.terms.items()}
        return res

    __mul__ = __rmul__

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "State(0)"
        bits = [f"{c}*{m.factors}e^{m.exponent}" for m, c in sorted(self.terms.items())]
        return "State(" + " + ".join(bits[:6]) + (" + ..." if len(bits) > 6 else "") + ")"

    def coefficient(self, monomial: FockMonomial) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def map_coefficients(self, fn) -> "State":
        res = State()
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                res.terms[m] = v
        return res


def _direction_coords(direction: Direction) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in direction)


def _pair_with_lambda(direction: tuple[Fraction, ...], i: int) -> Fraction:
    """<direction, lambda_i> computed from the integer Gram data."""
    col = i - 1
    return Fraction(sum(direction[t] * GRAM3[t][col] for t in range(RANK)), 3)


def heisenberg(direction: Direction, n: int, state: State) -> State:
    """Apply the Heisenberg mode h(n) for h the given Cartan direction.

    n < 0 creates (expanding h over the weight basis), n > 0 annihilates by
    contraction against matching factors, and n = 0 scales each monomial by
    the pairing of h with its exponent.
    """
    d = _direction_coords(direction)
    out = State()
    acc = out.terms
    if n < 0:
        for m, c in state.terms.items():
            for i in range(RANK):
                if d[i]:
                    m2 = FockMonomial(tuple(sorted(m.factors + ((i + 1, -n),))), m.exponent)
                    s = acc.get(m2, 0) + c * d[i]
                    if s:
                        acc[m2] = s
                    else:
                        acc.pop(m2, None)
    elif n == 0:
        for m, c in state.terms.items():
            val = lattice.inner_product(d, m.exponent)
            if val:
                acc[m] = c * val
    else:
        for m, c in state.terms.items():
            seen = set()
            for i, k in m.factors:
                if k != n or (i, k) in seen:
                    continue
                seen.add((i, k))
                mult = m.factors.count((i, k))
                coef = c * mult * n * _pair_with_lambda(d, i)
                if coef:
                    fs = list(m.factors)
                    fs.remove((i, k))
                    m2 = FockMonomial(tuple(fs), m.exponent)
                    s = acc.get(m2, 0) + coef
                    if s:
                        acc[m2] = s
                    else:
                        acc.pop(m2, None)
    return out


def creation_product(direction_modes: Iterable[tuple[Direction, int]], base: State) -> State:
    """Apply a product of creation modes h(n) (all n < 0) to a state."""
    s = base
    for d, n in direction_modes:
        if n >= 0:
            raise ValueError("creation_product takes negative modes only")
        s = heisenberg(d, n, s)
    return s


def weight(state: State) -> Fraction | None:
    """Common total weight of the monomials, or None if inhomogeneous/zero."""
    ws = {m.total_weight() for m in state.terms}
    if len(ws) == 1:
        return ws.pop()
    return None


def f4_weight_sector(state: State) -> F4Weight | None:
    """Common F4 weight of the monomial exponents, or None if mixed/zero."""
    sectors = {lattice.project_to_f4(m.exponent) for m in state.terms}
    if len(sectors) == 1:
        return sectors.pop()
    return None


def coset_of(state: State) -> int | None:
    cosets = {lattice.coset_index(LatticePoint(m.exponent)) for m in state.terms}
    if len(cosets) == 1:
        return cosets.pop()
    return None


def tau_hat(state: State) -> State:
    """The lift of the diagram flip: permutes factor directions and exponents."""
    res = State()
    for m, c in state.terms.items():
        fs = tuple(sorted((lattice.tau_index(i), n) for i, n in m.factors))
        res.terms[FockMonomial(fs, tuple(lattice.tau(LatticePoint(m.exponent))))] = c
    return res


@lru_cache(maxsize=None)
def _fock_multisets(degree: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All sorted factor tuples of total degree ``degree``."""
    if degree == 0:
        return ((),)
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(remaining: int, minfac: tuple[int, int], acc: list[tuple[int, int]]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for n in range(1, remaining + 1):
            for i in range(1, RANK + 1):
                f = (i, n)
                if f < minfac:
                    continue
                acc.append(f)
                rec(remaining - n, f, acc)
                acc.pop()

    rec(degree, (0, 0), [])
    return tuple(sorted(out))


def basis_of_graded_piece(
    coset: int, total_weight, sector: F4Weight | None = None
) -> list[FockMonomial]:
    """All monomials of the given coset and total weight, optionally filtered
    to one F4 weight sector.  Deterministic order.

    Returns [] with no error if the weight is incompatible with the coset
    (the graded piece is genuinely empty in that case).
    """
    total_weight = Fraction(total_weight)
    if total_weight < 0:
        return []
    points = lattice.enumerate_coset_points(coset, 2 * total_weight)
    out: list[FockMonomial] = []
    for p in points:
        if sector is not None and lattice.project_to_f4(p) != sector:
            continue
        rem = total_weight - lattice.norm(p) / 2
        if rem.denominator != 1 or rem < 0:
            continue
        for fs in _fock_multisets(int(rem)):
            out.append(FockMonomial(fs, tuple(p)))
    out.sort()
    return out


# -- serialization -----------------------------------------------------------


def state_to_jsonable(state: State) -> list[dict]:
    items = sorted(state.terms.items())
    return [
        {
            "factors": [[i, n] for i, n in m.factors],
            "exponent": list(m.exponent),
            "coeff": str(c),
        }
        for m, c in items
    ]


def state_from_jsonable(data: Iterable[dict]) -> State:
    res = State()
    for item in data:
        m = FockMonomial.make(
            [(int(i), int(n)) for i, n in item["factors"]], item["exponent"]
        )
        res.terms[m] = res.terms.get(m, Fraction(0)) + Fraction(item["coeff"])
    res.terms = {m: c for m, c in res.terms.items() if c}
    return res


def dump_state(state: State) -> str:
    return json.dumps(state_to_jsonable(state), indent=1)


def load_state(text: str) -> State:
    return state_from_jsonable(json.loads(text))
