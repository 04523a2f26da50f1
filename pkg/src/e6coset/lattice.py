"""The E6 root and weight lattices, their bilinear form and sign cocycle.

Coordinates
-----------
Every lattice point is stored as a 6-tuple of integers in the basis of
fundamental weights lambda_1..lambda_6.  Node numbering follows the Dynkin
diagram with the chain 1-3-4-5-6 and node 2 attached to node 4.  Simple-root
coordinates are obtained through the Cartan matrix (alpha_i is the i-th row),
so membership in the root lattice Q becomes an integrality test.

The diagram flip tau swaps nodes 1<->6 and 3<->5; its fixed subalgebra is of
type F4 with simple roots beta_1 = alpha_2, beta_2 = alpha_4,
beta_3 = (alpha_3+alpha_5)/2, beta_4 = (alpha_1+alpha_6)/2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

from .linalg import invert, ldl

RANK = 6

# Cartan matrix: chain 1-3-4-5-6, node 2 on node 4.
_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4))
_CARTAN = [[2 if i == j else 0 for j in range(RANK)] for i in range(RANK)]
for _a, _b in _EDGES:
    _CARTAN[_a - 1][_b - 1] = _CARTAN[_b - 1][_a - 1] = -1

# Gram matrix of the fundamental-weight basis = inverse Cartan matrix.
# All entries lie in (1/3)Z; GRAM3 holds the integer matrix 3*Gram so that
# inner products can be computed in pure integer arithmetic.
_GRAM = invert(_CARTAN)
GRAM3 = [[int(3 * x) for x in row] for row in _GRAM]
assert all(Fraction(GRAM3[i][j], 3) == _GRAM[i][j] for i in range(6) for j in range(6))

_TAU_PERM = (5, 1, 4, 3, 2, 0)  # 1<->6, 3<->5 on zero-based indices

# Sign cocycle on the weight lattice: the bilinear extension of a fixed
# tau-invariant choice on the fundamental weights.  Only the (-1)-entries are
# stored; epsilon(u, v) = (-1)^{sum of u_i v_j over these index pairs}.
_EPS_NEG_WEIGHT = ((1, 0), (1, 5), (2, 0), (3, 1), (4, 5))

# Alternative cocycle defined on simple-root coordinates (root lattice only).
# Kept as a separate configuration; it is NOT interchangeable with the weight
# cocycle and the two are never mixed in one computation.
_EPS_NEG_ROOT = ((0, 2), (1, 3), (2, 3), (4, 3), (5, 4))

Coords = Union["LatticePoint", Sequence[int]]


class LatticePoint(tuple):
    """An element of the E6 weight lattice P in fundamental-weight coordinates."""

    def __new__(cls, coords: Iterable[int]):
        coords = tuple(coords)
        if len(coords) != RANK:
            raise ValueError(f"expected {RANK} coordinates, got {len(coords)}")
        if not all(isinstance(c, int) for c in coords):
            raise TypeError("lattice point coordinates must be integers")
        return super().__new__(cls, coords)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self)

    def __add__(self, other):
        return LatticePoint(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return LatticePoint(a - b for a, b in zip(self, other))

    def __neg__(self):
        return LatticePoint(-a for a in self)

    def __mul__(self, k: int):
        return LatticePoint(k * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"LatticePoint{self.coords}"


ZERO = LatticePoint((0,) * RANK)


def fundamental_weight(i: int) -> LatticePoint:
    """lambda_i for i in 1..6."""
    return LatticePoint(1 if k == i - 1 else 0 for k in range(RANK))


def simple_root(i: int) -> LatticePoint:
    """alpha_i for i in 1..6, in fundamental-weight coordinates."""
    return LatticePoint(_CARTAN[i - 1])


def from_root_coords(coeffs: Sequence[int]) -> LatticePoint:
    """Build the point sum(coeffs[i] * alpha_{i+1}) from simple-root coordinates."""
    return LatticePoint(
        sum(coeffs[j] * _CARTAN[j][i] for j in range(RANK)) for i in range(RANK)
    )


def cartan_matrix() -> list[list[int]]:
    return [row[:] for row in _CARTAN]


def gram_matrix() -> list[list[Fraction]]:
    return [[Fraction(x, 3) for x in row] for row in GRAM3]


def inner_product(u: Sequence, v: Sequence) -> Fraction:
    """Symmetric bilinear form; accepts integer or rational coordinate vectors."""
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = GRAM3[i]
            total += ui * sum(row[j] * v[j] for j in range(RANK) if v[j])
    return Fraction(total, 3)


def norm(v: Sequence) -> Fraction:
    return inner_product(v, v)


def root_coords(v: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of v in the simple-root basis (rational in general)."""
    return tuple(
        sum(Fraction(GRAM3[i][j] * v[i], 3) for i in range(RANK)) for j in range(RANK)
    )


def in_root_lattice(v: Sequence) -> bool:
    return all(c.denominator == 1 for c in root_coords(v))


def tau(v: LatticePoint) -> LatticePoint:
    """The order-2 diagram automorphism: swaps nodes 1<->6 and 3<->5."""
    return LatticePoint(v[p] for p in _TAU_PERM)


def tau_index(i: int) -> int:
    """Image of node i in 1..6 under the diagram flip."""
    return _TAU_PERM[i - 1] + 1


def epsilon(u: Sequence[int], v: Sequence[int]) -> int:
    """The sign cocycle on P x P (bilinear extension of the weight-basis choice)."""
    s = 0
    for i, j in _EPS_NEG_WEIGHT:
        s += u[i] * v[j]
    return -1 if s & 1 else 1


def epsilon_root_lattice(u: LatticePoint, v: LatticePoint) -> int:
    """The alternative cocycle on Q x Q, bilinear on simple-root coordinates.

    Raises ValueError off the root lattice.  Provided for standalone root
    lattice experiments; all vertex-operator computations use ``epsilon``.
    """
    uc, vc = root_coords(u), root_coords(v)
    if not all(c.denominator == 1 for c in uc + vc):
        raise ValueError("epsilon_root_lattice requires both points in Q")
    s = 0
    for i, j in _EPS_NEG_ROOT:
        s += int(uc[i]) * int(vc[j])
    return -1 if s & 1 else 1


def coset_index(v: LatticePoint) -> int:
    """Index of v mod Q: 0 for Q, 1 for Q + lambda_1, 2 for Q + lambda_6."""
    if in_root_lattice(v):
        return 0
    if in_root_lattice(v - fundamental_weight(1)):
        return 1
    if in_root_lattice(v - fundamental_weight(6)):
        return 2
    raise AssertionError("unreachable: P/Q has order 3")


@lru_cache(maxsize=None)
def _coset_representative(idx: int) -> LatticePoint:
    return (ZERO, fundamental_weight(1), fundamental_weight(6))[idx]


def enumerate_coset_points(coset: int, max_norm: Fraction) -> list[LatticePoint]:
    """All points of the coset P_coset with squared length <= max_norm.

    Exhaustive by construction: the quadratic form is decomposed as a weighted
    sum of squares (exact LDL), giving provable per-coordinate bounds, and the
    enumeration walks exactly the integer points inside those bounds.
    """
    if coset not in (0, 1, 2):
        raise ValueError("coset must be 0, 1 or 2")
    max_norm = Fraction(max_norm)
    if max_norm < 0:
        return []
    shift = root_coords(_coset_representative(coset))  # rational alpha-coordinates
    L, D = _cartan_ldl()
    found: list[LatticePoint] = []

    def descend(i: int, xs: list[int], budget: Fraction) -> None:
        if i < 0:
            found.append(_coset_representative(coset) + from_root_coords(xs))
            return
        # z_i = (shift_i + x_i) + sum_{j>i} L[j][i] (shift_j + x_j)
        tail = sum(L[j][i] * (shift[j] + xs[j]) for j in range(i + 1, RANK))
        center = -(shift[i] + tail)
        # D[i] * (x_i - center)^2 <= budget
        halfwidth2 = budget / D[i]
        x = _floor_sqrt_upper(center, halfwidth2)
        lo = _ceil_sqrt_lower(center, halfwidth2)
        for xi in range(lo, x + 1):
            z = xi - center
            rem = budget - D[i] * z * z
            if rem >= 0:
                xs[i] = xi
                descend(i - 1, xs, rem)
        xs[i] = 0

    descend(RANK - 1, [0] * RANK, max_norm)
    # The shift arithmetic above works in alpha-coordinates; rebuild each point
    # exactly in weight coordinates and deduplicate defensively.
    uniq = sorted(set(found))
    return [LatticePoint(p) for p in uniq]


def _floor_sqrt_upper(center: Fraction, r2: Fraction) -> int:
    """Largest integer x with (x - center)^2 <= r2 (exact rational arithmetic)."""
    if r2 < 0:
        return -(10**9)
    hi = int(center) + 1
    while Fraction(hi - center) ** 2 <= r2:
        hi += 1
    while Fraction(hi - center) ** 2 > r2:
        hi -= 1
    return hi


def _ceil_sqrt_lower(center: Fraction, r2: Fraction) -> int:
    if r2 < 0:
        return 10**9
    lo = int(center) - 1
    while Fraction(lo - center) ** 2 <= r2:
        lo -= 1
    while Fraction(lo - center) ** 2 > r2:
        lo += 1
    return lo


@lru_cache(maxsize=1)
def _cartan_ldl():
    return ldl(_CARTAN)


@lru_cache(maxsize=1)
def roots() -> tuple[LatticePoint, ...]:
    """The 72 roots: norm-2 points of the root lattice Q."""
    result = tuple(enumerate_coset_points(0, Fraction(2)))
    result = tuple(r for r in result if norm(r) == 2)
    assert len(result) == 72, f"expected 72 roots, found {len(result)}"
    return result


# The highest root, hardcoded in simple-root coordinates.
THETA = from_root_coords([1, 2, 2, 3, 2, 1])
assert norm(THETA) == 2
assert all(inner_product(THETA, fundamental_weight(i)) >= 0 for i in range(1, 7))

# The norm-2 roots entering the coset conformal vector: differences between a
# tau-moved root and its flip.  gamma_3 = gamma_1 + gamma_2.
GAMMA1 = simple_root(1) - simple_root(6)
GAMMA2 = simple_root(3) - simple_root(5)
GAMMA3 = GAMMA1 + GAMMA2

# A convenient tau-moved pair of roots projecting onto the F4 weight omega_4.
MU = from_root_coords([1, 1, 2, 2, 1, 1])
TAU_MU = from_root_coords([1, 1, 1, 2, 2, 1])
assert tau(MU) == TAU_MU and norm(MU) == 2

# Exponents of the weight-2/3 singular vectors in the two nontrivial cosets.
NU1 = fundamental_weight(6) - fundamental_weight(1)
NU2 = fundamental_weight(3) - fundamental_weight(5)
NU3 = -(NU1 + NU2)


class F4Weight(NamedTuple):
    """A weight of F4 in the basis of its fundamental weights omega_1..omega_4."""

    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def __add__(self, other):
        return F4Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __repr__(self):
        return f"F4Weight({', '.join(str(c) for c in self.coords)})"


F4_ZERO = F4Weight((Fraction(0),) * 4)
OMEGA4 = F4Weight((Fraction(0), Fraction(0), Fraction(0), Fraction(1)))


def project_to_f4(v: Sequence) -> F4Weight:
    """Restriction of an E6 weight to the F4 Cartan subalgebra.

    On the weight basis: lambda_1, lambda_6 -> omega_4; lambda_2 -> omega_1;
    lambda_4 -> omega_2; lambda_3, lambda_5 -> omega_3.
    """
    m = [Fraction(x) for x in v]
    return F4Weight((m[1], m[3], m[2] + m[4], m[0] + m[5]))


class F4SimpleRootData(NamedTuple):
    name: str
    heisenberg: LatticePoint         # the Cartan element h_{beta_i} as a lattice vector
    weight: tuple[Fraction, ...]     # beta_i itself (rational weight coordinates)
    exponents: tuple[LatticePoint, ...]  # root vector recipe: sum of e^alpha over these


def f4_simple_root_data() -> list[F4SimpleRootData]:
    """Simple-root data for the F4 subalgebra fixed by the diagram flip."""
    a = simple_root
    half = lambda u, v: tuple(Fraction(x + y, 2) for x, y in zip(u, v))
    return [
        F4SimpleRootData("beta_1", a(2), tuple(Fraction(c) for c in a(2)), (a(2),)),
        F4SimpleRootData("beta_2", a(4), tuple(Fraction(c) for c in a(4)), (a(4),)),
        F4SimpleRootData("beta_3", a(3) + a(5), half(a(3), a(5)), (a(3), a(5))),
        F4SimpleRootData("beta_4", a(1) + a(6), half(a(1), a(6)), (a(1), a(6))),
    ]


def f4_cartan_dual_pairs() -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    """The four Cartan dual pairs (h_{beta_i}, h_{omega_i}) with pairing 1."""
    w = fundamental_weight
    half = lambda u, v: tuple(Fraction(x + y, 2) for x, y in zip(u, v))
    full = lambda u: tuple(Fraction(c) for c in u)
    data = f4_simple_root_data()
    duals = [full(w(2)), full(w(4)), half(w(3), w(5)), half(w(1), w(6))]
    pairs = [(full(d.heisenberg), dual) for d, dual in zip(data, duals)]
    for h, hd in pairs:
        assert inner_product(h, hd) == 1
    return pairs


class F4BasisPair(NamedTuple):
    """One basis element of the F4 subalgebra with its metric dual.

    ``kind`` is "cartan", "fixed" (a tau-fixed root vector) or "paired"
    (x_alpha + x_{tau alpha} for a tau-moved root).  Root-vector recipes are
    (coefficient, exponent) lists: the operator is the matching combination of
    lattice vertex operators, the Cartan entries are Heisenberg directions.
    """

    kind: str
    basis: tuple
    dual: tuple


def f4_basis_dual_pairs() -> list[F4BasisPair]:
    """All 52 basis/dual pairs of the F4 subalgebra.

    Root-vector duals are normalized so the invariant pairing of basis and
    dual is exactly 1 (the pairing of x_alpha with x_{-alpha} is
    epsilon(alpha, -alpha)); the normalization is asserted below.
    """
    out = [
        F4BasisPair("cartan", (h,), (hd,)) for h, hd in f4_cartan_dual_pairs()
    ]
    seen: set[LatticePoint] = set()
    for r in roots():
        tr = tau(r)
        if tr == r:
            e = epsilon(r, -r)
            out.append(F4BasisPair("fixed", ((1, r),), ((e, -r),)))
        elif r not in seen:
            seen.update({r, tr})
            e = epsilon(r, -r)
            assert epsilon(tr, -tr) == e
            out.append(
                F4BasisPair(
                    "paired",
                    ((1, r), (1, tr)),
                    ((Fraction(e, 2), -r), (Fraction(e, 2), -tr)),
                )
            )
    for pair in out:
        if pair.kind != "cartan":
            val = sum(
                cb * cd * epsilon(rb, rd)
                for cb, rb in pair.basis
                for cd, rd in pair.dual
                if rb + rd == ZERO
            )
            assert val == 1, f"dual pairing != 1 for {pair}"
    assert len(out) == 52
    return out


def serialize_point(v: LatticePoint) -> list[int]:
    return list(v.coords)


def deserialize_point(data: Sequence[int]) -> LatticePoint:
    return LatticePoint(int(x) for x in data)


def serialize_f4_weight(w: F4Weight) -> list[str]:
    return [str(c) for c in w.coords]


def deserialize_f4_weight(data: Sequence[str]) -> F4Weight:
    return F4Weight(tuple(Fraction(s) for s in data))
