"""Joint highest weight vectors for the coset Virasoro and the affine F4 action.

A state v is a joint HWV when
  1. the affine raising operator attached to e^{-theta} in degree one kills it,
  2. the four F4 simple raising operators x_{beta_i}(0) kill it,
  3. the positive coset Virasoro modes L(1), L(2) kill it,
  4. L(0) acts by the prescribed rational eigenvalue h,
  5. the F4 Cartan subalgebra acts by the prescribed F4 weight.

The eight closed-form HWVs of the branching decomposition are built here, the
weight-3 singular vector is reconstructed from its fractional-mode recipe, and
an independent nullspace search re-derives the HWVs from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import fock, lattice, linalg, vertex, virasoro
from .fock import FockMonomial, State
from .lattice import F4Weight, LatticePoint


@dataclass
class ConditionResult:
    name: str
    passed: bool
    eigenvalue: Fraction | None = None
    residual_terms: int = 0

    def to_jsonable(self):
        return {
            "condition": self.name,
            "pass": self.passed,
            "eigenvalue": None if self.eigenvalue is None else str(self.eigenvalue),
            "residual_terms": self.residual_terms,
        }


@dataclass
class HwvReport:
    vector_id: str
    expected_h: Fraction
    expected_sector: F4Weight
    conditions: list[ConditionResult] = field(default_factory=list)
    computed_h: Fraction | None = None
    computed_sector: F4Weight | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_jsonable(self):
        return {
            "vector": self.vector_id,
            "pass": self.ok,
            "expected_h": str(self.expected_h),
            "computed_h": None if self.computed_h is None else str(self.computed_h),
            "expected_f4_weight": lattice.serialize_f4_weight(self.expected_sector),
            "computed_f4_weight": (
                None
                if self.computed_sector is None
                else lattice.serialize_f4_weight(self.computed_sector)
            ),
            "conditions": [c.to_jsonable() for c in self.conditions],
        }


def _eigen_split(applied: State, v: State) -> tuple[Fraction | None, bool]:
    """If applied == k*v for a scalar k, return (k, True); else (None, False)."""
    if not applied:
        return Fraction(0), True
    probe = next(iter(v.terms))
    k = applied.coefficient(probe) / v.terms[probe]
    return (k, True) if applied == k * v else (None, False)


def raising_operators() -> list[tuple[str, object]]:
    """Condition-2 operators: the degree-0 modes of the F4 simple root vectors."""
    ops = []
    for d in lattice.f4_simple_root_data():
        ops.append((d.name, vertex.exponential_sum(d.exponents)))
    return ops


def check_hwv(v: State, h, sector: F4Weight, vector_id: str = "state") -> HwvReport:
    """Evaluate the five HWV conditions exactly."""
    if not v:
        raise ValueError("the zero vector cannot be a highest weight vector")
    h = Fraction(h)
    omega = virasoro.omega_coset()
    rep = HwvReport(vector_id, h, sector)

    r1 = vertex.vertex_operator_mode([-lattice.THETA], 1, v)
    rep.conditions.append(ConditionResult("affine_raising_theta", not r1, residual_terms=len(r1)))

    for name, op in raising_operators():
        r2 = vertex.mode_action(op, 0, v)
        rep.conditions.append(ConditionResult(f"raising_{name}", not r2, residual_terms=len(r2)))

    for mode in (1, 2):
        r3 = virasoro.L(mode, omega, v)
        rep.conditions.append(
            ConditionResult(f"coset_L({mode})", not r3, residual_terms=len(r3))
        )

    l0 = virasoro.L(0, omega, v)
    k, is_eigen = _eigen_split(l0, v)
    rep.computed_h = k
    rep.conditions.append(ConditionResult("coset_L(0)", is_eigen and k == h, eigenvalue=k))

    sector_ok = True
    for d in lattice.f4_simple_root_data():
        expected = lattice.inner_product(
            [Fraction(x) for x in sector_expansion(sector)], d.heisenberg
        )
        applied = fock.heisenberg(d.heisenberg, 0, v)
        k5, is_eigen5 = _eigen_split(applied, v)
        ok5 = is_eigen5 and k5 == expected
        sector_ok = sector_ok and ok5
        rep.conditions.append(ConditionResult(f"cartan_{d.name}", ok5, eigenvalue=k5))
    rep.computed_sector = fock.f4_weight_sector(v)
    return rep


def sector_expansion(sector: F4Weight) -> tuple[Fraction, ...]:
    """An E6 weight-space representative of an F4 weight (for pairing with the
    F4 Cartan subalgebra the choice of representative does not matter)."""
    w = lattice.fundamental_weight
    reps = [
        [Fraction(c) for c in w(2)],
        [Fraction(c) for c in w(4)],
        [Fraction(a + b, 2) for a, b in zip(w(3), w(5))],
        [Fraction(a + b, 2) for a, b in zip(w(1), w(6))],
    ]
    out = [Fraction(0)] * lattice.RANK
    for c, rep in zip(sector.coords, reps):
        for t in range(lattice.RANK):
            out[t] += c * rep[t]
    return tuple(out)


# -- the eight closed-form HWVs ------------------------------------------------


@dataclass(frozen=True)
class BuiltinHwv:
    name: str
    home: str  # which level-1 module the vector lives in
    h: Fraction
    sector: F4Weight
    state: State


def _p_vector() -> State:
    """The weight-2 HWV over the omega_4 sector.

    Heisenberg dressing (-2a_1 - a_3 + a_5 + 2a_6)(-1) over e^mu, its negative
    over e^{tau mu}, plus exponentials at mu +- gamma_1.
    """
    d = (
        -2 * lattice.simple_root(1)
        - lattice.simple_root(3)
        + lattice.simple_root(5)
        + 2 * lattice.simple_root(6)
    )
    s = fock.creation_product([(d, -1)], State.exponential(lattice.MU))
    s = s + fock.creation_product([(-1 * d, -1)], State.exponential(lattice.TAU_MU))
    s = s + State.exponential(lattice.MU + lattice.GAMMA1, 3)
    s = s + State.exponential(lattice.TAU_MU - lattice.GAMMA1, 3)
    return s


def u_closed_form() -> State:
    """Closed form of the weight-3 singular vector in the vacuum sector:
    (1/6) sum nu_i(-1)^3 plus half-strength Heisenberg dressings over the six
    exponentials e^{+-gamma_i}.
    """
    vac = State.vacuum()
    s = State.zero()
    for nu in (lattice.NU1, lattice.NU2, lattice.NU3):
        s = s + Fraction(1, 6) * fock.creation_product([(nu, -1)] * 3, vac)
    dressings = (
        (lattice.GAMMA1, lattice.NU2),
        (lattice.GAMMA2, lattice.NU1),
        (lattice.GAMMA3, -1 * lattice.NU3),
    )
    for g, d in dressings:
        for sign in (1, -1):
            s = s + Fraction(1, 2) * fock.creation_product(
                [(d, -1)], State.exponential(sign * g)
            )
    return s


def builtin_hwvs() -> list[BuiltinHwv]:
    f = Fraction
    om4 = lattice.OMEGA4
    om0 = lattice.F4_ZERO
    R = (
        State.exponential(lattice.NU1)
        + State.exponential(lattice.NU2)
        - State.exponential(lattice.NU3)
    )
    return [
        BuiltinHwv("vacuum", "level1_adjoint", f(0), om0, State.vacuum()),
        BuiltinHwv(
            "mu_minus_taumu",
            "level1_adjoint",
            f(2, 5),
            om4,
            State.exponential(lattice.MU) - State.exponential(lattice.TAU_MU),
        ),
        BuiltinHwv("p_vector", "level1_adjoint", f(7, 5), om4, _p_vector()),
        BuiltinHwv("u_vector", "level1_adjoint", f(3), om0, u_closed_form()),
        BuiltinHwv(
            "e_lambda1",
            "level1_weight1",
            f(1, 15),
            om4,
            State.exponential(lattice.fundamental_weight(1)),
        ),
        BuiltinHwv("r_vector", "level1_weight1", f(2, 3), om0, R),
        BuiltinHwv(
            "e_lambda6",
            "level1_weight6",
            f(1, 15),
            om4,
            State.exponential(lattice.fundamental_weight(6)),
        ),
        BuiltinHwv("tau_r_vector", "level1_weight6", f(2, 3), om0, fock.tau_hat(R)),
    ]


@dataclass
class UConstruction:
    milestones: dict
    result: State
    matches_closed_form: bool


def construct_u() -> UConstruction:
    """Rebuild the weight-3 singular vector from fractional modes of the
    weight-2/3 vectors, checking the intermediate products along the way."""
    om = virasoro.omega_coset().state
    R = (
        State.exponential(lattice.NU1)
        + State.exponential(lattice.NU2)
        - State.exponential(lattice.NU3)
    )
    tR = fock.tau_hat(R)
    m23 = vertex.mode_action(R, Fraction(-2, 3), tR)
    m53 = vertex.mode_action(R, Fraction(-5, 3), tR)
    m83 = vertex.mode_action(R, Fraction(-8, 3), tR)
    om2 = vertex.mode_action(om, -2, State.vacuum())
    result = m83 - Fraction(5, 2) * om2
    closed = u_closed_form()
    cons = UConstruction(
        {
            "R_mode_-2/3_is_zero": not m23,
            "R_mode_-5/3_is_5_omega": m53 == 5 * om,
            "omega_mode_-2_terms": len(om2),
        },
        result,
        result == closed,
    )
    if not cons.matches_closed_form:
        diff = result - closed
        raise AssertionError(
            f"singular vector reconstruction differs from closed form by {len(diff)} terms"
        )
    return cons


# -- independent nullspace search ---------------------------------------------


def hwv_condition_operators() -> list[tuple[str, object]]:
    """The operators whose joint kernel (within a sector) is the HWV space:
    conditions 1-3.  Condition 5 is imposed by restricting the basis to one
    sector; condition 4 reads off the eigenvalue afterwards."""
    ops: list[tuple[str, object]] = [
        ("theta", lambda w: vertex.vertex_operator_mode([-lattice.THETA], 1, w))
    ]
    for name, op_state in raising_operators():
        ops.append((name, lambda w, s=op_state: vertex.mode_action(s, 0, w)))
    omega = virasoro.omega_coset()
    for mode in (1, 2):
        ops.append((f"L({mode})", lambda w, m=mode: virasoro.L(m, omega, w)))
    return ops


@dataclass
class NullspaceResult:
    coset: int
    total_weight: Fraction
    sector: F4Weight
    basis_monomials: list[FockMonomial]
    vectors: list[State]

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def find_hwvs(
    coset: int,
    total_weight,
    sector: F4Weight,
    max_dimension: int = 20_000,
) -> NullspaceResult:
    """Exact nullspace of the HWV conditions on one graded, sector-restricted
    piece.  Vectors are normalized to primitive integer coordinates with a
    positive leading entry, in a deterministic basis order.
    """
    total_weight = Fraction(total_weight)
    basis = fock.basis_of_graded_piece(coset, total_weight, sector)
    if len(basis) > max_dimension:
        raise ValueError(
            f"graded piece has dimension {len(basis)}, above the cap {max_dimension}; "
            "raise max_dimension to proceed"
        )
    ops = hwv_condition_operators()
    columns: list[dict] = []
    row_index: dict = {}
    for mono in basis:
        col: dict[int, Fraction] = {}
        w = State({mono: Fraction(1)})
        for opi, (_, op) in enumerate(ops):
            image = op(w)
            for m2, c in image.terms.items():
                key = (opi, m2)
                idx = row_index.setdefault(key, len(row_index))
                col[idx] = c
        columns.append(col)
    nrows = len(row_index)
    # transpose to rows, clearing denominators per row
    rows: list[list[int]] = []
    for r in range(nrows):
        den = 1
        vals = []
        for j, col in enumerate(columns):
            c = col.get(r)
            if c:
                vals.append((j, c))
                den = den * c.denominator // gcd(den, c.denominator)
        row = [0] * len(basis)
        for j, c in vals:
            row[j] = int(c * den)
        rows.append(row)
    null = linalg.nullspace_int(rows, len(basis))
    vectors = []
    for coeffs in null:
        s = State({m: Fraction(c) for m, c in zip(basis, coeffs) if c})
        vectors.append(s)
    return NullspaceResult(coset, total_weight, sector, basis, vectors)


def contains_up_to_scale(result: NullspaceResult, v: State) -> bool:
    """True if v lies in the span of the nullspace result (exact check)."""
    if not v:
        return False
    monos = sorted({m for s in result.vectors for m in s.terms} | set(v.terms))
    ncols = len(result.vectors)
    rows = []
    rhs = []
    for m in monos:
        den = 1
        vals = [s.coefficient(m) for s in result.vectors] + [v.coefficient(m)]
        for c in vals:
            den = den * c.denominator // gcd(den, c.denominator)
        rows.append([int(c * den) for c in vals[:-1]])
        rhs.append(int(vals[-1] * den))
    # least-structure solve: use the echelon helper on [A | rhs] and demand
    # consistency with the rhs column non-pivotal
    ech = linalg.IntRowEchelon(ncols + 1)
    for row, b in zip(rows, rhs):
        ech.insert(row + [b])
    return ncols not in ech.pivots
