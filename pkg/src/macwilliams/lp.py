"""Linear-programming upper bounds on code size from decomposition enumerators.

Variables are E_pi for the nonzero decompositions pi; E_0 = 1 is substituted.
Every rho gives the constraint that the predicted dual count is non-negative,

    sum_{pi != 0} K_pi(rho) E_pi >= -K_0(rho),

and E_pi = 0 whenever the weight of pi is below the target distance d.  With
``lee_symmetry`` the unit-scaling orbits add E_pi = E_sigma(pi), and an
orbit touching the forbidden set is forced to zero as a whole.  Krawtchouk
coefficients that are irrational stay exact as elements of Q(xi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .codes import all_linear_codes, minimum_weight
from .cyclotomic import CycInt, CycNum
from .guards import check_guard
from .krawtchouk import kraw, multinomial
from .partitions import AlphabetPartition, all_decompositions, build_partition, decomposition_weight, default_partition_kind
from .ring import RingSpec, units
from .simplex import Certificate, LinearProgram, Solution, solve, verify_certificate
from .weights import WeightKind

LP_GUARD = 5000


class SymmetryError(ValueError):
    """Unit scaling does not permute the blocks of this partition."""


def _exact(value: CycInt):
    if value.is_rational():
        return Fraction(value.coeffs[0])
    return CycNum.of(value, value.m)


def unit_block_map(partition: AlphabetPartition, u: int) -> tuple[int, ...]:
    """Block i -> block containing u * alpha_i, checked on every element of block i."""
    mul = partition.ring.mul_table
    lookup = partition.block_of
    out = []
    for blk in partition.blocks:
        targets = {lookup[int(mul[u, e])] for e in blk}
        if len(targets) != 1:
            raise SymmetryError(f"scaling by element {u} splits block {blk}")
        out.append(targets.pop())
    return tuple(out)


def _unit_maps(partition: AlphabetPartition) -> list[tuple[int, ...]]:
    return sorted({unit_block_map(partition, u.index) for u in units(partition.ring)})


def apply_block_map(pi: Sequence[int], mapping: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(pi)
    for i, c in enumerate(pi):
        out[mapping[i]] += c
    return tuple(out)


def symmetry_orbit(pi: Sequence[int], partition: AlphabetPartition) -> frozenset[tuple[int, ...]]:
    """{sigma_u(pi) : u a unit}."""
    if partition.ring.r != 1:
        raise SymmetryError(f"unit orbits are set up for Z/p^s, not {partition.ring.name}")
    return frozenset(apply_block_map(pi, m) for m in _unit_maps(partition))


@dataclass
class LPProblem:
    partition: AlphabetPartition
    kind: WeightKind
    n: int
    d: Fraction
    lee_symmetry: bool
    variables: list  # decompositions, in column order
    forced_zero: list  # nonzero decompositions excluded from the program
    rho_rows: list  # rho for each inequality row
    orbit_rows: list  # (pi_a, pi_b) for each equality row
    program: LinearProgram

    @property
    def num_vars(self) -> int:
        return len(self.variables)


def zero_row_term(partition: AlphabetPartition, rho: Sequence[int]) -> int:
    """K_0(rho) = multinomial(n; rho) * prod_j |block j|^rho_j."""
    out = multinomial(rho)
    for size, k in zip(partition.sizes(), rho):
        out *= size**k
    return out


def build_lp(ring: RingSpec, kind: WeightKind, n: int, d, *, partition: AlphabetPartition | None = None, lee_symmetry: bool = False) -> LPProblem:
    kind.check_ring(ring)
    d = Fraction(d)
    if partition is None:
        partition = build_partition(default_partition_kind(ring, kind), ring)
    decs = all_decompositions(partition.block_count, n)
    check_guard("LP decomposition count", len(decs), LP_GUARD)
    zero = decs[0]
    weight = {pi: decomposition_weight(pi, partition, kind) for pi in decs}
    forbidden = {pi for pi in decs[1:] if weight[pi] < d}
    orbits: list[frozenset] = []
    if lee_symmetry:
        seen: set = set()
        for pi in decs[1:]:
            if pi not in seen:
                orb = symmetry_orbit(pi, partition)
                seen |= orb
                orbits.append(orb)
        for orb in orbits:
            if orb & forbidden:
                forbidden |= orb
    variables = [pi for pi in decs[1:] if pi not in forbidden]
    col = {pi: j for j, pi in enumerate(variables)}

    A_ub, b_ub, rho_rows = [], [], []
    for rho in decs:
        A_ub.append([-_exact(kraw(partition, pi, rho)) for pi in variables])
        k0 = kraw(partition, zero, rho)
        if not k0.is_rational() or k0.coeffs[0] != zero_row_term(partition, rho):
            raise ArithmeticError(f"zero-row coefficient mismatch at rho={rho}: {k0!r}")
        b_ub.append(Fraction(k0.coeffs[0]))
        rho_rows.append(rho)

    A_eq, b_eq, orbit_rows = [], [], []
    for orb in orbits:
        members = sorted((pi for pi in orb if pi in col), reverse=True)
        for a, b in zip(members, members[1:]):
            row = [Fraction(0)] * len(variables)
            row[col[a]], row[col[b]] = Fraction(1), Fraction(-1)
            A_eq.append(row)
            b_eq.append(Fraction(0))
            orbit_rows.append((a, b))

    lp = LinearProgram(c=[Fraction(1)] * len(variables), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    forced = sorted(forbidden, reverse=True)
    return LPProblem(partition, kind, n, d, lee_symmetry, variables, forced, rho_rows, orbit_rows, lp)


def exact_floor(value) -> int:
    """Floor of a Fraction or of a real CycNum, decided by exact comparisons."""
    if isinstance(value, Fraction):
        return value.numerator // value.denominator
    guess = int(math.floor(float(value)))
    while value < guess:
        guess -= 1
    while value >= guess + 1:
        guess += 1
    return guess


def format_exact(value) -> str:
    if isinstance(value, CycNum) and value.is_rational():
        value = Fraction(value.coeffs[0])
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return f"{value.numerator}/{value.denominator}"
    terms = [f"{c}*xi^{e}" if e else str(c) for e, c in enumerate(value.coeffs) if c]
    return f"{' + '.join(terms)} (xi = exp(2 pi i/{value.m}))"


@dataclass
class LPResult:
    problem: LPProblem
    bound: object  # Fraction, or a real CycNum when the optimum is irrational
    solution: Solution
    certificate: Certificate
    active: list = field(default_factory=list)

    @property
    def assignment(self) -> dict:
        return {pi: v for pi, v in zip(self.problem.variables, self.solution.x) if v != 0}

    def to_json(self) -> dict:
        return {
            "bound": format_exact(self.bound),
            "bound_float": float(self.bound),
            "bound_floor": exact_floor(self.bound),
            "certificate_verified": self.certificate.optimal,
            "active_constraints": [{"rho": list(r)} for r in self.active],
            "assignment": [{"pi": list(pi), "value": format_exact(v), "value_float": float(v)} for pi, v in self.assignment.items()],
            "forced_zero": [list(pi) for pi in self.problem.forced_zero],
            "lee_symmetry": self.problem.lee_symmetry,
        }


def solve_lp(problem: LPProblem) -> LPResult:
    sol = solve(problem.program)
    cert = verify_certificate(problem.program, sol.basis)
    value = 1 + sol.value
    if isinstance(value, CycNum) and value.is_rational():
        value = value.coeffs[0]
    lp = problem.program
    active = []
    for rho, row, b in zip(problem.rho_rows, lp.A_ub, lp.b_ub):
        lhs = sum((a * x for a, x in zip(row, sol.x) if x != 0), Fraction(0))
        if lhs == b:
            active.append(rho)
    return LPResult(problem, value, sol, cert, active)


def lp_bound(ring: RingSpec, kind: WeightKind, n: int, d, *, lee_symmetry: bool = False, partition: AlphabetPartition | None = None) -> LPResult:
    return solve_lp(build_lp(ring, kind, n, d, partition=partition, lee_symmetry=lee_symmetry))


def is_feasible(problem: LPProblem, enumerator: dict) -> list[str]:
    """Violations of ``problem`` by a concrete enumerator (decomposition -> count); empty if feasible."""
    zero = all_decompositions(problem.partition.block_count, problem.n)[0]
    issues = []
    if enumerator.get(zero, 0) != 1:
        issues.append("E_0 != 1")
    for pi in problem.forced_zero:
        if enumerator.get(pi, 0):
            issues.append(f"E{pi} = {enumerator[pi]} but must be 0")
    x = [Fraction(enumerator.get(pi, 0)) for pi in problem.variables]
    lp = problem.program
    for rho, row, b in zip(problem.rho_rows, lp.A_ub, lp.b_ub):
        lhs = sum((a * v for a, v in zip(row, x) if v), Fraction(0))
        if lhs > b:
            issues.append(f"dual-count row {rho} violated")
    for (a, b), row in zip(problem.orbit_rows, lp.A_eq):
        if sum((c * v for c, v in zip(row, x) if v), Fraction(0)) != 0:
            issues.append(f"orbit equality {a} = {b} violated")
    return issues


def exhaustive_max_code(ring: RingSpec, kind: WeightKind, n: int, d) -> tuple[int, object]:
    """Largest linear code of length n with minimum weight >= d, by enumerating every submodule."""
    d = Fraction(d)
    best, witness = 1, None
    for code in all_linear_codes(ring, n):
        w = minimum_weight(code, kind)
        if (w is None or w >= d) and code.size > best:
            best, witness = code.size, code
    return best, witness


def achievable_distances(ring: RingSpec, kind: WeightKind, n: int) -> list[Fraction]:
    """Minimum weights realised by nonzero linear codes of length n."""
    out = set()
    for code in all_linear_codes(ring, n):
        w = minimum_weight(code, kind)
        if w is not None:
            out.add(w)
    return sorted(out)
