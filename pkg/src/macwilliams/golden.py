"""Reference instances with known answers, used by the CLI and the test-suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .codes import code_from_generator, decomposition_enumerator, dual_code
from .identity import (
    F8_REFERENCE_C1,
    F8_REFERENCE_C2_DUAL,
    identity_rhs,
    reproduce_subfield_counterexample,
    verify_identity,
)
from .krawtchouk import block_pair_table, kraw
from .partitions import build_partition, decompose
from .ring import build_ring


@dataclass
class Check:
    name: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got


@dataclass
class CaseResult:
    case: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, expected, got) -> None:
        self.checks.append(Check(name, expected, got))

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "checks": [{"name": c.name, "expected": _js(c.expected), "got": _js(c.got), "ok": c.ok} for c in self.checks],
        }


def _js(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _js(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_js(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return repr(v)


def z9_code():
    R = build_ring(3, 1, 2)
    return R, code_from_generator(R, [[3, 2, 8]])


def lee_z9() -> CaseResult:
    res = CaseResult("lee-z9")
    R, C = z9_code()
    L = build_partition("lee", R)
    enum = decomposition_enumerator(C, L)
    res.add("enumerator", [1, 2, 2, 2, 2], [c for _, c in enum.items()])
    rho = (2, 0, 0, 1, 0)
    for pi, want in zip([d for d, _ in enum.items()], [6, 6, 0, 0, 0]):
        res.add(f"K{pi}({rho})", want, kraw(L, pi, rho))
    res.add("rhs", Fraction(2), identity_rhs(enum, L, rho))
    res.add("dual count", 2, decomposition_enumerator(dual_code(C), L).get(rho))
    res.add("identity, all rho", True, verify_identity(C, L).passed)
    return res


def hom_z9() -> CaseResult:
    res = CaseResult("hom-z9")
    R, C = z9_code()
    H = build_partition("hom", R)
    enum = decomposition_enumerator(C, H)
    res.add("enumerator", {(3, 0, 0): 1, (1, 0, 2): 2, (0, 2, 1): 6}, enum.entries)
    rho = (2, 0, 1)
    for pi, want in [((3, 0, 0), 6), ((1, 0, 2), 6), ((0, 2, 1), 0)]:
        res.add(f"K{pi}({rho})", want, kraw(H, pi, rho))
    res.add("rhs", Fraction(2), identity_rhs(enum, H, rho))
    res.add("dual count", 2, decomposition_enumerator(dual_code(C), H).get(rho))
    for s in (2, 3):
        ring = build_ring(3, 1, s)
        part = build_partition("hom", ring)
        got = {(a, b): v for a, row in zip(part.labels, block_pair_table(part)) for b, v in zip(part.labels, row)}
        res.add(f"block table Z/{ring.m}", zusr_table(ring.q, ring.s, part.labels), got)
    res.add("identity, all rho", True, verify_identity(C, H).passed)
    return res


def zusr_table(q: int, s: int, labels) -> dict:
    """Closed-form Z/U/S/R block-pair values, restricted to the classes present."""
    full = {
        ("Z", "Z"): 1, ("Z", "U"): q ** (s - 1) * (q - 1), ("Z", "S"): q - 1, ("Z", "R"): q ** (s - 1) - q,
        ("U", "Z"): 1, ("U", "U"): 0, ("U", "S"): -1, ("U", "R"): 0,
        ("S", "Z"): 1, ("S", "U"): -(q ** (s - 1)), ("S", "S"): q - 1, ("S", "R"): q ** (s - 1) - q,
        ("R", "Z"): 1, ("R", "U"): 0, ("R", "S"): q - 1, ("R", "R"): -q,
    }
    return {(a, b): full[a, b] for a in labels for b in labels}


# codeword representatives paired with their expected coefficient
F27_TABLE = [
    ("a", "a", "a^2", 12),
    ("a+1", "a+1", "a^2+a", 6),
    ("a+2", "a+2", "a^2+2a", 6),
    ("a^2", "a^2", "a+2", 6),
    ("a^2+1", "a^2+1", "2a+2", 0),
    ("a^2+2", "a^2+2", "2", 0),
    ("a^2+a", "a^2+a", "a^2+a+2", -6),
    ("a^2+a+1", "a^2+a+1", "a^2+2a+2", 6),
    ("a^2+a+2", "a^2+a+2", "a^2+2", 6),
    ("a^2+2a", "a^2+2a", "2a^2+a+2", -6),
    ("a^2+2a+1", "a^2+2a+1", "2a^2+2a+2", 6),
    ("a^2+2a+2", "a^2+2a+2", "2a^2+2", 6),
]


def parse_poly(ring, text: str):
    """Element from text like ``2a^2+a+1`` in the generator ``a``."""
    coeffs = [0] * ring.r
    for term in text.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        if "a" not in term:
            coeffs[0] += int(term)
            continue
        c, _, power = term.partition("a")
        c = int(c) if c not in ("", "-") else (-1 if c == "-" else 1)
        e = int(power[1:]) if power.startswith("^") else 1
        coeffs[e] += c
    return ring.element(coeffs)


def subfield_f27() -> CaseResult:
    res = CaseResult("subfield-f27")
    F = build_ring(3, 3, 1)
    a = F.generator()
    S = build_partition("subfield", F)
    C = code_from_generator(F, [[F.one, a, F.one]])
    enum = decomposition_enumerator(C, S)
    rho = decompose(S, [F.one, parse_poly(F, "a^2+2"), F.zero])
    res.add("rho", (1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0), rho)
    zero = (3,) + (0,) * 13
    res.add("K(pi0)", 24, kraw(S, zero, rho))
    res.add("K(pi1)", 0, kraw(S, decompose(S, [F.one, a, F.one]), rho))
    for x, y, z, want in F27_TABLE:
        word = [parse_poly(F, x), parse_poly(F, y), parse_poly(F, z)]
        pi = decompose(S, word)
        res.add(f"K[{x}, {y}, {z}]", want, kraw(S, pi, rho))
        res.add(f"E[{x}, {y}, {z}]", 2, enum.get(pi))
    res.add("rhs", Fraction(4), identity_rhs(enum, S, rho))
    res.add("dual count", 4, decomposition_enumerator(dual_code(C), S).get(rho))
    return res


def f8_counterexample() -> CaseResult:
    res = CaseResult("f8-counterexample")
    rep = reproduce_subfield_counterexample()
    res.add("C1 profile", F8_REFERENCE_C1, rep.profiles["C1"])
    res.add("C2 found", True, rep.c2 is not None)
    if rep.c2 is not None:
        res.add("C2 profile", F8_REFERENCE_C1, rep.profiles["C2"])
        res.add("C2 dual profile", F8_REFERENCE_C2_DUAL, rep.profiles["C2_dual"])
    res.add("C1 dual size", 64, sum(rep.profiles["C1_dual"].values()))
    res.add("literal C2 profile", F8_REFERENCE_C1, rep.profiles["C2_literal"])
    res.add("duals differ", True, rep.profiles["C1_dual"] != rep.profiles["C2_literal_dual"])
    return res


CASES = {"lee-z9": lee_z9, "hom-z9": hom_z9, "subfield-f27": subfield_f27, "f8-counterexample": f8_counterexample}


def run_all() -> list[CaseResult]:
    return [fn() for fn in CASES.values()]
