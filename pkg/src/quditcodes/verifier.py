"""Knill-Laflamme verification at three levels of reduction.

Level "full" checks every ordered pair of error-basis elements against
every pair of code words: off-diagonal matrix elements must vanish and
diagonal ones must not depend on the code word.  Level "reduced" checks
the four sufficient conditions that Heisenberg-Weyl symmetry leaves over
(single dit flips from symbol 0, all double flips, and the last phase
difference alone and squared).  Level "qf" checks the three scalar
quadratic forms that suffice for sparse doubly permutation-invariant
codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .arith import ExactComplex, InvalidInputError
from .codes import Code, codeword, validate
from .operators import (Amplitude, ErrorOperator, StateVector, apply_generator,
                        error_basis, inner_product)

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_D = 13
DEFAULT_MAX_N = 64


@dataclass(frozen=True)
class Violation:
    e: str
    f: str
    i: int
    j: int
    value: Amplitude


@dataclass
class KLReport:
    level: str
    mode: str
    tolerance: float
    constants: Dict[Tuple[str, str], Amplitude] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    checked_elements: int = 0
    structural_zeros: int = 0
    arithmetic_zeros: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        def render(value: Amplitude) -> Tuple[float, float]:
            z = value.to_complex() if isinstance(value, ExactComplex) else complex(value)
            return z.real, z.imag

        constants = []
        for (e, f), value in sorted(self.constants.items()):
            re, im = render(value)
            constants.append({"e": e, "f": f, "re": re, "im": im})
        violations = []
        for v in sorted(self.violations, key=lambda v: (v.e, v.f, v.i, v.j)):
            re, im = render(v.value)
            violations.append({"e": v.e, "f": v.f, "i": v.i, "j": v.j,
                               "value": {"re": re, "im": im}})
        return {
            "level": self.level,
            "pass": self.passed,
            "mode": self.mode,
            "tolerance": self.tolerance,
            "checked_elements": self.checked_elements,
            "structural_zeros": self.structural_zeros,
            "arithmetic_zeros": self.arithmetic_zeros,
            "constants": constants,
            "violations": violations,
        }


class _Checker:
    """Shared element evaluation over precomputed generator images."""

    def __init__(self, code: Code, level: str, mode: str, tolerance: float):
        exact = mode == "exact"
        self.d = code.d
        self.report = KLReport(level, mode, tolerance)
        self.codewords = [codeword(code, k, exact) for k in range(code.d)]
        self._images: Dict[ErrorOperator, List[StateVector]] = {}

    def images(self, op: ErrorOperator) -> List[StateVector]:
        if op not in self._images:
            self._images[op] = [apply_generator(op, cw) for cw in self.codewords]
        return self._images[op]

    def element(self, ea: ErrorOperator, eb: ErrorOperator, i: int, j: int
                ) -> Amplitude:
        # Every basis element is Hermitian, so <i|Ea Eb|j> = (Ea|i>, Eb|j>).
        phi = self.images(ea)[i]
        psi = self.images(eb)[j]
        value = inner_product(phi, psi)
        self.report.checked_elements += 1
        if self._is_zero(value):
            if set(phi.terms) & set(psi.terms):
                self.report.arithmetic_zeros += 1
            else:
                self.report.structural_zeros += 1
        return value

    def _is_zero(self, value: Amplitude) -> bool:
        if isinstance(value, ExactComplex):
            return value.is_zero()
        return abs(value) <= self.report.tolerance

    def check_pair(self, ea: ErrorOperator, eb: ErrorOperator) -> None:
        """Off-diagonals vanish; diagonals match the first code word."""
        name = (ea.name(), eb.name())
        constant = self.element(ea, eb, 0, 0)
        self.report.constants[name] = constant
        for i in range(self.d):
            for j in range(self.d):
                if i == 0 and j == 0:
                    continue
                value = self.element(ea, eb, i, j)
                if i != j:
                    if not self._is_zero(value):
                        self.report.violations.append(
                            Violation(*name, i, j, value))
                elif not self._is_zero(value - constant):
                    self.report.violations.append(Violation(*name, i, j, value))

    def require_zero(self, ea: ErrorOperator, eb: ErrorOperator,
                     i: int, j: int) -> None:
        value = self.element(ea, eb, i, j)
        if not self._is_zero(value):
            self.report.violations.append(
                Violation(ea.name(), eb.name(), i, j, value))


def _check_scale(code: Code, max_d: int, max_n: int) -> None:
    if code.d > max_d or code.N > max_n:
        raise InvalidInputError(
            f"code (d={code.d}, N={code.N}) exceeds caps (d<={max_d}, N<={max_n})")


def kl_full(code: Code, mode: str = "exact", tolerance: float = DEFAULT_TOLERANCE,
            max_d: int = DEFAULT_MAX_D, max_n: int = DEFAULT_MAX_N) -> KLReport:
    """All ordered pairs of error-basis elements over all code-word pairs."""
    _check_scale(code, max_d, max_n)
    checker = _Checker(code, "full", mode, tolerance)
    basis = error_basis(code.d)
    for ea in basis:
        for eb in basis:
            checker.check_pair(ea, eb)
    return checker.report


def kl_reduced(code: Code, mode: str = "exact",
               tolerance: float = DEFAULT_TOLERANCE,
               max_d: int = DEFAULT_MAX_D, max_n: int = DEFAULT_MAX_N) -> KLReport:
    """The four sufficient conditions left over by shift symmetry:
    single dit flips S(0,n) off-diagonal, all flip pairs, D(d-2), and
    D(l)D(d-2)."""
    _check_scale(code, max_d, max_n)
    d = code.d
    checker = _Checker(code, "reduced", mode, tolerance)
    identity = ErrorOperator("I")

    # Single dit flips from symbol 0, off-diagonal elements only.
    for n in range(1, (d - 1) // 2 + 1):
        op = ErrorOperator("S", 0, n)
        checker.report.constants[(identity.name(), op.name())] = \
            checker.element(identity, op, 0, 0)
        for i in range(d):
            for j in range(d):
                if i != j:
                    checker.require_zero(identity, op, i, j)

    # All ordered pairs of flips.
    flips = [ErrorOperator(kind, p, q)
             for kind in ("S", "A") for p in range(d) for q in range(p + 1, d)]
    for ea in flips:
        for eb in flips:
            checker.check_pair(ea, eb)

    # Last phase difference, alone and against every phase difference.
    last = ErrorOperator("D", d - 2)
    checker.check_pair(identity, last)
    for l in range(d - 1):
        checker.check_pair(ErrorOperator("D", l), last)
    return checker.report


def qf_check(code: Code, mode: str = "exact",
             tolerance: float = DEFAULT_TOLERANCE,
             max_d: int = DEFAULT_MAX_D, max_n: int = DEFAULT_MAX_N) -> KLReport:
    """The three scalar quadratic forms for sparse doubly
    permutation-invariant codes; refuses codes that fail validation."""
    _check_scale(code, max_d, max_n)
    structure = validate(code)
    if not structure.passed:
        failed = [name for name, ok in structure.checks.items() if not ok]
        raise InvalidInputError(
            "quadratic-form check requires a normalized, weight-zero, "
            f"effectively sparse orbit-keyed code; failed checks: {failed}")
    d = code.d
    checker = _Checker(code, "qf", mode, tolerance)
    identity = ErrorOperator("I")
    last = ErrorOperator("D", d - 2)
    flip = ErrorOperator("S", 0, 1)

    qf1 = checker.element(identity, last, d - 1, d - 1)
    checker.report.constants[("I", last.name())] = qf1
    if not checker._is_zero(qf1):
        checker.report.violations.append(
            Violation("I", last.name(), d - 1, d - 1, qf1))

    for ea, eb in ((last, last), (flip, flip)):
        lhs = checker.element(ea, eb, 0, 0)
        rhs = checker.element(ea, eb, d - 1, d - 1)
        checker.report.constants[(ea.name(), eb.name())] = lhs
        if not checker._is_zero(lhs - rhs):
            checker.report.violations.append(
                Violation(ea.name(), eb.name(), d - 1, d - 1, rhs))
    return checker.report


def run_level(code: Code, level: str, mode: str = "exact",
              tolerance: float = DEFAULT_TOLERANCE,
              max_d: int = DEFAULT_MAX_D, max_n: int = DEFAULT_MAX_N) -> KLReport:
    if level == "full":
        return kl_full(code, mode, tolerance, max_d, max_n)
    if level == "reduced":
        return kl_reduced(code, mode, tolerance, max_d, max_n)
    if level == "qf":
        return qf_check(code, mode, tolerance, max_d, max_n)
    raise InvalidInputError(f"unknown level {level!r}")
