"""Code data model, code-word generation, and structural validation.

A code is specified by its logical-zero code word: one positive amplitude
per tail orbit of weight-zero occupation vectors with congruent tail
entries.  The remaining code words are cyclic relabelings of the zero
word, so the whole code is a (d, N, eta) header plus an orbit/amplitude
list.  The file format restricts amplitudes to sign * rational *
sqrt(rational), which covers every shipped code; arbitrary RadicalSum
amplitudes are accepted through the API.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import ExactComplex, InvalidInputError, RadicalSum, multinomial
from .combinatorics import (OccupationVector, TailOrbit, canonical_representative,
                            expand_orbit, is_effectively_sparse, tail_orbit, weight)
from .operators import StateVector, apply_logical_x


@dataclass(frozen=True)
class OrbitAmplitude:
    representative: OccupationVector
    amplitude: RadicalSum  # positive real

    def orbit(self) -> TailOrbit:
        return tail_orbit(self.representative)


@dataclass(frozen=True)
class Code:
    d: int
    N: int
    eta: int
    orbits: Tuple[OrbitAmplitude, ...]

    def support_representatives(self) -> Tuple[OccupationVector, ...]:
        return tuple(o.representative for o in self.orbits)


@dataclass
class ValidationReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, witness: object = None) -> None:
        self.checks[name] = ok
        if not ok and witness is not None:
            self.witnesses[name] = witness


def codeword(code: Code, k: int, exact: bool = True) -> StateVector:
    """|k-bar> = (logical shift)**k applied to the zero code word."""
    if not code.orbits:
        raise InvalidInputError("code has no support orbits")
    terms = {}
    for entry in code.orbits:
        amp = (ExactComplex.real(entry.amplitude) if exact
               else complex(entry.amplitude.to_float()))
        for member in expand_orbit(entry.representative):
            terms[member] = amp
    zero = StateVector(code.d, code.N, terms, exact)
    return apply_logical_x(zero, k) if k % code.d else zero


def validate(code: Code) -> ValidationReport:
    """Structural checks: residue, weights, exact normalization, distinct
    orbits, effective sparsity."""
    report = ValidationReport()

    residue_ok = (code.d >= 3 and code.d % 2 == 1
                  and math.gcd(code.eta, code.d) == 1
                  and code.N % code.d == code.eta % code.d)
    report.record("residue", residue_ok,
                  {"d": code.d, "N": code.N, "eta": code.eta})

    if not code.orbits:
        report.record("support", False, "empty orbit list")
        return report

    support_ok, support_witness = True, None
    seen = set()
    for entry in code.orbits:
        rep = entry.representative
        if (len(rep) != code.d or sum(rep) != code.N
                or rep != canonical_representative(rep)
                or weight(rep) != 0
                or any(x % code.d != rep[1] % code.d for x in rep[1:])):
            support_ok, support_witness = False, rep
            break
        if rep in seen:
            support_ok, support_witness = False, ("duplicate orbit", rep)
            break
        seen.add(rep)
        if entry.amplitude.is_zero():
            support_ok, support_witness = False, ("zero amplitude", rep)
            break
    report.record("support", support_ok, support_witness)
    if not support_ok:
        return report

    total = RadicalSum.zero()
    for entry in code.orbits:
        norm = multinomial(code.N, entry.representative).value()
        orbit_size = tail_orbit(entry.representative).size
        total = total + (entry.amplitude * entry.amplitude) * (norm * orbit_size)
    report.record("normalization", total == RadicalSum.of(1), repr(total))

    members = []
    for entry in code.orbits:
        members.extend(expand_orbit(entry.representative))
    sparse_ok, violation = is_effectively_sparse(members)
    report.record("sparsity", sparse_ok, violation)
    return report


# ---------------------------------------------------------------------------
# JSON file format


def _amplitude_to_json(amp: RadicalSum) -> dict:
    if len(amp.terms) != 1:
        raise InvalidInputError(
            "file format requires amplitudes of the form sign*c*sqrt(r)")
    radicand, coeff = next(iter(amp.terms.items()))
    sign = 1 if coeff > 0 else -1
    coeff = abs(coeff)
    return {
        "sign": sign,
        "coeff": [coeff.numerator, coeff.denominator],
        "radicand": [radicand, 1],
    }


def _amplitude_from_json(data: dict) -> RadicalSum:
    sign = int(data["sign"])
    if sign not in (1, -1):
        raise InvalidInputError(f"amplitude sign must be +-1, got {sign}")
    coeff = Fraction(*data["coeff"])
    radicand = Fraction(*data["radicand"])
    if coeff == 0:
        raise InvalidInputError("zero amplitude in code file")
    amp = RadicalSum.sqrt(radicand, sign * coeff)
    if amp.is_zero():
        raise InvalidInputError("zero amplitude in code file")
    return amp


def code_to_json(code: Code) -> dict:
    return {
        "d": code.d,
        "N": code.N,
        "eta": code.eta,
        "orbits": [
            {"representative": list(o.representative),
             "amplitude": _amplitude_to_json(o.amplitude)}
            for o in code.orbits
        ],
    }


def code_from_json(data: dict) -> Code:
    try:
        orbits = tuple(
            OrbitAmplitude(tuple(int(x) for x in o["representative"]),
                           _amplitude_from_json(o["amplitude"]))
            for o in data["orbits"]
        )
        return Code(int(data["d"]), int(data["N"]), int(data["eta"]), orbits)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed code file: {exc}") from exc


def save_code(code: Code, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(code_to_json(code), fh, indent=2)
        fh.write("\n")


def load_code(path: str) -> Code:
    with open(path) as fh:
        return code_from_json(json.load(fh))
