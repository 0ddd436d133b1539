"""Splitting-coefficient sets: symmetry completion, validation, catalog, file I/O.

A symmetric composition is stored as two arrays of length k = stages + 1.
For drift-first (ABA) sets the drift array ``c`` is palindromic over all k
entries and the kick array ``d`` is palindromic over the first k-1 with a
structural zero last; kick-first (BAB) sets mirror that with the roles of
``c`` and ``d`` exchanged.  Published coefficient tables list the longer
(outer) family under the letter ``d`` and the shorter (inner) family under
``c`` regardless of scheme; ingestion maps them onto the storage convention
above.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpfr

from . import _catalog_data
from .precision import (DEFAULT_PRECISION_BITS, big, parse_decimal, to_decimal,
                        ulp_tolerance, working_precision)


class SchemeTag(Enum):
    """Stepping order: ABA drifts first, BAB kicks first."""

    ABA = "ABA"
    BAB = "BAB"


class Provenance(Enum):
    PUBLISHED_TABLE = "published-table"
    RUTH = "ruth"
    LITERATURE_REFERENCE = "literature-reference"
    OPTIMIZER_OUTPUT = "optimizer-output"
    USER_FILE = "user-file"


class ContractViolation(ValueError):
    pass


class CoefficientFileError(ValueError):
    pass


@dataclass(frozen=True)
class SplittingCoefficients:
    """One named symmetric splitting with drift weights c and kick weights d."""

    name: str
    scheme: SchemeTag
    stages: int
    c: tuple
    d: tuple
    provenance: Provenance = Provenance.USER_FILE
    precision_bits: int = DEFAULT_PRECISION_BITS
    declared_sho_order: int | None = None
    native_mode: str | None = None

    @property
    def k(self) -> int:
        return self.stages + 1

    @property
    def outer(self) -> tuple:
        """The length-k palindromic family (drifts for ABA, kicks for BAB)."""
        return self.c if self.scheme is SchemeTag.ABA else self.d

    @property
    def inner(self) -> tuple:
        """The length k-1 palindromic family, without its structural zero."""
        arr = self.d if self.scheme is SchemeTag.ABA else self.c
        return arr[:-1]

    def default_mode(self) -> str:
        if self.native_mode:
            return self.native_mode
        return "aba" if self.scheme is SchemeTag.ABA else "bab"

    def coefficient_abs_sum(self) -> mpfr:
        with working_precision(self.precision_bits):
            return sum((abs(x) for x in self.c + self.d),
                       big(0, self.precision_bits))


@dataclass(frozen=True)
class ValidationReport:
    name: str
    sum_residual_c: mpfr
    sum_residual_d: mpfr
    symmetry_residuals: tuple
    tolerance: mpfr
    passed: bool

    def worst(self) -> mpfr:
        return max(self.sum_residual_c, self.sum_residual_d,
                   *(self.symmetry_residuals or (self.sum_residual_c,)))


def _n_free(length: int) -> int:
    """Independent entries of a unit-sum palindrome, minus the eliminated one."""
    return (length + 1) // 2 - 1


def _complete_palindrome(free: Sequence, length: int, bits: int) -> list:
    """Fill a palindromic array of the given length whose entries sum to 1.

    Even length: entries pair up symmetrically and the last independent pair
    value is 1/2 - sum(free).  Odd length: a central entry 1 - 2*sum(free).
    """
    if len(free) != _n_free(length):
        raise ContractViolation(
            f"palindrome of length {length} takes {_n_free(length)} free "
            f"values, got {len(free)}"
        )
    with working_precision(bits):
        vals = [big(v, bits) for v in free]
        total = sum(vals, big(0, bits))
        if length % 2 == 0:
            half = vals + [big("0.5", bits) - total]
            return half + half[::-1]
        half = vals + [big(1, bits) - 2 * total]
        return half + half[-2::-1]


def complete_symmetric(free_d: Sequence, free_c: Sequence, scheme: SchemeTag,
                       stages: int, *, name: str = "",
                       precision_bits: int = DEFAULT_PRECISION_BITS,
                       provenance: Provenance = Provenance.USER_FILE,
                       declared_sho_order: int | None = None,
                       native_mode: str | None = None) -> SplittingCoefficients:
    """Build a full symmetric set from the published free-parameter halves.

    ``free_d`` holds the outer family (length stages+1 when completed) and
    ``free_c`` the inner family, following the labeling of the published
    tables.  Sums equal one exactly by construction.
    """
    k = stages + 1
    outer = _complete_palindrome(free_d, k, precision_bits)
    inner = _complete_palindrome(free_c, k - 1, precision_bits)
    zero = big(0, precision_bits)
    if scheme is SchemeTag.ABA:
        c, d = outer, inner + [zero]
    else:
        c, d = inner + [zero], outer
    return SplittingCoefficients(
        name=name or f"{scheme.value.lower()}-s{stages}",
        scheme=scheme, stages=stages, c=tuple(c), d=tuple(d),
        provenance=provenance, precision_bits=precision_bits,
        declared_sho_order=declared_sho_order, native_mode=native_mode,
    )


def validate(coeffs: SplittingCoefficients, tol=None) -> ValidationReport:
    """Report unit-sum and palindrome residuals; passes iff all are <= tol."""
    bits = coeffs.precision_bits
    if tol is None:
        tol = ulp_tolerance(bits)
    with working_precision(bits):
        tol = big(tol, bits)
        one = big(1, bits)
        rc = abs(sum(coeffs.c, big(0, bits)) - one)
        rd = abs(sum(coeffs.d, big(0, bits)) - one)
        k = coeffs.k
        res = []
        if coeffs.scheme is SchemeTag.ABA:
            res.append(abs(coeffs.d[k - 1]))
            res.extend(abs(coeffs.c[i] - coeffs.c[k - 1 - i]) for i in range(k // 2))
            res.extend(abs(coeffs.d[i] - coeffs.d[k - 2 - i]) for i in range((k - 1) // 2))
        else:
            res.append(abs(coeffs.c[k - 1]))
            res.extend(abs(coeffs.d[i] - coeffs.d[k - 1 - i]) for i in range(k // 2))
            res.extend(abs(coeffs.c[i] - coeffs.c[k - 2 - i]) for i in range((k - 1) // 2))
        passed = rc <= tol and rd <= tol and all(r <= tol for r in res)
    return ValidationReport(coeffs.name, rc, rd, tuple(res), tol, passed)


def ruth_coefficients(precision_bits: int = DEFAULT_PRECISION_BITS) -> SplittingCoefficients:
    """The unique real 3-stage fourth-order set, in drift-first arrangement.

    With theta = 1/(2 - 2**(1/3)): drifts (theta/2, (1-theta)/2, (1-theta)/2,
    theta/2), kicks (theta, 1-2*theta, theta).
    """
    bits = precision_bits
    with working_precision(bits):
        theta = 1 / (2 - gmpy2.root(big(2, bits), 3))
        outer = [theta / 2]
        inner = [theta]
    return complete_symmetric(outer, inner, SchemeTag.ABA, 3, name="Ruth",
                              precision_bits=bits, provenance=Provenance.RUTH,
                              declared_sho_order=4, native_mode="aba")


def leapfrog(scheme: SchemeTag = SchemeTag.BAB,
             precision_bits: int = DEFAULT_PRECISION_BITS) -> SplittingCoefficients:
    """Single-stage second-order set (kick-drift-kick or drift-kick-drift)."""
    name = "leapfrog" if scheme is SchemeTag.BAB else "leapfrog-aba"
    return complete_symmetric([], [], scheme, 1, name=name,
                              precision_bits=precision_bits,
                              provenance=Provenance.LITERATURE_REFERENCE,
                              declared_sho_order=2,
                              native_mode="bab" if scheme is SchemeTag.BAB else "aba")


_LITERATURE_FILES = ["s5odr4", "aba104", "aba864", "aba1064", "yosh_s7o6_a"]
_LITERATURE_META = {
    "s5odr4": (4, "aba"),
    "ABA104": (4, "aba"),
    "ABA864": (4, "aba"),
    "ABA1064": (4, "aba"),
    "Yosh s7o6 A": (6, "aba"),
}


def _bundled(name: str):
    return resources.files("sympint").joinpath("data", name)


def catalog(precision_bits: int = DEFAULT_PRECISION_BITS) -> dict[str, SplittingCoefficients]:
    """All bundled coefficient sets keyed by name.  Built fresh per call."""
    entries: dict[str, SplittingCoefficients] = {}
    for name, spec in _catalog_data.TABLE_ENTRIES.items():
        entries[name] = complete_symmetric(
            spec["outer"], spec["inner"], SchemeTag(spec["scheme"]),
            spec["stages"], name=name, precision_bits=precision_bits,
            provenance=Provenance.PUBLISHED_TABLE,
            declared_sho_order=spec["declared_sho_order"],
            native_mode=spec["native_mode"],
        )
    entries["Ruth"] = ruth_coefficients(precision_bits)
    entries["leapfrog"] = leapfrog(SchemeTag.BAB, precision_bits)
    for fname in _LITERATURE_FILES:
        cs = load_coefficient_file(_bundled(f"{fname}.coeffs"),
                                   precision_bits=precision_bits,
                                   provenance=Provenance.LITERATURE_REFERENCE)
        order, mode = _LITERATURE_META[cs.name]
        entries[cs.name] = replace(cs, declared_sho_order=order, native_mode=mode)
    return entries


def resolve_method(name: str, entries: dict[str, SplittingCoefficients]) -> SplittingCoefficients:
    """Find a catalog entry by exact, case-insensitive or apostrophe-free name."""
    if name in entries:
        return entries[name]
    lowered = {k.lower(): k for k in entries}
    if name.lower() in lowered:
        return entries[lowered[name.lower()]]
    stripped = name.lower().replace("'", "")
    hits = [k for k in entries if k.lower().replace("'", "") == stripped]
    if len(hits) == 1:
        return entries[hits[0]]
    avail = ", ".join(sorted(entries))
    raise KeyError(f"unknown method {name!r}; available: {avail}")


# ---------------------------------------------------------------------------
# Coefficient file format: line-oriented text, free parameters only.
#   name <string> / scheme <ABA|BAB> / stages <int> / digits <int>
#   d <index> <decimal>     outer-family free values, 1-based
#   c <index> <decimal>     inner-family free values, 1-based
#   checksum sha256 <hex>   optional, over the canonical payload lines
#   symmetry table4         footer selecting the mirrored-halves completion
# Comment lines start with '#'.
# ---------------------------------------------------------------------------

def _payload_lines(lines: Iterable[str]) -> list[str]:
    out = []
    for ln in lines:
        s = ln.strip()
        if not s or s.startswith("#") or s.startswith("checksum"):
            continue
        out.append(s)
    return out


def save_coefficient_file(coeffs: SplittingCoefficients, path, digits: int | None = None) -> None:
    from .precision import decimal_digits_for

    if digits is None:
        digits = decimal_digits_for(coeffs.precision_bits)
    outer = coeffs.outer
    inner = coeffs.inner
    lines = [
        f"name {coeffs.name}",
        f"scheme {coeffs.scheme.value}",
        f"stages {coeffs.stages}",
        f"digits {digits}",
    ]
    for i in range(_n_free(len(outer))):
        lines.append(f"d {i + 1} {to_decimal(outer[i], digits)}")
    for i in range(_n_free(len(inner))):
        lines.append(f"c {i + 1} {to_decimal(inner[i], digits)}")
    lines.append("symmetry table4")
    digest = hashlib.sha256("\n".join(lines).encode()).hexdigest()
    lines.insert(4, f"checksum sha256 {digest}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_coefficient_file(path, precision_bits: int = DEFAULT_PRECISION_BITS,
                          provenance: Provenance = Provenance.USER_FILE) -> SplittingCoefficients:
    if hasattr(path, "read_text"):
        raw = path.read_text()
        src = getattr(path, "name", str(path))
    else:
        with open(path) as fh:
            raw = fh.read()
        src = str(path)
    headers: dict[str, str] = {}
    free_d: dict[int, str] = {}
    free_c: dict[int, str] = {}
    checksum = None
    saw_footer = False
    for lineno, ln in enumerate(raw.splitlines(), start=1):
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split(None, 2)
        key = parts[0]
        try:
            if key in ("name", "scheme", "stages", "digits"):
                headers[key] = s.split(None, 1)[1]
            elif key in ("d", "c"):
                idx, val = int(parts[1]), parts[2]
                target = free_d if key == "d" else free_c
                if idx in target:
                    raise CoefficientFileError(f"{src}:{lineno}: duplicate {key}({idx})")
                target[idx] = val
            elif key == "checksum":
                if parts[1] != "sha256":
                    raise CoefficientFileError(f"{src}:{lineno}: unsupported checksum kind {parts[1]!r}")
                checksum = parts[2]
            elif key == "symmetry":
                if parts[1] != "table4":
                    raise CoefficientFileError(f"{src}:{lineno}: unknown symmetry rule {parts[1]!r}")
                saw_footer = True
            else:
                raise CoefficientFileError(f"{src}:{lineno}: unrecognized line {s!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, CoefficientFileError):
                raise
            raise CoefficientFileError(f"{src}:{lineno}: cannot parse {s!r}: {exc}") from exc
    for want in ("name", "scheme", "stages", "digits"):
        if want not in headers:
            raise CoefficientFileError(f"{src}: missing header {want!r}")
    if not saw_footer:
        raise CoefficientFileError(f"{src}: missing 'symmetry table4' footer")
    if checksum is not None:
        body = _payload_lines(raw.splitlines())
        digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
        if digest != checksum:
            raise CoefficientFileError(f"{src}: checksum mismatch")
    try:
        scheme = SchemeTag(headers["scheme"])
    except ValueError:
        raise CoefficientFileError(f"{src}: scheme must be ABA or BAB, got {headers['scheme']!r}")
    stages = int(headers["stages"])
    digits = int(headers["digits"])

    def ordered(vals: dict[int, str], label: str, expect: int) -> list[str]:
        if sorted(vals) != list(range(1, expect + 1)):
            raise CoefficientFileError(
                f"{src}: {label} indices must be 1..{expect}, got {sorted(vals)}")
        return [vals[i] for i in range(1, expect + 1)]

    k = stages + 1
    outer = [parse_decimal(v, precision_bits)
             for v in ordered(free_d, "d", _n_free(k))]
    inner = [parse_decimal(v, precision_bits)
             for v in ordered(free_c, "c", _n_free(k - 1))]
    coeffs = complete_symmetric(outer, inner, scheme, stages,
                                name=headers["name"], precision_bits=precision_bits,
                                provenance=provenance)
    tol = big(10, precision_bits) ** (3 - digits)
    report = validate(coeffs, tol=max(tol, ulp_tolerance(precision_bits)))
    if not report.passed:
        raise CoefficientFileError(
            f"{src}: symmetry/sum check failed, worst residual "
            f"{to_decimal(report.worst(), 6)} exceeds tolerance")
    return coeffs
