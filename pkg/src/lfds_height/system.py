"""Linear systems (Z_n^m, A), their primary decomposition and reduced systems."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .errors import ParseError, UsageError
from .factorize import Factorization
from .ring import MatrixModN


@dataclass(frozen=True)
class SystemSpec:
    """The system (Z_n^m, A): iterate ``x -> A x mod n`` on column vectors."""

    a: MatrixModN

    @property
    def n(self) -> int:
        return self.a.modulus

    @property
    def m(self) -> int:
        return self.a.dim

    @property
    def size(self) -> int:
        """Number of states, n**m."""
        return self.n**self.m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int) -> "SystemSpec":
        return cls(MatrixModN.from_rows(rows, n))

    def to_json(self) -> str:
        return json.dumps({"modulus": self.n, "matrix": self.a.to_lists()})


@dataclass(frozen=True)
class PrimaryComponent:
    """The factor system (Z_{p^alpha}^m, A mod p^alpha)."""

    p: int
    alpha: int
    sys: SystemSpec

    def __post_init__(self):
        if self.sys.n != self.p**self.alpha:
            raise UsageError(f"component modulus {self.sys.n} != {self.p}^{self.alpha}")

    @classmethod
    def of(cls, sys: SystemSpec, p: int, alpha: int) -> "PrimaryComponent":
        return cls(p, alpha, reduce_mod(sys, p**alpha))

    @property
    def modulus(self) -> int:
        return self.sys.n


def reduce_mod(sys: SystemSpec, modulus: int) -> SystemSpec:
    """The system over Z_modulus obtained by reducing every entry; ``modulus | n``."""
    if modulus < 2 or sys.n % modulus:
        raise UsageError(f"{modulus} does not divide {sys.n} (or is < 2)")
    if modulus == sys.n:
        return sys
    return SystemSpec(sys.a.reduce(modulus))


def primary_components(sys: SystemSpec, f: Factorization) -> list[PrimaryComponent]:
    """One component per distinct prime of ``n``, ordered by prime."""
    if f.n != sys.n:
        raise UsageError(f"factorization is of {f.n}, system modulus is {sys.n}")
    return [PrimaryComponent.of(sys, p, a) for p, a in f.factors]


def quotient_system(comp: PrimaryComponent) -> SystemSpec:
    """Model (Z_p^m, A mod p) of the induced map on Z_{p^alpha}^m / <p>^m."""
    return reduce_mod(comp.sys, comp.p)


def submodule_system(comp: PrimaryComponent) -> Optional[SystemSpec]:
    """Model (Z_{p^(alpha-1)}^m, A mod p^(alpha-1)) of A restricted to <p>^m.

    ``None`` when ``alpha == 1``, where <p>^m is the zero submodule.
    """
    if comp.alpha == 1:
        return None
    return reduce_mod(comp.sys, comp.p ** (comp.alpha - 1))


def submodule_component(comp: PrimaryComponent) -> Optional[PrimaryComponent]:
    """:func:`submodule_system` wrapped as a component over p^(alpha-1)."""
    sub = submodule_system(comp)
    if sub is None:
        return None
    return PrimaryComponent(comp.p, comp.alpha - 1, sub)


# -- input formats -----------------------------------------------------------

def parse_system(text: str) -> SystemSpec:
    """Parse a system from JSON or the whitespace text format.

    JSON: ``{"modulus": n, "matrix": [[...], ...]}``. Text: first line
    ``n m`` followed by ``m`` rows of ``m`` integers. Entries may be any
    integers; they are reduced mod ``n``.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty system description")
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return _parse_text(stripped)


def _parse_json(text: str) -> SystemSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or "modulus" not in doc or "matrix" not in doc:
        raise ParseError('JSON system needs "modulus" and "matrix" keys')
    n, rows = doc["modulus"], doc["matrix"]
    if not _is_int(n):
        raise ParseError("modulus must be an integer")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    if not all(_is_int(e) for r in rows for e in r):
        raise ParseError("matrix entries must be integers")
    return _build(rows, n)


def _parse_text(text: str) -> SystemSpec:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        header = [int(t) for t in lines[0]]
        rows = [[int(t) for t in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from exc
    if len(header) != 2:
        raise ParseError('first line must be "n m"')
    n, m = header
    if m < 1 or len(rows) != m or any(len(r) != m for r in rows):
        raise ParseError(f"expected {m} rows of {m} integers")
    return _build(rows, n)


def _build(rows, n) -> SystemSpec:
    if n < 2:
        raise ParseError(f"modulus must be >= 2, got {n}")
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError("matrix must be square and non-empty")
    try:
        return SystemSpec.from_rows(rows, n)
    except UsageError as exc:
        raise ParseError(str(exc)) from exc


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def load_system(path) -> SystemSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_system(text)
