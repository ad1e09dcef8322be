"""Session files: a ring, named ideals and closure settings, one statement per line.

    # Fermat cubic in characteristic 2
    p = 2
    vars = x, y, z
    modulus = x^3 + y^3 + z^3
    ideal I = x, y, z^2
    ideal J = 0
    e_max = 5
    e0_max = 3
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .frobenius import ClosureConfig
from .groebner import IdealHandle, NonHomogeneousError, QuotientRing
from .poly import ParseError, PolyRing

_STATEMENT = re.compile(r"^\s*(?:(ideal)\s+([A-Za-z_][A-Za-z_0-9]*)|([A-Za-z_0-9]+))\s*=\s*(.*)$")


class SessionError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def split_polys(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


@dataclass
class SessionFile:
    p: int
    variables: list[str]
    modulus: list[str] = field(default_factory=list)
    ideals: dict[str, list[str]] = field(default_factory=dict)
    config: dict[str, int] = field(default_factory=dict)

    def closure_config(self, **overrides) -> ClosureConfig:
        opts = dict(self.config)
        opts.update({k: v for k, v in overrides.items() if v is not None})
        return ClosureConfig(**opts)

    def build_ring(self) -> QuotientRing:
        S = PolyRing(self.p, self.variables)
        modulus = [S.parse(t) for t in self.modulus]
        return QuotientRing(S, modulus, name="R")

    def build_ideals(self, R: QuotientRing) -> dict[str, IdealHandle]:
        out = {}
        for name, texts in self.ideals.items():
            gens = [R.ambient.parse(t) for t in texts]
            for g in gens:
                if not g.is_homogeneous():
                    raise NonHomogeneousError(f"generator {g} of ideal {name} is not homogeneous")
            out[name] = IdealHandle(R, gens)
        return out


def parse_session(text: str) -> SessionFile:
    values: dict[str, str] = {}
    ideals: dict[str, list[str]] = {}
    config: dict[str, int] = {}
    raw_lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        m = _STATEMENT.match(line)
        if not m:
            raise SessionError(f"cannot parse statement {line.strip()!r}", lineno)
        rhs = m.group(4).strip()
        if m.group(1):
            name = m.group(2)
            if name in ideals:
                raise SessionError(f"ideal {name} defined twice", lineno)
            ideals[name] = split_polys(rhs)
            raw_lines[f"ideal {name}"] = lineno
            continue
        key = m.group(3)
        if key in ("e_max", "e0_max"):
            if not rhs.isdigit():
                raise SessionError(f"{key} must be a nonnegative integer", lineno)
            config[key] = int(rhs)
        elif key in ("p", "vars", "modulus"):
            if key in values:
                raise SessionError(f"{key} given twice", lineno)
            values[key] = rhs
        else:
            raise SessionError(f"unknown key {key!r}", lineno)
        raw_lines[key] = lineno
    if "p" not in values or not values["p"].isdigit():
        raise SessionError("missing or non-integer 'p = <int>'")
    if "vars" not in values:
        raise SessionError("missing 'vars = ...'")
    session = SessionFile(
        p=int(values["p"]),
        variables=split_polys(values["vars"]),
        modulus=split_polys(values.get("modulus", "")),
        ideals=ideals,
        config=config,
    )
    # validate polynomials eagerly so errors carry a line number
    try:
        S = PolyRing(session.p, session.variables)
    except ValueError as exc:
        raise SessionError(str(exc), raw_lines.get("vars")) from None
    for t in session.modulus:
        _check_poly(S, t, raw_lines.get("modulus"))
    for name, texts in ideals.items():
        for t in texts:
            _check_poly(S, t, raw_lines.get(f"ideal {name}"))
    return session


def _check_poly(S: PolyRing, text: str, line: int | None):
    try:
        f = S.parse(text)
    except ParseError as exc:
        raise SessionError(str(exc), line) from None
    if not f.is_homogeneous():
        raise SessionError(f"{text!r} is not homogeneous", line)


def load_session(path: str | Path) -> SessionFile:
    return parse_session(Path(path).read_text())
