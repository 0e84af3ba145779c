"""Flat key-value scenario configs: parsing, validation, serialization.

Format: one `key = value` pair per line, dotted section names, `#`
comments, UTF-8, LF. Polynomial term lists use entries of the form
"coeff u^a v^b" with an optional trailing "ddx" marking a flux (derivative)
term, separated by commas. Parsing and serialization round-trip exactly.
"""

from __future__ import annotations

import re
from pathlib import Path

from .core import (
    DEFAULT_BLOW_UP_THRESHOLD,
    EnvelopeSpec,
    Grid,
    InitialData,
    PolyTerm,
    Scenario,
    SystemSpec,
    validate_scenario,
)

__all__ = ["ConfigError", "parse_scenario", "parse_scenario_text", "serialize_scenario"]


class ConfigError(ValueError):
    """Malformed or invalid scenario config."""


_KNOWN_KEYS = {
    "name", "description",
    "system.d1", "system.d2", "system.c1", "system.c2",
    "system.f1", "system.f2", "system.g1", "system.g2",
    "grid.L", "grid.n",
    "time.dt", "time.t_end", "time.sample_dt",
    "envelope.kind", "envelope.M", "envelope.r",
    "outputs", "blow_up_threshold",
}
_INITIAL_FIELDS = {"kind", "amplitude", "width", "power", "center", "expression"}
for _comp in ("u", "v"):
    for _f in _INITIAL_FIELDS:
        _KNOWN_KEYS.add(f"initial.{_comp}.{_f}")

_TERM_RE = re.compile(
    r"^\s*([+-]?\d*\.?\d+(?:[eE][+-]?\d+)?)\s+u\^(\d+)\s+v\^(\d+)(\s+ddx)?\s*$")


def _parse_terms(value: str, key: str, line_no: int) -> tuple[PolyTerm, ...]:
    terms = []
    if not value.strip():
        return ()
    for entry in value.split(","):
        m = _TERM_RE.match(entry)
        if m is None:
            raise ConfigError(
                f"line {line_no}: bad term {entry.strip()!r} in {key} "
                "(expected \"coeff u^a v^b [ddx]\")")
        terms.append(PolyTerm(
            coeff=float(m.group(1)), alpha=int(m.group(2)),
            beta=int(m.group(3)), gamma=1 if m.group(4) else 0))
    return tuple(terms)


def _terms_for(pairs, key: str) -> tuple[PolyTerm, ...]:
    if key not in pairs:
        return ()
    value, line_no = pairs[key]
    return _parse_terms(value, key, line_no)


def _parse_pairs(text: str) -> dict[str, tuple[str, int]]:
    pairs: dict[str, tuple[str, int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        pairs[key] = (value, line_no)
    return pairs


def _get(pairs, key, convert, default=None, required=False):
    if key not in pairs:
        if required:
            raise ConfigError(f"missing required key {key!r}")
        return default
    value, line_no = pairs[key]
    try:
        return convert(value)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"line {line_no}: bad value for {key!r}: {exc}") from None


def _parse_initial(pairs, comp: str) -> InitialData:
    prefix = f"initial.{comp}."
    kind = _get(pairs, prefix + "kind", str, default="zero")
    return InitialData(
        kind=kind,
        amplitude=_get(pairs, prefix + "amplitude", float, default=0.0),
        width=_get(pairs, prefix + "width", float, default=4.0),
        power=_get(pairs, prefix + "power", float, default=3.0),
        center=_get(pairs, prefix + "center", float, default=0.0),
        expression=_get(pairs, prefix + "expression", str, default=""),
    )


def parse_scenario_text(text: str, name_hint: str = "scenario") -> Scenario:
    """Parse config text into a validated Scenario."""
    pairs = _parse_pairs(text)
    system = SystemSpec(
        d1=_get(pairs, "system.d1", float, required=True),
        d2=_get(pairs, "system.d2", float, required=True),
        c1=_get(pairs, "system.c1", float, required=True),
        c2=_get(pairs, "system.c2", float, required=True),
        f1=_terms_for(pairs, "system.f1"),
        f2=_terms_for(pairs, "system.f2"),
        g1=_terms_for(pairs, "system.g1"),
        g2=_terms_for(pairs, "system.g2"),
    )
    envelope = None
    if "envelope.kind" in pairs:
        envelope = EnvelopeSpec(
            kind=_get(pairs, "envelope.kind", str),
            M=_get(pairs, "envelope.M", float, default=16.0),
            r=_get(pairs, "envelope.r", float, default=3.0),
        )
    outputs = _get(
        pairs, "outputs",
        lambda v: tuple(s.strip() for s in v.split(",") if s.strip()),
        default=("trajectory",))
    scenario = Scenario(
        name=_get(pairs, "name", str, default=name_hint),
        description=_get(pairs, "description", str, default=""),
        system=system,
        grid=Grid(
            half_width=_get(pairs, "grid.L", float, required=True),
            n=_get(pairs, "grid.n", int, required=True),
        ),
        initial_u=_parse_initial(pairs, "u"),
        initial_v=_parse_initial(pairs, "v"),
        t_end=_get(pairs, "time.t_end", float, required=True),
        dt=_get(pairs, "time.dt", float, required=True),
        sample_dt=_get(pairs, "time.sample_dt", float, required=True),
        envelope=envelope,
        outputs=outputs,
        blow_up_threshold=_get(pairs, "blow_up_threshold", float,
                               default=DEFAULT_BLOW_UP_THRESHOLD),
    )
    report = validate_scenario(scenario)
    if not report.valid:
        raise ConfigError("invalid scenario: " + "; ".join(report.violations))
    return scenario


def parse_scenario(path) -> Scenario:
    """Parse a scenario config file."""
    p = Path(path)
    return parse_scenario_text(p.read_text(encoding="utf-8"), name_hint=p.stem)


def _fmt(value: float) -> str:
    return repr(float(value))


def _fmt_terms(terms) -> str:
    parts = []
    for t in terms:
        entry = f"{_fmt(t.coeff)} u^{t.alpha} v^{t.beta}"
        if t.gamma:
            entry += " ddx"
        parts.append(entry)
    return ", ".join(parts)


def serialize_scenario(scenario: Scenario) -> str:
    """Config text that parses back to an identical Scenario."""
    lines = [f"name = {scenario.name}"]
    if scenario.description:
        lines.append(f"description = {scenario.description}")
    s = scenario.system
    lines += [
        f"system.d1 = {_fmt(s.d1)}",
        f"system.d2 = {_fmt(s.d2)}",
        f"system.c1 = {_fmt(s.c1)}",
        f"system.c2 = {_fmt(s.c2)}",
    ]
    for slot in ("f1", "f2", "g1", "g2"):
        terms = getattr(s, slot)
        if terms:
            lines.append(f"system.{slot} = {_fmt_terms(terms)}")
    lines += [
        f"grid.L = {_fmt(scenario.grid.half_width)}",
        f"grid.n = {scenario.grid.n}",
        f"time.dt = {_fmt(scenario.dt)}",
        f"time.t_end = {_fmt(scenario.t_end)}",
        f"time.sample_dt = {_fmt(scenario.sample_dt)}",
    ]
    for comp, init in (("u", scenario.initial_u), ("v", scenario.initial_v)):
        lines.append(f"initial.{comp}.kind = {init.kind}")
        if init.kind == "custom":
            lines.append(f"initial.{comp}.expression = {init.expression}")
        elif init.kind in ("gaussian", "algebraic"):
            lines.append(f"initial.{comp}.amplitude = {_fmt(init.amplitude)}")
            if init.kind == "gaussian":
                lines.append(f"initial.{comp}.width = {_fmt(init.width)}")
            else:
                lines.append(f"initial.{comp}.power = {_fmt(init.power)}")
            if init.center != 0.0:
                lines.append(f"initial.{comp}.center = {_fmt(init.center)}")
    if scenario.envelope is not None:
        env = scenario.envelope
        lines.append(f"envelope.kind = {env.kind}")
        lines.append(f"envelope.M = {_fmt(env.M)}")
        if env.kind == "algebraic":
            lines.append(f"envelope.r = {_fmt(env.r)}")
    lines.append("outputs = " + ", ".join(scenario.outputs))
    if scenario.blow_up_threshold != DEFAULT_BLOW_UP_THRESHOLD:
        lines.append(f"blow_up_threshold = {_fmt(scenario.blow_up_threshold)}")
    return "\n".join(lines) + "\n"
