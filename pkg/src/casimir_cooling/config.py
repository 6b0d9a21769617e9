"""Config documents: a JSON tree with sections atoms / modes / bath / control / sweep.

Example::

    {
      "atoms": {"gamma_sp": 6.1e6, "rabi": 12e6, "detuning": 45e6,
                "lamb_dicke": 0.15, "omega_ph": 477},
      "modes": [{"nu": 2e6, "kappa": 2, "g": -6.5e3}],
      "bath": {"temperature": 0.01},
      "control": {"theta_over_nu": 1.0, "reference_mode": 1},
      "sweep": {"axis": "theta_over_nu", "start": 0.5, "stop": 1.5, "num": 401,
                "bipartitions": ["m1_ph"]}
    }

A mode may give ``"casimir": {"q": ..., "z_a": ..., "n0": ..., "osc_mass": ..., "c3": ...}``
instead of ``g``; the coupling is then computed from the Casimir-Polder geometry.
``reference_mode`` is 1-based in documents, like every user-facing mode number.
"""
from __future__ import annotations

import copy
import json
import math
import re
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

from .errors import ConfigError
from .graphene import CasimirSetup, coupling_strength
from .params import AtomicParams, MechanicalMode, SystemConfig
from .sweep import AXES, Bipartition, SweepSpec, linspace_grid

__all__ = [
    "load_document",
    "parse_document",
    "apply_overrides",
    "parse_override",
    "merge_documents",
    "config_from_document",
    "sweep_from_document",
    "config_to_document",
    "dumps_document",
]

SECTIONS = ("atoms", "modes", "bath", "control", "sweep")
ATOM_KEYS = ("gamma_sp", "rabi", "detuning", "lamb_dicke", "omega_ph")
MODE_KEYS = ("nu", "kappa", "g", "omega_cp", "casimir")
CASIMIR_KEYS = ("q", "z_a", "n0", "osc_mass", "c3")
CONTROL_KEYS = ("theta", "theta_over_nu", "reference_mode")
SWEEP_KEYS = ("axis", "start", "stop", "num", "grid", "bipartitions", "outer")
OUTER_KEYS = ("axis", "start", "stop", "num", "grid")

_PER_MODE_RE = re.compile(r"^(nu|kappa|g|omega_cp)_(\d+)$")


def parse_document(text: str, source: str = "<config>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{source}: top level must be an object")
    return doc


def load_document(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    return parse_document(text, str(path))


def merge_documents(base: Mapping, patch: Mapping) -> dict:
    """Recursive merge; lists and scalars in ``patch`` replace those in ``base``."""
    out = copy.deepcopy(dict(base))
    for key, value in patch.items():
        if isinstance(value, Mapping) and isinstance(out.get(key), Mapping):
            out[key] = merge_documents(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _coerce(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def parse_override(item: str) -> tuple[str, Any]:
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not of the form key=value")
    key, raw = item.split("=", 1)
    key = key.strip()
    if not key:
        raise ConfigError(f"override {item!r} has an empty key")
    return key, _coerce(raw.strip())


def _modes(doc: dict) -> list:
    modes = doc.get("modes")
    if not isinstance(modes, list) or not modes:
        raise ConfigError("config has no 'modes' list to override")
    return modes


def apply_overrides(doc: Mapping, overrides: Iterable[str | tuple[str, Any]]) -> dict:
    """Apply flat ``key=value`` overrides after parsing.

    Recognised keys: the atom fields, ``temperature``, ``theta``,
    ``theta_over_nu``, ``reference_mode``, ``g`` / ``nu`` / ``kappa`` (every
    mode), ``g_<j>`` / ``nu_<j>`` / ``kappa_<j>`` / ``omega_cp_<j>`` (mode j,
    1-based), ``sweep.<key>`` and ``sweep.outer.<key>``, and any fully dotted
    path such as ``atoms.rabi``.  Anything else is an error.
    """
    doc = copy.deepcopy(dict(doc))
    for item in overrides:
        key, value = parse_override(item) if isinstance(item, str) else item
        if key in ATOM_KEYS:
            doc.setdefault("atoms", {})[key] = value
        elif key == "temperature":
            doc.setdefault("bath", {})["temperature"] = value
        elif key in ("theta", "theta_over_nu"):
            control = doc.setdefault("control", {})
            control.pop("theta", None)
            control.pop("theta_over_nu", None)
            control[key] = value
        elif key == "reference_mode":
            doc.setdefault("control", {})["reference_mode"] = value
        elif key in ("g", "nu", "kappa"):
            for mode in _modes(doc):
                mode[key] = value
                if key == "g":
                    mode.pop("casimir", None)
        elif _PER_MODE_RE.match(key):
            name, idx = _PER_MODE_RE.match(key).groups()
            modes = _modes(doc)
            j = int(idx)
            if not 1 <= j <= len(modes):
                raise ConfigError(f"override {key!r}: mode {j} does not exist (have {len(modes)})")
            modes[j - 1][name] = value
            if name == "g":
                modes[j - 1].pop("casimir", None)
        elif "." in key:
            _set_dotted(doc, key, value)
        else:
            raise ConfigError(f"unknown override key {key!r}")
    return doc


def _set_dotted(doc: dict, key: str, value: Any) -> None:
    parts = key.split(".")
    allowed = {
        "atoms": ATOM_KEYS,
        "bath": ("temperature",),
        "control": CONTROL_KEYS,
        "sweep": SWEEP_KEYS,
    }
    head = parts[0]
    if head not in allowed:
        raise ConfigError(f"unknown override key {key!r}")
    if head == "sweep" and len(parts) == 3 and parts[1] == "outer":
        if parts[2] not in OUTER_KEYS:
            raise ConfigError(f"unknown override key {key!r}")
        doc.setdefault("sweep", {}).setdefault("outer", {})[parts[2]] = value
        return
    if len(parts) != 2 or parts[1] not in allowed[head]:
        raise ConfigError(f"unknown override key {key!r}")
    doc.setdefault(head, {})[parts[1]] = value


def _check_keys(section: Mapping, allowed: Iterable[str], where: str) -> None:
    if not isinstance(section, Mapping):
        raise ConfigError(f"{where}: expected an object")
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(map(repr, unknown))}")


def _number(section: Mapping, key: str, where: str, default: Optional[float] = None) -> float:
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"{where}.{key}: missing")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where}.{key}: must be finite")
    return float(value)


def _reference_mode(control: Mapping, n_modes: int) -> int:
    if "reference_mode" not in control:
        return 0
    ref = control["reference_mode"]
    if isinstance(ref, bool) or not isinstance(ref, int) or not 1 <= ref <= n_modes:
        raise ConfigError(f"control.reference_mode: expected a mode number in 1..{n_modes}, got {ref!r}")
    return ref - 1


def _mode_from_document(entry: Mapping, where: str) -> MechanicalMode:
    _check_keys(entry, MODE_KEYS, where)
    nu = _number(entry, "nu", where)
    kappa = _number(entry, "kappa", where)
    omega_cp = _number(entry, "omega_cp", where) if "omega_cp" in entry else None
    if "casimir" in entry:
        if "g" in entry:
            raise ConfigError(f"{where}: give either 'g' or 'casimir', not both")
        cas = entry["casimir"]
        _check_keys(cas, CASIMIR_KEYS, f"{where}.casimir")
        kwargs = {k: _number(cas, k, f"{where}.casimir") for k in CASIMIR_KEYS if k in cas and k != "q"}
        setup = CasimirSetup(**kwargs)
        g = coupling_strength(_number(cas, "q", f"{where}.casimir"), nu, setup)
    else:
        g = _number(entry, "g", where, default=0.0)
    return MechanicalMode(nu=nu, kappa=kappa, g=g, omega_cp=omega_cp)


def config_from_document(doc: Mapping) -> SystemConfig:
    """Build a validated SystemConfig; errors name the offending key."""
    _check_keys(doc, SECTIONS + ("meta",), "config")
    for section in ("atoms", "modes", "bath"):
        if section not in doc:
            raise ConfigError(f"config: missing section '{section}'")

    atoms_doc = doc["atoms"]
    _check_keys(atoms_doc, ATOM_KEYS, "atoms")
    atoms = AtomicParams(
        gamma_sp=_number(atoms_doc, "gamma_sp", "atoms"),
        rabi=_number(atoms_doc, "rabi", "atoms"),
        detuning=_number(atoms_doc, "detuning", "atoms"),
        lamb_dicke=_number(atoms_doc, "lamb_dicke", "atoms"),
        omega_ph=_number(atoms_doc, "omega_ph", "atoms", default=0.0),
    )

    modes_doc = doc["modes"]
    if not isinstance(modes_doc, list) or not modes_doc:
        raise ConfigError("modes: expected a non-empty list")
    modes = tuple(_mode_from_document(m, f"modes[{i}]") for i, m in enumerate(modes_doc))

    bath = doc["bath"]
    _check_keys(bath, ("temperature",), "bath")
    temperature = _number(bath, "temperature", "bath")

    control = doc.get("control", {})
    _check_keys(control, CONTROL_KEYS, "control")
    ref = _reference_mode(control, len(modes))
    if "theta" in control and "theta_over_nu" in control:
        raise ConfigError("control: give either 'theta' or 'theta_over_nu', not both")
    if "theta" in control:
        theta = _number(control, "theta", "control")
    elif "theta_over_nu" in control:
        theta = _number(control, "theta_over_nu", "control") * modes[ref].nu
    else:
        theta = modes[ref].nu
    return SystemConfig(atoms=atoms, modes=modes, temperature=temperature, theta=theta)


def _grid(section: Mapping, where: str) -> tuple[float, ...]:
    if "grid" in section:
        grid = section["grid"]
        if not isinstance(grid, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in grid):
            raise ConfigError(f"{where}.grid: expected a list of numbers")
        if not grid:
            raise ConfigError(f"{where}.grid: empty grid")
        return tuple(float(x) for x in grid)
    num = section.get("num", 401)
    if isinstance(num, bool) or not isinstance(num, int) or num < 1:
        raise ConfigError(f"{where}.num: expected a positive integer, got {num!r}")
    return linspace_grid(_number(section, "start", where), _number(section, "stop", where), num)


def sweep_from_document(doc: Mapping) -> SweepSpec:
    base = config_from_document(doc)
    if "sweep" not in doc:
        raise ConfigError("config: missing section 'sweep'")
    sw = doc["sweep"]
    _check_keys(sw, SWEEP_KEYS, "sweep")
    axis = sw.get("axis", "theta_over_nu")
    if axis not in AXES:
        raise ConfigError(f"sweep.axis: expected one of {', '.join(AXES)}, got {axis!r}")
    labels = sw.get("bipartitions", [])
    if not isinstance(labels, list):
        raise ConfigError("sweep.bipartitions: expected a list of labels")
    bipartitions = tuple(Bipartition.parse(str(lbl)) for lbl in labels)
    ref = _reference_mode(doc.get("control", {}), base.n_modes)

    outer_axis, outer_grid = None, ()
    if "outer" in sw:
        outer = sw["outer"]
        _check_keys(outer, OUTER_KEYS, "sweep.outer")
        outer_axis = outer.get("axis", "coupling")
        outer_grid = _grid(outer, "sweep.outer")
    return SweepSpec(
        axis=axis,
        grid=_grid(sw, "sweep"),
        base=base,
        bipartitions=bipartitions,
        reference_mode=ref,
        outer_axis=outer_axis,
        outer_grid=outer_grid,
    )


def config_to_document(config: SystemConfig) -> dict:
    """Inverse of :func:`config_from_document` with ``theta`` in Hz."""
    a = config.atoms
    modes = []
    for m in config.modes:
        entry = {"nu": m.nu, "kappa": m.kappa, "g": m.g}
        if m.omega_cp is not None:
            entry["omega_cp"] = m.omega_cp
        modes.append(entry)
    return {
        "atoms": {k: getattr(a, k) for k in ATOM_KEYS},
        "modes": modes,
        "bath": {"temperature": config.temperature},
        "control": {"theta": config.theta},
    }


def dumps_document(doc: Mapping) -> str:
    return json.dumps(doc, indent=2)
