"""Named scenarios reproducing the published figure data sets.

Each preset is a config document plus named curve patches (one per plotted
line or panel).  Sweep ranges that the figures leave implicit are chosen to
bracket the relevant resonances and sampled at 401 points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .config import merge_documents, sweep_from_document
from .errors import ConfigError
from .sweep import SweepSpec

__all__ = ["Preset", "list_presets", "get_preset"]

GRID_POINTS = 401

_ATOMS_12 = {"gamma_sp": 6.1e6, "rabi": 12e6, "detuning": 45e6, "lamb_dicke": 0.15, "omega_ph": 477.0}
_ATOMS_175 = dict(_ATOMS_12, rabi=17.5e6)
_NU = 2e6
_KAPPA = 2.0


def _mode(nu: float, g: float) -> dict:
    return {"nu": nu, "kappa": _KAPPA, "g": g}


def _sweep(start: float, stop: float, bipartitions=(), **extra) -> dict:
    sw = {"axis": "theta_over_nu", "start": start, "stop": stop, "num": GRID_POINTS, "bipartitions": list(bipartitions)}
    sw.update(extra)
    return sw


@dataclass(frozen=True)
class Preset:
    name: str
    title: str
    provenance: str
    document: dict
    curves: dict = field(default_factory=dict)
    default_curve: Optional[str] = None

    def curve_names(self) -> list[str]:
        return list(self.curves) or ["default"]

    def resolve(self, curve: Optional[str] = None) -> dict:
        """Config document for one curve (the default one when ``curve`` is None)."""
        if not self.curves:
            if curve not in (None, "default"):
                raise ConfigError(f"preset {self.name!r} has no curve {curve!r}")
            name, patch = "default", {}
        else:
            name = curve or self.default_curve or next(iter(self.curves))
            if name not in self.curves:
                raise ConfigError(f"preset {self.name!r} has no curve {name!r}; choose from {', '.join(self.curves)}")
            patch = self.curves[name]
        doc = merge_documents(self.document, patch)
        doc["meta"] = {"preset": self.name, "curve": name, "provenance": self.provenance}
        return doc

    def sweep_spec(self, curve: Optional[str] = None) -> SweepSpec:
        return sweep_from_document(self.resolve(curve))


def _single_mode(rabi_atoms: dict, g: float, temperature: float, bipartitions=()) -> dict:
    return {
        "atoms": dict(rabi_atoms),
        "modes": [_mode(_NU, g)],
        "bath": {"temperature": temperature},
        "control": {"theta_over_nu": 1.0},
        "sweep": _sweep(0.5, 1.5, bipartitions),
    }


_COMMON = "Gamma=6.1 MHz, omega_ph=477 Hz, Delta=45 MHz, eta=0.15, kappa=2 Hz"

_PRESETS = {
    "fig2": Preset(
        name="fig2",
        title="single-mode cooling: m_eff and decay rate versus theta/nu",
        provenance=f"Fig. 2: {_COMMON}, Omega=12 MHz, nu=2 MHz, T=0.01 K (m=1e2); "
        "g=-6.5 kHz (also at T=0.1 K, m=1e3), g=-5 kHz, g=0",
        document=_single_mode(_ATOMS_12, -6.5e3, 0.01),
        curves={
            "g-6.5k": {},
            "g-5k": {"modes": [_mode(_NU, -5e3)]},
            "g0": {"modes": [_mode(_NU, 0.0)]},
            "g-6.5k_T0.1": {"bath": {"temperature": 0.1}},
        },
    ),
    "fig3": Preset(
        name="fig3",
        title="acoustomechanical entanglement eta^- and E_N versus theta/nu",
        provenance=f"Fig. 3: {_COMMON}, Omega=12 MHz, nu=2 MHz; T=0.01 K and T=0.1 K; g=-6.5 kHz and g=-5 kHz",
        document=_single_mode(_ATOMS_12, -6.5e3, 0.01, bipartitions=["m1_ph"]),
        curves={
            "g-6.5k_T0.01": {},
            "g-5k_T0.01": {"modes": [_mode(_NU, -5e3)]},
            "g-6.5k_T0.1": {"bath": {"temperature": 0.1}},
            "g-5k_T0.1": {"modes": [_mode(_NU, -5e3)], "bath": {"temperature": 0.1}},
        },
    ),
    "fig4": Preset(
        name="fig4",
        title="two side-by-side membranes, nu2 = 0.99 nu1: m_eff and mechanical entanglement",
        provenance=f"Fig. 4: {_COMMON}, nu1=2 MHz, nu2=0.99 nu1; (a,b) T=0.1 K, Omega=17.5 MHz, g1~g2~43 kHz; "
        "(c,d) T=0.01 K, Omega=12 MHz, g1~g2~40 kHz",
        document={
            "atoms": dict(_ATOMS_12),
            "modes": [_mode(_NU, 40e3), _mode(0.99 * _NU, 40e3)],
            "bath": {"temperature": 0.01},
            "control": {"theta_over_nu": 0.995},
            "sweep": _sweep(0.975, 1.015, ["m1_m2"]),
        },
        curves={
            "top": {
                "atoms": {"rabi": 17.5e6},
                "modes": [_mode(_NU, 43e3), _mode(0.99 * _NU, 43e3)],
                "bath": {"temperature": 0.1},
            },
            "bottom": {},
        },
        default_curve="bottom",
    ),
    "fig5": Preset(
        name="fig5",
        title="three side-by-side membranes: m_eff and pairwise mechanical entanglement versus theta/nu2",
        provenance=f"Fig. 5: {_COMMON}, Omega=17.5 MHz, T=0.01 K, nu2=2 MHz, nu1=0.999 nu2, nu3=1.001 nu2, "
        "g1,2,3~-4.8 kHz",
        document={
            "atoms": dict(_ATOMS_175),
            "modes": [_mode(0.999 * _NU, -4.8e3), _mode(_NU, -4.8e3), _mode(1.001 * _NU, -4.8e3)],
            "bath": {"temperature": 0.01},
            "control": {"theta_over_nu": 1.0, "reference_mode": 2},
            "sweep": _sweep(0.995, 1.005, ["m1_m2", "m1_m3", "m2_m3"]),
        },
    ),
}

_TWO_MODE_MEMBRANE = {
    "atoms": dict(_ATOMS_12),
    "modes": [_mode(_NU, -6.5e3), _mode(1.5 * _NU, -6.5e3)],
    "bath": {"temperature": 0.01},
    "control": {"theta_over_nu": 1.0},
}
_B_PROVENANCE = f"Figs. B1-B3: {_COMMON}, Omega=12 MHz, nu1=2 MHz, nu2=1.5 nu1, T=0.01 K, g1~g2~-6.5 kHz"

_PRESETS["figB1"] = Preset(
    name="figB1",
    title="two well-separated modes on one membrane: m_eff of both modes versus theta/nu1",
    provenance=_B_PROVENANCE + "; single-mode reference curve",
    document=merge_documents(_TWO_MODE_MEMBRANE, {"sweep": _sweep(0.5, 2.0)}),
    curves={"two_modes": {}, "single_mode": {"modes": [_mode(_NU, -6.5e3)]}},
)
_PRESETS["figB2"] = Preset(
    name="figB2",
    title="two well-separated modes: acoustomechanical entanglement of each mode",
    provenance=_B_PROVENANCE,
    document=merge_documents(_TWO_MODE_MEMBRANE, {"sweep": _sweep(0.5, 2.0, ["m1_ph", "m2_ph"])}),
)
_PRESETS["figB3"] = Preset(
    name="figB3",
    title="two well-separated modes: mechanical entanglement",
    provenance=_B_PROVENANCE,
    document=merge_documents(_TWO_MODE_MEMBRANE, {"sweep": _sweep(0.5, 2.0, ["m1_m2"])}),
)
_PRESETS["figB_density"] = Preset(
    name="figB_density",
    title="single-mode m_eff density map over (theta/nu, g)",
    provenance=f"Fig. B (density): {_COMMON}, Omega=12 MHz, nu=2 MHz; panels T=100 K, 10 K, 0.1 K, 0.01 K; "
    "guide lines at g=-6.5 kHz and g=-5 kHz",
    document=merge_documents(
        _single_mode(_ATOMS_12, -6.5e3, 0.01),
        {"sweep": {"outer": {"axis": "coupling", "start": -10e3, "stop": 0.0, "num": 41}}},
    ),
    curves={
        "a_T100K": {"bath": {"temperature": 100.0}},
        "b_T10K": {"bath": {"temperature": 10.0}},
        "c_T0.1K": {"bath": {"temperature": 0.1}},
        "d_T0.01K": {},
    },
    default_curve="d_T0.01K",
)


def list_presets() -> dict[str, Preset]:
    return dict(_PRESETS)


def get_preset(name: str) -> Preset:
    try:
        return _PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown scenario {name!r}; available: {', '.join(_PRESETS)}") from None
