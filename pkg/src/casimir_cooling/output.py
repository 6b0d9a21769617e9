"""Serialization of sweep tables and single-point reports (CSV / JSON)."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Optional

import numpy as np

from .dynamics import quadrature_labels
from .sweep import PointResult, SweepResult

__all__ = ["sweep_header", "sweep_records", "sweep_to_csv", "sweep_to_json", "point_report", "matrices_text"]


def fmt(x: Optional[float]) -> str:
    """Shortest round-tripping decimal, period separator, empty for missing values."""
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return ""
    return repr(x)


def _json_number(x: Optional[float]) -> Any:
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def sweep_header(result: SweepResult) -> list[str]:
    header = ["outer_value"] if result.spec.nested else []
    header += ["axis_value", "stable", "decay_rate_hz"]
    header += [f"m_eff_{j + 1}" for j in range(result.spec.base.n_modes)]
    for label in result.labels:
        header += [f"eta_minus_{label}", f"logneg_{label}"]
    return header


def sweep_records(result: SweepResult) -> list[dict]:
    """One dict per row; keys are the CSV header names, missing observables are None."""
    n = result.spec.base.n_modes
    records = []
    for row in result.rows:
        rec: dict[str, Any] = {}
        if result.spec.nested:
            rec["outer_value"] = row.outer_value
        rec["axis_value"] = row.axis_value
        rec["stable"] = row.stable
        rec["decay_rate_hz"] = row.decay_rate
        for j in range(n):
            rec[f"m_eff_{j + 1}"] = None if row.m_eff is None else row.m_eff[j]
        for label in result.labels:
            eta, logneg = row.entanglement.get(label, (None, None)) if row.stable else (None, None)
            rec[f"eta_minus_{label}"] = eta
            rec[f"logneg_{label}"] = logneg
        records.append(rec)
    return records


def sweep_to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = sweep_header(result)
    writer.writerow(header)
    for rec in sweep_records(result):
        writer.writerow([("true" if rec[k] else "false") if k == "stable" else fmt(rec[k]) for k in header])
    return buf.getvalue()


def sweep_to_json(result: SweepResult, meta: Optional[dict] = None) -> str:
    rows = [{k: (v if isinstance(v, bool) else _json_number(v)) for k, v in rec.items()} for rec in sweep_records(result)]
    errors = [
        {"index": i, "axis_value": row.axis_value, "message": row.error}
        for i, row in enumerate(result.rows)
        if row.error
    ]
    payload = {"meta": dict(meta or {}, errors=errors, columns=sweep_header(result)), "rows": rows}
    return json.dumps(payload, indent=2)


def point_report(point: PointResult, reference_nu: float) -> dict:
    eff = point.effective
    report: dict[str, Any] = {
        "effective": {
            "xi_hz": eff.xi,
            "gamma_eff_hz": eff.gamma_eff,
            "omega_eff_hz": eff.omega_eff,
            "alpha_abs": eff.alpha_abs,
        },
        "theta_hz": point.config.theta,
        "theta_over_nu": point.config.theta / reference_nu,
    }
    st = point.stability
    report["stability"] = None if st is None else {
        "stable": st.stable,
        "max_real_part_hz": st.max_real_part,
        "decay_rate_hz": st.decay_rate,
        "relaxation_time_s": st.relaxation_time,
        "tolerance_hz": st.tolerance,
    }
    report["m_eff"] = None if point.m_eff is None else list(point.m_eff)
    report["phonon_variances"] = None if point.phonon_variances is None else list(point.phonon_variances)
    report["entanglement"] = {
        label: {"eta_minus": _json_number(eta), "logneg": _json_number(en)}
        for label, (eta, en) in point.entanglement.items()
    }
    if point.covariance is not None:
        report["lyapunov_residual"] = point.covariance.residual
        report["min_symplectic_eigenvalue"] = point.covariance.min_symplectic_eigenvalue()
    report["error"] = point.error
    return report


def matrices_text(n_modes: int, matrices: dict[str, Optional[np.ndarray]]) -> str:
    """Row-major dump at full precision, one ``# name`` block per matrix."""
    lines = ["# ordering: " + ",".join(quadrature_labels(n_modes))]
    for name, m in matrices.items():
        lines.append(f"# {name}")
        if m is None:
            lines.append("# (not available)")
            continue
        for row in np.asarray(m):
            lines.append(",".join(fmt(x) for x in row))
    return "\n".join(lines) + "\n"
