"""Canonical machine-readable rendering of reports.

JSON here is byte-deterministic: field order is fixed by construction,
floats print with 17 significant digits, and nothing derives from wall
time.  CSV exists only for scaling tables.
"""

from __future__ import annotations

import json
import math

from .census import copies_from_counts
from .errors import InputError
from .mclab import PcEstimate
from .spread import SpreadCertificate
from .thresholds import ThresholdReport


def fmt_float(x: float) -> str:
    if isinstance(x, float) and (math.isnan(x) or math.isinf(x)):
        raise InputError("non-finite float in canonical output")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".17g")


def render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {render_json(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {render_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def census_payload(classes, n: int | None = None) -> list[dict]:
    out = []
    for cls in classes:
        row = {
            "canonical_key": cls.key_text(),
            "edge_count": cls.edge_count,
            "vertex_count": cls.vertex_count,
            "multiplicity": str(cls.multiplicity),
            "aut_count": str(cls.aut_count),
            "representative_edge_list": (
                [list(e) for e in cls.representative.edges()]
                if cls.representative is not None
                else None
            ),
        }
        if n is not None:
            row["copies_in_K_n"] = str(copies_from_counts(cls.vertex_count, cls.aut_count, n).exact)
        out.append(row)
    return out


def _witness_payload(witnesses) -> list[dict]:
    return [
        {
            "canonical_key": w.subgraph.key_text(),
            "edge_count": w.subgraph.edge_count,
            "log_value": w.log_value,
        }
        for w in witnesses
    ]


def threshold_payload(report: ThresholdReport, pattern_text: str | None = None) -> dict:
    if pattern_text is None:
        pattern_text = report.pattern.key.hex() if report.pattern else "analytic"
    return {
        "n": report.n,
        "pattern": pattern_text,
        "p_E": report.p_expectation,
        "p_tilde_E": report.p_modified,
        "log_p_E": report.log_p_expectation,
        "log_p_tilde_E": report.log_p_modified,
        "witnesses": _witness_payload(report.witnesses_modified),
        "witnesses_expectation": _witness_payload(report.witnesses_expectation),
    }


def certificate_payload(cert: SpreadCertificate, pattern_text: str | None = None) -> dict:
    if pattern_text is None:
        pattern_text = cert.pattern.key.hex() if cert.pattern else "analytic"
    return {
        "n": cert.n,
        "pattern": pattern_text,
        "r_claimed": cert.r_claimed,
        "r_star": cert.r_star,
        "pass": cert.passed,
        "worst_classes": [
            {
                "canonical_key": w.subgraph.key_text(),
                "log_ratio_over_e": w.log_ratio_over_e,
            }
            for w in cert.worst_classes
        ],
    }


def estimate_payload(est: PcEstimate, pattern_text: str | None = None) -> dict:
    if pattern_text is None:
        pattern_text = est.pattern.key.hex()
    return {
        "n": est.n,
        "pattern": pattern_text,
        "method": est.method,
        "p_hat": est.p_hat,
        "ci": [est.ci_low, est.ci_high],
        "trace": [
            {"p": pr.p, "successes": pr.successes, "samples": pr.samples}
            for pr in est.probes
        ],
        "seed": est.seed,
    }


SCALING_CSV_HEADER = (
    "n,pattern,e,p_E,p_tilde_E,n_p_tilde_E,"
    "p_c_hat,p_c_ci_low,p_c_ci_high,p_c_n_over_log_n,p_c_over_p_tilde_E_log_e,note"
)


def scaling_payload(rows) -> list[dict]:
    out = []
    for r in rows:
        out.append(
            {
                "n": r.n,
                "pattern": r.label,
                "e": r.edge_count,
                "p_E": r.p_expectation,
                "p_tilde_E": r.p_modified,
                "n_p_tilde_E": r.n_p_modified,
                "p_c_hat": r.pc.p_hat if r.pc else None,
                "p_c_ci": [r.pc.ci_low, r.pc.ci_high] if r.pc else None,
                "p_c_n_over_log_n": r.pc_n_over_log_n,
                "p_c_over_p_tilde_E_log_e": r.pc_over_modified_log_e,
                "note": r.note,
            }
        )
    return out


def scaling_csv(rows) -> str:
    def cell(x):
        if x is None:
            return ""
        if isinstance(x, float):
            return fmt_float(x)
        return str(x)

    lines = [SCALING_CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    cell(r.n),
                    cell(r.label),
                    cell(r.edge_count),
                    cell(r.p_expectation),
                    cell(r.p_modified),
                    cell(r.n_p_modified),
                    cell(r.pc.p_hat if r.pc else None),
                    cell(r.pc.ci_low if r.pc else None),
                    cell(r.pc.ci_high if r.pc else None),
                    cell(r.pc_n_over_log_n),
                    cell(r.pc_over_modified_log_e),
                    '"' + r.note.replace('"', "'") + '"' if r.note else "",
                ]
            )
        )
    return "\n".join(lines) + "\n"
