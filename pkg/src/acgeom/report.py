"""Deterministic check reports.

A report is a list of :class:`CheckResult` plus run metadata, rendered
either as one human-readable line per check or as a stable JSON
document.  Rendering is reproducible byte for byte: checks are ordered
by identifier, rationals are rendered as ``p/q`` strings, floats with
``repr`` precision, and no timestamps or environment-dependent values
are included.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import backend as bk

FORMAT = "acgeom-report 1"


@dataclass
class CheckResult:
    check_id: str
    statement: str
    residual: float
    tolerance: float
    passed: bool
    trials: int = 1
    details: dict = field(default_factory=dict)
    applicable: bool = True


def jsonable(value):
    """Convert nested values to JSON-safe data deterministically."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (Fraction, Rational)) or (
            hasattr(value, "numerator") and hasattr(value, "denominator")):
        return bk.format_scalar(value)
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def render_json(results, meta) -> str:
    ordered = sorted(results, key=lambda r: r.check_id)
    doc = {
        "format": FORMAT,
        "meta": jsonable(meta),
        "counts": {
            "total": len(ordered),
            "passed": sum(1 for r in ordered if r.applicable and r.passed),
            "failed": sum(1 for r in ordered if r.applicable and not r.passed),
            "not_applicable": sum(1 for r in ordered if not r.applicable),
        },
        "checks": [
            {
                "id": r.check_id,
                "statement": r.statement,
                "residual": jsonable(r.residual),
                "tolerance": jsonable(r.tolerance),
                "trials": r.trials,
                "passed": r.passed,
                "applicable": r.applicable,
                "details": jsonable(r.details),
            }
            for r in ordered
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_lines(results, meta) -> str:
    ordered = sorted(results, key=lambda r: r.check_id)
    width = max((len(r.check_id) for r in ordered), default=0)
    out = []
    for r in ordered:
        if not r.applicable:
            mark = "n/a "
            out.append(f"{mark} {r.check_id:<{width}} "
                       f"{r.details.get('reason', 'not applicable')}")
            continue
        mark = "PASS" if r.passed else "FAIL"
        out.append(f"{mark} {r.check_id:<{width}} residual={r.residual:.3e} "
                   f"tol={r.tolerance:.1e} trials={r.trials}  {r.statement}")
    failed = sum(1 for r in ordered if r.applicable and not r.passed)
    skipped = sum(1 for r in ordered if not r.applicable)
    tail = f"{len(ordered)} checks, {failed} failed"
    if skipped:
        tail += f", {skipped} not applicable"
    out.append(tail + f" (seed={meta.get('seed')}, trials={meta.get('trials')})")
    return "\n".join(out) + "\n"
