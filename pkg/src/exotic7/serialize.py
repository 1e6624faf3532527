"""JSON and CSV renderings of reports (output schema version "1").

Rationals are strings ``"p/q"`` or ``"p"``; groups are ``"Z"``, ``"0"``,
``"Z/k"`` or ``"Z+Z/k"``.  The full document layout is pinned down by
``schema_v1.json`` next to this module.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import fields
from importlib import resources
from typing import Optional

from .cyclotomic import format_rational
from .invariants import InvariantReport
from .search import SearchEntry, SearchResult, SearchSpec, PARAM_NAMES

SCHEMA_VERSION = "1"


def _rat(value) -> Optional[str]:
    return None if value is None else format_rational(value)


def _rational_fields(obj) -> dict:
    return {f.name: _rat(getattr(obj, f.name)) for f in fields(obj)}


def document(command: dict, payload: dict, warnings=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "warnings": list(warnings),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def load_schema() -> dict:
    text = resources.files("exotic7").joinpath("schema_v1.json").read_text()
    return json.loads(text)


def invariants_payload(report: InvariantReport) -> dict:
    p = report.params
    orb = report.orbifold
    cls = report.classification
    classification = None
    if cls is not None:
        classification = {
            "is_homotopy_sphere": cls.is_homotopy_sphere,
            "mu": _rat(cls.mu),
            "mu28": cls.mu28,
            "oriented_class": cls.oriented_class,
            "is_standard": cls.is_standard,
            "is_non_milnor_class": cls.is_non_milnor_class,
            "unoriented_class": cls.unoriented_class,
        }

    def side(s):
        return {
            "isotropy_order": s.isotropy_order,
            "cone_angle_denominator": s.cone_angle_denominator,
            "twisted_sector_count": s.twisted_sector_count,
            "multiplicity": s.multiplicity,
            "fiber_action_exponents": list(s.fiber_action_exponents),
        }

    decomposition = None
    if report.decomposition is not None:
        decomposition = _rational_fields(report.decomposition)
        decomposition["total"] = _rat(report.decomposition.total)

    return {
        "kind": "invariants",
        "a": list(p.a.as_tuple()),
        "b": list(p.b.as_tuple()),
        "valid": True,
        "n": report.n,
        "m": _rat(report.m),
        "cohomology": {f"H{k}": label for k, label in enumerate(report.cohomology.labels())},
        "orbifold": {"base_smooth": orb.base_smooth, "a": side(orb.a), "b": side(orb.b)},
        "characteristic_numbers": _rational_fields(report.characteristic_numbers),
        "D_a": _rat(report.D_a),
        "D_b": _rat(report.D_b),
        "mu": _rat(report.mu),
        "mu28": report.mu28,
        "class": cls.oriented_class if cls is not None else None,
        "decomposition": decomposition,
        "classification": classification,
    }


def entry_dict(entry: SearchEntry) -> dict:
    return {
        "a": list(entry.a),
        "b": list(entry.b),
        "n": entry.n,
        "m": _rat(entry.m),
        "mu": _rat(entry.mu),
        "class": entry.oriented_class,
    }


def spec_dict(spec: SearchSpec) -> dict:
    return {
        "ranges": {name: list(spec.interval(name)) for name in PARAM_NAMES},
        "require_sphere": spec.require_sphere,
        "require_nonzero": spec.require_nonzero,
        "target_classes": None if spec.target_classes is None else sorted(spec.target_classes),
        "limit": spec.limit,
    }


def search_payload(spec: SearchSpec, result: SearchResult) -> dict:
    stats = result.stats
    return {
        "kind": "search",
        "spec": spec_dict(spec),
        "entries": [entry_dict(e) for e in result.entries],
        "class_coverage": {
            str(k): {"a": list(e.a), "b": list(e.b)} for k, e in result.class_coverage.items()
        },
        "missing_classes": result.missing_classes,
        "stats": {
            "scanned": stats.scanned,
            "valid": stats.valid,
            "nonzero_n": stats.nonzero_n,
            "spheres": stats.spheres,
            "matched": stats.matched,
            "emitted": stats.emitted,
            "errors": stats.errors,
            "error_messages": list(stats.error_messages),
        },
    }


def table_payload(rows, target_classes=None) -> dict:
    coverage: dict[int, int] = {}
    for r, k in rows:
        coverage.setdefault(k, r)
    missing = None
    if target_classes is not None:
        missing = sorted(set(target_classes) - set(coverage))
    return {
        "kind": "corollary_table",
        "rows": [{"r": r, "class": k} for r, k in rows],
        "class_coverage": {str(k): r for k, r in sorted(coverage.items())},
        "missing_classes": missing,
    }


def search_csv(result: SearchResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*PARAM_NAMES, "n", "m", "mu", "class"])
    for e in result.entries:
        writer.writerow([
            *e.a, *e.b, e.n, _rat(e.m),
            "" if e.mu is None else _rat(e.mu),
            "" if e.oriented_class is None else e.oriented_class,
        ])
    return buf.getvalue()


def table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "class"])
    writer.writerows(rows)
    return buf.getvalue()
