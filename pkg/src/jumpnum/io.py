"""Fixture file format: strict JSON in, canonical JSON out.

A fixture is one JSON document with top-level keys ``ambient_dim``,
``divisors``, ``dual_graph`` (surfaces), ``lattices``, ``flags`` and
``provenance``.  Integers are JSON numbers, classes are integer arrays
[c0, c1, ...] over the basis (h, e_1, ..., e_r), and rational values in
command-line input and output are "p/q" strings.  Parsing is strict:
unknown keys are rejected so that fixture typos fail loudly, and a parsed
fixture is refused unless validation returns no diagnostics (override
with force for forensic work on broken data).

Serialization is canonical and order-preserving, so parse, re-emit and
parse again yields an identical record.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping

from .errors import FixtureError
from .lattice import (
    BlowupHistory,
    Center,
    ComponentHistory,
    CurveFamily,
    ExcDivLattice,
    LatticeFlags,
    PicClass,
)
from .model import Diagnostic, DualGraphEdge, PrimeDivisor, ResolutionData, validate

FIXTURE_PATH_ENV = "JUMPNUM_FIXTURE_PATH"


def _require_keys(obj: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise FixtureError(f"unknown key(s) {sorted(unknown)} in {where}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FixtureError(f"{where}: expected an integer, got {value!r}")
    return value


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise FixtureError(f"{where}: expected a string, got {value!r}")
    return value


def _bool(value: Any, where: str) -> bool:
    if not isinstance(value, bool):
        raise FixtureError(f"{where}: expected a boolean, got {value!r}")
    return value


def _class(value: Any, where: str) -> PicClass:
    if not isinstance(value, list) or not value:
        raise FixtureError(f"{where}: expected a nonempty integer array")
    return PicClass(tuple(_int(c, where) for c in value))


def _parse_divisor(obj: Any, idx: int) -> PrimeDivisor:
    where = f"divisors[{idx}]"
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object")
    _require_keys(obj, {"id", "name", "mult", "discrepancy", "kind"}, where)
    for key in ("id", "mult", "discrepancy", "kind"):
        if key not in obj:
            raise FixtureError(f"{where}: missing key {key!r}")
    return PrimeDivisor(
        id=_str(obj["id"], where),
        mult=_int(obj["mult"], where),
        discrepancy=_int(obj["discrepancy"], where),
        kind=_str(obj["kind"], where),
        name=_str(obj.get("name", ""), where) if "name" in obj else "",
    )


def _parse_edge(obj: Any, idx: int) -> DualGraphEdge:
    where = f"dual_graph[{idx}]"
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object")
    _require_keys(obj, {"a", "b", "intersection"}, where)
    return DualGraphEdge(
        a=_str(obj.get("a"), where),
        b=_str(obj.get("b"), where),
        intersection=_int(obj.get("intersection", 1), where),
    )


def _parse_center(obj: Any, where: str) -> Center:
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object")
    _require_keys(obj, {"label", "dim", "delta", "infinitely_near_parent"}, where)
    parent = obj.get("infinitely_near_parent")
    if parent is not None:
        parent = _str(parent, where)
    return Center(
        label=_str(obj.get("label"), where),
        dim=_int(obj.get("dim", 0), where),
        delta=_int(obj.get("delta", 0), where),
        infinitely_near_parent=parent,
    )


def _parse_history(obj: Any, centers: tuple[Center, ...], where: str) -> BlowupHistory:
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object")
    _require_keys(obj, {"components", "centers"}, where)
    labels = [c.label for c in centers]
    comps: dict[str, ComponentHistory] = {}
    for cid, entry in (obj.get("components") or {}).items():
        cw = f"{where}.components[{cid}]"
        if not isinstance(entry, dict):
            raise FixtureError(f"{cw}: expected an object")
        _require_keys(entry, {"d", "mu", "m", "m_after"}, cw)
        mu = {lab: _int(v, cw) for lab, v in (entry.get("mu") or {}).items()}
        m_after = {lab: _int(v, cw) for lab, v in (entry.get("m_after") or {}).items()}
        for lab in list(mu) + list(m_after):
            if lab not in labels:
                raise FixtureError(f"{cw}: unknown center label {lab!r}")
        comps[cid] = ComponentHistory(
            degree=_int(entry.get("d"), cw),
            mu={lab: mu.get(lab, 0) for lab in labels},
            times_center=_int(entry.get("m", 0), cw),
            times_center_after={lab: m_after.get(lab, 0) for lab in labels},
        )
    center_times: dict[str, int] = {}
    for lab, entry in (obj.get("centers") or {}).items():
        cw = f"{where}.centers[{lab}]"
        if lab not in labels:
            raise FixtureError(f"{cw}: unknown center label")
        if not isinstance(entry, dict):
            raise FixtureError(f"{cw}: expected an object")
        _require_keys(entry, {"m"}, cw)
        center_times[lab] = _int(entry.get("m", 0), cw)
    for lab in labels:
        center_times.setdefault(lab, 0)
    return BlowupHistory(components=comps, center_times=center_times)


def _parse_lattice(div_id: str, obj: Any) -> ExcDivLattice:
    where = f"lattices[{div_id}]"
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object")
    _require_keys(
        obj,
        {
            "n",
            "centers",
            "restrictions",
            "effective_cone",
            "curve_families",
            "blowup_history",
            "flags",
        },
        where,
    )
    centers = tuple(
        _parse_center(c, f"{where}.centers[{i}]")
        for i, c in enumerate(obj.get("centers") or [])
    )
    restrictions = {
        other: _class(cls, f"{where}.restrictions[{other}]")
        for other, cls in (obj.get("restrictions") or {}).items()
    }
    cone = tuple(
        _class(g, f"{where}.effective_cone[{i}]")
        for i, g in enumerate(obj.get("effective_cone") or [])
    )
    families = []
    for i, fam in enumerate(obj.get("curve_families") or []):
        fw = f"{where}.curve_families[{i}]"
        if not isinstance(fam, dict):
            raise FixtureError(f"{fw}: expected an object")
        _require_keys(fam, {"name", "pairings"}, fw)
        families.append(
            CurveFamily(
                _str(fam.get("name"), fw),
                tuple(_int(p, fw) for p in fam.get("pairings") or []),
            )
        )
    history = None
    if obj.get("blowup_history") is not None:
        history = _parse_history(obj["blowup_history"], centers, f"{where}.blowup_history")
    flags_obj = obj.get("flags") or {}
    _require_keys(
        flags_obj,
        {"created_by_point_blowup", "centers_in_hyperplane", "effectivity_as_Q_divisor"},
        f"{where}.flags",
    )
    flags = LatticeFlags(
        created_by_point_blowup=_bool(
            flags_obj.get("created_by_point_blowup", False), where
        ),
        centers_in_hyperplane=_bool(flags_obj.get("centers_in_hyperplane", False), where),
        effectivity_as_q_divisor=_bool(
            flags_obj.get("effectivity_as_Q_divisor", False), where
        ),
    )
    return ExcDivLattice(
        divisor_id=div_id,
        n=_int(obj.get("n"), where),
        centers=centers,
        restrictions=restrictions,
        effective_cone=cone,
        curve_families=tuple(families),
        history=history,
        flags=flags,
    )


def resolution_from_dict(doc: Any) -> ResolutionData:
    if not isinstance(doc, dict):
        raise FixtureError("fixture root must be a JSON object")
    _require_keys(
        doc,
        {"ambient_dim", "divisors", "dual_graph", "lattices", "provenance", "flags"},
        "fixture root",
    )
    if "ambient_dim" not in doc or "divisors" not in doc:
        raise FixtureError("fixture needs at least ambient_dim and divisors")
    divisors = tuple(
        _parse_divisor(d, i) for i, d in enumerate(doc.get("divisors") or [])
    )
    dual_graph = None
    if doc.get("dual_graph") is not None:
        dual_graph = tuple(
            _parse_edge(e, i) for i, e in enumerate(doc["dual_graph"])
        )
    lattices = {
        div_id: _parse_lattice(div_id, obj)
        for div_id, obj in (doc.get("lattices") or {}).items()
    }
    flags_obj = doc.get("flags") or {}
    _require_keys(flags_obj, {"minimal_resolution"}, "flags")
    return ResolutionData(
        ambient_dim=_int(doc.get("ambient_dim"), "ambient_dim"),
        divisors=divisors,
        dual_graph=dual_graph,
        lattices=lattices,
        provenance=_str(doc.get("provenance", ""), "provenance"),
        minimal_resolution=_bool(flags_obj.get("minimal_resolution", False), "flags"),
    )


def resolution_to_dict(data: ResolutionData) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "ambient_dim": data.ambient_dim,
        "provenance": data.provenance,
        "flags": {"minimal_resolution": data.minimal_resolution},
        "divisors": [
            {
                "id": d.id,
                "name": d.name,
                "mult": d.mult,
                "discrepancy": d.discrepancy,
                "kind": d.kind,
            }
            for d in data.divisors
        ],
    }
    if data.dual_graph is not None:
        doc["dual_graph"] = [
            {"a": e.a, "b": e.b, "intersection": e.intersection}
            for e in data.dual_graph
        ]
    if data.lattices:
        doc["lattices"] = {}
        for div_id, lat in data.lattices.items():
            entry: dict[str, Any] = {
                "n": lat.n,
                "centers": [
                    {
                        "label": c.label,
                        "dim": c.dim,
                        "delta": c.delta,
                        **(
                            {"infinitely_near_parent": c.infinitely_near_parent}
                            if c.infinitely_near_parent is not None
                            else {}
                        ),
                    }
                    for c in lat.centers
                ],
                "restrictions": {
                    other: list(cls.coeffs) for other, cls in lat.restrictions.items()
                },
                "flags": {
                    "created_by_point_blowup": lat.flags.created_by_point_blowup,
                    "centers_in_hyperplane": lat.flags.centers_in_hyperplane,
                    "effectivity_as_Q_divisor": lat.flags.effectivity_as_q_divisor,
                },
            }
            if lat.effective_cone:
                entry["effective_cone"] = [list(g.coeffs) for g in lat.effective_cone]
            if lat.curve_families:
                entry["curve_families"] = [
                    {"name": f.name, "pairings": list(f.pairings)}
                    for f in lat.curve_families
                ]
            if lat.history is not None:
                entry["blowup_history"] = {
                    "components": {
                        cid: {
                            "d": h.degree,
                            "mu": dict(h.mu),
                            "m": h.times_center,
                            "m_after": dict(h.times_center_after),
                        }
                        for cid, h in lat.history.components.items()
                    },
                    "centers": {
                        lab: {"m": m} for lab, m in lat.history.center_times.items()
                    },
                }
            doc["lattices"][div_id] = entry
    return doc


def resolution_to_json(data: ResolutionData) -> str:
    return json.dumps(resolution_to_dict(data), indent=2)


def resolve_fixture_path(path: str | Path) -> Path:
    """Resolve a fixture argument against cwd, the search-path environment
    variable, and the packaged fixtures, in that order."""
    p = Path(path)
    if p.exists():
        return p
    candidates = []
    env = os.environ.get(FIXTURE_PATH_ENV)
    if env:
        candidates.extend(Path(d) / p for d in env.split(os.pathsep) if d)
    candidates.append(Path(__file__).parent / "fixtures" / p)
    for c in candidates:
        if c.exists():
            return c
    raise FixtureError(f"fixture file not found: {path}")


def parse_fixture(path: str | Path, force: bool = False) -> ResolutionData:
    """Load, parse and validate one fixture file.

    Refuses on any validation diagnostic unless ``force`` is set; the
    diagnostics are reported verbatim in the error message.
    """
    file = resolve_fixture_path(path)
    text = file.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(
            f"parse error in {file}: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc
    data = resolution_from_dict(doc)
    diagnostics = validate(data)
    if diagnostics and not force:
        listing = "\n".join(f"  {d}" for d in diagnostics)
        raise FixtureError(f"{file} failed validation:\n{listing}")
    return data


def validate_fixture(path: str | Path) -> tuple[ResolutionData, list[Diagnostic]]:
    data = parse_fixture(path, force=True)
    return data, validate(data)


def packaged_fixture_names() -> list[str]:
    fdir = Path(__file__).parent / "fixtures"
    return sorted(p.name for p in fdir.glob("*.json"))
