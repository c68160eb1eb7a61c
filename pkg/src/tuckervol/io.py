"""JSON formats: triangulations, labelings and instance files.

Rationals are written as ``"p/q"`` strings (``"p"`` for integers). Output is
deterministic: fixed key order, ascending vertex ids, two-space indent and a
trailing newline, so parse -> dump reproduces a file byte for byte.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .exactmath import format_rational, parse_rational
from .label import Labeling
from .simplicial import Simplex, Triangulation


class InstanceFormatError(ValueError):
    """Malformed instance, triangulation or labeling JSON."""


def triangulation_to_json(t: Triangulation) -> dict[str, Any]:
    out: dict[str, Any] = {
        "dim": t.dim,
        "vertices": [
            {"id": v, "coords": [format_rational(c) for c in p], "boundary": v in t.boundary}
            for v, p in sorted(t.vertices.items())
        ],
        "simplices": [list(s.oriented()) for s in t.simplices],
    }
    if t.center is not None:
        out["center"] = t.center
    return out


def triangulation_from_json(data: dict[str, Any]) -> Triangulation:
    try:
        dim = int(data["dim"])
        vertices = {}
        boundary = set()
        for entry in data["vertices"]:
            vid = int(entry["id"])
            if vid in vertices:
                raise InstanceFormatError(f"duplicate vertex id {vid}")
            vertices[vid] = tuple(parse_rational(str(c)) for c in entry["coords"])
            if entry.get("boundary", False):
                boundary.add(vid)
        simplices = tuple(Simplex.from_ordered([int(i) for i in ids]) for ids in data["simplices"])
        center = data.get("center")
        return Triangulation(dim, vertices, simplices, frozenset(boundary),
                             None if center is None else int(center))
    except InstanceFormatError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"bad triangulation JSON: {exc}") from exc


def labeling_to_json(l: Labeling) -> dict[str, Any]:
    return {"kind": l.kind, "labels": {str(v): lab for v, lab in sorted(l.labels.items())}}


def labeling_from_json(data: dict[str, Any]) -> Labeling:
    try:
        return Labeling(data["kind"], {int(k): int(v) for k, v in data["labels"].items()})
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InstanceFormatError(f"bad labeling JSON: {exc}") from exc


@dataclass
class InstanceFile:
    triangulation: Triangulation
    labeling: Labeling
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "triangulation": triangulation_to_json(self.triangulation),
            "labeling": labeling_to_json(self.labeling),
            "metadata": self.metadata,
        }

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "InstanceFile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "triangulation" not in data or "labeling" not in data:
            raise InstanceFormatError("instance file needs 'triangulation' and 'labeling'")
        t = triangulation_from_json(data["triangulation"])
        l = labeling_from_json(data["labeling"])
        meta = data.get("metadata", {})
        if not isinstance(meta, dict):
            raise InstanceFormatError("metadata must be an object")
        return cls(t, l, meta)

    @classmethod
    def load(cls, path: str | Path) -> "InstanceFile":
        return cls.loads(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"
