"""Polytope documents and machine-readable reports.

A polytope document is a JSON object::

    {"name": "simplex-1.5", "dim": 2,
     "vertices": [["0", "0"], ["3/2", "0"], ["0", "3/2"]],
     "inequalities": [{"a": [1, 1], "b": "3/2"}]}

At least one of ``vertices`` / ``inequalities`` must be present. Rationals
are written as strings ("3/2", "-7/10", "4"); decimal strings and JSON
numbers are read exactly ("0.7" is 7/10) and always written back canonically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import GeometryError
from .geometry import Halfspace, Polytope, facets_to_vertices, hull

SCHEMA = "convnormal.report/1"


class DocumentError(GeometryError, ValueError):
    """Malformed polytope document; the message names the source and position."""


@dataclass(frozen=True)
class PolytopeDocument:
    dim: int
    vertices: tuple[tuple[Fraction, ...], ...] | None = None
    inequalities: tuple[tuple[tuple[int, ...], Fraction], ...] | None = None
    name: str | None = None

    def to_polytope(self) -> Polytope:
        by_v = hull(self.vertices) if self.vertices is not None else None
        by_h = None
        if self.inequalities is not None:
            by_h = facets_to_vertices([Halfspace.from_coeffs(a, b) for a, b in self.inequalities])
        if by_v is not None and by_h is not None and by_v != by_h:
            raise DocumentError(f"{self.name or 'document'}: vertices and inequalities describe different polytopes")
        return by_v if by_v is not None else by_h

    @classmethod
    def from_polytope(cls, P: Polytope, name: str | None = None, inequalities: bool = False) -> "PolytopeDocument":
        ineq = tuple((h.normal, h.offset) for h in P.facets) if inequalities else None
        return cls(P.dim, P.vertices, ineq, name)


def fmt(x: Fraction | int) -> str:
    return str(Fraction(x))


def fmt_point(p) -> list[str]:
    return [fmt(x) for x in p]


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise DocumentError(f"{where}: expected a rational such as \"3/2\", got {value!r}")


def parse_document(text: str, source: str = "<input>") -> PolytopeDocument:
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError(f"{source}: top level must be a JSON object")
    unknown = set(raw) - {"dim", "vertices", "inequalities", "name"}
    if unknown:
        raise DocumentError(f"{source}: unknown keys {sorted(unknown)}")
    dim = raw.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError(f"{source}: 'dim' must be a positive integer")
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError(f"{source}: 'name' must be a string")
    verts = ineqs = None
    if "vertices" in raw:
        if not isinstance(raw["vertices"], list):
            raise DocumentError(f"{source}: 'vertices' must be a list")
        verts = []
        for i, v in enumerate(raw["vertices"]):
            if not isinstance(v, list) or len(v) != dim:
                raise DocumentError(f"{source}: vertices[{i}] must list {dim} coordinates")
            verts.append(tuple(_rational(x, f"{source}: vertices[{i}][{j}]") for j, x in enumerate(v)))
        verts = tuple(verts)
    if "inequalities" in raw:
        if not isinstance(raw["inequalities"], list):
            raise DocumentError(f"{source}: 'inequalities' must be a list")
        ineqs = []
        for i, h in enumerate(raw["inequalities"]):
            where = f"{source}: inequalities[{i}]"
            if not isinstance(h, dict) or set(h) != {"a", "b"}:
                raise DocumentError(f"{where} must be an object with keys 'a' and 'b'")
            a = h["a"]
            if not isinstance(a, list) or len(a) != dim or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in a
            ):
                raise DocumentError(f"{where}.a must list {dim} integers")
            ineqs.append((tuple(a), _rational(h["b"], f"{where}.b")))
        ineqs = tuple(ineqs)
    if verts is None and ineqs is None:
        raise DocumentError(f"{source}: need 'vertices' or 'inequalities'")
    return PolytopeDocument(dim, verts, ineqs, name)


def document_to_dict(doc: PolytopeDocument) -> dict:
    out: dict = {}
    if doc.name is not None:
        out["name"] = doc.name
    out["dim"] = doc.dim
    if doc.vertices is not None:
        out["vertices"] = [fmt_point(v) for v in doc.vertices]
    if doc.inequalities is not None:
        out["inequalities"] = [{"a": list(a), "b": fmt(b)} for a, b in doc.inequalities]
    return out


def print_document(doc: PolytopeDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2) + "\n"


def read_document(path: str) -> PolytopeDocument:
    import sys

    if path == "-":
        return parse_document(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return parse_document(text, path)


def load_polytope(path: str) -> Polytope:
    return read_document(path).to_polytope()


def polytope_summary(P: Polytope) -> dict:
    return {
        "dim": P.dim,
        "vertices": [fmt_point(v) for v in P.vertices],
        "inequalities": [{"a": list(h.normal), "b": fmt(h.offset)} for h in P.facets],
    }


def report(command: list[str], result: dict, elapsed: float | None = None) -> dict:
    out = {"schema": SCHEMA, "command": command, "result": result}
    if elapsed is not None:
        out["elapsed_s"] = round(elapsed, 6)
    return out


def dumps_report(rep: dict) -> str:
    return json.dumps(rep, indent=2) + "\n"


def pretty(obj, indent: int = 0) -> str:
    """Indented plain-text rendering of a report for humans."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_point(v):
                lines.append(f"{pad}{k}:")
                lines.append(pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _is_flat_point(v):
                lines.append(f"{pad}-")
                lines.append(pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return "\n".join(lines)


def _is_flat_point(v) -> bool:
    return isinstance(v, list) and all(isinstance(x, (str, int)) for x in v)


def _inline(v) -> str:
    if _is_flat_point(v):
        return "(" + ", ".join(str(x) for x in v) + ")"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)
