"""Plain-text tables for meshes, node sets and Lebesgue reports.

CSV files start with ``# key: value`` header lines followed by a column
header row; JSON files carry the same content as ``{"header": {...},
"columns": [...], "rows": [[...], ...]}``. Floats are written with 17
significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

import numpy as np

from .chebmesh import Mesh, MeshParams
from .extremal import NodeSet

MESH_COLUMNS = ("re", "im", "arc_index", "t")
NODE_COLUMNS = ("order", "re", "im")
LEBESGUE_COLUMNS = ("domain", "family", "n", "m", "value", "lower", "upper")
FORMATS = ("csv", "json")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(x).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _header_value(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


class Table:
    """Header mapping plus rows of string cells."""

    def __init__(self, header: dict, columns, rows):
        self.header = dict(header)
        self.columns = tuple(columns)
        self.rows = [list(r) for r in rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.header.items():
            buf.write(f"# {key}: {fmt(value)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        def cell(v):
            if isinstance(v, (float, np.floating)):
                return float(v)
            if isinstance(v, (int, np.integer)):
                return int(v)
            return v

        doc = {
            "header": {k: cell(v) for k, v in self.header.items()},
            "columns": list(self.columns),
            "rows": [[cell(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=1) + "\n"

    def dumps(self, format: str = "csv") -> str:
        if format == "csv":
            return self.to_csv()
        if format == "json":
            return self.to_json()
        raise ValueError(f"unknown table format {format!r}; expected one of {FORMATS}")

    @classmethod
    def loads(cls, text: str) -> "Table":
        stripped = text.lstrip()
        if stripped.startswith("{"):
            doc = json.loads(text)
            return cls(doc["header"], doc["columns"], doc["rows"])
        header = {}
        body = []
        for line in text.splitlines():
            if line.startswith("# "):
                key, _, value = line[2:].partition(": ")
                header[key] = _header_value(value)
            elif line.strip():
                body.append(line)
        reader = csv.reader(body)
        columns = next(reader)
        return cls(header, columns, list(reader))

    def column(self, name: str, cast=str) -> list:
        j = self.columns.index(name)
        return [cast(row[j]) for row in self.rows]


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------

def mesh_table(mesh: Mesh) -> Table:
    header = {"n": mesh.n, "m": mesh.m, "kind": mesh.params.kind, "c_m": mesh.c,
              "boundary": mesh.boundary_label, "points": len(mesh)}
    rows = [(float(z.real), float(z.imag), int(j), float(t))
            for z, j, t in zip(mesh.points, mesh.arc_index, mesh.t)]
    return Table(header, MESH_COLUMNS, rows)


def parse_mesh(text: str) -> Mesh:
    """Rebuild a :class:`Mesh` from its table (inverse of :func:`mesh_table`)."""
    tab = Table.loads(text)
    h = tab.header
    re_ = np.array(tab.column("re", float))
    im = np.array(tab.column("im", float))
    params = MeshParams(int(h["n"]), float(h["m"]), str(h["kind"]))
    return Mesh(re_ + 1j * im, params, str(h.get("boundary", "")),
                np.array(tab.column("arc_index", int), dtype=int),
                np.array(tab.column("t", float)), float(h["c_m"]))


def nodes_table(nodes: NodeSet) -> Table:
    src = nodes.source
    header = {"family": nodes.family, "n": nodes.n, "m": src.get("m", ""),
              "kind": src.get("kind", ""), "boundary": src.get("boundary_label", "")}
    rows = [(j + 1, float(z.real), float(z.imag)) for j, z in enumerate(nodes.nodes)]
    return Table(header, NODE_COLUMNS, rows)


def parse_nodes(text: str) -> tuple[dict, np.ndarray]:
    """Header and node array of a node table (selection order)."""
    tab = Table.loads(text)
    order = np.array(tab.column("order", int))
    z = np.array(tab.column("re", float)) + 1j * np.array(tab.column("im", float))
    return tab.header, z[np.argsort(order, kind="stable")]


def lebesgue_table(reports, header: dict | None = None) -> Table:
    rows = [(r.boundary_label, r.family, r.n, r.m, r.value, r.lower, r.upper) for r in reports]
    return Table(header or {}, LEBESGUE_COLUMNS, rows)


def parse_lebesgue(text: str) -> list[dict]:
    tab = Table.loads(text)
    casts = {"domain": str, "family": str, "n": int, "m": float,
             "value": float, "lower": float, "upper": float}
    out = []
    for row in tab.rows:
        out.append({c: casts[c](v) for c, v in zip(tab.columns, row)})
    return out
