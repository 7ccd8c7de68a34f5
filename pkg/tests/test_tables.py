import numpy as np
import pytest

from admesh.chebmesh import mesh_for
from admesh.extremal import approximate_fekete
from admesh.geometry import gallery
from admesh.projection import lebesgue_constant, make_interpolant
from admesh.tables import (
    LEBESGUE_COLUMNS, Table, lebesgue_table, mesh_table, nodes_table, parse_lebesgue,
    parse_mesh, parse_nodes, write_atomic,
)


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_mesh_round_trip(fmt):
    mesh = mesh_for(gallery("lune"), 5, 4)
    back = parse_mesh(mesh_table(mesh).dumps(fmt))
    assert back == mesh
    assert np.array_equal(back.t, mesh.t) and back.c == mesh.c


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_nodes_round_trip(fmt):
    ns = approximate_fekete(mesh_for(gallery("sun"), 6, 4))
    header, z = parse_nodes(nodes_table(ns).dumps(fmt))
    assert np.array_equal(z, ns.nodes)
    assert header["family"] == "afp" and header["n"] == 6 and header["boundary"] == "sun"


def test_lebesgue_round_trip():
    b = gallery("cardioid")
    reps = []
    for n in (2, 3):
        mesh = mesh_for(b, n, 4)
        reps.append(lebesgue_constant(make_interpolant(approximate_fekete(mesh)), mesh, "afp"))
    rows = parse_lebesgue(lebesgue_table(reps, {"m": 4.0}).to_csv())
    assert [r["n"] for r in rows] == [2, 3]
    assert rows[1]["value"] == reps[1].value and rows[1]["upper"] == reps[1].upper
    assert tuple(rows[0]) == LEBESGUE_COLUMNS


def test_csv_header_lines():
    text = Table({"a": 1, "b": 0.1}, ("x",), [[1.5]]).to_csv()
    assert text.splitlines() == ["# a: 1", "# b: 0.10000000000000001", "x", "1.5"]
    assert Table.loads(text).header == {"a": 1, "b": 0.1}


def test_unknown_format():
    with pytest.raises(ValueError):
        Table({}, ("x",), []).dumps("xml")


def test_write_atomic(tmp_path):
    p = tmp_path / "sub" / "f.txt"
    write_atomic(str(p), "hello\n")
    write_atomic(str(p), "again\n")
    assert p.read_text() == "again\n"
    assert [f.name for f in p.parent.iterdir()] == ["f.txt"]
