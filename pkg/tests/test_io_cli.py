"""File formats, catalog manifests, and the command-line interface."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

import cellman as cm
import cellman.io as cio
from cellman.cli import main
from cellman.gale import GaleDiagram

DISCONNECTED = json.dumps(
    {
        "vertices": ["a", "b", "c", "d", "e", "f"],
        "facets": [[0, 1, 2], [3, 4, 5]],
    }
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def lattice_file(tmp_path, name, L):
    p = tmp_path / name
    cio.save_lattice(L, p)
    return str(p)


def diagram_file(tmp_path, name, G):
    p = tmp_path / name
    p.write_text(cio.dumps_diagram(G), encoding="utf-8")
    return str(p)


class TestLatticeRoundTrip:
    def test_reload_is_equal(self, octahedron, rp2, s1_doubled_pentagon):
        for L in (octahedron, rp2, s1_doubled_pentagon, cm.cycle(5)):
            again = cio.loads_lattice(cio.dumps_lattice(L), source="mem")
            assert again == L

    def test_double_save_is_byte_identical(self, tmp_path, octahedron):
        p1 = lattice_file(tmp_path, "a.json", octahedron)
        L = cio.load_lattice(p1)
        p2 = lattice_file(tmp_path, "b.json", L)
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_exact_serialization(self):
        text = cio.dumps_lattice(cm.cycle(3))
        assert text == (
            "{\n"
            '  "vertices": ["c0", "c1", "c2"],\n'
            '  "faces": [\n'
            "    [0],\n"
            "    [1],\n"
            "    [2],\n"
            "    [0, 1],\n"
            "    [0, 2],\n"
            "    [1, 2]\n"
            "  ]\n"
            "}\n"
        )

    def test_facets_key(self, octahedron):
        text = json.dumps(
            {
                "vertices": list(octahedron.labels),
                "facets": [
                    sorted(a for a in range(octahedron.n) if (m >> a) & 1)
                    for m in octahedron.facet_masks
                ],
            }
        )
        L = cio.loads_lattice(text, source="mem")
        assert L == octahedron
        assert len(L.masks) == 28

    def test_point_sphere_file(self):
        L = cio.loads_lattice('{"vertices": ["v"], "faces": []}', source="mem")
        assert L.dim == -1
        assert cm.is_isomorphic(L, cm.standard_sphere(-1))

    def test_raw_skips_validation(self):
        with pytest.raises(cio.ValidationError):
            cio.loads_lattice(DISCONNECTED, source="mem")
        L = cio.loads_lattice(DISCONNECTED, source="mem", raw=True)
        assert not cm.validate(L).verdict

    def test_validation_error_is_lattice_error(self):
        assert issubclass(cio.ValidationError, cm.LatticeError)
        assert issubclass(cio.ParseError, ValueError)


class TestLatticeParseErrors:
    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("{", "line 1"),
            ("[]", "object"),
            ('{"faces": []}', "vertices"),
            ('{"vertices": ["a", "b"]}', "faces"),
            ('{"vertices": ["a", "b"], "faces": [], "facets": []}', "mutually exclusive"),
            ('{"vertices": "ab", "faces": []}', "vertices"),
            ('{"vertices": ["a", ""], "faces": []}', "label"),
            ('{"vertices": ["a", "a"], "faces": []}', "duplicate"),
            ('{"vertices": ["a", 3], "faces": []}', "label"),
            ('{"vertices": ["a", "b", "c"], "faces": [[0, 0]]}', "ascending"),
            ('{"vertices": ["a", "b", "c"], "faces": [[1, 0]]}', "ascending"),
            ('{"vertices": ["a", "b", "c"], "faces": [[0, 3]]}', "range"),
            ('{"vertices": ["a", "b", "c"], "faces": [[]]}', "empty"),
            ('{"vertices": ["a", "b"], "faces": [[0, 1]]}', "every vertex"),
            ('{"vertices": ["a", "b", "c"], "faces": [[true]]}', "integer"),
            ('{"vertices": ["a", "b", "c"], "faces": [[0], [0]]}', "duplicate"),
            ('{"vertices": ["a", "b", "c"], "faces": [0]}', "array"),
        ],
    )
    def test_bad_text(self, text, fragment):
        with pytest.raises(cio.ParseError) as exc:
            cio.loads_lattice(text, source="mem")
        assert fragment in str(exc.value)

    def test_source_in_message(self):
        with pytest.raises(cio.ParseError) as exc:
            cio.loads_lattice("{", source="box.json")
        assert "box.json" in str(exc.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(cio.ParseError):
            cio.load_lattice(tmp_path / "absent.json")


class TestDiagramFiles:
    def test_round_trip(self, pentagon_diagram):
        text = cio.dumps_diagram(pentagon_diagram)
        assert cio.loads_diagram(text) == pentagon_diagram
        assert text.endswith("\n")
        assert "\n" not in text[:-1]

    def test_centre_round_trip(self):
        G = GaleDiagram.from_assignment(8, {"a": 0, "b": 2, "c": 4, "d": 6, "z": None})
        text = cio.dumps_diagram(G)
        assert '"z": "C"' in text
        assert cio.loads_diagram(text) == G

    def test_exact_serialization(self):
        G = GaleDiagram.from_assignment(6, {"b": 3, "a": None})
        assert cio.dumps_diagram(G) == '{"order": 6, "points": {"a": "C", "b": 3}}\n'

    @pytest.mark.parametrize(
        "text",
        [
            "{",
            "[]",
            '{"points": {}}',
            '{"order": 7, "points": {"a": 0}}',
            '{"order": true, "points": {"a": 0}}',
            '{"order": 6, "points": {"a": 6}}',
            '{"order": 6, "points": {"a": "west"}}',
            '{"order": 6, "points": {"a": 1.5}}',
            '{"order": 6, "points": {"a": true}}',
            '{"order": 6, "points": [["a", 0]]}',
            '{"order": 6}',
        ],
    )
    def test_bad_text(self, text):
        with pytest.raises(cio.ParseError):
            cio.loads_diagram(text)


class TestCatalogFiles:
    def test_write_catalog(self, tmp_path):
        items = cm.enumerate_excess1(3)
        cio.write_catalog(items, tmp_path / "cat")
        manifest = json.loads((tmp_path / "cat" / "manifest.json").read_text())
        assert manifest["schema"] == 1
        assert len(manifest["entries"]) == 4
        for item, entry in zip(items, manifest["entries"]):
            assert entry["family"] == item.family
            assert tuple(entry["params"]) == item.params
            L = item.lattice
            assert entry["n"] == L.n
            assert entry["dim"] == L.dim
            assert entry["excess"] == L.excess
            assert tuple(entry["f_vector"]) == L.f_vector
            assert entry["simplicial"] == cm.is_simplicial(L)
            assert entry["neighbourly"] == cm.is_neighbourly(L)
            assert entry["reducible"] == cm.is_reducible(L)
            assert entry["proper"] == cm.is_proper(L)
            assert entry["primitive"] == cm.is_primitive(L)
            loaded = cio.load_lattice(tmp_path / "cat" / entry["path"])
            assert loaded == L

    def test_negative_parameter_slug(self, tmp_path):
        items = cm.enumerate_excess1(2)
        cio.write_catalog(items, tmp_path / "cat")
        names = {e["path"] for e in json.loads((tmp_path / "cat" / "manifest.json").read_text())["entries"]}
        assert names == {"join2-0-1.json", "join_tensor-0-0-m1.json"}


class TestCliBasics:
    def test_info_line(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["info", f]) == 0
        assert capsys.readouterr().out == "dim=1 n=5 excess=2 f=(5,5)\n"

    def test_info_json(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["info", "--json", f]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {
            "schema": 1,
            "dim": 1,
            "n": 5,
            "excess": 2,
            "f_vector": [5, 5],
        }

    def test_validate_good(self, tmp_path, capsys, octahedron):
        f = lattice_file(tmp_path, "oct.json", octahedron)
        assert main(["validate", f]) == 0
        assert capsys.readouterr().out.startswith("valid")

    def test_validate_bad(self, tmp_path, capsys):
        f = write(tmp_path, "disc.json", DISCONNECTED)
        assert main(["validate", f]) == 1
        out = capsys.readouterr().out
        assert out.startswith("invalid")
        assert "connectivity" in out

    def test_validate_bad_json_payload(self, tmp_path, capsys):
        f = write(tmp_path, "disc.json", DISCONNECTED)
        assert main(["validate", "--json", f]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["valid"] is False
        assert payload["violations"]

    def test_parse_error_exit_2(self, tmp_path, capsys):
        f = write(tmp_path, "bad.json", "{")
        assert main(["info", f]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path, capsys):
        assert main(["info", str(tmp_path / "none.json")]) == 2

    def test_unknown_command_exit_2(self, capsys):
        assert main(["conjure"]) == 2

    def test_no_command_exit_2(self, capsys):
        assert main([]) == 2


class TestCliConstructions:
    def test_dual_writes_file(self, tmp_path, octahedron):
        f = lattice_file(tmp_path, "oct.json", octahedron)
        out = str(tmp_path / "cube.json")
        assert main(["dual", f, "-o", out]) == 0
        cube = cio.load_lattice(out)
        assert cube.f_vector == (8, 12, 6)

    def test_dual_stdout(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["dual", f]) == 0
        L = cio.loads_lattice(capsys.readouterr().out, source="mem")
        assert cm.is_isomorphic(L, cm.cycle(5))

    def test_op_join(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "s0.json", cm.standard_sphere(0))
        assert main(["op", "join", f, f]) == 0
        L = cio.loads_lattice(capsys.readouterr().out, source="mem")
        assert cm.is_isomorphic(L, cm.cycle(4))

    def test_op_bad_kind(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "s0.json", cm.standard_sphere(0))
        assert main(["op", "smash", f, f]) == 2

    def test_op_cartesian_precondition(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "s0.json", cm.standard_sphere(0))
        assert main(["op", "cartesian", f, f]) == 1
        assert "error:" in capsys.readouterr().err

    def test_bsd_euler(self, tmp_path, capsys, rp2):
        f = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["bsd", "--euler", f]) == 0
        assert capsys.readouterr().out == "0\n"
        g = lattice_file(tmp_path, "rp2.json", rp2)
        assert main(["bsd", "--euler", g]) == 0
        assert capsys.readouterr().out == "1\n"

    def test_bsd_lattice(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c4.json", cm.cycle(4))
        assert main(["bsd", f]) == 0
        L = cio.loads_lattice(capsys.readouterr().out, source="mem")
        assert cm.is_isomorphic(L, cm.cycle(8))


class TestCliSymmetry:
    def test_classes(self, tmp_path, capsys, bipyramid):
        f = lattice_file(tmp_path, "bp.json", bipyramid)
        assert main(["classes", f]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert sorted(lines) == ["L:v0,L:v1", "R:v0,R:v1,R:v2"]

    def test_decompose(self, tmp_path, capsys, octahedron):
        f = lattice_file(tmp_path, "oct.json", octahedron)
        assert main(["decompose", f]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len([l for l in lines if l.startswith("sphere ")]) == 3
        assert lines[-1] == "irreducible dim=-1 n=1 excess=0 f=()"

    def test_decompose_output_file(self, tmp_path, capsys, bipyramid):
        f = lattice_file(tmp_path, "bp.json", bipyramid)
        out = str(tmp_path / "irr.json")
        assert main(["decompose", f, "-o", out]) == 0
        assert cio.load_lattice(out).dim == -1

    def test_quotient_roundtrip(self, tmp_path, capsys, s1_doubled_pentagon):
        f = lattice_file(tmp_path, "s1.json", s1_doubled_pentagon)
        assert main(["quotient", f]) == 0
        Q = cio.loads_lattice(capsys.readouterr().out, source="mem")
        assert cm.is_isomorphic(Q, cm.cycle(5))

    def test_quotient_improper_exit_1(self, tmp_path, capsys, octahedron):
        f = lattice_file(tmp_path, "oct.json", octahedron)
        assert main(["quotient", f]) == 1
        assert "error:" in capsys.readouterr().err

    def test_inflate(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["inflate", f, "c0=2"]) == 0
        L = cio.loads_lattice(capsys.readouterr().out, source="mem")
        assert (L.n, L.dim, L.excess) == (6, 2, 2)
        assert L.f_vector == (6, 12, 8)

    def test_inflate_bad_term(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["inflate", f, "c0"]) == 2
        assert main(["inflate", f, "c0=0"]) == 2
        assert main(["inflate", f, "c0=2,c0=3"]) == 2

    def test_iso_verdicts(self, tmp_path, capsys):
        a = lattice_file(tmp_path, "a.json", cm.cycle(5))
        b = lattice_file(tmp_path, "b.json", cm.cycle(5, labels=("p", "q", "r", "s", "t")))
        c = lattice_file(tmp_path, "c.json", cm.cycle(6))
        assert main(["iso", a, b]) == 0
        assert capsys.readouterr().out == "isomorphic\n"
        assert main(["iso", a, c]) == 1
        assert capsys.readouterr().out == "not isomorphic\n"

    def test_iso_catalog_pair(self, tmp_path, capsys):
        items = cm.enumerate_excess1(2)
        a = lattice_file(tmp_path, "a.json", items[0].lattice)
        b = lattice_file(tmp_path, "b.json", items[1].lattice)
        assert main(["iso", a, b]) == 1

    def test_neighbourly(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c3.json", cm.cycle(3))
        assert main(["neighbourly", f]) == 0
        assert capsys.readouterr().out == "neighbourly\n"
        g = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        assert main(["neighbourly", g]) == 1
        assert capsys.readouterr().out == "not neighbourly\n"


class TestCliEnumerate:
    def test_count_only(self, capsys):
        assert main(["enumerate", "--excess", "1", "--dim", "4", "--count-only"]) == 0
        assert capsys.readouterr().out == "6\n"

    def test_listing(self, capsys):
        assert main(["enumerate", "--excess", "2", "--dim", "2"]) == 0
        assert capsys.readouterr().out == "join3(0, 0, 0)\n"

    def test_json(self, capsys):
        assert main(["enumerate", "--excess", "2", "--dim", "3", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["count"] == 2
        assert {tuple(i["params"]) for i in payload["items"]} == {
            (0, 0, 1),
            (0, 0, -1, 0),
        }

    def test_neighbourly_needs_excess_2(self, capsys):
        assert main(["enumerate", "--excess", "1", "--dim", "4", "--neighbourly"]) == 2

    def test_neighbourly_note_on_stderr(self, capsys):
        assert main(["enumerate", "--excess", "2", "--dim", "5", "--neighbourly", "--count-only"]) == 0
        captured = capsys.readouterr()
        assert captured.out == "1\n"
        assert "closed forms disagree" in captured.err

    def test_out_dir(self, tmp_path, capsys):
        out = tmp_path / "cat"
        assert main(["enumerate", "--excess", "1", "--dim", "3", "--count-only", "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert len(manifest["entries"]) == 4

    def test_oracle(self, capsys):
        assert main(["oracle", "--dim", "1", "--vertices", "4"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "count=1"
        assert out[1] == "dim=1 n=4 excess=1 f=(4,4)"


class TestCliGale:
    def test_validate(self, tmp_path, capsys, pentagon_diagram):
        f = diagram_file(tmp_path, "pent.json", pentagon_diagram)
        assert main(["gale", "validate", f]) == 0
        assert capsys.readouterr().out == "valid\n"

    def test_validate_bad(self, tmp_path, capsys):
        G = GaleDiagram.from_assignment(8, {"a": 0, "b": 0, "c": 4, "d": 4, "e": 1})
        f = diagram_file(tmp_path, "bad.json", G)
        assert main(["gale", "validate", f]) == 1
        assert capsys.readouterr().out.startswith("invalid")

    def test_sphere(self, tmp_path, capsys, pentagon_diagram):
        f = diagram_file(tmp_path, "pent.json", pentagon_diagram)
        assert main(["gale", "sphere", f]) == 0
        L = cio.loads_lattice(capsys.readouterr().out, source="mem")
        assert cm.is_isomorphic(L, cm.cycle(5))

    def test_search_pipeline(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CELLMAN_THREADS", "1")
        lat = lattice_file(tmp_path, "c5.json", cm.cycle(5))
        dia = str(tmp_path / "c5-diagram.json")
        assert main(["gale", "search", lat, "-o", dia]) == 0
        sph = str(tmp_path / "c5-sphere.json")
        assert main(["gale", "sphere", dia, "-o", sph]) == 0
        assert main(["iso", lat, sph]) == 0

    def test_search_failure_exit_1(self, tmp_path, capsys, rp2, monkeypatch):
        monkeypatch.setenv("CELLMAN_THREADS", "1")
        f = lattice_file(tmp_path, "rp2.json", rp2)
        assert main(["gale", "search", f]) == 1
        assert capsys.readouterr().out == "no diagram found\n"

    def test_search_excess_gate(self, tmp_path, capsys):
        f = lattice_file(tmp_path, "c4.json", cm.cycle(4))
        assert main(["gale", "search", f]) == 1
        assert "excess" in capsys.readouterr().err

    def test_shift_blocked_exit_1(self, tmp_path, capsys, pentagon_diagram):
        f = diagram_file(tmp_path, "pent.json", pentagon_diagram)
        assert main(["gale", "shift", f, "v0", "4"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_shift_success(self, tmp_path, capsys):
        G = GaleDiagram.from_assignment(
            12, {"a1": 0, "a2": 0, "b1": 4, "b2": 4, "c1": 8, "c2": 8}
        )
        f = diagram_file(tmp_path, "oct12.json", G)
        assert main(["gale", "shift", f, "a1", "1"]) == 0
        moved = cio.loads_diagram(capsys.readouterr().out)
        assert moved.assignment["a1"] == 1

    def test_shift_bad_ray_exit_2(self, tmp_path, capsys, pentagon_diagram):
        f = diagram_file(tmp_path, "pent.json", pentagon_diagram)
        assert main(["gale", "shift", f, "v0", "25"]) == 2


def test_module_runs_as_script(tmp_path):
    L = cm.cycle(5)
    p = tmp_path / "c5.json"
    cio.save_lattice(L, p)
    proc = subprocess.run(
        [sys.executable, "-m", "cellman.cli", "info", str(p)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "dim=1 n=5 excess=2 f=(5,5)\n"
