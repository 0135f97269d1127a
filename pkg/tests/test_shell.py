"""Command-line interface, serialization formats, and renderers."""
from __future__ import annotations

import json

import pytest

from quasilattice.shell import (
    cli_main,
    parse_shift,
    pattern_points_from_json,
    pattern_to_json_dict,
    render_svg,
    render_xyz,
)
from quasilattice.generator import generate_box, generic_shift, neighbor_graph



@pytest.fixture(scope="module")
def decagon_pattern(decagon_reduced_generic):
    return generate_box(decagon_reduced_generic, 3)


@pytest.fixture(scope="module")
def icosa_pattern(icosahedron_reduced_generic):
    return generate_box(icosahedron_reduced_generic, 2)


class TestShiftParsing:
    def test_keywords(self):
        assert all(x.is_zero() for x in parse_shift("zero", 5))
        generic = parse_shift("generic", 5)
        assert list(generic) == list(generic_shift(5))
        center = parse_shift("center", 4)
        assert all(x + x == type(x).coerce(-1) for x in center)

    def test_explicit_list(self):
        shift = parse_shift("1/3,0,0,0,1/2+1/2*sqrt5", 5)
        assert len(shift) == 5
        assert not shift[4].is_rational()

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            parse_shift("1,2,3", 5)


class TestPatternJson:
    def test_round_trip(self, decagon_pattern):
        doc = pattern_to_json_dict(decagon_pattern)
        text = json.dumps(doc)
        points = pattern_points_from_json(json.loads(text))
        assert tuple(points) == decagon_pattern.points
        flagged = {tuple(p["lattice"]) for p in doc["points"] if p["boundary"]}
        assert flagged == set(decagon_pattern.boundary)

    def test_document_shape(self, decagon_pattern):
        doc = pattern_to_json_dict(decagon_pattern, neighbor_graph(decagon_pattern))
        assert doc["cluster"] == "decagon"
        assert len(doc["points"]) == len(decagon_pattern.points)
        first = doc["points"][0]
        assert set(first) >= {"lattice", "phys", "boundary"}
        assert all(isinstance(e, list) and len(e) == 3 for e in doc["edges"])
        assert doc["kappa_float"] > 0

    def test_lattice_order_is_sorted(self, decagon_pattern):
        doc = pattern_to_json_dict(decagon_pattern)
        lattice = [tuple(p["lattice"]) for p in doc["points"]]
        assert lattice == sorted(lattice)


class TestRenderers:
    def test_svg_planar(self, decagon_pattern):
        svg = render_svg(decagon_pattern, neighbor_graph(decagon_pattern))
        assert svg.startswith("<?xml") or svg.lstrip().startswith("<svg")
        assert svg.count("<circle") == len(decagon_pattern.points)
        assert "<line" in svg

    def test_svg_rejects_3d(self, icosa_pattern):
        with pytest.raises(ValueError):
            render_svg(icosa_pattern)

    def test_xyz_spatial(self, icosa_pattern):
        text = render_xyz(icosa_pattern)
        lines = text.strip().splitlines()
        assert int(lines[0]) == len(icosa_pattern.points)
        assert len(lines) == len(icosa_pattern.points) + 2
        assert all(line.startswith("Q ") for line in lines[2:])

    def test_xyz_rejects_2d(self, decagon_pattern):
        with pytest.raises(ValueError):
            render_xyz(decagon_pattern)


class TestCliExitCodes:
    def test_catalog_list(self, capsys):
        assert cli_main(["catalog", "list"]) == 0
        out = capsys.readouterr().out
        assert "decagon" in out and "icosahedron" in out

    def test_catalog_show(self, capsys):
        assert cli_main(["catalog", "show", "decagon"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["k"] == 5
        assert "sqrt5" in json.dumps(doc)

    def test_unknown_cluster_is_usage_error(self, capsys):
        assert cli_main(["project", "--cluster", "heptagon", "--radius", "2"]) == 2

    def test_bad_shift_is_usage_error(self):
        assert (
            cli_main(
                ["project", "--cluster", "decagon", "--radius", "2", "--shift", "1,2"]
            )
            == 2
        )

    def test_missing_radius_is_usage_error(self, capsys):
        try:
            code = cli_main(["project", "--cluster", "decagon"])
        except SystemExit as exc:
            code = exc.code
        assert code == 2

    def test_project_small(self, tmp_path, capsys):
        out = tmp_path / "p.json"
        code = cli_main(
            [
                "project",
                "--cluster",
                "decagon",
                "--radius",
                "0.5",
                "--shift",
                "generic",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["points"]) >= 1

    def test_verify_small(self, capsys):
        code = cli_main(
            ["verify", "--cluster", "decagon", "--radius", "3", "--shift", "generic"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "ok" in out
        assert "FAIL" not in out

    def test_reduce_report(self, tmp_path):
        out = tmp_path / "r.json"
        code = cli_main(["reduce", "--cluster", "decagon", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["coset_count"] == 6
        assert doc["m"] == 4

    def test_stats(self, capsys):
        code = cli_main(
            ["stats", "--cluster", "decagon", "--radius", "3", "--shift", "generic"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert "histogram" in json.dumps(doc)


class TestDeterminism:
    def _run_project(self, tmp_path, stem):
        out = tmp_path / f"{stem}.json"
        svg = tmp_path / f"{stem}.svg"
        code = cli_main(
            [
                "project",
                "--cluster",
                "decagon",
                "--radius",
                "3",
                "--shift",
                "generic",
                "--edges",
                "--out",
                str(out),
                "--svg",
                str(svg),
            ]
        )
        assert code == 0
        return out.read_bytes(), svg.read_bytes()

    def test_byte_identical_outputs(self, tmp_path):
        first = self._run_project(tmp_path, "a")
        second = self._run_project(tmp_path, "b")
        assert first == second
