import json
from pathlib import Path

import pytest

from amalgamkit.cli import build_parser, main, resolve_config
from amalgamkit.errors import ConfigError
from amalgamkit.mtxio import DATA_DIR

A7 = [str(DATA_DIR / "A7G1-f2r4B0.m1"), str(DATA_DIR / "A7G1-f2r4B0.m2")]
CO1_A = str(DATA_DIR / "Co1G1-f2r24B0.m1")


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    """Run every command from an empty directory with a private cache."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("AMALGAMKIT_CACHE", str(tmp_path / "cache"))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_product_of_standard_generators(self, capsys):
        code, out, _ = run(capsys, "eval", "ab", "--offline", "--format", "json")
        assert code == 0
        assert json.loads(out)["elements"][0]["order"] == 40

    def test_trivial_word(self, capsys):
        code, out, _ = run(capsys, "eval", "a a^-1", "--offline")
        assert code == 0 and "order 1," in out

    def test_missing_generator_file(self, capsys):
        code, _, err = run(capsys, "eval", "ab", "-g", "a=nope.m1", "-g", "b=nope.m2")
        assert code == 2 and "no such file" in err

    def test_explicit_files(self, capsys):
        code, out, _ = run(capsys, "eval", "xy", "-g", f"x={A7[0]}", "-g", f"y={A7[1]}", "--format", "json")
        assert code == 0
        assert json.loads(out)["elements"][0]["order"] == 7

    def test_script_entries(self, capsys):
        code, out, _ = run(capsys, "eval", "--script", str(DATA_DIR / "named_elements.script"),
                           "--name", "e", "--name", "g35", "--offline", "--format", "json")
        assert code == 0
        assert [e["order"] for e in json.loads(out)["elements"]] == [22, 35]

    def test_syntax_error(self, capsys):
        code, _, err = run(capsys, "eval", "a^", "--offline")
        assert code == 2 and "position" in err

    def test_unbound_generator(self, capsys):
        code, _, err = run(capsys, "eval", "az", "--offline")
        assert code == 2 and "'z'" in err


class TestMatrixCommands:
    def test_order(self, capsys):
        code, out, _ = run(capsys, "order", *A7, "--format", "json")
        assert code == 0
        assert [e["order"] for e in json.loads(out)["elements"]] == [3, 5]

    def test_minpoly(self, capsys):
        code, out, _ = run(capsys, "minpoly", CO1_A, "--format", "json")
        assert code == 0
        assert json.loads(out)["minpoly"] == "x^2+1"

    def test_split_needs_order_seven(self, capsys):
        code, _, err = run(capsys, "split", CO1_A)
        assert code == 2 and "x+1" in err

    def test_orbits_with_extension(self, capsys):
        code, out, _ = run(capsys, "orbits", *A7, "--extend-to", "GF8", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["points"] == 585 and doc["group_order"] == 2520
        assert [(o["size"], o["stabilizer"]) for o in doc["orbits"]] == [(15, 168), (210, 12), (360, 7)]

    def test_orbits_identity_gives_singletons(self, tmp_path, capsys):
        ident = tmp_path / "id.m"
        ident.write_text("1 2 3 3\n100\n010\n001\n")
        code, out, _ = run(capsys, "orbits", str(ident), "--format", "json")
        assert code == 0
        assert [o["size"] for o in json.loads(out)["orbits"]] == [1] * 7

    def test_orbits_of_a_single_matrix_partition_the_points(self, tmp_path, capsys):
        m = tmp_path / "m.m"
        m.write_text("1 2 4 4\n0100\n0010\n0001\n1100\n")
        code, out, _ = run(capsys, "orbits", str(m), "--extend-to", "GF8", "--format", "json")
        assert code == 0
        assert sum(o["size"] for o in json.loads(out)["orbits"]) == 585

    def test_bad_field(self, capsys):
        code, _, err = run(capsys, "orbits", *A7, "--extend-to", "GF6")
        assert code == 2 and "unsupported field" in err


class TestScenario:
    def test_data_free_scenario(self, capsys):
        code, out, _ = run(capsys, "scenario", "S4", "--json", "--no-timing")
        assert code == 0
        doc = json.loads(out)
        assert doc["summary"]["fail"] == 0
        assert all("ms" not in c for c in doc["claims"])

    def test_unknown_scenario(self, capsys):
        code, _, err = run(capsys, "scenario", "S9")
        assert code == 2 and "S9" in err

    def test_table_and_output_file(self, tmp_path, capsys):
        out_file = tmp_path / "report.txt"
        code, out, _ = run(capsys, "scenario", "S1", "--output", str(out_file))
        assert code == 0 and out == ""
        assert "S1.factor.phi7" in out_file.read_text()

    def test_argparse_errors(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "scenario", "--workers", "many")[0] == 2


class TestFetch:
    def test_offline_uses_vendored_copies(self, capsys):
        code, out, _ = run(capsys, "fetch", "--group", "A7-f2r4", "--offline", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["downloads"] == []
        assert len(doc["fetched"][0]["files"]) == 2

    def test_offline_without_vendored_copies(self, capsys):
        code, _, err = run(capsys, "fetch", "Co1-f2r24", "--offline", "--no-vendored")
        assert code == 2 and "fetch error" in err

    def test_unknown_label(self, capsys):
        code, _, err = run(capsys, "fetch", "Nope", "--offline")
        assert code == 2 and "Nope" in err


def parse(*argv):
    return build_parser().parse_args(["scenario", *argv])


class TestConfigPrecedence:
    def test_defaults(self, tmp_path):
        cfg = resolve_config(parse(), env={}, cwd=tmp_path)
        assert cfg.cache_dir == Path.home() / ".cache" / "amalgamkit"
        assert cfg.data_dir == DATA_DIR and cfg.offline is False
        assert cfg.output == "table" and cfg.workers == 1

    def test_ini_then_environment_then_flags(self, tmp_path):
        (tmp_path / "amalgamkit.ini").write_text(
            "[amalgamkit]\ncache_dir = /from/ini\noffline = yes\nformat = json\nworkers = 3\n")
        cfg = resolve_config(parse(), env={}, cwd=tmp_path)
        assert cfg.cache_dir == Path("/from/ini") and cfg.offline and cfg.output == "json" and cfg.workers == 3
        cfg = resolve_config(parse(), env={"AMALGAMKIT_CACHE": "/from/env"}, cwd=tmp_path)
        assert cfg.cache_dir == Path("/from/env")
        cfg = resolve_config(parse("--cache-dir", "/from/flag", "--format", "table", "--workers", "2"),
                             env={"AMALGAMKIT_CACHE": "/from/env"}, cwd=tmp_path)
        assert cfg.cache_dir == Path("/from/flag") and cfg.output == "table" and cfg.workers == 2

    @pytest.mark.parametrize("body", ["offline = perhaps", "format = xml", "workers = two", "workers = 0",
                                      "data_dir = /does/not/exist"])
    def test_bad_ini_values(self, tmp_path, body):
        (tmp_path / "amalgamkit.ini").write_text(f"[amalgamkit]\n{body}\n")
        with pytest.raises(ConfigError):
            resolve_config(parse(), env={}, cwd=tmp_path)

    def test_malformed_ini(self, tmp_path):
        (tmp_path / "amalgamkit.ini").write_text("no section header\n")
        with pytest.raises(ConfigError):
            resolve_config(parse(), env={}, cwd=tmp_path)

    def test_bad_config_exits_two(self, tmp_path, capsys):
        (tmp_path / "amalgamkit.ini").write_text("[amalgamkit]\nworkers = 0\n")
        assert run(capsys, "scenario", "S1")[0] == 2
