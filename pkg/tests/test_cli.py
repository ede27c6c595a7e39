import io
import json
import subprocess
import sys

import pytest

from lie_elim.cli import GraphParseError, main, parse_graph


@pytest.fixture
def graph_file(tmp_path):
    def make(text):
        p = tmp_path / "g.txt"
        p.write_text(text)
        return str(p)
    return make


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_graph_format():
    g = parse_graph("# comment\nn 3\n1 2  # edge\n2 1\n\n3 2\n")
    assert g.n == 3 and g.edges == [(2, 1), (3, 2)]


@pytest.mark.parametrize("text,line", [
    ("3\n", 1),
    ("n 2\n1\n", 2),
    ("n 2\n1 3\n", 2),
    ("n 2\n# ok\n2 2\n", 3),
    ("n 2\na b\n", 2),
    ("", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_ranks_single_edge(graph_file, capsys):
    code, out, _ = run(["ranks", graph_file("n 2\n2 1\n"), "-d", "4", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "lie-elim/1"
    assert [data["degrees"][str(d)]["rank"] for d in range(1, 5)] == [2, 0, 0, 0]


def test_ranks_empty_graph_csv(graph_file, capsys):
    code, out, _ = run(["ranks", graph_file("n 2\n"), "-d", "5", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,rank,saturated"
    assert [int(l.split(",")[1]) for l in lines[1:]] == [2, 1, 2, 3, 6]


def test_ranks_path_is_deterministic(graph_file, capsys):
    path = graph_file("n 3\n2 1\n3 2\n")
    outs = [run(["ranks", path, "-d", "4", "--format", "json"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_fp_single_edge_json(graph_file, capsys):
    code, out, _ = run(["fp", graph_file("n 2\n2 1\n"), "-d", "4", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    for d in range(1, 5):
        row = data["degrees"][str(d)]
        assert row["saturated"] is True and row["splitOK"] is True
    assert data["degrees"]["2"]["rankGr"] == 2
    assert data["mode"] == "decomposition"


def test_fp_empty_routes_to_identity(graph_file, capsys):
    code, out, _ = run(["fp", graph_file("n 2\n"), "-d", "4", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["mode"] == "empty-relation"
    assert data["degrees"]["3"]["pieces"] == {"J": 4, "L(Omega)": 2, "L(Y)": 2}


def test_fp_degree_one(graph_file, capsys):
    code, out, _ = run(["fp", graph_file("n 2\n2 1\n"), "-d", "1", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["degrees"]["1"]["rankJ"] == 0


def test_eliminate_renders_generators(graph_file, capsys):
    code, out, _ = run(["eliminate", graph_file("n 2\n1 2\n"), "-d", "3", "--format", "json"], capsys)
    assert code == 0
    gens = json.loads(out)["pieces"]["gamma2(L(Y2))"]["generators"]
    assert gens == {"2": ["[y2,y1]"], "3": ["[y2,y1,y2]", "[y2,y1,y1]"]}


def test_eliminate_reports_original_labels(graph_file, capsys):
    code, out, _ = run(["eliminate", graph_file("n 3\n3 2\n"), "-d", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["graph"]["edges"] == [[3, 2]]
    assert data["pieces"]["gamma2(L(Y2))"]["generators"]["2"] == ["[y3,y2]"]


def test_eliminate_empty_graph_is_an_error(graph_file, capsys):
    code, _, err = run(["eliminate", graph_file("n 2\n"), "-d", "3"], capsys)
    assert code == 2 and "empty" in err


def test_verify_passes_and_fails(graph_file, capsys):
    path = graph_file("n 2\n2 1\n")
    code, out, _ = run(["verify", path, "-d", "5", "--seed", "0", "--quiet"], capsys)
    assert code == 0
    code, out, _ = run(["verify", path, "-d", "5", "--quiet", "--corrupt-relator"], capsys)
    assert code == 1
    assert "FAILED" in out


def test_verify_empty_relation(graph_file, capsys):
    code, out, _ = run(["verify", graph_file("n 3\n"), "-d", "4", "--quiet", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["sections"]["decomposition (empty relation)"]["failed"] == []
    assert data["sections"]["fp freeness"]["failed"] == []


def test_stdin_and_parse_error(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("n 2\n2 x\n"))
    code, _, err = run(["ranks", "-"], capsys)
    assert code == 2 and "line 2" in err
    monkeypatch.setattr(sys, "stdin", io.StringIO("n 2\n2 1\n"))
    code, out, _ = run(["ranks", "-", "-d", "2"], capsys)
    assert code == 0 and "degree" in out


def test_bad_degree(graph_file, capsys):
    code, _, err = run(["ranks", graph_file("n 2\n"), "-d", "0"], capsys)
    assert code == 2


def test_console_script(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("n 2\n2 1\n")
    res = subprocess.run([sys.executable, "-m", "lie_elim.cli", "ranks", str(p), "-d", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].split() == ["1", "2", "True"]
