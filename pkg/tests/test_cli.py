import io
import json
import subprocess
import sys

import pytest
from conftest import make_box, make_prism

from ehrhart_forge.cli import main
from ehrhart_forge.exact_math import g_theorem_check
from ehrhart_forge.families import birkhoff
from ehrhart_forge.formats import polytope_to_json, triangulation_from_text

FILES = {
    "antichain3.txt": "3\n",
    "chain3.txt": "# a chain\n3\n1 2\n2 3\n",
    "unnatural.txt": "2\n2 1\n",
    "ungraded.txt": "4\n1 2\n2 3\n4 3\n",
    "broken.txt": "3\n1 2\n2 q\n",
    "c6.txt": "6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n",
    "c8.txt": "8 8\n" + "".join(f"{i} {i % 8 + 1}\n" for i in range(1, 9)),
    "k33.txt": "6 9\n" + "".join(f"{i} {j}\n" for i in (1, 2, 3) for j in (4, 5, 6)),
    "path.txt": "3 2\n1 2\n2 3\n",
    "c5.txt": "5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n",
    "square.json": polytope_to_json(make_box((1, 1))),
    "prism.json": polytope_to_json(make_prism()),
    "rect.json": polytope_to_json(make_box((2, 1))),
    "b3.json": polytope_to_json(birkhoff(3)),
    "bad.json": '{"ambient_dim": 2,\n "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]],\n "facets": [{"normal": [1, 0], "offset": 1}]}',
    "garbled.json": "{\n\n  nope",
}


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("inputs")
    for name, text in FILES.items():
        (d / name).write_text(text)
    return d


def run(argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


MATRIX = [
    (["birkhoff", "--n", "1", "series"], 0, "h = 1, d = 0"),
    (["birkhoff", "--n", "3", "series"], 0, "h = 1 1 1, d = 2, denom = (1-t)^5"),
    (["birkhoff", "--n", "3", "series", "--route", "triangulation"], 0, "h = 1 1 1, d = 2"),
    (["birkhoff", "--n", "3", "verify"], 0, "PASS"),
    (["birkhoff", "--n", "2", "verify"], 0, "PASS"),
    (["birkhoff", "--n", "0", "series"], 2, ""),
    (["birkhoff", "--n", "3", "series", "--max-dilate", "2"], 2, ""),
    (["poset", "{d}/antichain3.txt", "eulerian"], 0, "1 4 1"),
    (["poset", "{d}/chain3.txt", "eulerian"], 0, "1"),
    (["poset", "{d}/antichain3.txt", "verify"], 0, "PASS"),
    (["poset", "{d}/chain3.txt", "verify"], 0, "PASS"),
    (["poset", "{d}/antichain3.txt", "equatorial"], 0, "h = 1 4 1"),
    (["poset", "{d}/antichain3.txt", "series"], 0, "h = 1 4 1, d = 2, denom = (1-t)^4"),
    (["poset", "{d}/ungraded.txt", "equatorial"], 2, ""),
    (["poset", "{d}/ungraded.txt", "verify"], 2, ""),
    (["poset", "{d}/ungraded.txt", "series"], 0, "denom = (1-t)^5"),
    (["poset", "{d}/unnatural.txt", "eulerian"], 2, ""),
    (["poset", "{d}/broken.txt", "eulerian"], 2, ""),
    (["poset", "{d}/missing.txt", "eulerian"], 2, ""),
    (["graph", "{d}/c6.txt", "series"], 0, "h = 1, m = 1, d = 0"),
    (["graph", "{d}/c8.txt", "series"], 0, "h = 1, m = 1, d = 0"),
    (["graph", "{d}/k33.txt", "series"], 0, "h = 1 1 1, m = 4, d = 2"),
    (["graph", "{d}/k33.txt", "verify"], 0, "PASS"),
    (["graph", "{d}/c6.txt", "verify"], 0, "PASS"),
    (["graph", "{d}/path.txt", "series"], 2, ""),
    (["graph", "{d}/c5.txt", "verify"], 2, ""),
    (["polytope", "{d}/square.json", "validate"], 0, "dim 2, 4 vertices, 4 facets"),
    (["polytope", "{d}/square.json", "find-special"], 0, "special simplex: 0 3"),
    (["polytope", "{d}/square.json", "verify"], 0, "PASS"),
    (["polytope", "{d}/square.json", "verify", "--sigma", "0,1"], 1, "FAIL at: special simplex"),
    (["polytope", "{d}/prism.json", "find-special"], 1, "no special simplex found (exhaustive)"),
    (["polytope", "{d}/prism.json", "verify"], 1, "no special simplex found (exhaustive)"),
    (["polytope", "{d}/rect.json", "verify", "--sigma", "0,3"], 1, "compressed"),
    (["polytope", "{d}/rect.json", "series", "--route", "triangulation"], 1, ""),
    (["polytope", "{d}/rect.json", "series"], 0, "h = 1 3, d = 1"),
    (["polytope", "{d}/b3.json", "series"], 0, "h = 1 1 1, d = 2, denom = (1-t)^5"),
    (["polytope", "{d}/b3.json", "verify", "--max-faces", "3"], 2, ""),
    (["polytope", "{d}/square.json", "triangulate", "--order", "0,1,2"], 2, ""),
    (["polytope", "{d}/square.json", "verify", "--sigma", "0,9"], 2, ""),
    (["polytope", "{d}/bad.json", "validate"], 2, ""),
    (["polytope", "{d}/garbled.json", "validate"], 2, ""),
    (["frobnicate"], 2, ""),
    (["birkhoff", "--n", "3", "series", "--max-nodes", "-4"], 2, ""),
]


@pytest.mark.parametrize("argv,code,needle", MATRIX, ids=[" ".join(a).replace("{d}/", "") for a, _, _ in MATRIX])
def test_exit_code_matrix(files, argv, code, needle, capsys):
    got, out = run([a.format(d=files) for a in argv])
    assert got == code, out + capsys.readouterr().err
    assert needle in out


def test_error_message_names_line(files, capsys):
    run(["poset", files / "broken.txt", "eulerian"])
    assert "line 3" in capsys.readouterr().err


def test_graph_not_regular_message(files, capsys):
    run(["graph", files / "path.txt", "series"])
    assert "graph not regular" in capsys.readouterr().err


def test_machine_output_is_deterministic(files):
    a = run(["birkhoff", "--n", "3", "verify", "--machine"])[1]
    b = run(["birkhoff", "--n", "3", "verify", "--machine"])[1]
    assert a == b
    doc = json.loads(a)
    assert doc["passed"] and doc["h_triangulation"] == [1, 1, 1]


def test_verify_output_passes_g_theorem(files):
    for argv in (["birkhoff", "--n", "3", "verify"], ["poset", files / "antichain3.txt", "verify"],
                 ["graph", files / "k33.txt", "verify"]):
        code, out = run(argv)
        assert code == 0
        line = next(l for l in out.splitlines() if l.strip().startswith("h = "))
        h = [int(x) for x in line.split("=")[1].split()]
        assert g_theorem_check(h).passed


def test_triangulate_export(files):
    code, out = run(["polytope", files / "b3.json", "triangulate", "--order", "0,1,2,3,4,5"])
    assert code == 0
    D, p, dim = triangulation_from_text(out)
    assert (p, dim, len(D)) == (6, 4, 3)
    code, out2 = run(["birkhoff", "--n", "3", "triangulate"])
    assert code == 0 and out2.splitlines()[0] == "6 4"


def test_b3_roundtrip_series(files, tmp_path):
    direct = run(["birkhoff", "--n", "3", "series"])[1]
    via_file = run(["polytope", files / "b3.json", "series"])[1]
    assert direct == via_file


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "ehrhart_forge", "poset", str(files / "antichain3.txt"), "eulerian"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "1 4 1\n"
