import json
import os
import subprocess
import sys

import pytest

from digitop.cli import run
from digitop.constructions import cube
from digitop.lattice import DigitalImage
from digitop.maps import DigitalMap, constant, identity
from digitop.serialize import image_to_json, to_json, write_json

from helpers import ring, ring_loop

SQUARE = DigitalImage.of([(0, 0), (0, 1), (1, 0), (1, 1)])


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        p = tmp_path / name
        write_json(p, obj if isinstance(obj, (dict, list)) else to_json(obj))
        return str(p)
    put.dir = tmp_path
    return put


def test_check_continuity(files):
    f = files("id.json", identity(SQUARE))
    assert run(["check", "continuity", "--map", f])[0] == 0
    assert run(["check", "continuity", "--map", f, "--oracle", "connected"])[0] == 0
    swap = DigitalMap.from_dict(SQUARE, SQUARE, {(0, 0): (0, 0), (0, 1): (1, 1), (1, 0): (1, 0), (1, 1): (0, 1)})
    code, rep = run(["check", "continuity", "--map", files("bad.json", swap)])
    assert code == 1 and rep["clause"] == "continuity"


def test_search_square_and_recheck(files):
    f = files("id.json", identity(SQUARE))
    g = files("c.json", constant(SQUARE, SQUARE, (0, 0)))
    out = str(files.dir / "w.json")
    code, rep = run(["search", "homotopy", "--from", f, "--to", g, "--max-steps", "2", "--out", out])
    assert code == 0 and rep["m"] == 2 and rep["witness_path"] == out
    code, rep = run(["check", "homotopy", "--witness", out, "--from", f, "--to", g])
    assert code == 0
    code, rep = run(["search", "homotopy", "--from", f, "--to", g, "--max-steps", "1"])
    assert code == 2 and rep["status"] == "not-within-budget" and rep["budget_used"]["visited"] > 0


def test_search_contraction_budget(files):
    img = files("ring.json", image_to_json(ring()))
    code, rep = run(["search", "contraction", "--image", img, "--max-steps", "6"])
    assert code == 2 and rep["budget_used"]["depth_reached"] <= 6
    sq = files("sq.json", image_to_json(SQUARE))
    code, rep = run(["search", "contraction", "--image", sq, "--max-steps", "2", "--pointed"])
    assert code == 0


def test_t_image_similarity(files):
    out = str(files.dir / "t.json")
    assert run(["build", "t-image", "--what", "similarity", "--depth", "5", "--out", out])[0] == 0
    code, rep = run(["check", "similarity", "--cert", out, "--depth", "5"])
    assert code == 0 and rep["depth"] == 5
    assert run(["check", "similarity", "--cert", out, "--depth", "6"])[0] == 1
    code, rep = run(["check", "similarity", "--cert", out, "--extract"])
    assert code == 2 and rep["status"] == "not-stable"


def test_extract_stable_tree(files):
    edges = files("e.json", [[[0, 0], [1, 0]], [[1, 0], [2, 0]], [[1, 0], [1, 1]]])
    out = str(files.dir / "s.json")
    assert run(["build", "tree", "--edges", edges, "--root", "0,0", "--what", "similarity",
                "--depth", "4", "--out", out])[0] == 0
    eq = str(files.dir / "eq.json")
    code, rep = run(["check", "similarity", "--cert", out, "--extract", "--out", eq])
    assert code == 0 and rep["extracted"]
    assert run(["check", "equivalence", "--cert", eq])[0] == 0


def test_tree_edges_must_match_adjacency(files):
    edges = files("e.json", [[[0, 0], [1, 0]]] + [[[1, 0], [1, 1]]] + [[[0, 0], [0, 1]]])
    code, rep = run(["build", "tree", "--edges", edges])
    assert code == 1
    bad = files("e2.json", [[[0, 0], [2, 0]]])
    assert run(["build", "tree", "--edges", bad])[0] == 1


def test_convert_pipeline(files):
    f = files("id.json", identity(SQUARE))
    g = files("c.json", constant(SQUARE, SQUARE, (0, 0)))
    w = str(files.dir / "w.json")
    run(["search", "homotopy", "--from", f, "--to", g, "--max-steps", "2", "--out", w])
    chain = [("finite", "long"), ("long", "real"), ("real", "finite")]
    cur = w
    for src, dst in chain:
        nxt = str(files.dir / f"{dst}.json")
        code, rep = run(["convert", "--from", src, "--to", dst, "--in", cur, "--out", nxt])
        assert code == 0, rep
        cur = nxt
    assert run(["check", "homotopy", "--homotopy", cur, "--from", f, "--to", g])[0] == 0
    assert run(["check", "real", "--homotopy", str(files.dir / "real.json"), "--from", f, "--to", g])[0] == 0
    assert run(["check", "long", "--homotopy", str(files.dir / "long.json")])[0] == 0


def test_convert_l_to_long_and_refusal(files):
    lh = str(files.dir / "l.json")
    assert run(["build", "cube", "--what", "l-homotopy", "--dim", "2", "--radius", "2", "--out", lh])[0] == 0
    assert run(["check", "l-homotopy", "--homotopy", lh])[0] == 0
    code, rep = run(["convert", "--from", "l", "--to", "long", "--in", lh])
    assert code == 0 and rep["witness"]["t_min"] == -4
    code, rep = run(["convert", "--from", "real", "--to", "long", "--in", lh])
    assert code == 3 and "open question" in rep["detail"]


def test_certificate_builders(files):
    for what, kind in (("long", "long"), ("equivalence", "equivalence"), ("real", "real")):
        out = str(files.dir / f"{what}.json")
        assert run(["build", "cube", "--what", what, "--dim", "1", "--radius", "2", "--out", out])[0] == 0
        assert run(["check", kind, "--cert", out])[0] == 0
    a = str(files.dir / "a.json")
    b = str(files.dir / "b.json")
    run(["build", "cube", "--what", "long", "--dim", "1", "--radius", "1", "--out", a])
    run(["build", "cube", "--what", "long", "--dim", "1", "--radius", "2", "--out", b])
    prod = str(files.dir / "p.json")
    assert run(["build", "product", "--certs", a, b, "--out", prod])[0] == 0
    assert run(["check", "long", "--cert", prod])[0] == 0
    code, rep = run(["check", "similarity", "--cert", prod])
    assert code == 3


def test_wedge_and_product_images(files):
    p1 = files("p1.json", image_to_json(DigitalImage.of([(0, 0), (1, 0)])))
    p2 = files("p2.json", image_to_json(DigitalImage.of([(0, 0), (0, -1)])))
    code, rep = run(["build", "wedge", "--parts", p1, p2])
    assert code == 0 and rep["wedge_point"] == [0, 0] and len(rep["witness"]["points"]) == 3
    q = files("q.json", image_to_json(cube((0,), 1)))
    code, rep = run(["build", "product", "--parts", q, q])
    assert code == 0 and rep["witness"]["u"] == 2 and len(rep["witness"]["points"]) == 9
    code, rep = run(["build", "product", "--parts", p1, q])
    assert code == 1


def test_pi1_commands(files):
    X = ring()
    L = files("L.json", ring_loop(X))
    from digitop.ecpath import ECPath
    c = files("c.json", ECPath.constant((0, 0), X))
    code, rep = run(["pi1", "check-equal", "--left", L, "--right", c, "--rows", "6", "--horizon", "12"])
    assert code == 2 and rep["result"] == "unknown"
    assert run(["pi1", "check-equal", "--left", L, "--right", L])[0] == 0
    assert run(["pi1", "check-equal", "--left", L, "--right", c, "--rows", "6"])[0] == 3
    refl = DigitalMap.from_function(X, X, lambda p: (p[1], p[0]))
    m = files("r.json", refl)
    code, rep = run(["pi1", "push", "--map", m, "--loop", L])
    assert code == 0 and rep["witness"]["tail"] == [0, 0]


def test_pi1_induced(files):
    cert = str(files.dir / "cert.json")
    edges = files("e.json", [[[0], [1]], [[1], [2]]])
    run(["build", "tree", "--edges", edges, "--u", "1", "--root", "0", "--what", "similarity",
         "--depth", "2", "--out", cert])
    from digitop.ecpath import ECPath
    from digitop.lattice import interval
    L = files("L.json", ECPath.from_values([(0,), (1,), (0,)], interval(0, 1)))
    code, rep = run(["pi1", "induced", "--cert", cert, "--loop", L])
    assert code == 0 and rep["witness"]["prefix"] == []
    code, rep = run(["pi1", "induced", "--cert", cert, "--loop", L, "--other", L])
    assert code == 0 and rep["check"] == "homomorphism"


def test_usage_and_input_errors(files):
    assert run([])[0] == 3
    assert run(["check", "nonsense"])[0] == 3
    assert run(["check", "homotopy"])[0] == 3
    assert run(["check", "continuity", "--map", str(files.dir / "missing.json")])[0] == 3
    p = files.dir / "bad.json"
    p.write_text('{"dim": 1,\n "u": 1,,}')
    code, rep = run(["check", "continuity", "--map", str(p)])
    assert code == 3 and f"{p}:2:9" in rep["detail"]
    dup = files("dup.json", {"dim": 1, "u": 1, "points": [[0], [0]]})
    code, rep = run(["search", "contraction", "--image", dup, "--max-steps", "1"])
    assert code == 3 and "$.points[1]" in rep["detail"]
    assert run(["build", "cube", "--dim", "2", "--center", "1"])[0] == 3
    assert run(["build", "t-image", "--what", "real"])[0] == 3


def _cli(args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "digitop", *args], capture_output=True, text=True, env=e)


def test_reports_are_byte_identical(files):
    img = files("ring.json", image_to_json(ring()))
    runs = [_cli(["search", "contraction", "--image", img, "--max-steps", "6"]) for _ in range(2)]
    assert runs[0].returncode == runs[1].returncode == 2
    assert runs[0].stdout == runs[1].stdout
    json.loads(runs[0].stdout)


def test_state_cap_env(files):
    img = files("ring.json", image_to_json(ring()))
    res = _cli(["search", "contraction", "--image", img, "--max-steps", "6"], {"DIGITOP_STATE_CAP": "5"})
    assert res.returncode == 2
    assert "cap" in json.loads(res.stdout)["detail"]
