import json
import os
import subprocess
import sys

import pytest

from orbicluster.cli import main
from orbicluster.verify import DIGON_RAYS, load_fixture, poly_from_terms, resolve


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_verify_main(capsys):
    code, out, _ = run(capsys, "verify-main", "--surface", "digon.json")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().endswith("checks passed")


def test_explore_depth0(capsys):
    code, out, _ = run(capsys, "explore", "--depth", "0")
    assert code == 0 and "nodes: 1" in out


def test_tropical_r_columns(capsys):
    code, out, _ = run(capsys, "tropical", "--b", "b_kappa0.json", "--path", "1,3,2,3")
    assert code == 0
    last = out.strip().splitlines()[-1]
    assert last == "r-columns: " + " ".join(str(list(r)) for r in DIGON_RAYS[0])


def test_tropical_from_kappa4(capsys):
    # from kappa_4 the same flips lead somewhere else; the kappa_0 rays need kappa_0 as root
    _, out, _ = run(capsys, "tropical", "--b", "b_kappa4.json", "--path", "1,3,2,3")
    assert out.strip().splitlines()[-1] == "r-columns: [-1, 2, 0] [0, 1, -1] [0, 0, -1]"


def test_chambers(capsys):
    code, out, _ = run(capsys, "chambers", "--path", "1,3,2,3")
    assert code == 0 and out.startswith("signs: (+,+,+,+)")


def test_surface_commands(capsys, tmp_path):
    assert run(capsys, "surface", "validate", "digon_kappa0.json")[1].strip() == "valid"
    code, out, _ = run(capsys, "surface", "quiver", "digon_kappa0.json", "--format", "json")
    assert code == 0 and json.loads(out)["b"] == [[0, -1, 0], [2, 0, -2], [0, 1, 0]]
    code, out, _ = run(capsys, "surface", "flip", "digon_kappa0.json", "--arc", "1")
    flipped = write(tmp_path, "f.json", json.loads(out))
    code, out, _ = run(capsys, "surface", "quiver", flipped, "--format", "json")
    assert json.loads(out)["b"] == [[0, 1, 0], [-2, 0, -2], [0, 1, 0]]


def test_invalid_surface_exit_code(capsys, tmp_path):
    d = json.loads(resolve("digon_kappa0.json").read_text())
    d["triangles"].append({"kind": "singular", "side": {"arc": 1}})
    code, out, _ = run(capsys, "surface", "validate", write(tmp_path, "bad.json", d))
    assert code == 1 and "pending arc multiplicity" in out


def test_json_errors_are_located(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "arcs": [\n}')
    code, _, err = run(capsys, "surface", "validate", str(p))
    assert code == 2 and f"{p}:3:1" in err


def test_rep_commands(capsys, tmp_path):
    n = write(tmp_path, "n.json", load_fixture("digon_pairs.json")["extra"]["N"])
    assert run(capsys, "rep", "check", "--module", n)[0] == 0
    assert "g = [0, 2, -1]" in run(capsys, "rep", "gvec", "--module", n)[1]
    assert run(capsys, "rep", "taurigid", "--module", n)[0] == 0
    bad = write(tmp_path, "bad.json", {"dims": [2, 0, 0], "maps": {"e1": [["1", "0"], ["0", "1"]]}})
    code, out, _ = run(capsys, "rep", "check", "--module", bad)
    assert code == 1 and "e1" in out
    code, out, _ = run(capsys, "rep", "reflect", "--module", n, "--arc", "3")
    assert code == 0 and "dims" in json.loads(out)
    # End(N) is spanned by the identity and eps
    assert run(capsys, "rep", "hom", "--module", n, "--other", n)[1].strip() == "2"


def test_cc_of_n(capsys, tmp_path, golden):
    n = write(tmp_path, "n.json", load_fixture("digon_pairs.json")["extra"]["N"])
    code, out, _ = run(capsys, "cc", "--pair", n)
    assert code == 0 and out.strip() == poly_from_terms(3, golden["CC"]["N"]).render()


def test_stau_and_dot(capsys):
    code, out, _ = run(capsys, "stau", "--depth", "2", "--format", "json")
    assert code == 0 and len(json.loads(out)["nodes"]) == 9
    code, out, _ = run(capsys, "explore", "--depth", "2", "--format", "dot")
    assert out.startswith("graph exchange {") and out.count(" -- ") == 9


def test_scatter_and_exchange(capsys):
    assert run(capsys, "scatter", "--path", "1,3,2,3", "--order", "6")[0] == 0
    assert run(capsys, "verify-exchange", "--depth", "2")[0] == 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit):
        main(["explore", "--depth", "-1"])
    with pytest.raises(SystemExit):
        main(["mutate", "--path", "1,x"])
    assert run(capsys, "surface", "flip", "digon_kappa0.json")[0] == 2
    assert run(capsys, "explore", "--surface", "missing.json")[0] == 2


@pytest.mark.parametrize("argv", [
    ["explore", "--depth", "3", "--format", "json"],
    ["stau", "--depth", "3", "--format", "dot"],
    ["tropical", "--path", "1,3,2,3"],
])
def test_output_is_byte_identical(argv):
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        outs.append(subprocess.run([sys.executable, "-m", "orbicluster", *argv], env=env,
                                   capture_output=True, check=True).stdout)
    assert outs[0] == outs[1]
