from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qorder import io
from qorder.cli import main
from qorder.errors import InputError
from qorder.fixtures import get_fixture, n3, p2, q2, q3, trop
from qorder.generate import structures_up_to
from qorder.quantaloid import build_idm

from conftest import SAMPLES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def sample(name):
    return SAMPLES / name


# ---------------------------------------------------------------- io


@pytest.mark.parametrize("base", [q2(), q3(), p2(), n3(), trop(4)], ids=lambda b: b.name)
def test_quantaloid_round_trip(base):
    data = io.quant_to_data(base)
    back = io.quant_from_data(json.loads(io.dumps(data)))
    assert io.quant_to_data(back) == data


def test_idm_base_round_trip():
    idm = build_idm(n3())
    S = io.load_struct(sample("t_idm_n3.struct"))
    assert S.base is idm
    assert io.struct_from_data(io.struct_to_data(S)) == S


def test_structure_round_trip():
    for base in (q2(), q3(), n3()):
        for S in structures_up_to(base, 2, "any")[:40]:
            data = io.struct_to_data(S)
            assert io.struct_from_data(json.loads(io.dumps(data))) == S


def test_canonical_output_is_stable():
    data = io.struct_to_data(io.load_struct(sample("c1_q3.struct")))
    text = io.dumps(data)
    assert io.dumps(io.loads(text)) == text
    assert '{"name": "*", "type": "*"}' in text
    assert '    ["1"]' in text


def test_parse_error_reports_position():
    with pytest.raises(InputError, match=r"2:\d+"):
        io.loads('{"a": 1,\n  oops}', "bad.json")


def test_schema_errors():
    with pytest.raises(InputError):
        io.struct_from_data({"format": "qorder.struct/1", "base": "q3", "objects": [], "hom": "x"})
    with pytest.raises(InputError):
        io.struct_from_data({"format": "qorder.struct/1", "base": "nope", "objects": [], "hom": []})
    with pytest.raises(InputError):
        io.struct_from_data(
            {"format": "qorder.struct/1", "base": "q3", "objects": [{"name": "*", "type": "*"}], "hom": [["z"]]}
        )


def test_fixture_lookup():
    assert get_fixture("trop:4") is trop(4)
    assert io.resolve_base("q3") is q3()
    with pytest.raises(InputError):
        get_fixture("q7")


# ---------------------------------------------------------------- cli


def test_validate_and_classify(capsys):
    assert run(capsys, "validate", sample("c1_q3.struct"))[0] == 0
    code, out, _ = run(capsys, "validate", sample("sm_to_c1_m.mat"))
    assert code == 0 and "regular=yes" in out
    code, out, _ = run(capsys, "classify", sample("c1_q3.struct"))
    assert code == 0 and "category" in out


def test_validate_broken_quantaloid(capsys, tmp_path):
    data = io.quant_to_data(q3())
    data["compose"][0]["table"][1][1] = "1"
    path = tmp_path / "bad.quant"
    path.write_text(io.dumps(data))
    code, out, _ = run(capsys, "validate", path)
    assert code == 1 and "INVALID" in out and "sup" in out


def test_adjoint_exit_codes(capsys):
    code, out, _ = run(capsys, "adjoint", sample("sm_to_c1_m.mat"))
    assert code == 0 and json.loads(out)["matrix"] == [["m"]]
    assert run(capsys, "adjoint", sample("sm_to_c1_top.mat"))[0] == 2


def test_converge_reports_failure(capsys):
    code, out, _ = run(capsys, "converge", sample("sm_to_c1_m.mat"))
    assert code == 1 and "converges: no" in out


def test_compose_and_residuate(capsys, tmp_path):
    code, out, _ = run(capsys, "compose", sample("sm_to_c1_m.mat"), sample("sm_to_c1_m.mat"))
    assert code == 2
    ident = tmp_path / "id.mat"
    ident.write_text(json.dumps({"format": "qorder.mat/1", "dom": str(sample("c1_q3.struct")),
                                 "cod": str(sample("c1_q3.struct")), "matrix": [["1"]]}))
    code, out, _ = run(capsys, "compose", sample("sm_to_c1_m.mat"), ident)
    assert code == 0 and json.loads(out)["matrix"] == [["m"]]
    code, out, _ = run(capsys, "residuate", "--lift", sample("sm_to_c1_m.mat"), sample("sm_to_c1_m.mat"))
    assert code == 0 and json.loads(out)["matrix"] == [["1"]]


def test_complete_c1(capsys, tmp_path):
    table = tmp_path / "table.witness"
    code, out, _ = run(capsys, "complete", "--trs", sample("c1_q3.struct"), "--table", table)
    assert code == 0
    data = json.loads(out)
    assert [o["name"] for o in data["objects"]] == ["<0|0>", "<m|m>", "<1|1>"]
    rows = json.loads(table.read_text())["objects"]
    assert [r["idempotent"] for r in rows] == ["0", "m", "1"]
    code, out, _ = run(capsys, "complete", "--trs", "--check", sample("c1_q3.struct"))
    assert code == 1 and "e=m" in out
    code, out, _ = run(capsys, "complete", "--cat", "--check", sample("c1_q3.struct"))
    assert code == 0 and "yes" in out


def test_morita_verdicts(capsys, monkeypatch):
    code, out, _ = run(capsys, "morita", sample("isolated_q2.struct"), sample("point_q2.struct"))
    assert code == 0 and "VERDICT: isomorphic" in out
    code, out, _ = run(capsys, "morita", sample("sm_q3.struct"), sample("c1_q3.struct"))
    assert code == 1 and "VERDICT: not isomorphic" in out
    monkeypatch.setenv("QORDER_BUDGET", "1")
    code, out, _ = run(capsys, "morita", sample("isolated_q2.struct"), sample("point_q2.struct"))
    assert code == 3 and "budget-exceeded" in out


def test_morita_witness_file(capsys, tmp_path):
    w = tmp_path / "iso.witness"
    assert run(capsys, "morita", sample("isolated_q2.struct"), sample("point_q2.struct"), "--witness", w)[0] == 0
    data = json.loads(w.read_text())
    assert data["kind"] == "iso" and data["forward"]["matrix"] == [["1", "0"]]


def test_normalize(capsys, tmp_path):
    code, _, err = run(capsys, "normalize", sample("t_n3.struct"))
    assert code == 2 and "does not split" in err
    w = tmp_path / "split.witness"
    code, out, _ = run(capsys, "normalize", sample("t_idm_n3.struct"), "--witness", w)
    assert code == 0 and json.loads(out)["objects"][0]["type"] == "t"
    code, out2, _ = run(capsys, "normalize", sample("t_idm_n3.struct"), "--splitting", w)
    assert code == 0 and out2 == out


def test_reshuffle_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "reshuffle", sample("sm_q3.struct"))
    assert code == 0
    data = json.loads(out)
    assert data["base"] == "idm:q3" and data["objects"][0]["type"] == "m"
    path = tmp_path / "r.struct"
    path.write_text(out)
    code, out, _ = run(capsys, "unreshuffle", path)
    assert code == 0 and io.struct_from_data(json.loads(out)) == io.load_struct(sample("sm_q3.struct"))


def test_idm_command(capsys):
    code, out, _ = run(capsys, "idm", "q3")
    assert code == 0 and json.loads(out)["objects"] == ["0", "m", "1"]


def test_factor(capsys, tmp_path):
    code, out, _ = run(capsys, "complete", "--trs", sample("c1_q3.struct"))
    completed = tmp_path / "c1cc.struct"
    completed.write_text(out)
    w = tmp_path / "k.witness"
    w.write_text(json.dumps({
        "format": "qorder.witness/1",
        "kind": "object-map",
        "dom": str(sample("c1_q3.struct")),
        "cod": str(completed),
        "map": {"*": "<1|1>"},
    }))
    code, out, _ = run(capsys, "factor", w)
    assert code == 0
    assert json.loads(out)["map"] == {"<0|0>": "<0|0>", "<m|m>": "<m|m>", "<1|1>": "<1|1>"}
    w.write_text(json.dumps({
        "format": "qorder.witness/1", "kind": "object-map",
        "dom": str(sample("c1_q3.struct")), "cod": str(sample("c1_q3.struct")), "map": {"*": "*"},
    }))
    assert run(capsys, "factor", w)[0] == 2


def test_prop_check(capsys):
    code, out, _ = run(capsys, "prop-check", "lemma4", "--seed", "7")
    assert code == 0 and "lemma4: holds" in out


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "classify", tmp_path / "missing.struct")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    bad = tmp_path / "bad.struct"
    bad.write_text('{"format": "qorder.struct/1",\n "base": }')
    code, _, err = run(capsys, "classify", bad)
    assert code == 2 and "2:" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qorder", "complete", "--cat", "--check", str(sample("c1_q3.struct"))],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "yes" in proc.stdout
